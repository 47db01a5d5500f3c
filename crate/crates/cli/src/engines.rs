//! The selected engines evaluated side by side on one tensor.

use harmvol_core::analytic::{Curve, Engine};
use harmvol_core::combinat::{kappa, kappa_prime, HalfInt};
use harmvol_core::homology::{HTensor, KBasis};
use harmvol_core::quadrature::{circle_distance, Quadrature};
use serde::Serialize;

use crate::config::{EngineSet, RunConfig};
use crate::CliError;

pub struct Evaluator {
    pub curve: Curve,
    pub kb: KBasis,
    pub quad: Option<Quadrature>,
    engines: EngineSet,
    tol_modz: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericCell {
    /// I_ν reduced to [0, 1).
    pub value: f64,
    /// Distance on ℝ/ℤ to the nearest of 0 and 1/2.
    pub lattice_distance: f64,
}

/// One tensor at one ν. Exact values are the strings "0" and "1/2".
#[derive(Debug, Clone, Serialize)]
pub struct Values {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combinatorial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_prime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericCell>,
    pub agree: bool,
}

impl Evaluator {
    /// Quadrature failures surface as [`CliError::Numeric`].
    pub fn new(cfg: &RunConfig) -> Result<Self, CliError> {
        let curve = Curve::new(cfg.g)?;
        let kb = KBasis::new(cfg.g)?;
        let quad = if cfg.engines.numeric {
            Some(Quadrature::new(&curve, cfg.quad_config()).map_err(CliError::Numeric)?)
        } else {
            None
        };
        Ok(Self {
            curve,
            kb,
            quad,
            engines: cfg.engines,
            tol_modz: cfg.tol_modz,
        })
    }

    /// I_ν(A) as a float in [0, 1), from the basis expansion of A.
    pub fn numeric(&self, q: &Quadrature, a: &HTensor, nu: usize) -> Result<f64, CliError> {
        let mut total = self.curve.lambda_nu(a, nu)?.to_f64();
        for k in self.kb.expand(a)? {
            let e = &self.kb.elements()[k.basis];
            total += k.coeff as f64 * q.numeric_i_q0(&e.tensor, k.third)?.value;
        }
        // rem_euclid of a tiny negative rounds up to 1.0
        let r = total.rem_euclid(1.0);
        Ok(if r >= 1.0 { 0.0 } else { r })
    }

    /// `with_prime` adds κ′ when the combinatorial engine is selected.
    pub fn values(&self, a: &HTensor, nu: usize, with_prime: bool) -> Result<Values, CliError> {
        let e = self.engines;
        let exact = |on: bool, engine: Engine| -> Result<Option<HalfInt>, CliError> {
            Ok(if on {
                Some(self.curve.harmonic_volume(&self.kb, a, nu, engine)?)
            } else {
                None
            })
        };
        let k = if e.combinatorial { Some(kappa(a, nu)?) } else { None };
        let kp = if e.combinatorial && with_prime {
            Some(kappa_prime(a, nu)?)
        } else {
            None
        };
        let composed = exact(e.composed, Engine::Composed)?;
        let table = exact(e.table, Engine::Table)?;
        let numeric = match &self.quad {
            Some(q) => Some(self.numeric(q, a, nu)?),
            None => None,
        };

        let exacts: Vec<HalfInt> = [k, kp, composed, table].into_iter().flatten().collect();
        let mut agree = exacts.windows(2).all(|w| w[0] == w[1]);
        if let Some(v) = numeric {
            let d = match exacts.first() {
                Some(h) => circle_distance(v, if h.is_half() { 0.5 } else { 0.0 }),
                None => lattice_distance(v),
            };
            agree &= d <= self.tol_modz;
        }
        let s = |h: Option<HalfInt>| h.map(|h| h.to_string());
        Ok(Values {
            combinatorial: s(k),
            kappa_prime: s(kp),
            composed: s(composed),
            table: s(table),
            numeric: numeric.map(|v| NumericCell {
                value: v,
                lattice_distance: lattice_distance(v),
            }),
            agree,
        })
    }
}

pub fn lattice_distance(v: f64) -> f64 {
    circle_distance(v, 0.0).min(circle_distance(v, 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_distance_is_to_nearest_half_integer() {
        assert!(lattice_distance(0.999_999) < 2e-6);
        assert!((lattice_distance(0.25) - 0.25).abs() < 1e-15);
        assert!(lattice_distance(0.5) == 0.0);
    }
}
