//! Numeric line integrals and depth-2 Chen iterated integrals of ω′_i, α_i
//! and β_i along the paths e_j of C₀, at MPFR precision.
//!
//! Each e_j is γ̃_j·(ιγ̃_j)⁻¹ with γ̃_j(s) = (sζ^j, √−1·√(1 − s^N)) for
//! s ∈ [0, 1]. On γ̃_j we put s = 1 − u² and integrate in v = 1 − u, which
//! removes the inverse square root at the branch point. Every form is a
//! complex combination of the 2g real channels Re ω′_l, Im ω′_l, so one
//! pass per half-segment gives the line integrals and the full matrix of
//! iterated integrals of channels. Words are assembled with Chen's rules.

mod gauss;
mod path;

use rayon::prelude::*;
use rug::float::Constant;
use rug::Float;

use crate::analytic::{inverse, Curve, HarmonicForm, Loop, QmodZ};
use crate::error::{Error, Result};
use crate::exactfield::ComplexHP;
use crate::homology::{Gen, HTensor};

pub use gauss::GaussLegendre;
pub use path::{Letter, PathWord, Point};

/// B(u, v) = Γ(u)Γ(v)/Γ(u+v).
pub fn beta_function(u: &Float, v: &Float) -> Result<Float> {
    if !u.is_sign_positive() || u.is_zero() || !v.is_sign_positive() || v.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "beta function needs positive arguments, got ({u}, {v})"
        )));
    }
    let p = u.prec().max(v.prec());
    let w = p + 16;
    let gu = Float::with_val(w, u.gamma_ref());
    let gv = Float::with_val(w, v.gamma_ref());
    let guv = Float::with_val(w, Float::with_val(w, u + v).gamma_ref());
    Ok(Float::with_val(p, gu * gv / guv))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormSpec {
    /// The normalised holomorphic form ω′_i.
    Omega(usize),
    Alpha(usize),
    Beta(usize),
}

impl From<HarmonicForm> for FormSpec {
    fn from(h: HarmonicForm) -> Self {
        match h {
            HarmonicForm::Alpha(i) => FormSpec::Alpha(i),
            HarmonicForm::Beta(i) => FormSpec::Beta(i),
        }
    }
}

impl FormSpec {
    pub fn dual_of(gen: Gen) -> Self {
        HarmonicForm::dual_of(gen).into()
    }

    pub fn index(self) -> usize {
        match self {
            FormSpec::Omega(i) | FormSpec::Alpha(i) | FormSpec::Beta(i) => i,
        }
    }
}

#[derive(Debug, Clone)]
pub struct QuadConfig {
    pub precision: u32,
    pub tol_line: f64,
    pub tol_iterated: f64,
    /// Gauss–Legendre nodes per panel; 0 picks a value from the precision.
    pub nodes: usize,
    pub max_panels: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            precision: crate::exactfield::DEFAULT_PRECISION,
            tol_line: 1e-10,
            tol_iterated: 1e-8,
            nodes: 0,
            max_panels: 1024,
        }
    }
}

impl QuadConfig {
    fn node_count(&self) -> usize {
        if self.nodes > 0 {
            self.nodes
        } else {
            (self.precision as usize / 5).clamp(12, 64)
        }
    }

    /// Rounding level below which differences between refinements are noise.
    pub fn rounding_floor(&self) -> f64 {
        2f64.powi(10 - self.precision as i32)
    }
}

/// Line integrals and iterated integrals of the channels along one path.
#[derive(Debug, Clone, PartialEq)]
pub struct ChenData {
    pub line: Vec<Float>,
    /// `iter[a][b]` = ∫ (channel a)(channel b), a integrated first.
    pub iter: Vec<Vec<Float>>,
}

impl ChenData {
    pub fn zero(dim: usize, prec: u32) -> Self {
        Self {
            line: vec![Float::new(prec); dim],
            iter: vec![vec![Float::new(prec); dim]; dim],
        }
    }

    fn prec(&self) -> u32 {
        self.line[0].prec()
    }

    /// Data of the concatenation self·other.
    pub fn compose(&self, other: &ChenData) -> ChenData {
        let p = self.prec();
        let line = self
            .line
            .iter()
            .zip(&other.line)
            .map(|(a, b)| Float::with_val(p, a + b))
            .collect();
        let iter = self
            .iter
            .iter()
            .zip(&other.iter)
            .enumerate()
            .map(|(a, (ra, rb))| {
                ra.iter()
                    .zip(rb)
                    .enumerate()
                    .map(|(b, (x, y))| {
                        let cross = Float::with_val(p, &self.line[a] * &other.line[b]);
                        Float::with_val(p, x + y) + cross
                    })
                    .collect()
            })
            .collect();
        ChenData { line, iter }
    }

    /// Reversed path: line integrals negate, the iterated matrix transposes.
    pub fn inverse(&self) -> ChenData {
        let p = self.prec();
        let n = self.line.len();
        ChenData {
            line: self.line.iter().map(|x| Float::with_val(p, -x)).collect(),
            iter: (0..n)
                .map(|a| (0..n).map(|b| self.iter[b][a].clone()).collect())
                .collect(),
        }
    }

    /// Image under ι, which negates every channel.
    pub fn iota(&self) -> ChenData {
        let p = self.prec();
        ChenData {
            line: self.line.iter().map(|x| Float::with_val(p, -x)).collect(),
            iter: self.iter.clone(),
        }
    }

    fn max_diff(&self, other: &ChenData) -> (f64, f64) {
        let d = |x: &Float, y: &Float| Float::with_val(x.prec(), x - y).abs().to_f64();
        let line = self
            .line
            .iter()
            .zip(&other.line)
            .map(|(x, y)| d(x, y))
            .fold(0.0, f64::max);
        let iter = self
            .iter
            .iter()
            .zip(&other.iter)
            .flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| d(x, y)))
            .fold(0.0, f64::max);
        (line, iter)
    }
}

/// Integrals along the half-segment γ̃_j with their error estimates.
#[derive(Debug, Clone)]
pub struct HalfSegment {
    pub data: ChenData,
    pub panels: usize,
    pub err_line: f64,
    pub err_iter: f64,
}

/// A numeric value of I_{Q₀} on one basis element, reduced mod 1.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericVolume {
    pub value: f64,
    /// The nearest multiple of μ.
    pub nearest: QmodZ,
    pub lattice_distance: f64,
}

/// The numeric engine for one curve: all 2g+2 half-segments integrated up
/// front, so word integrals are pure algebra afterwards.
#[derive(Debug, Clone)]
pub struct Quadrature {
    curve: Curve,
    cfg: QuadConfig,
    gl: GaussLegendre,
    roots: Vec<ComplexHP>,
    norms: Vec<ComplexHP>,
    /// Embedded Ω_b⁻¹ and Ω_a⁻¹.
    alpha_coef: Vec<Vec<ComplexHP>>,
    beta_coef: Vec<Vec<ComplexHP>>,
    halves: Vec<HalfSegment>,
    segments: Vec<ChenData>,
}

impl Quadrature {
    pub fn new(curve: &Curve, cfg: QuadConfig) -> Result<Self> {
        let floor = cfg.rounding_floor();
        for target in [cfg.tol_line, cfg.tol_iterated] {
            if floor > target {
                return Err(Error::Convergence {
                    achieved: floor,
                    target,
                });
            }
        }
        let prec = cfg.precision;
        let g = curve.genus();
        let n = curve.order();
        let roots = (0..n as i64)
            .map(|j| ComplexHP::root_of_unity(j, n, prec))
            .collect();
        let half = Float::with_val(prec, 0.5);
        let mut norms = Vec::with_capacity(g);
        for l in 1..=g {
            let b = beta_function(&(Float::with_val(prec, l) / n), &half)?;
            // N√−1 / (2B(l/N, 1/2))
            let im = Float::with_val(prec, n) / (b * 2u32);
            norms.push(ComplexHP::from_parts(Float::new(prec), im));
        }
        let embed = |m: Vec<Vec<crate::exactfield::CycloNum>>| -> Vec<Vec<ComplexHP>> {
            m.iter()
                .map(|r| r.iter().map(|x| x.embed(prec)).collect())
                .collect()
        };
        let alpha_coef = embed(inverse(&curve.omega_b())?);
        let beta_coef = embed(inverse(&curve.omega_a())?);
        let mut q = Quadrature {
            curve: curve.clone(),
            gl: GaussLegendre::new(cfg.node_count(), prec),
            cfg,
            roots,
            norms,
            alpha_coef,
            beta_coef,
            halves: Vec::new(),
            segments: Vec::new(),
        };
        let halves = (0..n as usize)
            .into_par_iter()
            .map(|j| q.adaptive_half(j))
            .collect::<Result<Vec<_>>>()?;
        q.segments = halves
            .iter()
            .map(|h| h.data.compose(&h.data.iota().inverse()))
            .collect();
        q.halves = halves;
        Ok(q)
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn config(&self) -> &QuadConfig {
        &self.cfg
    }

    pub fn precision(&self) -> u32 {
        self.cfg.precision
    }

    pub fn halves(&self) -> &[HalfSegment] {
        &self.halves
    }

    /// Largest error estimate over all half-segments (line, iterated).
    pub fn error_estimates(&self) -> (f64, f64) {
        self.halves.iter().fold((0.0, 0.0), |(l, i), h| {
            (f64::max(l, h.err_line), f64::max(i, h.err_iter))
        })
    }

    fn dim(&self) -> usize {
        2 * self.curve.genus()
    }

    /// Channel densities (Re ω′_l, Im ω′_l per unit v) on γ̃_j at v ∈ (0, 1).
    fn channels(&self, j: usize, v: &Float) -> Vec<Float> {
        let p = self.cfg.precision;
        let n = self.curve.order();
        let u = Float::with_val(p, 1u32 - v);
        let s = Float::with_val(p, v * Float::with_val(p, 2u32 - v));
        let u2 = Float::with_val(p, u.clone().square());
        // 1 − s^N = −expm1(N·log1p(−u²))
        let lg = Float::with_val(p, -u2).ln_1p();
        let one_m = -Float::with_val(p, lg * n).exp_m1();
        let sq = one_m.sqrt();
        let root = &self.roots[j];
        let z = root.scale(&s);
        let dz = root.scale(&Float::with_val(p, &u * 2u32));
        let w = ComplexHP::from_parts(Float::new(p), sq);
        let base = dz.div(&w);
        let mut zp = ComplexHP::one(p);
        let mut out = Vec::with_capacity(self.dim());
        for c in &self.norms {
            let val = &(c * &zp) * &base;
            out.push(val.re);
            out.push(val.im);
            zp = &zp * &z;
        }
        out
    }

    /// Composite Gauss–Legendre with `panels` equal panels on γ̃_j.
    pub fn half_segment_at(&self, j: usize, panels: usize) -> ChenData {
        let p = self.cfg.precision;
        let dim = self.dim();
        let m = self.gl.len();
        let mut acc = vec![Float::new(p); dim];
        let mut iter = vec![vec![Float::new(p); dim]; dim];
        let h2 = Float::with_val(p, 0.5) / panels as u32;
        for panel in 0..panels {
            let a = Float::with_val(p, panel as u32) / panels as u32;
            let f: Vec<Vec<Float>> = self
                .gl
                .nodes
                .iter()
                .map(|x| {
                    let v = Float::with_val(p, &a + Float::with_val(p, x + 1u32) * &h2);
                    self.channels(j, &v)
                })
                .collect();
            // f[k][c]; weighted values wf[k][c] = h/2 · w_k · f
            let wf: Vec<Vec<Float>> = f
                .iter()
                .zip(&self.gl.weights)
                .map(|(row, w)| {
                    let s = Float::with_val(p, w * &h2);
                    row.iter().map(|x| Float::with_val(p, x * &s)).collect()
                })
                .collect();
            for k in 0..m {
                // inner integrals from the panel start to node k
                let inner: Vec<Float> = (0..dim)
                    .map(|c| {
                        let mut s = Float::new(p);
                        for (q, row) in f.iter().enumerate() {
                            s += Float::with_val(p, &self.gl.cumulative[k][q] * &row[c]);
                        }
                        Float::with_val(p, s * &h2) + &acc[c]
                    })
                    .collect();
                for (ca, fa) in inner.iter().enumerate() {
                    for cb in 0..dim {
                        iter[ca][cb] += Float::with_val(p, fa * &wf[k][cb]);
                    }
                }
            }
            for row in &wf {
                for (c, x) in row.iter().enumerate() {
                    acc[c] += x;
                }
            }
        }
        ChenData { line: acc, iter }
    }

    fn adaptive_half(&self, j: usize) -> Result<HalfSegment> {
        let floor = self.cfg.rounding_floor();
        let mut panels = 2;
        let mut prev = self.half_segment_at(j, panels);
        loop {
            panels *= 2;
            let next = self.half_segment_at(j, panels);
            let (dl, di) = prev.max_diff(&next);
            let (el, ei) = (dl + floor, di + floor);
            if el <= self.cfg.tol_line && ei <= self.cfg.tol_iterated {
                return Ok(HalfSegment {
                    data: next,
                    panels,
                    err_line: el,
                    err_iter: ei,
                });
            }
            if panels >= self.cfg.max_panels {
                let (achieved, target) = if ei > self.cfg.tol_iterated {
                    (ei, self.cfg.tol_iterated)
                } else {
                    (el, self.cfg.tol_line)
                };
                return Err(Error::Convergence { achieved, target });
            }
            prev = next;
        }
    }

    /// Coefficients of a form over the channels.
    pub fn form_coeffs(&self, form: FormSpec) -> Result<Vec<ComplexHP>> {
        let g = self.curve.genus();
        let i = form.index();
        if i == 0 || i > g {
            return Err(Error::IndexOutOfRange {
                what: "form index",
                value: i as i64,
                min: 1,
                max: g as i64,
            });
        }
        let p = self.cfg.precision;
        let zero = || ComplexHP::zero(p);
        let mut out = vec![zero(); 2 * g];
        match form {
            FormSpec::Omega(l) => {
                out[2 * (l - 1)] = ComplexHP::one(p);
                out[2 * (l - 1) + 1] = ComplexHP::from_f64(0.0, 1.0, p);
            }
            FormSpec::Alpha(_) | FormSpec::Beta(_) => {
                // Re(c·ω′) = Re c · Re ω′ − Im c · Im ω′
                let (m, sign) = match form {
                    FormSpec::Alpha(_) => (&self.alpha_coef, 1),
                    _ => (&self.beta_coef, -1),
                };
                for l in 0..g {
                    let c = &m[i - 1][l];
                    let re = Float::with_val(p, &c.re * sign);
                    let im = Float::with_val(p, &c.im * -sign);
                    out[2 * l] = ComplexHP::from_real(re);
                    out[2 * l + 1] = ComplexHP::from_real(im);
                }
            }
        }
        Ok(out)
    }

    fn letter_data(&self, l: Letter) -> ChenData {
        let mut d = self.segments[l.j].clone();
        if l.iota {
            d = d.iota();
        }
        if l.inverse {
            d = d.inverse();
        }
        d
    }

    pub fn word_data(&self, w: &PathWord) -> Result<ChenData> {
        if w.genus() != self.curve.genus() {
            return Err(Error::GenusMismatch(self.curve.genus(), w.genus()));
        }
        Ok(w.letters()
            .iter()
            .map(|&l| self.letter_data(l))
            .reduce(|a, b| a.compose(&b))
            .expect("words are nonempty"))
    }

    fn pair_line(&self, d: &ChenData, c: &[ComplexHP]) -> ComplexHP {
        let p = self.cfg.precision;
        c.iter()
            .zip(&d.line)
            .fold(ComplexHP::zero(p), |acc, (c, x)| &acc + &c.scale(x))
    }

    fn pair_iter(&self, d: &ChenData, c1: &[ComplexHP], c2: &[ComplexHP]) -> ComplexHP {
        let p = self.cfg.precision;
        let mut acc = ComplexHP::zero(p);
        for (a, row) in d.iter.iter().enumerate() {
            let mut inner = ComplexHP::zero(p);
            for (b, x) in row.iter().enumerate() {
                inner = &inner + &c2[b].scale(x);
            }
            acc = &acc + &(&c1[a] * &inner);
        }
        acc
    }

    pub fn word_line_integral(&self, w: &PathWord, form: FormSpec) -> Result<ComplexHP> {
        let d = self.word_data(w)?;
        Ok(self.pair_line(&d, &self.form_coeffs(form)?))
    }

    /// ∫_w f₁f₂ with f₁ integrated first.
    pub fn word_iterated_integral(
        &self,
        w: &PathWord,
        f1: FormSpec,
        f2: FormSpec,
    ) -> Result<ComplexHP> {
        let d = self.word_data(w)?;
        Ok(self.pair_iter(&d, &self.form_coeffs(f1)?, &self.form_coeffs(f2)?))
    }

    /// ∫ over (ι?)(e_j).
    pub fn segment_line_integral(&self, j: usize, iota: bool, form: FormSpec) -> Result<ComplexHP> {
        let l = Letter {
            j,
            iota,
            inverse: false,
        };
        self.word_line_integral(&PathWord::new(self.curve.genus(), vec![l])?, form)
    }

    /// ∫_{ℓ_ν} of a form, where ℓ_ν runs from Q₀ to P_ν.
    pub fn ell_line_integral(&self, nu: usize, form: FormSpec) -> Result<ComplexHP> {
        self.curve.check_nu(nu)?;
        Ok(self.pair_line(&self.halves[nu].data, &self.form_coeffs(form)?))
    }

    pub fn loop_word(&self, lp: Loop) -> Result<PathWord> {
        let g = self.curve.genus();
        match lp {
            Loop::A(k) => PathWord::a(g, k),
            Loop::B(k) => PathWord::b(g, k),
        }
    }

    /// Σ c·Re ∫_{loop(third)} dual(h₁)dual(h₂) mod 1 for β = Σ c·h₁⊗h₂.
    pub fn numeric_i_q0(&self, beta: &HTensor, third: Gen) -> Result<NumericVolume> {
        if beta.degree() != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                got: beta.degree(),
            });
        }
        let p = self.cfg.precision;
        let d = self.word_data(&self.loop_word(Loop::of(third))?)?;
        let mut total = Float::new(p);
        for (f, c) in beta.terms() {
            let c1 = self.form_coeffs(FormSpec::dual_of(f[0]))?;
            let c2 = self.form_coeffs(FormSpec::dual_of(f[1]))?;
            total += Float::with_val(p, self.pair_iter(&d, &c1, &c2).re * c);
        }
        let frac = Float::with_val(p, &total - Float::with_val(p, total.floor_ref()));
        let n = self.curve.order();
        let scaled = Float::with_val(p, &frac * n);
        let k = Float::with_val(p, scaled.round_ref());
        let distance = Float::with_val(p, &scaled - &k).abs().to_f64() / n as f64;
        let k = k.to_f64() as i64;
        Ok(NumericVolume {
            value: frac.to_f64(),
            nearest: self.curve.mu_multiple(k),
            lattice_distance: distance,
        })
    }
}

/// π at a given precision.
pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// Shortest distance between two reals on ℝ/ℤ.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::KCase;
    use std::sync::OnceLock;
    use Gen::{X, Y};

    fn quad2() -> &'static Quadrature {
        static Q: OnceLock<Quadrature> = OnceLock::new();
        Q.get_or_init(|| Quadrature::new(&Curve::new(2).unwrap(), QuadConfig::default()).unwrap())
    }

    fn close(z: &ComplexHP, re: f64, im: f64, tol: f64) -> bool {
        z.dist(&ComplexHP::from_f64(re, im, z.prec())) < tol
    }

    #[test]
    fn beta_values() {
        let p = 128;
        let h = Float::with_val(p, 0.5);
        let b = beta_function(&h, &h).unwrap();
        assert!(Float::with_val(p, b - pi(p)).abs() < 1e-36);
        let one = Float::with_val(p, 1);
        assert!(Float::with_val(p, beta_function(&one, &one).unwrap() - 1u32).abs() < 1e-36);
        assert!(beta_function(&Float::with_val(p, 0), &one).is_err());
        assert!(beta_function(&one, &Float::with_val(p, -1)).is_err());
    }

    #[test]
    fn beta_matches_direct_quadrature() {
        // B(1/6, 1/2) = ∫₀¹ x^{−5/6}(1−x)^{−1/2}dx; with x = t⁶ and t = 1 − r²
        // the integrand becomes 12r/√(1 − (1−r²)⁶), smooth on [0, 1]
        let p = 128;
        let gl = GaussLegendre::new(40, p);
        let panels = 16u32;
        let mut s = Float::new(p);
        for k in 0..panels {
            for (x, w) in gl.nodes.iter().zip(&gl.weights) {
                let r = Float::with_val(p, Float::with_val(p, x + 1u32) / 2u32 + k) / panels;
                let r2 = Float::with_val(p, r.clone().square());
                let lg = Float::with_val(p, -r2).ln_1p();
                let den = (-Float::with_val(p, lg * 6u32).exp_m1()).sqrt();
                let f = Float::with_val(p, r * 12u32) / den;
                s += Float::with_val(p, f * w) / (2 * panels);
            }
        }
        let b = beta_function(&(Float::with_val(p, 1) / 6u32), &Float::with_val(p, 0.5)).unwrap();
        assert!(Float::with_val(p, s - b).abs() < 1e-12);
    }

    #[test]
    fn segment_integrals_are_roots_of_unity() {
        let q = quad2();
        let n = q.curve().order();
        for j in 0..n as usize {
            for l in 1..=2 {
                let v = q.segment_line_integral(j, false, FormSpec::Omega(l)).unwrap();
                let expect = ComplexHP::root_of_unity((j * l) as i64, n, 128);
                assert!(v.dist(&expect) < 1e-25, "j={j} l={l}: {v}");
                let w = q.segment_line_integral(j, true, FormSpec::Omega(l)).unwrap();
                assert!((&v + &w).abs().to_f64() < 1e-25);
                let a = q.segment_line_integral(j, false, FormSpec::Alpha(l)).unwrap();
                assert!(a.im.clone().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn normalisation_on_loops() {
        let q = quad2();
        let a1 = PathWord::a(2, 1).unwrap();
        let b1 = PathWord::b(2, 1).unwrap();
        assert!(close(&q.word_line_integral(&a1, FormSpec::Omega(1)).unwrap(), 1.0, 0.0, 1e-8));
        assert!(close(&q.word_line_integral(&b1, FormSpec::Alpha(1)).unwrap(), 1.0, 0.0, 1e-8));
        assert!(close(&q.word_line_integral(&a1, FormSpec::Beta(1)).unwrap(), -1.0, 0.0, 1e-8));
    }

    #[test]
    fn trivial_words_vanish() {
        let q = quad2();
        for j in 0..6 {
            let w = PathWord::new(2, vec![Letter::e(j)]).unwrap();
            let t = w.concat(&w.inverse()).unwrap();
            for f in [FormSpec::Alpha(1), FormSpec::Beta(2), FormSpec::Omega(2)] {
                assert!(q.word_line_integral(&t, f).unwrap().abs().to_f64() < 1e-12);
                for f2 in [FormSpec::Alpha(2), FormSpec::Beta(1)] {
                    let v = q.word_iterated_integral(&t, f, f2).unwrap();
                    assert!(v.abs().to_f64() < 1e-10, "{v}");
                }
            }
        }
    }

    #[test]
    fn iterated_alpha_beta_on_a1() {
        let q = quad2();
        let a1 = PathWord::a(2, 1).unwrap();
        let v = q
            .word_iterated_integral(&a1, FormSpec::Alpha(1), FormSpec::Beta(1))
            .unwrap();
        assert!(close(&v, -1.0 / 3.0, 0.0, 1e-6), "{v}");
    }

    #[test]
    fn shuffle_on_segments() {
        let q = quad2();
        for j in 0..6 {
            let w = PathWord::new(2, vec![Letter::e(j)]).unwrap();
            let (a, b) = (FormSpec::Alpha(1), FormSpec::Beta(2));
            let ab = q.word_iterated_integral(&w, a, b).unwrap();
            let ba = q.word_iterated_integral(&w, b, a).unwrap();
            let prod = &q.word_line_integral(&w, a).unwrap() * &q.word_line_integral(&w, b).unwrap();
            assert!((&(&ab + &ba) - &prod).abs().to_f64() < 1e-9);
        }
    }

    #[test]
    fn refinement_stays_within_estimate() {
        let q = quad2();
        for (j, h) in q.halves().iter().enumerate() {
            let finer = q.half_segment_at(j, 2 * h.panels);
            let (dl, di) = h.data.max_diff(&finer);
            assert!(dl <= h.err_line && di <= h.err_iter, "j={j}");
        }
    }

    #[test]
    fn numeric_volume_examples() {
        let q = quad2();
        let c = q.curve();
        let mixed = KCase::Mixed {
            first: X(1),
            second: X(2),
        };
        let v = q.numeric_i_q0(&mixed.tensor(2), Y(1)).unwrap();
        assert!(circle_distance(v.value, 1.0 / 6.0) < 1e-5);
        assert_eq!(v.nearest, c.mu_multiple(1));
        let v = q.numeric_i_q0(&KCase::Symmetric { i: 1 }.tensor(2), X(1)).unwrap();
        assert!(circle_distance(v.value, 0.0) < 1e-5);
        let v = q.numeric_i_q0(&KCase::Square { gen: X(1) }.tensor(2), Y(1)).unwrap();
        assert!(circle_distance(v.value, 0.5) < 1e-5);
    }

    #[test]
    fn unreachable_tolerance_is_reported() {
        let cfg = QuadConfig {
            precision: 53,
            tol_iterated: 1e-20,
            ..QuadConfig::default()
        };
        let e = Quadrature::new(&Curve::new(2).unwrap(), cfg).unwrap_err();
        assert!(matches!(e, Error::Convergence { target, .. } if target == 1e-20));
    }
}
