//! Exact closed forms on C₀: w² = z^{2g+2} − 1. Values of t_u, the period
//! matrices, the iterated integrals ∫α_iβ_j over a_k and b_k, the base-point
//! correction Λ_ν, and the assembled pointed harmonic volume.

mod qmodz;
mod tables;

use std::sync::Arc;

use crate::combinat::HalfInt;
use crate::error::{Error, Result};
use crate::exactfield::{CycloNum, CyclotomicField, Rational};
use crate::homology::{check_genus, pair, Gen, HTensor, KBasis};

pub use qmodz::QmodZ;
pub use tables::{i_q0_table, theorem_table};

/// Which harmonic form dual to a generator: α_i ↔ x_i, β_i ↔ y_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HarmonicForm {
    Alpha(usize),
    Beta(usize),
}

impl HarmonicForm {
    pub fn dual_of(gen: Gen) -> Self {
        match gen {
            Gen::X(i) => HarmonicForm::Alpha(i),
            Gen::Y(i) => HarmonicForm::Beta(i),
        }
    }

    pub fn index(self) -> usize {
        match self {
            HarmonicForm::Alpha(i) | HarmonicForm::Beta(i) => i,
        }
    }
}

/// One of the symplectic loops a_k, b_k based at Q₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Loop {
    A(usize),
    B(usize),
}

impl Loop {
    /// The loop carrying a symplectic generator: x_k ↦ a_k, y_k ↦ b_k.
    pub fn of(gen: Gen) -> Self {
        match gen {
            Gen::X(k) => Loop::A(k),
            Gen::Y(k) => Loop::B(k),
        }
    }
}

/// Which exact engine assembles I_ν.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    /// I_{Q₀} table plus Λ_ν.
    Composed,
    /// The table of elements on which I_ν = 1/2.
    Table,
}

struct CurveData {
    genus: usize,
    order: u32,
    mu: Rational,
    field: CyclotomicField,
    /// t_u for u = 0…N−1 (t is N-periodic in u).
    t: Vec<CycloNum>,
    /// ∫_{ℓ_ν} α_i and ∫_{ℓ_ν} β_i, indexed [ν][i−1].
    ell_alpha: Vec<Vec<Rational>>,
    ell_beta: Vec<Vec<Rational>>,
}

/// The curve C₀ of genus g with its cyclotomic data. Cheap to clone.
#[derive(Clone)]
pub struct Curve(Arc<CurveData>);

impl std::fmt::Debug for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Curve(g={}, N={})", self.genus(), self.order())
    }
}

fn t_case(field: &CyclotomicField, g: usize, u: i64) -> CycloNum {
    let n = field.order() as i64;
    if u.rem_euclid(n) == 0 {
        field.from_int(g as i64)
    } else if u.rem_euclid(2) == 0 {
        field.from_int(-1)
    } else {
        let z = field.zeta_pow(u);
        (field.one() + &z) / (field.one() - &z)
    }
}

impl Curve {
    pub fn new(g: usize) -> Result<Self> {
        check_genus(g)?;
        let order = (2 * g + 2) as u32;
        let field = CyclotomicField::new(order)?;
        let mu = Rational::new(1.into(), (order as i64).into());
        let t: Vec<CycloNum> = (0..order as i64).map(|u| t_case(&field, g, u)).collect();
        let re_t = |u: i64| -> Rational {
            t[u.rem_euclid(order as i64) as usize]
                .real_part()
                .try_rational()
                .expect("Re t_u is rational")
        };
        let mut ell_alpha = Vec::new();
        let mut ell_beta = Vec::new();
        for nu in 0..order as i64 {
            let mut a = Vec::with_capacity(g);
            let mut b = Vec::with_capacity(g);
            for i in 1..=g as i64 {
                a.push(&mu * (re_t(nu - 2 * i) + re_t(nu - 2 * i + 1)));
                let s: Rational = (nu - 2 * i + 1..=nu).map(re_t).sum();
                b.push(-&mu * s);
            }
            ell_alpha.push(a);
            ell_beta.push(b);
        }
        Ok(Curve(Arc::new(CurveData {
            genus: g,
            order,
            mu,
            field,
            t,
            ell_alpha,
            ell_beta,
        })))
    }

    pub fn genus(&self) -> usize {
        self.0.genus
    }

    /// N = 2g + 2.
    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// μ = 1/N.
    pub fn mu(&self) -> &Rational {
        &self.0.mu
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.0.field
    }

    pub fn zeta(&self) -> CycloNum {
        self.0.field.zeta()
    }

    /// k·μ mod ℤ.
    pub fn mu_multiple(&self, k: i64) -> QmodZ {
        QmodZ::new(Rational::from_integer(k.into()) * &self.0.mu)
    }

    fn check_index(&self, what: &'static str, i: usize) -> Result<()> {
        if i == 0 || i > self.genus() {
            return Err(Error::IndexOutOfRange {
                what,
                value: i as i64,
                min: 1,
                max: self.genus() as i64,
            });
        }
        Ok(())
    }

    pub fn check_nu(&self, nu: usize) -> Result<()> {
        if nu >= self.order() as usize {
            return Err(Error::IndexOutOfRange {
                what: "base index ν",
                value: nu as i64,
                min: 0,
                max: self.order() as i64 - 1,
            });
        }
        Ok(())
    }

    /// t_u = Σ_{p=1}^g ζ^{up}, from the case table.
    pub fn t(&self, u: i64) -> CycloNum {
        self.0.t[u.rem_euclid(self.order() as i64) as usize].clone()
    }

    /// t_u from its defining power sum.
    pub fn t_power_sum(&self, u: i64) -> CycloNum {
        (1..=self.genus() as i64)
            .map(|p| self.0.field.zeta_pow(u * p))
            .fold(self.0.field.zero(), |acc, z| acc + z)
    }

    /// ∫_{a_j} ω′_i = ζ^{i(2j−1)}(1 − ζ^i).
    pub fn period_a(&self, i: usize, j: usize) -> Result<CycloNum> {
        self.check_index("form index i", i)?;
        self.check_index("loop index j", j)?;
        let f = &self.0.field;
        let (i, j) = (i as i64, j as i64);
        Ok(f.zeta_pow(i * (2 * j - 1)) * (f.one() - f.zeta_pow(i)))
    }

    /// ∫_{b_j} ω′_i = (ζ^{2ij} − 1)/(ζ^i + 1).
    pub fn period_b(&self, i: usize, j: usize) -> Result<CycloNum> {
        self.check_index("form index i", i)?;
        self.check_index("loop index j", j)?;
        let f = &self.0.field;
        let (i, j) = (i as i64, j as i64);
        (f.zeta_pow(2 * i * j) - f.one()).try_div(&(f.zeta_pow(i) + f.one()))
    }

    /// Ω_a with rows indexed by form i and columns by loop j.
    pub fn omega_a(&self) -> Vec<Vec<CycloNum>> {
        let g = self.genus();
        (1..=g)
            .map(|i| (1..=g).map(|j| self.period_a(i, j).expect("in range")).collect())
            .collect()
    }

    pub fn omega_b(&self) -> Vec<Vec<CycloNum>> {
        let g = self.genus();
        (1..=g)
            .map(|i| (1..=g).map(|j| self.period_b(i, j).expect("in range")).collect())
            .collect()
    }

    /// Closed form of ∫ α_iβ_j over a_k or b_k; always real.
    pub fn iter_ab_closed(&self, i: usize, j: usize, lp: Loop) -> Result<CycloNum> {
        self.check_index("index i", i)?;
        self.check_index("index j", j)?;
        let g = self.genus() as i64;
        let c = Rational::new((-1).into(), (2 * (g + 1) * (g + 1)).into());
        let (i, j) = (i as i64, j as i64);
        let t = |u: i64| self.t(u);
        let v = match lp {
            Loop::A(k) => {
                self.check_index("loop index k", k)?;
                let k = k as i64;
                t(2 * k - 2 * i) * (t(2 * k - 2 * j) - t(2 * k))
            }
            Loop::B(k) => {
                self.check_index("loop index k", k)?;
                let k = k as i64;
                (1..=k)
                    .map(|u| {
                        let inner = (1..=j)
                            .map(|v| t(2 * v + 2 * u - 2 * j - 2))
                            .fold(self.0.field.zero(), |a, b| a + b);
                        (t(2 * u - 2 * i - 2) - t(2 * u - 2 * i)) * inner
                    })
                    .fold(self.0.field.zero(), |a, b| a + b)
            }
        }
        .scale(&c);
        assert!(v.is_real(), "∫α_iβ_j closed form must be real");
        Ok(v)
    }

    /// ∫_{ℓ_ν} of a harmonic form, exactly.
    pub fn ell_integral(&self, form: HarmonicForm, nu: usize) -> Result<Rational> {
        self.check_nu(nu)?;
        self.check_index("form index", form.index())?;
        Ok(match form {
            HarmonicForm::Alpha(i) => self.0.ell_alpha[nu][i - 1].clone(),
            HarmonicForm::Beta(i) => self.0.ell_beta[nu][i - 1].clone(),
        })
    }

    fn ell_gen(&self, gen: Gen, nu: usize) -> &Rational {
        match gen {
            Gen::X(i) => &self.0.ell_alpha[nu][i - 1],
            Gen::Y(i) => &self.0.ell_beta[nu][i - 1],
        }
    }

    /// Λ_ν(A) = Σ c · [(h₁,h₃)∫_{ℓ_ν}h₂ − (h₂,h₃)∫_{ℓ_ν}h₁] mod ℤ.
    pub fn lambda_nu(&self, a: &HTensor, nu: usize) -> Result<QmodZ> {
        self.check_tensor(a)?;
        self.check_nu(nu)?;
        a.check_in_k_tensor_h()?;
        let total: Rational = a
            .terms()
            .map(|(f, c)| {
                let (h1, h2, h3) = (f[0], f[1], f[2]);
                let v = Rational::from_integer(pair(h1, h3).into()) * self.ell_gen(h2, nu)
                    - Rational::from_integer(pair(h2, h3).into()) * self.ell_gen(h1, nu);
                v * Rational::from_integer(c.into())
            })
            .sum();
        Ok(QmodZ::new(total))
    }

    fn check_tensor(&self, a: &HTensor) -> Result<()> {
        if a.genus() != self.genus() {
            return Err(Error::GenusMismatch(self.genus(), a.genus()));
        }
        if a.degree() != 3 {
            return Err(Error::DegreeMismatch {
                expected: 3,
                got: a.degree(),
            });
        }
        Ok(())
    }

    /// I_ν(A) ∈ {0, 1/2} by the chosen engine.
    pub fn harmonic_volume(
        &self,
        kb: &KBasis,
        a: &HTensor,
        nu: usize,
        engine: Engine,
    ) -> Result<HalfInt> {
        self.check_tensor(a)?;
        self.check_nu(nu)?;
        if kb.genus() != self.genus() {
            return Err(Error::GenusMismatch(self.genus(), kb.genus()));
        }
        let coeffs = kb.expand(a)?;
        let value = match engine {
            Engine::Composed => {
                let q0 = coeffs
                    .iter()
                    .map(|k| i_q0_table(self, &kb.elements()[k.basis].case, k.third) * k.coeff)
                    .fold(QmodZ::zero(), |a, b| a + b);
                q0 + self.lambda_nu(a, nu)?
            }
            Engine::Table => coeffs
                .iter()
                .map(|k| {
                    let h = theorem_table(&kb.elements()[k.basis].case, k.third, nu);
                    QmodZ::from(h) * k.coeff
                })
                .fold(QmodZ::zero(), |a, b| a + b),
        };
        value.to_half_int()
    }
}

/// Determinant of a square matrix over ℚ(ζ).
pub fn determinant(m: &[Vec<CycloNum>]) -> Result<CycloNum> {
    let n = m.len();
    let field = m[0][0].field().clone();
    let mut a = m.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Ok(field.zero());
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv()?;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for k in c..n {
                let d = &f * &a[c][k];
                a[r][k] = &a[r][k] - &d;
            }
        }
    }
    Ok(det)
}

/// Inverse of a square matrix over ℚ(ζ) by Gauss–Jordan elimination.
pub fn inverse(m: &[Vec<CycloNum>]) -> Result<Vec<Vec<CycloNum>>> {
    let n = m.len();
    let field = m[0][0].field().clone();
    let mut a: Vec<Vec<CycloNum>> = m
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut row = row.clone();
            row.extend((0..n).map(|k| if k == r { field.one() } else { field.zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !a[r][c].is_zero())
            .ok_or(Error::DivisionByZero)?;
        a.swap(p, c);
        let inv = a[c][c].inv()?;
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = &*x - &(&f * p);
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}
