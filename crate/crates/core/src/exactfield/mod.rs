//! Exact arithmetic in the cyclotomic field ℚ(ζ_N).
//!
//! Elements are stored as polynomials in ζ of degree < φ(N), reduced modulo
//! the N-th cyclotomic polynomial, so equality is coefficient-wise. ζ embeds
//! into ℂ as exp(2πi/N).

mod hp;
mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rug::Float;

use crate::error::{Error, Result};

pub use hp::{rational_to_float, ComplexHP, DEFAULT_PRECISION};
pub use poly::{cyclotomic_polynomial, euler_phi};

pub type Rational = BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

struct FieldData {
    order: u32,
    degree: usize,
    modulus: Vec<Rational>,
    /// Canonical coefficients of z^k for k in 0..max(N, 2φ−1).
    powers: Vec<Vec<Rational>>,
}

/// Handle on ℚ(ζ_N). Cheap to clone.
#[derive(Clone)]
pub struct CyclotomicField(Arc<FieldData>);

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Self> {
        if order < 3 {
            return Err(Error::InvalidArgument(format!(
                "cyclotomic order must be at least 3, got {order}"
            )));
        }
        let modulus: Vec<Rational> = cyclotomic_polynomial(order)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        let degree = modulus.len() - 1;
        let count = (order as usize).max(2 * degree - 1);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![Rational::zero(); degree];
        cur[0] = Rational::one();
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by z and fold the overflow coefficient using the monic modulus
            let top = cur.pop().expect("degree ≥ 1");
            cur.insert(0, Rational::zero());
            if !top.is_zero() {
                for (c, m) in cur.iter_mut().zip(&modulus) {
                    *c -= &top * m;
                }
            }
        }
        Ok(Self(Arc::new(FieldData {
            order,
            degree,
            modulus,
            powers,
        })))
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// φ(N), the dimension over ℚ.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    fn same(&self, other: &CyclotomicField) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.order() == other.order()
    }

    fn element(&self, coeffs: Vec<Rational>) -> CycloNum {
        debug_assert_eq!(coeffs.len(), self.degree());
        CycloNum {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn zero(&self) -> CycloNum {
        self.element(vec![Rational::zero(); self.degree()])
    }

    pub fn one(&self) -> CycloNum {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> CycloNum {
        let mut c = vec![Rational::zero(); self.degree()];
        c[0] = r;
        self.element(c)
    }

    pub fn from_int(&self, n: i64) -> CycloNum {
        self.from_rational(Rational::from_integer(n.into()))
    }

    pub fn zeta(&self) -> CycloNum {
        self.zeta_pow(1)
    }

    /// ζ^u for any integer u, taken modulo N first.
    pub fn zeta_pow(&self, u: i64) -> CycloNum {
        let k = u.rem_euclid(self.order() as i64) as usize;
        self.element(self.0.powers[k].clone())
    }

    /// Reduces an arbitrary polynomial in ζ (lowest degree first).
    pub fn from_poly(&self, poly: &[Rational]) -> CycloNum {
        let n = self.order() as usize;
        let mut out = vec![Rational::zero(); self.degree()];
        for (k, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&self.0.powers[k % n]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        self.element(out)
    }
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order())
    }
}

/// An exact element of ℚ(ζ_N) in canonical form.
#[derive(Clone)]
pub struct CycloNum {
    field: CyclotomicField,
    coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact field arithmetic with explicit errors for order mismatch and
/// division by zero.
pub fn field_arith(a: &CycloNum, b: &CycloNum, op: FieldOp) -> Result<CycloNum> {
    match op {
        FieldOp::Add => a.try_add(b),
        FieldOp::Sub => a.try_sub(b),
        FieldOp::Mul => a.try_mul(b),
        FieldOp::Div => a.try_div(b),
    }
}

impl CycloNum {
    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    /// Coefficients of 1, ζ, …, ζ^{φ(N)−1}.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &CycloNum) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn try_add(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check(other)?;
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b);
        Ok(self.field.element(c.collect()))
    }

    pub fn try_sub(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check(other)?;
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b);
        Ok(self.field.element(c.collect()))
    }

    pub fn try_mul(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check(other)?;
        let prod = poly::mul(&self.coeffs, &other.coeffs);
        Ok(self.field.from_poly(&prod))
    }

    pub fn try_div(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check(other)?;
        let inv = other.inv()?;
        self.try_mul(&inv)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in ℚ[z].
    pub fn inv(&self) -> Result<CycloNum> {
        let inv = poly::inverse_mod(&self.coeffs, &self.field.0.modulus)
            .ok_or(Error::DivisionByZero)?;
        Ok(self.field.from_poly(&inv))
    }

    pub fn scale(&self, r: &Rational) -> CycloNum {
        self.field
            .element(self.coeffs.iter().map(|c| c * r).collect())
    }

    /// Complex conjugation ζ ↦ ζ^{N−1}.
    pub fn conj(&self) -> CycloNum {
        let n = self.order() as i64;
        let mut out = self.field.zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.field.0.powers[((n - k as i64) % n) as usize];
            for (o, pk) in out.coeffs.iter_mut().zip(p) {
                if !pk.is_zero() {
                    *o += c * pk;
                }
            }
        }
        out
    }

    /// (a + ā)/2, the real part under every embedding.
    pub fn real_part(&self) -> CycloNum {
        (self + &self.conj()).scale(&rat(1, 2))
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// The rational value if this element lies in ℚ.
    pub fn try_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Evaluates at ζ = exp(2πi/N) with `precision` bits.
    pub fn embed(&self, precision: u32) -> ComplexHP {
        let work = precision + 32;
        let zeta = ComplexHP::root_of_unity(1, self.order(), work);
        let mut acc = ComplexHP::zero(work);
        for c in self.coeffs.iter().rev() {
            acc = &acc * &zeta;
            acc.re += rational_to_float(c, work);
        }
        acc.with_prec(precision)
    }

    pub fn to_c64(&self) -> (f64, f64) {
        self.embed(64).to_f64()
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (N={})", self.order())
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Operator forms panic on order mismatch and division by zero; use the
// `try_*` methods or `field_arith` where those are recoverable conditions.
macro_rules! forward_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr for &CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                self.$f(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                self.$m(&rhs)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);
forward_op!(Div, div, try_div);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        self.field.element(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

/// Real part of an embedded value as an MPFR float.
pub fn embed_real(a: &CycloNum, precision: u32) -> Float {
    a.embed(precision).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f6() -> CyclotomicField {
        CyclotomicField::new(6).unwrap()
    }

    #[test]
    fn zeta_times_inverse_power() {
        for n in [6u32, 8, 10, 12, 14] {
            let f = CyclotomicField::new(n).unwrap();
            assert_eq!(&f.zeta() * &f.zeta_pow(n as i64 - 1), f.one());
            assert_eq!(f.zeta_pow(n as i64), f.one());
            assert_eq!(f.zeta_pow(-1), f.zeta_pow(n as i64 - 1));
        }
    }

    #[test]
    fn one_minus_zeta_inverse() {
        let f = CyclotomicField::new(10).unwrap();
        let a = &f.one() - &f.zeta();
        assert_eq!(&a * &a.inv().unwrap(), f.one());
    }

    #[test]
    fn n6_quotient() {
        let f = f6();
        let z = f.zeta();
        let q = (&f.one() + &z) / (&f.one() - &z);
        let expect = &z.scale(&rat(2, 1)) - &f.one();
        assert_eq!(q, expect);
        let e = q.embed(128);
        let sqrt3 = Float::with_val(128, 3).sqrt();
        assert!(e.re.clone().abs() < 1e-36);
        assert!((e.im.clone() - sqrt3).abs() < 1e-36);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = f6();
        assert_eq!(f.one().try_div(&f.zero()), Err(Error::DivisionByZero));
        let g = CyclotomicField::new(8).unwrap();
        assert_eq!(f.one().try_add(&g.one()), Err(Error::OrderMismatch(6, 8)));
        assert!(field_arith(&f.one(), &g.one(), FieldOp::Mul).is_err());
    }

    #[test]
    fn real_part_examples() {
        let f = f6();
        assert_eq!(f.zeta().real_part(), f.from_rational(rat(1, 2)));
        for n in [6u32, 8, 12] {
            let f = CyclotomicField::new(n).unwrap();
            for k in 0..n as i64 {
                let s = &f.zeta_pow(k) + &f.zeta_pow(n as i64 - k);
                assert_eq!(s.real_part(), s);
            }
        }
    }

    #[test]
    fn rational_extraction() {
        let f = f6();
        assert_eq!(f.from_rational(rat(5, 3)).try_rational(), Some(rat(5, 3)));
        assert_eq!(f.zeta().try_rational(), None);
    }

    #[test]
    fn embed_small_values() {
        let f = f6();
        assert!(f.one().embed(128).dist(&ComplexHP::one(128)) < 1e-38);
        let z = f.zeta().embed(128);
        assert!(z.dist(&ComplexHP::root_of_unity(1, 6, 128)) < 1e-37);
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=7).prop_map(|(n, d)| rat(n, d))
    }

    fn element(n: u32) -> impl Strategy<Value = CycloNum> {
        let f = CyclotomicField::new(n).unwrap();
        prop::collection::vec(small_rat(), f.degree()).prop_map(move |c| f.element(c))
    }

    fn any_element() -> impl Strategy<Value = (CycloNum, CycloNum)> {
        prop_oneof![Just(6u32), Just(8), Just(10), Just(12)]
            .prop_flat_map(|n| (element(n), element(n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn embedding_is_a_homomorphism((a, b) in any_element()) {
            let tol = Float::with_val(128, Float::u_exp(1, -100));
            let tol = tol.to_f64();
            let (ea, eb) = (a.embed(128), b.embed(128));
            prop_assert!((&a + &b).embed(128).dist(&(&ea + &eb)) < tol);
            prop_assert!((&a - &b).embed(128).dist(&(&ea - &eb)) < tol);
            prop_assert!((&a * &b).embed(128).dist(&(&ea * &eb)) < tol);
            if !b.is_zero() {
                let lhs = (&a / &b).embed(128);
                let rhs = ea.div(&eb);
                let scale = rhs.abs().to_f64().max(1.0);
                prop_assert!(lhs.dist(&rhs) < tol * scale);
            }
        }

        #[test]
        fn conjugation_laws((a, _b) in any_element()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            let r = a.real_part();
            prop_assert_eq!(r.conj(), r.clone());
            prop_assert_eq!(r.real_part(), r);
        }

        #[test]
        fn rational_arithmetic_stays_rational(p in small_rat(), q in small_rat()) {
            let f = CyclotomicField::new(8).unwrap();
            let (a, b) = (f.from_rational(p.clone()), f.from_rational(q.clone()));
            prop_assert_eq!((&a + &b).try_rational(), Some(&p + &q));
            prop_assert_eq!((&a - &b).try_rational(), Some(&p - &q));
            prop_assert_eq!((&a * &b).try_rational(), Some(&p * &q));
            if !q.is_zero() {
                prop_assert_eq!((&a / &b).try_rational(), Some(&p / &q));
            }
        }
    }
}
