use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use rug::float::Constant;
use rug::Float;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;

pub(crate) fn bigint_to_rug(x: &BigInt) -> rug::Integer {
    rug::Integer::from_str_radix(&x.to_str_radix(16), 16).expect("hex digits")
}

/// Rounds an exact rational to a float at `prec` bits.
pub fn rational_to_float(r: &BigRational, prec: u32) -> Float {
    let q = rug::Rational::from((bigint_to_rug(r.numer()), bigint_to_rug(r.denom())));
    Float::with_val(prec, q)
}

/// A complex number with MPFR real and imaginary parts at a fixed precision.
#[derive(Clone, PartialEq)]
pub struct ComplexHP {
    pub re: Float,
    pub im: Float,
}

impl ComplexHP {
    pub fn zero(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(1.0, 0.0, prec)
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    /// exp(2πi·k/n)
    pub fn root_of_unity(k: i64, n: u32, prec: u32) -> Self {
        let k = k.rem_euclid(n as i64);
        let mut angle = Float::with_val(prec + 16, Constant::Pi);
        angle *= 2 * k;
        angle /= n;
        let (s, c) = angle.sin_cos(Float::new(prec + 16));
        Self {
            re: Float::with_val(prec, c),
            im: Float::with_val(prec, s),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.clone().hypot(&self.im))
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re * k),
            im: Float::with_val(p, &self.im * k),
        }
    }

    pub fn inv(&self) -> Self {
        let p = self.prec();
        let d = Float::with_val(p, self.re.clone().square() + self.im.clone().square());
        Self {
            re: Float::with_val(p, &self.re / &d),
            im: Float::with_val(p, -(Float::with_val(p, &self.im / &d))),
        }
    }

    pub fn div(&self, rhs: &ComplexHP) -> Self {
        self * &rhs.inv()
    }

    /// Distance |self − other| as a double.
    pub fn dist(&self, other: &ComplexHP) -> f64 {
        (self - other).abs().to_f64()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for ComplexHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ComplexHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "{re:.17e}{im:+.17e}i")
    }
}

impl Add for &ComplexHP {
    type Output = ComplexHP;
    fn add(self, rhs: &ComplexHP) -> ComplexHP {
        let p = self.prec().max(rhs.prec());
        ComplexHP {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }
}

impl Sub for &ComplexHP {
    type Output = ComplexHP;
    fn sub(self, rhs: &ComplexHP) -> ComplexHP {
        let p = self.prec().max(rhs.prec());
        ComplexHP {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }
}

impl Mul for &ComplexHP {
    type Output = ComplexHP;
    fn mul(self, rhs: &ComplexHP) -> ComplexHP {
        let p = self.prec().max(rhs.prec());
        let rr = Float::with_val(p, &self.re * &rhs.re);
        let ii = Float::with_val(p, &self.im * &rhs.im);
        let ri = Float::with_val(p, &self.re * &rhs.im);
        let ir = Float::with_val(p, &self.im * &rhs.re);
        ComplexHP {
            re: rr - ii,
            im: ri + ir,
        }
    }
}

impl Neg for &ComplexHP {
    type Output = ComplexHP;
    fn neg(self) -> ComplexHP {
        ComplexHP {
            re: Float::with_val(self.prec(), -&self.re),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixth_root() {
        let z = ComplexHP::root_of_unity(1, 6, 128);
        let expect_im: Float = Float::with_val(128, 3).sqrt() / 2;
        assert!((z.re.clone() - 0.5f64).abs() < 1e-36);
        assert!(Float::with_val(128, &z.im - &expect_im).abs() < 1e-36);
    }

    #[test]
    fn inverse_roundtrip() {
        let z = ComplexHP::from_f64(0.3, -1.7, 128);
        let one = &z * &z.inv();
        assert!(one.dist(&ComplexHP::one(128)) < 1e-35);
    }
}
