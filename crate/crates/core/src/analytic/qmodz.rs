use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::combinat::HalfInt;
use crate::error::{Error, Result};
use crate::exactfield::Rational;

/// A rational number modulo ℤ, stored in [0, 1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QmodZ(Rational);

impl QmodZ {
    pub fn new(r: Rational) -> Self {
        let fl = r.floor();
        QmodZ(r - fl)
    }

    pub fn zero() -> Self {
        QmodZ(Rational::zero())
    }

    pub fn half() -> Self {
        QmodZ(Rational::new(1.into(), 2.into()))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_half_int(&self) -> Result<HalfInt> {
        if self.0.is_zero() {
            Ok(HalfInt::Zero)
        } else if self == &QmodZ::half() {
            Ok(HalfInt::Half)
        } else {
            Err(Error::OutOfRange(self.to_string()))
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Numerator k when the value is written as k/den (den must be a
    /// multiple of the reduced denominator).
    pub fn numerator_over(&self, den: i64) -> Option<i64> {
        let d: num_bigint::BigInt = den.into();
        if !d.is_multiple_of(self.0.denom()) {
            return None;
        }
        let k = self.0.numer() * (d / self.0.denom());
        k.try_into().ok()
    }
}

impl From<HalfInt> for QmodZ {
    fn from(h: HalfInt) -> Self {
        match h {
            HalfInt::Zero => QmodZ::zero(),
            HalfInt::Half => QmodZ::half(),
        }
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(self.0 + rhs.0)
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(self.0 - rhs.0)
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-self.0)
    }
}

impl Mul<i64> for QmodZ {
    type Output = QmodZ;
    fn mul(self, k: i64) -> QmodZ {
        QmodZ::new(self.0 * Rational::from_integer(k.into()))
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}
