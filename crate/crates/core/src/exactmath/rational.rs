use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics when `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// The integer value of `x`, if it is an integer that fits in an `i64`.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, when it is a rational square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().magnitude().sqrt();
    let d = x.denom().magnitude().sqrt();
    let r = Rational::new(BigInt::from(n), BigInt::from(d));
    if &(&r * &r) == x {
        Some(r)
    } else {
        None
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Floor and ceiling of a rational as `i64`.
pub fn floor_i64(x: &Rational) -> i64 {
    x.floor().to_integer().to_i64().expect("floor fits in i64")
}

pub fn ceil_i64(x: &Rational) -> i64 {
    x.ceil().to_integer().to_i64().expect("ceil fits in i64")
}

/// A number `r + x·ξ` where ξ is a fixed transcendental.
///
/// Used for weights at irrational level: every pairing of such a weight with a
/// root is affine-linear in ξ, so integrality questions stay exact.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtRational {
    pub r: Rational,
    pub x: Rational,
}

impl ExtRational {
    pub fn rational(r: Rational) -> Self {
        ExtRational { r, x: Rational::zero() }
    }

    pub fn new(r: Rational, x: Rational) -> Self {
        ExtRational { r, x }
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.x.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.x.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.x.is_zero() {
            Some(&self.r)
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.x.is_zero() && is_integer(&self.r)
    }

    /// Integer value when rational and integral.
    pub fn to_i64(&self) -> Option<i64> {
        self.as_rational().and_then(to_i64)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ExtRational { r: &self.r * c, x: &self.x * c }
    }

    /// Product, defined when at least one factor is rational.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if other.x.is_zero() {
            Ok(self.scale(&other.r))
        } else if self.x.is_zero() {
            Ok(other.scale(&self.r))
        } else {
            Err(Error::Domain("product of two irrational quantities".into()))
        }
    }

    /// Quotient by a nonzero rational.
    pub fn div_rational(&self, c: &Rational) -> Self {
        ExtRational { r: &self.r / c, x: &self.x / c }
    }

    /// Sign when the value is known to be comparable with zero. For a nonzero
    /// ξ-part the sign is that of the ξ-part only if ξ is treated as positive
    /// and large, which we never assume; such values return `None`.
    pub fn sign(&self) -> Option<i8> {
        if !self.x.is_zero() {
            return None;
        }
        Some(if self.r.is_zero() {
            0
        } else if self.r.is_positive() {
            1
        } else {
            -1
        })
    }
}

impl Add for &ExtRational {
    type Output = ExtRational;
    fn add(self, o: &ExtRational) -> ExtRational {
        ExtRational { r: &self.r + &o.r, x: &self.x + &o.x }
    }
}

impl Sub for &ExtRational {
    type Output = ExtRational;
    fn sub(self, o: &ExtRational) -> ExtRational {
        ExtRational { r: &self.r - &o.r, x: &self.x - &o.x }
    }
}

impl Neg for &ExtRational {
    type Output = ExtRational;
    fn neg(self) -> ExtRational {
        ExtRational { r: -&self.r, x: -&self.x }
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::rational(r)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_zero() {
            write!(f, "{}", self.r)
        } else if self.r.is_zero() {
            write!(f, "{}*xi", self.x)
        } else {
            write!(f, "{} + {}*xi", self.r, self.x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(rational_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(rational_sqrt(&frac(2, 1)), None);
        assert_eq!(rational_sqrt(&frac(-1, 1)), None);
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
    }

    #[test]
    fn ext_integrality() {
        let a = ExtRational::new(int(3), int(0));
        let b = ExtRational::new(int(3), frac(1, 2));
        assert!(a.is_integer());
        assert!(!b.is_integer());
        assert!((&b - &ExtRational::new(int(1), frac(1, 2))).is_integer());
        assert!(b.mul(&b).is_err());
        assert_eq!(b.mul(&a).unwrap(), ExtRational::new(int(9), frac(3, 2)));
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(floor_i64(&frac(-7, 2)), -4);
        assert_eq!(ceil_i64(&frac(-7, 2)), -3);
        assert_eq!(floor_i64(&int(5)), 5);
    }
}
