//! Ordered field abstraction so the recursions run unchanged in double
//! precision, extended binary precision, or exact rational arithmetic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{rational_to_f64, Rational};

pub trait Scalar:
    Clone
    + PartialOrd
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn is_zero_value(&self) -> bool {
        *self == Self::zero()
    }

    fn abs_value(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn midpoint(a: &Self, b: &Self) -> Self {
        (a.clone() + b.clone()) / Self::from_i64(2)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn midpoint(a: &Self, b: &Self) -> Self {
        0.5 * (a + b)
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn abs_value(&self) -> Self {
        self.abs()
    }
}

type Float = FBig<HalfEven, 2>;

/// Binary floating point with a fixed working precision in bits.
///
/// Integer constants carry unlimited precision; every operation involving a
/// value created by [`BigReal::from_f64`] rounds to that value's precision.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigReal(Float);

impl BigReal {
    pub fn from_f64(v: f64, bits: usize) -> Self {
        let f = Float::try_from(v).expect("finite input");
        BigReal(f.with_precision(bits).value())
    }

    pub fn precision(&self) -> usize {
        self.0.precision()
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let d = self.0.to_decimal().value();
        let d = d.with_precision(digits).value();
        d.to_string()
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({})", self.to_decimal(30))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(40))
    }
}

macro_rules! bigreal_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal {
                BigReal(&self.0 $op &rhs.0)
            }
        }
    };
}
bigreal_op!(Add, add, +);
bigreal_op!(Sub, sub, -);
bigreal_op!(Mul, mul, *);
bigreal_op!(Div, div, /);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0)
    }
}

impl Scalar for BigReal {
    fn zero() -> Self {
        BigReal(Float::ZERO)
    }
    fn one() -> Self {
        BigReal(Float::ONE)
    }
    fn from_i64(v: i64) -> Self {
        BigReal(Float::from(v))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigreal_keeps_working_precision() {
        let third = BigReal::from_f64(1.0, 200) / BigReal::from_i64(3);
        assert_eq!(third.precision(), 200);
        let back = third.clone() * BigReal::from_i64(3);
        let err = (back - BigReal::one()).abs_value().to_f64();
        assert!(err < 1e-59, "{err}");
        assert!(third.to_decimal(20).starts_with("0.3333333333"));
    }

    #[test]
    fn midpoints_agree_across_types() {
        assert_eq!(<f64 as Scalar>::midpoint(&1.0, &2.0), 1.5);
        let r = <Rational as Scalar>::midpoint(&Rational::from_i64(1), &Rational::from_i64(2));
        assert_eq!(r.to_f64(), 1.5);
        let b = BigReal::midpoint(&BigReal::from_f64(1.0, 64), &BigReal::from_f64(2.0, 64));
        assert_eq!(b.to_f64(), 1.5);
    }
}
