use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{poly_exact_div, Poly};
use super::rational::Rational;
use super::MathError;

/// Reduced rational function `num / den`: `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

/// Cancels the common factor of `num` and `den` and makes the denominator monic.
pub fn ratfn_reduce(num: Poly, den: Poly) -> Result<RatFn, MathError> {
    if den.is_zero() {
        return Err(MathError::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RatFn {
            num,
            den: Poly::one(),
        });
    }
    let g = Poly::gcd(&num, &den);
    let num = poly_exact_div(&num, &g)?;
    let den = poly_exact_div(&den, &g)?;
    let lc = den.leading().expect("nonzero denominator").recip();
    Ok(RatFn {
        num: num.scale(&lc),
        den: den.scale(&lc),
    })
}

impl RatFn {
    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if its reduced denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        (self.den == Poly::one()).then_some(&self.num)
    }

    pub fn into_poly(self) -> Result<Poly, MathError> {
        if self.den == Poly::one() {
            Ok(self.num)
        } else {
            Err(MathError::NotDivisible {
                remainder_degree: self.den.degree(),
            })
        }
    }

    pub fn recip(&self) -> Result<Self, MathError> {
        ratfn_reduce(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, rhs: &RatFn) -> Result<Self, MathError> {
        if rhs.is_zero() {
            return Err(MathError::ZeroDenominator);
        }
        ratfn_reduce(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

fn reduced(num: Poly, den: Poly) -> RatFn {
    ratfn_reduce(num, den).expect("product of nonzero denominators is nonzero")
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.den == rhs.den {
            return reduced(&self.num + &rhs.num, self.den.clone());
        }
        reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    /// Panics on division by the zero function; see [`RatFn::try_div`].
    fn div(self, rhs: &RatFn) -> RatFn {
        self.try_div(rhs).expect("division by the zero rational function")
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.leading().is_some_and(One::is_one) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}
