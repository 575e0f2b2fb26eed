use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Coefficient, LaurentPoly, QCoefficient, Rational};
use crate::error::{Error, Result};

/// Quotient of two Laurent polynomials. Not kept reduced; equality is
/// cross-multiplication equality.
#[derive(Clone)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Self { num, den: LaurentPoly::one() }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Limit as `t -> 1`: strips common `(t - 1)` factors by synthetic
    /// division, then evaluates.
    pub fn limit_at_one(&self) -> Result<Rational> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        loop {
            let d1 = den.eval_at_one();
            if !d1.is_zero() {
                return Ok(num.eval_at_one() / d1);
            }
            den = den.div_t_minus_one().expect("vanishes at one");
            num = match num.div_t_minus_one() {
                Some(q) => q,
                None => return Err(Error::PoleAtOne),
            };
        }
    }

    /// The quotient as a Laurent polynomial, when the division is exact.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        self.num.div_exact(&self.den)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        RationalFunction { num: &self.num * &rhs.den + &rhs.num * &self.den, den: &self.den * &rhs.den }
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction { num: -self.num, den: self.den }
    }
}

super::forward_binops!(RationalFunction);

impl Coefficient for RationalFunction {
    fn unit_inverse(&self) -> Option<Self> {
        self.recip().ok()
    }
}

impl QCoefficient for RationalFunction {
    fn mul_t_pow(&self, k: i64) -> Self {
        RationalFunction { num: self.num.shift(k), den: self.den.clone() }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
