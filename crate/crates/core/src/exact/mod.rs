//! Exact arithmetic: big rationals, Laurent polynomials in `t = q^{1/2}`,
//! univariate rational functions and their limits at `t = 1`.

mod cyclotomic;
mod laurent;
mod ratfunc;
pub mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use cyclotomic::{cyclotomic_poly, CyclotomicFraction};
pub use laurent::LaurentPoly;
pub use ratfunc::RationalFunction;
pub use rational::{format_rational, frac, int, is_integral, parse_rational, Rational};

/// Ring elements usable as series coefficients.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse when `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    /// Rewrites into a smaller equivalent representation. No-op by default.
    fn normalize(self) -> Self {
        self
    }
}

/// Coefficients that are functions of `t = q^{1/2}`.
pub trait QCoefficient: Coefficient {
    fn mul_t_pow(&self, k: i64) -> Self;
}

impl Coefficient for Rational {
    fn unit_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Coefficient for LaurentPoly {
    fn unit_inverse(&self) -> Option<Self> {
        self.as_monomial().map(|(e, c)| LaurentPoly::monomial(-e, c.recip()))
    }
}

impl QCoefficient for LaurentPoly {
    fn mul_t_pow(&self, k: i64) -> Self {
        self.shift(k)
    }
}

/// `(q;q)_d = prod_{k=1}^{d} (1 - q^k)`, expressed in `t = q^{1/2}`.
pub fn pochhammer_qq(d: u32) -> LaurentPoly {
    (1..=i64::from(d)).fold(LaurentPoly::one(), |acc, k| &acc * &(&LaurentPoly::one() - &LaurentPoly::t_pow(2 * k)))
}

/// Generalized binomial `top (top-1) ... (top-k+1) / k!` over any ring
/// containing the rationals; `top` may be negative or symbolic.
pub fn gen_binomial<T>(top: &T, k: u32) -> T
where
    T: Clone + One + Sub<Output = T> + Mul<Output = T> + From<Rational>,
{
    let mut acc = T::one();
    let mut fact = Rational::one();
    for j in 0..k {
        acc = acc * (top.clone() - T::from(int(j.into())));
        fact *= int(i64::from(j) + 1);
    }
    acc * T::from(fact.recip())
}

/// Fills in owned/borrowed combinations of `Add`, `Sub` and `Mul` from the
/// `&T op &T` implementations.
macro_rules! forward_binops {
    ($t:ty) => {
        $crate::exact::forward_binops!(@op $t, Add, add);
        $crate::exact::forward_binops!(@op $t, Sub, sub);
        $crate::exact::forward_binops!(@op $t, Mul, mul);
    };
    (@op $t:ty, $tr:ident, $m:ident) => {
        impl std::ops::$tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
        impl std::ops::$tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                std::ops::$tr::$m(&self, rhs)
            }
        }
        impl std::ops::$tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                std::ops::$tr::$m(self, &rhs)
            }
        }
    };
}
pub(crate) use forward_binops;
