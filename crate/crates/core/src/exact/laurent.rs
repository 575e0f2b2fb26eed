//! Laurent polynomials in one variable with rational coefficients.
//!
//! For q-series the variable is `t = q^{1/2}`, so every half-integer power of
//! `q` is an integer exponent here.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `t^exp` with unit coefficient.
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(exp, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((exp, coeff))` when the polynomial is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(i64, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        assert!(!x.is_zero() || self.min_exp().is_none_or(|e| e >= 0), "negative power of zero");
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| acc + c * pow_i64(x, *e))
    }

    pub fn shift(&self, by: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `t -> t^k` for `k >= 1`.
    pub fn inflate(&self, k: i64) -> Self {
        assert!(k >= 1);
        Self { terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect() }
    }

    /// Synthetic division by `(t - 1)`. Returns the quotient when the
    /// remainder vanishes, i.e. when the polynomial has a root at `t = 1`.
    pub fn div_t_minus_one(&self) -> Option<Self> {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Some(Self::zero()),
        };
        // Dense coefficients of t^{-lo} * self, highest first.
        let mut quotient = Self::zero();
        let mut carry = Rational::zero();
        for e in (lo + 1..=hi).rev() {
            carry += self.coeff(e);
            quotient.add_term(e - 1, carry.clone());
        }
        let remainder = carry + self.coeff(lo);
        remainder.is_zero().then_some(quotient)
    }

    /// Order of vanishing at `t = 1`.
    pub fn order_at_one(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.div_t_minus_one() {
            p = q;
            k += 1;
        }
        Some(k)
    }

    /// Long division of Laurent polynomials. Fails unless the divisor divides
    /// exactly (up to a unit `t^k`).
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let d_lo = divisor.min_exp().unwrap();
        let d_hi = divisor.max_exp().unwrap();
        let lead = divisor.coeff(d_hi);
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some(r_hi) = rem.max_exp() {
            let r_lo = rem.min_exp().unwrap();
            // Once the remainder is narrower than the divisor nothing more can cancel.
            if r_hi - r_lo < d_hi - d_lo {
                return Err(Error::NonPolynomialQuotient);
            }
            let c = rem.coeff(r_hi) / &lead;
            let e = r_hi - d_hi;
            rem = &rem - &divisor.shift(e).scale(&c);
            quotient.add_term(e, c);
        }
        Ok(quotient)
    }
}

fn pow_i64(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                *acc.entry(ea + eb).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

super::forward_binops!(LaurentPoly);

impl fmt::Display for LaurentPoly {
    /// Renders in the variable `t`, lowest exponent first: `2 + t^-2` prints
    /// as `t^-2 + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (e, true) => write!(f, "t^{e}")?,
                (e, false) => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Serializes as `[[exponent, "num/den"], ...]` sorted by exponent.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, format_rational(c)))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, int};
    use proptest::prelude::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn arithmetic_cancels_zero_terms() {
        let a = p(&[(0, 1), (2, -1)]);
        let b = p(&[(2, 1)]);
        assert_eq!(&a + &b, LaurentPoly::one());
        assert_eq!((&a - &a).len(), 0);
        assert_eq!(&a * &p(&[(0, 1), (2, 1)]), p(&[(0, 1), (4, -1)]));
    }

    #[test]
    fn synthetic_division() {
        // t^2 - 1 = (t - 1)(t + 1)
        let q = p(&[(0, -1), (2, 1)]).div_t_minus_one().unwrap();
        assert_eq!(q, p(&[(0, 1), (1, 1)]));
        assert!(p(&[(0, 1), (2, 1)]).div_t_minus_one().is_none());
        // t^-2 - 1 = (t - 1) * (-t^-2 - t^-1)
        let q = p(&[(-2, 1), (0, -1)]).div_t_minus_one().unwrap();
        assert_eq!(q, p(&[(-2, -1), (-1, -1)]));
        assert_eq!(p(&[(0, 1), (1, -2), (2, 1)]).order_at_one(), Some(2));
    }

    #[test]
    fn exact_division() {
        let a = p(&[(0, 1), (4, -1)]);
        let b = p(&[(0, 1), (2, -1)]);
        assert_eq!(a.div_exact(&b).unwrap(), p(&[(0, 1), (2, 1)]));
        assert_eq!(b.div_exact(&a), Err(Error::NonPolynomialQuotient));
        assert_eq!(a.shift(-3).div_exact(&b.shift(2)).unwrap(), p(&[(-5, 1), (-3, 1)]));
        assert_eq!(p(&[(0, 1), (1, 1)]).div_exact(&p(&[(0, 1), (1, -1)])), Err(Error::NonPolynomialQuotient));
    }

    #[test]
    fn display_in_t() {
        assert_eq!(p(&[(1, 1), (3, 1)]).to_string(), "t + t^3");
        assert_eq!(p(&[(-4, 1), (-2, 1), (0, 2)]).to_string(), "t^-4 + t^-2 + 2");
        assert_eq!(LaurentPoly::monomial(2, frac(-1, 2)).to_string(), "-1/2*t^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&p(&[(3, 1), (-1, -2)])).unwrap();
        assert_eq!(s, r#"[[-1,"-2/1"],[3,"1/1"]]"#);
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..6, -5i64..6), 0..5).prop_map(|v| p(&v))
    }

    proptest! {
        #[test]
        fn product_divides_back(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
        }

        #[test]
        fn eval_is_multiplicative(a in small_poly(), b in small_poly()) {
            prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
            let x = frac(2, 3);
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }
    }
}
