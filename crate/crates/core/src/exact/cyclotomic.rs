//! Rational functions whose denominator is a product of cyclotomic
//! polynomials. Every coefficient of a quiver generating series has this
//! shape (its denominators are products of `1 - q^k`), and sums stay small
//! because the least common denominator is read off the exponents.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{Coefficient, LaurentPoly, QCoefficient, Rational, RationalFunction};
use crate::error::Result;

/// `Phi_n(t)`, memoized.
pub fn cyclotomic_poly(n: u32) -> LaurentPoly {
    assert!(n >= 1, "cyclotomic index starts at 1");
    static CACHE: OnceLock<Mutex<HashMap<u32, LaurentPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = &LaurentPoly::t_pow(n.into()) - &LaurentPoly::one();
    for d in (1..n).filter(|d| n % d == 0) {
        p = p.div_exact(&cyclotomic_poly(d)).expect("t^n - 1 factors over its divisors");
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..=n).filter(move |d| n % d == 0)
}

/// `num / prod_d Phi_d(t)^{e_d}`.
#[derive(Clone)]
pub struct CyclotomicFraction {
    num: LaurentPoly,
    den: BTreeMap<u32, u32>,
}

impl CyclotomicFraction {
    pub fn from_poly(num: LaurentPoly) -> Self {
        Self { num, den: BTreeMap::new() }
    }

    /// `1 / (q;q)_d`, using `1 - t^{2k} = -prod_{e | 2k} Phi_e(t)`.
    pub fn inverse_pochhammer(d: u32) -> Self {
        let mut den = BTreeMap::new();
        for k in 1..=d {
            for e in divisors(2 * k) {
                *den.entry(e).or_insert(0) += 1;
            }
        }
        let sign = if d % 2 == 0 { 1 } else { -1 };
        Self { num: LaurentPoly::constant(super::int(sign)), den }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    /// Cyclotomic index -> multiplicity.
    pub fn denom_factors(&self) -> &BTreeMap<u32, u32> {
        &self.den
    }

    pub fn denom_poly(&self) -> LaurentPoly {
        self.den.iter().fold(LaurentPoly::one(), |acc, (&d, &e)| &acc * &cyclotomic_poly(d).pow(e))
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        RationalFunction::new(self.num.clone(), self.denom_poly()).expect("cyclotomic products are nonzero")
    }

    pub fn limit_at_one(&self) -> Result<Rational> {
        self.to_rational_function().limit_at_one()
    }

    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        self.clone().reduce().to_rational_function().to_laurent()
    }

    /// Cancels every cyclotomic factor of the denominator that divides the
    /// numerator.
    pub fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        for (&d, e) in self.den.iter_mut() {
            while *e > 0 {
                let q = if d == 1 { self.num.div_t_minus_one() } else { self.num.div_exact(&cyclotomic_poly(d)).ok() };
                match q {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, e| *e > 0);
        self
    }

    fn lifted_to(&self, target: &BTreeMap<u32, u32>) -> LaurentPoly {
        let mut num = self.num.clone();
        for (&d, &e) in target {
            let have = self.den.get(&d).copied().unwrap_or(0);
            if e > have {
                num = &num * &cyclotomic_poly(d).pow(e - have);
            }
        }
        num
    }

    fn lcm(&self, other: &Self) -> BTreeMap<u32, u32> {
        let mut l = self.den.clone();
        for (&d, &e) in &other.den {
            let slot = l.entry(d).or_insert(0);
            *slot = (*slot).max(e);
        }
        l
    }
}

impl PartialEq for CyclotomicFraction {
    fn eq(&self, other: &Self) -> bool {
        let l = self.lcm(other);
        self.lifted_to(&l) == other.lifted_to(&l)
    }
}

impl From<Rational> for CyclotomicFraction {
    fn from(c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }
}

impl From<LaurentPoly> for CyclotomicFraction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Zero for CyclotomicFraction {
    fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for CyclotomicFraction {
    fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }
}

impl Add<&CyclotomicFraction> for &CyclotomicFraction {
    type Output = CyclotomicFraction;

    fn add(self, rhs: &CyclotomicFraction) -> CyclotomicFraction {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let den = self.lcm(rhs);
        let num = &self.lifted_to(&den) + &rhs.lifted_to(&den);
        CyclotomicFraction { num, den }
    }
}

impl Sub<&CyclotomicFraction> for &CyclotomicFraction {
    type Output = CyclotomicFraction;

    fn sub(self, rhs: &CyclotomicFraction) -> CyclotomicFraction {
        self + &(-rhs)
    }
}

impl Mul<&CyclotomicFraction> for &CyclotomicFraction {
    type Output = CyclotomicFraction;

    fn mul(self, rhs: &CyclotomicFraction) -> CyclotomicFraction {
        if self.is_zero() || rhs.is_zero() {
            return CyclotomicFraction::zero();
        }
        let mut den = self.den.clone();
        for (&d, &e) in &rhs.den {
            *den.entry(d).or_insert(0) += e;
        }
        CyclotomicFraction { num: &self.num * &rhs.num, den }
    }
}

impl Neg for &CyclotomicFraction {
    type Output = CyclotomicFraction;

    fn neg(self) -> CyclotomicFraction {
        CyclotomicFraction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for CyclotomicFraction {
    type Output = CyclotomicFraction;

    fn neg(self) -> CyclotomicFraction {
        CyclotomicFraction { num: -self.num, den: self.den }
    }
}

super::forward_binops!(CyclotomicFraction);

impl Coefficient for CyclotomicFraction {
    fn unit_inverse(&self) -> Option<Self> {
        let (e, c) = self.num.as_monomial()?;
        let num = &self.denom_poly() * &LaurentPoly::monomial(-e, c.recip());
        Some(Self::from_poly(num))
    }

    fn normalize(self) -> Self {
        self.reduce()
    }
}

impl QCoefficient for CyclotomicFraction {
    fn mul_t_pow(&self, k: i64) -> Self {
        CyclotomicFraction { num: self.num.shift(k), den: self.den.clone() }
    }
}

impl fmt::Debug for CyclotomicFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / Phi{:?}", self.num, self.den)
    }
}
