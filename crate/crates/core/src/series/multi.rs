//! Truncated multivariate power series.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{format_rational, Coefficient, Rational};

/// Exponent vector `(l_1, ..., l_m)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(m: usize) -> Self {
        Self(vec![0; m])
    }

    pub fn unit(m: usize, j: usize) -> Self {
        let mut v = vec![0; m];
        v[j] = 1;
        Self(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0.iter().zip(weights).map(|(&l, &w)| u64::from(l) * u64::from(w)).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other <= self` componentwise.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Self)
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

/// The finite index set a series is known on: `sum_i w_i l_i <= bound`, and
/// `l_i <= cap` for every vertex of weight zero (which the weighted bound
/// alone leaves unconstrained). The set is closed downwards, so truncated
/// products are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    weights: Vec<u32>,
    bound: u32,
    cap: Option<u32>,
}

impl Truncation {
    pub fn new(weights: Vec<u32>, bound: u32, cap: Option<u32>) -> Result<Self> {
        let free: Vec<usize> = weights.iter().enumerate().filter(|(_, w)| **w == 0).map(|(i, _)| i).collect();
        if !free.is_empty() && cap.is_none() {
            return Err(Error::UnboundedTruncation(free));
        }
        Ok(Self { weights, bound, cap })
    }

    /// Total-degree truncation `sum_i l_i <= bound`.
    pub fn total(m: usize, bound: u32) -> Self {
        Self { weights: vec![1; m], bound, cap: None }
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn contains(&self, l: &MultiIndex) -> bool {
        l.0.len() == self.arity()
            && l.weighted_degree(&self.weights) <= u64::from(self.bound)
            && l.0.iter().zip(&self.weights).all(|(&x, &w)| w > 0 || Some(x) <= self.cap)
    }

    /// Every index of the set, in lexicographic order.
    pub fn indices(&self) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.arity()];
        self.fill(0, u64::from(self.bound), &mut cur, &mut out);
        out
    }

    fn fill(&self, pos: usize, budget: u64, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if pos == self.arity() {
            out.push(MultiIndex(cur.clone()));
            return;
        }
        let w = u64::from(self.weights[pos]);
        let max = if w == 0 { u64::from(self.cap.unwrap_or(0)) } else { budget / w };
        for x in 0..=max {
            cur[pos] = x as u32;
            self.fill(pos + 1, budget - w * x, cur, out);
        }
        cur[pos] = 0;
    }
}

/// Sparse truncated series; zero coefficients are not stored. Indices
/// outside the truncation are unknown, not zero.
#[derive(Clone, PartialEq)]
pub struct MultiSeries<T> {
    trunc: Truncation,
    terms: BTreeMap<MultiIndex, T>,
}

impl<T: Coefficient> MultiSeries<T> {
    pub fn zero(trunc: Truncation) -> Self {
        Self { trunc, terms: BTreeMap::new() }
    }

    pub fn one(trunc: Truncation) -> Self {
        let m = trunc.arity();
        Self::from_terms(trunc, [(MultiIndex::zero(m), T::one())])
    }

    /// Builds a series, dropping zeros and indices outside the truncation.
    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, T)>>(trunc: Truncation, terms: I) -> Self {
        let mut s = Self::zero(trunc);
        for (l, c) in terms {
            s.add_term(l, c);
        }
        s
    }

    pub fn add_term(&mut self, l: MultiIndex, c: T) {
        if c.is_zero() || !self.trunc.contains(&l) {
            return;
        }
        match self.terms.remove(&l) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(l, sum);
                }
            }
            None => {
                self.terms.insert(l, c);
            }
        }
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    pub fn arity(&self) -> usize {
        self.trunc.arity()
    }

    pub fn coeff(&self, l: &MultiIndex) -> T {
        self.terms.get(l).cloned().unwrap_or_else(T::zero)
    }

    pub fn get(&self, l: &MultiIndex) -> Option<&T> {
        self.terms.get(l)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> T {
        self.coeff(&MultiIndex::zero(self.arity()))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.trunc == other.trunc {
            Ok(())
        } else {
            Err(Error::TruncationMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::from_terms(self.trunc.clone(), self.terms.iter().map(|(l, c)| (l.clone(), c.clone() * k.clone())))
    }

    /// Product, truncated to the shared index set.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut acc: BTreeMap<MultiIndex, T> = BTreeMap::new();
        for (la, ca) in &self.terms {
            for (lb, cb) in &other.terms {
                let l = la.add(lb);
                if !self.trunc.contains(&l) {
                    continue;
                }
                let p = ca.clone() * cb.clone();
                match acc.remove(&l) {
                    Some(old) => {
                        acc.insert(l, old + p);
                    }
                    None => {
                        acc.insert(l, p);
                    }
                }
            }
        }
        Ok(Self::from_terms(self.trunc.clone(), acc))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.trunc.clone());
        for _ in 0..n {
            acc = acc.mul(self).expect("same truncation");
        }
        acc
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> MultiSeries<U> {
        MultiSeries::from_terms(self.trunc.clone(), self.terms.iter().map(|(l, c)| (l.clone(), f(c))))
    }

    pub fn try_map<U: Coefficient>(&self, f: impl Fn(&T) -> Result<U>) -> Result<MultiSeries<U>> {
        let terms = self.terms.iter().map(|(l, c)| Ok((l.clone(), f(c)?))).collect::<Result<Vec<_>>>()?;
        Ok(MultiSeries::from_terms(self.trunc.clone(), terms))
    }

    /// Restriction to a smaller index set.
    pub fn restrict(&self, trunc: Truncation) -> Self {
        Self::from_terms(trunc, self.terms.iter().map(|(l, c)| (l.clone(), c.clone())))
    }
}

impl<T: fmt::Debug> fmt::Debug for MultiSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `{"trunc": D, "terms": [{"index": [...], "value": "num/den"}, ...]}`,
/// terms in lexicographic index order.
impl Serialize for MultiSeries<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            index: &'a [u32],
            value: String,
        }
        let terms: Vec<Term> =
            self.terms.iter().map(|(l, c)| Term { index: &l.0, value: format_rational(c) }).collect();
        let mut st = s.serialize_struct("MultiSeries", 2)?;
        st.serialize_field("trunc", &self.trunc.bound)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl MultiSeries<Rational> {
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use proptest::prelude::*;

    #[test]
    fn weighted_index_set() {
        let t = Truncation::new(vec![1, 2], 4, None).unwrap();
        let idx: Vec<Vec<u32>> = t.indices().into_iter().map(|l| l.0).collect();
        assert_eq!(
            idx,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![2, 0],
                vec![2, 1],
                vec![3, 0],
                vec![4, 0],
            ]
        );
        assert!(idx.iter().all(|l| t.contains(&MultiIndex(l.clone()))));
        assert!(!t.contains(&MultiIndex(vec![1, 2])));
    }

    #[test]
    fn zero_weight_needs_cap() {
        assert_eq!(Truncation::new(vec![1, 0], 3, None), Err(Error::UnboundedTruncation(vec![1])));
        let t = Truncation::new(vec![1, 0], 1, Some(2)).unwrap();
        assert_eq!(t.indices().len(), 6);
    }

    #[test]
    fn geometric_inverse() {
        let t = Truncation::total(1, 5);
        let one_minus_x =
            MultiSeries::from_terms(t.clone(), [(MultiIndex(vec![0]), int(1)), (MultiIndex(vec![1]), int(-1))]);
        let geo = MultiSeries::from_terms(t.clone(), (0..=5).map(|k| (MultiIndex(vec![k]), int(1))));
        assert!(one_minus_x.mul(&geo).unwrap().is_one());
        assert_eq!(one_minus_x.pow(2).coeff(&MultiIndex(vec![1])), int(-2));
    }

    #[test]
    fn mismatched_truncations() {
        let a: MultiSeries<Rational> = MultiSeries::one(Truncation::total(1, 2));
        let b = MultiSeries::one(Truncation::total(1, 3));
        assert_eq!(a.mul(&b).err(), Some(Error::TruncationMismatch));
    }

    #[test]
    fn json_layout() {
        let t = Truncation::total(2, 2);
        let s = MultiSeries::from_terms(t, [(MultiIndex(vec![1, 0]), int(-1)), (MultiIndex(vec![0, 0]), int(1))]);
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"trunc":2,"terms":[{"index":[0,0],"value":"1/1"},{"index":[1,0],"value":"-1/1"}]}"#
        );
    }

    proptest! {
        #[test]
        fn index_set_is_down_closed(w in prop::collection::vec(0u32..3, 1..4), bound in 0u32..6) {
            let t = Truncation::new(w, bound, Some(2)).unwrap();
            let all = t.indices();
            for l in &all {
                for j in 0..l.0.len() {
                    if l.0[j] > 0 {
                        let mut s = l.clone();
                        s.0[j] -= 1;
                        prop_assert!(t.contains(&s));
                    }
                }
            }
            prop_assert!(all.windows(2).all(|p| p[0] < p[1]));
        }
    }
}
