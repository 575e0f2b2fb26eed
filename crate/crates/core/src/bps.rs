//! Logarithmic derivative of the specialized classical limit and the
//! extremal BPS numbers obtained from it by Moebius inversion.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, is_integral, rational, Rational};
use crate::series::{classical_limit_oracle, truncation_for, MultiSeries, QuiverSpec};

/// Formal logarithm of a series with constant term 1.
pub fn log_series(y: &MultiSeries<Rational>) -> Result<MultiSeries<Rational>> {
    if !y.constant_term().is_one() {
        return Err(Error::NonUnitConstantTerm);
    }
    let u = y.sub(&MultiSeries::one(y.truncation().clone()))?;
    let mut acc = MultiSeries::zero(y.truncation().clone());
    let mut power = u.clone();
    let mut k = 1i64;
    // u has no constant term, so its powers die out on a finite index set.
    while !power.is_empty() {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&power.scale(&rational::frac(sign, k)))?;
        power = power.mul(&u)?;
        k += 1;
    }
    Ok(acc)
}

/// Coefficients `c_0..=c_R` of a series in one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneVarSeries {
    coeffs: Vec<Rational>,
}

impl OneVarSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least its constant term");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, r: usize) -> &Rational {
        &self.coeffs[r]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients `a_1..=a_R` of `x (log f)'`.
    pub fn log_derivative(&self) -> Result<Vec<Rational>> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstantTerm);
        }
        // x f' = f * x (log f)'  =>  r f_r = a_r + sum_{k<r} a_k f_{r-k}
        let mut a: Vec<Rational> = vec![Rational::zero()];
        for r in 1..=self.order() {
            let mut v = &self.coeffs[r] * int(r as i64);
            for k in 1..r {
                v -= &a[k] * &self.coeffs[r - k];
            }
            a.push(v);
        }
        Ok(a.split_off(1))
    }
}

/// Substitutes `x_i -> s_i x^{n_i}` into a series known on
/// `sum n_i l_i <= R`.
pub fn specialize_series(y: &MultiSeries<Rational>, spec: &QuiverSpec, order: u32) -> Result<OneVarSeries> {
    if let Some(j) = spec.levels().iter().position(|&n| n == 0) {
        return Err(Error::InvalidSpec(format!(
            "vertex {j} has level 0; x_j = s_j x^0 is not a power series substitution"
        )));
    }
    if y.truncation().weights() != spec.levels() || y.truncation().bound() < order {
        return Err(Error::TruncationMismatch);
    }
    let mut coeffs = vec![Rational::zero(); order as usize + 1];
    for (l, c) in y.terms() {
        let deg = l.weighted_degree(spec.levels()) as usize;
        if deg > order as usize {
            continue;
        }
        let negative = l.0.iter().zip(spec.signs()).filter(|(&li, &s)| s < 0 && li % 2 == 1).count() % 2 == 1;
        if negative {
            coeffs[deg] -= c;
        } else {
            coeffs[deg] += c;
        }
    }
    Ok(OneVarSeries::new(coeffs))
}

/// `a_1..=a_R` of `x (log y(x))'` for `y` the classical limit specialized at
/// `x_i = s_i x^{n_i}`.
pub fn log_derivative(spec: &QuiverSpec, order: u32) -> Result<Vec<Rational>> {
    let trunc = truncation_for(spec, order, None)?;
    let y = classical_limit_oracle(spec, &trunc)?;
    specialize_series(&y, spec, order)?.log_derivative()
}

/// The same coefficients from the closed form of `log y`; a cross-check of
/// [`log_derivative`].
pub fn log_derivative_closed(spec: &QuiverSpec, order: u32) -> Result<Vec<Rational>> {
    let trunc = truncation_for(spec, order, None)?;
    let mut a = vec![Rational::zero(); order as usize];
    for l in trunc.indices().into_iter().filter(|l| !l.is_zero()) {
        let deg = l.weighted_degree(spec.levels());
        let negative = l.0.iter().zip(spec.signs()).filter(|(&li, &s)| s < 0 && li % 2 == 1).count() % 2 == 1;
        let c = crate::closedform::log_coeff_closed(spec, &l.0) * int(deg as i64);
        let slot = &mut a[deg as usize - 1];
        if negative {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    Ok(a)
}

pub fn mobius(d: u64) -> i8 {
    assert!(d >= 1, "mobius is defined on positive integers");
    let mut n = d;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpsRecord {
    pub r: u64,
    #[serde(with = "rational::serde_str")]
    pub a: Rational,
    #[serde(rename = "N", with = "rational::serde_str")]
    pub n: Rational,
    pub integral: bool,
}

/// Rows `r = 1..=R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BpsTable(pub Vec<BpsRecord>);

impl BpsTable {
    pub fn records(&self) -> &[BpsRecord] {
        &self.0
    }

    pub fn numbers(&self) -> Vec<Rational> {
        self.0.iter().map(|r| r.n.clone()).collect()
    }

    pub fn all_integral(&self) -> bool {
        self.0.iter().all(|r| r.integral)
    }
}

/// `N_r = r^{-2} sum_{d | r} mu(d) a_{r/d}` for `a = (a_1, ..., a_R)`.
pub fn bps_numbers(a: &[Rational]) -> BpsTable {
    let rows = (1..=a.len() as u64)
        .map(|r| {
            let mut acc = Rational::zero();
            for d in (1..=r).filter(|d| r % d == 0) {
                match mobius(d) {
                    1 => acc += &a[(r / d - 1) as usize],
                    -1 => acc -= &a[(r / d - 1) as usize],
                    _ => {}
                }
            }
            let n = acc / int((r * r) as i64);
            BpsRecord { r, a: a[r as usize - 1].clone(), integral: is_integral(&n), n }
        })
        .collect();
    BpsTable(rows)
}

/// Inverse of [`bps_numbers`]: `a_r = sum_{d | r} d^2 N_d`.
pub fn a_from_bps(n: &[Rational]) -> Vec<Rational> {
    (1..=n.len() as u64)
        .map(|r| {
            (1..=r)
                .filter(|d| r % d == 0)
                .fold(Rational::zero(), |acc, d| acc + &n[d as usize - 1] * int((d * d) as i64))
        })
        .collect()
}

/// The log-derivative / BPS pipeline for one quiver.
pub fn bps_table(spec: &QuiverSpec, order: u32) -> Result<BpsTable> {
    Ok(bps_numbers(&log_derivative(spec, order)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;
    use crate::series::{MultiIndex, Truncation};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn log_of_one_and_one_plus_x() {
        let t = Truncation::total(1, 5);
        assert!(log_series(&MultiSeries::one(t.clone())).unwrap().is_empty());
        let y = MultiSeries::from_terms(t, [(MultiIndex(vec![0]), int(1)), (MultiIndex(vec![1]), int(1))]);
        let l = log_series(&y).unwrap();
        for k in 1..=5u32 {
            let s = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(l.coeff(&MultiIndex(vec![k])), frac(s, k.into()));
        }
        let bad = MultiSeries::from_terms(Truncation::total(1, 2), [(MultiIndex(vec![0]), int(2))]);
        assert_eq!(log_series(&bad).err(), Some(Error::NonUnitConstantTerm));
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (d, mu) in expected.iter().enumerate() {
            assert_eq!(mobius(d as u64 + 1), *mu);
        }
    }

    #[test]
    fn bps_from_printed_log_derivatives() {
        assert_eq!(bps_numbers(&ints(&[-2, -10, -56, -330])).numbers(), ints(&[-2, -2, -6, -20]));
        assert_eq!(bps_numbers(&ints(&[1, 5, -17, 5])).numbers(), ints(&[1, 1, -2, 0]));
        assert_eq!(
            bps_numbers(&ints(&[0, -4, 0, -100, 0, -2812, 0, -83300])).numbers(),
            ints(&[0, -1, 0, -6, 0, -78, 0, -1300])
        );
    }

    #[test]
    fn non_integral_entries_are_flagged() {
        let t = bps_numbers(&ints(&[1, 2]));
        assert!(t.records()[0].integral);
        assert_eq!(t.records()[1].n, frac(1, 4));
        assert!(!t.records()[1].integral);
    }

    #[test]
    fn table_json() {
        let t = bps_numbers(&ints(&[-2]));
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"[{"r":1,"a":"-2/1","N":"-2/1","integral":true}]"#);
        let back: BpsTable = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn single_vertex_log_derivative() {
        // x (log y)' = sum_l (-1)^{(f+1)l} (N^2/f) binom(fl, l) x^{Nl}
        for (f, n) in [(2i64, 1u32), (3, 2), (-12, 2), (1, 3)] {
            let a = log_derivative(&QuiverSpec::single_vertex(f, n), 8).unwrap();
            for (r, ar) in a.iter().enumerate() {
                let r = r as u32 + 1;
                if r % n != 0 {
                    assert!(ar.is_zero());
                    continue;
                }
                let l = r / n;
                let s = if ((f + 1) * i64::from(l)) % 2 == 0 { 1 } else { -1 };
                let expected = crate::exact::gen_binomial(&int(f * i64::from(l)), l) * frac(s * i64::from(n * n), f);
                assert_eq!(ar, &expected, "f={f} N={n} r={r}");
            }
        }
    }

    #[test]
    fn level_zero_cannot_be_specialized() {
        let spec = QuiverSpec::single_vertex(1, 0);
        let t = Truncation::new(vec![0], 2, Some(2)).unwrap();
        let y = MultiSeries::one(t);
        assert!(matches!(specialize_series(&y, &spec, 2), Err(Error::InvalidSpec(_))));
    }
}
