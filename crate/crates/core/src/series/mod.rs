//! Quiver generating series and the brute-force `q -> 1` limit.
//!
//! `P_C(x) = sum_d (-q^{1/2})^{d.C.d} / prod_i (q;q)_{d_i} x^d` is expanded
//! with exact rational-function coefficients; `y = lim P_C(q^n x) / P_C(x)`
//! is obtained by dividing the series and taking the limit coefficient by
//! coefficient.

mod multi;
mod quiver;

use std::collections::BTreeMap;

use rayon::prelude::*;

pub use multi::{MultiIndex, MultiSeries, Truncation};
pub use quiver::QuiverSpec;

use crate::error::{Error, Result};
use crate::exact::{Coefficient, CyclotomicFraction, LaurentPoly, QCoefficient, Rational};

/// `P_C` on the given index set.
pub fn expand_pc(spec: &QuiverSpec, trunc: &Truncation) -> MultiSeries<CyclotomicFraction> {
    assert_eq!(spec.vertices(), trunc.arity(), "truncation arity must match the quiver");
    let terms = trunc.indices().into_iter().map(|d| {
        let k = spec.quadratic_form(&d.0);
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        let mut c = CyclotomicFraction::from_poly(LaurentPoly::monomial(k, crate::exact::int(sign)));
        for &di in &d.0 {
            c = c * CyclotomicFraction::inverse_pochhammer(di);
        }
        (d, c)
    });
    MultiSeries::from_terms(trunc.clone(), terms)
}

/// Substitutes `x_i -> q^{n_i} x_i`.
pub fn shift_q<T: QCoefficient>(series: &MultiSeries<T>, levels: &[u32]) -> MultiSeries<T> {
    let terms = series.terms().map(|(l, c)| {
        let w = l.weighted_degree(levels) as i64;
        (l.clone(), c.mul_t_pow(2 * w))
    });
    MultiSeries::from_terms(series.truncation().clone(), terms)
}

/// Solves `numer = denom * Y` for `Y`, one total degree at a time. The
/// constant term of `denom` must be a unit.
pub fn ratio_series<T: Coefficient>(numer: &MultiSeries<T>, denom: &MultiSeries<T>) -> Result<MultiSeries<T>> {
    if numer.truncation() != denom.truncation() {
        return Err(Error::TruncationMismatch);
    }
    let inv0 = denom.constant_term().unit_inverse().ok_or(Error::NonUnitConstantTerm)?;
    let trunc = numer.truncation();
    let higher: Vec<(&MultiIndex, &T)> = denom.terms().filter(|(k, _)| !k.is_zero()).collect();

    let mut by_degree: BTreeMap<u32, Vec<MultiIndex>> = BTreeMap::new();
    for l in trunc.indices() {
        by_degree.entry(l.total_degree()).or_default().push(l);
    }

    let mut solved: BTreeMap<MultiIndex, T> = BTreeMap::new();
    for layer in by_degree.into_values() {
        // Entries of one degree only depend on lower degrees.
        let fresh: Vec<(MultiIndex, T)> = layer
            .into_par_iter()
            .map(|l| {
                let mut acc = numer.coeff(&l);
                for (k, dk) in &higher {
                    if let Some(y) = l.checked_sub(k).and_then(|rest| solved.get(&rest)) {
                        acc = acc - (*dk).clone() * y.clone();
                    }
                }
                (l, (acc * inv0.clone()).normalize())
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        solved.extend(fresh);
    }
    Ok(MultiSeries::from_terms(trunc.clone(), solved))
}

/// `P_C(q^n x) / P_C(x)` before the limit, with `n = shift_levels`.
pub fn quantum_ratio(
    spec: &QuiverSpec,
    shift_levels: &[u32],
    trunc: &Truncation,
) -> Result<MultiSeries<CyclotomicFraction>> {
    let pc = expand_pc(spec, trunc);
    ratio_series(&shift_q(&pc, shift_levels), &pc)
}

fn limit_with_shift(spec: &QuiverSpec, shift_levels: &[u32], trunc: &Truncation) -> Result<MultiSeries<Rational>> {
    let ratio = quantum_ratio(spec, shift_levels, trunc)?;
    let terms = ratio
        .terms()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(l, c)| Ok((l.clone(), c.limit_at_one()?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiSeries::from_terms(trunc.clone(), terms))
}

/// `y(x_1, ..., x_m) = lim_{q->1} P_C(q^{n_1} x_1, ..., q^{n_m} x_m) / P_C(x)`
/// with the levels of `spec`, on the given index set.
pub fn classical_limit_oracle(spec: &QuiverSpec, trunc: &Truncation) -> Result<MultiSeries<Rational>> {
    limit_with_shift(spec, spec.levels(), trunc)
}

/// The partial limit `y_j`: only `x_j` is shifted, by a single power of `q`.
/// `j` is zero-based.
pub fn partial_limit(spec: &QuiverSpec, j: usize, trunc: &Truncation) -> Result<MultiSeries<Rational>> {
    let m = spec.vertices();
    if j >= m {
        return Err(Error::IndexOutOfRange { index: j, vertices: m });
    }
    limit_with_shift(spec, &MultiIndex::unit(m, j).0, trunc)
}

/// Index set `sum_i n_i l_i <= bound` for the levels of `spec`.
pub fn truncation_for(spec: &QuiverSpec, bound: u32, cap: Option<u32>) -> Result<Truncation> {
    Truncation::new(spec.levels().to_vec(), bound, cap)
}
