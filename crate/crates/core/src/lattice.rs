//! Lattice paths under `y = a x + b`, encoded by their distances
//! `c_1, ..., c_n` below the critical line, with the closed counts they
//! produce and the `q`-weighted coefficients of a one-vertex quiver.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::{gen_binomial, int, CyclotomicFraction, LaurentPoly, Rational};
use crate::series::{ratio_series, shift_q, MultiIndex, MultiSeries, Truncation};

/// Paths from `(0, 0)` to `(n, a n + b)` that never rise above `y = a x + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSpec {
    pub a: u32,
    pub b: u32,
    pub n: u32,
}

impl PathSpec {
    pub fn new(a: u32, b: u32, n: u32) -> Self {
        Self { a, b, n }
    }
}

/// Distances below the critical line, one per right step.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CSequence(pub Vec<u32>);

impl CSequence {
    /// `c_1 <= b` and `c_{i+1} <= c_i + a`.
    pub fn is_valid_for(&self, p: &PathSpec) -> bool {
        self.0.len() == p.n as usize
            && self.0.first().is_none_or(|&c| c <= p.b)
            && self.0.windows(2).all(|w| w[1] <= w[0] + p.a)
    }

    pub fn area_sum(&self) -> u64 {
        self.0.iter().map(|&c| u64::from(c)).sum()
    }
}

/// Walks every sequence with `0 <= c_1 <= first`, `0 <= c_{i+1} <= c_i + step`
/// and calls `visit` with each complete one. Negative bounds leave nothing to
/// walk.
fn walk(first: i64, step: i64, n: u32, visit: &mut impl FnMut(&[i64])) {
    fn go(bound: i64, step: i64, left: u32, buf: &mut Vec<i64>, visit: &mut impl FnMut(&[i64])) {
        if left == 0 {
            visit(buf);
            return;
        }
        for c in 0..=bound {
            buf.push(c);
            go(c + step, step, left - 1, buf, visit);
            buf.pop();
        }
    }
    go(first, step, n, &mut Vec::with_capacity(n as usize), visit);
}

/// Runs `walk` with each first value on its own worker and folds the results.
fn fold_par<T: Send>(
    first: i64,
    step: i64,
    n: u32,
    init: impl Fn() -> T + Sync,
    add: impl Fn(&mut T, &[i64]) + Sync,
    merge: impl Fn(T, T) -> T + Sync + Send,
) -> T {
    if n == 0 {
        let mut acc = init();
        add(&mut acc, &[]);
        return acc;
    }
    (0..=first)
        .into_par_iter()
        .map(|c1| {
            let mut acc = init();
            walk(c1 + step, step, n - 1, &mut |rest| {
                let mut seq = Vec::with_capacity(n as usize);
                seq.push(c1);
                seq.extend_from_slice(rest);
                add(&mut acc, &seq);
            });
            acc
        })
        .reduce(&init, merge)
}

/// All c-sequences of `p`, in lexicographic order.
pub fn c_sequences(p: &PathSpec) -> Vec<CSequence> {
    let mut out = Vec::new();
    walk(p.b.into(), p.a.into(), p.n, &mut |s| {
        out.push(CSequence(s.iter().map(|&c| c as u32).collect()));
    });
    out
}

pub fn count_paths(p: &PathSpec) -> u64 {
    fold_par(p.b.into(), p.a.into(), p.n, || 0u64, |acc, _| *acc += 1, |x, y| x + y)
}

/// `t^{a n} sum t^{2 (c_1 + ... + c_n)}`, the area-weighted count with `t = q^{1/2}`.
pub fn weighted_count(p: &PathSpec) -> LaurentPoly {
    let sum = fold_par(
        p.b.into(),
        p.a.into(),
        p.n,
        LaurentPoly::zero,
        |acc, s| acc.add_term(2 * s.iter().sum::<i64>(), Rational::one()),
        |x, y| &x + &y,
    );
    sum.shift(i64::from(p.a) * i64::from(p.n))
}

fn to_natural(r: Rational) -> BigUint {
    assert!(r.is_integer(), "closed count {r} is not an integer");
    r.to_integer().to_biguint().expect("closed count is nonnegative")
}

/// `(k / (s n + k)) binom(s n + k, n)`, with the empty sequence counted once.
fn ballot(s: u32, k: u32, n: u32) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let top = i64::from(s) * i64::from(n) + i64::from(k);
    if top == 0 {
        return BigUint::zero();
    }
    to_natural(int(k.into()) / int(top) * gen_binomial(&int(top), n))
}

/// `(N+1) / ((f+1) i + N + 1) binom((f+1) i + N + 1, i)`.
pub fn raney_number(f: u32, n: u32, i: u32) -> BigUint {
    ballot(f + 1, n + 1, i)
}

/// `1 / (f n + 1) binom(f n + 1, n)`.
pub fn fuss_catalan(f: u32, n: u32) -> BigUint {
    ballot(f, 1, n)
}

/// `(N / (f n + N)) binom(f n + N, n)`, the number of sequences with
/// `c_1 <= N - 1` and `c_{i+1} <= c_i + f - 1`.
pub fn level_count(f: u32, level: u32, n: u32) -> BigUint {
    ballot(f, level, n)
}

/// `(-1)^{(f-1) n} sum t^{2 (c_1 + ... + c_n)}` over `0 <= c_1 <= N - 1`,
/// `0 <= c_{i+1} <= c_i + f - 1`.
pub fn quantum_coeff(f: u32, level: u32, n: u32) -> LaurentPoly {
    let sum = fold_par(
        i64::from(level) - 1,
        i64::from(f) - 1,
        n,
        LaurentPoly::zero,
        |acc, s| acc.add_term(2 * s.iter().sum::<i64>(), Rational::one()),
        |x, y| &x + &y,
    );
    if (i64::from(f) - 1) * i64::from(n) % 2 == 0 {
        sum
    } else {
        -sum
    }
}

/// `x^{N n}` coefficients, `n = 0..=order`, of `P_N(q, q x) / P_N(q, x)` where
/// `P_N(q, x) = sum_d (-1)^{f d} q^{f (d^2 - d) / 2} / (q;q)_d x^{N d}`.
pub fn quantum_ratio_coeffs(f: u32, level: u32, order: u32) -> Result<Vec<LaurentPoly>> {
    let trunc = Truncation::total(1, order);
    let f = i64::from(f);
    let terms = (0..=order).map(|d| {
        let d64 = i64::from(d);
        let sign = if f * d64 % 2 == 0 { 1 } else { -1 };
        let num = LaurentPoly::monomial(f * (d64 * d64 - d64), int(sign));
        (MultiIndex(vec![d]), CyclotomicFraction::from_poly(num) * CyclotomicFraction::inverse_pochhammer(d))
    });
    let p = MultiSeries::from_terms(trunc, terms);
    let ratio = ratio_series(&shift_q(&p, &[level]), &p)?;
    (0..=order).map(|n| ratio.coeff(&MultiIndex(vec![n])).to_laurent()).collect()
}

/// Both sides of `sum_{j+k=m} a_j^{(N)} a_k^{(M)} = a_m^{(N+M)}` with
/// `a_j^{(N)} = (N / (c j + N)) binom(c j + N, j)` and `a_0^{(N)} = 1`.
pub fn convolution_sides(level_n: u32, level_m: u32, c: u32, m: u32) -> (Rational, Rational) {
    let a = |k: u32, j: u32| -> Rational {
        if j == 0 {
            return Rational::one();
        }
        let top = int(i64::from(c) * i64::from(j) + i64::from(k));
        if top.is_zero() {
            return Rational::zero();
        }
        int(k.into()) / &top * gen_binomial(&top, j)
    };
    let lhs = (0..=m).map(|j| a(level_n, j) * a(level_m, m - j)).fold(Rational::zero(), |x, y| x + y);
    (lhs, a(level_n + level_m, m))
}

pub fn convolution_check(level_n: u32, level_m: u32, c: u32, m: u32) -> bool {
    let (lhs, rhs) = convolution_sides(level_n, level_m, c, m);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use num_traits::Signed;

    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count_paths(&PathSpec::new(1, 1, 2)), 5);
        assert_eq!(count_paths(&PathSpec::new(3, 2, 0)), 1);
        assert_eq!(count_paths(&PathSpec::new(2, 0, 3)), 12);
        assert_eq!(raney_number(2, 0, 3), BigUint::from(12u32));
    }

    #[test]
    fn c_sequences_are_valid_and_counted() {
        for (a, b, n) in [(1, 1, 3), (2, 0, 3), (0, 2, 4)] {
            let p = PathSpec::new(a, b, n);
            let all = c_sequences(&p);
            assert_eq!(all.len() as u64, count_paths(&p));
            assert!(all.iter().all(|s| s.is_valid_for(&p)));
            let mut sorted = all.clone();
            sorted.sort_by(|x, y| x.0.cmp(&y.0));
            sorted.dedup();
            assert_eq!(sorted, all);
        }
    }

    #[test]
    fn weighted_two_paths() {
        let w = weighted_count(&PathSpec::new(1, 1, 1));
        assert_eq!(w, LaurentPoly::from_terms([(1, int(1)), (3, int(1))]));
        assert_eq!(w.to_string(), "t + t^3");
    }

    #[test]
    fn weighted_area_seven_halves() {
        let w = weighted_count(&PathSpec::new(1, 1, 3));
        assert!(!w.coeff(7).is_zero());
        let hits = c_sequences(&PathSpec::new(1, 1, 3)).iter().filter(|s| 3 + 2 * s.area_sum() == 7).count();
        assert_eq!(w.coeff(7), int(hits as i64));
    }

    #[test]
    fn weighted_degenerates_to_count() {
        for a in 0..=3 {
            for b in 0..=3 {
                for n in 0..=5 {
                    let p = PathSpec::new(a, b, n);
                    assert_eq!(weighted_count(&p).eval_at_one(), int(count_paths(&p) as i64));
                }
            }
        }
    }

    #[test]
    fn closed_counts() {
        assert_eq!(raney_number(1, 1, 2), BigUint::from(5u32));
        assert_eq!(raney_number(4, 3, 0), BigUint::one());
        assert_eq!(raney_number(1, 0, 3), BigUint::from(5u32));
        assert_eq!(count_paths(&PathSpec::new(1, 0, 3)), 5);
        let catalan: Vec<BigUint> = (0..5).map(|n| level_count(2, 1, n)).collect();
        assert_eq!(catalan, [1u32, 1, 2, 5, 14].map(BigUint::from));
        assert_eq!(fuss_catalan(2, 3), BigUint::from(5u32));
        assert_eq!(fuss_catalan(3, 2), BigUint::from(3u32));
        assert_eq!(fuss_catalan(5, 0), BigUint::one());
        assert_eq!(level_count(1, 2, 2), BigUint::from(count_paths(&PathSpec::new(0, 1, 2))));
    }

    #[test]
    fn bijection_with_level_counts() {
        for a in 0..=3 {
            for b in 0..=3 {
                for n in 0..=6 {
                    let p = PathSpec::new(a, b, n);
                    assert_eq!(BigUint::from(count_paths(&p)), level_count(a + 1, b + 1, n), "{p:?}");
                }
            }
        }
    }

    #[test]
    fn quantum_coeff_first_degree() {
        for f in 0..=3u32 {
            for level in 1..=3u32 {
                let geometric = LaurentPoly::from_terms((0..level).map(|c| (2 * i64::from(c), int(1))));
                let expect = if f % 2 == 1 { geometric } else { -geometric };
                assert_eq!(quantum_coeff(f, level, 1), expect);
            }
        }
    }

    #[test]
    fn quantum_coeff_with_no_loops_empties() {
        // f = 0 forces c_{i+1} < c_i, so no sequence outlives c_1 <= N - 1.
        assert!(quantum_coeff(0, 2, 3).is_zero());
        assert!(!quantum_coeff(0, 3, 3).is_zero());
    }

    #[test]
    fn quantum_coeff_matches_series_ratio() {
        for f in 0..=2 {
            for level in 1..=2 {
                let ratio = quantum_ratio_coeffs(f, level, 3).unwrap();
                for n in 1..=3 {
                    assert_eq!(quantum_coeff(f, level, n), ratio[n as usize], "f={f} N={level} n={n}");
                }
            }
        }
    }

    #[test]
    fn quantum_coeff_degenerates_to_level_count() {
        for f in 1..=3 {
            for level in 1..=3 {
                for n in 1..=4 {
                    let at_one = quantum_coeff(f, level, n).eval_at_one();
                    assert_eq!(at_one.abs(), Rational::from_integer(level_count(f, level, n).into()));
                }
            }
        }
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(convolution_sides(1, 1, 2, 2), (int(5), int(5)));
        assert_eq!(convolution_sides(3, 4, 2, 0), (int(1), int(1)));
        assert!(convolution_check(2, 3, 4, 6));
        assert!(convolution_check(0, 3, 2, 4));
        assert!(convolution_check(0, 0, 0, 3));
    }
}
