//! Closed-form coefficients `b_l` of the classical limit, built from
//! admissible pair sets and evaluated with an infinitesimal shift of the
//! levels `n_j -> n_j + eps` so that vanishing levels and vanishing
//! denominators cancel before `eps = 0` is substituted.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{gen_binomial, int, LaurentPoly, Rational};
use crate::series::QuiverSpec;

/// Polynomial in the formal regulator `eps`, stored with only nonnegative
/// exponents.
pub type EpsPoly = LaurentPoly;

/// A set of ordered vertex pairs `(i, j)` (zero-based), sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleSet(pub Vec<(usize, usize)>);

impl AdmissibleSet {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn is_target(&self, j: usize) -> bool {
        self.0.iter().any(|&(_, t)| t == j)
    }
}

/// Distinct targets and no directed cycle, loops included.
pub fn is_admissible(pairs: &[(usize, usize)]) -> bool {
    let mut targets: Vec<usize> = pairs.iter().map(|&(_, j)| j).collect();
    targets.sort_unstable();
    if targets.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    // Peel off pairs whose source is nobody's target; a cycle never peels.
    let mut rest: Vec<(usize, usize)> = pairs.to_vec();
    loop {
        let before = rest.len();
        let current = rest.clone();
        rest.retain(|&(i, _)| current.iter().any(|&(_, j)| j == i));
        if rest.is_empty() {
            return true;
        }
        if rest.len() == before {
            return false;
        }
    }
}

/// All admissible sets of `k` pairs on `m` vertices, in lexicographic order
/// of their sorted pair lists.
pub fn enumerate_admissible(m: usize, k: usize) -> Vec<AdmissibleSet> {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    let mut used = vec![false; m];
    choose(&pairs, 0, k, &mut chosen, &mut used, &mut out);
    out
}

fn choose(
    pairs: &[(usize, usize)],
    from: usize,
    k: usize,
    chosen: &mut Vec<(usize, usize)>,
    used_target: &mut [bool],
    out: &mut Vec<AdmissibleSet>,
) {
    if chosen.len() == k {
        if is_admissible(chosen) {
            out.push(AdmissibleSet(chosen.clone()));
        }
        return;
    }
    for p in from..pairs.len() {
        let (i, j) = pairs[p];
        if used_target[j] {
            continue;
        }
        chosen.push((i, j));
        used_target[j] = true;
        choose(pairs, p + 1, k, chosen, used_target, out);
        used_target[j] = false;
        chosen.pop();
    }
}

fn check_index(spec: &QuiverSpec, l: &[u32]) {
    assert_eq!(spec.vertices(), l.len(), "index length must match the quiver");
}

fn eps_shifted(c: i64) -> EpsPoly {
    LaurentPoly::from_terms([(0, int(c)), (1, Rational::one())])
}

fn edge_weight(spec: &QuiverSpec, l: &[u32], set: &AdmissibleSet) -> Rational {
    set.0.iter().fold(Rational::one(), |acc, &(i, j)| acc * int(spec.entry(i, j) * i64::from(l[i])))
}

/// `A(l) = prod_j (n_j + eps) * (1 + sum_{admissible S} prod_{(i,j) in S} C_ij l_i / (n_j + eps))`
/// with the inverse factors cancelled against the outer product.
pub fn coeff_a(spec: &QuiverSpec, l: &[u32]) -> EpsPoly {
    check_index(spec, l);
    let m = spec.vertices();
    let mut acc = EpsPoly::zero();
    for k in 0..m {
        for set in enumerate_admissible(m, k) {
            let w = edge_weight(spec, l, &set);
            if w.is_zero() {
                continue;
            }
            let mut term = EpsPoly::constant(w);
            for j in (0..m).filter(|&j| !set.is_target(j)) {
                term = &term * &eps_shifted(spec.levels()[j].into());
            }
            acc = &acc + &term;
        }
    }
    acc
}

/// Value at `eps = 0` of `num / den`, cancelling common powers of `eps`.
fn value_at_zero(num: &EpsPoly, den: &EpsPoly, l: &[u32]) -> Result<Rational> {
    let v = den.min_exp().expect("nonzero denominator");
    match num.min_exp() {
        None => Ok(Rational::zero()),
        Some(vn) if vn < v => Err(Error::RegularizationFailure(l.to_vec())),
        Some(_) => Ok(num.coeff(v) / den.coeff(v)),
    }
}

fn sign(exp: i64) -> Rational {
    if exp.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// `b_l = (-1)^{sum (C_ii+1) l_i} A(l) prod_j binom(T_j, l_j) / T_j` with
/// `T_j = n_j + eps + sum_i C_ij l_i`, evaluated at `eps = 0`.
pub fn coeff_b(spec: &QuiverSpec, l: &[u32]) -> Result<Rational> {
    check_index(spec, l);
    let mut num = coeff_a(spec, l).scale(&sign(spec.sign_exponent(l)));
    let mut den = EpsPoly::one();
    for j in 0..spec.vertices() {
        let top = eps_shifted(i64::from(spec.levels()[j]) + spec.column_sum(j, l));
        num = &num * &gen_binomial(&top, l[j]);
        den = &den * &top;
    }
    value_at_zero(&num, &den, l)
}

/// Coefficient of `x^l` in `log y`:
/// `(-1)^{sum (C_ii+1) l_i} A_max(l) prod_j binom(S_j, l_j) / S_j` with
/// `S_j = sum_i C_ij l_i` and `A_max` the sum over admissible sets of size
/// `m - 1` weighted by the level of the vertex that is not a target.
///
/// A vertex with `l_j = 0` only contributes through arborescences in which
/// it is a leaf, and summing over its parent reproduces exactly the factor
/// `S_j` of the denominator. The formula is therefore evaluated on the
/// support of `l`, where every remaining factor `binom(S_j, l_j) / S_j =
/// binom(S_j - 1, l_j - 1) / l_j` is a polynomial and nothing diverges.
pub fn log_coeff_closed(spec: &QuiverSpec, l: &[u32]) -> Rational {
    check_index(spec, l);
    let support: Vec<usize> = (0..spec.vertices()).filter(|&j| l[j] > 0).collect();
    assert!(!support.is_empty(), "log y has no constant term");
    let s = support.len();
    let mut a_max = Rational::zero();
    for set in enumerate_admissible(s, s - 1) {
        let lifted = AdmissibleSet(set.0.iter().map(|&(i, j)| (support[i], support[j])).collect());
        let root = (0..s).find(|&v| !set.is_target(v)).expect("a forest of m-1 edges has a root");
        a_max += edge_weight(spec, l, &lifted) * int(spec.levels()[support[root]].into());
    }
    let mut acc = a_max * sign(spec.sign_exponent(l));
    for &j in &support {
        let top = int(spec.column_sum(j, l) - 1);
        acc *= gen_binomial(&top, l[j] - 1) / int(l[j].into());
    }
    acc
}
