//! Built-in knot quivers with their expected log-derivative and BPS values,
//! the closed `b` coefficients of the one-, two- and three-vertex families,
//! and the bottom-row series of `9_46`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{gen_binomial, int, pochhammer_qq, LaurentPoly, Rational};
use crate::series::QuiverSpec;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub spec: QuiverSpec,
    #[serde(serialize_with = "ser_rationals")]
    pub expected_a: Vec<Rational>,
    #[serde(rename = "expected_N", serialize_with = "ser_rationals")]
    pub expected_n: Vec<Rational>,
    pub notes: String,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::exact::format_rational))
}

const NAMES: [&str; 3] = ["9_46", "8_20", "9_42"];

pub fn names() -> &'static [&'static str] {
    &NAMES
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn get_entry(name: &str) -> Result<CatalogEntry> {
    let (matrix, levels, signs, a, n, notes) = match name {
        "9_46" => (
            vec![vec![0, -1, -2], vec![-1, 0, -2], vec![-2, -2, -4]],
            vec![1, 1, 2],
            vec![1, 1, 1],
            vec![-2, -10, -56, -330],
            vec![-2, -2, -6, -20],
            "bottom row of the symmetrically colored HOMFLY-PT polynomial; \
             generators x^{d1}, x^{d3}, x^{2 d4}",
        ),
        // The (-1)^{d2+d3+d4} prefactor of the bottom row is the parity of the
        // odd diagonal entries, already produced by (-q^{1/2})^{d.C.d}.
        "8_20" => (
            vec![vec![0, -1, -1, -2], vec![-1, -1, -1, -3], vec![-1, -1, 1, -1], vec![-2, -3, -1, -5]],
            vec![1, 1, 1, 2],
            vec![1, 1, 1, 1],
            vec![1, 5, -17, 5],
            vec![1, 1, -2, 0],
            "bottom row; three generators of level one and one of level two",
        ),
        "9_42" => (
            vec![vec![-12]],
            vec![2],
            vec![1],
            vec![0, -4, 0, -100, 0, -2812, 0, -83300],
            vec![0, -1, 0, -6, 0, -78, 0, -1300],
            "extremal specialization P_r = a^{3r/2} P_r(a,q) at a = 0; \
             vanishes for odd r, so only even degrees carry BPS-like numbers",
        ),
        other => return Err(Error::UnknownEntry(other.to_string())),
    };
    Ok(CatalogEntry {
        spec: QuiverSpec::new(matrix, levels, signs)?.with_name(name),
        expected_a: ints(&a),
        expected_n: ints(&n),
        notes: notes.to_string(),
    })
}

/// `P_r(q) = sum_{d1+d3+2 d4 = r} (q;q)_r q^{-d1(d3+2d4) - 2 d4(d3+d4)} / ((q;q)_{d1} (q;q)_{d3} (q;q)_{d4})`
/// in `t = q^{1/2}`.
pub fn bottom_row_946(r: u32) -> Result<LaurentPoly> {
    let top = pochhammer_qq(r);
    let mut total = LaurentPoly::zero();
    for d4 in 0..=r / 2 {
        for d3 in 0..=r - 2 * d4 {
            let d1 = r - 2 * d4 - d3;
            let (d1i, d3i, d4i) = (i64::from(d1), i64::from(d3), i64::from(d4));
            let q_exp = -d1i * (d3i + 2 * d4i) - 2 * d4i * (d3i + d4i);
            let den = &(&pochhammer_qq(d1) * &pochhammer_qq(d3)) * &pochhammer_qq(d4);
            total = &total + &top.div_exact(&den)?.shift(2 * q_exp);
        }
    }
    Ok(total)
}

fn sign(exp: i64) -> Rational {
    if exp.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn binom(top: i64, k: i64) -> Rational {
    gen_binomial(&int(top), k as u32)
}

/// `b_i` for `C = (f)` at level `n`; `None` when `f i + n = 0`.
pub fn family_b1(f: i64, n: i64, i: i64) -> Option<Rational> {
    let s = f * i + n;
    if s == 0 {
        return None;
    }
    Some(sign((f + 1) * i) * int(n) / int(s) * binom(s, i))
}

/// `b_{i,j}` for `C = [[alpha, beta], [beta, gamma]]` at levels `(m, n)`.
pub fn family_b2(c: [i64; 3], lv: [i64; 2], l: [i64; 2]) -> Option<Rational> {
    let [alpha, beta, gamma] = c;
    let [m, n] = lv;
    let [i, j] = l;
    let s1 = alpha * i + beta * j + m;
    let s2 = beta * i + gamma * j + n;
    if s1 == 0 || s2 == 0 {
        return None;
    }
    let numer = m * beta * i + n * beta * j + m * n;
    Some(sign((alpha + 1) * i + (gamma + 1) * j) * int(numer) / (int(s1) * int(s2)) * binom(s1, i) * binom(s2, j))
}

/// `b_{i,j,k}` for `C = [[alpha, beta, delta], [beta, gamma, epsilon], [delta, epsilon, phi]]`
/// at levels `(m, n, p)`; `c = [alpha, beta, gamma, delta, epsilon, phi]`.
pub fn family_b3(c: [i64; 6], lv: [i64; 3], l: [i64; 3]) -> Option<Rational> {
    let [alpha, beta, gamma, delta, epsilon, phi] = c;
    let [m, n, p] = lv;
    let [i, j, k] = l;
    let s1 = alpha * i + beta * j + delta * k + m;
    let s2 = beta * i + gamma * j + epsilon * k + n;
    let s3 = delta * i + epsilon * j + phi * k + p;
    if s1 == 0 || s2 == 0 || s3 == 0 {
        return None;
    }
    let numer = beta * i * j * (n * delta + m * epsilon)
        + delta * i * k * (p * beta + m * epsilon)
        + epsilon * j * k * (p * beta + n * delta)
        + m * beta * delta * i * i
        + m * i * (p * beta + n * delta)
        + n * beta * epsilon * j * j
        + n * j * (p * beta + m * epsilon)
        + p * delta * epsilon * k * k
        + p * k * (n * delta + m * epsilon)
        + m * n * p;
    let sgn = sign((alpha + 1) * i + (gamma + 1) * j + (phi + 1) * k);
    Some(sgn * int(numer) / (int(s1) * int(s2) * int(s3)) * binom(s1, i) * binom(s2, j) * binom(s3, k))
}
