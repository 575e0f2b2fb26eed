use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;
use qgen::exact::{int, Rational};
use qgen::lattice::{
    c_sequences, convolution_check, count_paths, fuss_catalan, level_count, quantum_coeff, raney_number,
    weighted_count, PathSpec,
};

fn nat(x: &BigUint) -> Rational {
    Rational::from_integer(x.clone().into())
}

/// Coefficients `0..=order` of `s^k` for a series `s`.
fn power(s: &[Rational], k: u32, order: usize) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); order + 1];
    acc[0] = int(1);
    for _ in 0..k {
        let mut next = vec![Rational::zero(); order + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in s.iter().enumerate().take(order + 1 - i) {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

#[test]
fn level_counts_are_powers_of_fuss_catalan() {
    for f in 1..=4 {
        let y1: Vec<Rational> = (0..=6).map(|n| nat(&fuss_catalan(f, n))).collect();
        for level in 1..=4 {
            let direct: Vec<Rational> = (0..=6).map(|n| nat(&level_count(f, level, n))).collect();
            assert_eq!(power(&y1, level, 6), direct, "f={f} N={level}");
        }
    }
}

#[test]
fn raney_equals_path_count() {
    for f in 0..=2 {
        for n in 0..=2 {
            for i in 0..=5 {
                assert_eq!(raney_number(f, n, i), BigUint::from(count_paths(&PathSpec::new(f, n, i))));
            }
        }
    }
}

proptest! {
    #[test]
    fn weighted_count_degenerates(a in 0u32..=3, b in 0u32..=3, n in 0u32..=6) {
        let p = PathSpec::new(a, b, n);
        prop_assert_eq!(weighted_count(&p).eval_at_one(), int(count_paths(&p) as i64));
    }

    #[test]
    fn weighted_exponents_are_areas(a in 0u32..=2, b in 0u32..=2, n in 0u32..=5) {
        let p = PathSpec::new(a, b, n);
        let w = weighted_count(&p);
        for s in c_sequences(&p) {
            let exp = i64::from(a * n) + 2 * s.area_sum() as i64;
            prop_assert!(!w.coeff(exp).is_zero());
        }
    }

    #[test]
    fn quantum_coeff_has_level_count_magnitude(f in 1u32..=3, level in 1u32..=3, n in 1u32..=5) {
        let at_one = quantum_coeff(f, level, n).eval_at_one();
        let sign = if (f - 1) * n % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(at_one, int(sign) * nat(&level_count(f, level, n)));
    }

    #[test]
    fn convolution_holds(level_n in 1u32..=6, level_m in 1u32..=6, c in 0u32..=6, m in 0u32..=10) {
        prop_assert!(convolution_check(level_n, level_m, c, m));
    }
}

#[test]
fn two_binomial_identity_is_unit_convolution() {
    for f in 1..=5 {
        for n in 0..=8 {
            assert!(convolution_check(1, 1, f, n));
        }
    }
}
