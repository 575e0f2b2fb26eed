//! Regression runner: the catalog knots end to end plus the identity sweeps.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bps::{bps_numbers, log_derivative, log_derivative_closed};
use crate::catalog::{bottom_row_946, get_entry, names};
use crate::closedform::coeff_b;
use crate::error::Result;
use crate::exact::{format_rational, int, LaurentPoly, Rational};
use crate::lattice::{
    convolution_check, count_paths, level_count, quantum_coeff, quantum_ratio_coeffs, raney_number, PathSpec,
};
use crate::series::{classical_limit_oracle, partial_limit, truncation_for, MultiSeries, QuiverSpec};

/// Seed of the random spec sweeps, fixed so reports are reproducible.
pub const SWEEP_SEED: u64 = 0x5eed_c0ff_ee00;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), passed, detail: detail.into() }
    }

    fn from_result(name: &str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Self::new(name, passed, detail),
            Err(e) => Self::new(name, false, format!("error: {e}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(checks: Vec<Check>) -> Self {
        Self { passed: checks.iter().all(|c| c.passed), checks }
    }
}

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

/// Log-derivative, BPS numbers, integrality and closed-form agreement for
/// one catalog knot.
pub fn run_case(name: &str) -> Result<Report> {
    let entry = get_entry(name)?;
    let order = entry.expected_a.len() as u32;
    let mut checks = Vec::new();
    match log_derivative(&entry.spec, order) {
        Ok(a) => {
            let table = bps_numbers(&a);
            let n = table.numbers();
            checks.push(Check::new(
                "log_derivative",
                a == entry.expected_a,
                format!("a = {}, expected {}", show(&a), show(&entry.expected_a)),
            ));
            checks.push(Check::new(
                "bps_numbers",
                n == entry.expected_n,
                format!("N = {}, expected {}", show(&n), show(&entry.expected_n)),
            ));
            checks.push(Check::new("integrality", table.all_integral(), format!("N = {}", show(&n))));
            checks.push(Check::from_result(
                "closed_form_log",
                log_derivative_closed(&entry.spec, order).map(|c| (c == a, format!("closed form a = {}", show(&c)))),
            ));
        }
        Err(e) => checks.push(Check::new("log_derivative", false, format!("error: {e}"))),
    }
    Ok(Report::new(checks))
}

fn knot_check(name: &str) -> Check {
    let label = format!("knot_{name}");
    match run_case(name) {
        Ok(r) => {
            let core: Vec<&Check> =
                r.checks.iter().filter(|c| c.name == "log_derivative" || c.name == "bps_numbers").collect();
            let detail = core.iter().map(|c| c.detail.as_str()).collect::<Vec<_>>().join("; ");
            Check::new(&label, core.len() == 2 && core.iter().all(|c| c.passed), detail)
        }
        Err(e) => Check::new(&label, false, format!("error: {e}")),
    }
}

/// Random symmetric specs with `m <= max_vertices`, `|C_ij| <= max_entry`
/// and levels in `0..=max_level`, all signs positive.
pub fn sample_specs(seed: u64, count: usize, max_vertices: usize, max_entry: i64, max_level: u32) -> Vec<QuiverSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(1..=max_vertices);
            let mut matrix = vec![vec![0; m]; m];
            for i in 0..m {
                for j in i..m {
                    let v = rng.gen_range(-max_entry..=max_entry);
                    matrix[i][j] = v;
                    matrix[j][i] = v;
                }
            }
            let levels = (0..m).map(|_| rng.gen_range(0..=max_level)).collect();
            QuiverSpec::unsigned(matrix, levels).expect("sampled spec is symmetric")
        })
        .collect()
}

/// Index cap used by the sweeps for level-0 vertices.
pub fn sweep_cap(spec: &QuiverSpec) -> Option<u32> {
    spec.levels().contains(&0).then_some(2)
}

/// Mismatches between `coeff_b` and the oracle over `sum n_i l_i <= bound`.
pub fn closed_form_mismatches(spec: &QuiverSpec, bound: u32) -> Result<Vec<String>> {
    let trunc = truncation_for(spec, bound, sweep_cap(spec))?;
    let y = classical_limit_oracle(spec, &trunc)?;
    let mut bad = Vec::new();
    for l in trunc.indices() {
        match coeff_b(spec, &l.0) {
            Ok(b) if b == y.coeff(&l) => {}
            Ok(b) => bad.push(format!("{l:?}: closed {b}, oracle {}", y.coeff(&l))),
            Err(e) => bad.push(format!("{l:?}: {e}")),
        }
    }
    Ok(bad)
}

pub fn closed_form_sweep(count: usize) -> Check {
    let specs = sample_specs(SWEEP_SEED, count, 3, 3, 3);
    let mut failures = Vec::new();
    let mut coefficients = 0usize;
    for spec in &specs {
        match closed_form_mismatches(spec, 5) {
            Ok(bad) if bad.is_empty() => {
                coefficients += truncation_for(spec, 5, sweep_cap(spec)).map(|t| t.indices().len()).unwrap_or(0);
            }
            Ok(bad) => failures.push(format!("{spec:?}: {}", bad.join(", "))),
            Err(e) => failures.push(format!("{spec:?}: {e}")),
        }
    }
    let mut detail = format!("{} specs, {coefficients} coefficients", specs.len());
    if !failures.is_empty() {
        let _ = write!(detail, "; mismatches: {}", failures.join("; "));
    }
    Check::new("closed_form_vs_oracle", failures.is_empty(), detail)
}

/// `y` against `prod_j y_j^{n_j}` on `sum n_i l_i <= bound`.
pub fn factorization_holds(spec: &QuiverSpec, bound: u32) -> Result<bool> {
    let trunc = truncation_for(spec, bound, sweep_cap(spec))?;
    let y = classical_limit_oracle(spec, &trunc)?;
    let mut prod = MultiSeries::one(trunc.clone());
    for (j, &n) in spec.levels().iter().enumerate() {
        if n > 0 {
            prod = prod.mul(&partial_limit(spec, j, &trunc)?.pow(n))?;
        }
    }
    Ok(prod == y)
}

pub fn factorization_sweep(count: usize) -> Check {
    let specs = sample_specs(SWEEP_SEED ^ 0xfac7, count, 3, 3, 3);
    let failures: Vec<String> = specs
        .iter()
        .filter_map(|s| match factorization_holds(s, 6) {
            Ok(true) => None,
            Ok(false) => Some(format!("{s:?}")),
            Err(e) => Some(format!("{s:?}: {e}")),
        })
        .collect();
    let mut detail = format!("{} specs, degree 6", specs.len());
    if !failures.is_empty() {
        let _ = write!(detail, "; failures: {}", failures.join("; "));
    }
    Check::new("factorization", failures.is_empty(), detail)
}

pub fn quantum_identity() -> Check {
    let mut failures = Vec::new();
    let mut cases = 0;
    for f in 0..=3 {
        for level in 1..=3 {
            match quantum_ratio_coeffs(f, level, 4) {
                Ok(ratio) => {
                    for n in 1..=4 {
                        cases += 1;
                        if quantum_coeff(f, level, n) != ratio[n as usize] {
                            failures.push(format!("f={f} N={level} n={n}"));
                        }
                    }
                }
                Err(e) => failures.push(format!("f={f} N={level}: {e}")),
            }
        }
    }
    let mut detail = format!("{cases} cases, f <= 3, N <= 3, n <= 4");
    if !failures.is_empty() {
        let _ = write!(detail, "; failures: {}", failures.join(", "));
    }
    Check::new("quantum_identity", failures.is_empty(), detail)
}

pub fn lattice_counts() -> Check {
    let mut failures = Vec::new();
    let five = raney_number(1, 1, 2);
    let paths = count_paths(&PathSpec::new(1, 1, 2));
    if five != 5u32.into() || paths != 5 {
        failures.push(format!("raney(1,1,2) = {five}, paths = {paths}"));
    }
    let catalan: Vec<String> = (0..5).map(|n| level_count(2, 1, n).to_string()).collect();
    if catalan != ["1", "1", "2", "5", "14"] {
        failures.push(format!("catalan = {catalan:?}"));
    }
    for f in 0..=2 {
        for n in 0..=2 {
            for i in 0..=5 {
                if raney_number(f, n, i) != count_paths(&PathSpec::new(f, n, i)).into() {
                    failures.push(format!("raney({f},{n},{i})"));
                }
            }
        }
    }
    for a in 0..=3 {
        for b in 0..=3 {
            for n in 0..=6 {
                if level_count(a + 1, b + 1, n) != count_paths(&PathSpec::new(a, b, n)).into() {
                    failures.push(format!("paths({a},{b},{n})"));
                }
            }
        }
    }
    let detail = if failures.is_empty() {
        "raney(1,1,2) = 5 = paths; catalan 1,1,2,5,14; grids agree".to_string()
    } else {
        failures.join(", ")
    };
    Check::new("lattice_counts", failures.is_empty(), detail)
}

pub fn convolution_lemma() -> Check {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 0..=4 {
        for m in 0..=4 {
            for c in 0..=4 {
                for deg in 0..=8 {
                    cases += 1;
                    if !convolution_check(n, m, c, deg) {
                        failures.push(format!("N={n} M={m} c={c} m={deg}"));
                    }
                }
            }
        }
    }
    let mut detail = format!("{cases} instances, N, M, c <= 4, m <= 8");
    if !failures.is_empty() {
        let _ = write!(detail, "; failures: {}", failures.join(", "));
    }
    Check::new("convolution_lemma", failures.is_empty(), detail)
}

/// `P_1 = 2`, `P_2 = 2 + q^-1 + q^-2`, `P_3 = 2 q^-4 (1 + q + q^2 + q^4)`.
pub fn bottom_row_expected(r: u32) -> Option<LaurentPoly> {
    let from = |terms: &[(i64, i64)]| LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, int(c))));
    match r {
        1 => Some(from(&[(0, 2)])),
        2 => Some(from(&[(0, 2), (-2, 1), (-4, 1)])),
        3 => Some(from(&[(-8, 2), (-6, 2), (-4, 2), (0, 2)])),
        _ => None,
    }
}

pub fn bottom_row() -> Check {
    let mut parts = Vec::new();
    let mut passed = true;
    for r in 1..=3 {
        match bottom_row_946(r) {
            Ok(p) => {
                passed &= Some(&p) == bottom_row_expected(r).as_ref();
                parts.push(format!("P_{r} = {p}"));
            }
            Err(e) => {
                passed = false;
                parts.push(format!("P_{r}: {e}"));
            }
        }
    }
    Check::new("bottom_row_9_46", passed, parts.join("; "))
}

pub fn integrality() -> Check {
    let mut passed = true;
    let mut parts = Vec::new();
    for name in names() {
        let r = get_entry(name).and_then(|e| {
            let a = log_derivative(&e.spec, e.expected_a.len() as u32)?;
            Ok(bps_numbers(&a))
        });
        match r {
            Ok(t) => {
                passed &= t.all_integral();
                parts.push(format!("{name}: N = {}", show(&t.numbers())));
            }
            Err(e) => {
                passed = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    Check::new("integrality", passed, parts.join("; "))
}

/// Every acceptance check, in a fixed order.
pub fn run_all() -> Report {
    let mut checks: Vec<Check> = names().iter().map(|n| knot_check(n)).collect();
    checks.push(closed_form_sweep(200));
    checks.push(factorization_sweep(50));
    checks.push(quantum_identity());
    checks.push(lattice_counts());
    checks.push(convolution_lemma());
    checks.push(bottom_row());
    checks.push(integrality());
    Report::new(checks)
}
