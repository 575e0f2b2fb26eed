use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgen::bps::bps_table;
use qgen::catalog::get_entry;
use qgen::closedform::coeff_b;
use qgen::lattice::{count_paths, weighted_count, PathSpec};
use qgen::series::{classical_limit_oracle, truncation_for, MultiSeries, QuiverSpec};
use qgen::verify::{run_all, run_case};
use qgen::Error;

mod render;

const EXIT_FAILED: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

/// Classical limits, BPS numbers and lattice-path counts for symmetric quivers.
#[derive(Parser)]
#[command(name = "qgen", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Oracle,
    Both,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpecSource {
    /// Quiver spec file: {"name"?, "matrix", "levels", "signs"}.
    spec: Option<PathBuf>,

    /// Spec given inline as JSON.
    #[arg(long)]
    inline: Option<String>,

    /// Built-in knot quiver (9_46, 8_20, 9_42).
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of y on sum n_i l_i <= D.
    Limit {
        #[command(flatten)]
        source: SpecSource,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
        /// Largest index allowed at vertices of level 0.
        #[arg(long)]
        vertex_cap: Option<u32>,
    },
    /// Log-derivative coefficients a_r and BPS numbers N_r for r <= R.
    Bps {
        #[command(flatten)]
        source: SpecSource,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_order: u32,
    },
    /// Paths to (n, a n + b) never above y = a x + b.
    Lattice {
        #[arg(long, default_value_t = 1)]
        a: u32,
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[arg(long)]
        n: u32,
        /// Area-weighted count in t = q^{1/2}.
        #[arg(long)]
        weighted: bool,
    },
    /// Catalog knots end to end plus the identity sweeps.
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        case: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidSpec(_)
            | Error::UnboundedTruncation(_)
            | Error::UnknownEntry(_)
            | Error::ParseRational(_)
            | Error::IndexOutOfRange { .. } => EXIT_BAD_INPUT,
            _ => EXIT_FAILED,
        };
        Failure { code, message: e.to_string() }
    }
}

fn bad_input(message: String) -> Failure {
    Failure { code: EXIT_BAD_INPUT, message }
}

fn load_spec(src: &SpecSource) -> Result<QuiverSpec, Failure> {
    if let Some(name) = &src.catalog {
        return Ok(get_entry(name)?.spec);
    }
    let json = match (&src.spec, &src.inline) {
        (Some(path), _) => {
            fs::read_to_string(path).map_err(|e| bad_input(format!("cannot read {}: {e}", path.display())))?
        }
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(bad_input("no spec given".into())),
    };
    Ok(QuiverSpec::from_json(&json)?)
}

/// Rendered output plus the exit code it should end with.
struct Outcome {
    body: String,
    code: u8,
    diagnostic: Option<String>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, code: 0, diagnostic: None }
    }
}

fn closed_series(
    spec: &QuiverSpec,
    trunc: &qgen::series::Truncation,
) -> Result<MultiSeries<qgen::exact::Rational>, Error> {
    let terms =
        trunc.indices().into_iter().map(|l| coeff_b(spec, &l.0).map(|b| (l, b))).collect::<Result<Vec<_>, _>>()?;
    Ok(MultiSeries::from_terms(trunc.clone(), terms))
}

fn limit(
    src: &SpecSource,
    max_degree: u32,
    method: Method,
    cap: Option<u32>,
    format: Format,
) -> Result<Outcome, Failure> {
    let spec = load_spec(src)?;
    let trunc = truncation_for(&spec, max_degree, cap)?;
    let series = match method {
        Method::Oracle => classical_limit_oracle(&spec, &trunc)?,
        Method::Closed => closed_series(&spec, &trunc)?,
        Method::Both => {
            let oracle = classical_limit_oracle(&spec, &trunc)?;
            let closed = closed_series(&spec, &trunc)?;
            let diffs: Vec<String> = trunc
                .indices()
                .iter()
                .filter(|l| oracle.coeff(l) != closed.coeff(l))
                .map(|l| format!("{:?}: closed {} oracle {}", l.0, closed.coeff(l), oracle.coeff(l)))
                .collect();
            if !diffs.is_empty() {
                return Ok(Outcome {
                    body: render::series(&oracle, format),
                    code: EXIT_DISAGREE,
                    diagnostic: Some(format!("methods disagree at {} indices:\n{}", diffs.len(), diffs.join("\n"))),
                });
            }
            oracle
        }
    };
    Ok(Outcome::ok(render::series(&series, format)))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Limit { source, max_degree, method, vertex_cap } => {
            limit(source, *max_degree, *method, *vertex_cap, cli.format)
        }
        Command::Bps { source, max_order } => {
            let spec = load_spec(source)?;
            Ok(Outcome::ok(render::bps(&bps_table(&spec, *max_order)?, cli.format)))
        }
        Command::Lattice { a, b, n, weighted } => {
            let p = PathSpec::new(*a, *b, *n);
            let body = if *weighted {
                render::weighted(&p, &weighted_count(&p), cli.format)
            } else {
                render::count(&p, count_paths(&p), cli.format)
            };
            Ok(Outcome::ok(body))
        }
        Command::Verify { case, all } => {
            let report = match (case, all) {
                (Some(name), _) => run_case(name)?,
                (None, true) => run_all(),
                (None, false) => return Err(bad_input("verify needs --case NAME or --all".into())),
            };
            let code = if report.passed { 0 } else { EXIT_FAILED };
            Ok(Outcome { body: render::report(&report, cli.format), code, diagnostic: None })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Some(d) = &out.diagnostic {
                eprintln!("{d}");
            }
            let written = match &cli.output {
                Some(path) => fs::write(path, &out.body).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{}", out.body);
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(out.code),
                Err(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(EXIT_FAILED)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
