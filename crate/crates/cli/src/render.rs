//! Output in the three formats. Rationals are always `num/den`.

use qgen::bps::BpsTable;
use qgen::exact::{format_rational, LaurentPoly, Rational};
use qgen::lattice::PathSpec;
use qgen::series::MultiSeries;
use qgen::verify::Report;
use serde::Serialize;

use crate::Format;

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output is serializable");
    s.push('\n');
    s
}

fn csv_rows(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn strings<const K: usize>(xs: [&str; K]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn series(y: &MultiSeries<Rational>, format: Format) -> String {
    match format {
        Format::Json => json(y),
        Format::Csv => {
            let mut header: Vec<String> = (1..=y.arity()).map(|i| format!("l{i}")).collect();
            header.push("value".into());
            let rows = y.terms().map(|(l, c)| {
                let mut row: Vec<String> = l.0.iter().map(u32::to_string).collect();
                row.push(format_rational(c));
                row
            });
            csv_rows(&header, rows)
        }
        Format::Text => y
            .terms()
            .map(|(l, c)| {
                let idx: Vec<String> = l.0.iter().map(u32::to_string).collect();
                format!("({})\t{}\n", idx.join(","), format_rational(c))
            })
            .collect(),
    }
}

pub fn bps(table: &BpsTable, format: Format) -> String {
    match format {
        Format::Json => json(table),
        Format::Csv => csv_rows(
            &strings(["r", "a", "N", "integral"]),
            table
                .records()
                .iter()
                .map(|r| vec![r.r.to_string(), format_rational(&r.a), format_rational(&r.n), r.integral.to_string()]),
        ),
        Format::Text => {
            let mut s = String::from("r\ta\tN\tintegral\n");
            for r in table.records() {
                s += &format!("{}\t{}\t{}\t{}\n", r.r, format_rational(&r.a), format_rational(&r.n), r.integral);
            }
            s
        }
    }
}

pub fn count(p: &PathSpec, n: u64, format: Format) -> String {
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        spec: &'a PathSpec,
        count: u64,
    }
    match format {
        Format::Json => json(&Out { spec: p, count: n }),
        Format::Csv => csv_rows(
            &strings(["a", "b", "n", "count"]),
            [vec![p.a.to_string(), p.b.to_string(), p.n.to_string(), n.to_string()]],
        ),
        Format::Text => format!("{n}\n"),
    }
}

pub fn weighted(p: &PathSpec, w: &LaurentPoly, format: Format) -> String {
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        spec: &'a PathSpec,
        weighted: &'a LaurentPoly,
        display: String,
    }
    match format {
        Format::Json => json(&Out { spec: p, weighted: w, display: w.to_string() }),
        Format::Csv => csv_rows(
            &strings(["t_exponent", "coefficient"]),
            w.terms().map(|(e, c)| vec![e.to_string(), format_rational(c)]),
        ),
        Format::Text => format!("{w}\n"),
    }
}

pub fn report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows(
            &strings(["check", "passed", "detail"]),
            r.checks.iter().map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]),
        ),
        Format::Text => {
            let mut s = String::new();
            for c in &r.checks {
                s += &format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            s += if r.passed { "all checks passed\n" } else { "some checks failed\n" };
            s
        }
    }
}
