//! CSV and JSON renderings of experiment results.
//!
//! CSV: header row, LF line endings, floats as `{:.16e}`, rationals as `p/q`.

use std::fmt::Write;

use num::BigRational;
use serde_json::{json, Value};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::lab::{ConvergenceTable, SweepResult, MOMENT_ERROR_ORDER};
use crate::measure::{MomentSource, PerturbedMeasure};
use crate::scalar::{format_f64, format_rational, parse_rational, Arithmetic, Scalar};
use crate::zeros::ZeroSet;

fn push_row<I: IntoIterator<Item = String>>(out: &mut String, fields: I) {
    let row: Vec<String> = fields.into_iter().collect();
    out.push_str(&row.join(","));
    out.push('\n');
}

/// Columns `a,x1,…,xn`, one row per grid point.
pub fn sweep_csv(s: &SweepResult) -> String {
    let mut out = String::new();
    push_row(
        &mut out,
        std::iter::once("a".to_string()).chain((1..=s.degree).map(|k| format!("x{k}"))),
    );
    for (i, a) in s.a_grid.iter().enumerate() {
        push_row(
            &mut out,
            std::iter::once(format_f64(Scalar::as_f64(a)))
                .chain(s.trajectories.iter().map(|row| format_f64(row[i]))),
        );
    }
    out
}

/// Reads back a table written by [`sweep_csv`]: grid and `[k][i]` trajectories.
pub fn parse_sweep_csv(text: &str) -> Result<(Vec<BigRational>, Vec<Vec<f64>>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty sweep table".into()))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.first() != Some(&"a") || cols.len() < 2 {
        return Err(Error::Parse(format!("unexpected sweep header {header:?}")));
    }
    let n = cols.len() - 1;
    let mut grid = Vec::new();
    let mut trajectories = vec![Vec::new(); n];
    for (line_no, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != n + 1 {
            return Err(Error::Parse(format!(
                "row {}: expected {} fields, got {}",
                line_no + 1,
                n + 1,
                fields.len()
            )));
        }
        grid.push(parse_rational(fields[0])?);
        for (k, f) in fields[1..].iter().enumerate() {
            let x: f64 = f
                .parse()
                .map_err(|_| Error::Parse(format!("row {}: bad number {f:?}", line_no + 1)))?;
            trajectories[k].push(x);
        }
    }
    Ok((grid, trajectories))
}

pub fn sweep_json(s: &SweepResult) -> Value {
    let offending = s.verdict.offending().map(|(k, i)| json!({ "k": k, "i": i }));
    let brackets = s.brackets.as_ref().map(|b| {
        b.iter()
            .map(|row| {
                row.iter()
                    .map(|(lo, hi)| json!([format_rational(lo), format_rational(hi)]))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    });
    json!({
        "measure": s.description,
        "degree": s.degree,
        "a_grid": s.a_grid.iter().map(format_rational).collect::<Vec<_>>(),
        "trajectories": s.trajectories,
        "brackets": brackets,
        "verdict": s.verdict.name(),
        "offending": offending,
        "margin": s.margin,
        "exact_margin": s.exact_margin.as_ref().map(format_rational),
    })
}

/// Columns `gamma,err_1,…,err_n,worst_error,mom_err_0,…,mom_err_4`.
pub fn convergence_csv(t: &ConvergenceTable) -> String {
    let mut out = String::new();
    push_row(
        &mut out,
        std::iter::once("gamma".to_string())
            .chain((1..=t.degree).map(|k| format!("err_{k}")))
            .chain(std::iter::once("worst_error".to_string()))
            .chain((0..=MOMENT_ERROR_ORDER).map(|k| format!("mom_err_{k}"))),
    );
    for (g, gamma) in t.gammas.iter().enumerate() {
        push_row(
            &mut out,
            std::iter::once(format_f64(Scalar::as_f64(gamma)))
                .chain(t.errors[g].iter().map(|e| format_f64(*e)))
                .chain(std::iter::once(format_f64(t.worst_error[g])))
                .chain(t.moment_errors[g].iter().map(|e| format_f64(*e))),
        );
    }
    out
}

pub fn convergence_json(t: &ConvergenceTable) -> Value {
    json!({
        "measure": t.description,
        "center": format_rational(&t.center),
        "mass": format_rational(&t.mass),
        "degree": t.degree,
        "gammas": t.gammas.iter().map(format_rational).collect::<Vec<_>>(),
        "reference": zeros_json(&t.reference),
        "errors": t.errors,
        "worst_error": t.worst_error,
        "moment_errors": t.moment_errors,
        "tail_nonincreasing": t.tail_nonincreasing(),
    })
}

/// Columns `k,zero,accuracy`, plus `lower,upper` when exact brackets exist.
pub fn zeros_csv(z: &ZeroSet) -> String {
    let mut out = String::new();
    let exact = z.brackets().is_some();
    let mut header = vec!["k", "zero", "accuracy"];
    if exact {
        header.extend(["lower", "upper"]);
    }
    push_row(&mut out, header.into_iter().map(String::from));
    for (k, x) in z.zeros().iter().enumerate() {
        let mut row = vec![(k + 1).to_string(), format_f64(*x), format_f64(z.certified_accuracy())];
        if let Some(b) = z.brackets() {
            row.push(format_rational(&b[k].0));
            row.push(format_rational(&b[k].1));
        }
        push_row(&mut out, row);
    }
    out
}

pub fn zeros_json(z: &ZeroSet) -> Value {
    json!({
        "degree": z.degree(),
        "method": z.method().name(),
        "zeros": z.zeros(),
        "certified_accuracy": z.certified_accuracy(),
        "brackets": z.brackets().map(|b| {
            b.iter()
                .map(|(lo, hi)| json!([format_rational(lo), format_rational(hi)]))
                .collect::<Vec<_>>()
        }),
    })
}

/// m_0 … m_{count−1} rendered in the measure's own arithmetic: `p/q` when
/// exact, 17 significant digits otherwise.
pub fn moment_strings(m: &PerturbedMeasure, count: usize) -> Result<Vec<String>> {
    let values = match m.arithmetic() {
        Arithmetic::ExactRational => m.moments::<BigRational>(count)?.iter().map(format_rational).collect(),
        Arithmetic::Float(53) => m.moments::<f64>(count)?.into_iter().map(format_f64).collect(),
        Arithmetic::Float(bits) => {
            Arithmetic::Float(bits).validate()?;
            m.moments::<TwoFloat>(count)?.iter().map(|x| format_f64(x.as_f64())).collect()
        }
    };
    Ok(values)
}

/// Columns `k,moment`; `values` are already rendered.
pub fn moments_csv(values: &[String]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "k,moment");
    for (k, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{k},{v}");
    }
    out
}

pub fn moments_json(description: &str, values: &[String]) -> Value {
    json!({ "measure": description, "moments": values })
}
