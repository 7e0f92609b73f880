// SPDX-License-Identifier: Apache-2.0

//! CSV reproductions of the printed tables and worked examples.

use spapt::classify::{classify, spectral_summary, DEFAULT_EPS};
use spapt::ptranspose::Qubit;
use spapt::reference::{
    evaluate_row, example_cases, ReportedRow, B2_COLUMNS, B2_ROWS, G3_COLUMNS, G3_ROWS, REPORTED_TOL,
};
use spapt::states::catalog;

use crate::format::fmt_float;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Table1,
    Table2,
    Examples,
}

pub fn reproduce(target: Target) -> Result<String, CliError> {
    match target {
        Target::Table1 => table("g3", &G3_ROWS, G3_COLUMNS),
        Target::Table2 => table("b2", &B2_ROWS, B2_COLUMNS),
        Target::Examples => examples(),
    }
}

fn finish(wtr: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = wtr.into_inner().map_err(|e| CliError::Numerical(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn table(name: &str, rows: &[ReportedRow], columns: [Qubit; 2]) -> Result<String, CliError> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["lambda0".to_string(), "lambda1".into(), "lambda2".into(), "renormalized_from".into()];
    for tag in columns.iter().map(|q| q.to_string().to_lowercase()).chain(["max".to_string()]) {
        header.extend([format!("lam_{tag}"), format!("reported_{tag}"), format!("delta_{tag}")]);
    }
    header.extend(["within_tol".into(), "verdict".into()]);
    wtr.write_record(&header)?;
    for row in rows {
        let e = evaluate_row(name, row, columns)?;
        let deltas = e.deltas(row);
        let mut rec: Vec<String> = row.params.iter().map(|&v| fmt_float(v)).collect();
        rec.push(opt(e.renormalized_from));
        for i in 0..3 {
            rec.extend([fmt_float(e.computed[i]), fmt_float(row.reported[i]), fmt_float(deltas[i])]);
        }
        rec.push(e.within(row, REPORTED_TOL).to_string());
        rec.push(verdict_tag(&e.verdict));
        wtr.write_record(&rec)?;
    }
    finish(wtr)
}

pub fn verdict_tag(v: &spapt::Verdict) -> String {
    match v.kind {
        spapt::VerdictKind::Biseparable { cuts } => format!("biseparable({})", cuts.labels().join("|")),
        other => other.tag().to_string(),
    }
}

fn examples() -> Result<String, CliError> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record([
        "example", "catalog", "params", "lam_a", "lam_b", "lam_c", "closed_a", "closed_b", "closed_c", "max_abs_delta",
        "verdict", "reported_verdict", "verdict_match",
    ])?;
    for case in example_cases() {
        let rho = catalog(case.catalog, &case.params)?.density()?;
        let s = spectral_summary(&rho)?;
        let v = classify(&rho, DEFAULT_EPS)?;
        let lam = [s.lam_a, s.lam_b, s.lam_c];
        let delta = (0..3).map(|i| (lam[i] - case.reported[i]).abs()).fold(0.0, f64::max);
        let params: Vec<String> = case.params.iter().map(|&p| fmt_float(p)).collect();
        let mut rec = vec![case.label.to_string(), case.catalog.to_string(), params.join(" ")];
        rec.extend(lam.iter().map(|&x| fmt_float(x)));
        rec.extend(case.reported.iter().map(|&x| fmt_float(x)));
        rec.push(fmt_float(delta));
        rec.push(verdict_tag(&v));
        rec.push(case.verdict.tag());
        rec.push(case.verdict.matches(v.kind).to_string());
        wtr.write_record(&rec)?;
    }
    finish(wtr)
}
