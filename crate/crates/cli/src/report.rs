// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use spapt::classify::{Classifier, SpectralSummary, Verdict};
use spapt::ptranspose::{partial_transpose, Qubit};
use spapt::states::{expand_catalog, StateSpec};
use spapt::tangle::{pure_subclass, PureSubclass};
use spapt::SpaParameter;

use crate::format::{fmt_float, tidy};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub qubit: Option<Qubit>,
    pub p: SpaParameter,
    pub eps: f64,
    pub tangle: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            qubit: None,
            p: SpaParameter::CANONICAL,
            eps: spapt::classify::DEFAULT_EPS,
            tangle: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CutReport {
    pub qubit: Qubit,
    pub cut: &'static str,
    pub pt_spectrum: Vec<f64>,
    pub spa_min: f64,
    /// `spa_min >= threshold - eps`
    pub passes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TangleReport {
    pub tau: f64,
    pub subclass: PureSubclass,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub input: StateSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub renormalized_from: Option<f64>,
    pub p: SpaParameter,
    pub eps: f64,
    pub cuts: Vec<CutReport>,
    pub summary: SpectralSummary,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangle: Option<TangleReport>,
    pub timing: Timing,
}

pub fn build_report(input: StateSpec, opts: &ClassifyOptions) -> Result<Report, CliError> {
    let start = Instant::now();
    if opts.eps.is_nan() || opts.eps < 0.0 {
        return Err(CliError::Input(format!("--eps must be non-negative, got {}", opts.eps)));
    }
    let rho = input.density()?;
    let renormalized_from = match &input {
        StateSpec::Catalog { name, params } => expand_catalog(name, params)?.renormalized_from,
        _ => None,
    };
    let classifier = Classifier { p: opts.p, eps: opts.eps };
    let (summary, verdict) = classifier.classify(&rho)?;
    let selected: Vec<Qubit> = match opts.qubit {
        Some(q) => vec![q],
        None => Qubit::ALL.to_vec(),
    };
    let mut cuts = Vec::with_capacity(selected.len());
    for q in selected {
        let spa_min = summary.get(q);
        cuts.push(CutReport {
            qubit: q,
            cut: q.cut_label(),
            pt_spectrum: partial_transpose(&rho, q).spectrum()?.into_vec(),
            spa_min,
            passes: spa_min >= classifier.threshold() - opts.eps,
        });
    }
    let tangle = if opts.tangle {
        let psi = input
            .pure_state()
            .ok_or_else(|| CliError::Input("--tangle needs a pure state (amplitudes or a pure catalog entry)".into()))?;
        let (subclass, tau) = pure_subclass(&psi)?;
        Some(TangleReport { tau: tau.value(), subclass })
    } else {
        None
    };
    Ok(Report {
        input,
        renormalized_from,
        p: opts.p,
        eps: opts.eps,
        cuts,
        summary,
        verdict,
        tangle,
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    })
}

/// JSON with computed fields rounded to 12 significant digits; the echoed
/// input is left exact so it can be re-read.
pub fn render_json(report: &Report) -> String {
    let mut value = serde_json::to_value(report).expect("reports serialize");
    if let Value::Object(map) = &mut value {
        for (key, field) in map.iter_mut() {
            if key != "input" {
                tidy(field);
            }
        }
    }
    serde_json::to_string_pretty(&value).expect("values serialize")
}

pub fn render_pretty(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p = {}, threshold = {}, eps = {}", fmt_float(report.p.value()), fmt_float(report.verdict.threshold), fmt_float(report.eps));
    if let Some(n2) = report.renormalized_from {
        let _ = writeln!(out, "parameters renormalized (squared norm was {})", fmt_float(n2));
    }
    let _ = writeln!(out, "{:<6} {:>16} {:>6}  pt spectrum", "cut", "spa min", "pass");
    for cut in &report.cuts {
        let spectrum: Vec<String> = cut.pt_spectrum.iter().map(|&v| fmt_float(v)).collect();
        let _ = writeln!(
            out,
            "{:<6} {:>16} {:>6}  [{}]",
            cut.cut,
            fmt_float(cut.spa_min),
            if cut.passes { "yes" } else { "no" },
            spectrum.join(", ")
        );
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "lam_a = {}, lam_b = {}, lam_c = {}, lam_max = {}",
        fmt_float(s.lam_a),
        fmt_float(s.lam_b),
        fmt_float(s.lam_c),
        fmt_float(s.lam_max)
    );
    let _ = writeln!(out, "verdict: {} (margin {})", report.verdict.label(), fmt_float(report.verdict.margin));
    if let Some(t) = &report.tangle {
        let _ = writeln!(out, "tangle: {} ({})", fmt_float(t.tau), serde_json::to_value(t.subclass).unwrap().as_str().unwrap_or(""));
    }
    out
}
