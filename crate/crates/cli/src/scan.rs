// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps over catalog families.

use rayon::prelude::*;

use spapt::classify::{Classifier, SpectralSummary, Verdict, VerdictKind};
use spapt::reference::RHO2_TANGLE_BOUNDARY;
use spapt::states::{CatalogId, StateSpec};
use spapt::tangle::three_tangle_pure;

use crate::format::fmt_float;
use crate::reproduce::verdict_tag;
use crate::CliError;

/// `rho2` along `q2 = (1 - q1)/n`.
pub const RHO2_N: &str = "rho2-n";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Catalog(CatalogId),
    Rho2N,
}

impl Family {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        if name == RHO2_N {
            return Ok(Family::Rho2N);
        }
        CatalogId::from_name(name).map(Family::Catalog).map_err(|e| {
            CliError::Input(format!("{e}; scan also accepts `{RHO2_N}`"))
        })
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Catalog(id) => id.param_names(),
            Family::Rho2N => &["q1", "n"],
        }
    }

    fn spec(self, point: &[f64]) -> Result<StateSpec, CliError> {
        match self {
            Family::Catalog(id) => Ok(StateSpec::catalog(id.name(), point)),
            Family::Rho2N => {
                let n = point[1];
                if !(n >= 1.0 && n.fract() == 0.0) {
                    return Err(CliError::Input(format!("n = {n} must be a positive integer")));
                }
                Ok(StateSpec::catalog("rho2", &[point[0], (1.0 - point[0]) / n]))
            }
        }
    }
}

/// `start:stop:count` (inclusive, evenly spaced), a comma list, or one value.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Input(format!("bad grid `{text}`: {why}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(&format!("`{s}` is not a number")));
    let parts: Vec<&str> = text.split(':').collect();
    let values = match parts.as_slice() {
        [start, stop, count] => {
            let (start, stop) = (num(start)?, num(stop)?);
            let count: usize = count.trim().parse().map_err(|_| bad("count must be a positive integer"))?;
            match count {
                0 => return Err(bad("count must be a positive integer")),
                1 => vec![start],
                _ => (0..count)
                    .map(|i| {
                        if i + 1 == count {
                            stop
                        } else {
                            start + (stop - start) * i as f64 / (count - 1) as f64
                        }
                    })
                    .collect(),
            }
        }
        [single] => single.split(',').map(num).collect::<Result<_, _>>()?,
        _ => return Err(bad("expected start:stop:count or a comma-separated list")),
    };
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(bad(&format!("{v} is not finite")));
    }
    Ok(values)
}

fn cartesian(grids: &[Vec<f64>]) -> Vec<Vec<f64>> {
    grids.iter().fold(vec![Vec::new()], |acc, grid| {
        acc.iter()
            .flat_map(|prefix| {
                grid.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

struct ScanRow {
    point: Vec<f64>,
    summary: SpectralSummary,
    verdict: Verdict,
    tau: Option<f64>,
}

fn evaluate(family: Family, point: Vec<f64>, classifier: &Classifier, tangle: bool) -> Result<ScanRow, CliError> {
    let spec = family.spec(&point)?;
    let rho = spec.density()?;
    let (summary, verdict) = classifier.classify(&rho)?;
    let tau = if tangle { spec.pure_state().map(|psi| three_tangle_pure(&psi).value()) } else { None };
    Ok(ScanRow { point, summary, verdict, tau })
}

pub fn scan(family: Family, grids: &[Vec<f64>], classifier: &Classifier, tangle: bool) -> Result<String, CliError> {
    let names = family.param_names();
    if grids.len() != names.len() {
        return Err(CliError::Input(format!(
            "family expects {} --param grid(s) ({}), got {}",
            names.len(),
            names.join(", "),
            grids.len()
        )));
    }
    let rows: Vec<Result<ScanRow, CliError>> = cartesian(grids)
        .into_par_iter()
        .map(|point| evaluate(family, point, classifier, tangle))
        .collect();
    let rows: Vec<ScanRow> = rows.into_iter().collect::<Result<_, _>>()?;

    let mut wtr = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    if family == Family::Rho2N {
        header.push("q2".into());
    }
    header.extend(["lam_a", "lam_b", "lam_c", "lam_max", "verdict"].map(String::from));
    if tangle {
        header.push("tau".into());
    }
    if family == Family::Rho2N {
        header.push("quoted_subclass".into());
    }
    wtr.write_record(&header)?;
    for row in &rows {
        let mut rec: Vec<String> = row.point.iter().map(|&v| fmt_float(v)).collect();
        if family == Family::Rho2N {
            rec.push(fmt_float((1.0 - row.point[0]) / row.point[1]));
        }
        let s = &row.summary;
        rec.extend([s.lam_a, s.lam_b, s.lam_c, s.lam_max].map(fmt_float));
        rec.push(verdict_tag(&row.verdict));
        if tangle {
            rec.push(row.tau.map(fmt_float).unwrap_or_default());
        }
        if family == Family::Rho2N {
            let quoted = match row.verdict.kind {
                VerdictKind::GenuineEntangled if row.point[0] <= RHO2_TANGLE_BOUNDARY => "w-class",
                VerdictKind::GenuineEntangled => "ghz-class",
                _ => "",
            };
            rec.push(quoted.to_string());
        }
        wtr.write_record(&rec)?;
    }
    let bytes = wtr.into_inner().map_err(|e| CliError::Numerical(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("0.25").unwrap(), vec![0.25]);
        assert_eq!(parse_grid("0, 0.5,1").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("0.2:0.4:1").unwrap(), vec![0.2]);
        assert_eq!(parse_grid("0:0.3:4").unwrap().last(), Some(&0.3));
        for bad in ["", "a", "0:1", "0:1:0", "0:1:x", "inf"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn cartesian_order() {
        let pts = cartesian(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(pts, vec![vec![1.0, 3.0], vec![1.0, 4.0], vec![2.0, 3.0], vec![2.0, 4.0]]);
        assert_eq!(cartesian(&[]), vec![Vec::<f64>::new()]);
    }

    #[test]
    fn rho1_endpoints() {
        let out = scan(Family::parse("rho1").unwrap(), &[vec![0.0, 1.0]], &Classifier::default(), false).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "q,lam_a,lam_b,lam_c,lam_max,verdict");
        assert!(lines[1].ends_with("genuine_entangled"));
        assert!(lines[2].starts_with("1,0.1,0.1,0.1,0.1,fully_separable"));
    }

    #[test]
    fn out_of_range_point_is_input_error() {
        let err = scan(Family::parse("b1").unwrap(), &[vec![0.5, 1.5]], &Classifier::default(), false).unwrap_err();
        assert_eq!(err.code(), 2);
        assert!(err.to_string().contains("1.5"));
        let err = scan(Family::Rho2N, &[vec![0.5], vec![1.5]], &Classifier::default(), false).unwrap_err();
        assert_eq!(err.code(), 2);
    }

    #[test]
    fn wrong_grid_count() {
        assert!(scan(Family::parse("ghz").unwrap(), &[vec![0.6]], &Classifier::default(), false).is_err());
        assert!(Family::parse("nope").is_err());
    }
}
