// SPDX-License-Identifier: Apache-2.0

//! Triage of three-qubit states from the minimum eigenvalues of the three
//! SPA-partial-transposed outputs.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::linalg::LinalgError;
use crate::ptranspose::Qubit;
use crate::spa::{spa_pt, SpaParameter};
use crate::states::DensityMatrix8;

/// PPT threshold `1/10` of the canonical map.
pub const SEPARABILITY_THRESHOLD: f64 = 0.1;

pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralSummary {
    pub lam_a: f64,
    pub lam_b: f64,
    pub lam_c: f64,
    pub lam_max: f64,
}

impl SpectralSummary {
    pub fn from_values(lam_a: f64, lam_b: f64, lam_c: f64) -> Self {
        Self {
            lam_a,
            lam_b,
            lam_c,
            lam_max: lam_a.max(lam_b).max(lam_c),
        }
    }

    pub fn get(&self, q: Qubit) -> f64 {
        match q {
            Qubit::A => self.lam_a,
            Qubit::B => self.lam_b,
            Qubit::C => self.lam_c,
        }
    }
}

pub fn spectral_summary(rho: &DensityMatrix8) -> Result<SpectralSummary, LinalgError> {
    spectral_summary_with(rho, SpaParameter::CANONICAL)
}

pub fn spectral_summary_with(rho: &DensityMatrix8, p: SpaParameter) -> Result<SpectralSummary, LinalgError> {
    let mut lam = [0.0; 3];
    for q in Qubit::ALL {
        lam[q.index()] = spa_pt(rho, q, p).min_eigenvalue()?;
    }
    Ok(SpectralSummary::from_values(lam[0], lam[1], lam[2]))
}

/// Subset of `{A, B, C}`, stored as a bitmask over [`Qubit::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CutSet(u8);

impl CutSet {
    pub fn insert(&mut self, q: Qubit) {
        self.0 |= 1 << q.index();
    }

    pub fn contains(self, q: Qubit) -> bool {
        self.0 & (1 << q.index()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Qubit> {
        Qubit::ALL.into_iter().filter(move |&q| self.contains(q))
    }

    pub fn labels(self) -> Vec<&'static str> {
        self.iter().map(Qubit::cut_label).collect()
    }
}

impl FromIterator<Qubit> for CutSet {
    fn from_iter<I: IntoIterator<Item = Qubit>>(iter: I) -> Self {
        let mut set = CutSet::default();
        for q in iter {
            set.insert(q);
        }
        set
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    GenuineEntangled,
    /// Cuts whose output passed the threshold test.
    Biseparable { cuts: CutSet },
    FullySeparable,
}

impl VerdictKind {
    pub fn tag(self) -> &'static str {
        match self {
            VerdictKind::GenuineEntangled => "genuine_entangled",
            VerdictKind::Biseparable { .. } => "biseparable",
            VerdictKind::FullySeparable => "fully_separable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// The test only uses necessary conditions for separability.
    pub caveat: bool,
    /// Distance of the closest eigenvalue to the threshold.
    pub margin: f64,
    pub threshold: f64,
}

impl Verdict {
    pub fn label(&self) -> String {
        let head = match self.kind {
            VerdictKind::GenuineEntangled => "genuine entangled".to_string(),
            VerdictKind::Biseparable { cuts } => format!("biseparable in {}", cuts.labels().join(", ")),
            VerdictKind::FullySeparable => "fully separable".to_string(),
        };
        format!("{head} (necessary-condition based)")
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Verdict", 6)?;
        st.serialize_field("kind", self.kind.tag())?;
        let cuts = match self.kind {
            VerdictKind::Biseparable { cuts } => cuts.labels(),
            VerdictKind::FullySeparable => CutSet::from_iter(Qubit::ALL).labels(),
            VerdictKind::GenuineEntangled => Vec::new(),
        };
        st.serialize_field("passing_cuts", &cuts)?;
        st.serialize_field("label", &self.label())?;
        st.serialize_field("caveat", &self.caveat)?;
        st.serialize_field("margin", &self.margin)?;
        st.serialize_field("threshold", &self.threshold)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classifier {
    pub p: SpaParameter,
    pub eps: f64,
}

impl Default for Classifier {
    fn default() -> Self {
        Self {
            p: SpaParameter::CANONICAL,
            eps: DEFAULT_EPS,
        }
    }
}

impl Classifier {
    pub fn with_eps(eps: f64) -> Self {
        Self { eps, ..Self::default() }
    }

    /// `p/8`, the value every output eigenvalue reaches for a PPT cut.
    pub fn threshold(&self) -> f64 {
        if self.p == SpaParameter::CANONICAL {
            SEPARABILITY_THRESHOLD
        } else {
            self.p.separable_floor()
        }
    }

    pub fn summary(&self, rho: &DensityMatrix8) -> Result<SpectralSummary, LinalgError> {
        spectral_summary_with(rho, self.p)
    }

    pub fn verdict(&self, summary: &SpectralSummary) -> Verdict {
        let t = self.threshold();
        let passing: CutSet = Qubit::ALL.into_iter().filter(|&q| summary.get(q) >= t - self.eps).collect();
        let margin = Qubit::ALL
            .into_iter()
            .map(|q| (summary.get(q) - t).abs())
            .fold(f64::INFINITY, f64::min);
        let kind = match passing.len() {
            0 => VerdictKind::GenuineEntangled,
            3 => VerdictKind::FullySeparable,
            _ => VerdictKind::Biseparable { cuts: passing },
        };
        Verdict {
            kind,
            caveat: true,
            margin,
            threshold: t,
        }
    }

    pub fn classify(&self, rho: &DensityMatrix8) -> Result<(SpectralSummary, Verdict), LinalgError> {
        let summary = self.summary(rho)?;
        let verdict = self.verdict(&summary);
        Ok((summary, verdict))
    }
}

pub fn classify(rho: &DensityMatrix8, eps: f64) -> Result<Verdict, LinalgError> {
    Ok(Classifier::with_eps(eps).classify(rho)?.1)
}

/// Necessary condition for separability across the cut `q | rest`:
/// `λ_min(ρ̃^{T_q}) >= 1/10 - eps`.
pub fn theorem_check(rho: &DensityMatrix8, q: Qubit, eps: f64) -> Result<bool, LinalgError> {
    Ok(spa_pt(rho, q, SpaParameter::CANONICAL).min_eigenvalue()? >= SEPARABILITY_THRESHOLD - eps)
}
