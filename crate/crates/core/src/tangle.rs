// SPDX-License-Identifier: Apache-2.0

//! Three-tangle of pure states and the GHZ/W split of genuinely entangled ones.

use num_complex::Complex64;
use serde::Serialize;

use crate::classify::{classify, VerdictKind, DEFAULT_EPS};
use crate::linalg::LinalgError;
use crate::states::PureState3;

/// Tangles at or below this count as zero.
pub const TAU_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct TangleValue(pub f64);

impl TangleValue {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 <= TAU_TOL
    }
}

/// `4 |d1 - 2 d2 + 4 d3|` from Cayley's hyperdeterminant.
pub fn three_tangle_pure(psi: &PureState3) -> TangleValue {
    let a = |s: &str| -> Complex64 {
        let b = s.as_bytes();
        psi.amp((b[0] - b'0') as usize, (b[1] - b'0') as usize, (b[2] - b'0') as usize)
    };
    let (a000, a001, a010, a011) = (a("000"), a("001"), a("010"), a("011"));
    let (a100, a101, a110, a111) = (a("100"), a("101"), a("110"), a("111"));

    let d1 = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 + a100 * a100 * a011 * a011;
    let d2 = a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001;
    let d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
    TangleValue(4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PureSubclass {
    GhzClass,
    WClass,
    NotGenuine,
}

pub fn pure_subclass(psi: &PureState3) -> Result<(PureSubclass, TangleValue), LinalgError> {
    let tau = three_tangle_pure(psi);
    let verdict = classify(&psi.density(), DEFAULT_EPS)?;
    let class = match verdict.kind {
        VerdictKind::GenuineEntangled if tau.is_zero() => PureSubclass::WClass,
        VerdictKind::GenuineEntangled => PureSubclass::GhzClass,
        _ => PureSubclass::NotGenuine,
    };
    Ok((class, tau))
}
