// SPDX-License-Identifier: Apache-2.0

//! Three-qubit entanglement triage through the structural physical
//! approximation of partial transposition.

pub mod classify;
pub mod linalg;
pub mod ptranspose;
pub mod reference;
pub mod spa;
pub mod states;
pub mod tangle;

#[cfg(test)]
mod testutil;

pub use classify::{classify, spectral_summary, theorem_check, Classifier, CutSet, SpectralSummary, Verdict, VerdictKind};
pub use linalg::{hermitian_eigenvalues, min_eigenvalue, ComplexMatrix, HermitianSpectrum, LinalgError};
pub use ptranspose::{is_ppt_cut, partial_transpose, PartialTransposed8, Qubit};
pub use spa::{min_cp_parameter, spa_element_map, spa_pt, spa_pt_canonical, SpaError, SpaOutput8, SpaParameter};
pub use states::{catalog, expand_catalog, parse_state_file, CatalogId, DensityMatrix8, PureState3, StateError, StateSpec};
pub use tangle::{pure_subclass, three_tangle_pure, PureSubclass, TangleValue};
