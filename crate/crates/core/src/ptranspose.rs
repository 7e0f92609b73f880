// SPDX-License-Identifier: Apache-2.0

//! Single-qubit partial transposition of three-qubit operators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, HermitianSpectrum, LinalgError, HERMITIAN_TOL};
use crate::states::{DensityMatrix8, DIM};

/// Default tolerance for the PPT test.
pub const PPT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Qubit {
    A,
    B,
    C,
}

impl Qubit {
    pub const ALL: [Qubit; 3] = [Qubit::A, Qubit::B, Qubit::C];

    /// Bit of the basis index `4a + 2b + c` owned by this qubit.
    pub fn mask(self) -> usize {
        match self {
            Qubit::A => 0b100,
            Qubit::B => 0b010,
            Qubit::C => 0b001,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Qubit::A => 0,
            Qubit::B => 1,
            Qubit::C => 2,
        }
    }

    /// Bipartition that separates this qubit from the other two.
    pub fn cut_label(self) -> &'static str {
        match self {
            Qubit::A => "A-BC",
            Qubit::B => "B-AC",
            Qubit::C => "C-AB",
        }
    }

    pub fn parse(s: &str) -> Option<Qubit> {
        match s {
            "A" | "a" => Some(Qubit::A),
            "B" | "b" => Some(Qubit::B),
            "C" | "c" => Some(Qubit::C),
            _ => None,
        }
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Qubit::A => "A",
            Qubit::B => "B",
            Qubit::C => "C",
        };
        f.write_str(s)
    }
}

/// Partial transpose of a density matrix. Hermitian with unit trace, not
/// necessarily positive.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialTransposed8 {
    matrix: ComplexMatrix,
    qubit: Qubit,
}

impl PartialTransposed8 {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn qubit(&self) -> Qubit {
        self.qubit
    }

    pub fn spectrum(&self) -> Result<HermitianSpectrum, LinalgError> {
        hermitian_eigenvalues(&self.matrix, HERMITIAN_TOL)
    }
}

/// Transposes the index bit of `qubit` in an arbitrary 8×8 operator:
/// `out[i][j] = m[i'][j']` where `i'`, `j'` trade that bit between row and column.
pub fn partial_transpose_matrix(m: &ComplexMatrix, qubit: Qubit) -> ComplexMatrix {
    assert_eq!((m.rows(), m.cols()), (DIM, DIM), "partial transpose expects an 8x8 operator");
    let mask = qubit.mask();
    ComplexMatrix::from_fn(DIM, DIM, |i, j| {
        let src_row = (i & !mask) | (j & mask);
        let src_col = (j & !mask) | (i & mask);
        m[(src_row, src_col)]
    })
}

pub fn partial_transpose(rho: &DensityMatrix8, qubit: Qubit) -> PartialTransposed8 {
    PartialTransposed8 {
        matrix: partial_transpose_matrix(rho.matrix(), qubit),
        qubit,
    }
}

pub fn pt_min_eigenvalue(rho: &DensityMatrix8, qubit: Qubit) -> Result<f64, LinalgError> {
    Ok(partial_transpose(rho, qubit).spectrum()?.min())
}

/// PPT across the cut `qubit | rest`.
pub fn is_ppt_cut(rho: &DensityMatrix8, qubit: Qubit, tol: f64) -> Result<bool, LinalgError> {
    Ok(pt_min_eigenvalue(rho, qubit)? >= -tol)
}
