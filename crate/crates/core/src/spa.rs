// SPDX-License-Identifier: Apache-2.0

//! Structural physical approximation of single-qubit partial transposition:
//! `ρ ↦ (p/8) I + (1 - p) ρ^{T_q}`.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{hermitian_eigenvalues, is_psd, ComplexMatrix, HermitianSpectrum, LinalgError, HERMITIAN_TOL};
use crate::ptranspose::{partial_transpose_matrix, Qubit};
use crate::states::{ghz_plus, DensityMatrix8, DIM};

/// PSD tolerance used by the Choi and positivity threshold searches.
pub const CP_PSD_TOL: f64 = 1e-10;

pub const BISECTION_STEPS: usize = 60;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpaError {
    #[error("{what} = {value} is out of range: {reason}")]
    ParamOutOfRange {
        what: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Weight of the depolarizing part, `0 <= p <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, serde::Serialize)]
#[serde(transparent)]
pub struct SpaParameter(f64);

impl SpaParameter {
    /// `p = 4/5`: the smallest weight for which every output is positive.
    pub const CANONICAL: SpaParameter = SpaParameter(0.8);

    pub fn new(p: f64) -> Result<Self, SpaError> {
        if (0.0..=1.0).contains(&p) {
            Ok(Self(p))
        } else {
            Err(SpaError::ParamOutOfRange {
                what: "p",
                value: p,
                reason: "must lie in [0, 1]",
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Lower bound `p/8` on the output spectrum of a PPT input.
    pub fn separable_floor(self) -> f64 {
        self.0 / DIM as f64
    }
}

impl Default for SpaParameter {
    fn default() -> Self {
        Self::CANONICAL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpaOutput8 {
    matrix: ComplexMatrix,
    qubit: Qubit,
    p: SpaParameter,
}

impl SpaOutput8 {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn qubit(&self) -> Qubit {
        self.qubit
    }

    pub fn p(&self) -> SpaParameter {
        self.p
    }

    pub fn spectrum(&self) -> Result<HermitianSpectrum, LinalgError> {
        hermitian_eigenvalues(&self.matrix, HERMITIAN_TOL)
    }

    pub fn min_eigenvalue(&self) -> Result<f64, LinalgError> {
        Ok(self.spectrum()?.min())
    }
}

/// The map applied to an arbitrary 8×8 operator (linear, trace-scaled depolarizing part).
fn spa_map(x: &ComplexMatrix, qubit: Qubit, p: SpaParameter) -> ComplexMatrix {
    let p = p.value();
    let depolarized = ComplexMatrix::identity(DIM).scale(p / DIM as f64);
    let depolarized = depolarized.map(|z| z * x.trace());
    &depolarized + &partial_transpose_matrix(x, qubit).scale(1.0 - p)
}

pub fn spa_pt(rho: &DensityMatrix8, qubit: Qubit, p: SpaParameter) -> SpaOutput8 {
    SpaOutput8 {
        matrix: spa_map(rho.matrix(), qubit, p),
        qubit,
        p,
    }
}

/// `spa_pt` at `p = 4/5`, i.e. `I/10 + ρ^{T_q}/5`.
pub fn spa_pt_canonical(rho: &DensityMatrix8, qubit: Qubit) -> SpaOutput8 {
    spa_pt(rho, qubit, SpaParameter::CANONICAL)
}

type ElementEntry = ((usize, usize), (usize, usize), bool);

/// Upper-triangle entries of `I/10 + ρ^{T_A}/5`, 1-based `(i, j)`, each taken
/// from source entry `(k, l)` of `ρ`, conjugated when the flag is set.
const ELEMENT_TABLE_A: [ElementEntry; 36] = [
    ((1, 1), (1, 1), false),
    ((1, 2), (1, 2), false),
    ((1, 3), (1, 3), false),
    ((1, 4), (1, 4), false),
    ((1, 5), (1, 5), true),
    ((1, 6), (2, 5), true),
    ((1, 7), (3, 5), true),
    ((1, 8), (4, 5), true),
    ((2, 2), (2, 2), false),
    ((2, 3), (2, 3), false),
    ((2, 4), (2, 4), false),
    ((2, 5), (1, 6), true),
    ((2, 6), (2, 6), true),
    ((2, 7), (3, 6), true),
    ((2, 8), (4, 6), true),
    ((3, 3), (3, 3), false),
    ((3, 4), (3, 4), false),
    ((3, 5), (1, 7), true),
    ((3, 6), (2, 7), true),
    ((3, 7), (3, 7), true),
    ((3, 8), (4, 7), true),
    ((4, 4), (4, 4), false),
    ((4, 5), (1, 8), true),
    ((4, 6), (2, 8), true),
    ((4, 7), (3, 8), true),
    ((4, 8), (4, 8), true),
    ((5, 5), (5, 5), false),
    ((5, 6), (5, 6), false),
    ((5, 7), (5, 7), false),
    ((5, 8), (5, 8), false),
    ((6, 6), (6, 6), false),
    ((6, 7), (6, 7), false),
    ((6, 8), (6, 8), false),
    ((7, 7), (7, 7), false),
    ((7, 8), (7, 8), false),
    ((8, 8), (8, 8), false),
];

/// `I/10 + ρ^{T_A}/5` assembled entry by entry from the explicit element table.
pub fn spa_element_map(rho: &DensityMatrix8) -> SpaOutput8 {
    let t = rho.matrix();
    let mut out = ComplexMatrix::zeros(DIM, DIM);
    for &((i, j), (k, l), conj) in ELEMENT_TABLE_A.iter() {
        let src = t[(k - 1, l - 1)];
        let src = if conj { src.conj() } else { src };
        let mut value = src / 5.0;
        if i == j {
            value += Complex64::new(0.1, 0.0);
        }
        out[(i - 1, j - 1)] = value;
        out[(j - 1, i - 1)] = value.conj();
    }
    SpaOutput8 {
        matrix: out,
        qubit: Qubit::A,
        p: SpaParameter::CANONICAL,
    }
}

/// Choi matrix `(1/8) Σ_ij |i⟩⟨j| ⊗ Λ_p(|i⟩⟨j|)`, i.e. the map applied to half of
/// the maximally entangled state with `1/√8` amplitudes. Unit trace, 64×64.
pub fn choi_matrix(qubit: Qubit, p: SpaParameter) -> ComplexMatrix {
    let n = DIM;
    let mut choi = ComplexMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let mut unit = ComplexMatrix::zeros(n, n);
            unit[(i, j)] = Complex64::new(1.0, 0.0);
            let image = spa_map(&unit, qubit, p);
            for r in 0..n {
                for c in 0..n {
                    choi[(i * n + r, j * n + c)] = image[(r, c)] / n as f64;
                }
            }
        }
    }
    choi
}

/// Smallest `p` whose Choi matrix is PSD (within [`CP_PSD_TOL`]), found by
/// bisection on `[0, 1]` down to a bracket width of `tol`.
pub fn min_cp_parameter(qubit: Qubit, tol: f64) -> Result<f64, SpaError> {
    bisect_threshold(tol, |p| Ok(is_psd(&choi_matrix(qubit, p), CP_PSD_TOL)?))
}

/// Smallest `p` for which the map sends every density matrix to a positive
/// operator. The balanced GHZ state attains the most negative partial
/// transpose eigenvalue (-1/2), so testing it suffices.
pub fn min_positive_parameter(qubit: Qubit, tol: f64) -> Result<f64, SpaError> {
    let ghz = ghz_plus().density();
    bisect_threshold(tol, |p| Ok(is_psd(spa_pt(&ghz, qubit, p).matrix(), CP_PSD_TOL)?))
}

fn bisect_threshold(
    tol: f64,
    mut accepts: impl FnMut(SpaParameter) -> Result<bool, SpaError>,
) -> Result<f64, SpaError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(SpaError::ParamOutOfRange {
            what: "tol",
            value: tol,
            reason: "must be positive",
        });
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    if accepts(SpaParameter(lo))? {
        return Ok(lo);
    }
    for _ in 0..BISECTION_STEPS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if accepts(SpaParameter(mid))? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Bipartite `d ⊗ d` entanglement threshold `d²λ / (d⁴λ + 1)`, where `-λ` is the
/// most negative eigenvalue produced by the partial transposition.
pub fn spa_bipartite_threshold(d: usize, lambda: f64) -> Result<f64, SpaError> {
    if d < 2 {
        return Err(SpaError::ParamOutOfRange {
            what: "d",
            value: d as f64,
            reason: "local dimension must be at least 2",
        });
    }
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(SpaError::ParamOutOfRange {
            what: "lambda",
            value: lambda,
            reason: "must be positive",
        });
    }
    let d2 = (d * d) as f64;
    Ok(d2 * lambda / (d2 * d2 * lambda + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::min_eigenvalue;
    use crate::ptranspose::{is_ppt_cut, partial_transpose};
    use crate::states::{catalog, PureState3};
    use crate::testutil::{random_density, random_pure, rng};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn p(v: f64) -> SpaParameter {
        SpaParameter::new(v).unwrap()
    }

    #[test]
    fn parameter_bounds() {
        assert!(SpaParameter::new(-0.1).is_err());
        assert!(SpaParameter::new(1.1).is_err());
        assert!(SpaParameter::new(f64::NAN).is_err());
        assert_eq!(SpaParameter::default().value(), 0.8);
        assert!((SpaParameter::CANONICAL.separable_floor() - 0.1).abs() < 1e-17);
    }

    #[test]
    fn limits_of_the_mixing_weight() {
        let mut r = rng(41);
        let rho = random_density(&mut r, 3);
        for q in Qubit::ALL {
            let full = spa_pt(&rho, q, p(1.0));
            assert!(full.matrix().max_abs_diff(DensityMatrix8::maximally_mixed().matrix()) < 1e-16);
            let none = spa_pt(&rho, q, p(0.0));
            assert_eq!(none.matrix(), partial_transpose(&rho, q).matrix());
        }
    }

    #[test]
    fn canonical_on_balanced_ghz_touches_zero() {
        let h = FRAC_1_SQRT_2;
        let rho = catalog("ghz", &[h, h]).unwrap().density().unwrap();
        let v = spa_pt_canonical(&rho, Qubit::A).min_eigenvalue().unwrap();
        assert!(v.abs() < 1e-15, "{v}");
    }

    #[test]
    fn canonical_on_maximally_mixed() {
        let out = spa_pt_canonical(&DensityMatrix8::maximally_mixed(), Qubit::B);
        for i in 0..8 {
            assert!((out.matrix()[(i, i)].re - 0.125).abs() < 1e-16);
        }
    }

    #[test]
    fn canonical_on_g2() {
        let rho = catalog("g2", &[]).unwrap().density().unwrap();
        let v = spa_pt_canonical(&rho, Qubit::A).min_eigenvalue().unwrap();
        assert!((v - 0.030718).abs() < 1e-6, "{v}");
    }

    #[test]
    fn canonical_on_kye() {
        for a in [2.0, 3.0, 4.0, 7.5] {
            let rho = catalog("kye", &[a]).unwrap().density().unwrap();
            for q in Qubit::ALL {
                let v = spa_pt_canonical(&rho, q).min_eigenvalue().unwrap();
                assert!((v - (2.0 + 5.0 * a) / (40.0 * (1.0 + a))).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn element_map_on_maximally_mixed() {
        let out = spa_element_map(&DensityMatrix8::maximally_mixed());
        assert!(out.matrix().max_abs_diff(&ComplexMatrix::identity(8).scale(0.125)) < 1e-16);
    }

    #[test]
    fn element_map_ghz_entry() {
        let (alpha, beta) = (Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        amps[0] = alpha;
        amps[7] = beta;
        let rho = PureState3::new(amps).unwrap().density();
        let table = spa_element_map(&rho);
        let direct = spa_pt_canonical(&rho, Qubit::A);
        // 1-based (4, 5)
        let expected = alpha.conj() * beta / 5.0;
        assert!((table.matrix()[(3, 4)] - expected).norm() < 1e-16);
        assert!((direct.matrix()[(3, 4)] - expected).norm() < 1e-16);
    }

    #[test]
    fn element_map_matches_channel() {
        let mut r = rng(42);
        for rank in 1..=8 {
            let rho = random_density(&mut r, rank);
            let diff = spa_element_map(&rho).matrix().max_abs_diff(spa_pt_canonical(&rho, Qubit::A).matrix());
            assert!(diff <= 1e-15, "{diff}");
        }
    }

    #[test]
    fn affine_spectrum_law_and_trace() {
        let mut r = rng(43);
        for k in 0..25 {
            let rho = if k % 2 == 0 { random_pure(&mut r).density() } else { random_density(&mut r, 1 + k % 8) };
            for pv in [0.0, 0.3, 0.8, 1.0] {
                for q in Qubit::ALL {
                    let mu = partial_transpose(&rho, q).spectrum().unwrap();
                    let out = spa_pt(&rho, q, p(pv));
                    let lam = out.spectrum().unwrap();
                    for (m, l) in mu.as_slice().iter().zip(lam.as_slice()) {
                        assert!((pv / 8.0 + (1.0 - pv) * m - l).abs() <= 1e-12);
                    }
                    assert!((out.matrix().trace().re - 1.0).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn canonical_outputs_are_psd_and_threshold_equivalent() {
        let mut r = rng(44);
        for k in 0..60 {
            let rho = if k % 3 == 0 { random_pure(&mut r).density() } else { random_density(&mut r, 1 + k % 8) };
            for q in Qubit::ALL {
                let out = spa_pt_canonical(&rho, q);
                let lam = out.min_eigenvalue().unwrap();
                assert!(lam >= -1e-10);
                // lam >= 1/10 - tol  <=>  mu >= -5 tol
                assert_eq!(lam >= 0.1 - 1e-10, is_ppt_cut(&rho, q, 5e-10).unwrap());
            }
        }
    }

    #[test]
    fn choi_spectrum_at_reference_weights() {
        // Frozen from a brute-force numpy build of the same Choi matrix:
        // p = 0 -> -1/2, p = 4/5 -> -0.0875, p = 1 -> 1/64; closed form p/64 - (1-p)/2.
        for q in Qubit::ALL {
            let c0 = choi_matrix(q, p(0.0));
            assert!((c0.trace().re - 1.0).abs() < 1e-14);
            assert!(c0.hermiticity_defect().unwrap() < 1e-16);
            assert!((min_eigenvalue(&c0).unwrap() + 0.5).abs() < 1e-12);
            let c1 = choi_matrix(q, p(1.0));
            assert!((min_eigenvalue(&c1).unwrap() - 1.0 / 64.0).abs() < 1e-12);
            let c45 = choi_matrix(q, p(0.8));
            assert!((min_eigenvalue(&c45).unwrap() + 0.0875).abs() < 1e-12);
        }
    }

    #[test]
    fn choi_with_p_one_is_maximally_mixed() {
        let c = choi_matrix(Qubit::C, p(1.0));
        assert!(c.max_abs_diff(&ComplexMatrix::identity(64).scale(1.0 / 64.0)) < 1e-16);
    }

    #[test]
    fn positivity_threshold_is_four_fifths() {
        for q in Qubit::ALL {
            let v = min_positive_parameter(q, 1e-9).unwrap();
            assert!((v - 0.8).abs() < 1e-8, "{v}");
        }
    }

    #[test]
    fn bisection_rejects_bad_tolerance() {
        assert!(min_positive_parameter(Qubit::A, 0.0).is_err());
        assert!(min_cp_parameter(Qubit::A, -1.0).is_err());
    }

    #[test]
    fn bipartite_threshold_values() {
        assert!((spa_bipartite_threshold(2, 0.5).unwrap() - 2.0 / 9.0).abs() < 1e-16);
        assert!((spa_bipartite_threshold(3, 1.0 / 3.0).unwrap() - 3.0 / 28.0).abs() < 1e-16);
        assert!(spa_bipartite_threshold(2, 1e-12).unwrap() < 1e-11);
        assert!(spa_bipartite_threshold(1, 0.5).is_err());
        assert!(spa_bipartite_threshold(2, 0.0).is_err());
    }
}
