// SPDX-License-Identifier: Apache-2.0

//! Three-qubit pure states, density matrices, the JSON state schema and the
//! catalog of named example states.
//!
//! Basis ordering: `|abc⟩` has index `4a + 2b + c`, so qubit A is the most
//! significant bit and an 8×8 matrix splits into 2×2 blocks over qubits A, B.

use std::cmp::Ordering;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, LinalgError};

pub const DIM: usize = 8;

/// Tolerance for normalisation, trace, Hermiticity and positivity checks.
pub const STATE_TOL: f64 = 1e-10;

/// Raw input matrices with a Hermiticity defect below this are symmetrised.
pub const SYMMETRIZE_LIMIT: f64 = 1e-8;

/// Named pure-state parameters whose squared norm is within this of 1 are
/// treated as rounded published values and rescaled to unit norm.
pub const CATALOG_RENORM_LIMIT: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("state is not normalized (sum |amplitude|^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },
    #[error("bad mixture weights: {0}")]
    BadWeights(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("`{name}` expects {expected} parameter(s), got {got}")]
    ParamCount {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("`{name}` parameter {index} = {value} is out of range: {reason}")]
    ParamOutOfRange {
        name: String,
        index: usize,
        value: f64,
        reason: String,
    },
    #[error("schema error at {path}: {message}")]
    SchemaError { path: String, message: String },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("at {path}: {source}")]
    AtPath {
        path: String,
        #[source]
        source: Box<StateError>,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl StateError {
    /// JSON path of the offending value, when one is known.
    pub fn path(&self) -> Option<&str> {
        match self {
            StateError::SchemaError { path, .. } | StateError::AtPath { path, .. } => Some(path),
            _ => None,
        }
    }

    fn at(self, path: &str) -> Self {
        match self {
            e @ (StateError::AtPath { .. } | StateError::SchemaError { .. }) => e,
            e => StateError::AtPath {
                path: path.to_string(),
                source: Box::new(e),
            },
        }
    }
}

/// Normalised three-qubit pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState3 {
    amplitudes: [Complex64; DIM],
}

impl PureState3 {
    pub fn new(amplitudes: [Complex64; DIM]) -> Result<Self, StateError> {
        let norm_sq = norm_sq(&amplitudes);
        if (norm_sq - 1.0).abs() > STATE_TOL || !norm_sq.is_finite() {
            return Err(StateError::NotNormalized { norm_sq });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales to unit norm; fails only for the zero vector or non-finite input.
    pub fn normalized(amplitudes: [Complex64; DIM]) -> Result<Self, StateError> {
        let norm_sq = norm_sq(&amplitudes);
        if norm_sq <= f64::MIN_POSITIVE || !norm_sq.is_finite() {
            return Err(StateError::NotNormalized { norm_sq });
        }
        let scale = norm_sq.sqrt().recip();
        Ok(Self {
            amplitudes: amplitudes.map(|a| a * scale),
        })
    }

    pub fn from_real(amplitudes: [f64; DIM]) -> Result<Self, StateError> {
        Self::new(amplitudes.map(|a| Complex64::new(a, 0.0)))
    }

    /// Computational basis state from a label such as `"011"`.
    pub fn basis(label: &str) -> Self {
        let mut amplitudes = [Complex64::new(0.0, 0.0); DIM];
        amplitudes[basis_index(label)] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// `|x⟩ ⊗ |y⟩ ⊗ |z⟩` from three single-qubit vectors (each normalised here).
    pub fn product(x: [Complex64; 2], y: [Complex64; 2], z: [Complex64; 2]) -> Result<Self, StateError> {
        let mut amplitudes = [Complex64::new(0.0, 0.0); DIM];
        for (idx, amp) in amplitudes.iter_mut().enumerate() {
            *amp = x[(idx >> 2) & 1] * y[(idx >> 1) & 1] * z[idx & 1];
        }
        Self::normalized(amplitudes)
    }

    pub fn amplitudes(&self) -> &[Complex64; DIM] {
        &self.amplitudes
    }

    /// Amplitude of `|abc⟩`.
    pub fn amp(&self, a: usize, b: usize, c: usize) -> Complex64 {
        self.amplitudes[4 * a + 2 * b + c]
    }

    pub fn density(&self) -> DensityMatrix8 {
        density_from_pure(self)
    }
}

fn norm_sq(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum()
}

/// Index of a three-character bit label, e.g. `"101"` → 5.
///
/// Panics on anything other than three `'0'`/`'1'` characters.
pub fn basis_index(label: &str) -> usize {
    assert_eq!(label.len(), 3, "basis label must have three bits: {label}");
    label.bytes().fold(0, |acc, b| match b {
        b'0' => acc << 1,
        b'1' => (acc << 1) | 1,
        _ => panic!("basis label must be binary: {label}"),
    })
}

/// Unit-trace, Hermitian, positive semidefinite 8×8 matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix8(ComplexMatrix);

impl DensityMatrix8 {
    /// Validates `m`, symmetrising away Hermiticity defects below
    /// [`SYMMETRIZE_LIMIT`].
    pub fn from_matrix(m: ComplexMatrix) -> Result<Self, StateError> {
        if m.rows() != DIM || m.cols() != DIM {
            return Err(StateError::InvariantViolation(format!(
                "density matrix must be 8x8, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if m.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(StateError::InvariantViolation("matrix has non-finite entries".into()));
        }
        let defect = m.hermiticity_defect().unwrap_or(f64::INFINITY);
        if defect > SYMMETRIZE_LIMIT {
            return Err(StateError::InvariantViolation(format!(
                "matrix is not Hermitian (defect {defect:e})"
            )));
        }
        let m = if defect > 0.0 { m.hermitian_part() } else { m };
        let trace = m.trace().re;
        if (trace - 1.0).abs() > STATE_TOL {
            return Err(StateError::InvariantViolation(format!(
                "trace is {trace}, expected 1"
            )));
        }
        let lam_min = hermitian_eigenvalues(&m, STATE_TOL)?.min();
        if lam_min < -STATE_TOL {
            return Err(StateError::InvariantViolation(format!(
                "matrix is not positive semidefinite (min eigenvalue {lam_min:e})"
            )));
        }
        Ok(Self(m))
    }

    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix::identity(DIM).scale(1.0 / DIM as f64))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn purity(&self) -> f64 {
        (&self.0 * &self.0).trace().re
    }

    /// Conjugation by a permutation of the three qubits: qubit `k` of the
    /// result is qubit `perm[k]` of `self` (`perm` indexes A=0, B=1, C=2).
    pub fn permute_qubits(&self, perm: [usize; 3]) -> Self {
        let map = |idx: usize| -> usize {
            let bit = |q: usize| (idx >> (2 - q)) & 1;
            (0..3).fold(0, |acc, k| acc | (bit(k) << (2 - perm[k])))
        };
        let mut out = ComplexMatrix::zeros(DIM, DIM);
        for i in 0..DIM {
            for j in 0..DIM {
                out[(i, j)] = self.0[(map(i), map(j))];
            }
        }
        Self(out)
    }
}

/// Projector onto a pure state.
pub fn density_from_pure(psi: &PureState3) -> DensityMatrix8 {
    DensityMatrix8(ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()))
}

/// Convex combination of density matrices.
///
/// Parts are summed in a canonical order so that any permutation of the input
/// gives a bit-identical result.
pub fn convex_mix(parts: &[(f64, DensityMatrix8)]) -> Result<DensityMatrix8, StateError> {
    if parts.is_empty() {
        return Err(StateError::BadWeights("mixture has no parts".into()));
    }
    check_weights(parts.iter().map(|(w, _)| *w))?;
    let mut ordered: Vec<&(f64, DensityMatrix8)> = parts.iter().collect();
    ordered.sort_by(|a, b| canonical_cmp(a, b));
    let mut acc = ComplexMatrix::zeros(DIM, DIM);
    for (w, rho) in ordered {
        acc = &acc + &rho.0.scale(*w);
    }
    DensityMatrix8::from_matrix(acc)
}

fn canonical_cmp(a: &(f64, DensityMatrix8), b: &(f64, DensityMatrix8)) -> Ordering {
    a.0.total_cmp(&b.0).then_with(|| {
        a.1 .0
            .as_slice()
            .iter()
            .zip(b.1 .0.as_slice())
            .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn check_weights(weights: impl Iterator<Item = f64>) -> Result<(), StateError> {
    let mut sum = 0.0;
    for (i, w) in weights.enumerate() {
        if !w.is_finite() || w < 0.0 {
            return Err(StateError::BadWeights(format!("weight {i} is {w}")));
        }
        sum += w;
    }
    if (sum - 1.0).abs() > STATE_TOL {
        return Err(StateError::BadWeights(format!("weights sum to {sum}, expected 1")));
    }
    Ok(())
}

/// A JSON amplitude: either a bare real number or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Real(f64),
    Complex([f64; 2]),
}

impl Amplitude {
    pub fn value(self) -> Complex64 {
        match self {
            Amplitude::Real(re) => Complex64::new(re, 0.0),
            Amplitude::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

impl From<Complex64> for Amplitude {
    fn from(z: Complex64) -> Self {
        if z.im == 0.0 {
            Amplitude::Real(z.re)
        } else {
            Amplitude::Complex([z.re, z.im])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixPart {
    pub weight: f64,
    pub state: StateSpec,
}

/// Description of a state as it appears in a state file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateSpec {
    Pure {
        amplitudes: Vec<Amplitude>,
    },
    Matrix {
        re: Vec<Vec<f64>>,
        im: Vec<Vec<f64>>,
    },
    Mix {
        parts: Vec<MixPart>,
    },
    Catalog {
        name: String,
        params: Vec<f64>,
    },
}

impl StateSpec {
    pub fn pure(psi: &PureState3) -> Self {
        StateSpec::Pure {
            amplitudes: psi.amplitudes().iter().map(|&z| z.into()).collect(),
        }
    }

    pub fn matrix(m: &ComplexMatrix) -> Self {
        let grid = |f: fn(Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| f(m[(i, j)])).collect()).collect()
        };
        StateSpec::Matrix {
            re: grid(|z| z.re),
            im: grid(|z| z.im),
        }
    }

    pub fn mix(parts: Vec<(f64, StateSpec)>) -> Self {
        StateSpec::Mix {
            parts: parts
                .into_iter()
                .map(|(weight, state)| MixPart { weight, state })
                .collect(),
        }
    }

    pub fn catalog(name: &str, params: &[f64]) -> Self {
        StateSpec::Catalog {
            name: name.to_string(),
            params: params.to_vec(),
        }
    }

    /// Builds and validates the density matrix; errors carry the JSON path.
    pub fn density(&self) -> Result<DensityMatrix8, StateError> {
        self.density_at("$")
    }

    fn density_at(&self, path: &str) -> Result<DensityMatrix8, StateError> {
        match self {
            StateSpec::Pure { amplitudes } => {
                let path = format!("{path}.pure.amplitudes");
                let amps = fixed_amplitudes(amplitudes, &path)?;
                PureState3::new(amps).map(|p| p.density()).map_err(|e| e.at(&path))
            }
            StateSpec::Matrix { re, im } => {
                let path = format!("{path}.matrix");
                let m = matrix_from_parts(re, im, &path)?;
                DensityMatrix8::from_matrix(m).map_err(|e| e.at(&path))
            }
            StateSpec::Mix { parts } => {
                let path = format!("{path}.mix.parts");
                let mut built = Vec::with_capacity(parts.len());
                for (i, part) in parts.iter().enumerate() {
                    let rho = part.state.density_at(&format!("{path}[{i}].state"))?;
                    built.push((part.weight, rho));
                }
                convex_mix(&built).map_err(|e| e.at(&path))
            }
            StateSpec::Catalog { name, params } => {
                let path = format!("{path}.catalog");
                let expansion = expand_catalog(name, params).map_err(|e| e.at(&path))?;
                expansion.spec.density_at(&path)
            }
        }
    }

    /// Pure state when the description is a pure amplitude list or a pure catalog entry.
    pub fn pure_state(&self) -> Option<PureState3> {
        match self {
            StateSpec::Pure { amplitudes } => {
                PureState3::new(fixed_amplitudes(amplitudes, "$").ok()?).ok()
            }
            StateSpec::Catalog { name, params } => expand_catalog(name, params).ok()?.spec.pure_state(),
            _ => None,
        }
    }
}

fn fixed_amplitudes(amplitudes: &[Amplitude], path: &str) -> Result<[Complex64; DIM], StateError> {
    if amplitudes.len() != DIM {
        return Err(StateError::SchemaError {
            path: path.to_string(),
            message: format!("expected 8 amplitudes, got {}", amplitudes.len()),
        });
    }
    let mut out = [Complex64::new(0.0, 0.0); DIM];
    for (i, a) in amplitudes.iter().enumerate() {
        out[i] = a.value();
    }
    Ok(out)
}

fn matrix_from_parts(re: &[Vec<f64>], im: &[Vec<f64>], path: &str) -> Result<ComplexMatrix, StateError> {
    for (label, part) in [("re", re), ("im", im)] {
        if part.len() != DIM {
            return Err(StateError::SchemaError {
                path: format!("{path}.{label}"),
                message: format!("expected 8 rows, got {}", part.len()),
            });
        }
        if let Some((i, row)) = part.iter().enumerate().find(|(_, r)| r.len() != DIM) {
            return Err(StateError::SchemaError {
                path: format!("{path}.{label}[{i}]"),
                message: format!("expected 8 entries, got {}", row.len()),
            });
        }
    }
    Ok(ComplexMatrix::from_fn(DIM, DIM, |i, j| Complex64::new(re[i][j], im[i][j])))
}

/// Parses and fully validates a JSON state document.
pub fn parse_state_file(text: &str) -> Result<StateSpec, StateError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let spec: StateSpec = serde_path_to_error::deserialize(de).map_err(|e| StateError::SchemaError {
        path: format!("$.{}", e.path()).replace("$..", "$."),
        message: e.inner().to_string(),
    })?;
    spec.density()?;
    Ok(spec)
}

/// Pretty-printed JSON for a spec; `parse_state_file` reads it back.
pub fn render_state(spec: &StateSpec) -> String {
    serde_json::to_string_pretty(spec).expect("state specs always serialize")
}

/// Named entries of the example catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogId {
    /// `α|000⟩ + β|111⟩`
    Ghz,
    /// `λ0|001⟩ + λ1|010⟩ + λ2|100⟩`
    W,
    /// `(|110⟩ + |101⟩ + |011⟩)/√3`
    WTilde,
    /// `(|000⟩ + |100⟩ + |101⟩ + |110⟩ + |111⟩)/√5`
    G2,
    /// `λ0|000⟩ + λ1|100⟩ + λ2|111⟩`
    G3,
    /// `q GHZ + (1-q) W`
    GhzW,
    /// `q |0⟩⟨0|⊗|φ+⟩⟨φ+| + (1-q) |1⟩⟨1|⊗|φ-⟩⟨φ-|`
    B1,
    /// `λ0|001⟩ + λ1|101⟩ + λ2|111⟩`
    B2,
    Kye,
    /// `(1-α) GHZ + α I/8`
    S2,
    /// `q |ψ⟩⟨ψ| + (1-q)|111⟩⟨111|`, `ψ = (|001⟩ + |101⟩)/√2`
    S3,
    /// `q |000⟩⟨000| + (1-q) GHZ`
    Rho1,
    /// `q1 GHZ + q2 W + (1-q1-q2) W̃`
    Rho2,
}

impl CatalogId {
    pub const ALL: [CatalogId; 13] = [
        CatalogId::Ghz,
        CatalogId::W,
        CatalogId::WTilde,
        CatalogId::G2,
        CatalogId::G3,
        CatalogId::GhzW,
        CatalogId::B1,
        CatalogId::B2,
        CatalogId::Kye,
        CatalogId::S2,
        CatalogId::S3,
        CatalogId::Rho1,
        CatalogId::Rho2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatalogId::Ghz => "ghz",
            CatalogId::W => "w",
            CatalogId::WTilde => "w-tilde",
            CatalogId::G2 => "g2",
            CatalogId::G3 => "g3",
            CatalogId::GhzW => "ghz-w",
            CatalogId::B1 => "b1",
            CatalogId::B2 => "b2",
            CatalogId::Kye => "kye",
            CatalogId::S2 => "s2",
            CatalogId::S3 => "s3",
            CatalogId::Rho1 => "rho1",
            CatalogId::Rho2 => "rho2",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, StateError> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == name)
            .ok_or_else(|| StateError::UnknownName(name.to_string()))
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            CatalogId::Ghz => &["alpha", "beta"],
            CatalogId::W | CatalogId::G3 | CatalogId::B2 => &["lambda0", "lambda1", "lambda2"],
            CatalogId::WTilde | CatalogId::G2 => &[],
            CatalogId::GhzW | CatalogId::B1 | CatalogId::S3 | CatalogId::Rho1 => &["q"],
            CatalogId::Kye => &["a"],
            CatalogId::S2 => &["alpha"],
            CatalogId::Rho2 => &["q1", "q2"],
        }
    }

    /// True for entries that describe a pure state.
    pub fn is_pure(self) -> bool {
        matches!(
            self,
            CatalogId::Ghz | CatalogId::W | CatalogId::WTilde | CatalogId::G2 | CatalogId::G3 | CatalogId::B2
        )
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A catalog entry resolved into a concrete spec.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogExpansion {
    pub id: CatalogId,
    pub spec: StateSpec,
    /// Squared norm of the supplied pure-state parameters when they had to be
    /// rescaled to unit norm.
    pub renormalized_from: Option<f64>,
}

/// Fully specified spec (pure, matrix or mixture) for a named entry.
pub fn catalog(name: &str, params: &[f64]) -> Result<StateSpec, StateError> {
    Ok(expand_catalog(name, params)?.spec)
}

pub fn expand_catalog(name: &str, params: &[f64]) -> Result<CatalogExpansion, StateError> {
    let id = CatalogId::from_name(name)?;
    let expected = id.param_names().len();
    if params.len() != expected {
        return Err(StateError::ParamCount {
            name: name.to_string(),
            expected,
            got: params.len(),
        });
    }
    let out_of_range = |index: usize, reason: &str| StateError::ParamOutOfRange {
        name: name.to_string(),
        index,
        value: params[index],
        reason: reason.to_string(),
    };
    if let Some(i) = params.iter().position(|p| !p.is_finite()) {
        return Err(out_of_range(i, "must be finite"));
    }
    let probability = |i: usize| -> Result<f64, StateError> {
        let v = params[i];
        if (0.0..=1.0).contains(&v) {
            Ok(v)
        } else {
            Err(out_of_range(i, "must lie in [0, 1]"))
        }
    };
    let unit_interval_all = || -> Result<(), StateError> {
        for i in 0..params.len() {
            probability(i)?;
        }
        Ok(())
    };

    let mut renormalized_from = None;
    let mut named_pure = |terms: &[(&str, f64)]| -> Result<StateSpec, StateError> {
        let n2: f64 = terms.iter().map(|(_, a)| a * a).sum();
        if (n2 - 1.0).abs() > CATALOG_RENORM_LIMIT {
            return Err(StateError::ParamOutOfRange {
                name: name.to_string(),
                index: 0,
                value: n2,
                reason: "squared norm of the amplitudes must be 1".to_string(),
            });
        }
        if (n2 - 1.0).abs() > STATE_TOL {
            renormalized_from = Some(n2);
        }
        Ok(StateSpec::pure(&PureState3::normalized(ket(terms))?))
    };

    let spec = match id {
        CatalogId::Ghz => named_pure(&[("000", params[0]), ("111", params[1])])?,
        CatalogId::W => named_pure(&[("001", params[0]), ("010", params[1]), ("100", params[2])])?,
        CatalogId::WTilde => StateSpec::pure(&w_tilde()),
        CatalogId::G2 => {
            let a = 1.0 / 5f64.sqrt();
            named_pure(&[("000", a), ("100", a), ("101", a), ("110", a), ("111", a)])?
        }
        CatalogId::G3 => {
            unit_interval_all()?;
            named_pure(&[("000", params[0]), ("100", params[1]), ("111", params[2])])?
        }
        CatalogId::B2 => {
            unit_interval_all()?;
            named_pure(&[("001", params[0]), ("101", params[1]), ("111", params[2])])?
        }
        CatalogId::GhzW => {
            let q = probability(0)?;
            StateSpec::mix(vec![
                (q, StateSpec::pure(&ghz_plus())),
                (1.0 - q, StateSpec::pure(&w_uniform())),
            ])
        }
        CatalogId::B1 => {
            let q = probability(0)?;
            let h = FRAC_1_SQRT_2;
            let zero_phi_plus = PureState3::normalized(ket(&[("000", h), ("011", h)]))?;
            let one_phi_minus = PureState3::normalized(ket(&[("100", h), ("111", -h)]))?;
            StateSpec::mix(vec![
                (q, StateSpec::pure(&zero_phi_plus)),
                (1.0 - q, StateSpec::pure(&one_phi_minus)),
            ])
        }
        CatalogId::Kye => {
            let a = params[0];
            if a < 2.0 {
                return Err(out_of_range(0, "must be >= 2 for a positive semidefinite matrix"));
            }
            StateSpec::matrix(&kye_matrix(a))
        }
        CatalogId::S2 => {
            let alpha = probability(0)?;
            StateSpec::mix(vec![
                (1.0 - alpha, StateSpec::pure(&ghz_plus())),
                (alpha, StateSpec::matrix(DensityMatrix8::maximally_mixed().matrix())),
            ])
        }
        CatalogId::S3 => {
            let q = probability(0)?;
            let h = FRAC_1_SQRT_2;
            let psi = PureState3::normalized(ket(&[("001", h), ("101", h)]))?;
            StateSpec::mix(vec![
                (q, StateSpec::pure(&psi)),
                (1.0 - q, StateSpec::pure(&PureState3::basis("111"))),
            ])
        }
        CatalogId::Rho1 => {
            let q = probability(0)?;
            StateSpec::mix(vec![
                (q, StateSpec::pure(&PureState3::basis("000"))),
                (1.0 - q, StateSpec::pure(&ghz_plus())),
            ])
        }
        CatalogId::Rho2 => {
            let q1 = probability(0)?;
            let q2 = probability(1)?;
            let rest = 1.0 - q1 - q2;
            if rest < -STATE_TOL {
                return Err(out_of_range(1, "q1 + q2 must not exceed 1"));
            }
            StateSpec::mix(vec![
                (q1, StateSpec::pure(&ghz_plus())),
                (q2, StateSpec::pure(&w_uniform())),
                (rest.max(0.0), StateSpec::pure(&w_tilde())),
            ])
        }
    };
    Ok(CatalogExpansion {
        id,
        spec,
        renormalized_from,
    })
}

fn ket(terms: &[(&str, f64)]) -> [Complex64; DIM] {
    let mut amps = [Complex64::new(0.0, 0.0); DIM];
    for (label, a) in terms {
        amps[basis_index(label)] += Complex64::new(*a, 0.0);
    }
    amps
}

/// `(|000⟩ + |111⟩)/√2`
pub fn ghz_plus() -> PureState3 {
    PureState3::normalized(ket(&[("000", 1.0), ("111", 1.0)])).expect("nonzero")
}

/// `(|001⟩ + |010⟩ + |100⟩)/√3`
pub fn w_uniform() -> PureState3 {
    PureState3::normalized(ket(&[("001", 1.0), ("010", 1.0), ("100", 1.0)])).expect("nonzero")
}

/// `(|110⟩ + |101⟩ + |011⟩)/√3`
pub fn w_tilde() -> PureState3 {
    PureState3::normalized(ket(&[("110", 1.0), ("101", 1.0), ("011", 1.0)])).expect("nonzero")
}

/// The one-parameter Kye family; positive semidefinite for `a >= 2`.
pub fn kye_matrix(a: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::diag(&[4.0 + a, a, a, a, a, a, a, 4.0 + a]);
    for (i, j, v) in [(0, 7, 2.0), (1, 6, 2.0), (2, 5, -2.0), (3, 4, 2.0)] {
        m[(i, j)] = Complex64::new(v, 0.0);
        m[(j, i)] = Complex64::new(v, 0.0);
    }
    m.scale(1.0 / (8.0 + 8.0 * a))
}

#[cfg(test)]
mod tests {
    #![allow(clippy::approx_constant)]

    use super::*;
    use crate::testutil::{random_density, random_pure, rng};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn basis_index_is_msb_first() {
        assert_eq!(basis_index("000"), 0);
        assert_eq!(basis_index("100"), 4);
        assert_eq!(basis_index("011"), 3);
        assert_eq!(basis_index("111"), 7);
    }

    #[test]
    fn product_basis_state_density() {
        let rho = PureState3::basis("000").density();
        assert_eq!(rho.matrix(), &ComplexMatrix::diag(&[1., 0., 0., 0., 0., 0., 0., 0.]));
    }

    #[test]
    fn ghz_blocks() {
        let (alpha, beta) = (0.6, 0.8);
        let rho = catalog("ghz", &[alpha, beta]).unwrap().density().unwrap();
        let m = rho.matrix();
        // A1 = [[|α|², 0], [0, 0]], D1 = [[0, αβ*], [0, 0]], J1 = [[0, 0], [0, |β|²]]
        let mut expected = ComplexMatrix::zeros(8, 8);
        expected[(0, 0)] = c(alpha * alpha);
        expected[(0, 7)] = c(alpha * beta);
        expected[(7, 0)] = c(alpha * beta);
        expected[(7, 7)] = c(beta * beta);
        assert!(m.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn w_blocks_zero_where_expected() {
        let (l0, l1, l2) = (0.5, 0.5, FRAC_1_SQRT_2);
        let rho = catalog("w", &[l0, l1, l2]).unwrap().density().unwrap();
        let m = rho.matrix();
        let block = |br: usize, bc: usize| -> [[Complex64; 2]; 2] {
            [[m[(2 * br, 2 * bc)], m[(2 * br, 2 * bc + 1)]], [m[(2 * br + 1, 2 * bc)], m[(2 * br + 1, 2 * bc + 1)]]]
        };
        let zero = [[c(0.); 2]; 2];
        // D, G, I, J
        for (br, bc) in [(0, 3), (1, 3), (2, 3), (3, 3)] {
            assert_eq!(block(br, bc), zero);
        }
        assert_eq!(block(0, 0), [[c(0.), c(0.)], [c(0.), c(l0 * l0)]]);
        assert_eq!(block(0, 1), [[c(0.), c(0.)], [c(l0 * l1), c(0.)]]);
        assert_eq!(block(0, 2), [[c(0.), c(0.)], [c(l0 * l2), c(0.)]]);
        assert!((block(1, 1)[0][0].re - l1 * l1).abs() < 1e-15);
        assert!((block(1, 2)[0][0].re - l1 * l2).abs() < 1e-15);
        assert!((block(2, 2)[0][0].re - l2 * l2).abs() < 1e-15);
    }

    #[test]
    fn pure_requires_normalization() {
        let amps = [c(1.0), c(1.0), c(0.), c(0.), c(0.), c(0.), c(0.), c(0.)];
        assert!(matches!(PureState3::new(amps), Err(StateError::NotNormalized { .. })));
        assert!(PureState3::normalized(amps).is_ok());
        assert!(PureState3::normalized([c(0.); 8]).is_err());
    }

    #[test]
    fn purity_of_pure_states() {
        let mut r = rng(21);
        for _ in 0..50 {
            let rho = random_pure(&mut r).density();
            assert!((rho.purity() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn mix_single_part_and_two_projectors() {
        let rho = ghz_plus().density();
        assert_eq!(convex_mix(&[(1.0, rho.clone())]).unwrap(), rho);
        let mixed = convex_mix(&[
            (0.5, PureState3::basis("000").density()),
            (0.5, PureState3::basis("111").density()),
        ])
        .unwrap();
        assert_eq!(mixed.matrix(), &ComplexMatrix::diag(&[0.5, 0., 0., 0., 0., 0., 0., 0.5]));
    }

    #[test]
    fn s2_mixture_matches_entrywise_sum() {
        let alpha = 0.9;
        let rho = catalog("s2", &[alpha]).unwrap().density().unwrap();
        let mut oracle = ComplexMatrix::zeros(8, 8);
        for i in 0..8 {
            oracle[(i, i)] = c(alpha / 8.0);
        }
        for (i, j) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
            oracle[(i, j)] += c((1.0 - alpha) * 0.5);
        }
        assert!(rho.matrix().max_abs_diff(&oracle) < 1e-15);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mix_rejects_bad_weights() {
        let rho = DensityMatrix8::maximally_mixed();
        assert!(matches!(
            convex_mix(&[(0.5, rho.clone()), (0.4, rho.clone())]),
            Err(StateError::BadWeights(_))
        ));
        assert!(matches!(
            convex_mix(&[(1.5, rho.clone()), (-0.5, rho)]),
            Err(StateError::BadWeights(_))
        ));
        assert!(matches!(convex_mix(&[]), Err(StateError::BadWeights(_))));
    }

    #[test]
    fn mix_is_permutation_invariant_bitwise() {
        let mut r = rng(22);
        let parts: Vec<(f64, DensityMatrix8)> = (0..4)
            .map(|_| random_density(&mut r, 3))
            .zip([0.1, 0.2, 0.3, 0.4])
            .map(|(rho, w)| (w, rho))
            .collect();
        let forward = convex_mix(&parts).unwrap();
        let mut reversed = parts.clone();
        reversed.reverse();
        assert_eq!(forward, convex_mix(&reversed).unwrap());
        reversed.swap(0, 2);
        assert_eq!(forward, convex_mix(&reversed).unwrap());
    }

    #[test]
    fn raw_matrix_symmetrized_or_rejected() {
        let mut m = DensityMatrix8::maximally_mixed().into_matrix();
        m[(0, 1)] = c(1e-9);
        let rho = DensityMatrix8::from_matrix(m.clone()).unwrap();
        assert!(rho.matrix().hermiticity_defect().unwrap() == 0.0);
        m[(0, 1)] = c(1e-6);
        assert!(matches!(
            DensityMatrix8::from_matrix(m),
            Err(StateError::InvariantViolation(_))
        ));
    }

    #[test]
    fn raw_matrix_trace_and_positivity() {
        let m = ComplexMatrix::identity(8).scale(0.2);
        assert!(DensityMatrix8::from_matrix(m).is_err());
        let m = ComplexMatrix::diag(&[1.5, -0.5, 0., 0., 0., 0., 0., 0.]);
        assert!(DensityMatrix8::from_matrix(m).is_err());
        assert!(DensityMatrix8::from_matrix(ComplexMatrix::identity(4)).is_err());
    }

    #[test]
    fn catalog_ghz_amplitudes() {
        let h = FRAC_1_SQRT_2;
        let spec = catalog("ghz", &[h, h]).unwrap();
        let psi = spec.pure_state().unwrap();
        let expected = [h, 0., 0., 0., 0., 0., 0., h];
        for (a, e) in psi.amplitudes().iter().zip(expected) {
            assert!((a.re - e).abs() < 1e-15 && a.im == 0.0);
        }
    }

    #[test]
    fn catalog_kye_prefactor() {
        let rho = catalog("kye", &[4.0]).unwrap().density().unwrap();
        let m = rho.matrix();
        assert!((m[(0, 0)].re - 8.0 / 40.0).abs() < 1e-15);
        assert!((m[(1, 1)].re - 4.0 / 40.0).abs() < 1e-15);
        assert!((m[(2, 5)].re + 2.0 / 40.0).abs() < 1e-15);
        assert!((m[(0, 7)].re - 2.0 / 40.0).abs() < 1e-15);
        assert!(matches!(
            catalog("kye", &[1.0]),
            Err(StateError::ParamOutOfRange { .. })
        ));
    }

    #[test]
    fn catalog_g2_amplitudes() {
        let psi = catalog("g2", &[]).unwrap().pure_state().unwrap();
        let a = 1.0 / 5f64.sqrt();
        for (idx, amp) in psi.amplitudes().iter().enumerate() {
            let expected = if [0, 4, 5, 6, 7].contains(&idx) { a } else { 0.0 };
            assert!((amp.re - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn catalog_errors() {
        assert_eq!(catalog("nope", &[]), Err(StateError::UnknownName("nope".into())));
        assert!(matches!(catalog("ghz", &[1.0]), Err(StateError::ParamCount { .. })));
        assert!(matches!(catalog("b1", &[1.5]), Err(StateError::ParamOutOfRange { index: 0, .. })));
        assert!(matches!(catalog("rho2", &[0.7, 0.5]), Err(StateError::ParamOutOfRange { index: 1, .. })));
        assert!(matches!(catalog("ghz", &[1.0, 1.0]), Err(StateError::ParamOutOfRange { .. })));
        assert!(matches!(catalog("g3", &[-0.5, 0.5, 0.7071]), Err(StateError::ParamOutOfRange { .. })));
        assert!(matches!(catalog("s2", &[f64::NAN]), Err(StateError::ParamOutOfRange { .. })));
    }

    #[test]
    fn catalog_rounded_params_are_renormalized() {
        let e = expand_catalog("g3", &[0.3, 0.4, 0.866]).unwrap();
        let n2 = e.renormalized_from.unwrap();
        assert!((n2 - 0.999956).abs() < 1e-12);
        assert!(e.spec.density().is_ok());
        let exact = expand_catalog("ghz", &[0.6, 0.8]).unwrap();
        assert_eq!(exact.renormalized_from, None);
    }

    #[test]
    fn every_catalog_entry_builds_a_valid_state() {
        let samples: &[(&str, &[f64])] = &[
            ("ghz", &[0.6, 0.8]),
            ("w", &[0.7, 0.1, 0.707107]),
            ("w-tilde", &[]),
            ("g2", &[]),
            ("g3", &[0.7, 0.1, 0.707107]),
            ("ghz-w", &[0.3]),
            ("b1", &[0.3]),
            ("b2", &[0.6, 0.1, 0.7937]),
            ("kye", &[5.0]),
            ("s2", &[0.9]),
            ("s3", &[0.4]),
            ("rho1", &[0.5]),
            ("rho2", &[0.5, 0.25]),
        ];
        assert_eq!(samples.len(), CatalogId::ALL.len());
        for (name, params) in samples {
            let rho = catalog(name, params).unwrap().density().unwrap();
            let m = rho.matrix();
            assert!(m.hermiticity_defect().unwrap() <= 1e-10, "{name}");
            assert!((m.trace().re - 1.0).abs() <= 1e-10, "{name}");
            assert!(crate::linalg::min_eigenvalue(m).unwrap() >= -1e-10, "{name}");
            let id = CatalogId::from_name(name).unwrap();
            assert_eq!(id.is_pure(), catalog(name, params).unwrap().pure_state().is_some(), "{name}");
        }
    }

    #[test]
    fn parse_pure_basis_state() {
        let spec = parse_state_file(r#"{"pure": {"amplitudes": [[1,0],0,0,0,0,0,0,0]}}"#).unwrap();
        assert_eq!(spec.density().unwrap(), PureState3::basis("000").density());
    }

    #[test]
    fn parse_catalog_entry() {
        let spec = parse_state_file(r#"{"catalog": {"name": "w", "params": [0.7,0.1,0.707107]}}"#).unwrap();
        let expected = catalog("w", &[0.7, 0.1, 0.707107]).unwrap().density().unwrap();
        assert_eq!(spec.density().unwrap(), expected);
    }

    #[test]
    fn parse_bad_weights_names_path() {
        let doc = r#"{"mix": {"parts": [
            {"weight": 0.5, "state": {"pure": {"amplitudes": [1,0,0,0,0,0,0,0]}}},
            {"weight": 0.4, "state": {"catalog": {"name": "g2", "params": []}}}
        ]}}"#;
        match parse_state_file(doc) {
            Err(StateError::AtPath { path, source }) => {
                assert_eq!(path, "$.mix.parts");
                assert!(matches!(*source, StateError::BadWeights(_)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_schema_errors_carry_paths() {
        let err = parse_state_file(r#"{"pure": {"amplitudes": [1, "x"]}}"#).unwrap_err();
        assert!(matches!(err, StateError::SchemaError { .. }));
        assert!(err.path().unwrap().contains("amplitudes"), "{err}");

        let err = parse_state_file(r#"{"pure": {"amplitudes": [1,0,0]}}"#).unwrap_err();
        assert_eq!(err.path(), Some("$.pure.amplitudes"));

        let err = parse_state_file(r#"{"bogus": {}}"#).unwrap_err();
        assert!(matches!(err, StateError::SchemaError { .. }));

        let err = parse_state_file("not json").unwrap_err();
        assert!(matches!(err, StateError::SchemaError { .. }));

        let err = parse_state_file(r#"{"mix": {"parts": [{"weight": 1, "state": {"pure": {"amplitudes": [1,1,0,0,0,0,0,0]}}}]}}"#)
            .unwrap_err();
        assert_eq!(err.path(), Some("$.mix.parts[0].state.pure.amplitudes"));
    }

    #[test]
    fn parse_matrix_checks_dimensions() {
        let doc = r#"{"matrix": {"re": [[1]], "im": [[0]]}}"#;
        let err = parse_state_file(doc).unwrap_err();
        assert_eq!(err.path(), Some("$.matrix.re"));
    }

    #[test]
    fn render_parse_round_trip() {
        let h = FRAC_1_SQRT_2;
        let specs = vec![
            catalog("rho2", &[0.3, 0.2]).unwrap(),
            StateSpec::catalog("kye", &[3.0]),
            StateSpec::pure(&PureState3::normalized(ket(&[("000", h), ("111", -h)])).unwrap()),
            StateSpec::pure(
                &PureState3::new([
                    Complex64::new(0.5, 0.5),
                    c(0.),
                    c(0.),
                    c(0.),
                    c(0.),
                    c(0.),
                    Complex64::new(0.0, -0.5),
                    c(0.5),
                ])
                .unwrap(),
            ),
        ];
        for spec in specs {
            let back = parse_state_file(&render_state(&spec)).unwrap();
            let a = spec.density().unwrap();
            let b = back.density().unwrap();
            assert!(a.matrix().max_abs_diff(b.matrix()) <= 1e-12);
        }
    }

    #[test]
    fn qubit_permutation_of_w_state() {
        let rho = catalog("w", &[0.5, 0.5, FRAC_1_SQRT_2]).unwrap().density().unwrap();
        // swapping B and C exchanges |010⟩ and |001⟩ amplitudes
        let swapped = rho.permute_qubits([0, 2, 1]);
        let expected = catalog("w", &[0.5, 0.5, FRAC_1_SQRT_2]).unwrap().density().unwrap();
        assert!(swapped.matrix().max_abs_diff(expected.matrix()) < 1e-15);
        let rho = catalog("w", &[0.1, 0.2, (0.95f64).sqrt()]).unwrap().density().unwrap();
        let swapped = rho.permute_qubits([0, 2, 1]);
        let expected = catalog("w", &[0.2, 0.1, (0.95f64).sqrt()]).unwrap().density().unwrap();
        assert!(swapped.matrix().max_abs_diff(expected.matrix()) < 1e-15);
    }
}
