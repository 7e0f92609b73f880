// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::ComplexMatrix;
use crate::states::{DensityMatrix8, PureState3, DIM};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entry(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| entry(r))
}

pub fn random_hermitian(r: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    random_matrix(r, n, n).hermitian_part()
}

pub fn random_gram(r: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = random_matrix(r, n, n);
    &g * &g.dagger()
}

pub fn random_pure(r: &mut ChaCha8Rng) -> PureState3 {
    let mut amps = [Complex64::new(0.0, 0.0); DIM];
    for a in amps.iter_mut() {
        *a = entry(r);
    }
    PureState3::normalized(amps).unwrap()
}

/// `G G† / tr` with `G` of shape 8×rank.
pub fn random_density(r: &mut ChaCha8Rng, rank: usize) -> DensityMatrix8 {
    let g = random_matrix(r, DIM, rank.clamp(1, DIM));
    let m = &g * &g.dagger();
    let tr = m.trace().re;
    DensityMatrix8::from_matrix(m.scale(1.0 / tr)).unwrap()
}
