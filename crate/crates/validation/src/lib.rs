// SPDX-License-Identifier: Apache-2.0

//! Independent oracles and state generators for the acceptance sheet.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spapt::linalg::ComplexMatrix;
use spapt::ptranspose::Qubit;
use spapt::states::{DensityMatrix8, PureState3};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn entry(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn random_pure(r: &mut ChaCha8Rng) -> PureState3 {
    let mut amps = [c(0.0); 8];
    amps.iter_mut().for_each(|a| *a = entry(r));
    PureState3::normalized(amps).unwrap()
}

pub fn random_density(r: &mut ChaCha8Rng, rank: usize) -> DensityMatrix8 {
    let g = ComplexMatrix::from_fn(8, rank.clamp(1, 8), |_, _| entry(r));
    let m = &g * &g.dagger();
    let tr = m.trace().re;
    DensityMatrix8::from_matrix(m.scale(1.0 / tr)).unwrap()
}

/// Alternates pure states and mixed states of every rank.
pub fn random_state(r: &mut ChaCha8Rng, k: usize) -> DensityMatrix8 {
    if k.is_multiple_of(2) {
        random_pure(r).density()
    } else {
        let rank = r.gen_range(1..=8);
        random_density(r, rank)
    }
}

pub fn random_qubit(r: &mut ChaCha8Rng) -> [Complex64; 2] {
    let (a, b) = (entry(r), entry(r));
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    [a / n, b / n]
}

/// `|x⟩` on qubit `slot`, a Bell pair `(|00⟩ + |11⟩)/√2` on the other two.
pub fn placed_bell(x: [Complex64; 2], slot: Qubit) -> PureState3 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = [c(0.0); 8];
    for idx in 0..8 {
        let bits = [idx >> 2 & 1, idx >> 1 & 1, idx & 1];
        let s = slot.index();
        let others: Vec<usize> = (0..3).filter(|&k| k != s).map(|k| bits[k]).collect();
        if others[0] == others[1] {
            amps[idx] = x[bits[s]] * h;
        }
    }
    PureState3::new(amps).unwrap()
}

/// Permutation matrix exchanging qubits B and C.
pub fn swap_bc() -> ComplexMatrix {
    ComplexMatrix::from_fn(8, 8, |i, j| {
        let (a, b, cc) = (j >> 2 & 1, j >> 1 & 1, j & 1);
        if i == 4 * a + 2 * cc + b {
            c(1.0)
        } else {
            c(0.0)
        }
    })
}

pub fn conjugate_swap_bc(rho: &DensityMatrix8) -> DensityMatrix8 {
    let p = swap_bc();
    DensityMatrix8::from_matrix(&(&p * rho.matrix()) * &p.dagger()).unwrap()
}

/// Partial transpose read off the lettered 2×2 block layouts. `X` is the block
/// at its place in the upper triangle of the original, `X*` the block at the
/// mirrored place. T_A and T_B move whole blocks; T_C transposes each block in place.
pub fn block_form(m: &ComplexMatrix, qubit: Qubit) -> ComplexMatrix {
    const ORIGINAL: [[&str; 4]; 4] = [
        ["A", "B", "C", "D"],
        ["B*", "E", "F", "G"],
        ["C*", "F*", "H", "I"],
        ["D*", "G*", "I*", "J"],
    ];
    const PT_A: [[&str; 4]; 4] = [
        ["A", "B", "C*", "F*"],
        ["B*", "E", "D*", "G*"],
        ["C", "D", "H", "I"],
        ["F", "G", "I*", "J"],
    ];
    const PT_B: [[&str; 4]; 4] = [
        ["A", "B*", "C", "F"],
        ["B", "E", "D", "G"],
        ["C*", "D*", "H", "I*"],
        ["F*", "G*", "I", "J"],
    ];
    let home = |letter: &str| -> (usize, usize) {
        let idx = "ABCDEFGHIJ".find(letter).unwrap();
        [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)][idx]
    };
    let (layout, inside) = match qubit {
        Qubit::A => (PT_A, false),
        Qubit::B => (PT_B, false),
        Qubit::C => (ORIGINAL, true),
    };
    let mut out = ComplexMatrix::zeros(8, 8);
    for (br, row) in layout.iter().enumerate() {
        for (bc, entry) in row.iter().enumerate() {
            let (sr0, sc0) = match entry.strip_suffix('*') {
                Some(letter) => {
                    let (r, c) = home(letter);
                    (c, r)
                }
                None => home(entry),
            };
            for r in 0..2 {
                for cc in 0..2 {
                    let (sr, sc) = if inside { (cc, r) } else { (r, cc) };
                    out[(2 * br + r, 2 * bc + cc)] = m[(2 * sr0 + sr, 2 * sc0 + sc)];
                }
            }
        }
    }
    out
}

pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

pub fn max_sorted_diff(a: &[f64], b: Vec<f64>) -> f64 {
    let b = sorted(b);
    a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| start + (stop - start) * i as f64 / (n - 1) as f64).collect()
}

/// `4 det ρ_A - C²_AB - C²_AC` with rank-2 concurrences.
pub fn ckw_residual(psi: &PureState3) -> f64 {
    use num_complex::Complex64 as Z;
    let amp = |a, b, cc| psi.amp(a, b, cc);
    let mut ra = [[Z::new(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for a2 in 0..2 {
            for b in 0..2 {
                for cc in 0..2 {
                    ra[a][a2] += amp(a, b, cc) * amp(a2, b, cc).conj();
                }
            }
        }
    }
    let det = (ra[0][0] * ra[1][1] - ra[0][1] * ra[1][0]).re;
    let flip = |v: &[Z; 4], w: &[Z; 4]| -v[0] * w[3] + v[1] * w[2] + v[2] * w[1] - v[3] * w[0];
    let conc = |vs: [[Z; 4]; 2]| {
        let m = [[flip(&vs[0], &vs[0]), flip(&vs[0], &vs[1])], [flip(&vs[1], &vs[0]), flip(&vs[1], &vs[1])]];
        let fro: f64 = m.iter().flatten().map(|z| z.norm_sqr()).sum();
        let d = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).norm();
        (fro - 2.0 * d).max(0.0).sqrt()
    };
    let ab = conc([0, 1].map(|cc| [amp(0, 0, cc), amp(0, 1, cc), amp(1, 0, cc), amp(1, 1, cc)]));
    let ac = conc([0, 1].map(|b| [amp(0, b, 0), amp(0, b, 1), amp(1, b, 0), amp(1, b, 1)]));
    4.0 * det - ab * ab - ac * ac
}
