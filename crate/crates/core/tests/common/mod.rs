// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#![allow(dead_code)]

use rand::Rng;
use wstate::fock::{FockState, Mode, Polarization};
use wstate::linalg::{ComplexMatrix, MultiportUnitary};
use wstate::Complex64;

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_matrix<R: Rng>(rng: &mut R, k: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(k, k, |_, _| random_complex(rng))
}

/// Gram–Schmidt on the columns of a random matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> MultiportUnitary {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| random_complex(rng)).collect();
        for _ in 0..2 {
            for c in &cols {
                let proj: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= proj * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    MultiportUnitary::new(ComplexMatrix::from_fn(n, n, |j, k| cols[k][j])).unwrap()
}

pub fn random_fock<R: Rng>(rng: &mut R, n: usize, photons: u32) -> FockState {
    let mut s = FockState::vacuum(n).unwrap();
    for _ in 0..photons {
        let pol = if rng.gen_bool(0.5) {
            Polarization::H
        } else {
            Polarization::V
        };
        let mode = Mode::new(rng.gen_range(0..n), pol);
        let c = s.count(mode);
        s.set_count(mode, c + 1).unwrap();
    }
    s
}

/// Every Fock state with exactly `photons` photons over `n × {H, V}` modes.
pub fn all_fock_states(n: usize, photons: u32) -> Vec<FockState> {
    let modes = 2 * n;
    let mut out = Vec::new();
    let mut occ = vec![0u32; modes];
    fn walk(pos: usize, left: u32, occ: &mut Vec<u32>, n: usize, out: &mut Vec<FockState>) {
        if pos + 1 == occ.len() {
            occ[pos] = left;
            let h = (0..n).map(|p| occ[2 * p]).collect();
            let v = (0..n).map(|p| occ[2 * p + 1]).collect();
            out.push(FockState::from_sectors(h, v).unwrap());
            return;
        }
        for c in 0..=left {
            occ[pos] = c;
            walk(pos + 1, left - c, occ, n, out);
        }
    }
    walk(0, photons, &mut occ, n, &mut out);
    out
}
