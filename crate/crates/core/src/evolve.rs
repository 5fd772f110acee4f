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

//! Evolution of Fock states through a multiport coupler.
//!
//! The coupler acts identically on both polarizations, so H and V photons
//! evolve as two independent spatial problems whose amplitudes multiply.
//! Each spatial amplitude is a permanent:
//!
//! ```text
//! ⟨out|U|in⟩ = per(U[rows(out), cols(in)]) / √(∏ in_i! · ∏ out_j!)
//! ```
//!
//! where `rows(out)` lists output port `j` `out_j` times and `cols(in)`
//! lists input port `i` `in_i` times. [`oracle_evolve`] recomputes the same
//! output by expanding creation operators over the full 2n-mode matrix and
//! shares no code with the permanent path.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::fock::{FockState, Mode, Polarization, SuperposedState};
use crate::linalg::{permanent, ComplexMatrix, MultiportUnitary};
use crate::{Error, Result};

/// Most photons [`evolve`] and [`transition_amplitude`] accept.
pub const MAX_PHOTONS: u32 = 12;

/// Most output patterns per polarization sector, and in the joint output.
pub const MAX_PATTERNS: u128 = 1_000_000;

pub const ORACLE_MAX_PHOTONS: u32 = 4;
pub const ORACLE_MAX_PORTS: usize = 4;

const FACTORIALS: [u64; 13] = [
    1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800, 479001600,
];

fn factorial(k: u32) -> Result<u64> {
    FACTORIALS
        .get(k as usize)
        .copied()
        .ok_or_else(|| Error::capacity(format!("factorial of {k} exceeds the photon limit")))
}

/// A coupler paired with an input state of matching port count.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionSpec {
    unitary: MultiportUnitary,
    input: FockState,
}

impl TransitionSpec {
    pub fn new(unitary: MultiportUnitary, input: FockState) -> Result<Self> {
        check_ports(&unitary, &input)?;
        Ok(TransitionSpec { unitary, input })
    }

    pub fn unitary(&self) -> &MultiportUnitary {
        &self.unitary
    }

    pub fn input(&self) -> &FockState {
        &self.input
    }

    pub fn evolve(&self) -> Result<SuperposedState> {
        evolve(&self.unitary, &self.input)
    }
}

fn check_ports(u: &MultiportUnitary, s: &FockState) -> Result<()> {
    if s.n_ports() != u.n() {
        return Err(Error::invalid(format!(
            "state has {} ports but the coupler has {}",
            s.n_ports(),
            u.n()
        )));
    }
    Ok(())
}

fn check_photons(s: &FockState) -> Result<()> {
    let k = s.total_photons();
    if k > MAX_PHOTONS {
        return Err(Error::capacity(format!(
            "{k} photons exceeds the limit of {MAX_PHOTONS}"
        )));
    }
    Ok(())
}

/// Row/column index of `mode` in the lifted matrix.
pub fn mode_index(mode: Mode) -> usize {
    2 * mode.port
        + match mode.pol {
            Polarization::H => 0,
            Polarization::V => 1,
        }
}

/// The 2n×2n matrix on `(port, pol)` modes: `u` on each polarization,
/// nothing between them. Modes are indexed by [`mode_index`].
pub fn lift_to_modes(u: &MultiportUnitary) -> ComplexMatrix {
    let n = u.n();
    ComplexMatrix::from_fn(2 * n, 2 * n, |r, c| {
        if r % 2 == c % 2 {
            u[(r / 2, c / 2)]
        } else {
            Complex64::default()
        }
    })
}

fn repeat_ports(occ: &[u32]) -> Vec<usize> {
    occ.iter()
        .enumerate()
        .flat_map(|(port, &c)| std::iter::repeat_n(port, c as usize))
        .collect()
}

/// Amplitude for one polarization sector. Photon numbers must agree.
fn sector_amplitude(u: &MultiportUnitary, input: &[u32], output: &[u32]) -> Result<Complex64> {
    let cols = repeat_ports(input);
    let rows = repeat_ports(output);
    debug_assert_eq!(rows.len(), cols.len());
    if cols.is_empty() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut norm: u64 = 1;
    for &c in input.iter().chain(output) {
        norm *= factorial(c)?;
    }
    let per = permanent(&u.matrix().select(&rows, &cols))?;
    Ok(per / (norm as f64).sqrt())
}

/// `⟨output| U |input⟩`.
pub fn transition_amplitude(
    u: &MultiportUnitary,
    input: &FockState,
    output: &FockState,
) -> Result<Complex64> {
    check_ports(u, input)?;
    check_ports(u, output)?;
    check_photons(input)?;
    let mut amp = Complex64::new(1.0, 0.0);
    for pol in Polarization::ALL {
        if input.photons(pol) != output.photons(pol) {
            return Ok(Complex64::default());
        }
        amp *= sector_amplitude(u, input.sector(pol), output.sector(pol))?;
    }
    Ok(amp)
}

/// Number of ways to put `k` bosons into `n` modes, `C(n+k−1, k)`.
pub fn pattern_count(n: usize, k: u32) -> u128 {
    let mut acc: u128 = 1;
    for i in 1..=u128::from(k) {
        acc = acc * (n as u128 + i - 1) / i;
        if acc > u64::MAX as u128 {
            return u128::MAX;
        }
    }
    acc
}

/// All occupation vectors of `k` photons over `n` ports, in ascending
/// lexicographic order.
pub fn occupation_patterns(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn fill(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur[pos] = c;
            fill(pos + 1, left - c, cur, out);
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        fill(0, k, &mut vec![0; n], &mut out);
    }
    out
}

/// Full output state of `input` sent through `u`.
///
/// Every output pattern with the input's photon number in each
/// polarization is enumerated; terms that interfere away are pruned.
pub fn evolve(u: &MultiportUnitary, input: &FockState) -> Result<SuperposedState> {
    check_ports(u, input)?;
    check_photons(input)?;
    let n = u.n();

    let mut joint: u128 = 1;
    let mut sectors = Vec::with_capacity(2);
    for pol in Polarization::ALL {
        let k = input.photons(pol);
        let count = pattern_count(n, k);
        if count > MAX_PATTERNS {
            return Err(Error::capacity(format!(
                "{count} output patterns for {k} {pol} photons in {n} ports exceeds {MAX_PATTERNS}"
            )));
        }
        joint = joint.saturating_mul(count);
        sectors.push((pol, k));
    }
    if joint > MAX_PATTERNS {
        return Err(Error::capacity(format!(
            "{joint} joint output patterns exceeds {MAX_PATTERNS}"
        )));
    }

    let mut amplitudes = Vec::with_capacity(2);
    for (pol, k) in sectors {
        let src = input.sector(pol);
        let patterns = occupation_patterns(n, k);
        let amps: Vec<Complex64> = patterns
            .par_iter()
            .map(|out| sector_amplitude(u, src, out))
            .collect::<Result<_>>()?;
        amplitudes.push(
            patterns
                .into_iter()
                .zip(amps)
                .filter(|(_, a)| *a != Complex64::default())
                .collect::<Vec<_>>(),
        );
    }
    let (h_sector, v_sector) = (&amplitudes[0], &amplitudes[1]);

    let mut terms = Vec::with_capacity(h_sector.len() * v_sector.len());
    for (h_occ, h_amp) in h_sector {
        for (v_occ, v_amp) in v_sector {
            let state = FockState::from_sectors(h_occ.clone(), v_occ.clone())?;
            terms.push((state, h_amp * v_amp));
        }
    }
    SuperposedState::new(n, terms)
}

/// Independent reference for [`evolve`]: expands
/// `∏_photons (Σ_r L[r, mode] a†_r)` over the lifted matrix `L`, then maps
/// each monomial `∏ a†_r^{m_r}` to `√(∏ m_r!) |m⟩` and divides by the input
/// normalization `√(∏ in_i!)`.
///
/// Limited to [`ORACLE_MAX_PHOTONS`] photons on [`ORACLE_MAX_PORTS`] ports.
pub fn oracle_evolve(u: &MultiportUnitary, input: &FockState) -> Result<SuperposedState> {
    check_ports(u, input)?;
    let n = u.n();
    let k = input.total_photons();
    if n > ORACLE_MAX_PORTS || k > ORACLE_MAX_PHOTONS {
        return Err(Error::capacity(format!(
            "oracle is limited to {ORACLE_MAX_PORTS} ports and {ORACLE_MAX_PHOTONS} photons, got {n} and {k}"
        )));
    }
    let lifted = lift_to_modes(u);
    let modes = 2 * n;

    let mut poly: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
    poly.insert(vec![0; modes], Complex64::new(1.0, 0.0));
    let mut in_norm = 1.0;
    for (mode, count) in input.occupations() {
        in_norm *= (factorial(count)? as f64).sqrt();
        let col = mode_index(mode);
        for _ in 0..count {
            let mut next: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
            for (mono, coeff) in &poly {
                for row in 0..modes {
                    let mut m = mono.clone();
                    m[row] += 1;
                    *next.entry(m).or_default() += coeff * lifted[(row, col)];
                }
            }
            poly = next;
        }
    }

    let mut terms = Vec::with_capacity(poly.len());
    for (mono, coeff) in poly {
        let mut out_norm = 1.0;
        let mut state = FockState::vacuum(n)?;
        for (idx, &m) in mono.iter().enumerate() {
            out_norm *= (factorial(m)? as f64).sqrt();
            let pol = if idx % 2 == 0 {
                Polarization::H
            } else {
                Polarization::V
            };
            state.set_count(Mode::new(idx / 2, pol), m)?;
        }
        terms.push((state, coeff * out_norm / in_norm));
    }
    SuperposedState::new(n, terms)
}
