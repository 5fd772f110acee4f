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

//! End-to-end runs of the two W-state generation schemes and the coupler
//! designer.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::evolve::evolve;
use crate::fock::{
    path_state_from_column, product_input, single_photon_state, w_state_path, w_state_polarization,
    FockState, Polarization, SuperposedState,
};
use crate::linalg::{
    complete_unitary_from_column, dft_multiport, hadamard_multiport, MultiportUnitary, TargetColumn,
};
use crate::postselect::{fidelity, postselect, CoincidencePattern, PostSelectionResult};
use crate::{Error, Result};

/// Tolerance for comparing per-term probabilities with the target's.
pub const DISTRIBUTION_TOL: f64 = 1e-12;

/// Tolerance for a designed coupler reproducing its target column.
pub const DESIGN_TOL: f64 = 1e-10;

pub const NO_REFERENCE: &str = "computed, no published reference";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    PathW,
    PolarizationW,
    DesignedPath,
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeKind::PathW => "path-w",
            SchemeKind::PolarizationW => "polarization-w",
            SchemeKind::DesignedPath => "designed-path",
        })
    }
}

/// Everything one scheme run produced.
///
/// `fidelity_to_target` is the phase-sensitive overlap with `target_state`;
/// `distribution_match` only compares per-term probabilities. The two differ
/// for path-W runs from any input port other than 0, where the DFT column
/// carries relative phases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SchemeReport {
    pub scheme_kind: SchemeKind,
    pub n: usize,
    pub unitary_used: MultiportUnitary,
    pub input: FockState,
    pub output_state: SuperposedState,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub post_selection: Option<PostSelectionResult>,
    pub target_state: SuperposedState,
    pub fidelity_to_target: f64,
    pub distribution_match: bool,
    pub success_probability: f64,
    /// Reference value for `success_probability`, as an exact fraction, or
    /// [`NO_REFERENCE`].
    pub reference: String,
}

impl SchemeReport {
    /// The state that was compared to the target: the post-selected
    /// conditional state if there is one, the full output otherwise.
    pub fn heralded_state(&self) -> &SuperposedState {
        self.post_selection
            .as_ref()
            .map_or(&self.output_state, |p| &p.conditional)
    }

    /// Probability of each output port for single-photon runs, in port order.
    pub fn port_probabilities(&self) -> Vec<f64> {
        let mut probs = vec![0.0; self.n];
        for (k, a) in self.output_state.terms() {
            if k.total_photons() == 1 {
                if let Some(port) = k.spatial_counts().iter().position(|&c| c == 1) {
                    probs[port] += a.norm_sqr();
                }
            }
        }
        probs
    }

    pub fn port_amplitudes(&self) -> Vec<Complex64> {
        let mut amps = vec![Complex64::default(); self.n];
        for (k, a) in self.output_state.terms() {
            if k.total_photons() == 1 {
                if let Some(port) = k.spatial_counts().iter().position(|&c| c == 1) {
                    amps[port] = *a;
                }
            }
        }
        amps
    }
}

fn distributions_match(state: &SuperposedState, target: &SuperposedState) -> bool {
    let state_side = state
        .terms()
        .all(|(k, a)| (a.norm_sqr() - target.amplitude(k).norm_sqr()).abs() <= DISTRIBUTION_TOL);
    let target_side = target
        .terms()
        .all(|(k, a)| (a.norm_sqr() - state.amplitude(k).norm_sqr()).abs() <= DISTRIBUTION_TOL);
    state_side && target_side
}

/// One H photon into `input_port` of the n-port DFT coupler.
pub fn run_path_w(n: usize, input_port: usize) -> Result<SchemeReport> {
    let unitary = dft_multiport(n)?;
    let input = single_photon_state(input_port, Polarization::H, n)?;
    let output_state = evolve(&unitary, &input)?;
    let target_state = w_state_path(n)?;
    Ok(SchemeReport {
        scheme_kind: SchemeKind::PathW,
        n,
        fidelity_to_target: fidelity(&output_state, &target_state)?,
        distribution_match: distributions_match(&output_state, &target_state),
        unitary_used: unitary,
        input,
        output_state,
        post_selection: None,
        target_state,
        success_probability: 1.0,
        reference: "1".into(),
    })
}

/// Symmetric coupler used for the n-photon polarization scheme.
///
/// With H photons in ports `0..n−1` and V in port `n−1`, the DFT coupler
/// gives equal coincidence branches for odd `n` but alternating signs for
/// even `n`; the Sylvester–Hadamard coupler gives equal branches for powers
/// of two. No 2-port coupler gives equal branches.
pub fn polarization_coupler(n: usize) -> Result<MultiportUnitary> {
    if n >= 4 && n.is_power_of_two() {
        hadamard_multiport(n)
    } else {
        dft_multiport(n)
    }
}

/// H photons into ports `0..n−1` and a V photon into port `n−1` of
/// [`polarization_coupler(n)`](polarization_coupler), post-selected on one
/// photon per output port.
pub fn run_polarization_w(n: usize) -> Result<SchemeReport> {
    if n < 2 {
        return Err(Error::invalid("n must be ≥ 2"));
    }
    run_polarization_w_with(polarization_coupler(n)?)
}

/// As [`run_polarization_w`] with a caller-chosen coupler.
pub fn run_polarization_w_with(unitary: MultiportUnitary) -> Result<SchemeReport> {
    let n = unitary.n();
    let canonical = polarization_coupler(n).is_ok_and(|c| c == unitary);
    let mut photons: Vec<(usize, Polarization)> =
        (0..n - 1).map(|p| (p, Polarization::H)).collect();
    photons.push((n - 1, Polarization::V));
    let input = product_input(&photons, n)?;
    let output_state = evolve(&unitary, &input)?;
    let selection = postselect(&output_state, &CoincidencePattern::OnePerPort)?;
    let target_state = w_state_polarization(n)?;
    let reference = match n {
        3 if canonical => "1/9",
        4 if canonical => "1/16",
        _ => NO_REFERENCE,
    };
    Ok(SchemeReport {
        scheme_kind: SchemeKind::PolarizationW,
        n,
        fidelity_to_target: fidelity(&selection.conditional, &target_state)?,
        distribution_match: distributions_match(&selection.conditional, &target_state),
        success_probability: selection.probability,
        unitary_used: unitary,
        input,
        output_state,
        post_selection: Some(selection),
        target_state,
        reference: reference.into(),
    })
}

/// Completes `target` to a coupler and sends one H photon into port 0; the
/// output amplitude at port k is `target[k]`.
pub fn run_designed_path(target: &TargetColumn) -> Result<SchemeReport> {
    let unitary = complete_unitary_from_column(target)?;
    let n = unitary.n();
    let input = single_photon_state(0, Polarization::H, n)?;
    let output_state = evolve(&unitary, &input)?;
    let target_state = path_state_from_column(target.amplitudes(), Polarization::H)?;
    let miss = output_state.max_amplitude_diff(&target_state);
    if miss > DESIGN_TOL {
        return Err(Error::Numerical(format!(
            "designed coupler output misses the target by {miss:e}"
        )));
    }
    Ok(SchemeReport {
        scheme_kind: SchemeKind::DesignedPath,
        n,
        fidelity_to_target: fidelity(&output_state, &target_state)?,
        distribution_match: distributions_match(&output_state, &target_state),
        unitary_used: unitary,
        input,
        output_state,
        post_selection: None,
        target_state,
        success_probability: 1.0,
        reference: "1".into(),
    })
}
