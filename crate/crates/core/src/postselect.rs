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

//! Coincidence post-selection and state fidelity.
//!
//! Detectors count photons per fiber regardless of polarization, so a
//! pattern is matched against the spatial occupation summed over H and V.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fock::{FockState, SuperposedState, STATE_NORM_TOL};
use crate::{Error, Result};

/// Below this success probability the outcome is treated as exactly zero.
pub const ZERO_PROBABILITY_TOL: f64 = 1e-12;

/// Detector-count predicate over spatial ports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoincidencePattern {
    /// Exactly one photon in every port.
    OnePerPort,
    /// The listed ports hold exactly the listed counts; other ports are
    /// unconstrained. An empty list accepts everything.
    Ports(Vec<(usize, u32)>),
}

impl CoincidencePattern {
    pub fn ports(required: impl IntoIterator<Item = (usize, u32)>) -> Result<Self> {
        let mut list: Vec<(usize, u32)> = required.into_iter().collect();
        list.sort_unstable();
        if list.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid("pattern lists a port more than once"));
        }
        Ok(CoincidencePattern::Ports(list))
    }

    /// Accepts every term.
    pub fn any() -> Self {
        CoincidencePattern::Ports(Vec::new())
    }

    fn validate(&self, n_ports: usize) -> Result<()> {
        if let CoincidencePattern::Ports(list) = self {
            if let Some((p, _)) = list.iter().find(|(p, _)| *p >= n_ports) {
                return Err(Error::invalid(format!(
                    "pattern references port {p} of a {n_ports}-port state"
                )));
            }
        }
        Ok(())
    }

    pub fn matches(&self, state: &FockState) -> bool {
        let spatial = state.spatial_counts();
        match self {
            CoincidencePattern::OnePerPort => spatial.iter().all(|&c| c == 1),
            CoincidencePattern::Ports(list) => list
                .iter()
                .all(|&(p, c)| spatial.get(p).copied() == Some(c)),
        }
    }
}

/// Outcome of post-selecting a state on a coincidence pattern.
///
/// `conditional` is empty when `probability` falls below
/// [`ZERO_PROBABILITY_TOL`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PostSelectionResult {
    pub probability: f64,
    pub dropped_probability: f64,
    pub kept_terms: usize,
    pub conditional: SuperposedState,
}

impl PostSelectionResult {
    /// No term survived (destructive interference or an impossible pattern).
    pub fn vanished(&self) -> bool {
        self.conditional.is_empty()
    }
}

fn check_normalized(state: &SuperposedState) -> Result<()> {
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > STATE_NORM_TOL {
        return Err(Error::invalid(format!(
            "post-selection needs a normalized state (Σ|amp|² = {norm})"
        )));
    }
    Ok(())
}

/// Terms of `state` matching `pattern`, with their original amplitudes, in
/// the state's term order.
pub fn branch_amplitude_report(
    state: &SuperposedState,
    pattern: &CoincidencePattern,
) -> Result<Vec<(FockState, Complex64)>> {
    check_normalized(state)?;
    pattern.validate(state.n_ports())?;
    Ok(state
        .terms()
        .filter(|(k, _)| pattern.matches(k))
        .map(|(k, a)| (k.clone(), *a))
        .collect())
}

pub fn postselect(
    state: &SuperposedState,
    pattern: &CoincidencePattern,
) -> Result<PostSelectionResult> {
    check_normalized(state)?;
    pattern.validate(state.n_ports())?;
    let mut kept = Vec::new();
    let mut probability = 0.0;
    let mut dropped = 0.0;
    for (k, a) in state.terms() {
        if pattern.matches(k) {
            probability += a.norm_sqr();
            kept.push((k.clone(), *a));
        } else {
            dropped += a.norm_sqr();
        }
    }
    let kept_terms = kept.len();
    let conditional = if probability < ZERO_PROBABILITY_TOL {
        SuperposedState::empty(state.n_ports())
    } else {
        SuperposedState::renormalized(state.n_ports(), kept)?
    };
    Ok(PostSelectionResult {
        probability,
        dropped_probability: dropped,
        kept_terms,
        conditional,
    })
}

/// `|⟨target|state⟩|²`, clamped to `[0, 1]`. Zero if either state is empty.
pub fn fidelity(state: &SuperposedState, target: &SuperposedState) -> Result<f64> {
    let overlap = target.inner(state)?;
    Ok(overlap.norm_sqr().clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve::evolve;
    use crate::fock::{
        product_input, single_photon_state, w_state_path, w_state_polarization, Polarization::*,
    };
    use crate::linalg::dft_multiport;

    fn scheme_output(n: usize) -> SuperposedState {
        let mut photons: Vec<_> = (0..n - 1).map(|p| (p, H)).collect();
        photons.push((n - 1, V));
        evolve(
            &dft_multiport(n).unwrap(),
            &product_input(&photons, n).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn tritter_coincidences() {
        let r = postselect(&scheme_output(3), &CoincidencePattern::OnePerPort).unwrap();
        assert!((r.probability - 1.0 / 9.0).abs() < 1e-12);
        assert!((r.probability + r.dropped_probability - 1.0).abs() < 1e-9);
        assert_eq!(r.kept_terms, 3);
        assert!(
            (fidelity(&r.conditional, &w_state_polarization(3).unwrap()).unwrap() - 1.0).abs()
                < 1e-9
        );
    }

    #[test]
    fn quarter_coincidences() {
        let r = postselect(&scheme_output(4), &CoincidencePattern::OnePerPort).unwrap();
        assert!((r.probability - 1.0 / 16.0).abs() < 1e-12);
        assert_eq!(r.kept_terms, 4);
    }

    #[test]
    fn single_port_pattern() {
        let pattern = CoincidencePattern::ports([(0, 1)]).unwrap();
        let r = postselect(&w_state_path(3).unwrap(), &pattern).unwrap();
        assert!((r.probability - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(r.kept_terms, 1);
    }

    #[test]
    fn branch_report_keeps_raw_amplitudes() {
        let branches =
            branch_amplitude_report(&scheme_output(3), &CoincidencePattern::OnePerPort).unwrap();
        assert_eq!(branches.len(), 3);
        let expected = -1.0 / (3.0 * 3f64.sqrt());
        for (k, a) in &branches {
            assert_eq!(k.photons(V), 1);
            assert!((a - Complex64::new(expected, 0.0)).norm() < 1e-12);
        }

        let path = w_state_path(3).unwrap();
        let all = branch_amplitude_report(&path, &CoincidencePattern::any()).unwrap();
        assert_eq!(all.len(), 3);
    }

    #[test]
    fn hom_pair_vanishes() {
        let bs = dft_multiport(2).unwrap();
        let out = evolve(&bs, &product_input(&[(0, H), (1, H)], 2).unwrap()).unwrap();
        let r = postselect(&out, &CoincidencePattern::OnePerPort).unwrap();
        assert!(r.probability < 1e-12);
        assert!(r.vanished());
        assert_eq!(r.kept_terms, 0);
        assert!(
            branch_amplitude_report(&out, &CoincidencePattern::OnePerPort)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn pattern_validation() {
        let s = w_state_path(3).unwrap();
        assert!(postselect(&s, &CoincidencePattern::ports([(3, 1)]).unwrap()).is_err());
        assert!(CoincidencePattern::ports([(0, 1), (0, 2)]).is_err());
    }

    #[test]
    fn fidelity_basics() {
        let w = w_state_path(3).unwrap();
        assert!((fidelity(&w, &w).unwrap() - 1.0).abs() < 1e-15);
        let a = SuperposedState::basis(single_photon_state(0, H, 3).unwrap());
        let b = SuperposedState::basis(single_photon_state(1, H, 3).unwrap());
        assert_eq!(fidelity(&a, &b).unwrap(), 0.0);
        assert!(fidelity(&w, &w_state_path(4).unwrap()).is_err());
    }

    #[test]
    fn result_json_shape() {
        let r = postselect(&scheme_output(3), &CoincidencePattern::OnePerPort).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.starts_with(r#"{"probability":"#));
        assert!(text.contains(r#""droppedProbability":"#));
        assert!(text.contains(r#""keptTerms":3"#));
        let back: PostSelectionResult = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
