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

//! Mode labels, Fock occupation states and superpositions of them.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::TargetColumn;
use crate::serde_complex;
use crate::{Error, Result};

/// Tolerance on `|Σ|amp|² − 1|` for a [`SuperposedState`].
pub const STATE_NORM_TOL: f64 = 1e-9;

/// Terms with `|amp|` below this are dropped when a state is built.
pub const PRUNE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Polarization {
    H,
    V,
}

impl Polarization {
    pub const ALL: [Polarization; 2] = [Polarization::H, Polarization::V];
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarization::H => "H",
            Polarization::V => "V",
        })
    }
}

/// A bosonic mode: spatial port plus polarization. Ordered by port, then H < V.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub port: usize,
    pub pol: Polarization,
}

impl Mode {
    pub fn new(port: usize, pol: Polarization) -> Self {
        Mode { port, pol }
    }
}

/// Photon occupation numbers over `n_ports × {H, V}` modes.
///
/// Stored as one dense occupation vector per polarization, so every mode
/// not listed is empty and equal states are structurally equal. The derived
/// ordering is lexicographic over the H vector first, then the V vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "FockRepr", into = "FockRepr")]
pub struct FockState {
    n_ports: usize,
    h: Vec<u32>,
    v: Vec<u32>,
}

impl FockState {
    pub fn vacuum(n_ports: usize) -> Result<Self> {
        if n_ports == 0 {
            return Err(Error::invalid("a Fock state needs at least one port"));
        }
        Ok(FockState {
            n_ports,
            h: vec![0; n_ports],
            v: vec![0; n_ports],
        })
    }

    /// Builds a state from per-polarization occupation vectors.
    pub fn from_sectors(h: Vec<u32>, v: Vec<u32>) -> Result<Self> {
        if h.len() != v.len() || h.is_empty() {
            return Err(Error::invalid(
                "sector vectors must be non-empty and of equal length",
            ));
        }
        Ok(FockState {
            n_ports: h.len(),
            h,
            v,
        })
    }

    pub fn n_ports(&self) -> usize {
        self.n_ports
    }

    pub fn sector(&self, pol: Polarization) -> &[u32] {
        match pol {
            Polarization::H => &self.h,
            Polarization::V => &self.v,
        }
    }

    pub fn count(&self, mode: Mode) -> u32 {
        self.sector(mode.pol).get(mode.port).copied().unwrap_or(0)
    }

    /// Sets the occupation of `mode`; a count of zero empties it.
    pub fn set_count(&mut self, mode: Mode, count: u32) -> Result<()> {
        self.check_port(mode.port)?;
        match mode.pol {
            Polarization::H => self.h[mode.port] = count,
            Polarization::V => self.v[mode.port] = count,
        }
        Ok(())
    }

    pub fn with_count(mut self, mode: Mode, count: u32) -> Result<Self> {
        self.set_count(mode, count)?;
        Ok(self)
    }

    /// Occupied modes in `(port, pol)` order.
    pub fn occupations(&self) -> impl Iterator<Item = (Mode, u32)> + '_ {
        (0..self.n_ports).flat_map(move |port| {
            Polarization::ALL.into_iter().filter_map(move |pol| {
                let c = self.sector(pol)[port];
                (c > 0).then_some((Mode::new(port, pol), c))
            })
        })
    }

    pub fn photons(&self, pol: Polarization) -> u32 {
        self.sector(pol).iter().sum()
    }

    pub fn total_photons(&self) -> u32 {
        self.photons(Polarization::H) + self.photons(Polarization::V)
    }

    /// Photons per port, summed over polarization.
    pub fn spatial_counts(&self) -> Vec<u32> {
        self.h.iter().zip(&self.v).map(|(a, b)| a + b).collect()
    }

    fn check_port(&self, port: usize) -> Result<()> {
        if port >= self.n_ports {
            return Err(Error::invalid(format!(
                "port {port} out of range for {} ports",
                self.n_ports
            )));
        }
        Ok(())
    }

    fn sector_signature(&self) -> (usize, u32, u32) {
        (
            self.n_ports,
            self.photons(Polarization::H),
            self.photons(Polarization::V),
        )
    }
}

/// Ket notation: one symbol per port, e.g. `|H,H,V⟩` or `|1,0,0⟩` for
/// H-only states. Multiply or mixed occupied ports are written like `2H1V`.
impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h_only = self.v.iter().all(|&c| c == 0);
        let one_each = self.spatial_counts().iter().all(|&c| c == 1);
        let cells: Vec<String> = (0..self.n_ports)
            .map(|p| {
                let (h, v) = (self.h[p], self.v[p]);
                if h_only {
                    h.to_string()
                } else if one_each {
                    if h == 1 { "H" } else { "V" }.to_string()
                } else {
                    match (h, v) {
                        (0, 0) => "0".to_string(),
                        (h, 0) => format!("{h}H"),
                        (0, v) => format!("{v}V"),
                        (h, v) => format!("{h}H{v}V"),
                    }
                }
            })
            .collect();
        write!(f, "|{}⟩", cells.join(","))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OccRepr {
    port: usize,
    pol: Polarization,
    count: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FockRepr {
    #[serde(rename = "nPorts")]
    n_ports: usize,
    occ: Vec<OccRepr>,
}

impl From<FockState> for FockRepr {
    fn from(s: FockState) -> Self {
        FockRepr {
            n_ports: s.n_ports,
            occ: s
                .occupations()
                .map(|(m, count)| OccRepr {
                    port: m.port,
                    pol: m.pol,
                    count,
                })
                .collect(),
        }
    }
}

impl TryFrom<FockRepr> for FockState {
    type Error = Error;

    fn try_from(r: FockRepr) -> Result<Self> {
        let mut s = FockState::vacuum(r.n_ports)?;
        for o in r.occ {
            let mode = Mode::new(o.port, o.pol);
            s.check_port(o.port)?;
            if s.count(mode) > 0 {
                return Err(Error::invalid(format!(
                    "mode ({}, {}) listed twice",
                    o.port, o.pol
                )));
            }
            s.set_count(mode, o.count)?;
        }
        Ok(s)
    }
}

/// Normalized superposition of Fock states sharing the port count and the
/// photon number in each polarization.
///
/// The only state allowed to break normalization is the empty one (no
/// terms), which post-selection returns when nothing survives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct SuperposedState {
    n_ports: usize,
    terms: BTreeMap<FockState, Complex64>,
}

impl SuperposedState {
    /// Builds a normalized state. Duplicate basis states are summed and
    /// near-zero terms pruned.
    pub fn new(
        n_ports: usize,
        terms: impl IntoIterator<Item = (FockState, Complex64)>,
    ) -> Result<Self> {
        let state = Self::collect(n_ports, terms)?;
        if state.terms.is_empty() {
            return Err(Error::invalid("state has no terms"));
        }
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::Numerical(format!(
                "state is not normalized (Σ|amp|² = {norm})"
            )));
        }
        Ok(state)
    }

    /// The state with no terms, used for vanishing post-selection outcomes.
    pub fn empty(n_ports: usize) -> Self {
        SuperposedState {
            n_ports,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(state: FockState) -> Self {
        let n_ports = state.n_ports;
        SuperposedState {
            n_ports,
            terms: BTreeMap::from([(state, Complex64::new(1.0, 0.0))]),
        }
    }

    /// Sums, prunes and checks sector consistency without normalizing.
    fn collect(
        n_ports: usize,
        terms: impl IntoIterator<Item = (FockState, Complex64)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<FockState, Complex64> = BTreeMap::new();
        for (state, amp) in terms {
            if state.n_ports != n_ports {
                return Err(Error::invalid(format!(
                    "term has {} ports, expected {n_ports}",
                    state.n_ports
                )));
            }
            if !amp.re.is_finite() || !amp.im.is_finite() {
                return Err(Error::invalid("non-finite amplitude"));
            }
            match map.entry(state) {
                Entry::Occupied(mut e) => *e.get_mut() += amp,
                Entry::Vacant(e) => {
                    e.insert(amp);
                }
            }
        }
        map.retain(|_, a| a.norm() >= PRUNE_TOL);
        let mut signatures = map.keys().map(FockState::sector_signature);
        if let Some(first) = signatures.next() {
            if signatures.any(|s| s != first) {
                return Err(Error::invalid(
                    "terms differ in photon number per polarization",
                ));
            }
        }
        Ok(SuperposedState {
            n_ports,
            terms: map,
        })
    }

    /// Rescales the kept terms to unit norm. Fails on an all-zero input.
    pub(crate) fn renormalized(
        n_ports: usize,
        terms: impl IntoIterator<Item = (FockState, Complex64)>,
    ) -> Result<Self> {
        let mut state = Self::collect(n_ports, terms)?;
        let norm = state.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(Error::Numerical("cannot renormalize a zero state".into()));
        }
        for a in state.terms.values_mut() {
            *a /= norm;
        }
        Ok(state)
    }

    pub fn n_ports(&self) -> usize {
        self.n_ports
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&FockState, &Complex64)> + '_ {
        self.terms.iter()
    }

    pub fn amplitude(&self, state: &FockState) -> Complex64 {
        self.terms.get(state).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(Complex64::norm_sqr).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &SuperposedState) -> Result<Complex64> {
        if self.n_ports != other.n_ports {
            return Err(Error::invalid(format!(
                "states have {} and {} ports",
                self.n_ports, other.n_ports
            )));
        }
        let (small, large, conj_small) = if self.len() <= other.len() {
            (self, other, true)
        } else {
            (other, self, false)
        };
        Ok(small
            .terms
            .iter()
            .filter_map(|(k, a)| {
                large.terms.get(k).map(|b| {
                    if conj_small {
                        a.conj() * b
                    } else {
                        b.conj() * a
                    }
                })
            })
            .sum())
    }

    /// Largest amplitude difference over the union of both term sets.
    pub fn max_amplitude_diff(&self, other: &SuperposedState) -> f64 {
        let left = self
            .terms
            .iter()
            .map(|(k, a)| (a - other.amplitude(k)).norm());
        let right = other
            .terms
            .iter()
            .filter(|(k, _)| !self.terms.contains_key(k))
            .map(|(_, b)| b.norm());
        left.chain(right).fold(0.0, f64::max)
    }
}

impl fmt::Display for SuperposedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, a)| format!("({:+.6}{:+.6}i){}", a.re, a.im, k))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    state: FockState,
    #[serde(with = "serde_complex")]
    amp: Complex64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateRepr {
    #[serde(rename = "nPorts")]
    n_ports: usize,
    terms: Vec<TermRepr>,
}

impl From<SuperposedState> for StateRepr {
    fn from(s: SuperposedState) -> Self {
        StateRepr {
            n_ports: s.n_ports,
            terms: s
                .terms
                .into_iter()
                .map(|(state, amp)| TermRepr { state, amp })
                .collect(),
        }
    }
}

impl TryFrom<StateRepr> for SuperposedState {
    type Error = Error;

    fn try_from(r: StateRepr) -> Result<Self> {
        if r.terms.is_empty() {
            return Ok(SuperposedState::empty(r.n_ports));
        }
        SuperposedState::new(r.n_ports, r.terms.into_iter().map(|t| (t.state, t.amp)))
    }
}

/// Which W-state encoding a coefficient list describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WKind {
    /// One H photon spread over the ports.
    Path,
    /// One photon per port, a single V among H photons.
    Polarization,
}

/// One photon in `(port, pol)`, vacuum elsewhere.
pub fn single_photon_state(port: usize, pol: Polarization, n_ports: usize) -> Result<FockState> {
    FockState::vacuum(n_ports)?.with_count(Mode::new(port, pol), 1)
}

/// Occupation counts from a photon list; repeated modes accumulate.
pub fn product_input(photons: &[(usize, Polarization)], n_ports: usize) -> Result<FockState> {
    let mut s = FockState::vacuum(n_ports)?;
    for &(port, pol) in photons {
        let mode = Mode::new(port, pol);
        let c = s.count(mode);
        s.set_count(mode, c + 1)?;
    }
    Ok(s)
}

fn w_terms(n: usize, kind: WKind) -> Result<Vec<FockState>> {
    if n < 2 {
        return Err(Error::invalid("a W state needs n ≥ 2"));
    }
    (0..n)
        .map(|excited| {
            let mut s = FockState::vacuum(n)?;
            match kind {
                WKind::Path => s.set_count(Mode::new(excited, Polarization::H), 1)?,
                WKind::Polarization => {
                    for p in 0..n {
                        let pol = if p == excited {
                            Polarization::V
                        } else {
                            Polarization::H
                        };
                        s.set_count(Mode::new(p, pol), 1)?;
                    }
                }
            }
            Ok(s)
        })
        .collect()
}

fn uniform_w(n: usize, kind: WKind) -> Result<SuperposedState> {
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let terms = w_terms(n, kind)?;
    SuperposedState::new(n, terms.into_iter().map(|s| (s, amp)))
}

/// `(1/√n) Σ_k |photon at port k⟩`, all photons H.
pub fn w_state_path(n: usize) -> Result<SuperposedState> {
    uniform_w(n, WKind::Path)
}

/// `(1/√n) Σ_k |H…V_k…H⟩`: one photon per port, V at port k.
pub fn w_state_polarization(n: usize) -> Result<SuperposedState> {
    uniform_w(n, WKind::Polarization)
}

/// W-shaped state with arbitrary coefficients.
///
/// Coefficient `k` multiplies the term whose excitation (the photon for
/// [`WKind::Path`], the V photon for [`WKind::Polarization`]) sits at port
/// `n − 1 − k`, so the first coefficient goes with `|0…01⟩` / `|H…HV⟩`.
pub fn target_from_coefficients(coeffs: &TargetColumn, kind: WKind) -> Result<SuperposedState> {
    let n = coeffs.len();
    let terms = w_terms(n, kind)?;
    SuperposedState::new(
        n,
        coeffs
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(k, &a)| (terms[n - 1 - k].clone(), a)),
    )
}

/// Single-photon path state with amplitude `column[k]` at port `k`.
pub fn path_state_from_column(column: &[Complex64], pol: Polarization) -> Result<SuperposedState> {
    let n = column.len();
    let terms = column
        .iter()
        .enumerate()
        .map(|(k, &a)| Ok((single_photon_state(k, pol, n)?, a)))
        .collect::<Result<Vec<_>>>()?;
    SuperposedState::new(n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Polarization::{H, V};

    fn real(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn single_photon_inputs() {
        let s = single_photon_state(0, H, 3).unwrap();
        assert_eq!(s.sector(H), &[1, 0, 0]);
        assert_eq!(s.sector(V), &[0, 0, 0]);
        assert_eq!(
            s.occupations().collect::<Vec<_>>(),
            vec![(Mode::new(0, H), 1)]
        );

        let v3 = single_photon_state(2, V, 3).unwrap();
        assert_eq!(v3.count(Mode::new(2, V)), 1);
        assert_eq!(v3.total_photons(), 1);

        assert!(matches!(
            single_photon_state(5, H, 4),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn product_inputs() {
        let s = product_input(&[(0, H), (1, H), (2, V)], 3).unwrap();
        assert_eq!(s.sector(H), &[1, 1, 0]);
        assert_eq!(s.sector(V), &[0, 0, 1]);

        let bunched = product_input(&[(0, H), (0, H)], 2).unwrap();
        assert_eq!(bunched.count(Mode::new(0, H)), 2);
        assert_eq!(bunched.occupations().count(), 1);

        let four = product_input(&[(0, H), (1, H), (2, H), (3, V)], 4).unwrap();
        assert_eq!(four.photons(H), 3);
        assert_eq!(four.photons(V), 1);

        assert!(product_input(&[(0, H), (4, V)], 4).is_err());
    }

    #[test]
    fn canonical_form_ignores_zero_counts() {
        let s = product_input(&[(0, H), (1, V)], 3).unwrap();
        let t = s.clone().with_count(Mode::new(2, H), 0).unwrap();
        assert_eq!(s, t);
        let u = s
            .clone()
            .with_count(Mode::new(2, H), 3)
            .unwrap()
            .with_count(Mode::new(2, H), 0)
            .unwrap();
        assert_eq!(s, u);
    }

    #[test]
    fn path_w_states() {
        let w3 = w_state_path(3).unwrap();
        assert_eq!(w3.len(), 3);
        for k in 0..3 {
            let s = single_photon_state(k, H, 3).unwrap();
            assert_eq!(w3.amplitude(&s), real(1.0 / 3f64.sqrt()));
        }
        let w2 = w_state_path(2).unwrap();
        assert_eq!(
            w2.amplitude(&single_photon_state(1, H, 2).unwrap()),
            real(1.0 / 2f64.sqrt())
        );
        let w4 = w_state_path(4).unwrap();
        assert!(w4.terms().all(|(_, a)| *a == real(0.5)));
        assert!(w_state_path(1).is_err());
    }

    #[test]
    fn polarization_w_states() {
        let w3 = w_state_polarization(3).unwrap();
        let hhv = product_input(&[(0, H), (1, H), (2, V)], 3).unwrap();
        let hvh = product_input(&[(0, H), (1, V), (2, H)], 3).unwrap();
        let vhh = product_input(&[(0, V), (1, H), (2, H)], 3).unwrap();
        for s in [&hhv, &hvh, &vhh] {
            assert_eq!(w3.amplitude(s), real(1.0 / 3f64.sqrt()));
        }
        assert_eq!(w3.len(), 3);

        let w4 = w_state_polarization(4).unwrap();
        assert_eq!(w4.len(), 4);
        assert!(w4
            .terms()
            .all(|(k, a)| *a == real(0.5) && k.photons(V) == 1 && k.photons(H) == 3));

        let w2 = w_state_polarization(2).unwrap();
        assert_eq!(w2.len(), 2);
        assert!(w_state_polarization(0).is_err());
    }

    #[test]
    fn coefficient_order_puts_first_coefficient_on_last_port() {
        let t = TargetColumn::from_real(&[1.0, 0.0, 0.0]).unwrap();
        let s = target_from_coefficients(&t, WKind::Path).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(
            s.amplitude(&single_photon_state(2, H, 3).unwrap()),
            real(1.0)
        );

        let a = (2.0f64 / 3.0).sqrt();
        let b = -(1.0f64 / 6.0).sqrt();
        let clone =
            target_from_coefficients(&TargetColumn::from_real(&[a, b, b]).unwrap(), WKind::Path)
                .unwrap();
        assert_eq!(
            clone.amplitude(&single_photon_state(2, H, 3).unwrap()),
            real(a)
        );
        assert_eq!(
            clone.amplitude(&single_photon_state(0, H, 3).unwrap()),
            real(b)
        );

        let pol = target_from_coefficients(
            &TargetColumn::from_real(&[0.6, 0.8]).unwrap(),
            WKind::Polarization,
        )
        .unwrap();
        let hv = product_input(&[(0, H), (1, V)], 2).unwrap();
        assert_eq!(pol.amplitude(&hv), real(0.6));

        assert!(
            target_from_coefficients(&TargetColumn::from_real(&[1.0]).unwrap(), WKind::Path)
                .is_err()
        );
    }

    #[test]
    fn uniform_coefficients_reproduce_w_constructors() {
        let s = 1.0 / 3f64.sqrt();
        let t = TargetColumn::from_real(&[s, s, s]).unwrap();
        let pol = target_from_coefficients(&t, WKind::Polarization).unwrap();
        assert!(pol.max_amplitude_diff(&w_state_polarization(3).unwrap()) < 1e-12);
        let path = target_from_coefficients(&t, WKind::Path).unwrap();
        assert!(path.max_amplitude_diff(&w_state_path(3).unwrap()) < 1e-12);
    }

    #[test]
    fn state_construction_checks() {
        let a = single_photon_state(0, H, 2).unwrap();
        let b = single_photon_state(1, V, 2).unwrap();
        assert!(SuperposedState::new(2, [(a.clone(), real(0.6)), (b, real(0.8))]).is_err());
        assert!(SuperposedState::new(2, [(a.clone(), real(0.5))]).is_err());
        // duplicates are summed
        let s = SuperposedState::new(2, [(a.clone(), real(0.5)), (a.clone(), real(0.5))]).unwrap();
        assert_eq!(s.len(), 1);
        // tiny terms are pruned
        let c = single_photon_state(1, H, 2).unwrap();
        let s = SuperposedState::new(2, [(a, real(1.0)), (c, real(1e-13))]).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn json_formats() {
        let s = product_input(&[(0, H), (1, H), (2, V)], 3).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"nPorts":3,"occ":[{"port":0,"pol":"H","count":1},{"port":1,"pol":"H","count":1},{"port":2,"pol":"V","count":1}]}"#
        );
        let back: FockState = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);

        let dup =
            r#"{"nPorts":2,"occ":[{"port":0,"pol":"H","count":1},{"port":0,"pol":"H","count":1}]}"#;
        assert!(serde_json::from_str::<FockState>(dup).is_err());
        let oob = r#"{"nPorts":2,"occ":[{"port":2,"pol":"H","count":1}]}"#;
        assert!(serde_json::from_str::<FockState>(oob).is_err());
        let zero = r#"{"nPorts":2,"occ":[{"port":1,"pol":"V","count":0}]}"#;
        assert_eq!(
            serde_json::from_str::<FockState>(zero).unwrap(),
            FockState::vacuum(2).unwrap()
        );

        let w = w_state_polarization(3).unwrap();
        let text = serde_json::to_string(&w).unwrap();
        assert!(text.starts_with(r#"{"nPorts":3,"terms":[{"state":"#));
        let back: SuperposedState = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn display_notation() {
        let s = product_input(&[(0, H), (1, H), (2, V)], 3).unwrap();
        assert_eq!(s.to_string(), "|H,H,V⟩");
        assert_eq!(single_photon_state(0, H, 3).unwrap().to_string(), "|1,0,0⟩");
        assert_eq!(
            product_input(&[(0, H), (0, V)], 2).unwrap().to_string(),
            "|1H1V,0⟩"
        );
    }
}
