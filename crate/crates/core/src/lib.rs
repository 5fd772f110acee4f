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

//! Exact simulation of W-state generation with multiport fiber couplers.
//!
//! Two generation schemes are covered:
//!
//! * a single photon entering one port of an N×N coupler, which leaves the
//!   coupler as a one-photon *path* W state with certainty, and
//! * N single photons (N−1 horizontally and one vertically polarized)
//!   entering a symmetric N×N coupler, which yields a *polarization* W state
//!   once the output is post-selected on one photon per port.
//!
//! Everything is computed exactly from transition amplitudes (matrix
//! permanents); there is no sampling and no randomness.
//!
//! ```
//! use wstate::schemes::run_polarization_w;
//!
//! let report = run_polarization_w(3).unwrap();
//! assert!((report.success_probability - 1.0 / 9.0).abs() < 1e-12);
//! assert!((report.fidelity_to_target - 1.0).abs() < 1e-9);
//! ```

pub mod error;
pub mod evolve;
pub mod fock;
pub mod linalg;
pub mod postselect;
pub mod schemes;

mod serde_complex;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Amplitude of a single basis term or matrix entry.
pub type Amplitude = Complex64;
