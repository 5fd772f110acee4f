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

//! Dense complex matrices, multiport couplers, permanents and unitary
//! completion.
//!
//! Ports are zero-indexed throughout. Entry `(j, k)` of a coupler matrix is
//! the amplitude for a photon entering input port `k` to leave through
//! output port `j`.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::serde_complex::Pair;
use crate::{Error, Result};

/// Tolerance on `max |M†M − I|` for a matrix to count as unitary.
pub const UNITARY_TOL: f64 = 1e-10;

/// Tolerance on `|Σ|c_k|² − 1|` for a target column.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Largest matrix whose permanent will be computed.
pub const MAX_PERMANENT_SIZE: usize = 24;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have the same length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("rows have differing lengths"));
        }
        let data: Vec<Complex64> = rows.iter().flatten().copied().collect();
        Self::from_row_major(rows.len(), cols, data)
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries for a {rows}×{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("matrix has non-finite entries"));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..rows {
            for k in 0..cols {
                data.push(f(j, k));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.cols..(j + 1) * self.cols]
    }

    pub fn column(&self, k: usize) -> Vec<Complex64> {
        (0..self.rows).map(|j| self[(j, k)]).collect()
    }

    pub fn scale_row(&mut self, j: usize, s: Complex64) {
        let cols = self.cols;
        for z in &mut self.data[j * cols..(j + 1) * cols] {
            *z *= s;
        }
    }

    /// Submatrix with the given row and column indices. Indices may repeat.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows.len(), cols.len(), |a, b| self[(rows[a], cols[b])])
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid("matrix dimensions do not agree"));
        }
        Ok(ComplexMatrix::from_fn(self.rows, other.cols, |j, k| {
            (0..self.cols).map(|i| self[(j, i)] * other[(i, k)]).sum()
        }))
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |j, k| self[(k, j)].conj())
    }

    /// `max |(M†M − I)_jk|`. Requires a square matrix.
    pub fn unitarity_deviation(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::invalid(format!(
                "unitarity needs a square matrix, got {}×{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut worst = 0.0_f64;
        for j in 0..n {
            for k in 0..n {
                let mut acc: Complex64 = (0..n).map(|i| self[(i, j)].conj() * self[(i, k)]).sum();
                if j == k {
                    acc -= ONE;
                }
                worst = worst.max(acc.norm());
            }
        }
        Ok(worst)
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Option<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        Some(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max),
        )
    }

    /// Serializes in the `{ "n", "entries" }` matrix file format.
    pub fn to_json(&self) -> Result<String> {
        if !self.is_square() {
            return Err(Error::invalid(
                "the matrix file format holds square matrices only",
            ));
        }
        let file = MatrixFile::from(self);
        Ok(serde_json::to_string_pretty(&file).expect("matrix serialization cannot fail"))
    }

    /// Parses the `{ "n", "entries" }` matrix file format.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: MatrixFile = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("malformed matrix file: {e}")))?;
        ComplexMatrix::try_from(file)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (j, k): (usize, usize)) -> &Complex64 {
        assert!(
            j < self.rows && k < self.cols,
            "index ({j}, {k}) out of bounds"
        );
        &self.data[j * self.cols + k]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut Complex64 {
        assert!(
            j < self.rows && k < self.cols,
            "index ({j}, {k}) out of bounds"
        );
        &mut self.data[j * self.cols + k]
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.rows {
            let cells: Vec<String> = self
                .row(j)
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// On-disk matrix layout: `{ "n": n, "entries": [[re, im], ...] }`, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    n: usize,
    entries: Vec<Pair>,
}

impl From<&ComplexMatrix> for MatrixFile {
    fn from(m: &ComplexMatrix) -> Self {
        MatrixFile {
            n: m.rows,
            entries: m.data.iter().copied().map(Pair).collect(),
        }
    }
}

impl TryFrom<MatrixFile> for ComplexMatrix {
    type Error = Error;

    fn try_from(file: MatrixFile) -> Result<Self> {
        if file.n == 0 {
            return Err(Error::invalid("matrix file has n = 0"));
        }
        if file.entries.len() != file.n * file.n {
            return Err(Error::invalid(format!(
                "matrix file is not square: n = {} but {} entries",
                file.n,
                file.entries.len()
            )));
        }
        ComplexMatrix::from_row_major(
            file.n,
            file.n,
            file.entries.into_iter().map(|p| p.0).collect(),
        )
    }
}

/// Transfer matrix of a lossless N-port coupler. Always square, `n ≥ 2`,
/// and unitary within [`UNITARY_TOL`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixFile", into = "MatrixFile")]
pub struct MultiportUnitary(ComplexMatrix);

impl MultiportUnitary {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::invalid(format!(
                "coupler matrix must be square, got {}×{}",
                matrix.rows, matrix.cols
            )));
        }
        if matrix.rows < 2 {
            return Err(Error::invalid("a coupler needs at least 2 ports"));
        }
        let dev = matrix.unitarity_deviation()?;
        if dev > UNITARY_TOL {
            return Err(Error::Numerical(format!(
                "matrix not unitary within {UNITARY_TOL:e} (max |M†M − I| = {dev:e})"
            )));
        }
        Ok(MultiportUnitary(matrix))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(ComplexMatrix::identity(n))
    }

    /// Number of ports.
    pub fn n(&self) -> usize {
        self.0.rows
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// Amplitude for input port `input` to reach output port `output`.
    pub fn amplitude(&self, output: usize, input: usize) -> Complex64 {
        self.0[(output, input)]
    }
}

impl std::ops::Index<(usize, usize)> for MultiportUnitary {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

impl From<MultiportUnitary> for MatrixFile {
    fn from(u: MultiportUnitary) -> Self {
        MatrixFile::from(&u.0)
    }
}

impl TryFrom<MatrixFile> for MultiportUnitary {
    type Error = Error;

    fn try_from(file: MatrixFile) -> Result<Self> {
        MultiportUnitary::new(ComplexMatrix::try_from(file)?)
    }
}

/// A normalized complex column, the amplitudes a coupler should deliver
/// from input port 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetColumn(Vec<Complex64>);

impl TargetColumn {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::invalid("target column is empty"));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::invalid("target column has non-finite entries"));
        }
        let norm: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::invalid(format!(
                "target column is not normalized (Σ|c|² = {norm})"
            )));
        }
        Ok(TargetColumn(amplitudes))
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }
}

/// `exp(2πi · m / n)` with exact values on the quarter turns.
fn root_of_unity(m: usize, n: usize) -> Complex64 {
    let m = m % n;
    if (4 * m).is_multiple_of(n) {
        return match 4 * m / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, TAU * m as f64 / n as f64)
}

fn inv_sqrt(n: usize) -> f64 {
    if n == 2 {
        FRAC_1_SQRT_2
    } else {
        1.0 / (n as f64).sqrt()
    }
}

/// The symmetric N-port coupler with entries `exp(2πi·jk/n)/√n`.
///
/// At `n = 3` this is the tritter, at `n = 2` the balanced beam splitter.
pub fn dft_multiport(n: usize) -> Result<MultiportUnitary> {
    if n < 2 {
        return Err(Error::invalid("n must be ≥ 2"));
    }
    let scale = inv_sqrt(n);
    let m = ComplexMatrix::from_fn(n, n, |j, k| root_of_unity(j * k, n) * scale);
    MultiportUnitary::new(m)
}

/// The Sylvester–Hadamard coupler, entries `(−1)^{popcount(j & k)}/√n`.
///
/// Real and symmetric with a real first row and column. For `n = 4` it is,
/// up to swapping ports 1 and 2, the `φ = 0` member of the symmetric
/// four-port family
/// `[[1,1,1,1],[1,e^{iφ},−1,−e^{iφ}],[1,−1,1,−1],[1,−e^{iφ},−1,e^{iφ}]]/2`,
/// whose `φ = π/2` member is the 4-point DFT. `n` must be a power of two.
pub fn hadamard_multiport(n: usize) -> Result<MultiportUnitary> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::invalid("n must be a power of two ≥ 2"));
    }
    let scale = inv_sqrt(n);
    let m = ComplexMatrix::from_fn(n, n, |j, k| {
        let sign = if (j & k).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        Complex64::new(sign * scale, 0.0)
    });
    MultiportUnitary::new(m)
}

/// Whether `max |M†M − I| ≤ tol`.
pub fn verify_unitary(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    Ok(m.unitarity_deviation()? <= tol)
}

fn check_permanent_input(m: &ComplexMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::invalid(format!(
            "permanent needs a square matrix, got {}×{}",
            m.rows, m.cols
        )));
    }
    if m.rows == 0 {
        return Err(Error::invalid("permanent of an empty matrix"));
    }
    if m.rows > MAX_PERMANENT_SIZE {
        return Err(Error::capacity(format!(
            "permanent size {} exceeds the limit of {MAX_PERMANENT_SIZE}",
            m.rows
        )));
    }
    Ok(m.rows)
}

/// Permanent by Ryser's inclusion–exclusion formula, walking column subsets
/// in Gray-code order so each step adds or removes one column: O(2^k · k).
pub fn permanent(m: &ComplexMatrix) -> Result<Complex64> {
    let k = check_permanent_input(m)?;
    let mut row_sums = vec![ZERO; k];
    let mut subset: u32 = 0;
    let mut total = ZERO;
    for step in 1u32..(1u32 << k) {
        let col = step.trailing_zeros() as usize;
        let bit = 1u32 << col;
        subset ^= bit;
        if subset & bit != 0 {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += m[(i, col)];
            }
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= m[(i, col)];
            }
        }
        let prod: Complex64 = row_sums.iter().product();
        if subset.count_ones().is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(if k % 2 == 0 { total } else { -total })
}

/// Permanent by summing over all k! permutations. Reference for testing;
/// refuses k > 10.
pub fn permanent_naive(m: &ComplexMatrix) -> Result<Complex64> {
    let k = check_permanent_input(m)?;
    if k > 10 {
        return Err(Error::capacity("naive permanent is limited to k ≤ 10"));
    }
    fn walk(m: &ComplexMatrix, row: usize, used: &mut [bool], acc: Complex64) -> Complex64 {
        if row == used.len() {
            return acc;
        }
        let mut sum = ZERO;
        for col in 0..used.len() {
            if !used[col] {
                used[col] = true;
                sum += walk(m, row + 1, used, acc * m[(row, col)]);
                used[col] = false;
            }
        }
        sum
    }
    Ok(walk(m, 0, &mut vec![false; k], ONE))
}

/// A unitary whose first column is `target`.
///
/// Writes `target = e^{iφ} c` with `c_0 ≥ 0` real and returns `e^{iφ} H`,
/// where `H = I − 2vv†/(v†v)` is the Householder reflection with
/// `v = e_0 − c`, which swaps `e_0` and `c`.
pub fn complete_unitary_from_column(target: &TargetColumn) -> Result<MultiportUnitary> {
    let c = target.amplitudes();
    let n = c.len();
    if n < 2 {
        return Err(Error::invalid("target column needs at least 2 entries"));
    }
    let tiny = 1e-12;
    if (ONE - c[0]).norm() < tiny && c[1..].iter().all(|z| z.norm() < tiny) {
        return MultiportUnitary::identity(n);
    }

    let phase = if c[0].norm() > 0.0 {
        c[0] / c[0].norm()
    } else {
        ONE
    };
    let aligned: Vec<Complex64> = c.iter().map(|z| z * phase.conj()).collect();

    let mut v: Vec<Complex64> = aligned.iter().map(|z| -z).collect();
    v[0] = Complex64::new(1.0 - aligned[0].re, 0.0);
    let v_norm_sqr: f64 = v.iter().map(Complex64::norm_sqr).sum();

    let m = if v_norm_sqr < tiny * tiny {
        ComplexMatrix::from_fn(n, n, |j, k| if j == k { phase } else { ZERO })
    } else {
        ComplexMatrix::from_fn(n, n, |j, k| {
            let delta = if j == k { ONE } else { ZERO };
            phase * (delta - v[j] * v[k].conj() * (2.0 / v_norm_sqr))
        })
    };
    let u = MultiportUnitary::new(m)?;

    let worst = (0..n)
        .map(|j| (u[(j, 0)] - c[j]).norm())
        .fold(0.0, f64::max);
    if worst > NORMALIZATION_TOL {
        return Err(Error::Numerical(format!(
            "completed unitary misses the target column by {worst:e}"
        )));
    }
    Ok(u)
}
