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

//! Number formatting for csv and table output.

/// `x` with 12 significant digits, trailing zeros trimmed (keeping one
/// digit after the point). Very large or small magnitudes use exponent form.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..12).contains(&mag) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - mag).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.push('0');
        }
    }
    s
}

/// `p/q` with the smallest `q ≤ 64` such that `|x − p/q| ≤ 1e-12`, skipping
/// integers.
pub fn rational(x: f64) -> Option<String> {
    for q in 2..=64i64 {
        let p = (x * q as f64).round();
        if (x - p / q as f64).abs() <= 1e-12 {
            let p = p as i64;
            if p % q == 0 {
                return None;
            }
            return Some(format!("{p}/{q}"));
        }
    }
    None
}

/// [`sig12`] plus a ` (p/q)` annotation when `x` is a small-denominator
/// fraction.
pub fn annotated(x: f64) -> String {
    match rational(x) {
        Some(r) => format!("{} ({r})", sig12(x)),
        None => sig12(x),
    }
}

pub fn complex(z: num_complex::Complex64) -> String {
    let im = sig12(z.im.abs());
    let sign = if z.im.is_sign_negative() && z.im != 0.0 {
        '-'
    } else {
        '+'
    };
    format!("{}{sign}{im}i", sig12(z.re))
}

/// Quotes a csv field if it contains a separator or quote.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
