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

//! Command-line front end for the `wstate` simulator.
//!
//! Exit codes: 0 on success, 2 for invalid input (arguments, unreadable or
//! malformed files, unwritable outputs), 3 for numerical or capacity
//! failures.

pub mod format;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use wstate::evolve::evolve;
use wstate::fock::{FockState, SuperposedState};
use wstate::linalg::{
    complete_unitary_from_column, dft_multiport, verify_unitary, ComplexMatrix, MultiportUnitary,
    TargetColumn, UNITARY_TOL,
};
use wstate::postselect::{
    branch_amplitude_report, postselect, CoincidencePattern, PostSelectionResult,
};
use wstate::schemes::{run_path_w, run_polarization_w, SchemeReport};
use wstate::Error;

use crate::format::{annotated, complex, csv_field, sig12};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "wstate",
    version,
    about = "Exact simulation of W-state generation in multiport couplers"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Lossless, full double precision.
    Json,
    /// 12 significant digits.
    Csv,
    /// 12 significant digits, aligned for reading.
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the n-port DFT coupler matrix.
    Multiport {
        #[arg(long)]
        n: usize,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One photon through the n-port DFT coupler.
    PathW {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        input_port: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// n photons (one V) through a symmetric coupler, one photon per output.
    PolarW {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Complete a target column (JSON array of [re, im]) to a coupler.
    Design {
        #[arg(long)]
        input: PathBuf,
        /// Output matrix file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve a Fock state through a coupler matrix file.
    Evolve {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        input: PathBuf,
        /// `one-per-port`, or `PORT:COUNT[,PORT:COUNT...]`.
        #[arg(long)]
        postselect: Option<String>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
}

/// A command failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => Failure::invalid(m),
            Error::CapacityExceeded(m) => Failure::numerical(format!("capacity exceeded: {m}")),
            Error::Numerical(m) => Failure::numerical(m),
        }
    }
}

type CmdResult = Result<String, Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{e}");
            return code;
        }
    };
    let result = match cli.command {
        Command::Multiport { n, out } => cmd_multiport(n, out.as_deref()),
        Command::PathW {
            n,
            input_port,
            format,
        } => cmd_path_w(n, input_port, format),
        Command::PolarW { n, format } => cmd_polar_w(n, format),
        Command::Design { input, out } => cmd_design(&input, out.as_deref()),
        Command::Evolve {
            matrix,
            input,
            postselect,
            format,
        } => cmd_evolve(&matrix, &input, postselect.as_deref(), format),
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (fs::canonicalize(a), fs::canonicalize(b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

pub fn cmd_multiport(n: usize, out: Option<&Path>) -> CmdResult {
    let u = dft_multiport(n)?;
    let json = u.matrix().to_json()? + "\n";
    match out {
        Some(path) => {
            write_file(path, &json)?;
            Ok(format!("wrote {n}×{n} multiport to {}\n", path.display()))
        }
        None => Ok(json),
    }
}

pub fn cmd_path_w(n: usize, input_port: usize, format: OutputFormat) -> CmdResult {
    let report = run_path_w(n, input_port)?;
    Ok(match format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            let mut s = String::from("port,probability\n");
            for (port, p) in report.port_probabilities().iter().enumerate() {
                let _ = writeln!(s, "{port},{}", sig12(*p));
            }
            s
        }
        OutputFormat::Table => {
            let mut s = report_header(&report);
            let _ = writeln!(s, "{:<6}{:<40}probability", "port", "amplitude");
            let amps = report.port_amplitudes();
            for (port, p) in report.port_probabilities().iter().enumerate() {
                let _ = writeln!(s, "{port:<6}{:<40}{}", complex(amps[port]), annotated(*p));
            }
            s
        }
    })
}

pub fn cmd_polar_w(n: usize, format: OutputFormat) -> CmdResult {
    let report = run_polarization_w(n)?;
    let selection = report
        .post_selection
        .as_ref()
        .expect("polarization runs always post-select");
    Ok(match format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            let mut s = String::from("metric,value\n");
            let rows = [
                ("scheme", report.scheme_kind.to_string()),
                ("n", n.to_string()),
                ("probability", sig12(report.success_probability)),
                ("dropped_probability", sig12(selection.dropped_probability)),
                ("fidelity", sig12(report.fidelity_to_target)),
                ("kept_terms", selection.kept_terms.to_string()),
                ("reference", report.reference.clone()),
            ];
            for (k, v) in rows {
                let _ = writeln!(s, "{k},{}", csv_field(&v));
            }
            s
        }
        OutputFormat::Table => {
            let mut s = report_header(&report);
            let _ = writeln!(s, "{:<22}{}", "kept terms", selection.kept_terms);
            let _ = writeln!(
                s,
                "{:<22}{}",
                "dropped probability",
                annotated(selection.dropped_probability)
            );
            s.push_str("coincidence branches (before renormalization):\n");
            s.push_str(&branch_table(&branch_amplitude_report(
                &report.output_state,
                &CoincidencePattern::OnePerPort,
            )?));
            s
        }
    })
}

fn report_header(report: &SchemeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<22}{}", "scheme", report.scheme_kind);
    let _ = writeln!(s, "{:<22}{}", "ports", report.n);
    let _ = writeln!(s, "{:<22}{}", "input", report.input);
    let _ = writeln!(
        s,
        "{:<22}{}",
        "probability",
        annotated(report.success_probability)
    );
    let _ = writeln!(s, "{:<22}{}", "reference", report.reference);
    let _ = writeln!(s, "{:<22}{}", "fidelity", sig12(report.fidelity_to_target));
    let _ = writeln!(
        s,
        "{:<22}{}",
        "distribution match",
        if report.distribution_match {
            "yes"
        } else {
            "no"
        }
    );
    s
}

fn branch_table(branches: &[(FockState, Complex64)]) -> String {
    let mut s = String::new();
    for (state, amp) in branches {
        let _ = writeln!(
            s,
            "  {:<20}{:<40}{}",
            state.to_string(),
            complex(*amp),
            annotated(amp.norm_sqr())
        );
    }
    s
}

fn parse_target(text: &str) -> Result<TargetColumn, Failure> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text)
        .map_err(|e| Failure::invalid(format!("malformed target file: {e}")))?;
    Ok(TargetColumn::new(
        pairs
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect(),
    )?)
}

pub fn cmd_design(input: &Path, out: Option<&Path>) -> CmdResult {
    if let Some(path) = out {
        if same_file(input, path) {
            return Err(Failure::invalid("refusing to overwrite the input file"));
        }
    }
    let target = parse_target(&read_file(input)?)?;
    let u = complete_unitary_from_column(&target)?;

    let column_dev = target
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(j, c)| (u[(j, 0)] - c).norm())
        .fold(0.0, f64::max);
    let unitarity_dev = u.matrix().unitarity_deviation()?;
    let column_ok = column_dev <= 1e-10;
    let unitary_ok = verify_unitary(u.matrix(), UNITARY_TOL)?;
    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };

    let mut s = String::new();
    let json = u.matrix().to_json()? + "\n";
    match out {
        Some(path) => write_file(path, &json)?,
        None => s.push_str(&json),
    }
    let _ = writeln!(
        s,
        "column match: {} (max deviation {column_dev:.3e})",
        verdict(column_ok)
    );
    let _ = writeln!(
        s,
        "unitarity: {} (max |U†U − I| = {unitarity_dev:.3e})",
        verdict(unitary_ok)
    );
    if !(column_ok && unitary_ok) {
        return Err(Failure::numerical(format!(
            "design verification failed\n{s}"
        )));
    }
    if let Some(path) = out {
        let _ = writeln!(s, "wrote {}×{} unitary to {}", u.n(), u.n(), path.display());
    }
    Ok(s)
}

/// Parses `one-per-port` or `PORT:COUNT[,PORT:COUNT...]`.
pub fn parse_pattern(spec: &str) -> Result<CoincidencePattern, Failure> {
    if spec == "one-per-port" {
        return Ok(CoincidencePattern::OnePerPort);
    }
    let bad = || Failure::invalid(format!("cannot parse coincidence pattern {spec:?}"));
    let mut required = Vec::new();
    for item in spec.split(',') {
        let (port, count) = item.split_once(':').ok_or_else(bad)?;
        required.push((
            port.trim().parse().map_err(|_| bad())?,
            count.trim().parse().map_err(|_| bad())?,
        ));
    }
    Ok(CoincidencePattern::ports(required)?)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct EvolveReport<'a> {
    output: &'a SuperposedState,
    #[serde(skip_serializing_if = "Option::is_none")]
    post_selection: Option<&'a PostSelectionResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    branches: Option<Vec<Branch>>,
}

#[derive(Serialize)]
struct Branch {
    state: FockState,
    amp: [f64; 2],
}

pub fn cmd_evolve(
    matrix: &Path,
    input: &Path,
    pattern: Option<&str>,
    format: OutputFormat,
) -> CmdResult {
    let pattern = pattern.map(parse_pattern).transpose()?;
    let m = ComplexMatrix::from_json(&read_file(matrix)?)?;
    if m.rows() < 2 {
        return Err(Failure::invalid("coupler matrix needs at least 2 ports"));
    }
    if !verify_unitary(&m, UNITARY_TOL)? {
        return Err(Failure::numerical(format!(
            "matrix not unitary within {UNITARY_TOL:e}"
        )));
    }
    let u = MultiportUnitary::new(m)?;
    let state: FockState = serde_json::from_str(&read_file(input)?)
        .map_err(|e| Failure::invalid(format!("malformed input state: {e}")))?;
    if state.n_ports() != u.n() {
        return Err(Failure::invalid(format!(
            "input state has {} ports but the matrix has {}",
            state.n_ports(),
            u.n()
        )));
    }

    let output = evolve(&u, &state)?;
    let selected = match &pattern {
        Some(p) => Some((
            postselect(&output, p)?,
            branch_amplitude_report(&output, p)?,
        )),
        None => None,
    };

    Ok(match format {
        OutputFormat::Json => to_json(&EvolveReport {
            output: &output,
            post_selection: selected.as_ref().map(|(r, _)| r),
            branches: selected.as_ref().map(|(_, b)| {
                b.iter()
                    .map(|(state, a)| Branch {
                        state: state.clone(),
                        amp: [a.re, a.im],
                    })
                    .collect()
            }),
        }),
        OutputFormat::Csv => {
            let mut s = String::from("state,re,im,probability");
            s.push_str(if pattern.is_some() {
                ",selected\n"
            } else {
                "\n"
            });
            for (k, a) in output.terms() {
                let _ = write!(
                    s,
                    "{},{},{},{}",
                    csv_field(&k.to_string()),
                    sig12(a.re),
                    sig12(a.im),
                    sig12(a.norm_sqr())
                );
                if let Some(p) = &pattern {
                    let _ = write!(s, ",{}", p.matches(k));
                }
                s.push('\n');
            }
            s
        }
        OutputFormat::Table => {
            let mut s = format!("output state ({} terms):\n", output.len());
            let terms: Vec<_> = output.terms().map(|(k, a)| (k.clone(), *a)).collect();
            s.push_str(&branch_table(&terms));
            if let Some((result, branches)) = &selected {
                let _ = writeln!(s, "{:<22}{}", "probability", annotated(result.probability));
                let _ = writeln!(
                    s,
                    "{:<22}{}",
                    "dropped probability",
                    annotated(result.dropped_probability)
                );
                let _ = writeln!(s, "{:<22}{}", "kept terms", result.kept_terms);
                s.push_str("selected branches (before renormalization):\n");
                s.push_str(&branch_table(branches));
                if result.vanished() {
                    s.push_str("no term survives post-selection\n");
                }
            }
            s
        }
    })
}
