//! Command implementations behind the `ghzcanon` binary.
//!
//! Every command returns an [`Outcome`]: a JSON report (sorted keys, floats at
//! 12 significant digits) and an exit code. Reports are produced even on
//! failure, with `verdict` and `error` fields saying what went wrong.

mod matrix_file;
mod report;
mod selftest;

use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

pub use matrix_file::{load_matrix, matrix_to_string, parse_matrix, save_matrix, LoadError, MatrixFile};
pub use report::{normalize, render, round_sig, to_value};
pub use selftest::cmd_selftest;

use crate::canon::{canonicalize, verify};
use crate::error::Error;
use crate::ghz::{
    build_ghz_set, check_mutual_commutation, ghz_state, joint_eigenvalues, lhv_search, triviality_report, GhzSet,
    LocalPair, TrivialityReport, TupleKind,
};
use crate::matkit::{ComplexMatrix, HermitianOperator};
use crate::omega::{best_fit_omega, classify, OmegaKind};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: u8,
    pub report: Value,
}

impl Outcome {
    pub fn render(&self) -> String {
        render(&self.report)
    }

    pub fn error(&self) -> Option<&str> {
        self.report.get("error").and_then(Value::as_str)
    }
}

/// Why a command stopped early; selects the exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
    Precondition(String),
    Verification(String),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Library errors that reflect the operators rather than the invocation.
fn library_failure(e: Error) -> Failure {
    match e {
        Error::NotHermitian { .. } | Error::NotAnticommuting { .. } | Error::AnticommutationViolated(_) => {
            Failure::Precondition(e.to_string())
        }
        Error::NoConvergence { .. } | Error::NotUnitary { .. } => Failure::Verification(e.to_string()),
        _ => Failure::Input(e.to_string()),
    }
}

fn finish(mut report: Map<String, Value>, result: Result<(), Failure>) -> Outcome {
    let (exit_code, verdict, error) = match result {
        Ok(()) => (EXIT_OK, "pass", None),
        Err(Failure::Input(m)) => (EXIT_INPUT, "input-error", Some(m)),
        Err(Failure::Precondition(m)) => (EXIT_PRECONDITION, "precondition-failed", Some(m)),
        Err(Failure::Verification(m)) => (EXIT_VERIFICATION, "verification-failed", Some(m)),
    };
    report.insert("verdict".into(), verdict.into());
    if let Some(m) = error {
        report.insert("error".into(), m.into());
    }
    let mut report = Value::Object(report);
    normalize(&mut report);
    Outcome { exit_code, report }
}

fn header(command: &str, tol: f64) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), command.into());
    m.insert("tol".into(), tol.into());
    m
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Failure::Input(format!("tolerance must be positive and finite, got {tol}")))
    }
}

fn digest(path: &Path, m: &ComplexMatrix) -> Value {
    json!({
        "path": path.display().to_string(),
        "dim": m.rows(),
        "frobenius_norm": m.frobenius_norm(),
        "hermiticity_defect": m.hermiticity_defect().unwrap_or(f64::NAN),
    })
}

/// Load a matrix, record its digest under `key`, and require it Hermitian within `tol`.
fn load_operator(path: &Path, tol: f64, key: &str, inputs: &mut Map<String, Value>) -> Result<HermitianOperator, Failure> {
    let m = load_matrix(path)?;
    inputs.insert(key.into(), digest(path, &m));
    if !m.is_square() {
        return Err(Failure::Input(format!("{}: matrix is not square", path.display())));
    }
    HermitianOperator::with_tol(m, tol).map_err(|e| Failure::Precondition(format!("{}: {e}", path.display())))
}

fn load_pair(a: &Path, b: &Path, tol: f64, report: &mut Map<String, Value>) -> Result<(HermitianOperator, HermitianOperator), Failure> {
    let mut inputs = Map::new();
    let loaded = (|| {
        let ha = load_operator(a, tol, "a", &mut inputs)?;
        let hb = load_operator(b, tol, "b", &mut inputs)?;
        if ha.dim() != hb.dim() {
            return Err(Failure::Input(format!("dimension mismatch: A is {0}x{0}, B is {1}x{1}", ha.dim(), hb.dim())));
        }
        Ok((ha, hb))
    })();
    report.insert("inputs".into(), Value::Object(inputs));
    loaded
}

fn omega_value(a: &HermitianOperator, b: &HermitianOperator, tol: f64) -> Result<(OmegaKind, Value), Failure> {
    let class = classify(a, b, tol).map_err(library_failure)?;
    let mut v = to_value(&class);
    let fit = best_fit_omega(a, b).map_err(library_failure)?;
    v["best_fit_omega"] = fit.map_or(Value::Null, |w| json!([w.re, w.im]));
    Ok((class.kind, v))
}

/// Classify the phase relation of a pair of matrix files.
pub fn cmd_analyze(a_path: &Path, b_path: &Path, tol: f64) -> Outcome {
    let mut report = header("analyze", tol);
    let result = (|| {
        check_tol(tol)?;
        let (a, b) = load_pair(a_path, b_path, tol, &mut report)?;
        let (_, omega) = omega_value(&a, &b, tol)?;
        report.insert("omega".into(), omega);
        Ok(())
    })();
    finish(report, result)
}

/// Canonicalize an anticommuting pair and verify the result.
pub fn cmd_canon(a_path: &Path, b_path: &Path, tol: f64) -> Outcome {
    let mut report = header("canon", tol);
    let result = (|| {
        check_tol(tol)?;
        let (a, b) = load_pair(a_path, b_path, tol, &mut report)?;
        let (kind, omega) = omega_value(&a, &b, tol)?;
        report.insert("omega".into(), omega);
        if !matches!(kind, OmegaKind::Anticommute | OmegaKind::Degenerate) {
            return Err(Failure::Precondition(format!("pair is classified {kind:?}, not anticommuting")));
        }
        let cf = canonicalize(&a, &b, tol).map_err(library_failure)?;
        let check = verify(&a, &b, &cf, tol);
        report.insert("blocks".into(), to_value(&cf.blocks));
        report.insert("tolerances".into(), to_value(&cf.tolerances));
        report.insert("transform".into(), to_value(&MatrixFile::from_matrix(cf.transform.matrix())));
        report.insert("verify".into(), to_value(&check));
        if check.passed {
            Ok(())
        } else {
            Err(Failure::Verification(format!(
                "reconstruction residuals ({:.3e}, {:.3e}) exceed {:.3e}",
                check.residual_a, check.residual_b, check.bound
            )))
        }
    })();
    finish(report, result)
}

fn load_local_pairs(pairs: &[(PathBuf, PathBuf)], tol: f64, report: &mut Map<String, Value>) -> Result<Vec<LocalPair>, Failure> {
    if pairs.len() < 3 {
        return Err(Failure::Input(format!("at least 3 local pairs are required, got {}", pairs.len())));
    }
    let mut digests = Vec::new();
    let loaded = pairs
        .iter()
        .map(|(a, b)| {
            let mut entry = Map::new();
            let pair = load_pair(a, b, tol, &mut entry);
            let pair = pair.and_then(|(ha, hb)| {
                let (_, omega) = omega_value(&ha, &hb, tol)?;
                entry.insert("omega".into(), omega);
                LocalPair::new(ha, hb).map_err(library_failure)
            });
            digests.push(Value::Object(entry));
            pair
        })
        .collect::<Result<Vec<_>, _>>();
    report.insert("local_pairs".into(), Value::Array(digests));
    loaded
}

fn build_set(pairs: &[LocalPair], tol: f64) -> Result<GhzSet, Failure> {
    build_ghz_set(pairs, tol).map_err(library_failure)
}

/// Joint eigenvalues of the constrained observables on the GHZ state, when
/// every party is a qubit and the state is a common eigenstate.
fn direct_eigenvalues(gs: &GhzSet, tol: f64) -> Option<Result<Vec<f64>, Error>> {
    if gs.local_dims().iter().any(|&d| d != 2) {
        return None;
    }
    let ops = gs.constrained_observables();
    let scale = ops.iter().map(|o| o.frobenius_norm()).fold(1.0, f64::max);
    let psi = ghz_state(gs.parties()).ok()?;
    let mats: Vec<&ComplexMatrix> = ops.iter().map(|o| o.matrix()).collect();
    Some(joint_eigenvalues(&mats, &psi, tol * scale))
}

fn triviality_value(r: &TrivialityReport) -> Value {
    let tuples: Vec<Value> = r
        .tuples
        .iter()
        .map(|t| {
            let mut v = to_value(&t.kind);
            v["blocks"] = json!(t.blocks);
            v["dim"] = json!(t.dim());
            v
        })
        .collect();
    let forms: Vec<Value> = r.local_forms.iter().map(|f| to_value(&f.blocks)).collect();
    json!({
        "total_dim": r.total_dim,
        "local_blocks": forms,
        "tuples": tuples,
        "ghz_copies": r.ghz_copies().count(),
        "max_off_tuple": r.max_off_tuple,
        "block_diagonal": r.block_diagonal,
        "partition_complete": r.partition_complete,
        "trivial": r.is_trivial(),
    })
}

/// Build the GHZ operator set, check it, and decompose it into spin-1/2 copies.
pub fn cmd_ghz(pairs: &[(PathBuf, PathBuf)], tol: f64) -> Outcome {
    let mut report = header("ghz", tol);
    let result = (|| {
        check_tol(tol)?;
        let local = load_local_pairs(pairs, tol, &mut report)?;
        let gs = build_set(&local, tol)?;
        report.insert("parties".into(), gs.parties().into());
        report.insert("local_dims".into(), json!(gs.local_dims()));
        report.insert("product_sign".into(), json!(gs.product_sign));
        let comm = check_mutual_commutation(&gs, tol);
        report.insert("commutation".into(), to_value(&comm));
        if let Some(direct) = direct_eigenvalues(&gs, tol) {
            let v = match direct {
                Ok(l) => json!({ "values": l }),
                Err(e) => json!({ "values": null, "reason": e.to_string() }),
            };
            report.insert("joint_eigenvalues".into(), v);
        }
        let triv = triviality_report(&local, tol).map_err(library_failure)?;
        report.insert("triviality".into(), triviality_value(&triv));
        if !comm.passed {
            return Err(Failure::Verification(format!(
                "GHZ operators fail to commute (max commutator norm {:.3e})",
                comm.max_norm
            )));
        }
        if !triv.is_trivial() {
            return Err(Failure::Verification("block-tuple decomposition failed".into()));
        }
        Ok(())
    })();
    finish(report, result)
}

/// Count local assignments reproducing `targets` for `(O_1, …, O_n, ⊗A)`.
///
/// Without explicit targets the quantum values on the GHZ state are used,
/// taken directly for qubit parties or from the spin-1/2 copy otherwise.
pub fn cmd_lhv(pairs: &[(PathBuf, PathBuf)], targets: Option<&[f64]>, tol: f64) -> Outcome {
    let mut report = header("lhv", tol);
    let result = (|| {
        check_tol(tol)?;
        let local = load_local_pairs(pairs, tol, &mut report)?;
        let gs = build_set(&local, tol)?;
        let targets = match targets {
            Some(t) => t.to_vec(),
            None => quantum_targets(&gs, &local, tol)?,
        };
        if targets.len() != gs.parties() + 1 {
            return Err(Failure::Input(format!(
                "{} targets given; {} parties need {}",
                targets.len(),
                gs.parties(),
                gs.parties() + 1
            )));
        }
        let r = lhv_search(&gs, &targets, tol).map_err(library_failure)?;
        report.insert("targets".into(), json!(targets));
        report.insert("total_assignments".into(), r.total_assignments.into());
        report.insert("satisfying_count".into(), r.satisfying.len().into());
        report.insert("satisfying".into(), to_value(&r.satisfying.iter().map(|s| &s.values).collect::<Vec<_>>()));
        Ok(())
    })();
    finish(report, result)
}

fn quantum_targets(gs: &GhzSet, local: &[LocalPair], tol: f64) -> Result<Vec<f64>, Failure> {
    if let Some(Ok(l)) = direct_eigenvalues(gs, tol) {
        return Ok(l);
    }
    let triv = triviality_report(local, tol).map_err(library_failure)?;
    let found = triv.ghz_copies().find_map(|t| match &t.kind {
        TupleKind::GhzCopy { joint_eigenvalues: Some(l), .. } => Some(l.clone()),
        _ => None,
    });
    found.ok_or_else(|| Failure::Input("no quantum targets available; pass --targets".into()))
}
