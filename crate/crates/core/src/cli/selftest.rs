//! Seeded invariant suite: canonical round-trips, the phase scan, and the
//! GHZ identities.

use serde_json::{json, Map, Value};

use super::{finish, header, Failure, Outcome};
use crate::canon::{canonicalize, random_anticommuting_pair, random_spec, same_blocks, verify};
use crate::ghz::{build_ghz_set, ghz_state, joint_eigenvalues, lhv_search, triviality_report, LocalPair, TupleKind};
use crate::matkit::{ComplexMatrix, HermitianOperator};
use crate::omega::phase_theorem_scan;

const ROUND_TRIPS: u64 = 40;
const SCAN_TRIALS: usize = 500;

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(name.into());
        }
    }

    fn value(&self) -> Value {
        json!({ "checks": self.checks, "failures": self.failures.len(), "failed": self.failures })
    }
}

fn round_trips(seed: u64) -> Tally {
    let mut t = Tally::default();
    for k in 0..ROUND_TRIPS {
        let case = seed.wrapping_mul(1_000_003).wrapping_add(k);
        let dim = 2 + (case % 11) as usize;
        let ok = random_spec(dim, case)
            .and_then(|spec| {
                let (a, b) = random_anticommuting_pair(&spec, case ^ 0x5eed)?;
                let cf = canonicalize(&a, &b, 1e-9)?;
                Ok(same_blocks(&spec, &cf.specs(), 1e-9) && verify(&a, &b, &cf, 1e-10).passed)
            })
            .unwrap_or(false);
        t.check(format!("round-trip case {case} (dim {dim})"), ok);
    }
    t
}

fn scan(seed: u64, report: &mut Map<String, Value>) -> Tally {
    let mut t = Tally::default();
    let mut per_dim = Vec::new();
    for dim in 2..=4 {
        match phase_theorem_scan(dim, SCAN_TRIALS, seed.wrapping_add(dim as u64)) {
            Ok(r) => {
                t.check(format!("phase scan dim {dim}"), r.counterexamples == 0);
                per_dim.push(super::to_value(&r));
            }
            Err(e) => t.check(format!("phase scan dim {dim}: {e}"), false),
        }
    }
    report.insert("phase_scan_runs".into(), Value::Array(per_dim));
    t
}

fn ghz_checks() -> Tally {
    let mut t = Tally::default();
    let pauli = vec![LocalPair::pauli(); 3];
    let run = || -> crate::error::Result<Tally> {
        let mut t = Tally::default();
        let gs = build_ghz_set(&pauli, 1e-9)?;
        t.check("product sign is -1", gs.product_sign == Some(-1.0));
        let ops: Vec<&ComplexMatrix> = gs.constrained_observables().into_iter().map(HermitianOperator::matrix).collect();
        let l = joint_eigenvalues(&ops, &ghz_state(3)?, 1e-12)?;
        let expected = [1.0, 1.0, 1.0, -1.0];
        t.check("joint eigenvalues (1,1,1,-1)", l.iter().zip(expected).all(|(x, e)| (x - e).abs() <= 1e-12));
        t.check("no local assignment for (1,1,1,-1)", lhv_search(&gs, &expected, 1e-9)?.satisfying.is_empty());
        t.check("8 local assignments for (1,1,1,1)", lhv_search(&gs, &[1.0; 4], 1e-9)?.satisfying.len() == 8);

        let b = ComplexMatrix::from_real_rows(&[&[0.0, 3.0, 4.0], &[3.0, 0.0, 0.0], &[4.0, 0.0, 0.0]])?;
        let spin_one = LocalPair::new(HermitianOperator::diag(&[1.0, -1.0, -1.0]), HermitianOperator::new(b)?)?;
        let r = triviality_report(&vec![spin_one; 3], 1e-9)?;
        t.check("spin-1 conjugated operators block-diagonal", r.max_off_tuple <= 1e-10 && r.partition_complete);
        let copies: Vec<_> = r.ghz_copies().collect();
        let contradiction = copies.len() == 1
            && matches!(copies[0].kind, TupleKind::GhzCopy { lhv_satisfying: Some(0), .. });
        t.check("spin-1 reduces to one spin-1/2 copy", contradiction);
        Ok(t)
    };
    match run() {
        Ok(inner) => t = inner,
        Err(e) => t.check(format!("GHZ checks: {e}"), false),
    }
    t
}

/// Run the invariant suites for `seed`. `force_fail` adds a failing check,
/// for exercising the failure path.
pub fn cmd_selftest(seed: u64, force_fail: bool) -> Outcome {
    let mut report = header("selftest", 1e-9);
    report.insert("seed".into(), seed.into());
    let rt = round_trips(seed);
    let sc = scan(seed, &mut report);
    let mut gh = ghz_checks();
    if force_fail {
        gh.check("forced failure", false);
    }
    report.insert("round_trip".into(), rt.value());
    report.insert("phase_scan".into(), sc.value());
    report.insert("ghz".into(), gh.value());
    let failed = rt.failures.len() + sc.failures.len() + gh.failures.len();
    let total = rt.checks + sc.checks + gh.checks;
    report.insert("checks".into(), total.into());
    report.insert("failures".into(), failed.into());
    let result = if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{failed} of {total} checks failed")))
    };
    finish(report, result)
}
