//! Exhaustive search over local hidden-variable assignments.
//!
//! Every local observable gets one value from its own spectrum,
//! independently per party. A joint observable built as a tensor product of
//! local observables is then assigned the product of its factors' values.

use serde::Serialize;

use super::{GhzSet, LocalPair};
use crate::error::{Error, Result};
use crate::matkit::{eig_hermitian, HermitianOperator};

/// Upper bound on the number of assignments enumerated.
pub const LHV_LIMIT: u64 = 10_000_000;

/// Which local observable a joint observable uses at one party.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Slot {
    A,
    B,
    Identity,
}

/// Values `(A_I, B_I)` for each party.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LhvAssignment {
    pub values: Vec<(f64, f64)>,
}

impl LhvAssignment {
    /// Value the assignment gives to a tensor-product observable.
    pub fn evaluate(&self, slots: &[Slot]) -> f64 {
        self.values
            .iter()
            .zip(slots)
            .map(|(&(a, b), slot)| match slot {
                Slot::A => a,
                Slot::B => b,
                Slot::Identity => 1.0,
            })
            .product()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LhvResult {
    pub total_assignments: u64,
    pub satisfying: Vec<LhvAssignment>,
    pub targets: Vec<f64>,
}

/// Distinct eigenvalues, ascending, merging gaps of at most `tol · max(1, ‖H‖_F)`.
pub fn local_spectrum(h: &HermitianOperator, tol: f64) -> Result<Vec<f64>> {
    let eig = eig_hermitian(h)?;
    let gap = tol * h.frobenius_norm().max(1.0);
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for &v in &eig.eigenvalues {
        match groups.last_mut() {
            Some(g) if v - g.last().expect("non-empty") <= gap => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    Ok(groups.iter().map(|g| g.iter().sum::<f64>() / g.len() as f64).collect())
}

/// The GHZ constraints: `n` mixed observables, then `⊗_I A_I`.
pub fn ghz_constraints(n: usize) -> Vec<Vec<Slot>> {
    let mut out: Vec<Vec<Slot>> = (0..n)
        .map(|k| (0..n).map(|i| if i == k { Slot::A } else { Slot::B }).collect())
        .collect();
    out.push(vec![Slot::A; n]);
    out
}

/// Enumerate all assignments for a GHZ set against targets for
/// `(O_1, …, O_n, ⊗A_I)`.
pub fn lhv_search(gs: &GhzSet, targets: &[f64], tol: f64) -> Result<LhvResult> {
    let spectra = pair_spectra(&gs.local_pairs, tol)?;
    lhv_search_sites(&spectra, &ghz_constraints(gs.parties()), targets, tol)
}

fn pair_spectra(pairs: &[LocalPair], tol: f64) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
    pairs
        .iter()
        .map(|p| Ok((local_spectrum(&p.a, tol)?, local_spectrum(&p.b, tol)?)))
        .collect()
}

/// General search: `spectra[I]` lists the allowed values of `(A_I, B_I)`, each
/// constraint names one slot per party, and `targets[c]` is the value
/// constraint `c` must take (within `tol`).
///
/// Assignments are enumerated with party 0's `A` value varying slowest and
/// the last party's `B` value fastest, each over its ascending spectrum;
/// satisfying assignments are returned in that order.
pub fn lhv_search_sites(
    spectra: &[(Vec<f64>, Vec<f64>)],
    constraints: &[Vec<Slot>],
    targets: &[f64],
    tol: f64,
) -> Result<LhvResult> {
    if constraints.len() != targets.len() {
        return Err(Error::InvalidArgument(format!(
            "{} targets given for {} constrained observables",
            targets.len(),
            constraints.len()
        )));
    }
    if let Some(c) = constraints.iter().find(|c| c.len() != spectra.len()) {
        return Err(Error::InvalidArgument(format!(
            "constraint names {} slots for {} parties",
            c.len(),
            spectra.len()
        )));
    }
    let lists: Vec<&[f64]> = spectra.iter().flat_map(|(a, b)| [a.as_slice(), b.as_slice()]).collect();
    if lists.iter().any(|l| l.is_empty()) {
        return Err(Error::InvalidArgument("empty local spectrum".into()));
    }
    let count = lists.iter().try_fold(1u128, |acc, l| acc.checked_mul(l.len() as u128)).unwrap_or(u128::MAX);
    if count > LHV_LIMIT as u128 {
        return Err(Error::TooManyAssignments { count, limit: LHV_LIMIT });
    }
    let total_assignments = count as u64;

    let mut digits = vec![0usize; lists.len()];
    let mut satisfying = Vec::new();
    for _ in 0..total_assignments {
        let assignment = LhvAssignment {
            values: (0..spectra.len())
                .map(|i| (lists[2 * i][digits[2 * i]], lists[2 * i + 1][digits[2 * i + 1]]))
                .collect(),
        };
        let ok = constraints
            .iter()
            .zip(targets)
            .all(|(c, &t)| (assignment.evaluate(c) - t).abs() <= tol);
        if ok {
            satisfying.push(assignment);
        }
        // odometer, last digit fastest
        for d in (0..digits.len()).rev() {
            digits[d] += 1;
            if digits[d] < lists[d].len() {
                break;
            }
            digits[d] = 0;
        }
    }

    Ok(LhvResult {
        total_assignments,
        satisfying,
        targets: targets.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ghz::build_ghz_set;

    fn canonical() -> GhzSet {
        build_ghz_set(&vec![LocalPair::pauli(); 3], 1e-9).unwrap()
    }

    /// Independent count: loop over all 2⁶ sign patterns directly.
    fn brute_force_count(targets: [f64; 4]) -> usize {
        let mut count = 0;
        for mask in 0u32..64 {
            let v = |bit: u32| if mask >> bit & 1 == 1 { 1.0 } else { -1.0 };
            let (x1, y1, x2, y2, x3, y3) = (v(0), v(1), v(2), v(3), v(4), v(5));
            let values = [x1 * y2 * y3, y1 * x2 * y3, y1 * y2 * x3, x1 * x2 * x3];
            if values.iter().zip(targets).all(|(a, b)| *a == b) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn quantum_targets_unsatisfiable() {
        let r = lhv_search(&canonical(), &[1.0, 1.0, 1.0, -1.0], 1e-9).unwrap();
        assert_eq!(r.total_assignments, 64);
        assert_eq!(r.satisfying.len(), brute_force_count([1.0, 1.0, 1.0, -1.0]));
        assert!(r.satisfying.is_empty());
    }

    #[test]
    fn consistent_targets_have_eight_solutions() {
        let r = lhv_search(&canonical(), &[1.0, 1.0, 1.0, 1.0], 1e-9).unwrap();
        let expected = brute_force_count([1.0, 1.0, 1.0, 1.0]);
        assert_eq!(expected, 8);
        assert_eq!(r.satisfying.len(), expected);
    }

    #[test]
    fn product_law_holds_for_every_assignment() {
        // with targets that every assignment trivially misses we still want the
        // full list, so enumerate through an unconstrained search
        let spectra = vec![(vec![-1.0, 1.0], vec![-1.0, 1.0]); 3];
        let all = lhv_search_sites(&spectra, &[], &[], 1e-9).unwrap();
        assert_eq!(all.satisfying.len(), 64);
        let cons = ghz_constraints(3);
        for asg in &all.satisfying {
            let lhs: f64 = cons[..3].iter().map(|c| asg.evaluate(c)).product();
            let b_sq: f64 = asg.values.iter().map(|(_, b)| b * b).product();
            assert_eq!(lhs, asg.evaluate(&cons[3]) * b_sq);
        }
    }

    #[test]
    fn single_party_single_constraint() {
        let spectra = vec![(vec![-1.0, 1.0], vec![-1.0, 1.0])];
        let r = lhv_search_sites(&spectra, &[vec![Slot::A]], &[1.0], 1e-9).unwrap();
        assert_eq!(r.total_assignments, 4);
        assert_eq!(r.satisfying.len(), 2);
    }

    #[test]
    fn target_count_mismatch() {
        assert!(lhv_search(&canonical(), &[1.0, 1.0, 1.0], 1e-9).is_err());
    }

    #[test]
    fn enumeration_guard() {
        let spectra = vec![(vec![0.0; 10], vec![0.0; 10]); 4];
        assert!(matches!(
            lhv_search_sites(&spectra, &[], &[], 1e-9),
            Err(Error::TooManyAssignments { .. })
        ));
    }

    #[test]
    fn spin_one_spectrum_has_three_values() {
        let b = crate::matkit::ComplexMatrix::from_real_rows(&[&[0.0, 3.0, 4.0], &[3.0, 0.0, 0.0], &[4.0, 0.0, 0.0]]).unwrap();
        let s = local_spectrum(&HermitianOperator::new(b).unwrap(), 1e-9).unwrap();
        assert_eq!(s.len(), 3);
        assert!((s[0] + 5.0).abs() < 1e-12 && s[1].abs() < 1e-12 && (s[2] - 5.0).abs() < 1e-12);
        let s = local_spectrum(&HermitianOperator::diag(&[1.0, -1.0, -1.0]), 1e-9).unwrap();
        assert_eq!(s, vec![-1.0, 1.0]);
    }
}
