//! Block-tuple decomposition of a GHZ set built from canonicalized local pairs.
//!
//! Each local pair is brought to canonical form, which partitions its local
//! space into 2-dimensional pair blocks and 1-dimensional singletons. The
//! product space then splits into block-tuples (one local block per party),
//! and every GHZ operator acts inside each tuple. A tuple made only of pair
//! blocks carries a rescaled copy of the spin-1/2 problem; a tuple with a
//! singleton somewhere has a party whose two observables are commuting
//! scalars, so values can be assigned classically.

use serde::Serialize;

use super::{build_ghz_set, ghz_constraints, ghz_state, joint_eigenvalues, lhv_search, LocalPair, Slot};
use crate::canon::{canonicalize, Block, CanonicalForm};
use crate::error::Result;
use crate::matkit::{conjugate, frobenius_distance, kron_all, sigma_x, sigma_y, ComplexMatrix, HermitianOperator};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type")]
pub enum TupleKind {
    /// All parties sit in a pair block: a spin-1/2 GHZ problem scaled by
    /// `(a_I, b_I)` at each party.
    GhzCopy {
        scales: Vec<(f64, f64)>,
        /// Largest `‖sub-block − expected scaled Pauli product‖_F` over the constrained observables.
        subproblem_residual: f64,
        /// Eigenvalues of the normalized sub-operators on the GHZ state, when it is a common eigenstate.
        joint_eigenvalues: Option<Vec<f64>>,
        /// Local assignments reproducing those eigenvalues, out of `lhv_total`.
        lhv_satisfying: Option<usize>,
        lhv_total: Option<u64>,
    },
    /// At least one party contributes a singleton.
    ClassicallyAssignable { singleton_parties: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockTuple {
    /// Index into each party's `CanonicalForm::blocks`.
    pub blocks: Vec<usize>,
    /// Positions in the canonical product basis, in tensor order.
    pub indices: Vec<usize>,
    pub kind: TupleKind,
}

impl BlockTuple {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn is_ghz_copy(&self) -> bool {
        matches!(self.kind, TupleKind::GhzCopy { .. })
    }
}

#[derive(Debug, Clone)]
pub struct TrivialityReport {
    pub local_forms: Vec<CanonicalForm>,
    pub total_dim: usize,
    pub tuples: Vec<BlockTuple>,
    /// Largest entry modulus, over all conjugated constrained observables,
    /// connecting two different block-tuples.
    pub max_off_tuple: f64,
    /// Each observable's off-tuple entries must stay within `tol · max(1, ‖O‖_F)`.
    pub block_diagonal: bool,
    /// The tuples cover every product-basis index exactly once.
    pub partition_complete: bool,
}

impl TrivialityReport {
    pub fn ghz_copies(&self) -> impl Iterator<Item = &BlockTuple> {
        self.tuples.iter().filter(|t| t.is_ghz_copy())
    }

    /// No tuple can host a contradiction that the spin-1/2 problem lacks.
    pub fn is_trivial(&self) -> bool {
        self.block_diagonal
            && self.partition_complete
            && self.ghz_copies().all(|t| match &t.kind {
                TupleKind::GhzCopy { subproblem_residual, .. } => {
                    *subproblem_residual <= 1e-9 * t.dim() as f64
                }
                TupleKind::ClassicallyAssignable { .. } => true,
            })
    }
}

/// Canonicalize each local pair and check that the GHZ set decomposes into
/// spin-1/2 copies and classically assignable tuples.
pub fn triviality_report(local_pairs: &[LocalPair], tol: f64) -> Result<TrivialityReport> {
    let gs = build_ghz_set(local_pairs, tol)?;
    let n = local_pairs.len();
    let forms = local_pairs
        .iter()
        .map(|p| canonicalize(&p.a, &p.b, tol))
        .collect::<Result<Vec<_>>>()?;

    let joint = forms[1..]
        .iter()
        .fold(forms[0].transform.clone(), |acc, f| acc.kron(&f.transform));
    let observables: Vec<&HermitianOperator> = gs.constrained_observables();
    let conjugated = observables
        .iter()
        .map(|o| conjugate(&joint, o.matrix()))
        .collect::<Result<Vec<_>>>()?;

    let dims: Vec<usize> = forms.iter().map(|f| f.dim).collect();
    let total_dim: usize = dims.iter().product();
    let block_of: Vec<Vec<usize>> = forms
        .iter()
        .map(|f| {
            let mut owner = vec![0; f.dim];
            for (k, b) in f.blocks.iter().enumerate() {
                for i in b.indices() {
                    owner[i] = k;
                }
            }
            owner
        })
        .collect();
    let tuple_key = |mut index: usize| -> Vec<usize> {
        let mut key = vec![0; n];
        for site in (0..n).rev() {
            key[site] = block_of[site][index % dims[site]];
            index /= dims[site];
        }
        key
    };
    let keys: Vec<Vec<usize>> = (0..total_dim).map(tuple_key).collect();

    let mut max_off_tuple: f64 = 0.0;
    let mut block_diagonal = true;
    for m in &conjugated {
        let bound = tol * m.frobenius_norm().max(1.0);
        for r in 0..total_dim {
            for c in 0..total_dim {
                if keys[r] != keys[c] {
                    let v = m[(r, c)].norm();
                    max_off_tuple = max_off_tuple.max(v);
                    block_diagonal &= v <= bound;
                }
            }
        }
    }

    let constraints = ghz_constraints(n);
    let block_counts: Vec<usize> = forms.iter().map(|f| f.blocks.len()).collect();
    let mut tuples = Vec::new();
    let mut covered = vec![0usize; total_dim];
    let mut choice = vec![0usize; n];
    loop {
        let local: Vec<&Block> = choice.iter().zip(&forms).map(|(&k, f)| &f.blocks[k]).collect();
        let indices = tensor_indices(&local, &dims);
        for &i in &indices {
            covered[i] += 1;
        }
        let singleton_parties: Vec<usize> = local
            .iter()
            .enumerate()
            .filter(|(_, b)| matches!(b, Block::Singleton(_)))
            .map(|(i, _)| i)
            .collect();
        let kind = if singleton_parties.is_empty() {
            ghz_copy(&local, &forms, local_pairs, &conjugated, &indices, &constraints, tol)?
        } else {
            TupleKind::ClassicallyAssignable { singleton_parties }
        };
        tuples.push(BlockTuple {
            blocks: choice.clone(),
            indices,
            kind,
        });

        let mut site = n;
        loop {
            if site == 0 {
                break;
            }
            site -= 1;
            choice[site] += 1;
            if choice[site] < block_counts[site] {
                break;
            }
            choice[site] = 0;
        }
        if choice.iter().all(|&c| c == 0) {
            break;
        }
    }

    Ok(TrivialityReport {
        local_forms: forms,
        total_dim,
        tuples,
        max_off_tuple,
        block_diagonal,
        partition_complete: covered.iter().all(|&c| c == 1),
    })
}

/// Product-basis positions of a block-tuple, first party most significant.
fn tensor_indices(local: &[&Block], dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for (b, &d) in local.iter().zip(dims) {
        let idx = b.indices();
        out = out.iter().flat_map(|&base| idx.iter().map(move |&i| base * d + i)).collect();
    }
    out
}

fn ghz_copy(
    local: &[&Block],
    forms: &[CanonicalForm],
    pairs: &[LocalPair],
    conjugated: &[ComplexMatrix],
    indices: &[usize],
    constraints: &[Vec<Slot>],
    tol: f64,
) -> Result<TupleKind> {
    let scales: Vec<(f64, f64)> = local
        .iter()
        .map(|b| match b {
            Block::Pair(p) => (p.a, p.b),
            Block::Singleton(_) => unreachable!("caller filters singletons"),
        })
        .collect();

    let (sx, sy) = (sigma_x(), sigma_y());
    let mut subproblem_residual: f64 = 0.0;
    let mut normalized = Vec::with_capacity(constraints.len());
    for (m, slots) in conjugated.iter().zip(constraints) {
        let sub = m.submatrix(indices, indices);
        let scale: f64 = slots
            .iter()
            .zip(&scales)
            .map(|(s, &(a, b))| if *s == Slot::A { a } else { b })
            .product();
        let expected = kron_all(slots.iter().map(|s| if *s == Slot::A { &sx } else { &sy })).expect("non-empty");
        subproblem_residual = subproblem_residual.max(frobenius_distance(&sub, &expected.scale_real(scale))?);
        normalized.push(sub.scale_real(1.0 / scale));
    }

    // local sub-blocks of the canonical operators, rescaled to unit Paulis
    let effective = local
        .iter()
        .zip(forms)
        .zip(pairs)
        .zip(&scales)
        .map(|(((b, f), p), &(sa, sb))| {
            let idx = b.indices();
            let restrict = |h: &HermitianOperator, s: f64| -> Result<HermitianOperator> {
                let m = conjugate(&f.transform, h.matrix())?.submatrix(&idx, &idx).scale_real(1.0 / s);
                HermitianOperator::new(m.hermitian_part()?)
            };
            LocalPair::new(restrict(&p.a, sa)?, restrict(&p.b, sb)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let effective_set = build_ghz_set(&effective, tol)?;

    let psi = ghz_state(local.len())?;
    let refs: Vec<&ComplexMatrix> = normalized.iter().collect();
    let eig_tol = tol * indices.len() as f64;
    let joint = joint_eigenvalues(&refs, &psi, eig_tol).ok();
    let (lhv_satisfying, lhv_total) = match &joint {
        Some(targets) => {
            let r = lhv_search(&effective_set, targets, tol.max(1e-12))?;
            (Some(r.satisfying.len()), Some(r.total_assignments))
        }
        None => (None, None),
    };

    Ok(TupleKind::GhzCopy {
        scales,
        subproblem_residual,
        joint_eigenvalues: joint,
        lhv_satisfying,
        lhv_total,
    })
}
