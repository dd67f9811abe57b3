//! GHZ operator sets built from local anticommuting pairs.
//!
//! For `n` parties holding pairs `(A_I, B_I)`, the GHZ set is
//! `O_k = ⊗_I (A_I if I = k else B_I)`. Any two of these differ in exactly
//! two slots, so when every local pair anticommutes the two sign flips
//! cancel and the set is mutually commuting.

mod lhv;
mod triviality;

use serde::Serialize;

pub use lhv::{ghz_constraints, lhv_search, lhv_search_sites, local_spectrum, LhvAssignment, LhvResult, Slot, LHV_LIMIT};
pub use triviality::{triviality_report, BlockTuple, TrivialityReport, TupleKind};

use crate::error::{Error, Result};
use crate::matkit::{kron_all, Complex64, ComplexMatrix, HermitianOperator};
use crate::omega::{classify, OmegaKind};

/// One party's pair of local observables.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalPair {
    pub a: HermitianOperator,
    pub b: HermitianOperator,
}

impl LocalPair {
    pub fn new(a: HermitianOperator, b: HermitianOperator) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::ShapeMismatch {
                left: a.matrix().shape(),
                right: b.matrix().shape(),
            });
        }
        Ok(Self { a, b })
    }

    /// `(σx, σy)`.
    pub fn pauli() -> Self {
        Self {
            a: HermitianOperator::new(crate::matkit::sigma_x()).expect("hermitian"),
            b: HermitianOperator::new(crate::matkit::sigma_y()).expect("hermitian"),
        }
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

#[derive(Debug, Clone)]
pub struct GhzSet {
    pub local_pairs: Vec<LocalPair>,
    /// `operators[k]` has `A` at party `k` and `B` everywhere else.
    pub operators: Vec<HermitianOperator>,
    /// `⊗_I A_I`
    pub product_operator: HermitianOperator,
    /// `s` with `O_1 ⋯ O_n = s · ⊗_I A_I`, when the product is proportional.
    pub product_sign: Option<f64>,
}

impl GhzSet {
    pub fn parties(&self) -> usize {
        self.local_pairs.len()
    }

    pub fn local_dims(&self) -> Vec<usize> {
        self.local_pairs.iter().map(LocalPair::dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.product_operator.dim()
    }

    /// The mixed operators followed by the product operator.
    pub fn constrained_observables(&self) -> Vec<&HermitianOperator> {
        self.operators.iter().chain(std::iter::once(&self.product_operator)).collect()
    }
}

/// Build the GHZ set, requiring every local pair to anticommute.
pub fn build_ghz_set(local_pairs: &[LocalPair], tol: f64) -> Result<GhzSet> {
    if local_pairs.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "a GHZ set needs at least 3 parties, got {}",
            local_pairs.len()
        )));
    }
    for pair in local_pairs {
        let class = classify(&pair.a, &pair.b, tol)?;
        if !matches!(class.kind, OmegaKind::Anticommute | OmegaKind::Degenerate) {
            return Err(Error::NotAnticommuting { kind: class.kind });
        }
    }
    build_ghz_set_unchecked(local_pairs)
}

/// Build the GHZ set without checking anticommutation. Used to study what
/// goes wrong when a local pair merely commutes.
pub fn build_ghz_set_unchecked(local_pairs: &[LocalPair]) -> Result<GhzSet> {
    if local_pairs.is_empty() {
        return Err(Error::InvalidArgument("no local pairs".into()));
    }
    let n = local_pairs.len();
    let operators = (0..n)
        .map(|k| {
            let factors = local_pairs
                .iter()
                .enumerate()
                .map(|(i, p)| if i == k { p.a.matrix() } else { p.b.matrix() });
            HermitianOperator::new(kron_all(factors).expect("non-empty"))
        })
        .collect::<Result<Vec<_>>>()?;
    let product_operator = HermitianOperator::new(kron_all(local_pairs.iter().map(|p| p.a.matrix())).expect("non-empty"))?;

    let product = operators[1..]
        .iter()
        .try_fold(operators[0].matrix().clone(), |acc, o| acc.try_mul(o.matrix()))?;
    let p = product_operator.matrix();
    let p_norm2 = p.inner(p)?.re;
    let product_sign = if p_norm2 > 0.0 {
        let s = p.inner(&product)?.re / p_norm2;
        let miss = product.try_sub(&p.scale_real(s))?.frobenius_norm();
        (miss <= 1e-9 * product.frobenius_norm().max(1.0)).then_some(s)
    } else {
        None
    };

    Ok(GhzSet {
        local_pairs: local_pairs.to_vec(),
        operators,
        product_operator,
        product_sign,
    })
}

/// One entry of a commutation table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommutatorEntry {
    pub i: usize,
    pub j: usize,
    /// `‖[O_i, O_j]‖_F`
    pub norm: f64,
    /// `tol · max(1, ‖O_i‖_F‖O_j‖_F)`
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutationReport {
    pub entries: Vec<CommutatorEntry>,
    pub max_norm: f64,
    pub passed: bool,
}

/// All pairwise commutators among the GHZ operators and the product operator.
/// The product operator has index `parties`.
pub fn check_mutual_commutation(gs: &GhzSet, tol: f64) -> CommutationReport {
    let ops: Vec<&ComplexMatrix> = gs.constrained_observables().into_iter().map(HermitianOperator::matrix).collect();
    commutation_table(&ops, tol)
}

pub fn commutation_table(ops: &[&ComplexMatrix], tol: f64) -> CommutationReport {
    let mut entries = Vec::new();
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            let norm = (&(ops[i] * ops[j]) - &(ops[j] * ops[i])).frobenius_norm();
            let bound = tol * (ops[i].frobenius_norm() * ops[j].frobenius_norm()).max(1.0);
            entries.push(CommutatorEntry { i, j, norm, bound });
        }
    }
    let max_norm = entries.iter().map(|e| e.norm).fold(0.0, f64::max);
    let passed = entries.iter().all(|e| e.norm <= e.bound);
    CommutationReport { entries, max_norm, passed }
}

/// Unit-norm pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidArgument("state must have positive dimension".into()));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("state norm is {norm}, expected 1")));
        }
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `(|0…0⟩ − |1…1⟩)/√2` on `n` two-level systems, where `|0⟩` is spin up.
pub fn ghz_state(n: usize) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("GHZ state needs at least 2 parties, got {n}")));
    }
    if n >= usize::BITS as usize - 1 {
        return Err(Error::InvalidArgument(format!("{n} parties is too many to store")));
    }
    let dim = 1usize << n;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = Complex64::new(h, 0.0);
    amps[dim - 1] = Complex64::new(-h, 0.0);
    StateVector::new(amps)
}

/// `λ_k = ⟨ψ|O_k|ψ⟩`, provided `‖O_k ψ − λ_k ψ‖ ≤ tol` for every operator.
pub fn joint_eigenvalues(operators: &[&ComplexMatrix], psi: &StateVector, tol: f64) -> Result<Vec<f64>> {
    operators
        .iter()
        .enumerate()
        .map(|(index, op)| {
            let image = op.apply(psi.amplitudes())?;
            let lambda: Complex64 = psi.amplitudes().iter().zip(&image).map(|(p, q)| p.conj() * q).sum();
            let residual = image
                .iter()
                .zip(psi.amplitudes())
                .map(|(q, p)| (q - p * lambda).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if residual > tol {
                return Err(Error::NotEigenstate { index, residual });
            }
            Ok(lambda.re)
        })
        .collect()
}
