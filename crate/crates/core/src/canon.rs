//! Canonical form of anticommuting Hermitian pairs.
//!
//! Any pair with `AB = −BA` is unitarily equivalent to a direct sum of 2×2
//! blocks `(a·σx, b·σy)` with `a, b > 0` and 1×1 blocks `(α, β)` with
//! `αβ = 0`. [`canonicalize`] constructs that basis explicitly:
//!
//! 1. diagonalize `A` and cluster its spectrum;
//! 2. pair every eigenvalue cluster `μ > 0` with its mirror `−μ`;
//! 3. `B` only connects mirrored eigenspaces, so the SVD of the cross block
//!    between them splits each pair of eigenspaces into 2-dimensional
//!    invariant planes (one per nonzero singular value) and leftover null
//!    directions where `B` vanishes;
//! 4. `B` preserves the kernel of `A` and is diagonalized there;
//! 5. each plane, where the pair reads `(μ·σz, s·σx)`, is rotated by a fixed
//!    2×2 unitary onto `(μ·σx, s·σy)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matkit::{
    c64, conjugate, eig_hermitian, random_unitary, svd, Complex64, ComplexMatrix, HermitianOperator, UnitaryMatrix,
};
use crate::omega::{classify, OmegaKind};

/// A 2×2 block on which the transformed pair reads `(a·σx, b·σy)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairBlock {
    pub a: f64,
    pub b: f64,
    pub index_pair: (usize, usize),
}

/// A 1×1 block `(alpha, beta)`; anticommutation forces `alpha·beta = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Singleton {
    pub alpha: f64,
    pub beta: f64,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type")]
pub enum Block {
    Pair(PairBlock),
    Singleton(Singleton),
}

impl Block {
    /// Canonical-basis positions occupied by the block.
    pub fn indices(&self) -> Vec<usize> {
        match self {
            Block::Pair(p) => vec![p.index_pair.0, p.index_pair.1],
            Block::Singleton(s) => vec![s.index],
        }
    }

    pub fn spec(&self) -> BlockSpec {
        match *self {
            Block::Pair(p) => BlockSpec::Pair { a: p.a, b: p.b },
            Block::Singleton(s) => BlockSpec::Singleton {
                alpha: s.alpha,
                beta: s.beta,
            },
        }
    }
}

/// Block content without placement, used to describe a pair to generate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum BlockSpec {
    Pair { a: f64, b: f64 },
    Singleton { alpha: f64, beta: f64 },
}

impl BlockSpec {
    pub fn dim(&self) -> usize {
        match self {
            BlockSpec::Pair { .. } => 2,
            BlockSpec::Singleton { .. } => 1,
        }
    }
}

/// Thresholds used by one run of [`canonicalize`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// The relative tolerance passed in.
    pub tol: f64,
    /// Eigenvalue gap at or below which eigenvalues of `A` are merged; also the
    /// `μ ↔ −μ` matching tolerance.
    pub cluster: f64,
    /// Singular values of a cross block at or below this become null directions.
    pub rank: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalForm {
    pub dim: usize,
    /// Pair blocks first (by `a` then `b`, descending), then singletons (by
    /// `alpha` then `beta`, descending). Indices are consecutive in this order.
    pub blocks: Vec<Block>,
    /// `U` with `U·A·U^H` and `U·B·U^H` equal to the block-diagonal matrices.
    pub transform: UnitaryMatrix,
    pub tolerances: Tolerances,
}

impl CanonicalForm {
    pub fn pair_blocks(&self) -> impl Iterator<Item = &PairBlock> {
        self.blocks.iter().filter_map(|b| match b {
            Block::Pair(p) => Some(p),
            Block::Singleton(_) => None,
        })
    }

    pub fn singletons(&self) -> impl Iterator<Item = &Singleton> {
        self.blocks.iter().filter_map(|b| match b {
            Block::Singleton(s) => Some(s),
            Block::Pair(_) => None,
        })
    }

    pub fn specs(&self) -> Vec<BlockSpec> {
        self.blocks.iter().map(Block::spec).collect()
    }
}

/// Residuals from [`verify`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyReport {
    /// `‖U A U^H − Ã‖_F`
    pub residual_a: f64,
    /// `‖U B U^H − B̃‖_F`
    pub residual_b: f64,
    /// `‖U^H U − I‖_F`
    pub unitarity_defect: f64,
    /// `tol · max(1, ‖A‖_F + ‖B‖_F) · dim`
    pub bound: f64,
    pub passed: bool,
}

/// Rotation carrying `(σz, σx)` to `(σx, σy)` by conjugation: the
/// `2π/3` turn about `(1,1,1)/√3`, which cycles `x → y → z → x`.
fn axis_cycle() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![c64(0.5, -0.5), c64(-0.5, -0.5), c64(0.5, -0.5), c64(0.5, 0.5)],
    )
    .expect("static shape")
}

struct Cluster {
    mean: f64,
    columns: Vec<usize>,
}

fn cluster_spectrum(values: &[f64], gap: f64) -> Vec<Cluster> {
    let mut clusters: Vec<Cluster> = Vec::new();
    for (k, &v) in values.iter().enumerate() {
        match clusters.last_mut() {
            Some(c) if v - values[*c.columns.last().expect("non-empty")] <= gap => c.columns.push(k),
            _ => clusters.push(Cluster {
                mean: 0.0,
                columns: vec![k],
            }),
        }
    }
    for c in &mut clusters {
        c.mean = c.columns.iter().map(|&k| values[k]).sum::<f64>() / c.columns.len() as f64;
    }
    clusters
}

/// One canonical direction or plane before ordering.
enum Piece {
    Plane { a: f64, b: f64, x: Vec<Complex64>, y: Vec<Complex64> },
    Line { alpha: f64, beta: f64, v: Vec<Complex64> },
}

/// Reduce an anticommuting Hermitian pair to canonical block form.
pub fn canonicalize(a: &HermitianOperator, b: &HermitianOperator, tol: f64) -> Result<CanonicalForm> {
    let class = classify(a, b, tol)?;
    if !matches!(class.kind, OmegaKind::Anticommute | OmegaKind::Degenerate) {
        return Err(Error::NotAnticommuting { kind: class.kind });
    }
    let n = a.dim();
    let bm = b.matrix();
    let tolerances = Tolerances {
        tol,
        cluster: tol * a.frobenius_norm().max(1.0),
        rank: tol * b.frobenius_norm().max(1.0),
    };
    let anti = class.residual_anticommute;

    let eig = eig_hermitian(a)?;
    let basis = eig.basis.matrix();
    let clusters = cluster_spectrum(&eig.eigenvalues, tolerances.cluster);

    let zero = clusters
        .iter()
        .enumerate()
        .filter(|(_, c)| c.mean.abs() <= tolerances.cluster)
        .min_by(|(_, x), (_, y)| x.mean.abs().total_cmp(&y.mean.abs()))
        .map(|(k, _)| k);

    // mirror matching, largest |μ| first
    let mut partner: Vec<Option<usize>> = vec![None; clusters.len()];
    for (p, cp) in clusters.iter().enumerate().rev() {
        if Some(p) == zero || cp.mean <= 0.0 {
            continue;
        }
        let best = clusters
            .iter()
            .enumerate()
            .filter(|&(q, cq)| Some(q) != zero && cq.mean < 0.0 && partner[q].is_none())
            .filter(|(_, cq)| (cq.mean + cp.mean).abs() <= tolerances.cluster)
            .min_by(|(_, x), (_, y)| (x.mean + cp.mean).abs().total_cmp(&(y.mean + cp.mean).abs()))
            .map(|(q, _)| q);
        if let Some(q) = best {
            partner[p] = Some(q);
            partner[q] = Some(p);
        }
    }

    let mut pieces: Vec<Piece> = Vec::with_capacity(n);
    for (p, cp) in clusters.iter().enumerate() {
        if Some(p) == zero {
            continue;
        }
        let vp = basis.select_columns(&cp.columns);
        match partner[p] {
            Some(q) if cp.mean > 0.0 => {
                let cq = &clusters[q];
                let vq = basis.select_columns(&cq.columns);
                let mu = cp.mean;
                let within = tolerances.rank + anti / (2.0 * mu);
                for (v, m) in [(&vp, mu), (&vq, cq.mean)] {
                    let block = (&(&v.adjoint() * bm) * v).frobenius_norm();
                    if block > within {
                        return Err(Error::AnticommutationViolated(format!(
                            "B has a block of norm {block:.3e} inside the eigenspace of A for {m}"
                        )));
                    }
                }
                let cross = &(&vp.adjoint() * bm) * &vq;
                let dec = svd(&cross)?;
                let (left, right) = (dec.left.matrix(), dec.right.matrix());
                let lifted_left = &vp * left;
                let lifted_right = &vq * right;
                let shared = dec.singular_values.len();
                for (i, &s) in dec.singular_values.iter().enumerate() {
                    let x = lifted_left.column(i);
                    let y = lifted_right.column(i);
                    if s > tolerances.rank {
                        pieces.push(Piece::Plane { a: mu, b: s, x, y });
                    } else {
                        pieces.push(Piece::Line { alpha: mu, beta: 0.0, v: x });
                        pieces.push(Piece::Line { alpha: cq.mean, beta: 0.0, v: y });
                    }
                }
                for i in shared..cp.columns.len() {
                    pieces.push(Piece::Line { alpha: mu, beta: 0.0, v: lifted_left.column(i) });
                }
                for i in shared..cq.columns.len() {
                    pieces.push(Piece::Line { alpha: cq.mean, beta: 0.0, v: lifted_right.column(i) });
                }
            }
            Some(_) => {} // handled from the positive side
            None => {
                let gap = clusters
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != p)
                    .map(|(_, cq)| (cp.mean + cq.mean).abs())
                    .fold(2.0 * cp.mean.abs(), f64::min);
                let leak = (bm * &vp).frobenius_norm();
                let allowed = tolerances.rank + anti / gap.max(f64::MIN_POSITIVE);
                if leak > allowed {
                    return Err(Error::AnticommutationViolated(format!(
                        "B does not annihilate the unpaired eigenspace of A for {} (norm {leak:.3e})",
                        cp.mean
                    )));
                }
                for k in 0..vp.cols() {
                    pieces.push(Piece::Line { alpha: cp.mean, beta: 0.0, v: vp.column(k) });
                }
            }
        }
    }

    if let Some(z) = zero {
        let v0 = basis.select_columns(&clusters[z].columns);
        let b0 = (&(&v0.adjoint() * bm) * &v0).hermitian_part()?;
        let leak = (&(bm * &v0) - &(&v0 * &b0)).frobenius_norm();
        let smallest = clusters
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != z)
            .map(|(_, c)| c.mean.abs())
            .fold(f64::INFINITY, f64::min);
        let allowed = tolerances.rank + if smallest.is_finite() { anti / smallest } else { 0.0 };
        if leak > allowed {
            return Err(Error::AnticommutationViolated(format!(
                "B does not preserve the kernel of A (leak {leak:.3e})"
            )));
        }
        let e0 = eig_hermitian(&HermitianOperator::new(b0)?)?;
        let lifted = &v0 * e0.basis.matrix();
        for (k, &beta) in e0.eigenvalues.iter().enumerate() {
            pieces.push(Piece::Line { alpha: 0.0, beta, v: lifted.column(k) });
        }
    }

    assemble(n, pieces, tolerances)
}

fn assemble(n: usize, pieces: Vec<Piece>, tolerances: Tolerances) -> Result<CanonicalForm> {
    let (mut planes, mut lines): (Vec<_>, Vec<_>) = pieces.into_iter().partition(|p| matches!(p, Piece::Plane { .. }));
    planes.sort_by(|p, q| match (p, q) {
        (Piece::Plane { a: a1, b: b1, .. }, Piece::Plane { a: a2, b: b2, .. }) => {
            a2.total_cmp(a1).then(b2.total_cmp(b1))
        }
        _ => unreachable!(),
    });
    lines.sort_by(|p, q| match (p, q) {
        (Piece::Line { alpha: a1, beta: b1, .. }, Piece::Line { alpha: a2, beta: b2, .. }) => {
            a2.total_cmp(a1).then(b2.total_cmp(b1))
        }
        _ => unreachable!(),
    });

    // columns of W^H mix (x, y) into the canonical pair of basis vectors
    let w_adj = axis_cycle().adjoint();
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(n);
    for piece in planes.into_iter().chain(lines) {
        match piece {
            Piece::Plane { a, b, x, y } => {
                let i = columns.len();
                for j in 0..2 {
                    let (cx, cy) = (w_adj[(0, j)], w_adj[(1, j)]);
                    columns.push(x.iter().zip(&y).map(|(p, q)| p * cx + q * cy).collect());
                }
                blocks.push(Block::Pair(PairBlock { a, b, index_pair: (i, i + 1) }));
            }
            Piece::Line { alpha, beta, v } => {
                blocks.push(Block::Singleton(Singleton { alpha, beta, index: columns.len() }));
                columns.push(v);
            }
        }
    }
    if columns.len() != n {
        return Err(Error::InvalidCanonicalForm(format!(
            "reduction produced {} basis vectors for dimension {n}",
            columns.len()
        )));
    }
    let q = ComplexMatrix::from_columns(n, &columns)?;
    let transform = UnitaryMatrix::new(q.adjoint())?;
    Ok(CanonicalForm {
        dim: n,
        blocks,
        transform,
        tolerances,
    })
}

/// The block-diagonal pair `(Ã, B̃)` described by a canonical form.
pub fn reconstruct(cf: &CanonicalForm) -> Result<(HermitianOperator, HermitianOperator)> {
    let n = cf.dim;
    if n == 0 {
        return Err(Error::InvalidCanonicalForm("dimension must be positive".into()));
    }
    let mut seen = vec![false; n];
    for block in &cf.blocks {
        let idx = block.indices();
        if idx.len() == 2 && idx[0] == idx[1] {
            return Err(Error::InvalidCanonicalForm(format!("pair block repeats index {}", idx[0])));
        }
        for k in idx {
            if k >= n {
                return Err(Error::InvalidCanonicalForm(format!("index {k} out of range for dimension {n}")));
            }
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidCanonicalForm(format!("index {k} covered twice")));
            }
        }
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidCanonicalForm(format!("index {k} not covered")));
    }

    let mut a = ComplexMatrix::zeros(n, n);
    let mut b = ComplexMatrix::zeros(n, n);
    for block in &cf.blocks {
        match *block {
            Block::Pair(PairBlock { a: x, b: y, index_pair: (i, j) }) => {
                a[(i, j)] = c64(x, 0.0);
                a[(j, i)] = c64(x, 0.0);
                b[(i, j)] = c64(0.0, -y);
                b[(j, i)] = c64(0.0, y);
            }
            Block::Singleton(Singleton { alpha, beta, index }) => {
                a[(index, index)] = c64(alpha, 0.0);
                b[(index, index)] = c64(beta, 0.0);
            }
        }
    }
    Ok((HermitianOperator::new(a)?, HermitianOperator::new(b)?))
}

/// Check `U·A·U^H ≈ Ã`, `U·B·U^H ≈ B̃` and unitarity of `U`.
///
/// Never fails; a malformed form or a dimension mismatch yields a failing
/// report with infinite residuals.
pub fn verify(a: &HermitianOperator, b: &HermitianOperator, cf: &CanonicalForm, tol: f64) -> VerifyReport {
    let dim = cf.dim.max(1) as f64;
    let bound = tol * (a.frobenius_norm() + b.frobenius_norm()).max(1.0) * dim;
    let unitarity_defect = cf.transform.defect();
    let failed = VerifyReport {
        residual_a: f64::INFINITY,
        residual_b: f64::INFINITY,
        unitarity_defect,
        bound,
        passed: false,
    };
    if a.dim() != cf.dim || b.dim() != cf.dim || cf.transform.dim() != cf.dim {
        return failed;
    }
    let Ok((ca, cb)) = reconstruct(cf) else {
        return failed;
    };
    let residual = |m: &HermitianOperator, target: &HermitianOperator| {
        conjugate(&cf.transform, m.matrix())
            .and_then(|r| r.try_sub(target.matrix()))
            .map_or(f64::INFINITY, |d| d.frobenius_norm())
    };
    let residual_a = residual(a, &ca);
    let residual_b = residual(b, &cb);
    VerifyReport {
        residual_a,
        residual_b,
        unitarity_defect,
        bound,
        passed: residual_a <= bound && residual_b <= bound && unitarity_defect <= tol * dim,
    }
}

/// Lay out block specs on consecutive indices, pairs and singletons in the given order.
pub fn canonical_matrices(spec: &[BlockSpec]) -> Result<(HermitianOperator, HermitianOperator)> {
    validate_spec(spec)?;
    let dim: usize = spec.iter().map(BlockSpec::dim).sum();
    let mut blocks = Vec::with_capacity(spec.len());
    let mut next = 0;
    for s in spec {
        match *s {
            BlockSpec::Pair { a, b } => {
                blocks.push(Block::Pair(PairBlock { a, b, index_pair: (next, next + 1) }));
                next += 2;
            }
            BlockSpec::Singleton { alpha, beta } => {
                blocks.push(Block::Singleton(Singleton { alpha, beta, index: next }));
                next += 1;
            }
        }
    }
    reconstruct(&CanonicalForm {
        dim,
        blocks,
        transform: UnitaryMatrix::identity(dim),
        tolerances: Tolerances { tol: 0.0, cluster: 0.0, rank: 0.0 },
    })
}

/// Build the canonical pair for `spec` and hide it behind a seeded random unitary.
pub fn random_anticommuting_pair(spec: &[BlockSpec], seed: u64) -> Result<(HermitianOperator, HermitianOperator)> {
    let (ca, cb) = canonical_matrices(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_unitary(ca.dim(), &mut rng);
    let hide = |m: &HermitianOperator| -> Result<HermitianOperator> {
        HermitianOperator::new(conjugate(&u, m.matrix())?.hermitian_part()?)
    };
    Ok((hide(&ca)?, hide(&cb)?))
}

/// A seeded block spec of total dimension `dim`.
///
/// Pair strengths `a` are often drawn from a small fixed set so that several
/// blocks share an eigenvalue of `A`; singletons are either `(±α, 0)` or
/// `(0, β)`, with `β = 0` allowed.
pub fn random_spec(dim: usize, seed: u64) -> Result<Vec<BlockSpec>> {
    if dim == 0 {
        return Err(Error::InvalidArgument("spec dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut left = dim;
    while left > 0 {
        if left >= 2 && rng.random_bool(0.6) {
            let a = if rng.random_bool(0.5) {
                [0.5, 1.0, 2.0][rng.random_range(0..3)]
            } else {
                rng.random_range(0.3..3.0)
            };
            out.push(BlockSpec::Pair { a, b: rng.random_range(0.2..3.0) });
            left -= 2;
        } else {
            let v = match rng.random_range(0..4) {
                0 => 0.0,
                1 => [0.5, 1.0, 2.0][rng.random_range(0..3)],
                _ => rng.random_range(0.3..3.0),
            };
            let v = if rng.random_bool(0.5) { -v } else { v };
            out.push(if rng.random_bool(0.5) {
                BlockSpec::Singleton { alpha: v, beta: 0.0 }
            } else {
                BlockSpec::Singleton { alpha: 0.0, beta: v }
            });
            left -= 1;
        }
    }
    Ok(out)
}

/// Whether two specs hold the same blocks up to order, each value within `tol`.
pub fn same_blocks(x: &[BlockSpec], y: &[BlockSpec], tol: f64) -> bool {
    let close = |p: &BlockSpec, q: &BlockSpec| match (*p, *q) {
        (BlockSpec::Pair { a, b }, BlockSpec::Pair { a: c, b: d }) => (a - c).abs() <= tol && (b - d).abs() <= tol,
        (BlockSpec::Singleton { alpha, beta }, BlockSpec::Singleton { alpha: c, beta: d }) => {
            (alpha - c).abs() <= tol && (beta - d).abs() <= tol
        }
        _ => false,
    };
    if x.len() != y.len() {
        return false;
    }
    // greedy matching is exact here as long as distinct blocks are separated by more than 2·tol
    let mut used = vec![false; y.len()];
    x.iter().all(|p| match (0..y.len()).find(|&j| !used[j] && close(p, &y[j])) {
        Some(j) => {
            used[j] = true;
            true
        }
        None => false,
    })
}

fn validate_spec(spec: &[BlockSpec]) -> Result<()> {
    if spec.is_empty() {
        return Err(Error::InvalidBlockSpec("at least one block is required".into()));
    }
    for s in spec {
        match *s {
            BlockSpec::Pair { a, b } => {
                if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
                    return Err(Error::InvalidBlockSpec(format!("pair block needs finite a, b > 0, got ({a}, {b})")));
                }
            }
            BlockSpec::Singleton { alpha, beta } => {
                if !(alpha.is_finite() && beta.is_finite()) {
                    return Err(Error::InvalidBlockSpec("singleton values must be finite".into()));
                }
                if alpha != 0.0 && beta != 0.0 {
                    return Err(Error::InvalidBlockSpec(format!(
                        "singleton ({alpha}, {beta}) would not anticommute"
                    )));
                }
            }
        }
    }
    Ok(())
}
