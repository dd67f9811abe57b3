//! Phase classification of Hermitian pairs under `AB = ωBA`.
//!
//! For Hermitian `A`, `B` the relation forces `|ω| = 1` whenever `AB ≠ 0`,
//! and in fact `ω = ±1`. When `AB = 0` every `ω` works; that case is
//! reported as [`OmegaKind::Degenerate`].

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matkit::{
    c64, conjugate, random_complex_matrix, random_hermitian, random_unitary, Complex64, ComplexMatrix,
    HermitianOperator,
};

/// Default relative tolerance for classification.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A fitted `ω` farther than this from both `+1` and `−1` counts as off-axis.
pub const OMEGA_AXIS_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OmegaKind {
    Commute,
    Anticommute,
    /// Reserved. Both residuals small forces `AB = 0`, which is `Degenerate`.
    Both,
    Degenerate,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OmegaClass {
    pub kind: OmegaKind,
    /// `‖AB − BA‖_F`
    pub residual_commute: f64,
    /// `‖AB + BA‖_F`
    pub residual_anticommute: f64,
    /// `‖AB‖_F`
    pub product_norm: f64,
    /// `tol · max(1, ‖A‖_F‖B‖_F)`, the threshold all three were compared against.
    pub bound: f64,
}

/// `‖AB − ω·BA‖_F`.
pub fn residual(a: &HermitianOperator, b: &HermitianOperator, omega: Complex64) -> Result<f64> {
    check_dims(a, b)?;
    let ab = a.matrix().try_mul(b.matrix())?;
    let ba = b.matrix().try_mul(a.matrix())?;
    Ok(ab.try_sub(&ba.scale(omega))?.frobenius_norm())
}

/// Classify the pair. Degenerate is tested first, then commute, then anticommute.
pub fn classify(a: &HermitianOperator, b: &HermitianOperator, tol: f64) -> Result<OmegaClass> {
    check_dims(a, b)?;
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be nonnegative, got {tol}")));
    }
    let ab = a.matrix().try_mul(b.matrix())?;
    let ba = b.matrix().try_mul(a.matrix())?;
    let residual_commute = ab.try_sub(&ba)?.frobenius_norm();
    let residual_anticommute = ab.try_add(&ba)?.frobenius_norm();
    let product_norm = ab.frobenius_norm();
    let bound = tol * (a.frobenius_norm() * b.frobenius_norm()).max(1.0);

    let kind = if product_norm <= bound {
        OmegaKind::Degenerate
    } else if residual_commute <= bound {
        OmegaKind::Commute
    } else if residual_anticommute <= bound {
        OmegaKind::Anticommute
    } else {
        OmegaKind::None
    };
    Ok(OmegaClass {
        kind,
        residual_commute,
        residual_anticommute,
        product_norm,
        bound,
    })
}

/// Unit-modulus `ω` minimizing `‖AB − ωBA‖_F`, i.e. the phase of the
/// Frobenius inner product `⟨BA, AB⟩`. `None` when that product vanishes
/// and every phase is equally good.
pub fn best_fit_omega(a: &HermitianOperator, b: &HermitianOperator) -> Result<Option<Complex64>> {
    check_dims(a, b)?;
    let ab = a.matrix().try_mul(b.matrix())?;
    let ba = b.matrix().try_mul(a.matrix())?;
    let overlap = ba.inner(&ab)?;
    let n = overlap.norm();
    Ok((n > 0.0).then(|| overlap / n))
}

/// Counters from [`phase_theorem_scan`].
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ScanReport {
    pub dim: usize,
    pub seed: u64,
    pub total: usize,
    pub degenerate: usize,
    pub commuting: usize,
    pub anticommuting: usize,
    pub none: usize,
    /// Pairs with `AB ≠ 0` whose best-fit `ω` has vanishing residual yet is not `±1`.
    pub counterexamples: usize,
    /// Pairs that were constructed as attempted solutions for a random off-axis `ω`.
    pub off_axis_attempts: usize,
}

/// Generate `trials` seeded Hermitian pairs and look for a solution of
/// `AB = ωBA` with `AB ≠ 0` and `ω ∉ {+1, −1}`.
///
/// Pairs cycle through five families so that every class is exercised:
/// generic, commuting, anticommuting, disjoint-support (`AB = 0`), and an
/// attempted construction for a random off-axis `ω`, where `A` is diagonal
/// in a random basis and `B` is filled wherever the entrywise condition
/// `B_ij (λ_i − ω λ_j) = 0` permits a nonzero entry.
pub fn phase_theorem_scan(dim: usize, trials: usize, seed: u64) -> Result<ScanReport> {
    scan_with_tol(dim, trials, seed, DEFAULT_TOL)
}

pub fn scan_with_tol(dim: usize, trials: usize, seed: u64, tol: f64) -> Result<ScanReport> {
    if dim < 2 {
        return Err(Error::InvalidArgument(format!("scan dimension must be at least 2, got {dim}")));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("scan needs at least one trial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ScanReport {
        dim,
        seed,
        ..ScanReport::default()
    };

    for trial in 0..trials {
        let (a, b) = match trial % 5 {
            0 => (random_hermitian(dim, &mut rng), random_hermitian(dim, &mut rng)),
            1 => commuting_pair(dim, &mut rng),
            2 => anticommuting_pair(dim, &mut rng),
            3 => disjoint_pair(dim, &mut rng),
            _ => {
                report.off_axis_attempts += 1;
                off_axis_attempt(dim, &mut rng)
            }
        };
        let class = classify(&a, &b, tol)?;
        report.total += 1;
        match class.kind {
            OmegaKind::Degenerate => report.degenerate += 1,
            OmegaKind::Commute => report.commuting += 1,
            OmegaKind::Anticommute => report.anticommuting += 1,
            OmegaKind::None | OmegaKind::Both => report.none += 1,
        }
        if class.product_norm > class.bound && is_off_axis_solution(&a, &b, class.bound)? {
            report.counterexamples += 1;
        }
    }
    Ok(report)
}

fn is_off_axis_solution(a: &HermitianOperator, b: &HermitianOperator, bound: f64) -> Result<bool> {
    let Some(omega) = best_fit_omega(a, b)? else {
        return Ok(false);
    };
    let off_axis = (omega - 1.0).norm() > OMEGA_AXIS_TOL && (omega + 1.0).norm() > OMEGA_AXIS_TOL;
    Ok(off_axis && residual(a, b, omega)? <= bound)
}

fn rotated<R: Rng>(dim: usize, a: ComplexMatrix, b: ComplexMatrix, rng: &mut R) -> (HermitianOperator, HermitianOperator) {
    let u = random_unitary(dim, rng);
    let wrap = |m: ComplexMatrix| {
        let m = conjugate(&u, &m).and_then(|m| m.hermitian_part()).expect("square");
        HermitianOperator::new(m).expect("hermitian by construction")
    };
    (wrap(a), wrap(b))
}

fn random_reals<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-2.0..2.0)).collect()
}

fn commuting_pair<R: Rng>(dim: usize, rng: &mut R) -> (HermitianOperator, HermitianOperator) {
    let a = ComplexMatrix::from_diag(&random_reals(dim, rng));
    let b = ComplexMatrix::from_diag(&random_reals(dim, rng));
    rotated(dim, a, b, rng)
}

fn anticommuting_pair<R: Rng>(dim: usize, rng: &mut R) -> (HermitianOperator, HermitianOperator) {
    let plus = rng.random_range(1..dim);
    let minus = rng.random_range(1..=dim - plus);
    let zero = dim - plus - minus;
    let mu: f64 = rng.random_range(0.25..2.0);

    let mut diag = vec![mu; plus];
    diag.extend(std::iter::repeat_n(-mu, minus));
    diag.extend(std::iter::repeat_n(0.0, zero));
    let a = ComplexMatrix::from_diag(&diag);

    let mut b = ComplexMatrix::zeros(dim, dim);
    let cross = random_complex_matrix(plus, minus, rng);
    for i in 0..plus {
        for j in 0..minus {
            b[(i, plus + j)] = cross[(i, j)];
            b[(plus + j, i)] = cross[(i, j)].conj();
        }
    }
    if zero > 0 {
        let kernel = random_hermitian(zero, rng);
        let off = plus + minus;
        for i in 0..zero {
            for j in 0..zero {
                b[(off + i, off + j)] = kernel.matrix()[(i, j)];
            }
        }
    }
    rotated(dim, a, b, rng)
}

fn disjoint_pair<R: Rng>(dim: usize, rng: &mut R) -> (HermitianOperator, HermitianOperator) {
    let split = rng.random_range(1..dim);
    let mut da = random_reals(split, rng);
    da.resize(dim, 0.0);
    let mut db = vec![0.0; split];
    db.extend(random_reals(dim - split, rng));
    rotated(dim, ComplexMatrix::from_diag(&da), ComplexMatrix::from_diag(&db), rng)
}

fn off_axis_attempt<R: Rng>(dim: usize, rng: &mut R) -> (HermitianOperator, HermitianOperator) {
    // keep ω well away from the real axis
    let theta = rng.random_range(0.05..(std::f64::consts::PI - 0.05)) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let omega = Complex64::from_polar(1.0, theta);
    let palette = [0.0, 1.0, -1.0, 2.0, -2.0];
    let lambda: Vec<f64> = (0..dim)
        .map(|_| {
            if rng.random_bool(0.8) {
                palette[rng.random_range(0..palette.len())]
            } else {
                rng.random_range(-2.0..2.0)
            }
        })
        .collect();
    let a = ComplexMatrix::from_diag(&lambda);
    let mut b = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let allowed = (c64(lambda[i], 0.0) - omega * lambda[j]).norm() <= 1e-12
                && (c64(lambda[j], 0.0) - omega * lambda[i]).norm() <= 1e-12;
            if allowed {
                let z = if i == j {
                    c64(rng.random_range(-2.0..2.0), 0.0)
                } else {
                    c64(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))
                };
                b[(i, j)] = z;
                b[(j, i)] = z.conj();
            }
        }
    }
    rotated(dim, a, b, rng)
}

fn check_dims(a: &HermitianOperator, b: &HermitianOperator) -> Result<()> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            left: a.matrix().shape(),
            right: b.matrix().shape(),
        })
    }
}
