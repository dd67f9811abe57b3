use super::{fix_phase, orthonormalize_columns, Complex64, ComplexMatrix, UnitaryMatrix, ONE};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const PHASE_EPS: f64 = 1e-12;

/// `M = left · diag(singular_values) · right^H`.
///
/// `left` is `rows × rows`, `right` is `cols × cols`, and there are
/// `min(rows, cols)` singular values in descending order.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub left: UnitaryMatrix,
    pub singular_values: Vec<f64>,
    pub right: UnitaryMatrix,
}

impl SvdResult {
    /// Rebuild the factored matrix.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.left.dim(), self.right.dim());
        let mut sigma = ComplexMatrix::zeros(m, n);
        for (k, &s) in self.singular_values.iter().enumerate() {
            sigma[(k, k)] = Complex64::new(s, 0.0);
        }
        &(self.left.matrix() * &sigma) * &self.right.matrix().adjoint()
    }
}

/// Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
///
/// Each left singular vector paired with a right one has its first
/// component of modulus above `1e-12` made real and positive, with the
/// compensating phase applied to the right vector.
pub fn svd(m: &ComplexMatrix) -> Result<SvdResult> {
    if m.rows() >= m.cols() {
        svd_tall(m)
    } else {
        // M^H = U S V^H  =>  M = V S U^H
        let t = svd_tall(&m.adjoint())?;
        let mut left = t.right.matrix().clone();
        let mut right = t.left.matrix().clone();
        normalize_pair_phases(&mut left, &mut right, t.singular_values.len());
        Ok(SvdResult {
            left: UnitaryMatrix::from_trusted(left),
            singular_values: t.singular_values,
            right: UnitaryMatrix::from_trusted(right),
        })
    }
}

fn svd_tall(m: &ComplexMatrix) -> Result<SvdResult> {
    let (rows, cols) = m.shape();
    let mut w: Vec<Vec<Complex64>> = (0..cols).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); cols];
            e[j] = ONE;
            e
        })
        .collect();

    let mut converged = cols == 1;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols.saturating_sub(1) {
            for q in p + 1..cols {
                rotated |= orthogonalize_pair(&mut w, &mut v, p, q);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            routine: "svd",
            sweeps: MAX_SWEEPS,
        });
    }

    let norms: Vec<f64> = w.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let scale = norms.iter().cloned().fold(0.0, f64::max);
    let null_cut = scale * f64::EPSILON * rows.max(cols) as f64;

    let mut singular_values = Vec::with_capacity(cols);
    let mut left_cols = Vec::with_capacity(rows);
    let mut right_cols = Vec::with_capacity(cols);
    for &j in &order {
        let s = norms[j];
        right_cols.push(v[j].clone());
        if s > null_cut && s > 0.0 {
            singular_values.push(s);
            left_cols.push(w[j].iter().map(|z| z / s).collect::<Vec<_>>());
        } else {
            singular_values.push(if s > 0.0 { s } else { 0.0 });
        }
    }
    let left_cols = orthonormalize_columns(rows, left_cols, rows);

    let mut left = ComplexMatrix::from_columns(rows, &left_cols)?;
    let mut right = ComplexMatrix::from_columns(cols, &right_cols)?;
    normalize_pair_phases(&mut left, &mut right, cols.min(rows));

    Ok(SvdResult {
        left: UnitaryMatrix::from_trusted(left),
        singular_values,
        right: UnitaryMatrix::from_trusted(right),
    })
}

/// Rotate columns `p`, `q` of `w` to be orthogonal; returns whether a
/// rotation was applied.
fn orthogonalize_pair(w: &mut [Vec<Complex64>], v: &mut [Vec<Complex64>], p: usize, q: usize) -> bool {
    let alpha: f64 = w[p].iter().map(|z| z.norm_sqr()).sum();
    let beta: f64 = w[q].iter().map(|z| z.norm_sqr()).sum();
    let gamma: Complex64 = w[p].iter().zip(&w[q]).map(|(a, b)| a.conj() * b).sum();
    let g_abs = gamma.norm();
    if g_abs == 0.0 || g_abs <= f64::EPSILON * (alpha * beta).sqrt() {
        return false;
    }
    let e = gamma / g_abs;
    let theta = (beta - alpha) / (2.0 * g_abs);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let se = e * s;
    let se_conj = se.conj();
    for cols in [w, v] {
        let (head, tail) = cols.split_at_mut(q);
        let cp = &mut head[p];
        let cq = &mut tail[0];
        for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
            let (xp, xq) = (*x, *y);
            *x = xp * c - xq * se_conj;
            *y = xp * se + xq * c;
        }
    }
    true
}

fn normalize_pair_phases(left: &mut ComplexMatrix, right: &mut ComplexMatrix, paired: usize) {
    for j in 0..left.cols() {
        let mut col = left.column(j);
        let phase = fix_phase(&mut col, PHASE_EPS);
        for (i, z) in col.into_iter().enumerate() {
            left[(i, j)] = z;
        }
        if j < paired {
            for i in 0..right.rows() {
                right[(i, j)] *= phase;
            }
        }
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
