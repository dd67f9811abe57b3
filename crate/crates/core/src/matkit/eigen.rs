use super::{fix_phase, Complex64, ComplexMatrix, HermitianOperator, UnitaryMatrix, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const PHASE_EPS: f64 = 1e-12;

/// Spectrum and eigenbasis of a Hermitian operator.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub basis: UnitaryMatrix,
}

impl EigenDecomposition {
    /// `‖H·V − V·Λ‖_F`.
    pub fn residual(&self, h: &ComplexMatrix) -> f64 {
        let v = self.basis.matrix();
        let hv = h * v;
        let mut acc = 0.0;
        for i in 0..v.rows() {
            for j in 0..v.cols() {
                acc += (hv[(i, j)] - v[(i, j)] * self.eigenvalues[j]).norm_sqr();
            }
        }
        acc.sqrt()
    }
}

/// Eigendecomposition of a Hermitian operator by cyclic complex Jacobi sweeps.
///
/// Eigenvalues come back ascending. Each eigenvector is phased so that its
/// first component of modulus above `1e-12` is real and positive; ties in the
/// eigenvalues keep the order the sweeps produced, so identical inputs give
/// bit-identical output.
pub fn eig_hermitian(h: &HermitianOperator) -> Result<EigenDecomposition> {
    let n = h.dim();
    let mut a = h.matrix().hermitian_part()?;
    let mut v = ComplexMatrix::identity(n);

    let total = a.frobenius_norm();
    let target = f64::EPSILON * total.max(f64::MIN_POSITIVE);

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(Error::NoConvergence {
            routine: "eig_hermitian",
            sweeps: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut basis = ComplexMatrix::zeros(n, n);
    for (jj, &j) in order.iter().enumerate() {
        let mut col = v.column(j);
        fix_phase(&mut col, PHASE_EPS);
        for (i, z) in col.into_iter().enumerate() {
            basis[(i, jj)] = z;
        }
    }

    Ok(EigenDecomposition {
        eigenvalues,
        basis: UnitaryMatrix::from_trusted(basis),
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation zeroing `a[p][q]`.
///
/// With `a[p][q] = |g|·e`, the plane rotation is
/// `[[c, s·e], [−s·ē, c]]` on columns `(p, q)`, which reduces the 2×2
/// Hermitian sub-problem to the real symmetric case.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // negligible against both diagonal entries: clear it without rotating
    if g_abs < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let e = g / g_abs;
    let theta = (aqq - app) / (2.0 * g_abs);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let se = e * s;
    let se_conj = se.conj();
    let n = a.rows();

    // columns: A ← A·V
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * se_conj;
        a[(k, q)] = akp * se + akq * c;
    }
    // rows: A ← V^H·A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * se;
        a[(q, k)] = apk * se_conj + aqk * c;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * se_conj;
        v[(k, q)] = vkp * se + vkq * c;
    }
}
