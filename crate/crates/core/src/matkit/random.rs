//! Seeded random matrices.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{Complex64, ComplexMatrix, HermitianOperator, UnitaryMatrix};

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn random_complex_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..rows * cols)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        })
        .collect();
    ComplexMatrix::new(rows, cols, data).expect("finite gaussian samples")
}

/// GUE-like random Hermitian operator.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> HermitianOperator {
    let g = random_complex_matrix(dim, dim, rng);
    let h = g.hermitian_part().expect("square");
    HermitianOperator::new(h).expect("hermitian by construction")
}

/// Haar-distributed unitary: Gram–Schmidt QR of a complex Gaussian matrix,
/// with the phases of R's diagonal moved into Q.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> UnitaryMatrix {
    loop {
        let g = random_complex_matrix(dim, dim, rng);
        let cols: Vec<Vec<Complex64>> = (0..dim).map(|j| g.column(j)).collect();
        if let Some(q) = gram_schmidt_qr(&cols) {
            let m = ComplexMatrix::from_columns(dim, &q).expect("square");
            return UnitaryMatrix::from_trusted(m);
        }
    }
}

/// Modified Gram–Schmidt with one re-orthogonalization pass. The columns of
/// the returned Q follow the convention that `R` has a positive real
/// diagonal. Returns `None` if the input is numerically rank deficient.
fn gram_schmidt_qr(cols: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(cols.len());
    for c in cols {
        let mut v = c.clone();
        let original = norm(&v);
        for _ in 0..2 {
            for e in &q {
                let proj: Complex64 = e.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(e) {
                    *x -= proj * y;
                }
            }
        }
        let n = norm(&v);
        if n <= 1e-10 * original.max(f64::MIN_POSITIVE) {
            return None;
        }
        v.iter_mut().for_each(|x| *x /= n);
        q.push(v);
    }
    Some(q)
}

/// Extend a set of orthonormal columns to `target` orthonormal columns of
/// length `n`, appending standard basis vectors projected out of the current
/// span. At each step the candidate with the largest residual is taken,
/// lowest index on ties.
pub fn orthonormalize_columns(n: usize, mut cols: Vec<Vec<Complex64>>, target: usize) -> Vec<Vec<Complex64>> {
    assert!(target <= n, "cannot hold more than n orthonormal columns");
    while cols.len() < target {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for i in 0..n {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[i] = Complex64::new(1.0, 0.0);
            for _ in 0..2 {
                for e in &cols {
                    let proj: Complex64 = e.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (x, y) in v.iter_mut().zip(e) {
                        *x -= proj * y;
                    }
                }
            }
            let r = norm(&v);
            if best.as_ref().is_none_or(|(b, _)| r > *b + 1e-12) {
                best = Some((r, v));
            }
        }
        let (r, mut v) = best.expect("n > 0");
        v.iter_mut().for_each(|x| *x /= r);
        cols.push(v);
    }
    cols
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
