//! Dense complex matrix kernel.
//!
//! Everything downstream (phase classification, canonical reduction, GHZ
//! tensor products) is built on the three carriers defined here:
//! [`ComplexMatrix`] for arbitrary rectangular data, and the validated
//! square wrappers [`HermitianOperator`] and [`UnitaryMatrix`].
//!
//! The decompositions ([`eig_hermitian`], [`svd`]) are cyclic Jacobi
//! methods. They are slower than Householder-based LAPACK routines but
//! accurate to working precision and fully deterministic, which is what
//! golden tests at the dimensions used here need.

mod eigen;
mod random;
mod svd;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub use num_complex::Complex64;

pub use eigen::{eig_hermitian, EigenDecomposition};
pub use random::{orthonormalize_columns, random_complex_matrix, random_hermitian, random_unitary};
pub use svd::{svd, SvdResult};

use crate::error::{Error, Result};

/// Default relative tolerance for Hermitian and unitary validation.
pub const DEFAULT_VALIDATION_TOL: f64 = 1e-9;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Shorthand for a complex scalar.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense row-major complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major data, rejecting empty shapes and non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidShape {
                rows,
                cols,
                reason: "dimensions must be positive",
            });
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidShape {
                rows,
                cols,
                reason: "entry count does not match dimensions",
            });
        }
        if let Some(k) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::InvalidShape {
                rows: n_rows,
                cols: n_cols,
                reason: "ragged rows",
            });
        }
        Self::new(n_rows, n_cols, rows.concat())
    }

    /// Build from rows of real numbers.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| c64(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Square diagonal matrix with the given real diagonal.
    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = c64(d, 0.0);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n_rows: usize, columns: &[Vec<Complex64>]) -> Result<Self> {
        let n_cols = columns.len();
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::InvalidShape {
                rows: n_rows,
                cols: n_cols,
                reason: "dimensions must be positive",
            });
        }
        let mut m = Self::zeros(n_rows, n_cols);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n_rows {
                return Err(Error::InvalidShape {
                    rows: n_rows,
                    cols: n_cols,
                    reason: "column length does not match row count",
                });
            }
            for (i, &z) in col.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Sub-matrix made of the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, jj)] = self[(i, j)];
            }
        }
        m
    }

    /// Sub-matrix at the intersection of the listed rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (ii, &i) in rows.iter().enumerate() {
            for (jj, &j) in cols.iter().enumerate() {
                m[(ii, jj)] = self[(i, j)];
            }
        }
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(c64(s, 0.0))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * m];
        for i in 0..n {
            let row = &self.data[i * k..(i + 1) * k];
            let dst = &mut out[i * m..(i + 1) * m];
            for (l, &a) in row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let src = &other.data[l * m..(l + 1) * m];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        Ok(Self {
            rows: n,
            cols: m,
            data: out,
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Kronecker product `self ⊗ other` (first factor most significant).
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut m = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Result<Complex64> {
        self.check_square()?;
        Ok((0..self.rows).map(|i| self[(i, i)]).sum())
    }

    /// Frobenius inner product `tr(self^H other)`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `(M + M^H) / 2`; used to scrub rounding asymmetry after products.
    pub fn hermitian_part(&self) -> Result<Self> {
        self.check_square()?;
        let adj = self.adjoint();
        Ok(self.zip_with(&adj, |a, b| (a + b) * 0.5))
    }

    /// `‖M − M^H‖_F`.
    pub fn hermiticity_defect(&self) -> Result<f64> {
        self.check_square()?;
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        Ok(acc.sqrt())
    }

    pub(crate) fn check_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

// Operator impls panic on shape mismatch; use the try_* methods for fallible paths.
impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A square matrix validated to be Hermitian within a relative tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
    validation_tol: f64,
}

impl HermitianOperator {
    /// Validate with [`DEFAULT_VALIDATION_TOL`].
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tol(matrix, DEFAULT_VALIDATION_TOL)
    }

    /// Accepts `M` when `‖M − M^H‖_F ≤ tol · max(1, ‖M‖_F)`.
    pub fn with_tol(matrix: ComplexMatrix, validation_tol: f64) -> Result<Self> {
        if validation_tol.is_nan() || validation_tol < 0.0 {
            return Err(Error::InvalidArgument("validation tolerance must be nonnegative".into()));
        }
        let deviation = matrix.hermiticity_defect()?;
        let bound = validation_tol * matrix.frobenius_norm().max(1.0);
        if deviation > bound {
            return Err(Error::NotHermitian { deviation, bound });
        }
        Ok(Self {
            matrix,
            validation_tol,
        })
    }

    /// Real diagonal operator.
    pub fn diag(values: &[f64]) -> Self {
        Self {
            matrix: ComplexMatrix::from_diag(values),
            validation_tol: DEFAULT_VALIDATION_TOL,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn validation_tol(&self) -> f64 {
        self.validation_tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.frobenius_norm()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            matrix: self.matrix.scale_real(s),
            validation_tol: self.validation_tol,
        }
    }
}

/// A square matrix validated to be unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    matrix: ComplexMatrix,
    validation_tol: f64,
}

impl UnitaryMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tol(matrix, DEFAULT_VALIDATION_TOL)
    }

    /// Accepts `U` when `‖U^H U − I‖_F ≤ tol · dim`.
    pub fn with_tol(matrix: ComplexMatrix, validation_tol: f64) -> Result<Self> {
        matrix.check_square()?;
        let deviation = unitarity_defect(&matrix);
        let bound = validation_tol * matrix.rows() as f64;
        if deviation > bound {
            return Err(Error::NotUnitary { deviation, bound });
        }
        Ok(Self {
            matrix,
            validation_tol,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(n),
            validation_tol: DEFAULT_VALIDATION_TOL,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            validation_tol: self.validation_tol,
        }
    }

    /// Product of two unitaries; unitarity is preserved up to rounding.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.try_mul(&other.matrix)?,
            validation_tol: self.validation_tol.max(other.validation_tol),
        })
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.kron(&other.matrix),
            validation_tol: self.validation_tol.max(other.validation_tol),
        }
    }

    /// `‖U^H U − I‖_F`.
    pub fn defect(&self) -> f64 {
        unitarity_defect(&self.matrix)
    }

    /// Wrap without validation. Callers guarantee unitarity by construction.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        Self {
            matrix,
            validation_tol: DEFAULT_VALIDATION_TOL,
        }
    }
}

pub(crate) fn unitarity_defect(m: &ComplexMatrix) -> f64 {
    let gram = m.adjoint().try_mul(m).expect("square");
    let mut acc = 0.0;
    for i in 0..gram.rows() {
        for j in 0..gram.cols() {
            let target = if i == j { ONE } else { ZERO };
            acc += (gram[(i, j)] - target).norm_sqr();
        }
    }
    acc.sqrt()
}

/// `U · M · U^H`.
pub fn conjugate(u: &UnitaryMatrix, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if u.dim() != m.rows() || !m.is_square() {
        return Err(Error::ShapeMismatch {
            left: u.matrix().shape(),
            right: m.shape(),
        });
    }
    u.matrix().try_mul(m)?.try_mul(&u.matrix().adjoint())
}

/// Conjugate a Hermitian operator, re-symmetrizing the rounding error away.
pub fn conjugate_hermitian(u: &UnitaryMatrix, h: &HermitianOperator) -> Result<HermitianOperator> {
    let m = conjugate(u, h.matrix())?.hermitian_part()?;
    HermitianOperator::with_tol(m, h.validation_tol())
}

/// `‖M1 − M2‖_F`.
pub fn frobenius_distance(m1: &ComplexMatrix, m2: &ComplexMatrix) -> Result<f64> {
    Ok(m1.try_sub(m2)?.frobenius_norm())
}

/// Pauli X.
pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("static shape")
}

/// Pauli Y.
pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![ZERO, -I, I, ZERO]).expect("static shape")
}

/// Pauli Z.
pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_diag(&[1.0, -1.0])
}

/// Kronecker product of a non-empty list of factors.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> Option<ComplexMatrix> {
    factors.into_iter().fold(None, |acc, f| match acc {
        None => Some(f.clone()),
        Some(m) => Some(m.kron(f)),
    })
}

/// Rotate `v` by a global phase so its first component with modulus above
/// `eps` is real and positive. Returns the applied phase factor.
pub(crate) fn fix_phase(v: &mut [Complex64], eps: f64) -> Complex64 {
    let Some(lead) = v.iter().copied().find(|z| z.norm() > eps) else {
        return ONE;
    };
    let phase = lead.conj() / lead.norm();
    for z in v.iter_mut() {
        *z *= phase;
    }
    // the leading entry is exactly real after rotation, up to rounding
    if let Some(z) = v.iter_mut().find(|z| z.norm() > eps) {
        z.im = 0.0;
    }
    phase
}
