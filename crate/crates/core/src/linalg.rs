//! Dense complex Hermitian linear algebra.
//!
//! Matrices are small (the regime is dims up to a few dozen), row-major and
//! dense. Eigendecomposition uses the cyclic complex Jacobi method, which
//! keeps high relative accuracy and is deterministic for a fixed input.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result};

/// Maximum `|A - A†|` entry accepted as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Jacobi sweeps before giving up.
pub const MAX_SWEEPS: usize = 100;
/// Convergence threshold on the off-diagonal Frobenius norm, relative to `‖A‖_F`.
pub const OFF_DIAGONAL_REL_TOL: f64 = 1e-14;

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Wraps row-major entries; fails unless `entries.len() == dim * dim`.
    pub fn from_row_major(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::NotSquare {
                rows: dim,
                cols: entries.len().checked_div(dim).unwrap_or(0),
            });
        }
        Ok(ComplexMatrix { dim, data: entries })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(dim, data)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    /// `U A U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.matmul(self).matmul(&u.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Largest entry of `|A - A†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn scale(&self, factor: f64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "add dimension mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            dim: self.dim,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Kronecker product `self ⊗ other` with `self` as the major (outer) factor.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Principal submatrix on the given (ordered) index set.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let mut out = Self::zeros(k);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// A [`ComplexMatrix`] known to be Hermitian within [`HERMITICITY_TOL`].
///
/// The stored matrix is exactly Hermitian: validation symmetrizes away the
/// accepted round-off asymmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        HermitianOperator {
            matrix: ComplexMatrix::from_real_diagonal(diag),
        }
    }

    /// Real diagonal entries.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `Re Tr(self · other)`; the imaginary part vanishes for Hermitian pairs.
    pub fn trace_product(&self, other: &HermitianOperator) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.matrix[(i, j)] * other.matrix[(j, i)]).re;
            }
        }
        acc
    }

    /// Wraps a matrix the caller has built to be exactly Hermitian.
    pub(crate) fn from_hermitian_unchecked(matrix: ComplexMatrix) -> Self {
        HermitianOperator { matrix }
    }
}

/// Accepts `m` iff `‖m − m†‖_max ≤ HERMITICITY_TOL`.
pub fn validate_hermitian(m: ComplexMatrix) -> Result<HermitianOperator> {
    let residual = m.hermiticity_residual();
    if !residual.is_finite() || residual > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            max_asymmetry: residual,
        });
    }
    let n = m.dim;
    let mut sym = m;
    for i in 0..n {
        sym[(i, i)].im = 0.0;
        for j in (i + 1)..n {
            let avg = (sym[(i, j)] + sym[(j, i)].conj()) * 0.5;
            sym[(i, j)] = avg;
            sym[(j, i)] = avg.conj();
        }
    }
    Ok(HermitianOperator { matrix: sym })
}

/// Eigenvalues ascending with matching orthonormal eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    /// `V f(Λ) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let fvals: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &fk) in fvals.iter().enumerate() {
                    acc += v[(i, k)] * v[(j, k)].conj() * fk;
                }
                if i == j {
                    acc.im = 0.0;
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
        }
        out
    }

    /// `max |V†V − I|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let v = &self.eigenvectors;
        v.adjoint()
            .matmul(v)
            .sub(&ComplexMatrix::identity(v.dim))
            .max_abs()
    }
}

/// Cyclic Jacobi eigendecomposition of a Hermitian operator.
///
/// Each rotation first removes the phase of the pivot `A[p][q]` and then
/// applies a real plane rotation that zeroes it.
pub fn eigh(h: &HermitianOperator) -> Result<EigenSystem> {
    let n = h.dim();
    let mut a = h.matrix.clone();
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_REL_TOL * a.frobenius_norm();

    let mut converged = n <= 1;
    let mut sweeps = 0;
    while !converged {
        let off = off_diagonal_norm(&a);
        if off <= threshold || off == 0.0 {
            converged = true;
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::ConvergenceFailure {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }
    debug_assert!(converged);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    libm::sqrt(acc)
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Pivot negligible against both diagonal entries: zero it outright.
    if g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta >= 0.0 {
        1.0 / (theta + libm::sqrt(1.0 + theta * theta))
    } else {
        -1.0 / (-theta + libm::sqrt(1.0 + theta * theta))
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;

    // J = diag(1, e^{-iφ}) · R, acting on columns (p, q).
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.dim;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// `V f(Λ) V†` for a real scalar map `f`.
pub fn func_of_hermitian(
    h: &HermitianOperator,
    f: impl Fn(f64) -> f64,
) -> Result<HermitianOperator> {
    let eig = eigh(h)?;
    if eig.eigenvalues.iter().any(|&x| !f(x).is_finite()) {
        return Err(Error::NonFiniteResult);
    }
    Ok(HermitianOperator::from_hermitian_unchecked(
        eig.reconstruct_with(f),
    ))
}

/// `½ Σ |eig(a − b)|`.
pub fn trace_distance(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let diff = HermitianOperator::from_hermitian_unchecked(a.matrix.sub(&b.matrix));
    let eig = eigh(&diff)?;
    Ok(0.5 * eig.eigenvalues.iter().map(|x| x.abs()).sum::<f64>())
}
