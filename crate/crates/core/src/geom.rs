//! Small fixed-capacity geometry: vectors, symmetric matrices and axis boxes
//! in dimensions 1..=3. Everything is `Copy` and allocation-free so the
//! quadrature kernels can evaluate millions of points without touching the
//! heap.

use crate::error::{Error, Result};
use crate::scalar::Real;

pub const MAX_DIM: usize = 3;

/// Validate a spatial dimension.
pub fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// A point or direction in R^n, n <= 3. Unused trailing coordinates are zero.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Vector<F> {
    dim: usize,
    a: [F; MAX_DIM],
}

impl<F: Real> Vector<F> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            a: [F::zero(); MAX_DIM],
        }
    }

    pub fn from_slice(dim: usize, coords: &[F]) -> Result<Self> {
        check_dim(dim)?;
        if coords.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: coords.len(),
            });
        }
        let mut a = [F::zero(); MAX_DIM];
        for (slot, &c) in a.iter_mut().zip(coords) {
            if !c.is_finite() {
                return Err(Error::NonFinite);
            }
            *slot = c;
        }
        Ok(Self { dim, a })
    }

    /// Construct without finiteness checks; used by quadrature grids whose
    /// nodes are finite by construction.
    #[inline]
    pub(crate) fn from_array(dim: usize, a: [F; MAX_DIM]) -> Self {
        Self { dim, a }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn coords(&self) -> &[F] {
        &self.a[..self.dim]
    }

    #[inline]
    pub(crate) fn array(&self) -> [F; MAX_DIM] {
        self.a
    }

    #[inline]
    pub fn get(&self, i: usize) -> F {
        self.a[i]
    }

    #[inline]
    pub fn dot(&self, other: &Self) -> F {
        let mut acc = F::zero();
        for i in 0..self.dim {
            acc += self.a[i] * other.a[i];
        }
        acc
    }

    #[inline]
    pub fn norm_sq(&self) -> F {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> F {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn scale(&self, t: F) -> Self {
        let mut a = self.a;
        for c in a.iter_mut() {
            *c = *c * t;
        }
        Self { dim: self.dim, a }
    }

    #[inline]
    pub fn add(&self, other: &Self) -> Self {
        let mut a = self.a;
        for i in 0..self.dim {
            a[i] += other.a[i];
        }
        Self { dim: self.dim, a }
    }

    #[inline]
    pub fn sub(&self, other: &Self) -> Self {
        let mut a = self.a;
        for i in 0..self.dim {
            a[i] -= other.a[i];
        }
        Self { dim: self.dim, a }
    }

    #[inline]
    pub fn neg(&self) -> Self {
        self.scale(-F::one())
    }

    pub fn unit(&self) -> Option<Self> {
        let n = self.norm();
        if n > F::zero() {
            Some(self.scale(n.recip()))
        } else {
            None
        }
    }

    pub fn basis(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.a[axis] = F::one();
        v
    }
}

/// Symmetric n x n matrix, n <= 3 (full storage, symmetry enforced on input).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymMat<F> {
    dim: usize,
    m: [[F; MAX_DIM]; MAX_DIM],
}

impl<F: Real> SymMat<F> {
    pub fn identity(dim: usize) -> Self {
        let mut m = [[F::zero(); MAX_DIM]; MAX_DIM];
        for (i, row) in m.iter_mut().enumerate().take(dim) {
            row[i] = F::one();
        }
        Self { dim, m }
    }

    /// Build from row-major entries; rejects asymmetric or non-finite input.
    pub fn from_rows(dim: usize, rows: &[Vec<F>]) -> Result<Self> {
        check_dim(dim)?;
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameter {
                name: "matrix",
                reason: format!("expected {dim}x{dim} entries"),
            });
        }
        let mut m = [[F::zero(); MAX_DIM]; MAX_DIM];
        let mut scale = F::zero();
        for i in 0..dim {
            for j in 0..dim {
                let e = rows[i][j];
                if !e.is_finite() {
                    return Err(Error::NonFinite);
                }
                scale = scale.max(e.abs());
                m[i][j] = e;
            }
        }
        let tol = F::of(1e-12) * scale.max(F::one());
        for i in 0..dim {
            for j in (i + 1)..dim {
                if (m[i][j] - m[j][i]).abs() > tol {
                    return Err(Error::InvalidParameter {
                        name: "matrix",
                        reason: "matrix is not symmetric".into(),
                    });
                }
                // symmetrize exactly so quadratic forms are sign-symmetric
                let avg = (m[i][j] + m[j][i]) * F::of(0.5);
                m[i][j] = avg;
                m[j][i] = avg;
            }
        }
        Ok(Self { dim, m })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> F {
        self.m[i][j]
    }

    /// x . (A x)
    #[inline]
    pub fn quad_form(&self, x: &Vector<F>) -> F {
        let a = x.array();
        let mut acc = F::zero();
        for i in 0..self.dim {
            let mut row = F::zero();
            for j in 0..self.dim {
                row += self.m[i][j] * a[j];
            }
            acc += a[i] * row;
        }
        acc
    }

    pub fn det(&self) -> F {
        let m = &self.m;
        match self.dim {
            1 => m[0][0],
            2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
            _ => {
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            }
        }
    }

    /// Inverse via the adjugate; errors on (near-)singular input.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.abs() < F::of(1e-300) {
            return Err(Error::InvalidParameter {
                name: "matrix",
                reason: "matrix is singular".into(),
            });
        }
        let m = &self.m;
        let mut inv = [[F::zero(); MAX_DIM]; MAX_DIM];
        match self.dim {
            1 => inv[0][0] = d.recip(),
            2 => {
                let r = d.recip();
                inv[0][0] = m[1][1] * r;
                inv[1][1] = m[0][0] * r;
                inv[0][1] = -m[0][1] * r;
                inv[1][0] = -m[1][0] * r;
            }
            _ => {
                let r = d.recip();
                inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * r;
                inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * r;
                inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * r;
                inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * r;
                inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * r;
                inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * r;
                inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * r;
                inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * r;
                inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * r;
            }
        }
        // symmetrize against rounding
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let avg = (inv[i][j] + inv[j][i]) * F::of(0.5);
                inv[i][j] = avg;
                inv[j][i] = avg;
            }
        }
        Ok(Self { dim: self.dim, m: inv })
    }

    /// Cholesky check of positive definiteness.
    pub fn is_positive_definite(&self) -> bool {
        let mut l = [[F::zero(); MAX_DIM]; MAX_DIM];
        for i in 0..self.dim {
            for j in 0..=i {
                let mut sum = self.m[i][j];
                for k in 0..j {
                    sum -= l[i][k] * l[j][k];
                }
                if i == j {
                    if sum <= F::zero() {
                        return false;
                    }
                    l[i][j] = sum.sqrt();
                } else {
                    l[i][j] = sum / l[j][j];
                }
            }
        }
        true
    }

    /// Largest eigenvalue by power iteration (deterministic start); adequate
    /// for bounding gauges of ellipsoids.
    pub fn max_eigenvalue(&self) -> F {
        let mut v = [F::one(); MAX_DIM];
        for c in v.iter_mut().skip(self.dim) {
            *c = F::zero();
        }
        // deterministic perturbation so the start is never orthogonal to the
        // dominant eigenvector of a diagonal matrix
        for (i, c) in v.iter_mut().enumerate().take(self.dim) {
            *c += F::of(0.01) * F::of_usize(i + 1);
        }
        let mut lambda = F::zero();
        for _ in 0..200 {
            let mut w = [F::zero(); MAX_DIM];
            for i in 0..self.dim {
                for j in 0..self.dim {
                    w[i] += self.m[i][j] * v[j];
                }
            }
            let norm = w.iter().fold(F::zero(), |acc, &c| acc + c * c).sqrt();
            if norm == F::zero() {
                return F::zero();
            }
            for (c, &wi) in v.iter_mut().zip(w.iter()) {
                *c = wi / norm;
            }
            lambda = norm;
        }
        lambda
    }
}

/// General (not necessarily symmetric) n x n matrix for affine images.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<F> {
    dim: usize,
    m: [[F; MAX_DIM]; MAX_DIM],
}

impl<F: Real> Matrix<F> {
    pub fn from_rows(dim: usize, rows: &[Vec<F>]) -> Result<Self> {
        check_dim(dim)?;
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameter {
                name: "matrix",
                reason: format!("expected {dim}x{dim} entries"),
            });
        }
        let mut m = [[F::zero(); MAX_DIM]; MAX_DIM];
        for i in 0..dim {
            for j in 0..dim {
                if !rows[i][j].is_finite() {
                    return Err(Error::NonFinite);
                }
                m[i][j] = rows[i][j];
            }
        }
        Ok(Self { dim, m })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn apply(&self, x: &Vector<F>) -> Vector<F> {
        let a = x.array();
        let mut out = [F::zero(); MAX_DIM];
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[i] += self.m[i][j] * a[j];
            }
        }
        Vector::from_array(self.dim, out)
    }

    #[inline]
    pub fn apply_transpose(&self, x: &Vector<F>) -> Vector<F> {
        let a = x.array();
        let mut out = [F::zero(); MAX_DIM];
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[i] += self.m[j][i] * a[j];
            }
        }
        Vector::from_array(self.dim, out)
    }

    pub fn det(&self) -> F {
        let m = &self.m;
        match self.dim {
            1 => m[0][0],
            2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
            _ => {
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            }
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.abs() < F::of(1e-300) {
            return Err(Error::InvalidParameter {
                name: "matrix",
                reason: "matrix is singular".into(),
            });
        }
        let m = &self.m;
        let r = d.recip();
        let mut inv = [[F::zero(); MAX_DIM]; MAX_DIM];
        match self.dim {
            1 => inv[0][0] = r,
            2 => {
                inv[0][0] = m[1][1] * r;
                inv[0][1] = -m[0][1] * r;
                inv[1][0] = -m[1][0] * r;
                inv[1][1] = m[0][0] * r;
            }
            _ => {
                inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * r;
                inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * r;
                inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * r;
                inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * r;
                inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * r;
                inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * r;
                inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * r;
                inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * r;
                inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * r;
            }
        }
        Ok(Self { dim: self.dim, m: inv })
    }

    /// Euclidean norm of row `i`.
    pub fn row_norm(&self, i: usize) -> F {
        let mut acc = F::zero();
        for j in 0..self.dim {
            acc += self.m[i][j] * self.m[i][j];
        }
        acc.sqrt()
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        (0..self.dim)
            .map(|i| self.m[i][..self.dim].to_vec())
            .collect()
    }
}

/// Closed axis-aligned box, used for compact supports and tensor quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundingBox<F> {
    pub min: Vector<F>,
    pub max: Vector<F>,
}

impl<F: Real> BoundingBox<F> {
    pub fn new(min: Vector<F>, max: Vector<F>) -> Self {
        Self { min, max }
    }

    pub fn centered(center: &Vector<F>, half_widths: &[F]) -> Self {
        let dim = center.dim();
        let mut lo = [F::zero(); MAX_DIM];
        let mut hi = [F::zero(); MAX_DIM];
        for i in 0..dim {
            lo[i] = center.get(i) - half_widths[i];
            hi[i] = center.get(i) + half_widths[i];
        }
        Self {
            min: Vector::from_array(dim, lo),
            max: Vector::from_array(dim, hi),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.min.dim()
    }

    #[inline]
    pub fn width(&self, axis: usize) -> F {
        self.max.get(axis) - self.min.get(axis)
    }

    /// Euclidean length of the main diagonal.
    pub fn diameter(&self) -> F {
        self.max.sub(&self.min).norm()
    }

    pub fn contains(&self, x: &Vector<F>) -> bool {
        (0..self.dim()).all(|i| x.get(i) >= self.min.get(i) && x.get(i) <= self.max.get(i))
    }

    /// Intersection with the box translated by `shift`; `None` when empty.
    pub fn intersect_shifted(&self, shift: &Vector<F>) -> Option<Self> {
        let dim = self.dim();
        let mut lo = [F::zero(); MAX_DIM];
        let mut hi = [F::zero(); MAX_DIM];
        for i in 0..dim {
            lo[i] = self.min.get(i).max(self.min.get(i) + shift.get(i));
            hi[i] = self.max.get(i).min(self.max.get(i) + shift.get(i));
            if lo[i] >= hi[i] {
                return None;
            }
        }
        Some(Self {
            min: Vector::from_array(dim, lo),
            max: Vector::from_array(dim, hi),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_basics() {
        let v = Vector::from_slice(2, &[3.0, 4.0]).unwrap();
        assert_eq!(v.norm(), 5.0);
        assert_eq!(v.dot(&Vector::from_slice(2, &[1.0, 1.0]).unwrap()), 7.0);
        assert!(Vector::from_slice(2, &[f64::NAN, 0.0]).is_err());
        assert!(Vector::from_slice(4, &[0.0; 4]).is_err());
    }

    #[test]
    fn symmat_inverse_and_det() {
        let a: SymMat<f64> = SymMat::from_rows(2, &[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert!((a.det() - 3.0).abs() < 1e-14);
        let inv = a.inverse().unwrap();
        let x = Vector::from_slice(2, &[1.0, -1.0]).unwrap();
        // A^{-1} quad form of A x should give back quad form of x under A
        let ax = Vector::from_slice(2, &[2.0 * 1.0 + 1.0 * -1.0, 1.0 * 1.0 + 2.0 * -1.0]).unwrap();
        assert!((inv.quad_form(&ax) - a.quad_form(&x)).abs() < 1e-12);
        assert!(a.is_positive_definite());
        let bad = SymMat::from_rows(2, &[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(!bad.is_positive_definite());
    }

    #[test]
    fn symmat_rejects_asymmetric() {
        assert!(SymMat::from_rows(2, &[vec![1.0, 0.5], vec![0.2, 1.0]]).is_err());
    }

    #[test]
    fn power_iteration_finds_top_eigenvalue() {
        let a: SymMat<f64> = SymMat::from_rows(3, &[
            vec![4.0, 0.0, 0.0],
            vec![0.0, 2.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert!((a.max_eigenvalue() - 4.0f64).abs() < 1e-9);
    }

    #[test]
    fn matrix_inverse_roundtrip() {
        let m: Matrix<f64> = Matrix::from_rows(3, &[
            vec![1.0, 2.0, 0.0],
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        let x = Vector::from_slice(3, &[0.3, -0.7, 1.1]).unwrap();
        let back = inv.apply(&m.apply(&x));
        for i in 0..3 {
            assert!((back.get(i) - x.get(i)).abs() < 1e-12);
        }
    }

    #[test]
    fn box_intersection() {
        let b = BoundingBox::centered(&Vector::<f64>::zeros(2), &[1.0, 1.0]);
        let shift = Vector::from_slice(2, &[0.5, 0.0]).unwrap();
        let i = b.intersect_shifted(&shift).unwrap();
        assert!((i.min.get(0) - -0.5).abs() < 1e-15);
        assert!((i.max.get(0) - 1.0).abs() < 1e-15);
        let far = Vector::from_slice(2, &[5.0, 0.0]).unwrap();
        assert!(b.intersect_shifted(&far).is_none());
    }
}
