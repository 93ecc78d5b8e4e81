//! Real symmetric tridiagonal matrix storage.

use crate::scalar::Real;

/// Real symmetric tridiagonal matrix given by its diagonal and its
/// off-diagonal (sub- and super-diagonal coincide by symmetry).
#[derive(Debug, Clone, PartialEq)]
pub struct RealSymTridiagonal<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Real> RealSymTridiagonal<T> {
    /// `offdiag` must be one element shorter than `diag`.
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Self {
        assert!(!diag.is_empty(), "empty tridiagonal");
        assert_eq!(offdiag.len() + 1, diag.len(), "off-diagonal length mismatch");
        Self { diag, offdiag }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm1(&self) -> T {
        let n = self.n();
        let mut worst = T::zero();
        for i in 0..n {
            let mut s = self.diag[i].abs();
            if i > 0 {
                s = s + self.offdiag[i - 1].abs();
            }
            if i + 1 < n {
                s = s + self.offdiag[i].abs();
            }
            worst = worst.max(s);
        }
        worst
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        let n = self.n();
        assert_eq!(x.len(), n);
        let mut y = vec![T::zero(); n];
        for i in 0..n {
            let mut acc = self.diag[i] * x[i];
            if i > 0 {
                acc = acc + self.offdiag[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                acc = acc + self.offdiag[i] * x[i + 1];
            }
            y[i] = acc;
        }
        y
    }
}
