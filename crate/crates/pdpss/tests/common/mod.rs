//! Shared test oracles, independent of the library's computation paths.

#![allow(dead_code)]

use num_complex::Complex;
use pdpss::{ComplexDenseMatrix, SvdResult};

pub type C64 = Complex<f64>;

/// Deterministic splitmix64 generator for test data.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.wrapping_add(0x9E37_79B9_7F4A_7C15))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [-1, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 52) as f64 - 1.0
    }

    pub fn complex(&mut self) -> C64 {
        Complex::new(self.unit(), self.unit())
    }

    pub fn complex_vec(&mut self, n: usize) -> Vec<C64> {
        (0..n).map(|_| self.complex()).collect()
    }
}

fn dotc(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sqr(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// Singular values (descending) by one-sided Jacobi orthogonalization of the
/// columns of the thin orientation. Completely independent of the library's
/// tridiagonal pipeline.
pub fn jacobi_svd_sigma(a: &ComplexDenseMatrix<f64>) -> Vec<f64> {
    let work = if a.rows() >= a.cols() { a.clone() } else { a.adjoint() };
    let n = work.cols();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|c| work.col(c)).collect();

    for _sweep in 0..60 {
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let alpha = norm_sqr(&cols[i]);
                let beta = norm_sqr(&cols[j]);
                let gamma = dotc(&cols[i], &cols[j]);
                let g = gamma.norm();
                let scale = (alpha * beta).sqrt();
                if scale > 0.0 {
                    worst = worst.max(g / scale);
                }
                if g <= 1e-300 || g <= 1e-16 * scale {
                    continue;
                }
                // make the cross term real, then rotate
                let phase = gamma / Complex::new(g, 0.0);
                let tau = (alpha - beta) / (2.0 * g);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (lo, hi) = cols.split_at_mut(j);
                for (x, y) in lo[i].iter_mut().zip(hi[0].iter_mut()) {
                    let xv = *x;
                    let yv = *y * phase.conj();
                    *x = xv * c + yv * s;
                    *y = yv * c - xv * s;
                }
            }
        }
        if worst <= 1e-15 {
            break;
        }
    }

    let mut sigma: Vec<f64> = cols.iter().map(|c| norm_sqr(c).sqrt()).collect();
    sigma.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sigma
}

/// Quadratic-cost forward DFT, the reference for every transform test.
pub fn dft_direct(x: &[C64]) -> Vec<C64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            let mut acc = Complex::new(0.0, 0.0);
            for (m, &v) in x.iter().enumerate() {
                let phase = -2.0 * std::f64::consts::PI * ((k * m) % n) as f64 / n as f64;
                acc += v * Complex::from_polar(1.0, phase);
            }
            acc
        })
        .collect()
}

/// Ascending eigenvalues of a symmetric tridiagonal by plain Sturm
/// bisection; independent of the library's solvers.
pub fn bisect_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let count_below = |x: f64| -> usize {
        let mut cnt = 0usize;
        let mut d = diag[0] - x;
        if d < 0.0 {
            cnt += 1;
        }
        for i in 1..n {
            let dd = if d.abs() < 1e-300 { 1e-300f64.copysign(if d < 0.0 { -1.0 } else { 1.0 }) } else { d };
            d = (diag[i] - x) - off[i - 1] * off[i - 1] / dd;
            if d < 0.0 {
                cnt += 1;
            }
        }
        cnt
    };
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += off[i - 1].abs();
        }
        if i + 1 < n {
            r += off[i].abs();
        }
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    lo -= 1e-12 + 1e-12 * hi.abs();
    hi += 1e-12 + 1e-12 * hi.abs();
    (0..n)
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..120 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if count_below(mid) <= k {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// U diag(sigma) V* over the leading `sigma.len()` triplets.
pub fn reconstruct(res: &SvdResult<f64>, rows: usize, cols: usize) -> ComplexDenseMatrix<f64> {
    let r = res.sigma.len().min(res.u.cols()).min(res.v.cols());
    ComplexDenseMatrix::from_fn(rows, cols, |j, k| {
        let mut acc = Complex::new(0.0, 0.0);
        for t in 0..r {
            acc += res.u.get(j - 1, t) * res.sigma[t] * res.v.get(k - 1, t).conj();
        }
        acc
    })
}

pub fn norm2(x: &[C64]) -> f64 {
    norm_sqr(x).sqrt()
}
