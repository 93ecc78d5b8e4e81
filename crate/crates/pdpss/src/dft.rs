//! Closed-form construction of the DFT matrix `F`, its contiguous submatrices
//! `A` and `B`, the centered variant `C`, the diagonal scalings `D_n`, the
//! periodic prolate matrix `S(p,q)` and the commuting symmetric tridiagonal
//! `J(p,q)`.
//!
//! Phase policy: every complex exponential is `exp(2*pi*i*(m/d))` with the
//! integer numerator `m` reduced modulo the denominator `d` in exact integer
//! arithmetic before any conversion to floating point. Phases carry all the
//! information in these matrices, so the reduction happens where it is still
//! exact. Half- and quarter-integer exponents (even `p` or `q`) are handled
//! by scaling the denominator, never by taking fractional powers of a
//! numeric quantity, which would leave the branch cut to chance.

use num_complex::Complex;

use crate::error::{invalid, Result};
use crate::matrix::{ComplexDenseMatrix, RealDenseMatrix};
use crate::scalar::Real;
use crate::tridiagonal::RealSymTridiagonal;

/// Which contiguous submatrix of the N-point DFT matrix is meant.
///
/// Indices are 1-based, matching the conventions used throughout the docs;
/// `j0`/`k0` give the row/column origin inside `F`, with wrap-around handled
/// by modular indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubmatrixSpec {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub j0: usize,
    pub k0: usize,
}

impl SubmatrixSpec {
    /// Submatrix anchored at the (1,1) entry of `F`.
    pub fn new(n: usize, p: usize, q: usize) -> Result<Self> {
        Self::with_origin(n, p, q, 1, 1)
    }

    pub fn with_origin(n: usize, p: usize, q: usize, j0: usize, k0: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("DFT length N must be positive"));
        }
        if p == 0 || q == 0 || p > n || q > n {
            return Err(invalid(format!("need 1 <= p,q <= N, got p={p} q={q} N={n}")));
        }
        if j0 == 0 || k0 == 0 || j0 > n || k0 > n {
            return Err(invalid(format!("need 1 <= j0,k0 <= N, got j0={j0} k0={k0} N={n}")));
        }
        Ok(Self { n, p, q, j0, k0 })
    }

    /// Number of singular values in the reduced decomposition.
    #[inline]
    pub fn rank(&self) -> usize {
        self.p.min(self.q)
    }

    #[inline]
    pub fn has_unit_origin(&self) -> bool {
        self.j0 == 1 && self.k0 == 1
    }

    /// Same dimensions, origin moved back to (1,1).
    pub fn at_unit_origin(&self) -> Self {
        Self { j0: 1, k0: 1, ..*self }
    }
}

/// sin(pi * num / den) with the argument reduced into a quadrant exactly.
pub(crate) fn sin_pi_frac<T: Real>(num: i128, den: i128) -> T {
    debug_assert!(den > 0);
    let m = num.rem_euclid(2 * den); // in [0, 2*den)
    let (sign, m) = if m >= den { (-T::one(), m - den) } else { (T::one(), m) };
    // m/den in [0,1); fold onto [0, 1/2] where sin(pi x) is well conditioned
    let folded = if 2 * m > den { den - m } else { m };
    let x = T::of_usize(folded as usize) / T::of_usize(den as usize);
    sign * (T::PI() * x).sin()
}

/// cos(pi * num / den), reduced exactly.
pub(crate) fn cos_pi_frac<T: Real>(num: i128, den: i128) -> T {
    // cos(pi a) = sin(pi (a + 1/2))
    sin_pi_frac(2 * num + den, 2 * den)
}

/// exp(2*pi*i * num / den), reduced exactly.
pub(crate) fn cis_frac<T: Real>(num: i128, den: i128) -> Complex<T> {
    let m = num.rem_euclid(den);
    Complex::new(cos_pi_frac(2 * m, den), sin_pi_frac(2 * m, den))
}

/// Twiddle factor `omega = exp(2*pi*i/N)`.
pub fn twiddle<T: Real>(n: usize) -> Result<Complex<T>> {
    if n == 0 {
        return Err(invalid("twiddle factor needs N >= 1"));
    }
    Ok(cis_frac(1, n as i128))
}

/// The N x N DFT matrix, `F[j,k] = omega^{-(j-1)(k-1)}`.
pub fn build_f<T: Real>(n: usize) -> ComplexDenseMatrix<T> {
    assert!(n >= 1, "build_f needs N >= 1");
    let nn = n as i128;
    ComplexDenseMatrix::from_fn(n, n, |j, k| {
        cis_frac(-(((j as i128 - 1) * (k as i128 - 1)).rem_euclid(nn)), nn)
    })
}

/// The p x q submatrix of `F` anchored at its (1,1) entry.
///
/// Shifted origins are deliberately rejected here; `shift_to_b` builds those.
pub fn build_a<T: Real>(spec: &SubmatrixSpec) -> Result<ComplexDenseMatrix<T>> {
    if !spec.has_unit_origin() {
        return Err(invalid("build_a requires j0 = k0 = 1; use shift_to_b for shifted origins"));
    }
    let nn = spec.n as i128;
    Ok(ComplexDenseMatrix::from_fn(spec.p, spec.q, |j, k| {
        cis_frac(-(((j as i128 - 1) * (k as i128 - 1)).rem_euclid(nn)), nn)
    }))
}

/// The p x q submatrix of `F` anchored at `(j0, k0)`, wrapping around
/// periodically: `B[j,k] = F[1+mod(j0+j-2,N), 1+mod(k0+k-2,N)]`.
pub fn shift_to_b<T: Real>(spec: &SubmatrixSpec) -> ComplexDenseMatrix<T> {
    let nn = spec.n as i128;
    let b = ComplexDenseMatrix::from_fn(spec.p, spec.q, |j, k| {
        let row = (spec.j0 as i128 + j as i128 - 2).rem_euclid(nn);
        let col = (spec.k0 as i128 + k as i128 - 2).rem_euclid(nn);
        cis_frac(-((row * col).rem_euclid(nn)), nn)
    });
    debug_assert!({
        // B = omega^{-(j0-1)(k0-1)} D_p^{k0-1} A D_q^{j0-1}
        let a = build_a::<T>(&spec.at_unit_origin()).expect("unit origin");
        let scale = cis_frac::<T>(
            -((spec.j0 as i128 - 1) * (spec.k0 as i128 - 1)),
            nn,
        );
        let dp = diag_d::<T>(spec.p, spec.n, T::of_usize(spec.k0 - 1));
        let dq = diag_d::<T>(spec.q, spec.n, T::of_usize(spec.j0 - 1));
        let check = ComplexDenseMatrix::from_fn(spec.p, spec.q, |j, k| {
            scale * dp[j - 1] * a.get(j - 1, k - 1) * dq[k - 1]
        });
        b.max_abs_diff(&check) <= T::lit(1e-12)
    });
    b
}

/// The centered submatrix `C[j,k] = omega^{-(j-(p+1)/2)(k-(q+1)/2)}`, whose
/// Gram matrices `C*C` and `CC*` are real.
///
/// The exponent `(2j-p-1)(2k-q-1)/4` is evaluated over the denominator `4N`
/// in integers, which fixes the branch for even `p` or `q`.
pub fn build_c<T: Real>(spec: &SubmatrixSpec) -> Result<ComplexDenseMatrix<T>> {
    if !spec.has_unit_origin() {
        return Err(invalid("build_c requires j0 = k0 = 1"));
    }
    let (p, q, n) = (spec.p as i128, spec.q as i128, spec.n as i128);
    Ok(ComplexDenseMatrix::from_fn(spec.p, spec.q, |j, k| {
        let num = (2 * j as i128 - p - 1) * (2 * k as i128 - q - 1);
        cis_frac(-num, 4 * n)
    }))
}

/// Diagonal of `D_n^{power}`: entry j is `exp(-2*pi*i*(j-1)*power/N)`.
///
/// `power` may be fractional; the phase is reduced after multiplying the
/// integer-reduced index, which keeps the products small enough to stay
/// accurate at the sizes this crate targets.
pub fn diag_d<T: Real>(n: usize, dft_len: usize, power: T) -> Vec<Complex<T>> {
    assert!(n >= 1 && dft_len >= 1);
    let big_n = T::of_usize(dft_len);
    (0..n)
        .map(|j| {
            let idx = T::of_usize(j % dft_len);
            let mut phase = -(idx * power) / big_n;
            phase = phase - phase.floor();
            let two_pi = T::PI() + T::PI();
            Complex::from_polar(T::one(), two_pi * phase)
        })
        .collect()
}

/// `D_n^{twice_power/2}` with an exactly reduced phase; the half-integer
/// exponent is what Eq-level scalings between `A` and `C` need.
pub(crate) fn diag_d_half<T: Real>(n: usize, dft_len: usize, twice_power: i128) -> Vec<Complex<T>> {
    let den = 2 * dft_len as i128;
    (0..n as i128)
        .map(|j| cis_frac(-(j * twice_power).rem_euclid(den), den))
        .collect()
}

/// The q x q periodic prolate (Dirichlet kernel) matrix `S(p,q)`:
/// `sin(p(j-k)pi/N)/sin((j-k)pi/N)` off the diagonal and exactly `p` on it.
pub fn build_s<T: Real>(p: usize, q: usize, n: usize) -> RealDenseMatrix<T> {
    assert!(p >= 1 && q >= 1 && p <= n && q <= n, "need 1 <= p,q <= N");
    let nn = n as i128;
    let pp = p as i128;
    RealDenseMatrix::from_fn(q, q, |j, k| {
        if j == k {
            T::of_usize(p)
        } else {
            let d = j as i128 - k as i128;
            sin_pi_frac::<T>(pp * d, nn) / sin_pi_frac::<T>(d, nn)
        }
    })
}

/// The q x q symmetric tridiagonal `J(p,q)` commuting with `S(p,q)`:
/// diagonal `cos(pi(2k-q-1)/N) cos(p pi/N)`, off-diagonal
/// `-sin(pi k/N) sin(pi(q-k)/N)`.
///
/// Every off-diagonal entry is strictly negative for `q >= 2`, so the
/// spectrum is simple by the Sturm sequence property.
pub fn build_j<T: Real>(p: usize, q: usize, n: usize) -> RealSymTridiagonal<T> {
    assert!(p >= 1 && q >= 1 && p <= n && q <= n, "need 1 <= p,q <= N");
    let nn = n as i128;
    let cp = cos_pi_frac::<T>(p as i128, nn);
    let diag = (1..=q as i128)
        .map(|k| cos_pi_frac::<T>(2 * k - q as i128 - 1, nn) * cp)
        .collect();
    let offdiag = (1..q as i128)
        .map(|k| -(sin_pi_frac::<T>(k, nn) * sin_pi_frac::<T>(q as i128 - k, nn)))
        .collect();
    RealSymTridiagonal::new(diag, offdiag)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_2: f64 = std::f64::consts::SQRT_2;

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn twiddle_values() {
        assert!(close(twiddle::<f64>(1).unwrap(), Complex::new(1.0, 0.0), 1e-15));
        assert!(close(twiddle::<f64>(4).unwrap(), Complex::new(0.0, 1.0), 1e-15));
        let w8 = twiddle::<f64>(8).unwrap();
        assert!(close(w8, Complex::new(SQRT_2 / 2.0, SQRT_2 / 2.0), 1e-15));
        assert!((w8.norm() - 1.0).abs() <= f64::EPSILON);
        assert!(twiddle::<f64>(0).is_err());
    }

    #[test]
    fn dft_matrix_small() {
        let f1 = build_f::<f64>(1);
        assert!(close(f1.get(0, 0), Complex::new(1.0, 0.0), 0.0));

        let f2 = build_f::<f64>(2);
        for (j, k, want) in [(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, -1.0)] {
            assert!(close(f2.get(j, k), Complex::new(want, 0.0), 1e-15));
        }

        // entry (2,2) of F_4 is omega^{-1} = -i
        let f4 = build_f::<f64>(4);
        assert!(close(f4.get(1, 1), Complex::new(0.0, -1.0), 1e-15));
    }

    #[test]
    fn unitary_scaling_of_f() {
        for n in 1..=64usize {
            let f = build_f::<f64>(n);
            let g = f.adjoint().mul(&f);
            let mut worst = 0.0f64;
            for j in 0..n {
                for k in 0..n {
                    let want = if j == k { n as f64 } else { 0.0 };
                    worst = worst.max((g.get(j, k) - Complex::new(want, 0.0)).norm());
                }
            }
            assert!(worst <= 1e-12 * (n as f64) * (n as f64), "N={n}: {worst:e}");
        }
    }

    #[test]
    fn submatrix_a() {
        let spec = SubmatrixSpec::new(4, 1, 4).unwrap();
        let a = build_a::<f64>(&spec).unwrap();
        for k in 0..4 {
            assert!(close(a.get(0, k), Complex::new(1.0, 0.0), 0.0));
        }

        let spec = SubmatrixSpec::new(4, 2, 2).unwrap();
        let a = build_a::<f64>(&spec).unwrap();
        assert!(close(a.get(0, 0), Complex::new(1.0, 0.0), 0.0));
        assert!(close(a.get(0, 1), Complex::new(1.0, 0.0), 0.0));
        assert!(close(a.get(1, 0), Complex::new(1.0, 0.0), 0.0));
        assert!(close(a.get(1, 1), Complex::new(0.0, -1.0), 1e-15));

        let spec = SubmatrixSpec::new(8, 8, 8).unwrap();
        let a = build_a::<f64>(&spec).unwrap();
        assert!(a.max_abs_diff(&build_f::<f64>(8)) == 0.0);

        let shifted = SubmatrixSpec::with_origin(4, 2, 2, 2, 1).unwrap();
        assert!(build_a::<f64>(&shifted).is_err());
    }

    #[test]
    fn shifted_submatrix() {
        let spec = SubmatrixSpec::with_origin(4, 2, 2, 1, 1).unwrap();
        let b = shift_to_b::<f64>(&spec);
        let a = build_a::<f64>(&spec).unwrap();
        assert!(b.max_abs_diff(&a) == 0.0);

        // rows 2..3 of the first two columns of F_4
        let spec = SubmatrixSpec::with_origin(4, 2, 2, 2, 1).unwrap();
        let b = shift_to_b::<f64>(&spec);
        assert!(close(b.get(0, 0), Complex::new(1.0, 0.0), 1e-15));
        assert!(close(b.get(0, 1), Complex::new(0.0, -1.0), 1e-15));
        assert!(close(b.get(1, 0), Complex::new(1.0, 0.0), 1e-15));
        assert!(close(b.get(1, 1), Complex::new(-1.0, 0.0), 1e-15));

        // wrap-around case
        let spec = SubmatrixSpec::with_origin(4, 2, 2, 4, 4).unwrap();
        let b = shift_to_b::<f64>(&spec);
        assert!(close(b.get(0, 0), Complex::new(0.0, -1.0), 1e-15));
        assert!(close(b.get(0, 1), Complex::new(1.0, 0.0), 1e-15));
        assert!(close(b.get(1, 0), Complex::new(1.0, 0.0), 1e-15));
        assert!(close(b.get(1, 1), Complex::new(1.0, 0.0), 1e-15));
    }

    #[test]
    fn shift_identity_on_grid() {
        // shift_to_b equals the diagonal-scaling identity for every origin
        let n = 6;
        for j0 in 1..=n {
            for k0 in 1..=n {
                let spec = SubmatrixSpec::with_origin(n, 3, 4, j0, k0).unwrap();
                let b = shift_to_b::<f64>(&spec);
                let a = build_a::<f64>(&spec.at_unit_origin()).unwrap();
                let scale = cis_frac::<f64>(-((j0 as i128 - 1) * (k0 as i128 - 1)), n as i128);
                let dp = diag_d::<f64>(3, n, (k0 - 1) as f64);
                let dq = diag_d::<f64>(4, n, (j0 - 1) as f64);
                let check = ComplexDenseMatrix::from_fn(3, 4, |j, k| {
                    scale * dp[j - 1] * a.get(j - 1, k - 1) * dq[k - 1]
                });
                assert!(b.max_abs_diff(&check) <= 1e-12, "origin ({j0},{k0})");
            }
        }
    }

    #[test]
    fn centered_matrix() {
        // p = q = 1: exponent is identically zero
        let spec = SubmatrixSpec::new(7, 1, 1).unwrap();
        let c = build_c::<f64>(&spec).unwrap();
        assert!(close(c.get(0, 0), Complex::new(1.0, 0.0), 0.0));

        // (1,1) entry of C for N=4, p=q=2 is exp(-pi i/8)
        let spec = SubmatrixSpec::new(4, 2, 2).unwrap();
        let c = build_c::<f64>(&spec).unwrap();
        let want = Complex::from_polar(1.0, -std::f64::consts::PI / 8.0);
        assert!(close(c.get(0, 0), want, 1e-15));
    }

    #[test]
    fn c_to_a_round_trip() {
        // A = omega^{(p-1)(q-1)/4} D_p^{(q-1)/2} C D_q^{(p-1)/2}
        for (n, p, q) in [(4, 2, 2), (8, 3, 6), (9, 4, 7), (12, 12, 5)] {
            let spec = SubmatrixSpec::new(n, p, q).unwrap();
            let a = build_a::<f64>(&spec).unwrap();
            let c = build_c::<f64>(&spec).unwrap();
            let scale = cis_frac::<f64>(((p - 1) * (q - 1)) as i128, 4 * n as i128);
            let dp = diag_d_half::<f64>(p, n, (q as i128) - 1);
            let dq = diag_d_half::<f64>(q, n, (p as i128) - 1);
            let back = ComplexDenseMatrix::from_fn(p, q, |j, k| {
                scale * dp[j - 1] * c.get(j - 1, k - 1) * dq[k - 1]
            });
            assert!(a.max_abs_diff(&back) <= 1e-13, "({n},{p},{q})");
        }
    }

    #[test]
    fn diag_d_values() {
        let d = diag_d::<f64>(3, 5, 0.0);
        for v in &d {
            assert!(close(*v, Complex::new(1.0, 0.0), 0.0));
        }

        let d = diag_d::<f64>(2, 4, 1.0);
        assert!(close(d[0], Complex::new(1.0, 0.0), 0.0));
        assert!(close(d[1], Complex::new(0.0, -1.0), 1e-15));

        // half power squares to the integer power, branch consistent
        for n in [4usize, 5, 9] {
            let half = diag_d::<f64>(n, n, 0.5);
            let one = diag_d::<f64>(n, n, 1.0);
            for j in 0..n {
                assert!(close(half[j] * half[j], one[j], 1e-14));
                let exact = Complex::from_polar(1.0, -std::f64::consts::PI * j as f64 / n as f64);
                assert!(close(half[j], exact, 1e-14));
            }
        }
    }

    #[test]
    fn prolate_matrix() {
        let s = build_s::<f64>(2, 2, 4);
        assert_eq!(s.get(0, 0), 2.0);
        assert_eq!(s.get(1, 1), 2.0);
        assert!((s.get(0, 1) - SQRT_2).abs() <= 1e-15);
        assert!((s.get(1, 0) - SQRT_2).abs() <= 1e-15);

        // diagonal is exactly p, symmetric storage
        for (n, p, q) in [(8, 3, 8), (16, 16, 5), (12, 7, 7)] {
            let s = build_s::<f64>(p, q, n);
            for j in 0..q {
                assert_eq!(s.get(j, j), p as f64);
                for k in 0..q {
                    assert_eq!(s.get(j, k), s.get(k, j));
                }
            }
        }
    }

    #[test]
    fn gram_of_c_is_s() {
        // real part of C*C matches S(p,q), imaginary part is noise;
        // CC* likewise matches S(q,p)
        for (n, p, q) in [(4, 2, 2), (8, 3, 6), (11, 5, 7), (16, 9, 4)] {
            let spec = SubmatrixSpec::new(n, p, q).unwrap();
            let c = build_c::<f64>(&spec).unwrap();
            let cc = c.adjoint().mul(&c);
            let s = build_s::<f64>(p, q, n);
            let mut worst = 0.0f64;
            for j in 0..q {
                for k in 0..q {
                    worst = worst.max((cc.get(j, k).re - s.get(j, k)).abs());
                    worst = worst.max(cc.get(j, k).im.abs());
                }
            }
            assert!(worst <= 1e-12, "C*C vs S({p},{q}) at N={n}: {worst:e}");

            let cc = c.mul(&c.adjoint());
            let s = build_s::<f64>(q, p, n);
            let mut worst = 0.0f64;
            for j in 0..p {
                for k in 0..p {
                    worst = worst.max((cc.get(j, k).re - s.get(j, k)).abs());
                    worst = worst.max(cc.get(j, k).im.abs());
                }
            }
            assert!(worst <= 1e-12, "CC* vs S({q},{p}) at N={n}: {worst:e}");
        }
    }

    #[test]
    fn tridiagonal_entries() {
        let j = build_j::<f64>(2, 2, 4);
        assert_eq!(j.diag(), &[0.0, 0.0]);
        assert!((j.offdiag()[0] + 0.5).abs() <= 1e-15);

        // q = 1: single diagonal entry cos(p pi/N)
        let j = build_j::<f64>(3, 1, 8);
        assert_eq!(j.n(), 1);
        assert!((j.diag()[0] - (3.0 * std::f64::consts::PI / 8.0).cos()).abs() <= 1e-15);
        assert!(j.offdiag().is_empty());
    }

    #[test]
    fn j_offdiagonal_never_vanishes() {
        for n in [2usize, 5, 16, 33] {
            for p in 1..=n {
                for q in 2..=n {
                    let j = build_j::<f64>(p, q, n);
                    let min = j
                        .offdiag()
                        .iter()
                        .map(|e| e.abs())
                        .fold(f64::INFINITY, f64::min);
                    assert!(min > 0.0, "J({p},{q}) at N={n}");
                }
            }
        }
    }

    #[test]
    fn commutation_with_s() {
        for n in [4usize, 8, 13, 16] {
            for p in 1..=n {
                for q in 1..=n {
                    let j = build_j::<f64>(p, q, n);
                    let s = build_s::<f64>(p, q, n);
                    let jm = RealDenseMatrix::from_fn(q, q, |r, c| {
                        if r == c {
                            j.diag()[r - 1]
                        } else if r + 1 == c {
                            j.offdiag()[r - 1]
                        } else if c + 1 == r {
                            j.offdiag()[c - 1]
                        } else {
                            0.0
                        }
                    });
                    let d = jm.mul(&s).max_abs_diff(&s.mul(&jm));
                    assert!(d <= 1e-11 * p.max(q) as f64, "[J,S]({p},{q}) N={n}: {d:e}");
                }
            }
        }
    }

    #[test]
    fn projection_identity_when_q_is_n() {
        // S(p,N) is N times an orthogonal projection
        for n in 1..=64usize {
            for p in 1..=n {
                let s = build_s::<f64>(p, n, n);
                let d = s.mul(&s).max_abs_diff(&RealDenseMatrix::from_fn(n, n, |j, k| {
                    n as f64 * s.get(j - 1, k - 1)
                }));
                assert!(d <= 1e-9 * n as f64, "S({p},{n})^2 != N S: {d:e}");
            }
        }
    }
}
