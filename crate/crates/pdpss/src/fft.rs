//! Arbitrary-length FFT (radix-2 Cooley–Tukey with a Bluestein chirp-z
//! fallback) and the zero-pad / transform / restrict product with a DFT
//! submatrix.
//!
//! Forward convention: `X_k = sum_n x_n exp(-2 pi i k n / N)`; the inverse
//! carries the `1/N` factor. Twiddle and chirp tables are built once per
//! plan with exactly reduced integer phases, matching the phase policy of
//! the matrix builders.

use num_complex::Complex;

use crate::dft::{build_a, cis_frac, SubmatrixSpec};
use crate::error::{invalid, Result};
use crate::matrix::ComplexDenseMatrix;
use crate::scalar::Real;

/// Complex vector, the natural argument of the transforms.
pub type ComplexVector<T> = Vec<Complex<T>>;

enum PlanKind<T> {
    /// Length 1: the identity.
    Trivial,
    Radix2 {
        /// `w[j] = exp(-2 pi i j / n)` for `j < n/2`.
        twiddles: Vec<Complex<T>>,
    },
    Bluestein {
        /// `chirp[n] = exp(-pi i n^2 / len)`.
        chirp: Vec<Complex<T>>,
        /// Forward transform of the conjugate-chirp kernel, length `conv_len`.
        kernel_fft: Vec<Complex<T>>,
        conv: Box<FftPlan<T>>,
    },
}

/// Reusable transform plan for one length.
pub struct FftPlan<T> {
    len: usize,
    kind: PlanKind<T>,
}

impl<T: Real> FftPlan<T> {
    pub fn new(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(invalid("transform length must be positive"));
        }
        let kind = if len == 1 {
            PlanKind::Trivial
        } else if len.is_power_of_two() {
            let twiddles = (0..len / 2)
                .map(|j| cis_frac(-(j as i128), len as i128))
                .collect();
            PlanKind::Radix2 { twiddles }
        } else {
            // chirp phases are n^2/(2 len) turns; reduce mod 2 len exactly
            let den = 2 * len as i128;
            let chirp: Vec<Complex<T>> = (0..len as i128)
                .map(|n| cis_frac(-((n * n).rem_euclid(den)), den))
                .collect();
            let conv_len = (2 * len - 1).next_power_of_two();
            let conv = Box::new(FftPlan::new(conv_len)?);
            let mut kernel = vec![Complex::new(T::zero(), T::zero()); conv_len];
            for n in 0..len {
                let b = chirp[n].conj();
                kernel[n] = b;
                if n > 0 {
                    kernel[conv_len - n] = b;
                }
            }
            conv.forward_in_place(&mut kernel);
            PlanKind::Bluestein { chirp, kernel_fft: kernel, conv }
        };
        Ok(FftPlan { len, kind })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn forward(&self, x: &[Complex<T>]) -> Result<ComplexVector<T>> {
        if x.len() != self.len {
            return Err(invalid(format!(
                "transform length mismatch: plan {} input {}",
                self.len,
                x.len()
            )));
        }
        let mut buf = x.to_vec();
        self.forward_in_place(&mut buf);
        Ok(buf)
    }

    /// Inverse with the `1/N` factor, via conjugation of the forward pass.
    pub fn inverse(&self, x: &[Complex<T>]) -> Result<ComplexVector<T>> {
        if x.len() != self.len {
            return Err(invalid(format!(
                "transform length mismatch: plan {} input {}",
                self.len,
                x.len()
            )));
        }
        let mut buf: Vec<Complex<T>> = x.iter().map(|v| v.conj()).collect();
        self.forward_in_place(&mut buf);
        let scale = T::one() / T::of_usize(self.len);
        for v in buf.iter_mut() {
            *v = v.conj() * scale;
        }
        Ok(buf)
    }

    fn forward_in_place(&self, buf: &mut [Complex<T>]) {
        match &self.kind {
            PlanKind::Trivial => {}
            PlanKind::Radix2 { twiddles } => radix2_in_place(buf, twiddles),
            PlanKind::Bluestein { chirp, kernel_fft, conv } => {
                let n = self.len;
                let conv_len = conv.len;
                let mut a = vec![Complex::new(T::zero(), T::zero()); conv_len];
                for i in 0..n {
                    a[i] = buf[i] * chirp[i];
                }
                conv.forward_in_place(&mut a);
                for (av, kv) in a.iter_mut().zip(kernel_fft) {
                    *av = *av * *kv;
                }
                // inverse of the convolution length, inlined
                for v in a.iter_mut() {
                    *v = v.conj();
                }
                conv.forward_in_place(&mut a);
                let scale = T::one() / T::of_usize(conv_len);
                for k in 0..n {
                    buf[k] = a[k].conj() * scale * chirp[k];
                }
            }
        }
    }
}

fn radix2_in_place<T: Real>(buf: &mut [Complex<T>], twiddles: &[Complex<T>]) {
    let n = buf.len();
    // bit-reversal permutation
    let mut j = 0usize;
    for i in 0..n {
        if i < j {
            buf.swap(i, j);
        }
        let mut m = n >> 1;
        while m >= 1 && j & m != 0 {
            j ^= m;
            m >>= 1;
        }
        j |= m;
    }
    let mut width = 2usize;
    while width <= n {
        let half = width / 2;
        let stride = n / width;
        for start in (0..n).step_by(width) {
            for k in 0..half {
                let w = twiddles[k * stride];
                let lo = start + k;
                let hi = lo + half;
                let t = buf[hi] * w;
                buf[hi] = buf[lo] - t;
                buf[lo] = buf[lo] + t;
            }
        }
        width <<= 1;
    }
}

/// Forward DFT of arbitrary length.
pub fn fft<T: Real>(x: &[Complex<T>]) -> Result<ComplexVector<T>> {
    FftPlan::new(x.len())?.forward(x)
}

/// Inverse DFT (with the `1/N` factor) of arbitrary length.
pub fn ifft<T: Real>(x: &[Complex<T>]) -> Result<ComplexVector<T>> {
    FftPlan::new(x.len())?.inverse(x)
}

/// Transform every column independently; the transform length is the row
/// count.
pub fn columnwise_fft<T: Real>(m: &ComplexDenseMatrix<T>) -> ComplexDenseMatrix<T> {
    assert!(m.rows() >= 1, "columnwise_fft needs at least one row");
    let plan = FftPlan::new(m.rows()).expect("rows >= 1");
    let mut out = ComplexDenseMatrix::zeros(m.rows(), m.cols());
    for c in 0..m.cols() {
        let col = plan.forward(&m.col(c)).expect("length matches plan");
        out.set_col(c, &col);
    }
    out
}

/// How a `PaddedMatvecPlan` applies the submatrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatvecStrategy {
    /// Cost-model choice: dense when `p*q < N log2 N`, FFT otherwise.
    #[default]
    Auto,
    Dense,
    Fft,
}

/// Applies `A = R_p F E_q` (zero-pad, length-N transform, restrict) or its
/// adjoint, choosing between an explicit dense product and the FFT route.
pub struct PaddedMatvecPlan<T> {
    spec: SubmatrixSpec,
    fft: Option<FftPlan<T>>,
    dense: Option<ComplexDenseMatrix<T>>,
}

impl<T: Real> PaddedMatvecPlan<T> {
    pub fn new(spec: &SubmatrixSpec, strategy: MatvecStrategy) -> Result<Self> {
        if !spec.has_unit_origin() {
            return Err(invalid("matvec plan requires j0 = k0 = 1"));
        }
        let dense_cheaper = {
            let pq = spec.p as f64 * spec.q as f64;
            let nlogn = spec.n as f64 * (spec.n as f64).log2().max(1.0);
            pq < nlogn
        };
        let use_dense = match strategy {
            MatvecStrategy::Dense => true,
            MatvecStrategy::Fft => false,
            MatvecStrategy::Auto => dense_cheaper,
        };
        Ok(if use_dense {
            PaddedMatvecPlan { spec: *spec, fft: None, dense: Some(build_a(spec)?) }
        } else {
            PaddedMatvecPlan { spec: *spec, fft: Some(FftPlan::new(spec.n)?), dense: None }
        })
    }

    #[inline]
    pub fn spec(&self) -> &SubmatrixSpec {
        &self.spec
    }

    /// True when the plan multiplies by the explicitly built submatrix.
    #[inline]
    pub fn uses_dense(&self) -> bool {
        self.dense.is_some()
    }

    /// `A v`: length q in, length p out.
    pub fn matvec(&self, v: &[Complex<T>]) -> Result<ComplexVector<T>> {
        if v.len() != self.spec.q {
            return Err(invalid(format!(
                "matvec expects length q = {}, got {}",
                self.spec.q,
                v.len()
            )));
        }
        if let Some(a) = &self.dense {
            return Ok(a.matvec(v));
        }
        let plan = self.fft.as_ref().expect("fft plan");
        let mut padded = vec![Complex::new(T::zero(), T::zero()); self.spec.n];
        padded[..v.len()].copy_from_slice(v);
        plan.forward_in_place(&mut padded);
        padded.truncate(self.spec.p);
        Ok(padded)
    }

    /// `A* u`: length p in, length q out — embed, inverse-convention
    /// transform scaled by N, restrict.
    pub fn matvec_adjoint(&self, u: &[Complex<T>]) -> Result<ComplexVector<T>> {
        if u.len() != self.spec.p {
            return Err(invalid(format!(
                "adjoint matvec expects length p = {}, got {}",
                self.spec.p,
                u.len()
            )));
        }
        if let Some(a) = &self.dense {
            let mut out = vec![Complex::new(T::zero(), T::zero()); self.spec.q];
            for (r, ur) in u.iter().enumerate() {
                for (c, o) in out.iter_mut().enumerate() {
                    *o = *o + a.get(r, c).conj() * *ur;
                }
            }
            return Ok(out);
        }
        let plan = self.fft.as_ref().expect("fft plan");
        // F* y = conj(F conj(y))
        let mut padded = vec![Complex::new(T::zero(), T::zero()); self.spec.n];
        for (dst, src) in padded.iter_mut().zip(u) {
            *dst = src.conj();
        }
        plan.forward_in_place(&mut padded);
        padded.truncate(self.spec.q);
        for v in padded.iter_mut() {
            *v = v.conj();
        }
        Ok(padded)
    }
}
