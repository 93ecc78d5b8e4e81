//! Applications on top of the submatrix SVD: condition numbers (single
//! values and whole heatmaps), the Hadamard-product link between DFTs of
//! length N and N+1, and the frequency-localization maps of the singular
//! vectors.

use num_complex::Complex;
use rayon::prelude::*;

use crate::dft::{build_j, cis_frac, diag_d_half, SubmatrixSpec};
use crate::eig::{eig_selected, EigenSelection};
use crate::error::Result;
use crate::fft::{columnwise_fft, MatvecStrategy, PaddedMatvecPlan};
use crate::matrix::{ComplexDenseMatrix, RealDenseMatrix};
use crate::scalar::Real;
use crate::svd::{svd, SvdMode, SvdStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CondMethod {
    /// Extreme eigenpairs of the commuting tridiagonal only; cost grows
    /// linearly in the matrix dimensions (plus the transform for the two
    /// matrix-vector products).
    #[default]
    LinearTime,
    /// Extremes of the full singular value list.
    FullSvd,
}

/// Condition-number estimate. When `overflow` is set the smallest singular
/// value sits below the floating-point trust floor and `log10_cond` is only
/// a lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondResult<T> {
    pub sigma_max: T,
    pub sigma_min: T,
    pub log10_cond: T,
    pub overflow: bool,
}

fn finish_cond<T: Real>(spec: &SubmatrixSpec, sigma_max: T, sigma_min: T) -> CondResult<T> {
    // below tau_zero the computed sigma_min is rounding noise, so any
    // larger ratio cannot be trusted in this precision
    let trust_floor = T::lit(1e4)
        * T::epsilon()
        * T::of_usize(spec.n).sqrt()
        * T::of_usize(spec.p.max(spec.q));
    let overflow = sigma_min < trust_floor || sigma_min < T::epsilon() * sigma_max;
    let log10_cond = if sigma_min > T::zero() {
        (sigma_max / sigma_min).log10()
    } else {
        T::infinity()
    };
    CondResult { sigma_max, sigma_min, log10_cond, overflow }
}

/// Condition number of the submatrix.
///
/// The linear-time method works on the duality-reduced orientation
/// `(max(p,q), min(p,q))` so that the tridiagonal carries no null-space
/// directions and its two extreme eigenvectors map to the extreme singular
/// values.
pub fn condition_number<T: Real>(spec: &SubmatrixSpec, method: CondMethod) -> Result<CondResult<T>> {
    match method {
        CondMethod::LinearTime => {
            let (pp, qq) = (spec.p.max(spec.q), spec.p.min(spec.q));
            let reduced = SubmatrixSpec::new(spec.n, pp, qq)?;
            let j = build_j::<T>(pp, qq, spec.n);
            let pairs = eig_selected(&j, EigenSelection::Extremes)?;
            let tilde = pairs.vectors.expect("vectors");
            let phases = diag_d_half::<T>(qq, spec.n, -((pp as i128) - 1));
            let plan = PaddedMatvecPlan::new(&reduced, MatvecStrategy::Auto)?;
            let mut smax = T::zero();
            let mut smin = T::infinity();
            for c in 0..tilde.cols() {
                let v: Vec<Complex<T>> = (0..qq)
                    .map(|r| phases[r] * Complex::new(tilde.get(r, c), T::zero()))
                    .collect();
                let w = plan.matvec(&v)?;
                let s = w.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
                smax = smax.max(s);
                smin = smin.min(s);
            }
            Ok(finish_cond(spec, smax, smin))
        }
        CondMethod::FullSvd => {
            let res = svd::<T>(&spec.at_unit_origin(), SvdStrategy::Fft, SvdMode::Reduced)?;
            let smax = res.sigma[0];
            let smin = res.sigma[res.sigma.len() - 1];
            Ok(finish_cond(spec, smax, smin))
        }
    }
}

/// log10 condition numbers of every submatrix of the N-point DFT matrix.
/// Entry `(p,q)` lives at row `p-1`, column `q-1`; overflow cells carry a
/// lower-bound value and are marked in the mask.
#[derive(Debug, Clone)]
pub struct HeatmapGrid<T> {
    pub n: usize,
    pub values: Vec<T>,
    pub overflow: Vec<bool>,
}

impl<T: Copy> HeatmapGrid<T> {
    #[inline]
    pub fn value(&self, p: usize, q: usize) -> T {
        self.values[(p - 1) * self.n + (q - 1)]
    }

    #[inline]
    pub fn is_overflow(&self, p: usize, q: usize) -> bool {
        self.overflow[(p - 1) * self.n + (q - 1)]
    }
}

/// Condition numbers of all `(p,q)` in `[1,N]^2` by the linear-time method.
/// Cells are independent and run in parallel.
pub fn cond_heatmap<T: Real>(n: usize) -> Result<HeatmapGrid<T>> {
    let cells: Vec<(T, bool)> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (p, q) = (idx / n + 1, idx % n + 1);
            let spec = SubmatrixSpec::new(n, p, q)?;
            let c = condition_number::<T>(&spec, CondMethod::LinearTime)?;
            Ok((c.log10_cond, c.overflow))
        })
        .collect::<Result<_>>()?;
    Ok(HeatmapGrid {
        n,
        values: cells.iter().map(|c| c.0).collect(),
        overflow: cells.iter().map(|c| c.1).collect(),
    })
}

/// The factors of the Hadamard link `F_N = G o H`: `G` is the leading
/// `N x N` block of the `(N+1)`-point DFT matrix and `H` the same block of
/// the `N(N+1)`-point one.
pub fn hadamard_h<T: Real>(n: usize) -> (ComplexDenseMatrix<T>, ComplexDenseMatrix<T>) {
    assert!(n >= 1);
    let np1 = n as i128 + 1;
    let big = n as i128 * np1;
    let g = ComplexDenseMatrix::from_fn(n, n, |j, k| {
        cis_frac(-(((j as i128 - 1) * (k as i128 - 1)).rem_euclid(np1)), np1)
    });
    let h = ComplexDenseMatrix::from_fn(n, n, |j, k| {
        cis_frac(-(((j as i128 - 1) * (k as i128 - 1)).rem_euclid(big)), big)
    });
    debug_assert!({
        let f = crate::dft::build_f::<T>(n);
        f.max_abs_diff(&g.hadamard(&h)) <= T::lit(1e-13)
    });
    (g, h)
}

/// Singular value profile of `H` (an `N x N` submatrix of the
/// `N(N+1)`-point DFT matrix) through the tridiagonal pipeline, plus the
/// count of values at or above `rel_threshold * sigma_1`.
pub fn hadamard_rank_profile<T: Real>(n: usize, rel_threshold: T) -> Result<(Vec<T>, usize)> {
    if !(rel_threshold > T::zero() && rel_threshold < T::one()) {
        return Err(crate::error::invalid("relative threshold must lie in (0, 1)"));
    }
    let spec = SubmatrixSpec::new(n * (n + 1), n, n)?;
    let res = svd::<T>(&spec, SvdStrategy::Fft, SvdMode::Reduced)?;
    let cutoff = rel_threshold * res.sigma[0];
    let count = res.sigma.iter().filter(|&&s| s >= cutoff).count();
    Ok((res.sigma, count))
}

/// log10 magnitudes of the column-wise transforms of the singular vector
/// matrices; zeros are clamped at the floor value.
#[derive(Debug, Clone)]
pub struct LocalizationMaps<T> {
    /// `p x r`: log10 |columnwise_fft(U)|.
    pub left: RealDenseMatrix<T>,
    /// `q x r`: log10 |columnwise_fft(V)|.
    pub right: RealDenseMatrix<T>,
    pub floor: T,
}

/// Frequency-localization maps of the P-DPSS: reduced SVD, then column-wise
/// transforms of `U` (length p) and `V` (length q) in log10 magnitude.
pub fn localization<T: Real>(spec: &SubmatrixSpec) -> Result<LocalizationMaps<T>> {
    let res = svd::<T>(spec, SvdStrategy::Fft, SvdMode::Reduced)?;
    let floor = T::lit(-16.0);
    let log_map = |m: &ComplexDenseMatrix<T>| {
        let f = columnwise_fft(m);
        RealDenseMatrix::from_fn(f.rows(), f.cols(), |j, k| {
            let mag = f.get(j - 1, k - 1).norm();
            if mag > T::zero() {
                mag.log10().max(floor)
            } else {
                floor
            }
        })
    };
    Ok(LocalizationMaps { left: log_map(&res.u), right: log_map(&res.v), floor })
}
