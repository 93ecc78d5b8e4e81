//! Stable singular value decompositions of contiguous submatrices of the
//! discrete Fourier transform matrix.
//!
//! The singular values of a p x q block of the N-point DFT matrix cluster
//! at `sqrt(N)` and at zero, which makes the associated Gram (periodic
//! prolate) matrix hopeless as a numerical route to the singular vectors —
//! the periodic discrete prolate spheroidal sequences. This crate instead
//! solves the eigenproblem of a real symmetric tridiagonal matrix that
//! commutes with the prolate matrix and has a simple, well-separated
//! spectrum, then maps eigenvectors to singular vectors by unimodular
//! diagonal scalings and recovers the singular values through
//! matrix-vector products with the submatrix (dense or FFT-based,
//! whichever the sizes favor).
//!
//! All numeric kernels are generic over the real scalar via [`Real`];
//! `f64` aliases for the common types are exported at the crate root.

mod apps;
mod dft;
mod eig;
mod error;
mod fft;
mod matrix;
mod scalar;
mod svd;
mod tridiagonal;

pub use apps::{
    cond_heatmap, condition_number, hadamard_h, hadamard_rank_profile, localization, CondMethod,
    CondResult, HeatmapGrid, LocalizationMaps,
};
pub use dft::{
    build_a, build_c, build_f, build_j, build_s, diag_d, shift_to_b, twiddle, SubmatrixSpec,
};
pub use eig::{eig_full, eig_selected, eig_values, sturm_count, EigenPairs, EigenSelection};
pub use error::{Error, Result};
pub use fft::{columnwise_fft, fft, ifft, ComplexVector, FftPlan, MatvecStrategy, PaddedMatvecPlan};
pub use matrix::{ComplexDenseMatrix, RealDenseMatrix};
pub use scalar::Real;
pub use svd::{
    assemble_svd_fft, assemble_svd_projection, left_vectors_projection, plunge_svd, right_vectors,
    svd, PlungeWindow, SvdMode, SvdResult, SvdStrategy,
};
pub use tridiagonal::RealSymTridiagonal;

/// Binary64 instantiations of the core types.
pub type ComplexMatrix64 = ComplexDenseMatrix<f64>;
pub type RealMatrix64 = RealDenseMatrix<f64>;
pub type Tridiagonal64 = RealSymTridiagonal<f64>;
pub type SvdResult64 = SvdResult<f64>;

/// Binary32 instantiations; these compile and run, but the documented
/// accuracy contracts are calibrated for binary64.
pub type ComplexMatrix32 = ComplexDenseMatrix<f32>;
pub type RealMatrix32 = RealDenseMatrix<f32>;
pub type Tridiagonal32 = RealSymTridiagonal<f32>;
pub type SvdResult32 = SvdResult<f32>;
