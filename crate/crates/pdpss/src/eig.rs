//! Symmetric tridiagonal eigensolver.
//!
//! Two engines:
//!
//! * Sturm bisection plus inverse iteration — the primary path. It serves
//!   partial-spectrum requests (extreme eigenvalues, index windows) without
//!   touching the rest of the spectrum, which is what keeps the
//!   condition-number computation linear in the matrix dimension.
//! * Implicit-shift QL with accumulated rotations — the all-pairs
//!   cross-check engine.
//!
//! Inverse iteration draws its start vectors from a fixed 64-bit linear
//! congruential generator (Knuth's MMIX multiplier), seeded from the
//! eigenvalue's ascending index and the restart counter. Identical inputs
//! therefore produce bit-identical eigenvectors, and a vector computed
//! through an index-window request matches the same vector from a full
//! decomposition.

use crate::error::{failure, invalid, Result};
use crate::matrix::RealDenseMatrix;
use crate::scalar::Real;
use crate::tridiagonal::RealSymTridiagonal;

/// Which eigenpairs to compute. Indices count eigenvalues in descending
/// order, 1-based: `IndexWindow { lo: 1, hi: 3 }` is the top three.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenSelection {
    All,
    /// The largest and the smallest eigenvalue only.
    Extremes,
    IndexWindow { lo: usize, hi: usize },
}

/// Eigenvalues in descending order with, optionally, the matching unit-norm
/// eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenPairs<T> {
    pub values: Vec<T>,
    pub vectors: Option<RealDenseMatrix<T>>,
}

/// Number of eigenvalues of `t` strictly less than `x`, by the signed Sturm
/// sequence (LDL^T pivot count) with the usual tiny-pivot substitution.
pub fn sturm_count<T: Real>(t: &RealSymTridiagonal<T>, x: T) -> Result<usize> {
    if x.is_nan() {
        return Err(invalid("sturm_count: NaN shift"));
    }
    Ok(sturm_count_raw(t.diag(), t.offdiag(), x, pivot_floor(t)))
}

fn pivot_floor<T: Real>(t: &RealSymTridiagonal<T>) -> T {
    let max_off_sq = t
        .offdiag()
        .iter()
        .map(|e| *e * *e)
        .fold(T::one(), T::max);
    T::min_positive_value() * max_off_sq
}

fn sturm_count_raw<T: Real>(diag: &[T], off: &[T], x: T, pivmin: T) -> usize {
    let mut count = 0usize;
    let mut d = diag[0] - x;
    if d < T::zero() {
        count += 1;
    }
    for i in 1..diag.len() {
        let mut dd = d;
        if dd.abs() <= pivmin {
            dd = if dd < T::zero() { -pivmin } else { pivmin };
        }
        d = (diag[i] - x) - off[i - 1] * off[i - 1] / dd;
        if d < T::zero() {
            count += 1;
        }
    }
    count
}

/// All eigenpairs by implicit-shift QL with accumulated rotations.
/// Values descending, vectors unit norm with the leading-extremum sign
/// convention.
pub fn eig_full<T: Real>(t: &RealSymTridiagonal<T>) -> Result<EigenPairs<T>> {
    let n = t.n();
    let mut d = t.diag().to_vec();
    let mut e = t.offdiag().to_vec();
    e.push(T::zero());
    let mut z = RealDenseMatrix::from_fn(n, n, |j, k| if j == k { T::one() } else { T::zero() });

    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // locate a negligible off-diagonal
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(failure(format!("QL sweep limit exceeded at eigenvalue {l}")));
            }
            // Wilkinson-style shift
            let mut g = (d[l + 1] - d[l]) / (e[l] + e[l]);
            let mut r = g.hypot(T::one());
            let sign_r = if g >= T::zero() { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + (c + c) * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    f = z.get(k, i + 1);
                    z.set(k, i + 1, s * z.get(k, i) + c * f);
                    z.set(k, i, c * z.get(k, i) - s * f);
                }
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }

    // sort descending, carrying columns
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[b].partial_cmp(&d[a]).expect("finite eigenvalues"));
    let values: Vec<T> = order.iter().map(|&i| d[i]).collect();
    let mut vectors = RealDenseMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = z.col(src);
        fix_sign(&mut col);
        vectors.set_col(dst, &col);
    }
    Ok(EigenPairs { values, vectors: Some(vectors) })
}

/// Requested eigenvalues by Sturm bisection, eigenvectors by inverse
/// iteration with reorthogonalization inside eigenvalue clusters.
pub fn eig_selected<T: Real>(t: &RealSymTridiagonal<T>, sel: EigenSelection) -> Result<EigenPairs<T>> {
    let n = t.n();
    // ascending 0-based indices of the requested eigenvalues
    let asc: Vec<usize> = match sel {
        EigenSelection::All => (0..n).collect(),
        EigenSelection::Extremes => {
            if n == 1 {
                vec![0]
            } else {
                vec![0, n - 1]
            }
        }
        EigenSelection::IndexWindow { lo, hi } => {
            if lo == 0 || lo > hi || hi > n {
                return Err(invalid(format!(
                    "index window [{lo},{hi}] invalid for dimension {n}"
                )));
            }
            (n - hi..=n - lo).collect()
        }
    };

    let values_asc = bisect_indices(t, &asc);
    let norm1 = t.norm1();
    // eigenvalues this close are treated as one cluster: their iterates are
    // kept orthogonal inside the iteration, or convergence would stall on a
    // shared direction
    let cluster_tol = (T::lit(1e3) * T::epsilon()).max(T::lit(1e-4)) * norm1;
    // neighbours within this radius get a final orthogonalization sweep;
    // further out, the iteration cross-talk eps*|T|/gap is already well
    // below the orthogonality contract
    let ortho_radius = T::lit(1e-2) * norm1;

    let mut vecs: Vec<Vec<T>> = Vec::with_capacity(asc.len());
    let mut cluster_start = 0usize;
    for i in 0..asc.len() {
        let contiguous = i > 0 && asc[i] == asc[i - 1] + 1;
        if !(contiguous && (values_asc[i] - values_asc[i - 1]).abs() <= cluster_tol) {
            cluster_start = i;
        }
        let mates = &vecs[cluster_start..i];
        let mut v = inverse_iteration(t, values_asc[i], asc[i], mates)?;
        let mut touched = false;
        for j in (0..i).rev() {
            if asc[i] != asc[j] + (i - j) || (values_asc[i] - values_asc[j]).abs() > ortho_radius {
                break;
            }
            let d = dot(&v, &vecs[j]);
            for (vi, mi) in v.iter_mut().zip(&vecs[j]) {
                *vi = *vi - d * *mi;
            }
            touched = true;
        }
        if touched {
            normalize(&mut v);
            fix_sign(&mut v);
        }
        vecs.push(v);
    }

    // descending output
    let m = asc.len();
    let values: Vec<T> = values_asc.iter().rev().copied().collect();
    let mut vectors = RealDenseMatrix::zeros(n, m);
    for j in 0..m {
        vectors.set_col(j, &vecs[m - 1 - j]);
    }
    Ok(EigenPairs { values, vectors: Some(vectors) })
}

/// Eigenvalues only (ascending indices given, values returned in the same
/// order), by bisection to an interval of width `4*eps*||T||_1`.
pub fn eig_values<T: Real>(t: &RealSymTridiagonal<T>) -> Result<Vec<T>> {
    let n = t.n();
    let asc: Vec<usize> = (0..n).collect();
    let mut v = bisect_indices(t, &asc);
    v.reverse();
    Ok(v)
}

fn bisect_indices<T: Real>(t: &RealSymTridiagonal<T>, asc: &[usize]) -> Vec<T> {
    let (diag, off) = (t.diag(), t.offdiag());
    let n = t.n();
    if n == 1 {
        return asc.iter().map(|_| diag[0]).collect();
    }
    let pivmin = pivot_floor(t);
    // Gershgorin enclosure
    let mut glo = T::infinity();
    let mut ghi = T::neg_infinity();
    for i in 0..n {
        let mut radius = T::zero();
        if i > 0 {
            radius = radius + off[i - 1].abs();
        }
        if i + 1 < n {
            radius = radius + off[i].abs();
        }
        glo = glo.min(diag[i] - radius);
        ghi = ghi.max(diag[i] + radius);
    }
    let norm1 = t.norm1();
    let width_target = T::lit(4.0) * T::epsilon() * norm1;
    let pad = T::epsilon() * norm1 + T::min_positive_value();
    glo = glo - pad;
    ghi = ghi + pad;

    asc.iter()
        .map(|&j| {
            let mut a = glo;
            let mut b = ghi;
            for _ in 0..200 {
                if b - a <= width_target {
                    break;
                }
                let mid = a + (b - a) / T::lit(2.0);
                if mid <= a || mid >= b {
                    break;
                }
                if sturm_count_raw(diag, off, mid, pivmin) <= j {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            a + (b - a) / T::lit(2.0)
        })
        .collect()
}

/// Start-vector generator: Knuth's 64-bit LCG, seeded from the eigenvalue
/// index and restart counter so runs are reproducible.
struct Lcg(u64);

impl Lcg {
    fn for_eigenvector(asc_index: usize, restart: usize) -> Self {
        let seed = 0x853C_49E6_748F_EA9Bu64
            ^ (asc_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
            ^ (restart as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
        Lcg(seed)
    }

    fn next_unit<T: Real>(&mut self) -> T {
        self.0 = self
            .0
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        let mantissa = (self.0 >> 11) as f64 / (1u64 << 53) as f64;
        T::lit(2.0 * mantissa - 1.0)
    }
}

fn inverse_iteration<T: Real>(
    t: &RealSymTridiagonal<T>,
    lambda: T,
    asc_index: usize,
    cluster_mates: &[Vec<T>],
) -> Result<Vec<T>> {
    let n = t.n();
    if n == 1 {
        return Ok(vec![T::one()]);
    }
    let norm_ref = t.norm1().max(T::min_positive_value());
    let residual_of = |x: &[T], shift: T| {
        let tx = t.matvec(x);
        let mut res = T::zero();
        for i in 0..n {
            let r = tx[i] - shift * x[i];
            res = res + r * r;
        }
        res.sqrt()
    };
    let tight = T::lit(20.0) * T::of_usize(n).sqrt() * T::epsilon() * norm_ref;
    let budget = T::lit(100.0) * T::of_usize(n) * T::epsilon() * norm_ref;

    let mut best: Option<(T, Vec<T>)> = None;
    'restarts: for restart in 0..4usize {
        // restarts nudge the shift to escape exactly singular factorizations
        let shift = lambda + T::of_usize(restart) * T::lit(10.0) * T::epsilon() * norm_ref;
        let mut rng = Lcg::for_eigenvector(asc_index, restart);
        let mut x: Vec<T> = (0..n).map(|_| rng.next_unit()).collect();
        normalize(&mut x);
        let mut prev_growth = T::zero();
        for _ in 0..5 {
            let mut y = solve_shifted(t, shift, &x);
            let growth = norm2(&y);
            for mate in cluster_mates {
                let dot = dot(&y, mate);
                for i in 0..n {
                    y[i] = y[i] - dot * mate[i];
                }
            }
            let nrm = norm2(&y);
            if nrm == T::zero() || !nrm.is_finite() {
                break; // orthogonalization annihilated the iterate; restart
            }
            for v in y.iter_mut() {
                *v = *v / nrm;
            }
            x = y;
            let res = residual_of(&x, lambda);
            if best.as_ref().is_none_or(|(b, _)| res < *b) {
                best = Some((res, x.clone()));
            }
            if res <= tight {
                break 'restarts;
            }
            // stagnation: growth stopped improving
            if growth <= prev_growth {
                break;
            }
            prev_growth = growth;
        }
    }
    match best {
        Some((res, mut out)) if res <= budget => {
            fix_sign(&mut out);
            Ok(out)
        }
        _ => Err(failure(format!(
            "inverse iteration did not converge for eigenvalue index {asc_index}"
        ))),
    }
}

/// Solve `(T - shift I) x = b` by Gaussian elimination with partial
/// pivoting; near-singular pivots are floored, which is exactly what
/// inverse iteration wants.
fn solve_shifted<T: Real>(t: &RealSymTridiagonal<T>, shift: T, b: &[T]) -> Vec<T> {
    let n = t.n();
    let mut d: Vec<T> = t.diag().iter().map(|&v| v - shift).collect();
    let mut du: Vec<T> = t.offdiag().to_vec();
    du.push(T::zero());
    let mut du2 = vec![T::zero(); n];
    let dl: Vec<T> = t.offdiag().to_vec();
    let mut r = b.to_vec();

    for i in 0..n - 1 {
        let sub = dl[i];
        if sub.abs() > d[i].abs() {
            // swap rows i and i+1
            let m = if sub != T::zero() { d[i] / sub } else { T::zero() };
            let t1 = d[i + 1];
            let t2 = du[i + 1];
            d[i] = sub;
            d[i + 1] = du[i] - m * t1;
            du[i] = t1;
            du2[i] = t2;
            du[i + 1] = -m * t2;
            let ri = r[i];
            r[i] = r[i + 1];
            r[i + 1] = ri - m * r[i];
        } else {
            let m = if d[i] != T::zero() { sub / d[i] } else { T::zero() };
            d[i + 1] = d[i + 1] - m * du[i];
            r[i + 1] = r[i + 1] - m * r[i];
        }
    }

    let floor = T::epsilon() * t.norm1().max(T::min_positive_value()) * T::epsilon();
    let safe = |v: T| {
        if v.abs() < floor {
            if v < T::zero() {
                -floor
            } else {
                floor
            }
        } else {
            v
        }
    };
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = r[i];
        if i + 1 < n {
            s = s - du[i] * x[i + 1];
        }
        if i + 2 < n {
            s = s - du2[i] * x[i + 2];
        }
        x[i] = s / safe(d[i]);
    }
    x
}

fn norm2<T: Real>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt()
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

fn normalize<T: Real>(x: &mut [T]) {
    let n = norm2(x);
    if n > T::zero() {
        for v in x.iter_mut() {
            *v = *v / n;
        }
    }
}

/// Sign convention: the first component of largest absolute value is made
/// positive.
pub(crate) fn fix_sign<T: Real>(x: &mut [T]) {
    let mut best = 0usize;
    let mut best_abs = T::zero();
    for (i, v) in x.iter().enumerate() {
        if v.abs() > best_abs {
            best_abs = v.abs();
            best = i;
        }
    }
    if x[best] < T::zero() {
        for v in x.iter_mut() {
            *v = -*v;
        }
    }
}
