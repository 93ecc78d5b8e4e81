//! Grid-level identities of the matrix builders.

mod common;

use num_complex::Complex;
use pdpss::{build_a, build_c, build_s, diag_d, shift_to_b, ComplexDenseMatrix, SubmatrixSpec};

/// B equals the diagonal-scaling identity for every origin, including ones
/// that wrap around.
#[test]
fn shift_identity_all_origins() {
    for n in [5usize, 8] {
        for p in 1..=n {
            for q in 1..=n {
                for j0 in 1..=n {
                    for k0 in 1..=n {
                        let spec = SubmatrixSpec::with_origin(n, p, q, j0, k0).unwrap();
                        let b = shift_to_b::<f64>(&spec);
                        let a = build_a::<f64>(&spec.at_unit_origin()).unwrap();
                        let w = pdpss::twiddle::<f64>(n).unwrap();
                        let scale = w.powf(-(((j0 - 1) * (k0 - 1)) as f64 % n as f64));
                        let dp = diag_d::<f64>(p, n, (k0 - 1) as f64);
                        let dq = diag_d::<f64>(q, n, (j0 - 1) as f64);
                        let check = ComplexDenseMatrix::from_fn(p, q, |j, k| {
                            scale * dp[j - 1] * a.get(j - 1, k - 1) * dq[k - 1]
                        });
                        let d = b.max_abs_diff(&check);
                        assert!(d <= 1e-12, "N={n} p={p} q={q} origin ({j0},{k0}): {d:e}");
                    }
                }
            }
        }
    }
}

/// C*C = S(p,q) and CC* = S(q,p) across the parameter grid.
#[test]
fn gram_identities_grid() {
    for n in [4usize, 9, 16] {
        for p in 1..=n {
            for q in 1..=n {
                let spec = SubmatrixSpec::new(n, p, q).unwrap();
                let c = build_c::<f64>(&spec).unwrap();

                let cc = c.adjoint().mul(&c);
                let s = build_s::<f64>(p, q, n);
                for j in 0..q {
                    for k in 0..q {
                        let z = cc.get(j, k);
                        assert!((z.re - s.get(j, k)).abs() <= 1e-12, "C*C N={n} p={p} q={q}");
                        assert!(z.im.abs() <= 1e-12);
                    }
                }

                let cc = c.mul(&c.adjoint());
                let s = build_s::<f64>(q, p, n);
                for j in 0..p {
                    for k in 0..p {
                        let z = cc.get(j, k);
                        assert!((z.re - s.get(j, k)).abs() <= 1e-12, "CC* N={n} p={p} q={q}");
                        assert!(z.im.abs() <= 1e-12);
                    }
                }
            }
        }
    }
}

/// Recovering A from C through the half-integer diagonal powers is exact to
/// rounding; exercises the branch-cut policy on even and odd sizes alike.
#[test]
fn c_recovers_a_grid() {
    for n in [6usize, 7, 12] {
        for p in 1..=n {
            for q in 1..=n {
                let spec = SubmatrixSpec::new(n, p, q).unwrap();
                let a = build_a::<f64>(&spec).unwrap();
                let c = build_c::<f64>(&spec).unwrap();
                let dp = diag_d::<f64>(p, n, -0.5 * (q as f64 - 1.0));
                let dq = diag_d::<f64>(q, n, -0.5 * (p as f64 - 1.0));
                // C = omega^{-(p-1)(q-1)/4} D_p^{-(q-1)/2} A D_q^{-(p-1)/2}
                let quarter = (p as f64 - 1.0) * (q as f64 - 1.0) / 4.0;
                let phase = Complex::from_polar(
                    1.0,
                    -2.0 * std::f64::consts::PI * (quarter / n as f64).fract(),
                );
                let check = ComplexDenseMatrix::from_fn(p, q, |j, k| {
                    phase * dp[j - 1] * a.get(j - 1, k - 1) * dq[k - 1]
                });
                let d = c.max_abs_diff(&check);
                assert!(d <= 1e-12, "N={n} p={p} q={q}: {d:e}");
            }
        }
    }
}
