//! Transform-plan consistency across the full acceptance grid.

mod common;

use common::{norm2, TestRng};
use pdpss::{build_a, MatvecStrategy, PaddedMatvecPlan, SubmatrixSpec};

#[test]
fn plan_matches_dense_on_grid() {
    let mut rng = TestRng::new(7);
    for n in [8usize, 16, 32] {
        let sqrt_n = (n as f64).sqrt();
        for p in 1..=n {
            for q in 1..=n {
                let spec = SubmatrixSpec::new(n, p, q).unwrap();
                let a = build_a::<f64>(&spec).unwrap();
                let v = rng.complex_vec(q);
                let want = a.matvec(&v);
                let nv = norm2(&v);
                for strat in [MatvecStrategy::Fft, MatvecStrategy::Dense] {
                    let plan = PaddedMatvecPlan::new(&spec, strat).unwrap();
                    let got = plan.matvec(&v).unwrap();
                    let mut worst = 0.0f64;
                    for (g, w) in got.iter().zip(&want) {
                        worst = worst.max((g - w).norm());
                    }
                    assert!(
                        worst <= 1e-12 * sqrt_n * nv.max(1.0),
                        "matvec N={n} p={p} q={q} {strat:?}: {worst:e}"
                    );
                }
            }
        }
    }
}

/// Transform-based matvec time grows subquadratically in N along p = q = N/2.
#[test]
fn matvec_growth_is_subquadratic() {
    use std::time::Instant;
    let mut rng = TestRng::new(17);
    let mut times = Vec::new();
    let sizes = [256usize, 1024, 4096];
    for &n in &sizes {
        let spec = SubmatrixSpec::new(n, n / 2, n / 2).unwrap();
        let plan = PaddedMatvecPlan::<f64>::new(&spec, MatvecStrategy::Fft).unwrap();
        let v = rng.complex_vec(n / 2);
        let _ = plan.matvec(&v).unwrap(); // warm-up
        let reps = 32usize;
        let mut best = f64::INFINITY;
        for _ in 0..5 {
            let started = Instant::now();
            for _ in 0..reps {
                std::hint::black_box(plan.matvec(&v).unwrap());
            }
            best = best.min(started.elapsed().as_secs_f64() / reps as f64);
        }
        times.push(best);
    }
    // quadratic growth would give 16x per step; require clearly less
    for w in times.windows(2) {
        assert!(w[1] < w[0] * 12.0, "matvec times {times:?}");
    }
}

#[test]
fn adjoint_plan_matches_dense_on_grid() {
    let mut rng = TestRng::new(8);
    for n in [8usize, 16, 32] {
        let sqrt_n = (n as f64).sqrt();
        for p in (1..=n).step_by(3) {
            for q in (1..=n).step_by(3) {
                let spec = SubmatrixSpec::new(n, p, q).unwrap();
                let a = build_a::<f64>(&spec).unwrap();
                let u = rng.complex_vec(p);
                let want = a.adjoint().matvec(&u);
                let nu = norm2(&u);
                for strat in [MatvecStrategy::Fft, MatvecStrategy::Dense] {
                    let plan = PaddedMatvecPlan::new(&spec, strat).unwrap();
                    let got = plan.matvec_adjoint(&u).unwrap();
                    let mut worst = 0.0f64;
                    for (g, w) in got.iter().zip(&want) {
                        worst = worst.max((g - w).norm());
                    }
                    assert!(
                        worst <= 1e-12 * sqrt_n * nu.max(1.0),
                        "adjoint N={n} p={p} q={q} {strat:?}: {worst:e}"
                    );
                }
            }
        }
    }
}
