//! Analytic results against independent references: quadrature, finite
//! differences, direct expectations and Monte-Carlo estimates.

use greywolf::dist::{cdf_g, mn_params, pdf_g, pdf_h, support_g, tabulate, CurveKind, GridSpec};
use greywolf::mc::{
    empirical_central_moment, ks_statistic, sample_xnext_constant, sample_xprime, simulate_stagnation,
    trapezoid_cdf, Histogram, SimConfig,
};
use greywolf::moments::{central_moment_step, moment_trajectory, PTriple};
use greywolf::verify::oracle::{integrate, quadrature_cdf};
use greywolf::verify::CONVOLUTION_ROWS;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn cdf_matches_quadrature_across_sign_cases() {
    for (a, p, x) in [
        (2.0, 1.0, 3.0),
        (2.0, 1.0, 0.5),
        (0.7, -1.5, 2.0),
        (1.2, 2.0, -3.0),
        (0.4, -0.5, -0.5),
        (1.0, 0.0, 2.0),
    ] {
        let sp = mn_params(a, p, x).unwrap();
        for k in 0..=40 {
            let u = p - sp.n + 2.0 * sp.n * k as f64 / 40.0;
            let q = quadrature_cdf(a, p, x, u, 1e-11).unwrap();
            assert!((cdf_g(u, &sp).unwrap() - q).abs() < 1e-9, "a={a} p={p} x={x} u={u} {}", cdf_g(u, &sp).unwrap() - q);
        }
    }
}

#[test]
fn cdf_derivative_is_pdf() {
    for (a, p, x) in [(2.0, 1.0, 3.0), (0.5, 1.0, 0.5), (1.5, -2.0, 1.0)] {
        let sp = mn_params(a, p, x).unwrap();
        let h = 1e-6;
        for k in 1..40 {
            let u = p - sp.n + 2.0 * sp.n * (k as f64 + 0.37) / 40.0;
            // keep away from the kinks at p and p +- |m|
            if [p, p - sp.m.abs(), p + sp.m.abs()].iter().any(|c| (u - c).abs() < 1e-3) {
                continue;
            }
            let fd = (cdf_g(u + h, &sp).unwrap() - cdf_g(u - h, &sp).unwrap()) / (2.0 * h);
            let f = pdf_g(u, &sp).unwrap();
            assert!((fd - f).abs() < 1e-6 * f.max(1.0), "u={u}: {fd} vs {f}");
        }
    }
}

#[test]
fn trapezoid_of_fine_density_matches_closed_form() {
    let sp = mn_params(2.0, 1.0, 3.0).unwrap();
    let (lo, hi) = support_g(&sp).unwrap();
    let pdf = tabulate(lo, hi, 20_000, CurveKind::Pdf, |u| pdf_g(u, &sp).unwrap()).unwrap();
    let cdf = trapezoid_cdf(&pdf).unwrap();
    let worst = cdf
        .nodes()
        .zip(cdf.values())
        .map(|(u, v)| (v - cdf_g(u, &sp).unwrap()).abs())
        .fold(0.0, f64::max);
    assert!(worst < 1e-4, "{worst}");
}

/// `E[(x' - c)^r]` for `r = 2, 4` from independence of the six drivers:
/// `x' - c = (1/3) sum A_k W_k` with `W_k = |C_k p_k - x|`.
fn direct_moment(r: usize, a: f64, p: [f64; 3], x: f64) -> f64 {
    let w = |k: usize, e: i32| 0.5 * integrate(&|c| (c * p[k] - x).abs().powi(e), 0.0, 2.0, 1e-13);
    let a2 = a * a / 3.0;
    match r {
        2 => (0..3).map(|k| a2 * w(k, 2)).sum::<f64>() / 9.0,
        4 => {
            let a4 = a.powi(4) / 5.0;
            let mut s: f64 = (0..3).map(|k| a4 * w(k, 4)).sum();
            for k in 0..3 {
                for l in k + 1..3 {
                    s += 6.0 * a2 * a2 * w(k, 2) * w(l, 2);
                }
            }
            s / 81.0
        }
        _ => unreachable!(),
    }
}

#[test]
fn generic_step_matches_direct_expectation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let a = rng.random_range(0.1..2.0);
        let p = [
            rng.random_range(-4.0..4.0),
            rng.random_range(-4.0..4.0),
            rng.random_range(-4.0..4.0),
        ];
        let x: f64 = rng.random_range(-5.0..5.0);
        let raw: Vec<f64> = (0..=4).map(|l| x.powi(l)).collect();
        let pt = PTriple::new(p[0], p[1], p[2]).unwrap();
        for r in [2, 4] {
            let step = central_moment_step(r, a, &pt, &raw).unwrap();
            let direct = direct_moment(r, a, p, x);
            assert!((step - direct).abs() <= 1e-9 * direct, "r={r}: {step} vs {direct}");
        }
    }
}

#[test]
fn generic_step_matches_monte_carlo() {
    let (a, p, x) = (1.3, [-1.0, 1.5, 2.5], 0.8);
    let pt = PTriple::new(p[0], p[1], p[2]).unwrap();
    let samples = sample_xnext_constant(a, p, x, 1_000_000, 17).unwrap();
    let raw: Vec<f64> = (0..=6).map(|l| x.powi(l)).collect();
    for r in [2u32, 4, 6] {
        let exact = central_moment_step(r as usize, a, &pt, &raw).unwrap();
        let est = empirical_central_moment(&samples, r, pt.center()).unwrap();
        assert!((est.value - exact).abs() < 3.0 * est.se, "r={r}: {} +- {} vs {exact}", est.value, est.se);
    }
    let odd = empirical_central_moment(&samples, 3, pt.center()).unwrap();
    assert!(odd.value.abs() < 4.0 * odd.se);
}

#[test]
fn guided_step_samples() {
    let (a, p, x) = (2.0, 1.0, 3.0);
    let sp = mn_params(a, p, x).unwrap();
    let n = 100_000;
    let s = sample_xprime(a, p, x, n, 1).unwrap();
    assert!(s.iter().all(|&v| v > p - sp.n && v < p + sp.n));
    let mean = empirical_central_moment(&s, 1, p).unwrap();
    assert!(mean.value.abs() < 4.0 * mean.se);
    assert!(ks_statistic(&s, |u| cdf_g(u, &sp).unwrap()).unwrap() < 1.95 / (n as f64).sqrt());
}

#[test]
fn ks_of_exact_uniform_samples() {
    let n = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let s: Vec<f64> = (0..n).map(|_| rng.random()).collect();
    assert!(ks_statistic(&s, |u| u.clamp(0.0, 1.0)).unwrap() < 0.0062);
}

#[test]
fn update_density_is_centered() {
    for (label, p, x) in CONVOLUTION_ROWS {
        let h = pdf_h(&GridSpec::fixed(2048), 2.0, p, x).unwrap();
        let c = p.iter().sum::<f64>() / 3.0;
        let cdf = trapezoid_cdf(&h).unwrap();
        assert!((cdf.eval(c) - 0.5).abs() < 1e-3, "row {label}");
    }
}

#[test]
fn update_samples_peak_and_median_at_center() {
    let (_, p, x) = CONVOLUTION_ROWS[6];
    let c = p.iter().sum::<f64>() / 3.0;
    let h = pdf_h(&GridSpec::default(), 2.0, p, x).unwrap();
    let n = 100_000;
    let mut s = sample_xnext_constant(2.0, p, x, n, 4).unwrap();
    let hist = Histogram::from_samples(&s, h.lo(), h.hi(), 60).unwrap();
    let k = hist.peak();
    let edges = hist.edges();
    // the centre may sit on an edge between two equal bins
    let near = (edges[k] - hist.width()..=edges[k + 1] + hist.width()).contains(&c);
    assert!(near, "peak bin [{}, {}] vs centre {c}", edges[k], edges[k + 1]);
    assert!(hist.is_unimodal());

    s.sort_by(f64::total_cmp);
    let median = 0.5 * (s[n / 2 - 1] + s[n / 2]);
    let se = 1.0 / (2.0 * h.eval(c) * (n as f64).sqrt());
    assert!((median - c).abs() < 4.0 * se, "median {median} vs {c} (se {se})");
}

#[test]
fn stagnation_variance_tracks_recursion() {
    let p = PTriple::new(-1.0, 1.5, 2.5).unwrap();
    let traj = moment_trajectory(2, &p, 60, (-4.0, 4.0)).unwrap();
    let mut cfg = SimConfig::stagnation(vec![p], 60, 100_000, 31);
    cfg.retain_cap = 0;
    let run = simulate_stagnation(&cfg).unwrap();
    for t in 1..=30 {
        let (mc, exact) = (run.stats(0, t).var, traj.variance(t));
        assert!((mc - exact).abs() < 0.02 * exact, "t={t}: {mc} vs {exact}");
    }
    let first = run.stats(0, 1);
    assert!(first.mean.abs() < 4.0 * first.se_mean);
}

#[test]
fn stagnation_samples_symmetric_and_unimodal() {
    let p = PTriple::new(0.5, -2.0, 3.0).unwrap();
    let cfg = SimConfig::stagnation(vec![p], 30, 50_000, 8);
    let run = simulate_stagnation(&cfg).unwrap();
    for t in 2..30 {
        let s = run.stats(0, t);
        assert!(s.central[3].abs() < 4.0 * s.central_se[3], "t={t}");
    }
    for t in [2, 5, 10, 20, 29] {
        let hist = Histogram::auto(run.samples(0, t).unwrap(), 60).unwrap();
        assert!(hist.is_unimodal(), "t={t}");
    }
}
