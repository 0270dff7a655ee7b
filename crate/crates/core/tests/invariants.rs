//! Cross-module invariants: the two winding computations agree, the two
//! Taylor-coefficient routes agree, and the coefficient decay estimates
//! dominate measured coefficients on seeded random product suites.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use h2rab::laurent::{dft_coefficients, winding_rational, BoundaryGrid};
use h2rab::{
    alpha_max, coeff_bound_blaschke, coeff_tail_bound, delay_bound, optimize_alpha_beta,
    product_coeff_bound, unit_points, BlaschkeProduct, BoundParams, PoleConfig,
};

fn random_product(rng: &mut ChaCha8Rng, max_degree: usize, lambda_max: f64) -> BlaschkeProduct {
    let n = rng.gen_range(1..=max_degree);
    let zeros = (0..n)
        .map(|_| {
            let r = rng.gen_range(0.0..lambda_max * lambda_max).sqrt();
            let th = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r, th)
        })
        .collect();
    BlaschkeProduct::from_zeros(zeros).unwrap()
}

/// Truncation order from the tail certificate: smallest k0 >= n/alpha with
/// the squared-coefficient tail bound below `tol`.
fn truncation_order(b: &BlaschkeProduct, tol: f64) -> usize {
    let n = b.degree();
    let lambda = b.max_zero_modulus();
    if lambda == 0.0 {
        return n + 1;
    }
    let alpha = 0.5 * alpha_max(lambda);
    let mut k0 = (n as f64 / alpha).ceil() as usize;
    while coeff_tail_bound(n, lambda, alpha, k0).unwrap() >= tol {
        k0 += 1 + k0 / 8;
    }
    k0
}

#[test]
fn brezis_matches_argument_principle_on_random_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..40 {
        let b = random_product(&mut rng, 10, 0.8);
        let k_max = truncation_order(&b, 1e-10);
        let series = b.taylor_coeffs_series(k_max);
        let by_sum = series.brezis_winding();
        let by_roots = winding_rational(&b.to_rational()).unwrap();
        assert_eq!(by_roots, b.degree() as i64);
        assert!(
            (by_sum - by_roots as f64).abs() <= 1e-6,
            "degree {}: {} vs {}",
            b.degree(),
            by_sum,
            by_roots
        );
    }
}

#[test]
fn taylor_routes_agree_on_random_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..30 {
        let b = random_product(&mut rng, 10, 0.8);
        let k_max = 150;
        let slow = b.taylor_coeffs_series(k_max);
        let fast = b.taylor_coeffs_fft(k_max, 1e-10).unwrap();
        for k in 0..=k_max as i64 {
            assert!((slow.coeff(k) - fast.coeff(k)).norm() < 1e-9, "k = {k}");
        }
    }
}

#[test]
fn truncated_mass_is_unimodular() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for _ in 0..25 {
        let b = random_product(&mut rng, 12, 0.85);
        let k_max = truncation_order(&b, 1e-12);
        let mass = b.taylor_coeffs_series(k_max).l2_norm();
        assert!((mass - 1.0).abs() < 1e-10, "mass = {mass}");
    }
}

#[test]
fn appendix_bounds_dominate_measured_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for _ in 0..20 {
        let b = random_product(&mut rng, 10, 0.8);
        let n = b.degree();
        let lambda = b.max_zero_modulus();
        if lambda < 1e-6 {
            continue;
        }
        let alpha = 0.5 * alpha_max(lambda);
        let k0 = (n as f64 / alpha).ceil() as usize;
        let k_hi = k0 + 200;
        let coeffs = b.taylor_coeffs_series(k_hi + 600);

        for k in k0..=k_hi {
            let bound = coeff_bound_blaschke(n, lambda, alpha, k).unwrap();
            let got = coeffs.coeff(k as i64).norm();
            assert!(got <= bound, "k = {k}: |a_k| = {got} > bound = {bound}");
        }

        let tail: f64 = (k0..coeffs.len()).map(|k| coeffs.coeff(k as i64).norm_sqr()).sum();
        let tail_bound = coeff_tail_bound(n, lambda, alpha, k0).unwrap();
        assert!(tail <= tail_bound, "tail {tail} > bound {tail_bound}");
    }
}

#[test]
fn product_coefficient_bound_dominates_dft_measurements() {
    // f = B_2 at desk scale: z^{N-1} (z - λ)/(1 - λ z), N = 20, λ = 1/2
    let big_n = 20usize;
    let lambda = 0.5;
    let mut zeros = vec![Complex64::new(0.0, 0.0); big_n - 1];
    zeros.push(Complex64::new(lambda, 0.0));
    let f = BlaschkeProduct::from_zeros(zeros).unwrap();

    let alpha = 0.5 * alpha_max(lambda);
    let k_lo = -((big_n as f64 / alpha).ceil() as i64); // -240

    let m = 2048usize;
    let points = unit_points(m);
    let f_conj: Vec<Complex64> = f.values_at(&points).into_iter().map(|v| v.conj()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for _ in 0..5 {
        let bn = random_product(&mut rng, 3, 0.8);
        let bn = BlaschkeProduct::from_zeros(vec![
            bn.zeros().first().copied().unwrap_or(Complex64::new(0.1, 0.0)),
            Complex64::from_polar(rng.gen_range(0.0..0.64f64).sqrt(), rng.gen_range(0.0..6.28)),
            Complex64::from_polar(rng.gen_range(0.0..0.64f64).sqrt(), rng.gen_range(0.0..6.28)),
        ])
        .unwrap();
        let bn_vals = bn.values_at(&points);
        let samples: Vec<Complex64> =
            f_conj.iter().zip(&bn_vals).map(|(a, b)| a * b).collect();
        let grid = BoundaryGrid::new(samples).unwrap();
        let series = dft_coefficients(&grid, -(m as i64) / 2, m as i64 / 2 - 1).unwrap();

        for beta in [0.0, 0.5, 1.0] {
            for k in (-(m as i64) / 2..=k_lo).rev() {
                let bound =
                    product_coeff_bound(big_n, 3, lambda, alpha, beta, k).unwrap();
                let got = series.coeff(k).norm();
                assert!(got <= bound, "beta = {beta}, k = {k}: {got} > {bound}");
            }
        }
    }
}

#[test]
fn theorem2_regime_recovered_as_lambda_vanishes() {
    let rep = optimize_alpha_beta(100, 50, 1e-6).unwrap();
    let want = delay_bound(50, 100).unwrap();
    assert!(rep.valid);
    assert!((rep.value - want).abs() < 1e-2, "{} vs {}", rep.value, want);
}

#[test]
fn criterion_parseval_partition_on_random_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for _ in 0..10 {
        let f = random_product(&mut rng, 8, 0.7);
        if f.degree() < 2 {
            continue;
        }
        let n = rng.gen_range(1..f.degree());
        let poles: Vec<Complex64> = (0..n)
            .map(|_| {
                Complex64::from_polar(
                    rng.gen_range(0.0..0.9f64).sqrt(),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        let cfg = PoleConfig::new(poles, false).unwrap();
        let (minus, complement) = h2rab::criterion_forms(&f, &cfg).unwrap();
        assert!((minus - complement).abs() < 1e-10);
    }
}

#[test]
fn alpha_interval_breakpoints_carry_the_jumps() {
    // bound as a function of α for λ = 0.5, N = 100, n = 4: continuous off
    // the breakpoints N/m, with visible jumps across at least one of them
    let (big_n, n, lambda) = (100usize, 4usize, 0.5f64);
    let a0 = alpha_max(lambda);
    let value = |alpha: f64| -> f64 {
        let p = BoundParams::new(big_n, n, lambda, alpha, 0.0).unwrap();
        h2rab::general_bound(&p).unwrap().value
    };

    // off-breakpoint continuity at 100 deterministic interior points
    let eps = 1e-9;
    for i in 0..100 {
        let alpha = a0 * (0.05 + 0.9 * i as f64 / 99.0);
        let m = (big_n as f64 / alpha).floor();
        let dist = (big_n as f64 / m - alpha).abs().min((big_n as f64 / (m + 1.0) - alpha).abs());
        if dist < 10.0 * eps {
            continue;
        }
        let d = (value(alpha + eps) - value(alpha - eps)).abs();
        assert!(d < 1e-6, "jump {d} at non-breakpoint alpha = {alpha}");
    }

    // at breakpoints N/m inside (0, α_0) the one-sided limits differ
    let mut saw_jump = false;
    let m_lo = (big_n as f64 / a0).floor() as i64 + 1;
    for m in m_lo..m_lo + 10 {
        let b = big_n as f64 / m as f64;
        let jump = (value(b + eps) - value(b - eps)).abs();
        if jump > 1e-7 {
            saw_jump = true;
        }
    }
    assert!(saw_jump, "no discontinuity detected at integer-part breakpoints");
}
