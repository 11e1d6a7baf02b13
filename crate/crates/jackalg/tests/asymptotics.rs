//! Integration tests for the limit-theorem statistics and the Monte-Carlo harness.

mod common;

use common::{field, p};
use jackalg::algebra::{q_frac, q_int, QuadExt, Q};
use jackalg::asymptotics::{
    chebyshev_t, chebyshev_u, horner, ks_distance, monte_carlo, parse_statistics,
    scaled_free_cumulant, semicircle_integral, semicircle_moment_integral, statistic_by_name,
    t_stat, u_stat, w_stat, AsymptoticsError, MonteCarloConfig, Neumaier,
};
use jackalg::lassalle::evaluate_Ch;
use jackalg::measure::{pmf, pmf_f64, sample_many, GrowthSampler};
use jackalg::partitions::{enumerate, Partition};
use jackalg::profiles::{omega_limit, profile};
use jackalg::structure::g_table;

#[test]
fn chebyshev_identities() {
    for k in 0..=10u32 {
        let (u, t) = (chebyshev_u(k), chebyshev_t(k.max(1)));
        for i in 1..200 {
            let th = std::f64::consts::PI * i as f64 / 200.0;
            let x = 2.0 * th.cos();
            let lhs = horner(&u, x) * th.sin();
            assert!((lhs - ((k + 1) as f64 * th).sin()).abs() < 1e-9, "u_{k}");
            let kk = k.max(1) as f64;
            assert!(
                (horner(&t, x) - 2.0 * (kk * th).cos()).abs() < 1e-9,
                "t_{k}"
            );
        }
    }
}

#[test]
fn second_kind_polynomials_are_orthonormal() {
    for k in 0..=6 {
        for l in 0..=6 {
            let (uk, ul) = (chebyshev_u(k), chebyshev_u(l));
            let v = semicircle_integral(|x| horner(&uk, x) * horner(&ul, x));
            let expected = if k == l { 1.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-8, "({k}, {l}): {v}");
        }
    }
}

#[test]
fn semicircle_integrals_of_first_kind() {
    assert!(semicircle_moment_integral(&chebyshev_t(4)).abs() < 1e-14);
    for k in 1..=8 {
        let c = chebyshev_t(k);
        let exact = semicircle_moment_integral(&c);
        let quad = semicircle_integral(|x| horner(&c, x));
        assert!((exact - quad).abs() < 1e-10, "t_{k}");
    }
}

#[test]
fn character_statistic_examples() {
    assert!((w_stat(&p(&[2]), 1.0, 2) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
    assert_eq!(w_stat(&p(&[2, 1]), 2.0, 4), 0.0);
    let mean: Neumaier = enumerate(6)
        .iter()
        .map(|l| pmf_f64(l, 2.0) * w_stat(l, 2.0, 2))
        .collect();
    assert!(mean.value().abs() < 1e-12);
}

#[test]
fn character_statistic_matches_exact_values() {
    for a in [q_int(2), q_frac(1, 4)] {
        let f = field(&a);
        let af = jackalg::algebra::q_to_f64(&a);
        for l in enumerate(7) {
            for k in 2..=5u32 {
                let exact = evaluate_Ch(&p(&[k]), &l, &f).to_f64()
                    / ((k as f64).sqrt() * 7f64.powf(k as f64 / 2.0));
                assert!((w_stat(&l, af, k) - exact).abs() < 1e-10, "{l}, k = {k}");
            }
        }
    }
}

#[test]
fn exact_character_moments() {
    // E[Ch_(k)] = 0 and E[Ch_(k)^2] = sum_l g_{(k),(k);1^l} (n)_l under Jack measure.
    for a in [q_int(1), q_int(2), q_frac(1, 4)] {
        let f = field(&a);
        for k in 2..=4u32 {
            let g = g_table(&p(&[k]), &p(&[k])).unwrap();
            for n in 1..=7u32 {
                let mut first = QuadExt::zero(&f);
                let mut second = QuadExt::zero(&f);
                for l in enumerate(n) {
                    let w = pmf(&l, &a);
                    let c = evaluate_Ch(&p(&[k]), &l, &f);
                    first = &first + &c.scale(&w);
                    second = &second + &(&c * &c).scale(&w);
                }
                let mut predicted = QuadExt::zero(&f);
                for j in 0..=2 * k {
                    let falling: Q = (0..j).map(|i| q_int(n as i64 - i as i64)).product();
                    let c = g.get(&Partition::ones(j)).eval(&f);
                    predicted = &predicted + &c.scale(&falling);
                }
                assert!(first.is_zero(), "k = {k}, n = {n}");
                assert_eq!(second, predicted, "k = {k}, n = {n}, alpha = {a}");
            }
        }
    }
}

/// Brute-force midpoint rule for `u_k`, independent of the segment-wise quadrature.
fn u_reference(lambda: &Partition, alpha: f64, k: u32) -> f64 {
    let n = lambda.size() as f64;
    let w = profile(lambda, alpha, 1.0 / n.sqrt());
    let c = chebyshev_u(k);
    let (lo, hi) = (-8.0, 8.0);
    let steps = 400_000;
    let h = (hi - lo) / steps as f64;
    let s: Neumaier = (0..steps)
        .map(|i| {
            let x = lo + (i as f64 + 0.5) * h;
            horner(&c, x) * (w.eval(x) - omega_limit(x))
        })
        .collect();
    n.sqrt() / 2.0 * s.value() * h
}

#[test]
fn shape_statistic_against_direct_quadrature() {
    for (l, a) in [
        (p(&[1]), 1.0),
        (p(&[1]), 2.0),
        (p(&[3, 1]), 0.5),
        (p(&[4, 2, 2, 1]), 3.0),
    ] {
        for k in 1..=5 {
            let (got, want) = (u_stat(&l, a, k), u_reference(&l, a, k));
            assert!(
                (got - want).abs() < 1e-6,
                "{l}, alpha {a}, k {k}: {got} vs {want}"
            );
        }
    }
    // Odd test functions integrate to zero against the symmetric single-box profile.
    assert!(u_stat(&p(&[1]), 1.0, 1).abs() < 1e-12);
}

#[test]
fn transition_statistic_examples() {
    assert!(t_stat(&p(&[1]), 1.0, 3).abs() < 1e-12);
    assert!((t_stat(&p(&[1]), 2.0, 3) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    // t_4 at the single box, alpha = 1: both atoms give 1 - 4 + 2 and the semicircle gives 0.
    assert!((t_stat(&p(&[1]), 1.0, 4) + 1.0).abs() < 1e-12);
}

#[test]
fn free_cumulant_variances_shrink() {
    let var = |n: u32, k: u32| {
        let s = sample_many(&GrowthSampler, n, 2.0, 300, 17);
        let xs: Vec<f64> = s.iter().map(|l| scaled_free_cumulant(l, 2.0, k)).collect();
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
    };
    // R_2 is the area, so its rescaled value is constant.
    assert!(var(100, 2) < 1e-24 && var(1600, 2) < 1e-24);
    for k in [3, 4] {
        let (small, large) = (var(100, k), var(1600, k));
        assert!(large < small, "k = {k}: {large} vs {small}");
    }
}

#[test]
fn registry() {
    for name in ["w2", "w7", "u1", "u4", "t3", "t5", "r3", "sup"] {
        assert_eq!(statistic_by_name(name).unwrap().name(), name);
    }
    for bad in ["w1", "t2", "u0", "x3", "w", "", "w99"] {
        assert!(
            matches!(
                statistic_by_name(bad),
                Err(AsymptoticsError::UnknownStatistic(_))
            ),
            "{bad}"
        );
    }
    let list = parse_statistics("w2, u1,t3").unwrap();
    assert_eq!(
        list.iter().map(|s| s.name()).collect::<Vec<_>>(),
        ["w2", "u1", "t3"]
    );
    let (m, v) = statistic_by_name("u1").unwrap().limit(2.0).unwrap();
    assert!((m - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15 && (v - 0.5).abs() < 1e-15);
    let (m, v) = statistic_by_name("t3").unwrap().limit(2.0).unwrap();
    assert!((m - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15 && (v - 2.0).abs() < 1e-15);
    assert_eq!(
        statistic_by_name("w3").unwrap().limit(0.3),
        Some((0.0, 1.0))
    );
    assert_eq!(
        statistic_by_name("u2").unwrap().limit(2.0),
        Some((0.0, 1.0 / 3.0))
    );
}

fn config(reps: u64, stats: &[&str]) -> MonteCarloConfig {
    MonteCarloConfig {
        n: 200,
        alpha: 2.0,
        reps,
        seed: 5,
        sampler: "growth".into(),
        stats: stats.iter().map(|s| s.to_string()).collect(),
    }
}

#[test]
fn monte_carlo_validation() {
    assert!(matches!(
        monte_carlo(&config(99, &["w2"])),
        Err(AsymptoticsError::TooFewReplicas { .. })
    ));
    let mut c = config(100, &["w2"]);
    c.sampler = "rsk".into();
    assert!(matches!(
        monte_carlo(&c),
        Err(AsymptoticsError::UnknownSampler(_))
    ));
    assert!(matches!(
        monte_carlo(&config(100, &["q2"])),
        Err(AsymptoticsError::UnknownStatistic(_))
    ));
    let mut c = config(100, &["w2"]);
    c.alpha = -1.0;
    assert!(matches!(
        monte_carlo(&c),
        Err(AsymptoticsError::BadParameter(_))
    ));
}

#[test]
fn monte_carlo_is_reproducible_across_thread_counts() {
    let cfg = config(400, &["w2", "w3", "u1", "u2", "t3", "r3", "sup"]);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| monte_carlo(&cfg).unwrap())
    };
    let (a, b) = (run(1), run(3));
    assert_eq!(a, b);
    assert!(a.runtime_secs.is_none());
    assert_eq!(a.covariance.len(), 7);
    let json = serde_json::to_string(&a).unwrap();
    assert!(!json.contains("runtime"));
    let exact = monte_carlo(&MonteCarloConfig {
        sampler: "exact".into(),
        n: 30,
        ..cfg.clone()
    })
    .unwrap();
    assert_eq!(exact.stats.len(), 7);
}

#[test]
fn ks_distance_basics() {
    let xs: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
    // Uniform on [0, 1] against a normal with matching mean and variance.
    let d = ks_distance(&xs, 0.5, 1.0 / 12.0);
    assert!(d > 0.01 && d < 0.1, "{d}");
}

#[test]
fn plancherel_character_statistic_is_close_to_gaussian() {
    let mut cfg = config(10_000, &["w2"]);
    cfg.n = 1000;
    cfg.alpha = 1.0;
    cfg.seed = 1000;
    let r = monte_carlo(&cfg).unwrap();
    assert!(r.stats[0].ks.unwrap() <= 0.05, "{:?}", r.stats[0]);
}
