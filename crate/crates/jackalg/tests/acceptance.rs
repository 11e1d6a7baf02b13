//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test -p jackalg --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{alphas, field, p, GOLDEN_K, GOLDEN_L, GOLDEN_LPRIME_22};
use jackalg::algebra::{q_frac, q_int, BasisPolynomial, Q};
use jackalg::asymptotics::{gamma_f64, monte_carlo, MonteCarloConfig, MonteCarloReport};
use jackalg::lassalle::{check_degree_bounds, compute_K, compute_L, compute_Lprime, BoundReport};
use jackalg::measure::{
    fulman_l, fulman_m, pmf, pmf_f64, sample_many, total_variation, GrowthSampler,
};
use jackalg::oracle::{count_factorizations, count_matchings, jack_table, theta_hook_closed_form};
use jackalg::partitions::{enumerate, hook_products, Partition};
use jackalg::profiles::sup_distance_to_limit;
use jackalg::structure::{
    c_constant, c_triple_product, elementary_expansion_expected, g_table,
    matsumoto_content_expansion, verify_linear_terms_stirling, verify_special_values,
    verify_struct_const_theorem, verify_top_degrees, verify_vassilieva, ElementaryPoly,
};
use num_traits::{One, Zero};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Reference character expansions, compared after canonical ordering.
fn criterion_1() -> Outcome {
    let mut checked = 0;
    for (mu, text) in GOLDEN_L {
        let want = BasisPolynomial::parse(text)
            .map_err(|e| e.to_string())?
            .render();
        let got = compute_L(&p(mu)).body.render();
        ensure(got == want, || format!("L_{mu:?}: {got} != {want}"))?;
        checked += 1;
    }
    for (mu, text) in GOLDEN_K {
        let want = BasisPolynomial::parse(text)
            .map_err(|e| e.to_string())?
            .render();
        let got = compute_K(&p(mu)).body.render();
        ensure(got == want, || format!("K_{mu:?}: {got} != {want}"))?;
        checked += 1;
    }
    let want = BasisPolynomial::parse(GOLDEN_LPRIME_22)
        .map_err(|e| e.to_string())?
        .render();
    let got = compute_Lprime(&p(&[2, 2])).body.render();
    ensure(got == want, || format!("L'_(2,2): {got} != {want}"))?;
    Ok(format!("{} expansions", checked + 1))
}

/// Degree bounds and parity for every character of size at most 8.
fn criterion_2() -> Outcome {
    let mut report = BoundReport::default();
    for mu in (1..=8).flat_map(enumerate) {
        check_degree_bounds(&mu, &mut report);
    }
    ensure(report.violations.is_empty(), || {
        format!("{:?}", report.violations.first())
    })?;
    Ok(format!(
        "{} characters, {} coefficients",
        report.characters, report.coefficients
    ))
}

/// Structure-constant theorem and the special values.
fn criterion_3() -> Outcome {
    let r = verify_struct_const_theorem(8).map_err(|e| e.to_string())?;
    let special = verify_special_values(6).map_err(|e| e.to_string())?;
    for k in 1..=6 {
        let g = g_table(&p(&[k]), &p(&[k])).map_err(|e| e.to_string())?;
        let v = g.get(&Partition::ones(k));
        ensure(v == jackalg::algebra::GammaPoly::from_int(k as i64), || {
            format!("g_(({k}),({k});1^{k}) = {v}")
        })?;
    }
    Ok(format!(
        "{} pairs, {} entries, {special} special values",
        r.pairs, r.entries
    ))
}

/// Structure constants against triple products and the combinatorial counts.
fn criterion_4() -> Outcome {
    let mut checked = 0;
    for a in alphas() {
        let f = field(&a);
        for n in 1..=5 {
            let ps = enumerate(n);
            for mu in &ps {
                for nu in &ps {
                    for pi in &ps {
                        let c = c_constant(mu, nu, pi, &f).map_err(|e| e.to_string())?;
                        let t = c_triple_product(mu, nu, pi, &a);
                        ensure(c.as_rational() == Some(&t), || {
                            format!("({mu},{nu};{pi}) at {a}: {c} vs {t}")
                        })?;
                        if n <= 4 && a == q_int(1) {
                            let k = q_int(count_factorizations(mu, nu, pi) as i64);
                            ensure(k == t, || {
                                format!("factorizations ({mu},{nu};{pi}): {k} vs {t}")
                            })?;
                        }
                        if n <= 4 && a == q_int(2) {
                            let k = q_int(count_matchings(mu, nu, pi) as i64);
                            ensure(k == t, || format!("matchings ({mu},{nu};{pi}): {k} vs {t}"))?;
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} triples"))
}

/// Norms, the trivial character, Stanley's hook formula and orthogonality.
fn criterion_5() -> Outcome {
    for a in alphas() {
        for n in 1..=7 {
            let t = jack_table(n, &a);
            let ones = Partition::ones(n);
            for (i, l) in t.partitions.iter().enumerate() {
                ensure(t.norms[i] == hook_products(l, &a).j, || {
                    format!("norm of {l} at {a}")
                })?;
                ensure(t.theta(&ones, l).is_one(), || {
                    format!("theta_1^n({l}) at {a}")
                })?;
            }
            if n >= 2 {
                let hook = p(&[n - 1, 1]);
                for mu in &t.partitions {
                    ensure(t.theta(mu, &hook) == theta_hook_closed_form(mu, &a), || {
                        format!("hook formula {mu} at {a}")
                    })?;
                }
            }
            for mu in &t.partitions {
                for nu in &t.partitions {
                    let s: Q = t
                        .partitions
                        .iter()
                        .zip(&t.norms)
                        .map(|(l, j)| t.theta(mu, l) * t.theta(nu, l) / j)
                        .sum();
                    let want = if mu == nu {
                        (jackalg::algebra::q_big(mu.z())
                            * num_traits::pow(a.clone(), mu.length() as usize))
                        .recip()
                    } else {
                        Q::zero()
                    };
                    ensure(s == want, || format!("orthogonality {mu},{nu} at {a}"))?;
                }
            }
        }
    }
    Ok("n <= 7 at four parameters".into())
}

/// Fulman kernels: stochastic, reversible, related off the diagonal, with the predicted spectrum.
fn criterion_6() -> Outcome {
    let mut kernels = 0;
    for a in [q_int(1), q_int(2), q_frac(1, 4)] {
        for n in 2..=6u32 {
            let probs: Vec<Q> = enumerate(n).iter().map(|l| pmf(l, &a)).collect();
            let (m, l) = (fulman_m(n, &a), fulman_l(n, &a));
            for k in [&m, &l] {
                ensure(k.row_sums().iter().all(One::is_one), || {
                    format!("row sums n={n} alpha={a}")
                })?;
                ensure(k.is_reversible(&probs), || {
                    format!("detailed balance n={n} alpha={a}")
                })?;
                kernels += 1;
            }
            let nm1 = q_int(n as i64 - 1);
            let ratio = (&a * &nm1 + Q::one()) / (&a * &nm1);
            for i in 0..m.states.len() {
                for j in (0..m.states.len()).filter(|&j| j != i) {
                    ensure(l.matrix[i][j] == &ratio * &m.matrix[i][j], || {
                        format!("L/M ratio n={n} alpha={a}")
                    })?;
                }
            }
            let t = jack_table(n, &a);
            let nq = q_int(n as i64);
            for k in 2..=n {
                let mu = Partition::ones(n - k).with_part(k);
                let f: Vec<Q> = t.partitions.iter().map(|r| t.theta(&mu, r)).collect();
                let kq = q_int(k as i64);
                let dm = Q::one() - &kq / &nq;
                let dl = Q::one()
                    - &kq * (&a * (&nq - Q::one()) + Q::one()) / (&a * &nq * (&nq - Q::one()));
                ensure(
                    m.apply(&f).iter().zip(&f).all(|(x, y)| *x == y * &dm),
                    || format!("M eigenvector {mu} at {a}"),
                )?;
                ensure(
                    l.apply(&f).iter().zip(&f).all(|(x, y)| *x == y * &dl),
                    || format!("L eigenvector {mu} at {a}"),
                )?;
            }
        }
    }
    Ok(format!("{kernels} kernels"))
}

const SAMPLER_SEED: u64 = 11;
const SAMPLER_REPS: u64 = 100_000;
const TV_TOLERANCE: f64 = 0.02;

fn criterion_7() -> Outcome {
    let mut tvs = Vec::new();
    for alpha in [0.5, 1.0, 2.0] {
        let s = sample_many(&GrowthSampler, 6, alpha, SAMPLER_REPS, SAMPLER_SEED);
        let law: Vec<(Partition, f64)> = enumerate(6)
            .into_iter()
            .map(|l| {
                let w = pmf_f64(&l, alpha);
                (l, w)
            })
            .collect();
        let tv = total_variation(&s, &law);
        ensure(tv <= TV_TOLERANCE, || format!("alpha {alpha}: TV {tv:.4}"))?;
        tvs.push(format!("{tv:.4}"));
    }
    Ok(format!("TV {}", tvs.join(", ")))
}

const SHAPE_SEED: u64 = 8;
const SHAPE_REPS: u64 = 500;
const SHAPE_MEDIAN_BOUND: f64 = 0.25;

fn criterion_8() -> Outcome {
    let mut medians = Vec::new();
    for n in [100u32, 400, 1600] {
        let s = sample_many(&GrowthSampler, n, 2.0, SHAPE_REPS, SHAPE_SEED);
        let mut d: Vec<f64> = s.iter().map(|l| sup_distance_to_limit(l, 2.0)).collect();
        d.sort_by(f64::total_cmp);
        medians.push((d[d.len() / 2 - 1] + d[d.len() / 2]) / 2.0);
    }
    let text = format!(
        "medians {:.4}, {:.4}, {:.4}",
        medians[0], medians[1], medians[2]
    );
    ensure(medians[0] > medians[1] && medians[1] > medians[2], || {
        format!("not decreasing: {text}")
    })?;
    ensure(medians[2] < SHAPE_MEDIAN_BOUND, || {
        format!("too large: {text}")
    })?;
    Ok(text)
}

const CLT_SEED: u64 = 7;
const CLT_N: u32 = 1000;
const CLT_REPS: u64 = 10_000;
const CLT_ALPHA: f64 = 2.0;
const W_MEAN_TOL: f64 = 0.04;
const W_VAR_TOL: f64 = 0.06;
const W_COV_TOL: f64 = 0.05;
const W_KS_TOL: f64 = 0.05;
const U_MEAN_TOL: f64 = 0.04;
const U_VAR_REL_TOL: f64 = 0.25;
const T_MEAN_TOL: f64 = 0.06;

fn clt_run() -> Result<MonteCarloReport, String> {
    let cfg = MonteCarloConfig {
        n: CLT_N,
        alpha: CLT_ALPHA,
        reps: CLT_REPS,
        seed: CLT_SEED,
        sampler: "growth".into(),
        stats: ["w2", "w3", "u1", "u2", "t3"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    };
    monte_carlo(&cfg).map_err(|e| e.to_string())
}

fn criterion_9(r: &MonteCarloReport) -> Outcome {
    let mut parts = Vec::new();
    for s in &r.stats[..2] {
        ensure(s.mean.abs() <= W_MEAN_TOL, || {
            format!("{} mean {:.4}", s.name, s.mean)
        })?;
        ensure((s.variance - 1.0).abs() <= W_VAR_TOL, || {
            format!("{} variance {:.4}", s.name, s.variance)
        })?;
        parts.push(format!(
            "{} mean {:.4} var {:.4}",
            s.name, s.mean, s.variance
        ));
    }
    let cov = r.covariance[0][1];
    ensure(cov.abs() <= W_COV_TOL, || format!("cov(w2, w3) {cov:.4}"))?;
    let ks = r.stats[0].ks.ok_or("no limit for w2")?;
    ensure(ks <= W_KS_TOL, || format!("KS(w2) {ks:.4}"))?;
    Ok(format!("{}; cov {cov:.4}; KS {ks:.4}", parts.join("; ")))
}

fn criterion_10(r: &MonteCarloReport) -> Outcome {
    let g = gamma_f64(CLT_ALPHA);
    let (u1, u2, t3) = (&r.stats[2], &r.stats[3], &r.stats[4]);
    ensure((u1.mean + g / 2.0).abs() <= U_MEAN_TOL, || {
        format!("u1 mean {:.4}", u1.mean)
    })?;
    ensure(u2.mean.abs() <= U_MEAN_TOL, || {
        format!("u2 mean {:.4}", u2.mean)
    })?;
    for (s, k) in [(u1, 1.0), (u2, 2.0)] {
        let target = 1.0 / (k + 1.0);
        ensure(
            (s.variance - target).abs() <= U_VAR_REL_TOL * target,
            || format!("{} variance {:.4} vs {target:.4}", s.name, s.variance),
        )?;
    }
    ensure((t3.mean + g).abs() <= T_MEAN_TOL, || {
        format!("t3 mean {:.4}", t3.mean)
    })?;
    Ok(format!(
        "u1 {:.4}/{:.4}, u2 {:.4}/{:.4}, t3 mean {:.4}",
        u1.mean, u1.variance, u2.mean, u2.variance, t3.mean
    ))
}

/// Stirling terms, the top three layers, the minimal-factorization formula and content expansions.
fn criterion_11() -> Outcome {
    let st = verify_linear_terms_stirling(6).map_err(|e| e.to_string())?;
    let td = verify_top_degrees(6).map_err(|e| e.to_string())?;
    let va =
        verify_vassilieva(6, &[q_int(1), q_int(2), q_frac(1, 4)]).map_err(|e| e.to_string())?;
    for k in 1..=3 {
        let got =
            matsumoto_content_expansion(&ElementaryPoly::e(k), 7).map_err(|e| e.to_string())?;
        ensure(got == elementary_expansion_expected(k), || {
            format!("e_{k}: {got:?}")
        })?;
    }
    Ok(format!(
        "{st} Stirling, {td} layers, {va} closed-form checks, e_1..e_3"
    ))
}

fn run(index: u32, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panic: {msg}"))
    });
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|d| {
        ensure(elapsed <= budget, || format!("{d}; exceeded {budget:?}"))?;
        Ok(d)
    });
    let ok = outcome.is_ok();
    let detail = outcome.unwrap_or_else(|e| e);
    println!(
        "criterion {index}: {} ({detail}; {:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut ok = true;
    ok &= run(1, secs(5), criterion_1);
    ok &= run(2, secs(120), criterion_2);
    ok &= run(3, secs(300), criterion_3);
    ok &= run(4, secs(600), criterion_4);
    ok &= run(5, secs(300), criterion_5);
    ok &= run(6, secs(120), criterion_6);
    ok &= run(7, secs(60), criterion_7);
    ok &= run(8, secs(300), criterion_8);
    let start = Instant::now();
    let report = catch_unwind(clt_run).unwrap_or_else(|_| Err("panic in Monte-Carlo run".into()));
    println!(
        "shared Monte-Carlo run for criteria 9 and 10: {:.1}s",
        start.elapsed().as_secs_f64()
    );
    let clt_budget = secs(600).saturating_sub(start.elapsed());
    match &report {
        Ok(r) => {
            ok &= run(9, clt_budget, || criterion_9(r));
            ok &= run(10, clt_budget, || criterion_10(r));
        }
        Err(e) => {
            for i in [9, 10] {
                println!("criterion {i}: FAIL ({e})");
            }
            ok = false;
        }
    }
    ok &= run(11, secs(600), criterion_11);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
