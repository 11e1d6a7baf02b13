//! The invariant suite behind `jackalg verify`.

use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::ValueEnum;
use jackalg::algebra::{q_big, q_frac, q_int, AlphaField, BasisPolynomial, GammaPoly, QuadExt, Q};
use jackalg::lassalle::{
    check_degree_bounds, compute_K, compute_L, compute_Lprime, theta, BoundReport,
};
use jackalg::measure::{
    fulman_l, fulman_m, growth_marginal_exact, pmf, pmf_f64, sample_many, total_variation,
    GrowthSampler,
};
use jackalg::oracle::{count_factorizations, count_matchings, jack_table, theta_hook_closed_form};
use jackalg::partitions::{enumerate, hook_products, Partition};
use jackalg::structure::{
    c_constant, c_triple_product, elementary_expansion_expected, g_table,
    matsumoto_content_expansion, verify_linear_terms_stirling, verify_special_values,
    verify_struct_const_theorem, verify_top_degrees, verify_vassilieva, ElementaryPoly,
};
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    /// Small sizes; a few seconds.
    Fast,
    /// The sizes used by the acceptance suite; several minutes.
    Full,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Fast => "fast",
            Level::Full => "full",
        }
    }

    fn pick<T>(self, fast: T, full: T) -> T {
        match self {
            Level::Fast => fast,
            Level::Full => full,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(parts: &[u32]) -> Partition {
    Partition::of(parts)
}

fn field(a: &Q) -> AlphaField {
    AlphaField::new(a.clone()).expect("positive alpha")
}

fn alphas(level: Level) -> Vec<Q> {
    level.pick(
        vec![q_int(1), q_int(2)],
        vec![q_int(1), q_int(2), q_frac(1, 4), q_int(4)],
    )
}

/// Reference expansions of `L_mu` in the moments.
const REFERENCE_L: [(&[u32], &str); 6] = [
    (&[1], "M_2"),
    (&[2], "M_3 + γM_2"),
    (&[3], "M_4 - 2M_2^2 + 3γM_3 + (1 + 2γ^2)M_2"),
    (
        &[4],
        "M_5 - 5M_3M_2 + 6γM_4 - 11γM_2^2 + (5 + 11γ^2)M_3 + (7γ + 6γ^3)M_2",
    ),
    (
        &[5],
        "M_6 - 6M_4M_2 - 3M_3^2 + 7M_2^3 + 10γM_5 - 45γM_3M_2 + (15 + 35γ^2)M_4 - (25 + 60γ^2)M_2^2 + (55γ + 50γ^3)M_3 + (8 + 46γ^2 + 24γ^4)M_2",
    ),
    (
        &[2, 2],
        "M_3^2 + 2γM_3M_2 - 4M_4 + (6 + γ^2)M_2^2 - 10γM_3 - (2 + 6γ^2)M_2",
    ),
];

/// Reference Kerov polynomials in the free cumulants.
const REFERENCE_K: [(&[u32], &str); 6] = [
    (&[1], "R_2"),
    (&[2], "R_3 + γR_2"),
    (&[3], "R_4 + 3γR_3 + (1 + 2γ^2)R_2"),
    (
        &[4],
        "R_5 + 6γR_4 + γR_2^2 + (5 + 11γ^2)R_3 + (7γ + 6γ^3)R_2",
    ),
    (
        &[5],
        "R_6 + 10γR_5 + 5γR_3R_2 + (15 + 35γ^2)R_4 + (5 + 10γ^2)R_2^2 + (55γ + 50γ^3)R_3 + (8 + 46γ^2 + 24γ^4)R_2",
    ),
    (
        &[2, 2],
        "R_3^2 + 2γR_3R_2 - 4R_4 + (γ^2 - 2)R_2^2 - 10γR_3 - (2 + 6γ^2)R_2",
    ),
];

const REFERENCE_LPRIME_22: &str = "(M'_3)^2 + 6(M'_2)^2 - 4M'_4 - 10γM'_3 - 2M'_2";

fn same(got: &BasisPolynomial, text: &str) -> Result<(), String> {
    let want = BasisPolynomial::parse(text).map_err(|e| e.to_string())?;
    ensure(*got == want, || {
        format!("{} != {}", got.render(), want.render())
    })
}

fn reference_expansions(_: Level) -> Outcome {
    for (mu, text) in REFERENCE_L {
        same(&compute_L(&p(mu)).body, text).map_err(|e| format!("L_{mu:?}: {e}"))?;
    }
    for (mu, text) in REFERENCE_K {
        same(&compute_K(&p(mu)).body, text).map_err(|e| format!("K_{mu:?}: {e}"))?;
    }
    same(&compute_Lprime(&p(&[2, 2])).body, REFERENCE_LPRIME_22)
        .map_err(|e| format!("L'_[2,2]: {e}"))?;
    Ok("13 expansions".into())
}

fn degree_bounds(level: Level) -> Outcome {
    let mut report = BoundReport::default();
    for mu in (1..=level.pick(6, 8)).flat_map(enumerate) {
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

fn structure_constants(level: Level) -> Outcome {
    let r = verify_struct_const_theorem(level.pick(6, 8)).map_err(|e| e.to_string())?;
    let kmax = level.pick(4, 6);
    let special = verify_special_values(kmax).map_err(|e| e.to_string())?;
    for k in 1..=kmax {
        let v = g_table(&p(&[k]), &p(&[k]))
            .map_err(|e| e.to_string())?
            .get(&Partition::ones(k));
        ensure(v == GammaPoly::from_int(k as i64), || {
            format!("g_([{k}],[{k}];1^{k}) = {v}")
        })?;
    }
    Ok(format!(
        "{} pairs, {} entries, {special} special values",
        r.pairs, r.entries
    ))
}

fn triple_products(level: Level) -> Outcome {
    let mut checked = 0;
    let count_max = level.pick(3, 4);
    for a in alphas(level) {
        let f = field(&a);
        for n in 1..=level.pick(4, 5) {
            let ps = enumerate(n);
            for mu in &ps {
                for nu in &ps {
                    for pi in &ps {
                        let c = c_constant(mu, nu, pi, &f).map_err(|e| e.to_string())?;
                        let t = c_triple_product(mu, nu, pi, &a);
                        ensure(c.as_rational() == Some(&t), || {
                            format!("({mu},{nu};{pi}) at {a}: {c} vs {t}")
                        })?;
                        if n <= count_max && a == q_int(1) {
                            let k = q_int(count_factorizations(mu, nu, pi) as i64);
                            ensure(k == t, || format!("factorizations ({mu},{nu};{pi})"))?;
                        }
                        if n <= count_max && a == q_int(2) {
                            let k = q_int(count_matchings(mu, nu, pi) as i64);
                            ensure(k == t, || format!("matchings ({mu},{nu};{pi})"))?;
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} triples"))
}

fn jack_oracle(level: Level) -> Outcome {
    let nmax = level.pick(5, 7);
    for a in alphas(level) {
        for n in 1..=nmax {
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
                        (q_big(mu.z()) * num_traits::pow(a.clone(), mu.length() as usize)).recip()
                    } else {
                        Q::zero()
                    };
                    ensure(s == want, || format!("orthogonality {mu},{nu} at {a}"))?;
                }
            }
        }
    }
    Ok(format!("n <= {nmax}"))
}

fn characters_match_oracle(level: Level) -> Outcome {
    let nmax = level.pick(5, 7);
    let mut checked = 0;
    for a in alphas(level) {
        let f = field(&a);
        for n in 1..=nmax {
            let t = jack_table(n, &a);
            for mu in &t.partitions {
                for l in &t.partitions {
                    let v = theta(mu, l, &f).map_err(|e| e.to_string())?;
                    ensure(v.as_rational() == Some(&t.theta(mu, l)), || {
                        format!("theta_{mu}({l}) at {a}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} values"))
}

fn markov_kernels(level: Level) -> Outcome {
    let mut kernels = 0;
    for a in alphas(level) {
        for n in 2..=level.pick(4, 6) {
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

fn growth_law(level: Level) -> Outcome {
    let nmax = level.pick(5, 6);
    for a in alphas(level) {
        let f = field(&a);
        for n in 1..=nmax {
            let law = growth_marginal_exact(n, &f);
            for l in enumerate(n) {
                let want = QuadExt::rational(&f, pmf(&l, &a));
                let got = law.get(&l).cloned().unwrap_or_else(|| QuadExt::zero(&f));
                ensure(got == want, || format!("P({l}) at {a}: {got} vs {want}"))?;
            }
        }
    }
    Ok(format!("n <= {nmax}"))
}

const SAMPLER_SEED: u64 = 11;

fn sampler_fidelity(level: Level) -> Outcome {
    let (reps, tol, params) = level.pick(
        (20_000, 0.03, vec![1.0]),
        (100_000, 0.02, vec![0.5, 1.0, 2.0]),
    );
    let mut tvs = Vec::new();
    for alpha in params {
        let s = sample_many(&GrowthSampler, 6, alpha, reps, SAMPLER_SEED);
        let law: Vec<(Partition, f64)> = enumerate(6)
            .into_iter()
            .map(|l| {
                let w = pmf_f64(&l, alpha);
                (l, w)
            })
            .collect();
        let tv = total_variation(&s, &law);
        ensure(tv <= tol, || format!("alpha {alpha}: TV {tv:.4} > {tol}"))?;
        tvs.push(format!("{tv:.4}"));
    }
    Ok(format!("TV {}", tvs.join(", ")))
}

fn appendix_identities(level: Level) -> Outcome {
    let kmax = level.pick(4, 6);
    let st = verify_linear_terms_stirling(kmax).map_err(|e| e.to_string())?;
    let td = verify_top_degrees(kmax).map_err(|e| e.to_string())?;
    let va =
        verify_vassilieva(kmax, &[q_int(1), q_int(2), q_frac(1, 4)]).map_err(|e| e.to_string())?;
    let (emax, size) = level.pick((2, 5), (3, 7));
    for k in 1..=emax {
        let got =
            matsumoto_content_expansion(&ElementaryPoly::e(k), size).map_err(|e| e.to_string())?;
        ensure(got == elementary_expansion_expected(k), || {
            format!("e_{k}: {got:?}")
        })?;
    }
    Ok(format!(
        "{st} Stirling, {td} layers, {va} closed-form checks, e_1..e_{emax}"
    ))
}

type CheckFn = fn(Level) -> Outcome;

const CHECKS: [(&str, CheckFn); 10] = [
    ("reference_expansions", reference_expansions),
    ("degree_bounds", degree_bounds),
    ("structure_constants", structure_constants),
    ("triple_products", triple_products),
    ("jack_oracle", jack_oracle),
    ("characters_match_oracle", characters_match_oracle),
    ("markov_kernels", markov_kernels),
    ("growth_law", growth_law),
    ("sampler_fidelity", sampler_fidelity),
    ("appendix_identities", appendix_identities),
];

/// Runs every check; a panic counts as a failure.
pub fn run(level: Level) -> Vec<Check> {
    CHECKS
        .iter()
        .map(|&(name, f)| {
            let outcome = catch_unwind(AssertUnwindSafe(|| f(level)))
                .unwrap_or_else(|_| Err("panicked".into()));
            let passed = outcome.is_ok();
            Check {
                name,
                passed,
                detail: outcome.unwrap_or_else(|e| e),
            }
        })
        .collect()
}
