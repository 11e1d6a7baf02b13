//! Observables of the limit theorems (character statistics `W_k`, Chebyshev
//! functionals of the profile and of the transition measure) and a
//! reproducible Monte-Carlo driver comparing them with their Gaussian limits.

use std::sync::{Arc, OnceLock};
use std::time::Instant;

use gauss_quad::GaussLegendre;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};
use thiserror::Error;

use crate::algebra::binomial;
use crate::lassalle::compute_L;
use crate::measure::{sample_many, sampler_by_name};
use crate::partitions::Partition;
use crate::profiles::{
    free_cumulants_f64, moments_f64, omega_limit, profile, sup_distance_to_limit,
    transition_measure_f64,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticsError {
    #[error("unknown statistic '{0}'")]
    UnknownStatistic(String),
    #[error("unknown sampler '{0}'")]
    UnknownSampler(String),
    #[error("at least {min} replicas are needed, got {got}")]
    TooFewReplicas { min: u64, got: u64 },
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

/// Compensated (Neumaier) summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Neumaier::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// `gamma = 1/sqrt(alpha) - sqrt(alpha)`.
pub fn gamma_f64(alpha: f64) -> f64 {
    (1.0 - alpha) / alpha.sqrt()
}

/// Coefficients (ascending) of `u_k(x) = U_k(x/2)`.
pub fn chebyshev_u(k: u32) -> Vec<f64> {
    let mut c = vec![0.0; k as usize + 1];
    for j in 0..=k / 2 {
        let v = binomial((k - j) as i64, j as i64);
        let v: f64 = v.to_string().parse().expect("integer");
        c[(k - 2 * j) as usize] = if j % 2 == 0 { v } else { -v };
    }
    c
}

/// Coefficients (ascending) of `t_k(x) = 2 T_k(x/2)`, `k >= 1`.
pub fn chebyshev_t(k: u32) -> Vec<f64> {
    assert!(k >= 1, "t_k is defined here for k >= 1");
    let mut c = vec![0.0; k as usize + 1];
    for j in 0..=k / 2 {
        let b: f64 = binomial((k - j) as i64, j as i64)
            .to_string()
            .parse()
            .expect("integer");
        let v = b * k as f64 / (k - j) as f64;
        c[(k - 2 * j) as usize] = if j % 2 == 0 { v } else { -v };
    }
    c
}

pub fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

/// Catalan number `C_j` as a float.
fn catalan(j: u32) -> f64 {
    let b: f64 = binomial(2 * j as i64, j as i64)
        .to_string()
        .parse()
        .expect("integer");
    b / (j + 1) as f64
}

/// `int p d mu_SC` from the semicircle moments `m_{2j} = C_j`.
pub fn semicircle_moment_integral(c: &[f64]) -> f64 {
    c.iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .map(|(i, a)| a * catalan(i as u32 / 2))
        .collect::<Neumaier>()
        .value()
}

fn gauss_legendre(deg: usize) -> &'static GaussLegendre {
    static RULES: OnceLock<Vec<GaussLegendre>> = OnceLock::new();
    let rules = RULES.get_or_init(|| {
        (2..=64)
            .map(|d| GaussLegendre::new(d).expect("deg >= 2"))
            .collect()
    });
    &rules[deg.clamp(2, 64) - 2]
}

/// `int f d mu_SC` by Gauss-Legendre after `x = 2 cos(theta)`.
pub fn semicircle_integral(f: impl Fn(f64) -> f64) -> f64 {
    let pi = std::f64::consts::PI;
    let g = |t: f64| f(2.0 * t.cos()) * 2.0 / pi * t.sin().powi(2);
    let rule = gauss_legendre(64);
    rule.integrate(0.0, pi / 2.0, g) + rule.integrate(pi / 2.0, pi, g)
}

/// `int u_k(x) (Omega(x) - |x|) dx`.
fn omega_correction(k: u32) -> f64 {
    static CACHE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = CACHE.get_or_init(|| {
        let pi = std::f64::consts::PI;
        let rule = gauss_legendre(64);
        (0..=32)
            .map(|k| {
                let c = chebyshev_u(k);
                let g = |t: f64| {
                    let x = 2.0 * t.cos();
                    horner(&c, x) * (omega_limit(x) - x.abs()) * 2.0 * t.sin()
                };
                rule.integrate(0.0, pi / 2.0, g) + rule.integrate(pi / 2.0, pi, g)
            })
            .collect()
    });
    table[k as usize]
}

/// `W_k = Ch_(k)(lambda) / (sqrt(k) n^{k/2})`, evaluating the moment
/// expansion of `Ch_(k)` in floating point with compensated summation.
pub fn w_stat(lambda: &Partition, alpha: f64, k: u32) -> f64 {
    assert!(k >= 2, "W_k needs k >= 2");
    let n = lambda.size();
    if k > n {
        return 0.0;
    }
    let l = compute_L(&Partition::of(&[k]));
    let m = moments_f64(lambda, alpha, k as usize + 1);
    let g = gamma_f64(alpha);
    let ch: Neumaier = l
        .body
        .terms()
        .iter()
        .map(|(rho, c)| {
            rho.parts()
                .iter()
                .fold(c.eval_f64(g), |acc, &i| acc * m[i as usize])
        })
        .collect();
    ch.value() / ((k as f64).sqrt() * (n as f64).powf(k as f64 / 2.0))
}

/// `u_k = int u_k(x) Delta(lambda)(x) dx` with
/// `Delta = sqrt(n) (omega(D_{1/sqrt n} A_alpha(lambda)) - Omega) / 2`.
///
/// The profile part is integrated exactly segment by segment; the limit
/// shape part is a precomputed constant.
pub fn u_stat(lambda: &Partition, alpha: f64, k: u32) -> f64 {
    let n = lambda.size() as f64;
    let w = profile(lambda, alpha, 1.0 / n.sqrt());
    let c = chebyshev_u(k);
    let mut xs: Vec<f64> = w.breakpoints().iter().map(|p| p.0).collect();
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    if lo < 0.0 && hi > 0.0 {
        xs.push(0.0);
        xs.sort_by(f64::total_cmp);
    }
    let rule = gauss_legendre((k as usize + 4) / 2);
    let pieces: Neumaier = xs
        .windows(2)
        .map(|s| rule.integrate(s[0], s[1], |x| horner(&c, x) * (w.eval(x) - x.abs())))
        .collect();
    n.sqrt() / 2.0 * (pieces.value() - omega_correction(k))
}

/// `t_k = sqrt(n) (int t_k d mu_{D_{1/sqrt n} A_alpha(lambda)} - int t_k d mu_SC)`.
pub fn t_stat(lambda: &Partition, alpha: f64, k: u32) -> f64 {
    let n = lambda.size() as f64;
    let c = chebyshev_t(k);
    let s = n.sqrt();
    let tm = transition_measure_f64(lambda, alpha);
    let sum: Neumaier = tm
        .atoms
        .iter()
        .map(|(z, w)| w * horner(&c, z / s))
        .collect();
    s * (sum.value() - semicircle_moment_integral(&c))
}

/// `R_k` of the scaled diagram `D_{1/sqrt n} A_alpha(lambda)`.
pub fn scaled_free_cumulant(lambda: &Partition, alpha: f64, k: u32) -> f64 {
    let n = lambda.size() as f64;
    free_cumulants_f64(lambda, alpha, k as usize)[k as usize] / n.powf(k as f64 / 2.0)
}

/// Gaussian limit `(mean, variance)`.
pub type Limit = (f64, f64);

/// A real observable of a random partition.
pub trait Statistic: Send + Sync {
    fn name(&self) -> String;
    fn eval(&self, lambda: &Partition, alpha: f64) -> f64;
    /// The Gaussian limit as `n -> infinity`, when there is one.
    fn limit(&self, alpha: f64) -> Option<Limit>;
}

/// `W_k`, limit `N(0, 1)`.
pub struct WStat(pub u32);
/// `u_k`, limit `N(-gamma/(k+1) [k odd], 1/(k+1))`.
pub struct UStat(pub u32);
/// `t_k`, limit `N(-gamma [k odd], k-1)`.
pub struct TStat(pub u32);
/// Scaled free cumulant `R_k`; degenerate limit.
pub struct RStat(pub u32);
/// `sup_x |omega - Omega|` of the scaled profile; degenerate limit.
pub struct SupStat;

impl Statistic for WStat {
    fn name(&self) -> String {
        format!("w{}", self.0)
    }
    fn eval(&self, lambda: &Partition, alpha: f64) -> f64 {
        w_stat(lambda, alpha, self.0)
    }
    fn limit(&self, _alpha: f64) -> Option<Limit> {
        Some((0.0, 1.0))
    }
}

impl Statistic for UStat {
    fn name(&self) -> String {
        format!("u{}", self.0)
    }
    fn eval(&self, lambda: &Partition, alpha: f64) -> f64 {
        u_stat(lambda, alpha, self.0)
    }
    fn limit(&self, alpha: f64) -> Option<Limit> {
        let k = self.0 as f64;
        let shift = if self.0 % 2 == 1 {
            -gamma_f64(alpha) / (k + 1.0)
        } else {
            0.0
        };
        Some((shift, 1.0 / (k + 1.0)))
    }
}

impl Statistic for TStat {
    fn name(&self) -> String {
        format!("t{}", self.0)
    }
    fn eval(&self, lambda: &Partition, alpha: f64) -> f64 {
        t_stat(lambda, alpha, self.0)
    }
    fn limit(&self, alpha: f64) -> Option<Limit> {
        let shift = if self.0 % 2 == 1 {
            -gamma_f64(alpha)
        } else {
            0.0
        };
        Some((shift, self.0 as f64 - 1.0))
    }
}

impl Statistic for RStat {
    fn name(&self) -> String {
        format!("r{}", self.0)
    }
    fn eval(&self, lambda: &Partition, alpha: f64) -> f64 {
        scaled_free_cumulant(lambda, alpha, self.0)
    }
    fn limit(&self, _alpha: f64) -> Option<Limit> {
        None
    }
}

impl Statistic for SupStat {
    fn name(&self) -> String {
        "sup".into()
    }
    fn eval(&self, lambda: &Partition, alpha: f64) -> f64 {
        sup_distance_to_limit(lambda, alpha)
    }
    fn limit(&self, _alpha: f64) -> Option<Limit> {
        None
    }
}

/// Looks up `w<k>` (k >= 2), `u<k>` (k >= 1), `t<k>` (k >= 3), `r<k>` (k >= 2) or `sup`.
pub fn statistic_by_name(name: &str) -> Result<Arc<dyn Statistic>, AsymptoticsError> {
    let unknown = || AsymptoticsError::UnknownStatistic(name.to_string());
    if name == "sup" {
        return Ok(Arc::new(SupStat));
    }
    let (head, tail) = name.split_at(name.chars().next().map_or(0, char::len_utf8));
    let k: u32 = tail.parse().map_err(|_| unknown())?;
    if k > 32 {
        return Err(unknown());
    }
    match (head, k) {
        ("w", 2..) => Ok(Arc::new(WStat(k))),
        ("u", 1..) => Ok(Arc::new(UStat(k))),
        ("t", 3..) => Ok(Arc::new(TStat(k))),
        ("r", 2..) => Ok(Arc::new(RStat(k))),
        _ => Err(unknown()),
    }
}

/// Parses a comma-separated statistic list.
pub fn parse_statistics(list: &str) -> Result<Vec<Arc<dyn Statistic>>, AsymptoticsError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(statistic_by_name)
        .collect()
}

/// Parameters of a Monte-Carlo run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub n: u32,
    pub alpha: f64,
    pub reps: u64,
    pub seed: u64,
    pub sampler: String,
    pub stats: Vec<String>,
}

/// Summary of one statistic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatSummary {
    pub name: String,
    pub mean: f64,
    pub variance: f64,
    pub median: f64,
    /// Kolmogorov-Smirnov distance to the Gaussian limit.
    pub ks: Option<f64>,
    pub limit_mean: Option<f64>,
    pub limit_variance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub config: MonteCarloConfig,
    pub stats: Vec<StatSummary>,
    /// Sample covariance matrix in the order of `stats`.
    pub covariance: Vec<Vec<f64>>,
    /// Wall-clock seconds; filled only on request since it breaks reproducibility.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_secs: Option<f64>,
}

/// Minimum replica count accepted by [`monte_carlo`].
pub const MIN_REPLICAS: u64 = 100;

fn mean(xs: &[f64]) -> f64 {
    xs.iter().copied().collect::<Neumaier>().value() / xs.len() as f64
}

fn covariance(xs: &[f64], ys: &[f64]) -> f64 {
    let (mx, my) = (mean(xs), mean(ys));
    let s: Neumaier = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .collect();
    s.value() / (xs.len() as f64 - 1.0)
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len();
    if m % 2 == 1 {
        v[m / 2]
    } else {
        (v[m / 2 - 1] + v[m / 2]) / 2.0
    }
}

/// Kolmogorov-Smirnov distance between the empirical law of `xs` and `N(mean, var)`.
pub fn ks_distance(xs: &[f64], mean: f64, var: f64) -> f64 {
    let normal = Normal::new(mean, var.sqrt()).expect("positive variance");
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = normal.cdf(x);
            (f - i as f64 / m).max((i + 1) as f64 / m - f)
        })
        .fold(0.0, f64::max)
}

/// Evaluates each statistic on each sample; the outer index is the statistic.
pub fn evaluate_statistics(
    samples: &[Partition],
    stats: &[Arc<dyn Statistic>],
    alpha: f64,
) -> Vec<Vec<f64>> {
    let rows: Vec<Vec<f64>> = samples
        .par_iter()
        .map(|l| stats.iter().map(|s| s.eval(l, alpha)).collect())
        .collect();
    (0..stats.len())
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect()
}

/// Samples `reps` partitions and summarizes the selected statistics.
///
/// Every replica has its own random stream and the reductions run in replica
/// order, so the report does not depend on the number of threads.
pub fn monte_carlo(config: &MonteCarloConfig) -> Result<MonteCarloReport, AsymptoticsError> {
    if config.reps < MIN_REPLICAS {
        return Err(AsymptoticsError::TooFewReplicas {
            min: MIN_REPLICAS,
            got: config.reps,
        });
    }
    if !(config.alpha > 0.0 && config.alpha.is_finite()) || config.n == 0 {
        return Err(AsymptoticsError::BadParameter(
            "need n >= 1 and alpha > 0".into(),
        ));
    }
    let sampler = sampler_by_name(&config.sampler)
        .ok_or_else(|| AsymptoticsError::UnknownSampler(config.sampler.clone()))?;
    let stats: Vec<Arc<dyn Statistic>> = config
        .stats
        .iter()
        .map(|s| statistic_by_name(s))
        .collect::<Result<_, _>>()?;
    let samples = sample_many(&*sampler, config.n, config.alpha, config.reps, config.seed);
    let values = evaluate_statistics(&samples, &stats, config.alpha);
    let summaries = stats
        .iter()
        .zip(&values)
        .map(|(s, xs)| {
            let limit = s.limit(config.alpha);
            StatSummary {
                name: s.name(),
                mean: mean(xs),
                variance: covariance(xs, xs),
                median: median(xs),
                ks: limit.map(|(m, v)| ks_distance(xs, m, v)),
                limit_mean: limit.map(|l| l.0),
                limit_variance: limit.map(|l| l.1),
            }
        })
        .collect();
    let cov = values
        .iter()
        .map(|xs| values.iter().map(|ys| covariance(xs, ys)).collect())
        .collect();
    Ok(MonteCarloReport {
        config: config.clone(),
        stats: summaries,
        covariance: cov,
        runtime_secs: None,
    })
}

/// Like [`monte_carlo`] with the wall-clock time recorded.
pub fn monte_carlo_timed(config: &MonteCarloConfig) -> Result<MonteCarloReport, AsymptoticsError> {
    let start = Instant::now();
    let mut r = monte_carlo(config)?;
    r.runtime_secs = Some(start.elapsed().as_secs_f64());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_identities() {
        for k in 1..=8 {
            let (u, t) = (chebyshev_u(k), chebyshev_t(k));
            for i in 1..20 {
                let th = i as f64 * 0.15;
                let x = 2.0 * th.cos();
                assert!((horner(&u, x) * th.sin() - ((k + 1) as f64 * th).sin()).abs() < 1e-10);
                assert!((horner(&t, x) - 2.0 * (k as f64 * th).cos()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn semicircle_orthonormality() {
        for k in 0..=6 {
            for l in 0..=6 {
                let (a, b) = (chebyshev_u(k), chebyshev_u(l));
                let v = semicircle_integral(|x| horner(&a, x) * horner(&b, x));
                let want = if k == l { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-8, "{k} {l} {v}");
            }
        }
        assert!(semicircle_moment_integral(&chebyshev_t(4)).abs() < 1e-15);
        assert!((semicircle_moment_integral(&chebyshev_t(2)) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn w2_on_two_boxes() {
        let w = w_stat(&Partition::of(&[2]), 1.0, 2);
        assert!((w - 1.0 / 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(w_stat(&Partition::of(&[2]), 1.0, 3), 0.0);
    }

    #[test]
    fn registry_names() {
        for n in ["w2", "u1", "t3", "r4", "sup"] {
            assert_eq!(statistic_by_name(n).unwrap().name(), n);
        }
        for n in ["w1", "t2", "x3", "w", ""] {
            assert!(statistic_by_name(n).is_err());
        }
    }

    #[test]
    fn neumaier_recovers_cancellation() {
        let s: Neumaier = [1e16, 1.0, -1e16].into_iter().collect();
        assert_eq!(s.value(), 1.0);
    }
}
