//! Jack measure on partitions of `n`: the exact pmf, samplers, and Fulman's
//! two reversible Markov kernels.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{factorial, q_big, q_int, AlphaField, QuadExt, Q};
use crate::cache::Memo;
use crate::lassalle::evaluate_Ch;
use crate::oracle::jack_table;
use crate::partitions::{corners, enumerate, hook_products, Cell, Partition};

/// `P(lambda) = alpha^n n! / j_lambda`.
pub fn pmf(lambda: &Partition, alpha: &Q) -> Q {
    let n = lambda.size();
    num_traits::pow(alpha.clone(), n as usize) * q_big(factorial(n))
        / hook_products(lambda, alpha).j
}

/// The exact distribution over all partitions of `n`, reverse-lexicographic.
pub fn distribution(n: u32, alpha: &Q) -> Vec<(Partition, Q)> {
    enumerate(n)
        .into_iter()
        .map(|l| {
            let p = pmf(&l, alpha);
            (l, p)
        })
        .collect()
}

/// `P(lambda)` in floating point, through logarithms of the hook factors.
pub fn pmf_f64(lambda: &Partition, alpha: f64) -> f64 {
    let n = lambda.size() as f64;
    let mut log = n * alpha.ln() + ln_factorial(lambda.size());
    for c in lambda.cells() {
        let a = lambda.arm(c) as f64;
        let l = lambda.leg(c) as f64;
        log -= (alpha * a + l + 1.0).ln() + (alpha * a + l + alpha).ln();
    }
    log.exp()
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// The random stream of replica `replica` under a run seed.
pub fn replica_rng(seed: u64, replica: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replica);
    rng
}

/// A way of drawing a partition of `n` from Jack measure.
pub trait Sampler: Send + Sync {
    fn name(&self) -> &'static str;
    fn sample(&self, n: u32, alpha: f64, rng: &mut ChaCha8Rng) -> Partition;
}

/// Grows the diagram one box at a time, choosing the new box with the
/// transition-measure weight of its addable corner.
#[derive(Clone, Copy, Debug, Default)]
pub struct GrowthSampler;

/// Inverse-CDF sampling over all partitions of `n`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactSampler;

/// Largest size accepted by [`ExactSampler`].
pub const EXACT_SAMPLER_MAX_N: u32 = 40;

pub const SAMPLER_NAMES: [&str; 2] = ["growth", "exact"];

pub fn sampler_by_name(name: &str) -> Option<Arc<dyn Sampler>> {
    match name {
        "growth" => Some(Arc::new(GrowthSampler)),
        "exact" => Some(Arc::new(ExactSampler)),
        _ => None,
    }
}

/// Transition-measure weights of the addable corners of `parts`, returned
/// with the row index (0-based) of each corner.
pub fn growth_weights(
    parts: &[u32],
    sqrt_alpha: f64,
    rows: &mut Vec<usize>,
    weights: &mut Vec<f64>,
) {
    rows.clear();
    weights.clear();
    let inv = 1.0 / sqrt_alpha;
    let mut inner = Vec::with_capacity(parts.len() + 1);
    let mut outer = Vec::with_capacity(parts.len());
    let len = |i: usize| parts.get(i).copied().unwrap_or(0);
    for i in 0..=parts.len() {
        let here = len(i);
        if i == 0 || len(i - 1) > here {
            rows.push(i);
            inner.push(sqrt_alpha * here as f64 - i as f64 * inv);
        }
        if i < parts.len() && here > len(i + 1) {
            outer.push(sqrt_alpha * here as f64 - (i + 1) as f64 * inv);
        }
    }
    for (a, &z) in inner.iter().enumerate() {
        let mut w = 1.0;
        for &o in &outer {
            w *= z - o;
        }
        for (b, &y) in inner.iter().enumerate() {
            if a != b {
                w /= z - y;
            }
        }
        weights.push(w);
    }
}

/// Draws from the growth process up to size `n`.
pub fn sample_growth(n: u32, alpha: f64, rng: &mut ChaCha8Rng) -> Partition {
    let sqrt_alpha = alpha.sqrt();
    let mut parts: Vec<u32> = Vec::new();
    let mut rows = Vec::new();
    let mut weights = Vec::new();
    for _ in 0..n {
        growth_weights(&parts, sqrt_alpha, &mut rows, &mut weights);
        let u: f64 = rng.gen::<f64>() * weights.iter().sum::<f64>();
        let mut acc = 0.0;
        let mut pick = rows.len() - 1;
        for (k, w) in weights.iter().enumerate() {
            acc += w;
            if u < acc {
                pick = k;
                break;
            }
        }
        let r = rows[pick];
        if r == parts.len() {
            parts.push(1);
        } else {
            parts[r] += 1;
        }
    }
    Partition::new(parts).expect("growth keeps rows decreasing")
}

impl Sampler for GrowthSampler {
    fn name(&self) -> &'static str {
        "growth"
    }

    fn sample(&self, n: u32, alpha: f64, rng: &mut ChaCha8Rng) -> Partition {
        sample_growth(n, alpha, rng)
    }
}

struct CdfTable {
    partitions: Vec<Partition>,
    cdf: Vec<f64>,
}

static CDF_TABLES: Memo<(u32, u64), CdfTable> = Memo::new();

impl Sampler for ExactSampler {
    fn name(&self) -> &'static str {
        "exact"
    }

    /// Panics above [`EXACT_SAMPLER_MAX_N`].
    fn sample(&self, n: u32, alpha: f64, rng: &mut ChaCha8Rng) -> Partition {
        assert!(
            n <= EXACT_SAMPLER_MAX_N,
            "exact sampler supports n <= {EXACT_SAMPLER_MAX_N}"
        );
        let table = CDF_TABLES.get_or_insert(&(n, alpha.to_bits()), || {
            let partitions = enumerate(n);
            let mut acc = 0.0;
            let cdf = partitions
                .iter()
                .map(|l| {
                    acc += pmf_f64(l, alpha);
                    acc
                })
                .collect();
            CdfTable { partitions, cdf }
        });
        let total = *table.cdf.last().expect("nonempty");
        let u = rng.gen::<f64>() * total;
        let i = table
            .cdf
            .partition_point(|&c| c <= u)
            .min(table.cdf.len() - 1);
        table.partitions[i].clone()
    }
}

/// Draws `reps` samples in parallel; replica `r` uses stream `r` of `seed`.
pub fn sample_many(
    sampler: &dyn Sampler,
    n: u32,
    alpha: f64,
    reps: u64,
    seed: u64,
) -> Vec<Partition> {
    (0..reps)
        .into_par_iter()
        .map(|r| sampler.sample(n, alpha, &mut replica_rng(seed, r)))
        .collect()
}

/// Exact law of the growth process after `n` steps at a rational `alpha`,
/// computed by summing over all growth paths.
pub fn growth_marginal_exact(n: u32, field: &AlphaField) -> BTreeMap<Partition, QuadExt> {
    let one = QuadExt::one(field);
    let mut law = BTreeMap::new();
    law.insert(Partition::empty(), one);
    for _ in 0..n {
        let mut next: BTreeMap<Partition, QuadExt> = BTreeMap::new();
        for (lambda, p) in &law {
            for (cell, w) in growth_weights_exact(lambda, field) {
                let child = lambda.add_cell(cell).expect("addable");
                let v = &w * p;
                let e = next.entry(child).or_insert_with(|| QuadExt::zero(field));
                *e = &*e + &v;
            }
        }
        law = next;
    }
    law
}

/// Exact transition-measure weights of the addable corners.
pub fn growth_weights_exact(lambda: &Partition, field: &AlphaField) -> Vec<(Cell, QuadExt)> {
    let c = corners(lambda);
    let shift = &field.sqrt_alpha() - &field.sqrt_alpha_pow(-1);
    let inner: Vec<QuadExt> = c.addable.iter().map(|x| x.aniso_content(field)).collect();
    let outer: Vec<QuadExt> = c
        .removable
        .iter()
        .map(|x| &x.aniso_content(field) + &shift)
        .collect();
    c.addable
        .iter()
        .enumerate()
        .map(|(a, cell)| {
            let mut num = QuadExt::one(field);
            for o in &outer {
                num = &num * &(&inner[a] - o);
            }
            let mut den = QuadExt::one(field);
            for (b, y) in inner.iter().enumerate() {
                if a != b {
                    den = &den * &(&inner[a] - y);
                }
            }
            (*cell, &num / &den)
        })
        .collect()
}

/// Total-variation distance between empirical frequencies and a law.
pub fn total_variation(samples: &[Partition], law: &[(Partition, f64)]) -> f64 {
    let mut counts: BTreeMap<&Partition, usize> = BTreeMap::new();
    for s in samples {
        *counts.entry(s).or_default() += 1;
    }
    let m = samples.len() as f64;
    let mut tv = 0.0;
    for (l, p) in law {
        let f = counts.remove(l).unwrap_or(0) as f64 / m;
        tv += (f - p).abs();
    }
    tv += counts.values().map(|&c| c as f64 / m).sum::<f64>();
    tv / 2.0
}

/// A row-stochastic kernel on the partitions of `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovKernel {
    pub n: u32,
    pub alpha: Q,
    pub states: Vec<Partition>,
    pub matrix: Vec<Vec<Q>>,
}

impl MarkovKernel {
    pub fn row_sums(&self) -> Vec<Q> {
        self.matrix.iter().map(|r| r.iter().sum()).collect()
    }

    /// `K f` for a function `f` on the states.
    pub fn apply(&self, f: &[Q]) -> Vec<Q> {
        self.matrix
            .iter()
            .map(|r| r.iter().zip(f).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `P K` for a law `P` on the states.
    pub fn push(&self, p: &[Q]) -> Vec<Q> {
        (0..self.states.len())
            .map(|j| {
                (0..self.states.len())
                    .map(|i| &p[i] * &self.matrix[i][j])
                    .sum()
            })
            .collect()
    }

    /// `P(x) K(x, y) = P(y) K(y, x)` for all pairs.
    pub fn is_reversible(&self, p: &[Q]) -> bool {
        let s = self.states.len();
        (0..s).all(|i| (0..s).all(|j| &p[i] * &self.matrix[i][j] == &p[j] * &self.matrix[j][i]))
    }
}

/// `phi(lambda / tau)` for `tau = lambda` minus one removable box.
fn phi(lambda: &Partition, tau: &Partition, alpha: &Q) -> Q {
    let Some(cell) = lambda.cells().find(|c| !tau.contains_cell(*c)) else {
        return Q::zero();
    };
    if !lambda.contains(tau) {
        return Q::zero();
    }
    let mut out = Q::one();
    for row in 1..cell.row {
        let b = Cell::new(row, cell.col);
        let hook = |p: &Partition| (q_int(p.arm(b) as i64), q_int(p.leg(b) as i64));
        let (al, ll) = hook(lambda);
        let (at, lt) = hook(tau);
        out *= (alpha * &al + &ll + Q::one()) * (alpha * &at + &lt + alpha);
        out /= (alpha * &al + &ll + alpha) * (alpha * &at + &lt + Q::one());
    }
    out
}

/// Fulman's kernel `M`: remove a box, then add one.
pub fn fulman_m(n: u32, alpha: &Q) -> MarkovKernel {
    assert!(n >= 1, "the kernel needs n >= 1");
    let states = enumerate(n);
    let smaller = if n == 1 {
        vec![Partition::empty()]
    } else {
        enumerate(n - 1)
    };
    let hooks: Vec<_> = states.iter().map(|l| hook_products(l, alpha)).collect();
    let weights: Vec<Q> = smaller
        .iter()
        .map(|t| {
            let h = hook_products(t, alpha);
            h.c / h.c_prime
        })
        .collect();
    let phis: Vec<Vec<Q>> = states
        .iter()
        .map(|l| smaller.iter().map(|t| phi(l, t, alpha)).collect())
        .collect();
    let nq = q_int(n as i64);
    let matrix = (0..states.len())
        .map(|i| {
            (0..states.len())
                .map(|j| {
                    let s: Q = (0..smaller.len())
                        .map(|t| &phis[i][t] * &phis[j][t] * &weights[t])
                        .sum();
                    s * &hooks[i].c_prime / (&nq * alpha * &hooks[j].c)
                })
                .collect()
        })
        .collect();
    MarkovKernel {
        n,
        alpha: alpha.clone(),
        states,
        matrix,
    }
}

/// Fulman's kernel `L`, from its expansion over Jack characters.
pub fn fulman_l(n: u32, alpha: &Q) -> MarkovKernel {
    assert!(n >= 2, "the kernel needs n >= 2");
    let t = jack_table(n, alpha);
    let states = t.partitions.clone();
    let hook = Partition::of(&[n - 1, 1]);
    let pre = num_traits::pow(alpha.clone(), n as usize) * q_big(factorial(n));
    let coef: Vec<Q> = states
        .iter()
        .map(|mu| {
            let z = q_big(mu.z());
            &z * &z * num_traits::pow(alpha.clone(), 2 * mu.length() as usize) * t.theta(mu, &hook)
        })
        .collect();
    let matrix = states
        .iter()
        .map(|l| {
            states
                .iter()
                .enumerate()
                .map(|(j, r)| {
                    let s: Q = states
                        .iter()
                        .zip(&coef)
                        .map(|(mu, c)| c * t.theta(mu, l) * t.theta(mu, r))
                        .sum();
                    s / (&pre * &t.norms[j])
                })
                .collect()
        })
        .collect();
    MarkovKernel {
        n,
        alpha: alpha.clone(),
        states,
        matrix,
    }
}

/// `E[Ch_mu]` under Jack measure on partitions of `n`, by enumeration.
#[allow(non_snake_case)]
pub fn expectation_Ch(mu: &Partition, n: u32, field: &AlphaField) -> QuadExt {
    let mut acc = QuadExt::zero(field);
    for lambda in enumerate(n) {
        let p = pmf(&lambda, field.alpha());
        acc = &acc + &evaluate_Ch(mu, &lambda, field).scale(&p);
    }
    acc
}

/// `(n)_k` when `mu = 1^k`, otherwise zero.
pub fn expected_ch_value(mu: &Partition, n: u32) -> Q {
    if mu.m(1) != mu.length() {
        return Q::zero();
    }
    (0..mu.size()).fold(Q::one(), |acc, i| acc * q_int(n as i64 - i as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q_frac;

    #[test]
    fn pmf_at_two() {
        let a = q_int(2);
        assert_eq!(pmf(&Partition::of(&[2]), &a), q_frac(1, 3));
        assert_eq!(pmf(&Partition::of(&[1, 1]), &a), q_frac(2, 3));
        assert_eq!(pmf(&Partition::of(&[1]), &a), q_int(1));
    }

    #[test]
    fn growth_law_is_jack_measure() {
        for a in [q_int(1), q_int(2), q_frac(1, 3)] {
            let field = AlphaField::new(a.clone()).unwrap();
            let law = growth_marginal_exact(5, &field);
            for (l, p) in law {
                assert_eq!(p.as_rational(), Some(&pmf(&l, &a)), "{l} at {a}");
            }
        }
    }

    #[test]
    fn float_weights_match_exact() {
        let l = Partition::of(&[4, 2, 2, 1]);
        let field = AlphaField::new(q_int(3)).unwrap();
        let (mut rows, mut w) = (Vec::new(), Vec::new());
        growth_weights(l.parts(), 3f64.sqrt(), &mut rows, &mut w);
        let exact = growth_weights_exact(&l, &field);
        assert_eq!(rows.len(), exact.len());
        for ((r, x), (cell, y)) in rows.iter().zip(&w).zip(&exact) {
            assert_eq!(*r as u32 + 1, cell.row);
            assert!((x - y.to_f64()).abs() < 1e-12);
        }
    }

    #[test]
    fn replicas_are_reproducible() {
        let a = sample_many(&GrowthSampler, 50, 2.0, 8, 42);
        let b = sample_many(&GrowthSampler, 50, 2.0, 8, 42);
        assert_eq!(a, b);
        assert_eq!(sample_growth(50, 2.0, &mut replica_rng(42, 3)), a[3]);
    }

    #[test]
    fn kernels_small() {
        let a = q_int(2);
        for n in 2..=4 {
            let m = fulman_m(n, &a);
            let l = fulman_l(n, &a);
            assert!(m.row_sums().iter().all(One::is_one));
            assert!(l.row_sums().iter().all(One::is_one));
        }
    }
}
