//! Brute-force ground truth: Jack polynomials by Gram-Schmidt in the
//! power-sum basis, and enumerators of permutation factorizations and of
//! perfect matchings. These paths are deliberately naive.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{factorial, q_big, q_int, Q};
use crate::cache::Memo;
use crate::partitions::{enumerate, Partition};

/// Jack polynomials `J_lambda` for all `lambda ⊢ n` at a rational `alpha`.
#[derive(Clone, Debug)]
pub struct JackTable {
    pub n: u32,
    pub alpha: Q,
    /// All partitions of `n`, reverse-lexicographic; indexes both rows and columns.
    pub partitions: Vec<Partition>,
    /// `coords[l][r]` is the coefficient of `p_rho` (`rho = partitions[r]`) in `J_lambda`.
    pub coords: Vec<Vec<Q>>,
    /// `m_coords[l][m]` is the coefficient of `m_mu` in `J_lambda`.
    pub m_coords: Vec<Vec<Q>>,
    /// `<J_lambda, J_lambda>` computed from the coordinates.
    pub norms: Vec<Q>,
}

impl JackTable {
    pub fn index(&self, lambda: &Partition) -> Option<usize> {
        self.partitions.iter().position(|p| p == lambda)
    }

    /// `theta_mu(lambda)`: the coefficient of `p_mu` in `J_lambda`.
    pub fn theta(&self, mu: &Partition, lambda: &Partition) -> Q {
        let l = self.index(lambda).expect("lambda has size n");
        let m = self.index(mu).expect("mu has size n");
        self.coords[l][m].clone()
    }

    pub fn norm(&self, lambda: &Partition) -> &Q {
        &self.norms[self.index(lambda).expect("lambda has size n")]
    }
}

/// Number of ways to distribute the parts of `rho` into rows with sums `lambda`:
/// the coefficient of `m_lambda` in `p_rho`.
fn p_to_m_entry(rho: &Partition, lambda: &Partition) -> BigInt {
    fn rec(parts: &[u32], rows: &mut Vec<u32>) -> BigInt {
        match parts.split_first() {
            None => {
                if rows.iter().all(|&r| r == 0) {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }
            Some((&p, rest)) => {
                let mut total = BigInt::zero();
                for i in 0..rows.len() {
                    if rows[i] >= p {
                        rows[i] -= p;
                        total += rec(rest, rows);
                        rows[i] += p;
                    }
                }
                total
            }
        }
    }
    rec(rho.parts(), &mut lambda.parts().to_vec())
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
fn invert(mut a: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("invertible matrix");
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col].recip();
        for j in 0..n {
            a[col][j] *= &d;
            inv[col][j] *= &d;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let x = &f * &a[col][j];
                    a[r][j] -= x;
                    let y = &f * &inv[col][j];
                    inv[r][j] -= y;
                }
            }
        }
    }
    inv
}

struct Transitions {
    /// `p_to_m[r][l]`: coefficient of `m_lambda` in `p_rho`.
    p_to_m: Vec<Vec<Q>>,
    /// `m_to_p[l][r]`: coefficient of `p_rho` in `m_lambda`.
    m_to_p: Vec<Vec<Q>>,
}

static TRANSITIONS: Memo<u32, Transitions> = Memo::new();

fn transitions(n: u32) -> Arc<Transitions> {
    TRANSITIONS.get_or_insert(&n, || {
        let parts = enumerate(n);
        let p_to_m: Vec<Vec<Q>> = parts
            .iter()
            .map(|rho| parts.iter().map(|l| q_big(p_to_m_entry(rho, l))).collect())
            .collect();
        let m_to_p = invert(p_to_m.clone());
        Transitions { p_to_m, m_to_p }
    })
}

/// `<p_rho, p_rho> = z_rho alpha^{l(rho)}`.
fn p_norm(rho: &Partition, alpha: &Q) -> Q {
    q_big(rho.z()) * num_traits::pow(alpha.clone(), rho.length() as usize)
}

static JACK_TABLES: Memo<(u32, Q), JackTable> = Memo::new();

/// Builds the Jack polynomials of degree `n` by Gram-Schmidt on the monomial
/// basis, processed from `(1^n)` upward in lexicographic order.
pub fn jack_table(n: u32, alpha: &Q) -> Arc<JackTable> {
    JACK_TABLES.get_or_insert(&(n, alpha.clone()), || {
        let partitions = enumerate(n);
        let t = transitions(n);
        let size = partitions.len();
        let weights: Vec<Q> = partitions.iter().map(|r| p_norm(r, alpha)).collect();
        let inner = |x: &[Q], y: &[Q]| -> Q {
            x.iter()
                .zip(y)
                .zip(&weights)
                .map(|((a, b), w)| a * b * w)
                .fold(Q::zero(), |acc, v| acc + v)
        };
        let mut coords: Vec<Vec<Q>> = vec![Vec::new(); size];
        let mut done: Vec<usize> = Vec::new();
        for l in (0..size).rev() {
            let mut v = t.m_to_p[l].clone();
            for &k in &done {
                let u: &Vec<Q> = &coords[k];
                let f = inner(&v, u) / inner(u, u);
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= &f * y;
                }
            }
            // Normalize so that the coefficient of m_{1^n} equals n!.
            let ones = size - 1;
            let lead: Q = (0..size)
                .map(|r| &v[r] * &t.p_to_m[r][ones])
                .fold(Q::zero(), |acc, x| acc + x);
            let scale = q_big(factorial(n)) / lead;
            for x in v.iter_mut() {
                *x *= &scale;
            }
            coords[l] = v;
            done.push(l);
        }
        let m_coords: Vec<Vec<Q>> = coords
            .iter()
            .map(|c| {
                (0..size)
                    .map(|m| {
                        (0..size)
                            .map(|r| &c[r] * &t.p_to_m[r][m])
                            .fold(Q::zero(), |acc, x| acc + x)
                    })
                    .collect()
            })
            .collect();
        let norms = coords.iter().map(|c| inner(c, c)).collect();
        JackTable {
            n,
            alpha: alpha.clone(),
            partitions,
            coords,
            m_coords,
            norms,
        }
    })
}

/// `theta_mu(lambda)` from the Gram-Schmidt construction.
pub fn theta_oracle(mu: &Partition, lambda: &Partition, alpha: &Q) -> Q {
    assert_eq!(mu.size(), lambda.size(), "theta needs |mu| = |lambda|");
    if mu.size() == 0 {
        return Q::one();
    }
    jack_table(mu.size(), alpha).theta(mu, lambda)
}

/// Stanley's closed form for `theta_mu((n-1, 1))`.
pub fn theta_hook_closed_form(mu: &Partition, alpha: &Q) -> Q {
    let n = mu.size() as i64;
    let l = mu.length() as usize;
    let m1 = q_int(mu.m(1) as i64);
    let nq = q_int(n);
    num_traits::pow(alpha.clone(), n as usize - l) * q_big(factorial(n as u32)) / q_big(mu.z())
        * ((alpha * (&nq - Q::one()) + Q::one()) * m1 - &nq)
        / (alpha * &nq * (nq.clone() - Q::one()))
}

/// A permutation of `0..n` in one-line notation.
type Perm = Vec<usize>;

fn all_permutations(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Perm, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The cycle type of a permutation.
pub fn cycle_type(p: &[usize]) -> Partition {
    let mut seen = vec![false; p.len()];
    let mut lens = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        lens.push(len);
    }
    Partition::from_unsorted(lens)
}

/// A fixed permutation of cycle type `pi`, cycles on consecutive blocks.
fn canonical_permutation(pi: &Partition) -> Perm {
    let mut p = Vec::with_capacity(pi.size() as usize);
    let mut base = 0;
    for &len in pi.parts() {
        let len = len as usize;
        for j in 0..len {
            p.push(base + (j + 1) % len);
        }
        base += len;
    }
    p
}

/// `#{(s1, s2) : type(s1) = mu, type(s2) = nu, s1 s2 = s}` for a fixed `s` of type `pi`.
pub fn count_factorizations(mu: &Partition, nu: &Partition, pi: &Partition) -> u64 {
    let n = pi.size() as usize;
    assert!(
        mu.size() as usize == n && nu.size() as usize == n,
        "sizes must agree"
    );
    let sigma = canonical_permutation(pi);
    let mut count = 0;
    for s1 in all_permutations(n) {
        if cycle_type(&s1) != *mu {
            continue;
        }
        // s2 = s1^{-1} s, composing right to left: s2(x) = s1^{-1}(s(x)).
        let mut inv = vec![0; n];
        for (i, &x) in s1.iter().enumerate() {
            inv[x] = i;
        }
        let s2: Perm = (0..n).map(|x| inv[sigma[x]]).collect();
        if cycle_type(&s2) == *nu {
            count += 1;
        }
    }
    count
}

/// A perfect matching on `0..2n`, stored as the partner of every point.
pub type Matching = Vec<usize>;

/// All perfect matchings of `0..2n`.
pub fn all_matchings(n: usize) -> Vec<Matching> {
    fn rec(m: &mut Vec<Option<usize>>, out: &mut Vec<Matching>) {
        let Some(first) = m.iter().position(Option::is_none) else {
            out.push(m.iter().map(|x| x.expect("matched")).collect());
            return;
        };
        for j in first + 1..m.len() {
            if m[j].is_none() {
                m[first] = Some(j);
                m[j] = Some(first);
                rec(m, out);
                m[first] = None;
                m[j] = None;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![None; 2 * n], &mut out);
    out
}

/// `Lambda(F1, F2)`: half the lengths of the cycles of `F1 ∪ F2`.
pub fn matching_type(f1: &[usize], f2: &[usize]) -> Partition {
    let mut seen = vec![false; f1.len()];
    let mut halves = Vec::new();
    for s in 0..f1.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        loop {
            seen[i] = true;
            let j = f1[i];
            seen[j] = true;
            len += 1;
            i = f2[j];
            if i == s {
                break;
            }
        }
        halves.push(len);
    }
    Partition::from_unsorted(halves)
}

/// The reference pair `(F1, F2)` with `Lambda(F1, F2) = pi`.
pub fn reference_matchings(pi: &Partition) -> (Matching, Matching) {
    let n = pi.size() as usize;
    let mut f1 = vec![0; 2 * n];
    for i in 0..n {
        f1[2 * i] = 2 * i + 1;
        f1[2 * i + 1] = 2 * i;
    }
    let mut f2 = vec![0; 2 * n];
    let mut b = 0;
    for &p in pi.parts() {
        let p = p as usize;
        // Pair (b+1, b+2), ..., (b+2p-1, b) inside the block.
        for j in 0..p {
            let x = b + 2 * j + 1;
            let y = if j + 1 == p { b } else { b + 2 * j + 2 };
            f2[x] = y;
            f2[y] = x;
        }
        b += 2 * p;
    }
    (f1, f2)
}

/// `#{F3 : Lambda(F1, F3) = mu, Lambda(F2, F3) = nu}` for the given pair.
pub fn count_matchings_with(f1: &[usize], f2: &[usize], mu: &Partition, nu: &Partition) -> u64 {
    all_matchings(f1.len() / 2)
        .iter()
        .filter(|f3| matching_type(f1, f3) == *mu && matching_type(f2, f3) == *nu)
        .count() as u64
}

/// `#{F3 : Lambda(F1, F3) = mu, Lambda(F2, F3) = nu}` for a fixed pair with `Lambda(F1, F2) = pi`.
pub fn count_matchings(mu: &Partition, nu: &Partition, pi: &Partition) -> u64 {
    let (f1, f2) = reference_matchings(pi);
    count_matchings_with(&f1, &f2, mu, nu)
}

/// Relabels the points of a matching by a permutation.
pub fn relabel(f: &[usize], sigma: &[usize]) -> Matching {
    let mut out = vec![0; f.len()];
    for (i, &j) in f.iter().enumerate() {
        out[sigma[i]] = sigma[j];
    }
    out
}

/// Free cumulants of a finite measure by the non-crossing partition formula,
/// used only to cross-check the series inversion: returns `R_0..R_kmax`.
pub fn free_cumulants_noncrossing(moments: &[Q], kmax: usize) -> Vec<Q> {
    // Moment-cumulant recursion over the block containing the first point:
    // m_n = sum_{s=1}^{n} R_s sum_{i_1 + ... + i_s = n - s} m_{i_1} ... m_{i_s}.
    let mut r = vec![Q::zero(); kmax + 1];
    for n in 1..=kmax {
        let mut rest = Q::zero();
        for s in 1..n {
            rest += &r[s] * compositions_product(moments, n - s, s);
        }
        r[n] = &moments[n] - rest;
    }
    r
}

/// `sum over (i_1..i_s) >= 0 with sum n of prod m_{i_j}`.
fn compositions_product(m: &[Q], n: usize, s: usize) -> Q {
    let mut dp = vec![Q::zero(); n + 1];
    dp[0] = Q::one();
    for _ in 0..s {
        let mut next = vec![Q::zero(); n + 1];
        for (a, x) in dp.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for b in 0..=n - a {
                next[a + b] += x * &m[b];
            }
        }
        dp = next;
    }
    dp[n].clone()
}
