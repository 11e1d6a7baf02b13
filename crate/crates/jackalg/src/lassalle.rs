//! Jack characters as polynomials in moments (`L_mu`), shifted moments
//! (`L'_mu`) and free cumulants (Kerov polynomials `K_mu`), computed by a
//! triangular recursion over the linear relations satisfied by characters
//! under adding one box.
//!
//! Writing `L_mu = sum a_rho M_rho`, each `tau` gives two linear relations:
//! `(A_tau)` from summing the one-box increments of `Ch_mu` against the
//! transition measure, and `(B_tau)` from the same sum with an extra factor
//! of the corner position `z_i`.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{
    binomial, deg1, deg2, deg3, free_cumulants_to_moments_symbolic, q_big, q_int, AlphaField,
    Basis, BasisPolynomial, GammaPoly, QuadExt, Q,
};
use crate::cache::Memo;
use crate::partitions::{enumerate_min_part, Partition};
use crate::profiles::moments;

/// Errors raised by the character solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LassalleError {
    #[error("index partition {0} has a part equal to 1")]
    PartOne(Partition),
    #[error("inconsistent system for {mu}: {detail}")]
    Inconsistent { mu: Partition, detail: String },
    #[error("|mu| = {mu_size} differs from |lambda| = {lambda_size}")]
    SizeMismatch { mu_size: u32, lambda_size: u32 },
    #[error("value {0} is not rational after normalization")]
    NotRational(String),
}

/// Coefficients `b^rho_{g,pi}` of `M_rho(lambda^(i)) - M_rho(lambda) = sum b z_i^g M_pi(lambda)`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BTable {
    pub entries: HashMap<(u32, Partition), GammaPoly>,
}

impl BTable {
    pub fn get(&self, g: u32, pi: &Partition) -> Option<&GammaPoly> {
        self.entries.get(&(g, pi.clone()))
    }

    fn add(&mut self, key: (u32, Partition), c: GammaPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.entries.entry(key.clone()).or_default();
        *e += &c;
        if e.is_zero() {
            self.entries.remove(&key);
        }
    }

    fn product(&self, other: &BTable) -> BTable {
        let mut out = BTable::default();
        for ((g1, p1), c1) in &self.entries {
            for ((g2, p2), c2) in &other.entries {
                out.add((g1 + g2, p1.union(p2)), c1 * c2);
            }
        }
        out
    }
}

/// A Jack character written in one of the three bases.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterPolynomial {
    pub mu: Partition,
    pub body: BasisPolynomial,
}

fn single_part_table(k: u32) -> BTable {
    let k = k as i64;
    let minus_gamma = GammaPoly::from_ints(&[0, -1]);
    let mut out = BTable::default();
    for r in 1..=k / 2 {
        for s in 0..=(k - 2 * r) {
            for t in 0..=(k - 2 * r - s) {
                if t == 1 {
                    continue;
                }
                let g = (k - 2 * r - s - t) as u32;
                let c = q_big(binomial(k - t - 1, 2 * r + s - 1) * binomial(r + s - 1, s));
                if c.is_zero() {
                    continue;
                }
                let pi = if t == 0 {
                    Partition::empty()
                } else {
                    Partition::of(&[t as u32])
                };
                out.add((g, pi), minus_gamma.pow(s as u32).scale(&c));
            }
        }
    }
    out
}

static B_TABLES: Memo<Partition, BTable> = Memo::new();

/// The table `b^rho_{g,pi}` for `rho` with all parts at least 2.
pub fn b_table(rho: &Partition) -> Result<Arc<BTable>, LassalleError> {
    if rho.m(1) > 0 {
        return Err(LassalleError::PartOne(rho.clone()));
    }
    Ok(B_TABLES.get_or_insert(rho, || {
        let mut acc = BTable::default();
        acc.add((0, Partition::empty()), GammaPoly::one());
        for &k in rho.parts() {
            let mut factor = single_part_table(k);
            factor.add((0, Partition::of(&[k])), GammaPoly::one());
            acc = acc.product(&factor);
        }
        acc.add((0, rho.clone()), GammaPoly::from_int(-1));
        acc
    }))
}

/// Coefficient of `a_rho` in equation `(A_tau)`.
fn coeff_a(table: &BTable, tau: &Partition) -> GammaPoly {
    let mut c = table.get(0, tau).cloned().unwrap_or_default();
    for g in tau.distinct_parts() {
        if let Some(x) = table.get(g, &tau.without_part(g).expect("part of tau")) {
            c += x;
        }
    }
    c
}

/// Coefficient of `a_rho` in equation `(B_tau)`.
fn coeff_b(table: &BTable, tau: &Partition) -> GammaPoly {
    let mut c = GammaPoly::zero();
    for p in tau.distinct_parts() {
        if let Some(x) = table.get(p - 1, &tau.without_part(p).expect("part of tau")) {
            c += x;
        }
    }
    c
}

/// Partitions with all parts at least 2 and size at most `bound`, ordered by
/// decreasing `(|rho|, -l(rho), -min(rho))`, so every equation only involves
/// unknowns that are already solved.
fn unknowns(bound: u32) -> Vec<Partition> {
    let mut out: Vec<Partition> = (2..=bound).flat_map(|n| enumerate_min_part(n, 2)).collect();
    let key = |r: &Partition| {
        (
            r.size(),
            -(r.length() as i64),
            -(r.min_part().unwrap_or(0) as i64),
        )
    };
    out.sort_by(|a, b| key(b).cmp(&key(a)).then_with(|| b.cmp(a)));
    out
}

/// Right-hand side of `(A_tau)`: `m_1(mu) a^{mu \ 1}_tau`.
fn rhs_a(mu: &Partition, tau: &Partition) -> GammaPoly {
    let m1 = mu.m(1);
    if m1 == 0 {
        return GammaPoly::zero();
    }
    let sub = compute_L(&mu.without_part(1).expect("has a part 1"));
    sub.body.coeff(tau).scale(&q_int(m1 as i64))
}

/// Right-hand side of `(B_tau)`: `sum_{r >= 2} r m_r(mu) a^{mu_(down r)}_tau`.
fn rhs_b(mu: &Partition, tau: &Partition) -> GammaPoly {
    let mut acc = GammaPoly::zero();
    for r in mu.distinct_parts() {
        if r < 2 {
            continue;
        }
        let sub = compute_L(&mu.lowered(r).expect("has part r"));
        acc += &sub.body.coeff(tau).scale(&q_int((r * mu.m(r)) as i64));
    }
    acc
}

/// Runs the triangular solver for `L_mu` with unknowns of size at most `bound`,
/// then checks every unused equation of the overdetermined system.
pub fn solve_l(mu: &Partition, bound: u32) -> Result<BasisPolynomial, LassalleError> {
    if mu.is_empty() {
        return Ok(BasisPolynomial::one(Basis::M));
    }
    let (solution, tables) = triangular_solve(mu, bound)?;
    check_residuals(mu, bound, &solution, &tables)?;
    Ok(solution)
}

type Tables = Vec<(Partition, Arc<BTable>)>;

fn triangular_solve(
    mu: &Partition,
    bound: u32,
) -> Result<(BasisPolynomial, Tables), LassalleError> {
    let inconsistent = |detail: String| LassalleError::Inconsistent {
        mu: mu.clone(),
        detail,
    };
    let mut solution = BasisPolynomial::zero(Basis::M);
    let order = unknowns(bound);
    let mut tables: Vec<(Partition, Arc<BTable>)> = Vec::new();
    for rho in &order {
        let q = rho.min_part().expect("nonempty");
        let (tau, pivot_expected, use_a) = if q == 2 {
            (rho.without_part(2).expect("part 2"), rho.m(2) as i64, true)
        } else {
            (
                rho.lowered(q).expect("part q"),
                ((q - 1) * rho.m(q)) as i64,
                false,
            )
        };
        let coeff = |t: &BTable| {
            if use_a {
                coeff_a(t, &tau)
            } else {
                coeff_b(t, &tau)
            }
        };
        let mut rhs = if use_a {
            rhs_a(mu, &tau)
        } else {
            rhs_b(mu, &tau)
        };
        for (known, table) in &tables {
            let a = solution.coeff(known);
            if a.is_zero() {
                continue;
            }
            rhs -= &(&coeff(table) * &a);
        }
        let own = b_table(rho)?;
        let pivot = coeff(&own);
        if pivot != GammaPoly::from_int(pivot_expected) {
            return Err(inconsistent(format!(
                "pivot for {rho} is {pivot}, expected {pivot_expected}"
            )));
        }
        let value = rhs.scale(&q_int(pivot_expected).recip());
        solution.add_term(rho.clone(), &value);
        tables.push((rho.clone(), own));
    }
    Ok((solution, tables))
}

fn check_residuals(
    mu: &Partition,
    bound: u32,
    solution: &BasisPolynomial,
    tables: &Tables,
) -> Result<(), LassalleError> {
    let inconsistent = |detail: String| LassalleError::Inconsistent {
        mu: mu.clone(),
        detail,
    };
    // Residual checks over all equations that can involve the unknowns.
    let check = |tau: &Partition, use_a: bool| -> Result<(), LassalleError> {
        let mut lhs = GammaPoly::zero();
        for (rho, table) in tables {
            let a = solution.coeff(rho);
            if a.is_zero() {
                continue;
            }
            let c = if use_a {
                coeff_a(table, tau)
            } else {
                coeff_b(table, tau)
            };
            lhs += &(&c * &a);
        }
        let rhs = if use_a {
            rhs_a(mu, tau)
        } else {
            rhs_b(mu, tau)
        };
        if lhs != rhs {
            let name = if use_a { "A" } else { "B" };
            return Err(inconsistent(format!(
                "equation {name}_{tau} has residual {}",
                &lhs - &rhs
            )));
        }
        Ok(())
    };
    for size in 0..=bound.saturating_sub(1) {
        for tau in enumerate_min_part(size, 2) {
            if size + 2 <= bound {
                check(&tau, true)?;
            }
            check(&tau, false)?;
        }
    }
    Ok(())
}

static L_CACHE: Memo<Partition, CharacterPolynomial> = Memo::new();
static K_CACHE: Memo<Partition, CharacterPolynomial> = Memo::new();
static LPRIME_CACHE: Memo<Partition, CharacterPolynomial> = Memo::new();

/// `L_mu`: the character `Ch_mu` as a polynomial in the moments `M_k`.
///
/// Panics if the internal consistency checks fail, which indicates a bug.
#[allow(non_snake_case)]
pub fn compute_L(mu: &Partition) -> Arc<CharacterPolynomial> {
    L_CACHE
        .get_or_try_insert(mu, || {
            let body = if mu.m(1) > 0 {
                // Ch_{nu 1} = (M_2 - |nu|) Ch_nu
                let nu = mu.without_part(1).expect("part 1");
                let base = compute_L(&nu);
                let factor = &BasisPolynomial::generator(Basis::M, 2)
                    - &BasisPolynomial::constant(Basis::M, GammaPoly::from_int(nu.size() as i64));
                &base.body * &factor
            } else {
                solve_l(mu, mu.n1() as u32)?
            };
            Ok::<_, LassalleError>(CharacterPolynomial {
                mu: mu.clone(),
                body,
            })
        })
        .unwrap_or_else(|e| panic!("{e}"))
}

/// `K_mu`: the Kerov polynomial, `Ch_mu` in the free cumulants `R_k`.
#[allow(non_snake_case)]
pub fn compute_K(mu: &Partition) -> Arc<CharacterPolynomial> {
    K_CACHE.get_or_insert(mu, || {
        let l = compute_L(mu);
        let table = free_cumulants_to_moments_symbolic(mu.n1().max(2) as usize);
        CharacterPolynomial {
            mu: mu.clone(),
            body: l.body.substitute(Basis::R, |k| table[k as usize].clone()),
        }
    })
}

/// `M_k` written in the shifted moments: `M_k = M'_k + (-gamma)^{k-2} M'_2`.
pub fn moment_in_shifted(k: u32) -> BasisPolynomial {
    let gen = |j| BasisPolynomial::generator(Basis::MPrime, j);
    if k <= 2 {
        return gen(k);
    }
    let c = GammaPoly::from_ints(&[0, -1]).pow(k - 2);
    &gen(k) + &gen(2).scale(&c)
}

/// `L'_mu`: `Ch_mu` in the shifted moments `M'_k`.
#[allow(non_snake_case)]
pub fn compute_Lprime(mu: &Partition) -> Arc<CharacterPolynomial> {
    LPRIME_CACHE.get_or_insert(mu, || {
        let l = compute_L(mu);
        CharacterPolynomial {
            mu: mu.clone(),
            body: l.body.substitute(Basis::MPrime, moment_in_shifted),
        }
    })
}

/// The character polynomial in the requested basis.
pub fn character_polynomial(mu: &Partition, basis: Basis) -> Arc<CharacterPolynomial> {
    match basis {
        Basis::M => compute_L(mu),
        Basis::MPrime => compute_Lprime(mu),
        Basis::R => compute_K(mu),
    }
}

/// `Ch_mu(lambda)` at a rational `alpha`, exactly.
#[allow(non_snake_case)]
pub fn evaluate_Ch(mu: &Partition, lambda: &Partition, field: &AlphaField) -> QuadExt {
    let l = compute_L(mu);
    let kmax = l
        .body
        .terms()
        .keys()
        .flat_map(|r| r.parts().first().copied())
        .max()
        .unwrap_or(2);
    let m = moments(lambda, field, kmax as usize);
    let one = QuadExt::one(field);
    l.body
        .evaluate(&one, |k| m[k as usize].clone(), |c| c.eval(field))
}

/// `theta_mu(lambda)` for `|mu| = |lambda|`, recovered from `Ch_mu`.
pub fn theta(
    mu: &Partition,
    lambda: &Partition,
    field: &AlphaField,
) -> Result<QuadExt, LassalleError> {
    if mu.size() != lambda.size() {
        return Err(LassalleError::SizeMismatch {
            mu_size: mu.size(),
            lambda_size: lambda.size(),
        });
    }
    let ch = evaluate_Ch(mu, lambda, field);
    let v = (&ch * &field.sqrt_alpha_pow(mu.n2())).scale(&q_big(mu.z()).recip());
    if v.as_rational().is_none() {
        return Err(LassalleError::NotRational(v.render()));
    }
    Ok(v)
}

/// A coefficient that violates one of the degree bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundViolation {
    pub mu: Partition,
    pub basis: Basis,
    pub rho: Partition,
    pub coeff: GammaPoly,
    pub rule: &'static str,
}

/// Degree statistics gathered while checking bounds.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BoundReport {
    pub characters: usize,
    pub coefficients: usize,
    pub violations: Vec<BoundViolation>,
}

/// Checks the three degree bounds and the parity rule for `L_mu`, `K_mu` and `L'_mu`.
pub fn check_degree_bounds(mu: &Partition, report: &mut BoundReport) {
    let n1 = mu.n1();
    let n2 = mu.n2();
    let n3 = mu.n3();
    report.characters += 1;
    for basis in [Basis::M, Basis::R] {
        let p = character_polynomial(mu, basis);
        for (rho, c) in p.body.terms() {
            report.coefficients += 1;
            let first = n1 - deg1(rho);
            let mut fail = |rule| {
                report.violations.push(BoundViolation {
                    mu: mu.clone(),
                    basis,
                    rho: rho.clone(),
                    coeff: c.clone(),
                    rule,
                })
            };
            if !c.degree().at_most(first) {
                fail("deg <= |mu| + l(mu) - |rho|");
            }
            if !c.has_parity(first) {
                fail("parity of |mu| + l(mu) - |rho|");
            }
            if !c.degree().at_most(n2 - deg2(rho)) {
                fail("deg <= n2(mu) - deg2(rho)");
            }
        }
    }
    let p = compute_Lprime(mu);
    for (rho, c) in p.body.terms() {
        report.coefficients += 1;
        if !c.degree().at_most(n3 - deg3(rho)) {
            report.violations.push(BoundViolation {
                mu: mu.clone(),
                basis: Basis::MPrime,
                rho: rho.clone(),
                coeff: c.clone(),
                rule: "deg <= n3(mu) - deg3(rho)",
            });
        }
    }
}

/// `prod_i R_{mu_i + 1}`, the top `deg1` component of `K_mu`.
pub fn dominant_term(mu: &Partition) -> BasisPolynomial {
    BasisPolynomial::monomial(Basis::R, mu.shifted(1), GammaPoly::one())
}

/// The binomial normalization relating `Ch_mu` and `theta`: `binom(n - |mu| + m_1, m_1)`.
pub fn ch_normalization(mu: &Partition, n: u32) -> Q {
    if n < mu.size() {
        return Q::zero();
    }
    let m1 = mu.m(1) as i64;
    q_big(binomial(n as i64 - mu.size() as i64 + m1, m1))
}

/// `1` if the value is one; convenience for tests of `theta_{1^n} = 1`.
pub fn is_one(x: &QuadExt) -> bool {
    x.as_rational().is_some_and(One::is_one)
}
