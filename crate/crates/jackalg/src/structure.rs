//! Structure constants of Jack characters: `g_{mu,nu;pi}` in the `Ch` basis
//! over all diagram sizes, `c_{mu,nu;pi}` in the `theta` basis at fixed size,
//! and checks of the degree theorem and of several closed forms.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{
    binomial, factorial, q_big, q_frac, q_int, AlphaField, Basis, BasisPolynomial, GammaPoly,
    QuadExt, Q,
};
use crate::cache::Memo;
use crate::lassalle::{compute_K, evaluate_Ch};
use crate::oracle::theta_oracle;
use crate::partitions::{content_alphabet, enumerate, Partition};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructureError {
    #[error("nonzero residual expanding Ch_{mu} Ch_{nu}: {detail}")]
    Residual {
        mu: Partition,
        nu: Partition,
        detail: String,
    },
    #[error("partitions have different sizes: {0}")]
    SizeMismatch(String),
    #[error("bound violated for ({mu}, {nu}; {pi}): {rule}, coefficient {coeff}")]
    Bound {
        mu: Partition,
        nu: Partition,
        pi: Partition,
        coeff: String,
        rule: String,
    },
    #[error("{check} failed: {detail}")]
    Mismatch { check: &'static str, detail: String },
    #[error("system is underdetermined: {0}")]
    Underdetermined(String),
    #[error("argument out of range: {0}")]
    Range(String),
}

/// `g_{mu,nu;pi}` for fixed `mu`, `nu`; only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct GTable {
    pub mu: Partition,
    pub nu: Partition,
    pub entries: BTreeMap<Partition, GammaPoly>,
}

impl GTable {
    pub fn get(&self, pi: &Partition) -> GammaPoly {
        self.entries
            .get(pi)
            .cloned()
            .unwrap_or_else(GammaPoly::zero)
    }

    /// Rebuilds `Ch_mu Ch_nu` in the `R` basis from the table.
    pub fn expand(&self) -> BasisPolynomial {
        let mut out = BasisPolynomial::zero(Basis::R);
        for (pi, g) in &self.entries {
            out.add_scaled(&compute_K(pi).body, g);
        }
        out
    }
}

static G_TABLES: Memo<(Partition, Partition), GTable> = Memo::new();

/// Expands `Ch_mu Ch_nu` in the `Ch` basis.
///
/// Works in free cumulants: the top `deg_1` part of `K_pi` is the single
/// monomial `R_{pi+1}`, so the product is peeled one `deg_1` layer at a time.
pub fn g_table(mu: &Partition, nu: &Partition) -> Result<Arc<GTable>, StructureError> {
    G_TABLES.get_or_try_insert(&(mu.clone(), nu.clone()), || {
        let mut residual = &compute_K(mu).body * &compute_K(nu).body;
        let mut entries = BTreeMap::new();
        let top = residual.max_deg1().unwrap_or(0);
        for d in (0..=top).rev() {
            let layer = residual.deg1_component(d);
            for (rho, c) in layer.terms() {
                if rho.parts().iter().any(|&p| p < 2) {
                    return Err(StructureError::Residual {
                        mu: mu.clone(),
                        nu: nu.clone(),
                        detail: format!("monomial R_{rho} has an index below 2"),
                    });
                }
                let pi = rho.shifted(-1);
                residual.add_scaled(&compute_K(&pi).body, &-c);
                entries.insert(pi, c.clone());
            }
            if !residual.deg1_component(d).is_zero() {
                return Err(StructureError::Residual {
                    mu: mu.clone(),
                    nu: nu.clone(),
                    detail: format!("layer {d} did not cancel"),
                });
            }
        }
        if !residual.is_zero() {
            return Err(StructureError::Residual {
                mu: mu.clone(),
                nu: nu.clone(),
                detail: residual.render(),
            });
        }
        Ok(GTable {
            mu: mu.clone(),
            nu: nu.clone(),
            entries,
        })
    })
}

/// All partitions `mu` with `|mu| + l(mu) <= bound`, the empty one included.
pub fn partitions_with_n1_at_most(bound: u32) -> Vec<Partition> {
    let mut out = vec![Partition::empty()];
    for n in 1..=bound {
        out.extend(enumerate(n).into_iter().filter(|p| p.n1() <= bound as i64));
    }
    out
}

/// Extremes attained while checking the structure-constant theorem.
#[derive(Clone, Debug, Default, PartialEq, serde::Serialize)]
pub struct StructReport {
    pub pairs: usize,
    pub entries: usize,
    /// Largest `gamma`-degree seen.
    pub max_degree: u32,
    /// Number of entries meeting each of the three degree bounds with equality.
    pub tight: [usize; 3],
}

/// Checks the degree bounds and the parity claim for one table.
pub fn check_g_table(t: &GTable, report: &mut StructReport) -> Result<(), StructureError> {
    let (mu, nu) = (&t.mu, &t.nu);
    let sums = [mu.n1() + nu.n1(), mu.n2() + nu.n2(), mu.n3() + nu.n3()];
    report.pairs += 1;
    for (pi, g) in &t.entries {
        report.entries += 1;
        let fail = |rule: String| StructureError::Bound {
            mu: mu.clone(),
            nu: nu.clone(),
            pi: pi.clone(),
            coeff: g.render(),
            rule,
        };
        let bounds = [sums[0] - pi.n1(), sums[1] - pi.n2(), sums[2] - pi.n3()];
        if bounds[0] < 0 {
            return Err(fail("nonzero above n1(mu) + n1(nu)".into()));
        }
        for (i, &b) in bounds.iter().enumerate() {
            if !g.degree().at_most(b) {
                return Err(fail(format!("deg > {b} for n{}", i + 1)));
            }
            if g.degree().finite() == Some(b as u32) {
                report.tight[i] += 1;
            }
        }
        if !g.has_parity(bounds[0]) {
            return Err(fail("parity differs from n1 defect".into()));
        }
        if let Some(d) = g.degree().finite() {
            report.max_degree = report.max_degree.max(d);
        }
    }
    Ok(())
}

/// Verifies the structure-constant theorem for all `mu`, `nu` with
/// `n1(mu) + n1(nu) <= bound`.
pub fn verify_struct_const_theorem(bound: u32) -> Result<StructReport, StructureError> {
    if bound > 10 {
        return Err(StructureError::Range(format!("bound {bound} exceeds 10")));
    }
    let parts = partitions_with_n1_at_most(bound);
    let mut report = StructReport::default();
    for (i, mu) in parts.iter().enumerate() {
        for nu in &parts[i..] {
            if mu.n1() + nu.n1() > bound as i64 {
                continue;
            }
            check_g_table(&*g_table(mu, nu)?, &mut report)?;
        }
    }
    Ok(report)
}

/// The special values of `g`: unit coefficient of `mu ∪ nu` at the top,
/// vanishing of `g_{mu,nu;1^k}` for distinct reduced shapes, `g_{(k),(k);1^k} = k`,
/// and vanishing of `g_{(k),(l);rho}` at `|rho| + l(rho) = k + l + 1`.
pub fn verify_special_values(kmax: u32) -> Result<usize, StructureError> {
    let mismatch = |detail: String| StructureError::Mismatch {
        check: "special values of g",
        detail,
    };
    let mut checked = 0;
    // Top layer for all pairs with n1(mu) + n1(nu) <= 2 kmax + 2.
    let pool = partitions_with_n1_at_most(kmax + 1);
    for mu in &pool {
        for nu in &pool {
            let t = g_table(mu, nu)?;
            let s = mu.n1() + nu.n1();
            for (pi, g) in &t.entries {
                if pi.n1() >= s && *pi != mu.union(nu) {
                    return Err(mismatch(format!("g_{{{mu},{nu};{pi}}} = {g}")));
                }
            }
            if t.get(&mu.union(nu)) != GammaPoly::one() {
                return Err(mismatch(format!("g_{{{mu},{nu};{mu}∪{nu}}} != 1")));
            }
            if mu.without_ones() != nu.without_ones() {
                for (pi, g) in &t.entries {
                    let k = pi.size() as i64;
                    if *pi == Partition::ones(pi.size()) && 2 * k >= s - 2 && !g.is_zero() {
                        return Err(mismatch(format!("g_{{{mu},{nu};{pi}}} = {g}")));
                    }
                }
            }
            checked += 1;
        }
    }
    for k in 1..=kmax {
        for l in 1..=kmax {
            let t = g_table(&Partition::of(&[k]), &Partition::of(&[l]))?;
            if k == l && t.get(&Partition::ones(k)) != GammaPoly::from_int(k as i64) {
                return Err(mismatch(format!(
                    "g_{{({k}),({k});1^{k}}} = {}",
                    t.get(&Partition::ones(k))
                )));
            }
            for (pi, g) in &t.entries {
                if pi.n1() == (k + l + 1) as i64 {
                    return Err(mismatch(format!("g_{{({k}),({l});{pi}}} = {g}")));
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// `c_{mu,nu;pi}` as `alpha^{d/2}` times a polynomial in `n` and `gamma`,
/// for `mu = mu~ 1^{n-|mu~|}` and so on.
#[derive(Clone, Debug, PartialEq)]
pub struct CConstant {
    pub mu: Partition,
    pub nu: Partition,
    pub pi: Partition,
    /// `d(mu,nu;pi) = n2(mu) + n2(nu) - n2(pi)`.
    pub d: i64,
    /// Coefficients of `n^0, n^1, ...`.
    pub poly: Vec<GammaPoly>,
}

impl CConstant {
    /// The polynomial part at a given `n`.
    pub fn poly_at(&self, n: u32) -> GammaPoly {
        let x = q_int(n as i64);
        let mut acc = GammaPoly::zero();
        for c in self.poly.iter().rev() {
            acc = &acc.scale(&x) + c;
        }
        acc
    }

    /// The value at size `n` and parameter `alpha`.
    pub fn value(&self, n: u32, field: &AlphaField) -> QuadExt {
        &field.sqrt_alpha_pow(self.d) * &self.poly_at(n).eval(field)
    }

    /// Total degree in `(n, gamma)` and the `gamma`-parity of every coefficient.
    pub fn check_degree(&self) -> Result<(), StructureError> {
        for (j, c) in self.poly.iter().enumerate() {
            let ok_deg = c.degree().at_most(self.d - j as i64);
            if !ok_deg || !c.has_parity(self.d) {
                return Err(StructureError::Mismatch {
                    check: "degree of c",
                    detail: format!(
                        "({}, {}; {}) coefficient of n^{j}: {c}",
                        self.mu, self.nu, self.pi
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Multiplies a polynomial in `n` (rational coefficients) by `(n - a)`.
fn times_linear(p: &[Q], a: &Q) -> Vec<Q> {
    let mut out = vec![Q::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * a;
    }
    out
}

/// The symbolic `c_{mu 1^*, nu 1^*; pi 1^*}` from `g` of the reduced shapes.
pub fn c_symbolic(
    mu: &Partition,
    nu: &Partition,
    pi: &Partition,
) -> Result<CConstant, StructureError> {
    let (mu, nu, pi) = (mu.without_ones(), nu.without_ones(), pi.without_ones());
    let g = g_table(&mu, &nu)?;
    let p = pi.size() as i64;
    let mut poly: Vec<GammaPoly> = Vec::new();
    let mut falling = vec![Q::one()];
    let zpi = q_big(pi.z());
    let scale = zpi / q_big(mu.z() * nu.z());
    for i in 0.. {
        let tau = pi.with_ones(i);
        if tau.n1() > mu.n1() + nu.n1() {
            break;
        }
        let gi = g.get(&tau);
        if !gi.is_zero() {
            for (j, f) in falling.iter().enumerate() {
                if poly.len() <= j {
                    poly.resize(j + 1, GammaPoly::zero());
                }
                poly[j] += &gi.scale(&(f * &scale));
            }
        }
        falling = times_linear(&falling, &q_int(p + i as i64));
    }
    while poly.last().is_some_and(GammaPoly::is_zero) {
        poly.pop();
    }
    Ok(CConstant {
        d: mu.n2() + nu.n2() - pi.n2(),
        mu,
        nu,
        pi,
        poly,
    })
}

/// `c_{mu,nu;pi}` for partitions of a common size.
pub fn c_constant(
    mu: &Partition,
    nu: &Partition,
    pi: &Partition,
    field: &AlphaField,
) -> Result<QuadExt, StructureError> {
    let n = mu.size();
    if nu.size() != n || pi.size() != n {
        return Err(StructureError::SizeMismatch(format!("{mu}, {nu}, {pi}")));
    }
    Ok(c_symbolic(mu, nu, pi)?.value(n, field))
}

/// `c_{mu,nu;pi}` from Jack polynomials: `z_pi alpha^{l(pi)} sum theta_pi theta_mu theta_nu / j_lambda`.
pub fn c_triple_product(mu: &Partition, nu: &Partition, pi: &Partition, alpha: &Q) -> Q {
    let n = pi.size();
    let t = crate::oracle::jack_table(n, alpha);
    let mut acc = Q::zero();
    for (l, lambda) in t.partitions.iter().enumerate() {
        acc += t.theta(pi, lambda) * t.theta(mu, lambda) * t.theta(nu, lambda) / &t.norms[l];
    }
    acc * q_big(pi.z()) * num_traits::pow(alpha.clone(), pi.length() as usize)
}

/// Unsigned Stirling numbers of the first kind `[k, j]`, `j = 0..=k`, from
/// the rising factorial `x (x+1) ... (x+k-1)`.
pub fn stirling_first(k: u32) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for m in 0..k {
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (j, x) in c.iter().enumerate() {
            next[j + 1] += x;
            next[j] += x * BigInt::from(m);
        }
        c = next;
    }
    c
}

/// Checks that the top coefficient of `[R_{k+1-i}] K_(k)` is `[k, k-i]`.
pub fn verify_linear_terms_stirling(kmax: u32) -> Result<usize, StructureError> {
    let mut checked = 0;
    for k in 1..=kmax {
        let kp = compute_K(&Partition::of(&[k]));
        let s = stirling_first(k);
        for i in 0..k {
            let c = kp.body.coeff(&Partition::of(&[k + 1 - i]));
            let top = c.coeff(i as usize);
            if !c.degree().at_most(i as i64) || top != q_big(s[(k - i) as usize].clone()) {
                return Err(StructureError::Mismatch {
                    check: "Stirling linear terms",
                    detail: format!(
                        "[R_{}]K_({k}) = {c}, expected top {}",
                        k + 1 - i,
                        s[(k - i) as usize]
                    ),
                });
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// `R~_mu = prod_i ((i-1) R_i)^{m_i} / m_i!`.
fn r_tilde(mu: &Partition) -> BasisPolynomial {
    let mut c = Q::one();
    for p in mu.distinct_parts() {
        let m = mu.m(p);
        c *= num_traits::pow(q_int(p as i64 - 1), m as usize) / q_big(factorial(m));
    }
    BasisPolynomial::monomial(Basis::R, mu.clone(), GammaPoly::constant(c))
}

/// The three top `deg_1` layers of `K_(k)` predicted by the closed formula.
pub fn top_degree_prediction(k: u32) -> [BasisPolynomial; 3] {
    let top = BasisPolynomial::generator(Basis::R, k + 1);
    let mut second = BasisPolynomial::zero(Basis::R);
    for mu in enumerate(k).into_iter().filter(|m| m.m(1) == 0) {
        let c = q_frac(k as i64, 2) * q_big(factorial(mu.length() - 1));
        second.add_scaled(&r_tilde(&mu), &GammaPoly::monomial(c, 1));
    }
    let mut third = BasisPolynomial::zero(Basis::R);
    if k >= 3 {
        for mu in enumerate(k - 1).into_iter().filter(|m| m.m(1) == 0) {
            let parts: Vec<Q> = mu.parts().iter().map(|&p| q_int(p as i64)).collect();
            let h1: Q = parts.iter().cloned().sum();
            let h2: Q = parts.iter().map(|p| p * p).sum();
            let h11 = (&h1 * &h1 - &h2) / q_int(2);
            let konst = q_big(binomial(k as i64 + 1, 3)) / q_int(4);
            let quad =
                q_int(k as i64) * (q_int(3) * h2 + q_int(4) * h11 + q_int(2) * h1) / q_int(24);
            let c = GammaPoly::from_coeffs(vec![konst, Q::zero(), quad])
                .scale(&q_big(factorial(mu.length())));
            third.add_scaled(&r_tilde(&mu), &c);
        }
    }
    [top, second, third]
}

/// Compares the top three `deg_1` layers of `K_(k)` with the closed formula.
pub fn verify_top_degrees(kmax: u32) -> Result<usize, StructureError> {
    for k in 1..=kmax {
        let body = &compute_K(&Partition::of(&[k])).body;
        let predicted = top_degree_prediction(k);
        for (j, want) in predicted.iter().enumerate() {
            let d = k as i64 + 1 - j as i64;
            let got = body.deg1_component(d);
            if &got != want {
                return Err(StructureError::Mismatch {
                    check: "top degrees of K_(k)",
                    detail: format!("k = {k}, layer {d}: got {got}, expected {want}"),
                });
            }
        }
    }
    Ok(3 * kmax as usize)
}

/// `sum_lambda theta_mu(lambda) theta_{(2,1^{n-2})}(lambda)^r / j_lambda` with
/// `r = |mu| - l(mu)`, from the Jack oracle.
pub fn vassilieva_oracle(mu: &Partition, alpha: &Q) -> Q {
    let n = mu.size();
    let r = mu.n2() as usize;
    let t = crate::oracle::jack_table(n, alpha);
    let mut acc = Q::zero();
    for (l, lambda) in t.partitions.iter().enumerate() {
        let base = if r == 0 {
            Q::one()
        } else {
            num_traits::pow(t.theta(&Partition::hook(2, n), lambda), r)
        };
        acc += t.theta(mu, lambda) * base / &t.norms[l];
    }
    acc
}

/// The closed form `multinomial(r; mu_i - 1) prod mu_i^{mu_i - 2} / (alpha^{l(mu)} z_mu)`.
pub fn vassilieva_closed_form(mu: &Partition, alpha: &Q) -> Q {
    let r = mu.n2() as u32;
    let mut c = q_big(factorial(r));
    for &p in mu.parts() {
        c /= q_big(factorial(p - 1));
        c *= if p >= 2 {
            num_traits::pow(q_int(p as i64), p as usize - 2)
        } else {
            q_frac(1, p as i64)
        };
    }
    c / (q_big(mu.z()) * num_traits::pow(alpha.clone(), mu.length() as usize))
}

/// Checks the closed form against the oracle for all `mu` with `|mu| <= nmax`.
pub fn verify_vassilieva(nmax: u32, alphas: &[Q]) -> Result<usize, StructureError> {
    let mut checked = 0;
    for n in 1..=nmax {
        for mu in enumerate(n) {
            for a in alphas {
                let (x, y) = (vassilieva_oracle(&mu, a), vassilieva_closed_form(&mu, a));
                if x != y {
                    return Err(StructureError::Mismatch {
                        check: "minimal factorization closed form",
                        detail: format!("mu = {mu}, alpha = {a}: oracle {x}, formula {y}"),
                    });
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// A polynomial in the elementary symmetric functions `e_1, e_2, ...`,
/// keyed by the multiset of indices.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ElementaryPoly {
    pub terms: BTreeMap<Partition, Q>,
}

impl ElementaryPoly {
    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Partition::empty(), c);
        }
        ElementaryPoly { terms }
    }

    /// `e_k`.
    pub fn e(k: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Partition::of(&[k]), Q::one());
        ElementaryPoly { terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let e = out.terms.entry(k.clone()).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(k);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ElementaryPoly::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut t = BTreeMap::new();
                t.insert(a.union(b), x * y);
                out = out.add(&ElementaryPoly { terms: t });
            }
        }
        out
    }

    /// Degree in the variables, `e_k` having degree `k`.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Partition::size).max().unwrap_or(0)
    }

    /// Value on a finite alphabet.
    pub fn eval(&self, xs: &[Q]) -> Q {
        let d = self.degree() as usize;
        let mut e = vec![Q::zero(); d + 1];
        e[0] = Q::one();
        for x in xs {
            for k in (1..=d).rev() {
                let add = &e[k - 1] * x;
                e[k] += add;
            }
        }
        self.terms
            .iter()
            .map(|(idx, c)| {
                idx.parts()
                    .iter()
                    .fold(c.clone(), |acc, &k| acc * &e[k as usize])
            })
            .sum()
    }
}

/// Solves an overdetermined exact linear system, checking consistency and
/// full column rank.
fn solve_exact(
    mut rows: Vec<Vec<Q>>,
    mut rhs: Vec<Q>,
    what: &str,
) -> Result<Vec<Q>, StructureError> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut pivots = Vec::with_capacity(cols);
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            return Err(StructureError::Underdetermined(format!(
                "{what}: column {c}"
            )));
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][c].recip();
        for j in c..cols {
            rows[r][j] *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..cols {
                    let v = &f * &rows[r][j];
                    rows[i][j] -= v;
                }
                let v = &f * &rhs[r];
                rhs[i] -= v;
            }
        }
        pivots.push(r);
        r += 1;
    }
    if rhs[r..].iter().any(|x| !x.is_zero()) {
        return Err(StructureError::Mismatch {
            check: "content expansion",
            detail: format!("{what}: inconsistent system"),
        });
    }
    Ok(pivots.into_iter().map(|i| rhs[i].clone()).collect())
}

/// Lagrange interpolation through `(x_j, y_j)`.
fn interpolate(xs: &[Q], ys: &[Q]) -> GammaPoly {
    let mut out = GammaPoly::zero();
    for (j, (xj, yj)) in xs.iter().zip(ys).enumerate() {
        let mut basis = GammaPoly::one();
        let mut denom = Q::one();
        for (m, xm) in xs.iter().enumerate() {
            if m != j {
                basis = &basis * &GammaPoly::from_coeffs(vec![-xm.clone(), Q::one()]);
                denom *= xj - xm;
            }
        }
        out += &basis.scale(&(yj / denom));
    }
    out
}

/// Coefficients `a_mu(F)` in `F(C_lambda) = sum a_mu(F) Ch_mu(lambda)`.
///
/// The expansion is solved exactly at several `alpha = t^2` (so that contents
/// are rational) on all diagrams of size at most `size_bound`, then each
/// coefficient is interpolated in `gamma`. One extra sample checks the
/// interpolation and every coefficient must satisfy the degree bound
/// `deg a_mu <= deg F - (|mu| - l(mu) + m_1(mu))`.
pub fn matsumoto_content_expansion(
    f: &ElementaryPoly,
    size_bound: u32,
) -> Result<BTreeMap<Partition, GammaPoly>, StructureError> {
    let d = f.degree();
    if d > 4 {
        return Err(StructureError::Range(format!("degree {d} exceeds 4")));
    }
    if size_bound < 2 * d {
        return Err(StructureError::Underdetermined(format!(
            "size bound {size_bound} below twice the degree {d}"
        )));
    }
    let candidates: Vec<Partition> = partitions_with_n1_at_most(4 * d)
        .into_iter()
        .filter(|m| m.size() <= 2 * d && m.n3() <= d as i64)
        .collect();
    let lambdas: Vec<Partition> = std::iter::once(Partition::empty())
        .chain((1..=size_bound).flat_map(enumerate))
        .collect();
    let roots: Vec<Q> = [(1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (3, 2), (2, 3)]
        .iter()
        .map(|&(p, q)| q_frac(p, q))
        .take(d as usize + 2)
        .collect();
    let mut gammas = Vec::new();
    let mut samples: Vec<Vec<Q>> = Vec::new();
    for t in &roots {
        let field = AlphaField::new(t * t).expect("positive alpha");
        let rational = |x: QuadExt| {
            x.as_rational()
                .cloned()
                .expect("rational at a square alpha")
        };
        let rows: Vec<Vec<Q>> = lambdas
            .iter()
            .map(|l| {
                candidates
                    .iter()
                    .map(|m| rational(evaluate_Ch(m, l, &field)))
                    .collect()
            })
            .collect();
        let rhs: Vec<Q> = lambdas
            .iter()
            .map(|l| {
                let cs: Vec<Q> = content_alphabet(l, &field)
                    .into_iter()
                    .map(rational)
                    .collect();
                f.eval(&cs)
            })
            .collect();
        samples.push(solve_exact(rows, rhs, &format!("alpha = {}", t * t))?);
        gammas.push(rational(field.gamma()));
    }
    let n = d as usize + 1;
    let mut out = BTreeMap::new();
    for (j, mu) in candidates.iter().enumerate() {
        let ys: Vec<Q> = samples.iter().map(|s| s[j].clone()).collect();
        let p = interpolate(&gammas[..n], &ys[..n]);
        if p.eval_rational(&gammas[n]) != ys[n] {
            return Err(StructureError::Mismatch {
                check: "content expansion",
                detail: format!("a_{mu} is not a polynomial of degree {d} in gamma"),
            });
        }
        if !p.degree().at_most(d as i64 - mu.n3()) {
            return Err(StructureError::Mismatch {
                check: "degree of content coefficients",
                detail: format!("a_{mu} = {p} exceeds {}", d as i64 - mu.n3()),
            });
        }
        if !p.is_zero() {
            out.insert(mu.clone(), p);
        }
    }
    Ok(out)
}

/// The expected expansion of `e_k(C_lambda)`: `1/z_mu` on `|mu| - l(mu) = k`, `m_1(mu) = 0`.
pub fn elementary_expansion_expected(k: u32) -> BTreeMap<Partition, GammaPoly> {
    (k + 1..=2 * k)
        .flat_map(enumerate)
        .filter(|m| m.m(1) == 0 && m.n2() == k as i64)
        .map(|m| {
            let c = GammaPoly::constant(q_big(m.z()).recip());
            (m, c)
        })
        .collect()
}

/// Oracle value of `theta` paired with the character path, for cross-checks.
pub fn theta_pair(mu: &Partition, lambda: &Partition, alpha: &Q) -> (Q, Q) {
    let field = AlphaField::new(alpha.clone()).expect("positive alpha");
    let lass = crate::lassalle::theta(mu, lambda, &field)
        .expect("same sizes")
        .as_rational()
        .cloned()
        .expect("rational");
    (theta_oracle(mu, lambda, alpha), lass)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &[u32]) -> Partition {
        Partition::of(s)
    }

    #[test]
    fn product_of_two_transposition_characters() {
        let t = g_table(&p(&[2]), &p(&[2])).unwrap();
        assert_eq!(t.get(&p(&[2, 2])), GammaPoly::one());
        assert_eq!(t.get(&p(&[1, 1])), GammaPoly::from_int(2));
        assert!(t.get(&p(&[2])).is_odd());
    }

    #[test]
    fn stirling_numbers() {
        let s = stirling_first(5);
        let want: Vec<BigInt> = [0, 24, 50, 35, 10, 1]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(s, want);
    }

    #[test]
    fn small_c_values() {
        let f = AlphaField::new(q_int(1)).unwrap();
        // (2,1)(2,1) -> (3) counts 3 pairs
        let c = c_constant(&p(&[2, 1]), &p(&[2, 1]), &p(&[3]), &f).unwrap();
        assert_eq!(c.as_rational(), Some(&q_int(3)));
        let c = c_constant(&p(&[2, 1]), &p(&[2, 1]), &p(&[1, 1, 1]), &f).unwrap();
        assert_eq!(c.as_rational(), Some(&q_int(3)));
    }

    #[test]
    fn elementary_first_cases() {
        let a = matsumoto_content_expansion(&ElementaryPoly::e(1), 2).unwrap();
        assert_eq!(a, elementary_expansion_expected(1));
        let a = matsumoto_content_expansion(&ElementaryPoly::constant(q_int(1)), 0).unwrap();
        assert_eq!(a.get(&Partition::empty()), Some(&GammaPoly::one()));
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn vassilieva_small() {
        let a = q_int(2);
        assert_eq!(vassilieva_oracle(&p(&[2]), &a), q_frac(1, 4));
        assert_eq!(vassilieva_closed_form(&p(&[3]), &q_int(1)), q_int(1));
    }
}
