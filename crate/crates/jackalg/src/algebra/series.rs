//! Truncated formal power series and the moment / free-cumulant conversion.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::{q_frac, AlgebraError, Basis, BasisPolynomial, Ring};

/// `sum_{k <= N} c_k z^k`; coefficients beyond the order `N` are never reported.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> FormalSeries<R> {
    /// Builds a series of order `order`, padding or truncating `coeffs` with zeros of `one`'s ring.
    pub fn new(one: &R, mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.truncate(order + 1);
        while coeffs.len() < order + 1 {
            coeffs.push(one.zero_like());
        }
        FormalSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    fn zero_of_order(&self, order: usize) -> Self {
        let z = self.coeffs[0].zero_like();
        FormalSeries {
            coeffs: vec![z; order + 1],
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        FormalSeries {
            coeffs: (0..=n).map(|i| self.coeffs[i].plus(&o.coeffs[i])).collect(),
        }
    }

    /// Product truncated to the smaller order.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = self.zero_of_order(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero_elem() {
                continue;
            }
            for j in 0..=n - i {
                if o.coeffs[j].is_zero_elem() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].plus(&self.coeffs[i].times(&o.coeffs[j]));
            }
        }
        out
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn reciprocal(&self) -> Result<Self, AlgebraError> {
        let inv0 = self.coeffs[0]
            .try_inverse()
            .ok_or(AlgebraError::DivisionByZero)?;
        let n = self.order();
        let mut c = vec![inv0.clone()];
        for k in 1..=n {
            let mut acc = self.coeffs[0].zero_like();
            for j in 1..=k {
                acc = acc.plus(&self.coeffs[j].times(&c[k - j]));
            }
            c.push(acc.times(&inv0).negate());
        }
        Ok(FormalSeries { coeffs: c })
    }

    /// `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, AlgebraError> {
        if !inner.coeffs[0].is_zero_elem() {
            return Err(AlgebraError::NotInvertible);
        }
        let n = self.order().min(inner.order());
        let one = self.coeffs[0].one_like();
        let mut power = FormalSeries::new(&one, vec![one.clone()], n);
        let mut out = self.zero_of_order(n);
        for k in 0..=n {
            if !self.coeffs[k].is_zero_elem() {
                for i in 0..=n {
                    out.coeffs[i] = out.coeffs[i].plus(&self.coeffs[k].times(&power.coeffs[i]));
                }
            }
            power = power.mul(inner);
        }
        Ok(out)
    }

    /// The series `t` with `self(t(z)) = z + O(z^{N+1})`.
    pub fn compositional_inverse(&self) -> Result<Self, AlgebraError> {
        let n = self.order();
        if n < 1 || !self.coeffs[0].is_zero_elem() {
            return Err(AlgebraError::NotInvertible);
        }
        let inv1 = self.coeffs[1]
            .try_inverse()
            .ok_or(AlgebraError::NotInvertible)?;
        let zero = self.coeffs[0].zero_like();
        // p[k][m] = [z^m] t(z)^k
        let mut p: Vec<Vec<R>> = vec![vec![zero.clone(); n + 1]; n + 1];
        let mut u = vec![zero.clone(); n + 1];
        for m in 1..=n {
            for k in 2..=m {
                let mut acc = zero.clone();
                for j in 1..=m - k + 1 {
                    if u[j].is_zero_elem() || p[k - 1][m - j].is_zero_elem() {
                        continue;
                    }
                    acc = acc.plus(&u[j].times(&p[k - 1][m - j]));
                }
                p[k][m] = acc;
            }
            let mut rhs = if m == 1 {
                zero.one_like()
            } else {
                zero.clone()
            };
            for k in 2..=m {
                if self.coeffs[k].is_zero_elem() {
                    continue;
                }
                rhs = rhs.minus(&self.coeffs[k].times(&p[k][m]));
            }
            u[m] = rhs.times(&inv1);
            p[1][m] = u[m].clone();
        }
        Ok(FormalSeries { coeffs: u })
    }
}

/// Free cumulants `R_0..R_N` (with `R_0 = 0`) of the moment sequence `m_0..m_N`.
pub fn moments_to_free_cumulants<R: Ring>(m: &[R], n: usize) -> Result<Vec<R>, AlgebraError> {
    if m.len() < n + 1 {
        return Err(AlgebraError::TooShort {
            need: n + 1,
            got: m.len(),
        });
    }
    let one = m[0].one_like();
    if !m[0].minus(&one).is_zero_elem() {
        return Err(AlgebraError::BadMomentNormalization);
    }
    // f(z) = z M(z); C(w) = w / f^{-1}(w) = 1 + sum R_k w^k.
    let mut f = vec![one.zero_like()];
    f.extend(m[..=n].iter().cloned());
    let f = FormalSeries::new(&one, f, n + 1);
    let g = f.compositional_inverse()?;
    let h = FormalSeries::new(&one, g.coeffs()[1..].to_vec(), n);
    let c = h.reciprocal()?;
    let mut out = c.coeffs().to_vec();
    out[0] = one.zero_like();
    Ok(out)
}

/// Moments `M_0..M_N` from free cumulants `R_0..R_N` (`R_0` ignored), by Lagrange inversion.
pub fn free_cumulants_to_moments<R: Ring>(r: &[R], n: usize) -> Result<Vec<R>, AlgebraError> {
    if r.len() < n + 1 {
        return Err(AlgebraError::TooShort {
            need: n + 1,
            got: r.len(),
        });
    }
    let one = r[0].one_like();
    let mut c = vec![one.clone()];
    c.extend(r[1..=n].iter().cloned());
    let c = FormalSeries::new(&one, c, n);
    // M_k = [w^k] C(w)^{k+1} / (k+1)
    let mut out = vec![one.clone()];
    let mut power = c.clone();
    for k in 1..=n {
        power = power.mul(&c);
        out.push(power.coeff(k).scale(&q_frac(1, k as i64 + 1)));
    }
    Ok(out)
}

type SymbolicCache = OnceLock<RwLock<HashMap<usize, Arc<Vec<BasisPolynomial>>>>>;

fn cached(
    cache: &'static SymbolicCache,
    n: usize,
    build: impl FnOnce() -> Vec<BasisPolynomial>,
) -> Arc<Vec<BasisPolynomial>> {
    let lock = cache.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = lock.read().expect("cache poisoned").get(&n) {
        return v.clone();
    }
    let v = Arc::new(build());
    lock.write()
        .expect("cache poisoned")
        .entry(n)
        .or_insert(v)
        .clone()
}

/// `M_k` expressed as a polynomial in `R_2..R_k`, for `k <= n` (`R_1 = 0`).
pub fn free_cumulants_to_moments_symbolic(n: usize) -> Arc<Vec<BasisPolynomial>> {
    static CACHE: SymbolicCache = OnceLock::new();
    cached(&CACHE, n, || {
        let r: Vec<BasisPolynomial> = (0..=n)
            .map(|k| BasisPolynomial::generator(Basis::R, k as u32))
            .collect();
        free_cumulants_to_moments(&r, n).expect("normalized input")
    })
}

/// `R_k` expressed as a polynomial in `M_2..M_k`, for `k <= n` (`M_1 = 0`).
pub fn moments_to_free_cumulants_symbolic(n: usize) -> Arc<Vec<BasisPolynomial>> {
    static CACHE: SymbolicCache = OnceLock::new();
    cached(&CACHE, n, || {
        let m: Vec<BasisPolynomial> = (0..=n)
            .map(|k| BasisPolynomial::generator(Basis::M, k as u32))
            .collect();
        moments_to_free_cumulants(&m, n).expect("normalized input")
    })
}
