//! Polynomials in the generators `M_k`, `M'_k` or `R_k` (`k >= 2`) with
//! coefficients in `Q[gamma]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{parse_rational, GammaPoly, Ring, Q};
use crate::partitions::Partition;

/// The three algebraic bases of the algebra of polynomial functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    /// Moments of the transition measure.
    M,
    /// Shifted moments `M'_k = M_k - (-gamma)^(k-2) M_2`.
    #[serde(rename = "Mprime")]
    MPrime,
    /// Free cumulants.
    R,
}

impl Basis {
    fn symbol(self) -> &'static str {
        match self {
            Basis::M => "M",
            Basis::MPrime => "M'",
            Basis::R => "R",
        }
    }

    pub fn parse(s: &str) -> Option<Basis> {
        match s {
            "M" => Some(Basis::M),
            "Mprime" | "M'" | "MPrime" => Some(Basis::MPrime),
            "R" => Some(Basis::R),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::M => "M",
            Basis::MPrime => "Mprime",
            Basis::R => "R",
        }
    }
}

/// Errors raised when reading a basis polynomial from text or JSON.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisParseError {
    #[error("malformed polynomial term {0:?}")]
    Term(String),
    #[error("generator index must be at least 2 in term {0:?}")]
    SmallIndex(String),
    #[error("mixed generator families in {0:?}")]
    MixedBasis(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// `sum_rho c_rho(gamma) X_rho` where `X_rho = prod_i X_{rho_i}`.
#[derive(Clone, PartialEq, Eq)]
pub struct BasisPolynomial {
    basis: Basis,
    terms: BTreeMap<Partition, GammaPoly>,
}

/// `deg1(X_rho) = |rho|`.
pub fn deg1(rho: &Partition) -> i64 {
    rho.size() as i64
}

/// `deg2(X_rho) = |rho| - 2 l(rho)`.
pub fn deg2(rho: &Partition) -> i64 {
    rho.size() as i64 - 2 * rho.length() as i64
}

/// `deg3(M'_rho) = |rho| - 2 l(rho) + m_2(rho)`.
pub fn deg3(rho: &Partition) -> i64 {
    deg2(rho) + rho.m(2) as i64
}

impl BasisPolynomial {
    pub fn zero(basis: Basis) -> Self {
        BasisPolynomial {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(basis: Basis, c: GammaPoly) -> Self {
        let mut p = BasisPolynomial::zero(basis);
        p.add_term(Partition::empty(), &c);
        p
    }

    pub fn one(basis: Basis) -> Self {
        BasisPolynomial::constant(basis, GammaPoly::one())
    }

    /// The generator `X_k`; `X_1` is identically zero and `X_0` is one.
    pub fn generator(basis: Basis, k: u32) -> Self {
        match k {
            0 => BasisPolynomial::one(basis),
            1 => BasisPolynomial::zero(basis),
            _ => BasisPolynomial::monomial(basis, Partition::of(&[k]), GammaPoly::one()),
        }
    }

    /// `c X_rho`; the result is zero if `rho` has a part equal to 1.
    pub fn monomial(basis: Basis, rho: Partition, c: GammaPoly) -> Self {
        let mut p = BasisPolynomial::zero(basis);
        if rho.m(1) == 0 {
            p.add_term(rho, &c);
        }
        p
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, GammaPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `X_rho`.
    pub fn coeff(&self, rho: &Partition) -> GammaPoly {
        self.terms.get(rho).cloned().unwrap_or_default()
    }

    /// Adds `c X_rho` in place.
    pub fn add_term(&mut self, rho: Partition, c: &GammaPoly) {
        debug_assert!(rho.m(1) == 0, "generator index 1 never appears");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(rho) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, other: &BasisPolynomial, c: &GammaPoly) {
        if c.is_zero() {
            return;
        }
        for (rho, x) in &other.terms {
            self.add_term(rho.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &GammaPoly) -> BasisPolynomial {
        let mut out = BasisPolynomial::zero(self.basis);
        out.add_scaled(self, c);
        out
    }

    pub fn scale_rational(&self, c: &Q) -> BasisPolynomial {
        self.scale(&GammaPoly::constant(c.clone()))
    }

    pub fn pow(&self, k: u32) -> BasisPolynomial {
        let mut acc = BasisPolynomial::one(self.basis);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Relabels the generators without changing coefficients.
    pub fn with_basis(mut self, basis: Basis) -> BasisPolynomial {
        self.basis = basis;
        self
    }

    /// Maximum of `deg1` over the support, `None` for zero.
    pub fn max_deg1(&self) -> Option<i64> {
        self.terms.keys().map(deg1).max()
    }

    /// The part of the polynomial with `deg1 = d`.
    pub fn deg1_component(&self, d: i64) -> BasisPolynomial {
        BasisPolynomial {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .filter(|(rho, _)| deg1(rho) == d)
                .map(|(r, c)| (r.clone(), c.clone()))
                .collect(),
        }
    }

    /// Replaces every generator `X_k` by `image(k)` and expands.
    pub fn substitute<F>(&self, target: Basis, mut image: F) -> BasisPolynomial
    where
        F: FnMut(u32) -> BasisPolynomial,
    {
        let mut cache: BTreeMap<(u32, u32), BasisPolynomial> = BTreeMap::new();
        let mut out = BasisPolynomial::zero(target);
        for (rho, c) in &self.terms {
            let mut prod = BasisPolynomial::constant(target, c.clone());
            for k in rho.distinct_parts() {
                let m = rho.m(k);
                cache.entry((k, 1)).or_insert_with(|| image(k));
                for e in 2..=m {
                    if !cache.contains_key(&(k, e)) {
                        let prev = &cache[&(k, e - 1)] * &cache[&(k, 1)];
                        cache.insert((k, e), prev);
                    }
                }
                prod = &prod * &cache[&(k, m)];
            }
            out.add_scaled(&prod, &GammaPoly::one());
        }
        out
    }

    /// Evaluates with generator values `gen(k)` and a coefficient map.
    pub fn evaluate<R, G, C>(&self, one: &R, mut gen: G, mut coeff: C) -> R
    where
        R: Ring,
        G: FnMut(u32) -> R,
        C: FnMut(&GammaPoly) -> R,
    {
        let mut values: BTreeMap<u32, R> = BTreeMap::new();
        let mut acc = one.zero_like();
        for (rho, c) in &self.terms {
            let mut term = coeff(c);
            for &k in rho.parts() {
                let v = values.entry(k).or_insert_with(|| gen(k));
                term = term.times(v);
            }
            acc = acc.plus(&term);
        }
        acc
    }

    /// Terms in canonical order: `deg1` descending, then index descending.
    pub fn canonical_terms(&self) -> Vec<(&Partition, &GammaPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| deg1(b).cmp(&deg1(a)).then_with(|| b.cmp(a)));
        v
    }

    fn render_monomial(&self, rho: &Partition) -> String {
        let sym = self.basis.symbol();
        let mut out = String::new();
        for k in rho.distinct_parts() {
            let m = rho.m(k);
            let g = format!("{sym}_{k}");
            if m == 1 {
                out.push_str(&g);
            } else if self.basis == Basis::MPrime {
                out.push_str(&format!("({g})^{m}"));
            } else {
                out.push_str(&format!("{g}^{m}"));
            }
        }
        out
    }

    /// Canonical human-readable form, e.g. `R_3 + γR_2` or `(5 + 11γ^2)R_3`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (rho, c) in self.canonical_terms() {
            let nonzero: Vec<(usize, &Q)> = c
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .collect();
            let negative = nonzero.iter().all(|(_, q)| q.is_negative());
            let c_abs = if negative { -c } else { c.clone() };
            let mono = self.render_monomial(rho);
            let coeff_text = if nonzero.len() == 1 {
                let (i, q) = nonzero[0];
                let q = q.abs();
                let g = match i {
                    0 => String::new(),
                    1 => "γ".to_string(),
                    _ => format!("γ^{i}"),
                };
                match (q.is_one(), g.is_empty(), mono.is_empty()) {
                    (true, true, true) => "1".to_string(),
                    (true, _, _) => g,
                    (false, _, _) => format!("{q}{g}"),
                }
            } else {
                let inner = c_abs.render().replace('*', "");
                if mono.is_empty() && self.terms.len() == 1 && !negative {
                    inner
                } else {
                    format!("({inner})")
                }
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&coeff_text);
            out.push_str(&mono);
        }
        out
    }

    /// Parses polynomials written as in [`BasisPolynomial::render`] or in LaTeX-like
    /// notation (`\gamma`, `M'_3`, `(M'_3)^2`, `R_3R_2`, `-(6\gamma^2+2) M_2`).
    pub fn parse(s: &str) -> Result<BasisPolynomial, BasisParseError> {
        let t: String = s
            .replace("\\gamma", "γ")
            .replace("\\cdot", "")
            .replace('−', "-")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let mut terms: Vec<String> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        for ch in t.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && !cur.is_empty() && !cur.ends_with('^') => {
                    terms.push(std::mem::take(&mut cur));
                }
                _ => {}
            }
            cur.push(ch);
        }
        if !cur.is_empty() {
            terms.push(cur);
        }
        let mut basis: Option<Basis> = None;
        let mut parsed: Vec<(Partition, GammaPoly)> = Vec::new();
        for term in &terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.trim_start_matches('+')),
            };
            let (coef, rest) =
                split_coefficient(body).ok_or_else(|| BasisParseError::Term(term.clone()))?;
            let (b, rho) = parse_monomial(rest, term)?;
            if let Some(b) = b {
                if basis.is_some_and(|x| x != b) {
                    return Err(BasisParseError::MixedBasis(s.to_string()));
                }
                basis = Some(b);
            }
            parsed.push((rho, if neg { -coef } else { coef }));
        }
        let mut out = BasisPolynomial::zero(basis.unwrap_or(Basis::M));
        for (rho, c) in parsed {
            out.add_term(rho, &c);
        }
        Ok(out)
    }

    /// JSON value `{"basis": ..., "terms": [{"index": [...], "coeff": [...]}, ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<BasisPolynomial, BasisParseError> {
        serde_json::from_value(v.clone()).map_err(|e| BasisParseError::Json(e.to_string()))
    }
}

/// Splits a term into its coefficient and the generator part.
fn split_coefficient(body: &str) -> Option<(GammaPoly, &str)> {
    if let Some(inner) = body.strip_prefix('(') {
        let close = matching_paren(body)?;
        let inside = &inner[..close - 1];
        if !inside.contains('M') && !inside.contains('R') {
            let c = parse_gamma_loose(inside)?;
            return Some((c, &body[close + 1..]));
        }
    }
    let cut = body.find(['M', 'R', '(']).unwrap_or(body.len());
    let head = &body[..cut];
    let c = if head.is_empty() {
        GammaPoly::one()
    } else {
        parse_gamma_loose(head)?
    };
    Some((c, &body[cut..]))
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Parses a polynomial in `gamma` allowing juxtaposition such as `11γ^2`.
fn parse_gamma_loose(s: &str) -> Option<GammaPoly> {
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut acc = GammaPoly::zero();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-Q::one(), b),
            None => (Q::one(), term.trim_start_matches('+')),
        };
        let (num, k) = match body.find('γ') {
            None => (body, 0usize),
            Some(i) => {
                let tail = &body[i + 'γ'.len_utf8()..];
                let k = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')?.parse().ok()?
                };
                (body[..i].trim_end_matches('*'), k)
            }
        };
        let c = if num.is_empty() {
            Q::one()
        } else {
            parse_rational(num).ok()?
        };
        acc += &GammaPoly::monomial(sign * c, k);
    }
    Some(acc)
}

/// Parses a product of generators such as `M_3M_2`, `R_2^2` or `(M'_3)^2`.
fn parse_monomial(s: &str, term: &str) -> Result<(Option<Basis>, Partition), BasisParseError> {
    let err = || BasisParseError::Term(term.to_string());
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut parts: Vec<u32> = Vec::new();
    let mut basis: Option<Basis> = None;
    while i < bytes.len() {
        let paren = bytes[i] == '(';
        if paren {
            i += 1;
        }
        let b = match bytes.get(i) {
            Some('R') => Basis::R,
            Some('M') if bytes.get(i + 1) == Some(&'\'') => {
                i += 1;
                Basis::MPrime
            }
            Some('M') => Basis::M,
            _ => return Err(err()),
        };
        if basis.is_some_and(|x| x != b) {
            return Err(BasisParseError::MixedBasis(term.to_string()));
        }
        basis = Some(b);
        i += 1;
        if bytes.get(i) != Some(&'_') {
            return Err(err());
        }
        i += 1;
        let braced = bytes.get(i) == Some(&'{');
        if braced {
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let k: u32 = bytes[start..i]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| err())?;
        if braced {
            if bytes.get(i) != Some(&'}') {
                return Err(err());
            }
            i += 1;
        }
        if paren {
            if bytes.get(i) != Some(&')') {
                return Err(err());
            }
            i += 1;
        }
        let mut e = 1u32;
        if bytes.get(i) == Some(&'^') {
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            e = bytes[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| err())?;
        }
        if k < 2 {
            return Err(BasisParseError::SmallIndex(term.to_string()));
        }
        parts.extend(std::iter::repeat(k).take(e as usize));
    }
    Ok((basis, Partition::from_unsorted(parts)))
}

impl fmt::Display for BasisPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for BasisPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.basis.name(), self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    index: Partition,
    coeff: GammaPoly,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    basis: Basis,
    terms: Vec<JsonTerm>,
}

impl Serialize for BasisPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        JsonPoly {
            basis: self.basis,
            terms: self
                .canonical_terms()
                .into_iter()
                .map(|(r, c)| JsonTerm {
                    index: r.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BasisPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = JsonPoly::deserialize(d)?;
        let mut out = BasisPolynomial::zero(j.basis);
        for t in j.terms {
            if t.index.m(1) > 0 {
                return Err(serde::de::Error::custom(
                    "generator index must be at least 2",
                ));
            }
            out.add_term(t.index, &t.coeff);
        }
        Ok(out)
    }
}

impl<'a> Add<&'a BasisPolynomial> for &'a BasisPolynomial {
    type Output = BasisPolynomial;
    fn add(self, o: &BasisPolynomial) -> BasisPolynomial {
        let mut out = self.clone();
        out.add_scaled(o, &GammaPoly::one());
        out
    }
}

impl<'a> Sub<&'a BasisPolynomial> for &'a BasisPolynomial {
    type Output = BasisPolynomial;
    fn sub(self, o: &BasisPolynomial) -> BasisPolynomial {
        let mut out = self.clone();
        out.add_scaled(o, &GammaPoly::from_int(-1));
        out
    }
}

impl<'a> Mul<&'a BasisPolynomial> for &'a BasisPolynomial {
    type Output = BasisPolynomial;
    fn mul(self, o: &BasisPolynomial) -> BasisPolynomial {
        let mut out = BasisPolynomial::zero(self.basis);
        for (r1, c1) in &self.terms {
            for (r2, c2) in &o.terms {
                out.add_term(r1.union(r2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &BasisPolynomial {
    type Output = BasisPolynomial;
    fn neg(self) -> BasisPolynomial {
        self.scale(&GammaPoly::from_int(-1))
    }
}

impl Ring for BasisPolynomial {
    fn zero_like(&self) -> Self {
        BasisPolynomial::zero(self.basis)
    }
    fn one_like(&self) -> Self {
        BasisPolynomial::one(self.basis)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Q) -> Self {
        self.scale_rational(c)
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() == 1 {
            let (rho, c) = self.terms.iter().next()?;
            if rho.is_empty() {
                let inv = c.try_inverse()?;
                return Some(BasisPolynomial::constant(self.basis, inv));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse_round_trip() {
        for s in [
            "R_3 + γR_2",
            "R_5 + 6γR_4 + γR_2^2 + (5 + 11γ^2)R_3 + (7γ + 6γ^3)R_2",
            "M_3^2 + 2γM_3M_2 - 4M_4 + (6 + γ^2)M_2^2 - 10γM_3 - (2 + 6γ^2)M_2",
            "(M'_3)^2 - 4M'_4 + 6(M'_2)^2 - 10γM'_3 - 2M'_2",
            "1/2 - γ^2",
            "0",
        ] {
            let p = BasisPolynomial::parse(s).unwrap();
            assert_eq!(p.render(), s);
        }
    }

    #[test]
    fn parses_latex_style() {
        let p = BasisPolynomial::parse(r"M_3^2 + 2\gamma M_3 M_2 - 4 M_4 + (\gamma^2+6) M_2^2")
            .unwrap();
        assert_eq!(
            p.coeff(&Partition::of(&[2, 2])),
            GammaPoly::from_ints(&[6, 0, 1])
        );
        assert_eq!(
            p.coeff(&Partition::of(&[3, 2])),
            GammaPoly::from_ints(&[0, 2])
        );
        assert!(BasisPolynomial::parse("M_1").is_err());
        assert!(BasisPolynomial::parse("M_2R_3").is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = BasisPolynomial::parse("R_3 + γR_2").unwrap();
        let v = p.to_json();
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"basis":"R","terms":[{"index":[3],"coeff":["1"]},{"index":[2],"coeff":["0","1"]}]}"#
        );
        assert_eq!(BasisPolynomial::from_json(&v).unwrap(), p);
    }

    #[test]
    fn substitution_and_products() {
        let m2 = BasisPolynomial::generator(Basis::M, 2);
        let sq = &m2 * &m2;
        assert_eq!(sq.render(), "M_2^2");
        let r = sq.substitute(Basis::R, |k| {
            &BasisPolynomial::generator(Basis::R, k) + &BasisPolynomial::one(Basis::R)
        });
        assert_eq!(r.render(), "R_2^2 + 2R_2 + 1");
    }
}
