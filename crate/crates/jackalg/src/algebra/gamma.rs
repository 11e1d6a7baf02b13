//! Univariate polynomials in `gamma` with rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, q_int, AlphaField, Degree, QuadExt, Ring, Q};

/// A polynomial `sum_i c_i gamma^i`, coefficients ascending, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GammaPoly {
    coeffs: Vec<Q>,
}

impl GammaPoly {
    pub fn zero() -> Self {
        GammaPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        GammaPoly::constant(Q::one())
    }

    /// The polynomial `gamma`.
    pub fn gamma() -> Self {
        GammaPoly::monomial(Q::one(), 1)
    }

    pub fn constant(c: Q) -> Self {
        GammaPoly::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        GammaPoly::constant(q_int(c))
    }

    /// `c gamma^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        GammaPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        GammaPoly { coeffs }
    }

    /// Builds from small integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        GammaPoly::from_coeffs(coeffs.iter().map(|&c| q_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of `gamma^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n as u32 - 1),
        }
    }

    /// Coefficient of the top power, zero for the zero polynomial.
    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    /// True when every nonzero coefficient sits at an even power.
    pub fn is_even(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % 2 == 0 || c.is_zero())
    }

    /// True when every nonzero coefficient sits at an odd power.
    pub fn is_odd(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % 2 == 1 || c.is_zero())
    }

    /// Whether the polynomial has the parity of the integer `p`.
    pub fn has_parity(&self, p: i64) -> bool {
        if p.rem_euclid(2) == 0 {
            self.is_even()
        } else {
            self.is_odd()
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        GammaPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = GammaPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `p(gamma)` evaluated at a rational point.
    pub fn eval_rational(&self, g: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * g + c)
    }

    /// `p(gamma)` at `gamma = (1 - alpha) / sqrt(alpha)`, exactly in `Q(sqrt(alpha))`.
    pub fn eval(&self, field: &AlphaField) -> QuadExt {
        let g = field.gamma();
        self.coeffs
            .iter()
            .rev()
            .fold(QuadExt::zero(field), |acc, c| {
                &(&acc * &g) + &QuadExt::rational(field, c.clone())
            })
    }

    /// `p(gamma)` in floating point.
    pub fn eval_f64(&self, g: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * g + super::q_to_f64(c))
    }

    /// Human-readable rendering in the style `5 + 11*γ^2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "γ".to_string(),
                _ => format!("γ^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }

    /// Parses the output of [`GammaPoly::render`]; accepts `g` or `γ` for the variable.
    pub fn parse(s: &str) -> Option<GammaPoly> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace('g', "γ");
        if t.is_empty() {
            return None;
        }
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for ch in t.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = GammaPoly::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-Q::one(), b.to_string()),
                None => (Q::one(), term.trim_start_matches('+').to_string()),
            };
            let (coef, mono) = match body.split_once('*') {
                Some((c, m)) => (parse_rational(c).ok()?, m.to_string()),
                None if body.contains('γ') => (Q::one(), body.clone()),
                None => (parse_rational(&body).ok()?, String::new()),
            };
            let k = if mono.is_empty() {
                0
            } else if mono == "γ" {
                1
            } else {
                mono.strip_prefix("γ^")?.parse::<usize>().ok()?
            };
            acc += &GammaPoly::monomial(sign * coef, k);
        }
        Some(acc)
    }
}

impl fmt::Display for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a GammaPoly> for &'a GammaPoly {
    type Output = GammaPoly;
    fn add(self, o: &GammaPoly) -> GammaPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        GammaPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a GammaPoly> for &'a GammaPoly {
    type Output = GammaPoly;
    fn sub(self, o: &GammaPoly) -> GammaPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        GammaPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a GammaPoly> for &'a GammaPoly {
    type Output = GammaPoly;
    fn mul(self, o: &GammaPoly) -> GammaPoly {
        if self.is_zero() || o.is_zero() {
            return GammaPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        GammaPoly::from_coeffs(out)
    }
}

impl Neg for &GammaPoly {
    type Output = GammaPoly;
    fn neg(self) -> GammaPoly {
        GammaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for GammaPoly {
    type Output = GammaPoly;
    fn add(self, o: GammaPoly) -> GammaPoly {
        &self + &o
    }
}

impl Sub for GammaPoly {
    type Output = GammaPoly;
    fn sub(self, o: GammaPoly) -> GammaPoly {
        &self - &o
    }
}

impl Mul for GammaPoly {
    type Output = GammaPoly;
    fn mul(self, o: GammaPoly) -> GammaPoly {
        &self * &o
    }
}

impl Neg for GammaPoly {
    type Output = GammaPoly;
    fn neg(self) -> GammaPoly {
        -&self
    }
}

impl AddAssign<&GammaPoly> for GammaPoly {
    fn add_assign(&mut self, o: &GammaPoly) {
        if self.coeffs.len() < o.coeffs.len() {
            self.coeffs.resize(o.coeffs.len(), Q::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(o.coeffs.iter()) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl SubAssign<&GammaPoly> for GammaPoly {
    fn sub_assign(&mut self, o: &GammaPoly) {
        *self += &(-o);
    }
}

impl Ring for GammaPoly {
    fn zero_like(&self) -> Self {
        GammaPoly::zero()
    }
    fn one_like(&self) -> Self {
        GammaPoly::one()
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
        GammaPoly::scale(self, c)
    }
    fn try_inverse(&self) -> Option<Self> {
        match self.degree() {
            Degree::Finite(0) => Some(GammaPoly::constant(self.coeffs[0].recip())),
            _ => None,
        }
    }
}

impl Serialize for GammaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GammaPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GammaPoly::from_coeffs(coeffs))
    }
}
