//! The quadratic field `Q(sqrt(alpha))` for a fixed positive rational `alpha`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{parse_rational, q_to_f64, AlgebraError, Ring, Q};

#[derive(Debug, PartialEq, Eq)]
struct FieldInner {
    alpha: Q,
    /// Rational square root of `alpha`, when one exists.
    root: Option<Q>,
}

/// Shared context fixing the value of `alpha`; cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaField(Arc<FieldInner>);

fn rational_sqrt(q: &Q) -> Option<Q> {
    let exact = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Q::new(exact(q.numer())?, exact(q.denom())?))
}

impl AlphaField {
    pub fn new(alpha: Q) -> Result<Self, AlgebraError> {
        if !alpha.is_positive() {
            return Err(AlgebraError::NonPositiveAlpha(alpha.to_string()));
        }
        let root = rational_sqrt(&alpha);
        Ok(AlphaField(Arc::new(FieldInner { alpha, root })))
    }

    pub fn alpha(&self) -> &Q {
        &self.0.alpha
    }

    /// The rational square root of `alpha`, if `alpha` is a perfect square.
    pub fn rational_root(&self) -> Option<&Q> {
        self.0.root.as_ref()
    }

    /// The element `sqrt(alpha)`.
    pub fn sqrt_alpha(&self) -> QuadExt {
        QuadExt::new(self, Q::zero(), Q::one())
    }

    /// `gamma = (1 - alpha) / sqrt(alpha) = ((1 - alpha) / alpha) sqrt(alpha)`.
    pub fn gamma(&self) -> QuadExt {
        let a = self.alpha();
        QuadExt::new(self, Q::zero(), (Q::one() - a) / a)
    }

    /// `sqrt(alpha)^k` for any integer `k`.
    pub fn sqrt_alpha_pow(&self, k: i64) -> QuadExt {
        let a = self.alpha();
        let half = k.div_euclid(2);
        let base = if half >= 0 {
            num_traits::pow(a.clone(), half as usize)
        } else {
            num_traits::pow(a.recip(), (-half) as usize)
        };
        if k.rem_euclid(2) == 0 {
            QuadExt::rational(self, base)
        } else {
            QuadExt::new(self, Q::zero(), base)
        }
    }
}

/// An element `a + b sqrt(alpha)`.
#[derive(Clone)]
pub struct QuadExt {
    a: Q,
    b: Q,
    field: AlphaField,
}

impl QuadExt {
    /// Builds `a + b sqrt(alpha)`, collapsing `b` when `alpha` is a perfect square.
    pub fn new(field: &AlphaField, a: Q, b: Q) -> Self {
        match field.rational_root() {
            Some(r) if !b.is_zero() => QuadExt {
                a: a + b * r,
                b: Q::zero(),
                field: field.clone(),
            },
            _ => QuadExt {
                a,
                b,
                field: field.clone(),
            },
        }
    }

    pub fn rational(field: &AlphaField, a: Q) -> Self {
        QuadExt::new(field, a, Q::zero())
    }

    pub fn from_int(field: &AlphaField, n: i64) -> Self {
        QuadExt::rational(field, super::q_int(n))
    }

    pub fn zero(field: &AlphaField) -> Self {
        QuadExt::rational(field, Q::zero())
    }

    pub fn one(field: &AlphaField) -> Self {
        QuadExt::rational(field, Q::one())
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn b(&self) -> &Q {
        &self.b
    }

    pub fn field(&self) -> &AlphaField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The rational value, when the `sqrt(alpha)` component vanishes.
    pub fn as_rational(&self) -> Option<&Q> {
        self.b.is_zero().then_some(&self.a)
    }

    /// Whether the element is a rational multiple of `sqrt(alpha)` (true for zero).
    pub fn is_pure_root(&self) -> bool {
        self.a.is_zero()
    }

    pub fn conjugate(&self) -> QuadExt {
        QuadExt::new(&self.field, self.a.clone(), -self.b.clone())
    }

    /// Field norm `a^2 - alpha b^2`.
    pub fn norm(&self) -> Q {
        &self.a * &self.a - self.field.alpha() * &self.b * &self.b
    }

    pub fn inverse(&self) -> Option<QuadExt> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadExt::new(&self.field, &self.a / &n, -&self.b / &n))
    }

    pub fn scale(&self, c: &Q) -> QuadExt {
        QuadExt::new(&self.field, &self.a * c, &self.b * c)
    }

    pub fn pow(&self, k: u32) -> QuadExt {
        let mut acc = QuadExt::one(&self.field);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        q_to_f64(&self.a) + q_to_f64(&self.b) * q_to_f64(self.field.alpha()).sqrt()
    }

    /// Canonical text form `a + b*sqrt(alpha)`, omitting a vanishing component.
    pub fn render(&self) -> String {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => self.a.to_string(),
            (true, false) => format!("{}*sqrt(alpha)", self.b),
            (false, false) if self.b.is_negative() => {
                format!("{} - {}*sqrt(alpha)", self.a, -self.b.clone())
            }
            _ => format!("{} + {}*sqrt(alpha)", self.a, self.b),
        }
    }

    /// Parses the output of [`QuadExt::render`].
    pub fn parse(field: &AlphaField, s: &str) -> Result<QuadExt, AlgebraError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || AlgebraError::BadRational(s.to_string());
        let Some(body) = t.strip_suffix("*sqrt(alpha)") else {
            return Ok(QuadExt::rational(field, parse_rational(&t)?));
        };
        // Split `a+b` or `a-b` at the last sign that is not leading.
        let pos = body
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with('/'))
            .map(|(i, _)| i)
            .last();
        match pos {
            None => Ok(QuadExt::new(field, Q::zero(), parse_rational(body)?)),
            Some(i) => {
                let a = parse_rational(&body[..i])?;
                let b_text = body[i..].trim_start_matches('+');
                let b = parse_rational(b_text).map_err(|_| bad())?;
                Ok(QuadExt::new(field, a, b))
            }
        }
    }

    fn check(&self, o: &QuadExt) {
        debug_assert_eq!(self.field, o.field, "mixing elements of different fields");
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && self.field.alpha() == o.field.alpha()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [alpha={}]", self.render(), self.field.alpha())
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, o: &QuadExt) -> QuadExt {
        self.check(o);
        QuadExt::new(&self.field, &self.a + &o.a, &self.b + &o.b)
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        self.check(o);
        QuadExt::new(&self.field, &self.a - &o.a, &self.b - &o.b)
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        self.check(o);
        let a = &self.a * &o.a + self.field.alpha() * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadExt::new(&self.field, a, b)
    }
}

impl<'a> Div<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QuadExt) -> QuadExt {
        self * &o.inverse().expect("division by zero in Q(sqrt(alpha))")
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(&self.field, -&self.a, -&self.b)
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, o: QuadExt) -> QuadExt {
        &self + &o
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, o: QuadExt) -> QuadExt {
        &self - &o
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, o: QuadExt) -> QuadExt {
        &self * &o
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, o: QuadExt) -> QuadExt {
        &self / &o
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl Ring for QuadExt {
    fn zero_like(&self) -> Self {
        QuadExt::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        QuadExt::one(&self.field)
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
        QuadExt::scale(self, c)
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse()
    }
}
