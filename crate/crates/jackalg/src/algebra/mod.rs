//! Exact arithmetic kernels: rationals, polynomials in `gamma`, the quadratic
//! field `Q(sqrt(alpha))`, multivariate polynomials in the generators of the
//! algebra of polynomial functions, and truncated formal power series.

mod basis;
mod gamma;
mod quad;
mod series;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use basis::{deg1, deg2, deg3, Basis, BasisParseError, BasisPolynomial};
pub use gamma::GammaPoly;
pub use quad::{AlphaField, QuadExt};
pub use series::{
    free_cumulants_to_moments, free_cumulants_to_moments_symbolic, moments_to_free_cumulants,
    moments_to_free_cumulants_symbolic, FormalSeries,
};

/// Exact arbitrary-precision rational numbers.
pub type Q = num_rational::BigRational;

/// Errors raised by the arithmetic kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("alpha must be a positive rational, got {0}")]
    NonPositiveAlpha(String),
    #[error("series has no compositional inverse: linear coefficient is not invertible")]
    NotInvertible,
    #[error("moment sequence must start with m[0] = 1")]
    BadMomentNormalization,
    #[error("moment sequence too short: need {need} entries, got {got}")]
    TooShort { need: usize, got: usize },
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

/// The rational `n / 1`.
pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// The rational `n / d`.
pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The rational represented by a big integer.
pub fn q_big(n: BigInt) -> Q {
    Q::from_integer(n)
}

/// Parses `"p/q"` or an integer string into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q, AlgebraError> {
    let t = s.trim();
    let bad = || AlgebraError::BadRational(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Parses a strictly positive rational, as required for `alpha`.
pub fn parse_alpha(s: &str) -> Result<Q, AlgebraError> {
    let a = parse_rational(s)?;
    if !a.is_positive() {
        return Err(AlgebraError::NonPositiveAlpha(s.to_string()));
    }
    Ok(a)
}

/// Lossy conversion of a rational to `f64`, robust to huge numerators and denominators.
pub fn q_to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = q.numer().bits() as i64 - q.denom().bits() as i64;
    let scaled = if shift > 0 {
        Q::new(q.numer().clone(), q.denom() << (shift as usize))
    } else {
        Q::new(q.numer() << ((-shift) as usize), q.denom().clone())
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `binom(n, k)` as a big integer, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    /// Whether the degree is at most `bound`; `NegInfinity` satisfies every bound.
    pub fn at_most(self, bound: i64) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(d) => (d as i64) <= bound,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A commutative ring with a rational scalar action.
///
/// Method names avoid the standard operator traits so that generic code reads
/// the same for every coefficient domain.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, c: &Q) -> Self;
    /// Multiplicative inverse when it exists.
    fn try_inverse(&self) -> Option<Self>;
}

impl Ring for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
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
        self * c
    }
    fn try_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Ring for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn is_zero_elem(&self) -> bool {
        *self == 0.0
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
        self * q_to_f64(c)
    }
    fn try_inverse(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
}
