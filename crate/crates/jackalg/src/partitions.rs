//! Integer partitions and Young-diagram combinatorics.
//!
//! A [`Partition`] is stored densely as a weakly decreasing list of positive
//! parts. Boxes are addressed by 1-based `(row, col)` pairs in English
//! convention; the anisotropic content of the box `(i, j)` is
//! `sqrt(alpha) (j - 1) - (i - 1) / sqrt(alpha)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{q_int, AlphaField, QuadExt, Q};

/// Errors raised when building or parsing a partition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be positive, got {0:?}")]
    NonPositive(Vec<i64>),
    #[error("parts must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<i64>),
    #[error("cannot parse partition {0:?}: expected a bracketed list such as \"[4,3,1]\"")]
    Syntax(String),
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// A box of a Young diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        Cell { row, col }
    }

    /// Ordinary content `col - row`.
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }

    /// Anisotropic content `sqrt(alpha) (col - 1) - (row - 1) / sqrt(alpha)`.
    pub fn aniso_content(&self, field: &AlphaField) -> QuadExt {
        let x = q_int(self.col as i64 - 1);
        let y = q_int(self.row as i64 - 1);
        // sqrt(a) x - y / sqrt(a) = (x - y / a) sqrt(a)
        QuadExt::new(field, Q::zero(), x - y / field.alpha())
    }

    /// Floating-point anisotropic content.
    pub fn aniso_content_f64(&self, sqrt_alpha: f64) -> f64 {
        sqrt_alpha * (self.col as f64 - 1.0) - (self.row as f64 - 1.0) / sqrt_alpha
    }
}

impl Partition {
    /// Validates a weakly decreasing list of positive parts.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::NonPositive(
                parts.iter().map(|&p| p as i64).collect(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(
                parts.iter().map(|&p| p as i64).collect(),
            ));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Convenience constructor for literals in code and tests; panics on invalid input.
    pub fn of(parts: &[u32]) -> Self {
        Partition::new(parts.to_vec()).expect("invalid partition literal")
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The partition `(1^n)`.
    pub fn ones(n: u32) -> Self {
        Partition {
            parts: vec![1; n as usize],
        }
    }

    /// The hook `(k, 1^(n-k))`.
    pub fn hook(k: u32, n: u32) -> Self {
        assert!(k >= 1 && k <= n);
        let mut parts = vec![k];
        parts.extend(std::iter::repeat(1).take((n - k) as usize));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> u32 {
        self.parts.len() as u32
    }

    /// Multiplicity of the part `i`.
    pub fn m(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == i).count() as u32
    }

    pub fn min_part(&self) -> Option<u32> {
        self.parts.last().copied()
    }

    /// Distinct parts in decreasing order.
    pub fn distinct_parts(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.parts.clone();
        out.dedup();
        out
    }

    /// `z = prod_i i^{m_i} m_i!`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for p in self.distinct_parts() {
            let m = self.m(p);
            for j in 1..=m {
                z *= BigInt::from(p) * BigInt::from(j);
            }
        }
        z
    }

    pub fn n1(&self) -> i64 {
        self.size() as i64 + self.length() as i64
    }

    pub fn n2(&self) -> i64 {
        self.size() as i64 - self.length() as i64
    }

    pub fn n3(&self) -> i64 {
        self.n2() + self.m(1) as i64
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// `self ∪ other` as multisets.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::from_unsorted(parts)
    }

    /// `self ∪ (r)`.
    pub fn with_part(&self, r: u32) -> Partition {
        let mut parts = self.parts.clone();
        let pos = parts.iter().position(|&p| p < r).unwrap_or(parts.len());
        if r > 0 {
            parts.insert(pos, r);
        }
        Partition { parts }
    }

    /// `self ∖ (r)`: removes one part equal to `r`.
    pub fn without_part(&self, r: u32) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == r)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// `self↓r`: replaces one part equal to `r` by `r - 1`.
    pub fn lowered(&self, r: u32) -> Option<Partition> {
        let pos = self.parts.iter().rposition(|&p| p == r)?;
        let mut parts = self.parts.clone();
        parts[pos] -= 1;
        if parts[pos] == 0 {
            parts.remove(pos);
        }
        Some(Partition { parts })
    }

    /// The partition with all parts equal to 1 erased.
    pub fn without_ones(&self) -> Partition {
        Partition {
            parts: self.parts.iter().copied().filter(|&p| p > 1).collect(),
        }
    }

    /// `self 1^i`.
    pub fn with_ones(&self, i: u32) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat(1).take(i as usize));
        Partition { parts }
    }

    /// Adds `k` to every part.
    pub fn shifted(&self, k: i64) -> Partition {
        Partition::from_unsorted(
            self.parts
                .iter()
                .map(|&p| (p as i64 + k).max(0) as u32)
                .collect(),
        )
    }

    /// Length of row `i` (1-based), zero past the end.
    pub fn row(&self, i: u32) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i as usize - 1).copied().unwrap_or(0)
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.row >= 1 && c.col >= 1 && self.row(c.row) >= c.col
    }

    /// Whether the diagram of `other` is contained in the diagram of `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length()
            && other
                .parts
                .iter()
                .zip(self.parts.iter())
                .all(|(a, b)| a <= b)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| Cell::new(i as u32 + 1, j)))
    }

    pub fn arm(&self, c: Cell) -> u32 {
        self.row(c.row) - c.col
    }

    pub fn leg(&self, c: Cell) -> u32 {
        self.parts[c.row as usize..]
            .iter()
            .take_while(|&&p| p >= c.col)
            .count() as u32
    }

    /// The partition obtained by adding the cell `c`, if that is a valid diagram.
    pub fn add_cell(&self, c: Cell) -> Option<Partition> {
        let r = c.row as usize;
        if c.col != self.row(c.row) + 1 || (r > 1 && self.row(c.row - 1) < c.col) {
            return None;
        }
        let mut parts = self.parts.clone();
        if r > parts.len() {
            parts.push(1);
        } else {
            parts[r - 1] += 1;
        }
        Some(Partition { parts })
    }

    /// The partition obtained by removing the cell `c`, if that is a valid diagram.
    pub fn remove_cell(&self, c: Cell) -> Option<Partition> {
        if !self.contains_cell(c) || c.col != self.row(c.row) || self.row(c.row + 1) >= c.col {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[c.row as usize - 1] -= 1;
        if parts[c.row as usize - 1] == 0 {
            parts.pop();
        }
        Some(Partition { parts })
    }

    /// Dominance order: `self >= other` when every partial sum dominates.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.parts.len().max(other.parts.len()) {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| PartitionError::Syntax(s.to_string()))?
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let raw: Vec<i64> = inner
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| PartitionError::Syntax(s.to_string()))?;
        if raw.iter().any(|&p| p <= 0 || p > u32::MAX as i64) {
            return Err(PartitionError::NonPositive(raw));
        }
        if raw.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(raw));
        }
        Ok(Partition {
            parts: raw.into_iter().map(|p| p as u32).collect(),
        })
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse-lexicographic order, from `(n)` down to `(1^n)`.
pub fn enumerate(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n` with every part at least `min_part`, reverse-lexicographic.
pub fn enumerate_min_part(n: u32, min_part: u32) -> Vec<Partition> {
    enumerate(n)
        .into_iter()
        .filter(|p| p.min_part().map_or(true, |m| m >= min_part))
        .collect()
}

/// The hook products of a diagram at a rational parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct HookProducts {
    /// `prod (alpha a + l + 1)`
    pub c: Q,
    /// `prod (alpha a + l + alpha)`
    pub c_prime: Q,
    /// `c * c_prime`
    pub j: Q,
}

pub fn hook_products(lambda: &Partition, alpha: &Q) -> HookProducts {
    let mut c = Q::one();
    let mut c_prime = Q::one();
    for cell in lambda.cells() {
        let a = q_int(lambda.arm(cell) as i64);
        let l = q_int(lambda.leg(cell) as i64);
        c *= alpha * &a + &l + Q::one();
        c_prime *= alpha * &a + &l + alpha;
    }
    let j = &c * &c_prime;
    HookProducts { c, c_prime, j }
}

/// The multiset of anisotropic contents of the boxes of `lambda`.
pub fn content_alphabet(lambda: &Partition, field: &AlphaField) -> Vec<QuadExt> {
    lambda.cells().map(|c| c.aniso_content(field)).collect()
}

/// Addable and removable boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corners {
    /// Boxes whose addition gives a partition of `|lambda| + 1`, top row first.
    pub addable: Vec<Cell>,
    /// Boxes whose removal gives a partition of `|lambda| - 1`, top row first.
    pub removable: Vec<Cell>,
}

pub fn corners(lambda: &Partition) -> Corners {
    let l = lambda.length();
    let mut addable = Vec::with_capacity(l as usize + 1);
    let mut removable = Vec::with_capacity(l as usize);
    for i in 1..=l + 1 {
        let len = lambda.row(i);
        if i == 1 || lambda.row(i - 1) > len {
            addable.push(Cell::new(i, len + 1));
        }
        if i <= l && len > lambda.row(i + 1) {
            removable.push(Cell::new(i, len));
        }
    }
    Corners { addable, removable }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate(0), vec![Partition::empty()]);
        assert_eq!(enumerate(4).len(), 5);
        assert_eq!(
            enumerate(4),
            vec![
                Partition::of(&[4]),
                Partition::of(&[3, 1]),
                Partition::of(&[2, 2]),
                Partition::of(&[2, 1, 1]),
                Partition::of(&[1, 1, 1, 1]),
            ]
        );
    }

    #[test]
    fn text_round_trip() {
        for s in ["[]", "[1]", "[4,3,1]"] {
            assert_eq!(s.parse::<Partition>().unwrap().to_string(), s);
        }
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("[0]".parse::<Partition>().is_err());
        assert!("4,3".parse::<Partition>().is_err());
        assert!("[a]".parse::<Partition>().is_err());
    }

    #[test]
    fn z_and_statistics() {
        let mu = Partition::of(&[2, 2, 1]);
        assert_eq!(mu.z(), BigInt::from(8));
        assert_eq!(Partition::ones(4).z(), BigInt::from(24));
        assert_eq!(mu.n1(), 8);
        assert_eq!(mu.n2(), 2);
        assert_eq!(mu.n3(), 3);
        assert_eq!(mu.conjugate(), Partition::of(&[3, 2]));
    }

    #[test]
    fn part_surgery() {
        let mu = Partition::of(&[3, 2, 2]);
        assert_eq!(mu.lowered(2), Some(Partition::of(&[3, 2, 1])));
        assert_eq!(mu.lowered(3), Some(Partition::of(&[2, 2, 2])));
        assert_eq!(Partition::of(&[1]).lowered(1), Some(Partition::empty()));
        assert_eq!(mu.without_part(2), Some(Partition::of(&[3, 2])));
        assert_eq!(mu.without_part(1), None);
        assert_eq!(mu.with_part(2), Partition::of(&[3, 2, 2, 2]));
        assert_eq!(mu.with_part(4), Partition::of(&[4, 3, 2, 2]));
        assert_eq!(
            Partition::of(&[3, 1, 1]).without_ones(),
            Partition::of(&[3])
        );
    }

    #[test]
    fn hooks_of_small_shapes() {
        let a = q_int(3);
        assert_eq!(hook_products(&Partition::of(&[1]), &a).j, a);
        // j_(2) = 2 a^2 (a + 1), j_(1,1) = 2 a (a + 1)
        assert_eq!(hook_products(&Partition::of(&[2]), &a).j, q_int(2 * 9 * 4));
        assert_eq!(
            hook_products(&Partition::of(&[1, 1]), &a).j,
            q_int(2 * 3 * 4)
        );
    }

    #[test]
    fn corner_examples() {
        let c = corners(&Partition::empty());
        assert_eq!(c.addable, vec![Cell::new(1, 1)]);
        assert!(c.removable.is_empty());

        let c = corners(&Partition::of(&[1]));
        assert_eq!(c.addable, vec![Cell::new(1, 2), Cell::new(2, 1)]);
        assert_eq!(c.removable, vec![Cell::new(1, 1)]);

        // The diagram with rows 4, 4, 2: inner contents {-3, 0, 4}, outer {-1, 2}.
        let c = corners(&Partition::of(&[4, 4, 2]));
        let mut inner: Vec<i64> = c.addable.iter().map(Cell::content).collect();
        inner.sort();
        assert_eq!(inner, vec![-3, 0, 4]);
        let mut outer: Vec<i64> = c.removable.iter().map(|b| b.content()).collect();
        outer.sort();
        assert_eq!(outer, vec![-1, 2]);

        // (4,3,1) has four addable and three removable boxes.
        let c = corners(&Partition::of(&[4, 3, 1]));
        let mut inner: Vec<i64> = c.addable.iter().map(Cell::content).collect();
        inner.sort();
        assert_eq!(inner, vec![-3, -1, 2, 4]);
        let mut outer: Vec<i64> = c.removable.iter().map(|b| b.content()).collect();
        outer.sort();
        assert_eq!(outer, vec![-2, 1, 3]);
    }

    #[test]
    fn dominance() {
        assert!(Partition::of(&[3, 1]).dominates(&Partition::of(&[2, 2])));
        assert!(!Partition::of(&[2, 2]).dominates(&Partition::of(&[3, 1])));
        assert!(!Partition::of(&[3, 3]).dominates(&Partition::of(&[4, 1, 1])));
        assert!(!Partition::of(&[4, 1, 1]).dominates(&Partition::of(&[3, 3])));
    }
}
