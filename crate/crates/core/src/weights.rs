//! Integer weights of GL(n), partitions, Littlewood–Richardson coefficients and
//! the Weyl dimension formula.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-increasing sequence of integers: a dominant weight of GL(n), or the
/// label of a Schur functor of a rank-n bundle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntWeight(Vec<i64>);

impl IntWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyWeight);
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotNonIncreasing(entries));
        }
        Ok(Self(entries))
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![0; len.max(1)])
    }

    /// Pads a partition with zeros to the given length.
    pub fn from_partition(p: &Partition, len: usize) -> Result<Self> {
        if p.len() > len {
            return Err(Error::LengthMismatch { expected: len, found: p.len() });
        }
        let mut v: Vec<i64> = p.parts().iter().map(|&x| x as i64).collect();
        v.resize(len, 0);
        Self::new(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn shifted(&self, c: i64) -> Self {
        Self(self.0.iter().map(|x| x + c).collect())
    }

    /// Weight of the dual representation: negated and reversed.
    pub fn dual(&self) -> Self {
        Self(self.0.iter().rev().map(|x| -x).collect())
    }

    /// The partition this weight represents, if all entries are non-negative.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.0.iter().any(|&x| x < 0) {
            return None;
        }
        Some(Partition::from_sorted(self.0.iter().map(|&x| x as usize).collect()))
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for IntWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for IntWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntWeight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        IntWeight::new(v).map_err(serde::de::Error::custom)
    }
}

/// A partition with trailing zeros trimmed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|&x| x < 0) {
            return Err(Error::NegativePart(parts));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotNonIncreasing(parts));
        }
        Ok(Self::from_sorted(parts.into_iter().map(|x| x as usize).collect()))
    }

    fn from_sorted(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// Conjugate partition.
pub fn transpose(p: &Partition) -> Partition {
    let cols = p.part(0);
    Partition((0..cols).map(|j| p.0.iter().take_while(|&&r| r > j).count()).collect())
}

/// Littlewood–Richardson coefficients c^λ_{μν}, by enumerating LR tableaux of
/// shape λ/μ and content ν.
pub fn lr_coefficients(mu: &Partition, nu: &Partition) -> BTreeMap<Partition, u64> {
    let rows = mu.len() + nu.len();
    let mut shape: Vec<usize> = (0..rows).map(|i| mu.part(i)).collect();
    // counts[r][label]: boxes with that label in row r
    let mut counts = vec![vec![0usize; nu.len()]; rows];
    let mut out = BTreeMap::new();
    add_strips(nu, 0, &mut shape, &mut counts, &mut out);
    out
}

fn add_strips(
    nu: &Partition,
    label: usize,
    shape: &mut Vec<usize>,
    counts: &mut Vec<Vec<usize>>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if label == nu.len() {
        if is_lattice(counts) {
            *out.entry(Partition::from_sorted(shape.clone())).or_insert(0) += 1;
        }
        return;
    }
    let before = shape.clone();
    place_row(nu, label, label, nu.part(label), &before, shape, counts, out);
}

/// Distributes `left` boxes labelled `label` over rows `row..`, forming a
/// horizontal strip on top of `before`.
#[allow(clippy::too_many_arguments)]
fn place_row(
    nu: &Partition,
    label: usize,
    row: usize,
    left: usize,
    before: &[usize],
    shape: &mut Vec<usize>,
    counts: &mut Vec<Vec<usize>>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if left == 0 {
        add_strips(nu, label + 1, shape, counts, out);
        return;
    }
    if row == shape.len() {
        return;
    }
    // Horizontal strip: new boxes of row r stay weakly left of the old end of row r-1.
    let cap = if row == 0 { left } else { (before[row - 1] - before[row]).min(left) };
    for k in (0..=cap).rev() {
        shape[row] += k;
        counts[row][label] += k;
        place_row(nu, label, row + 1, left - k, before, shape, counts, out);
        shape[row] -= k;
        counts[row][label] -= k;
    }
}

/// Reading rows top to bottom, each right to left (largest label first), every
/// prefix must contain at least as many `i` as `i+1`.
fn is_lattice(counts: &[Vec<usize>]) -> bool {
    let labels = counts.first().map_or(0, Vec::len);
    let mut seen = vec![0usize; labels];
    for row in counts {
        for label in (0..labels).rev() {
            seen[label] += row[label];
            if label > 0 && seen[label] > seen[label - 1] {
                // Within a row the smaller labels are read later, so only the
                // count of `label - 1` seen before this row may be compared.
                return false;
            }
        }
    }
    true
}

/// Dimension of the irreducible GL(n)-module of highest weight λ.
pub fn weyl_dim(lambda: &IntWeight, n: usize) -> Result<BigUint> {
    if lambda.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: lambda.len() });
    }
    let l = lambda.entries();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigInt::from(l[i] - l[j] + (j - i) as i64);
            den *= BigInt::from((j - i) as i64);
        }
    }
    debug_assert!(!num.is_negative());
    Ok((num / den).magnitude().clone())
}
