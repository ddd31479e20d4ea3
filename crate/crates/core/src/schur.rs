//! Decompositions of Schur functors applied to homogeneous bundles: rank-2
//! Clebsch–Gordan and plethysm, exterior powers of Λ²U, and two-column Schur
//! functors of Λ²U.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::weights::{lr_coefficients, transpose, weyl_dim, IntWeight, Partition};

/// A formal direct sum of irreducible bundles with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurExpr<L: Ord = IntWeight> {
    terms: BTreeMap<L, u64>,
}

impl<L: Ord> Default for SchurExpr<L> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<L: Ord + Clone> SchurExpr<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(label: L) -> Self {
        let mut e = Self::new();
        e.add(label, 1);
        e
    }

    pub fn add(&mut self, label: L, mult: u64) {
        if mult > 0 {
            *self.terms.entry(label).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, label: &L) -> u64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<L, u64> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, u64)> {
        self.terms.iter().map(|(l, &m)| (l, m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map_labels<M: Ord + Clone>(&self, mut f: impl FnMut(&L) -> M) -> SchurExpr<M> {
        let mut out = SchurExpr::new();
        for (l, m) in self.iter() {
            out.add(f(l), m);
        }
        out
    }

    /// Total rank, given the rank of each irreducible summand.
    pub fn rank_with(&self, mut dim: impl FnMut(&L) -> BigUint) -> BigUint {
        self.iter().map(|(l, m)| dim(l) * BigUint::from(m)).sum()
    }
}

impl<L: Ord + Clone> FromIterator<(L, u64)> for SchurExpr<L> {
    fn from_iter<I: IntoIterator<Item = (L, u64)>>(iter: I) -> Self {
        let mut e = Self::new();
        for (l, m) in iter {
            e.add(l, m);
        }
        e
    }
}

impl<L: Ord + Serialize> Serialize for SchurExpr<L> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a, L> {
            label: &'a L,
            multiplicity: u64,
        }
        s.collect_seq(self.terms.iter().map(|(label, &multiplicity)| Term { label, multiplicity }))
    }
}

impl<L: Ord + fmt::Display> fmt::Display for SchurExpr<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, &m)| if m == 1 { format!("S{l}") } else { format!("{m}·S{l}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Label of Σ^α Q ⊗ Σ^β S on a Grassmannian.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BundleLabel {
    pub quotient: IntWeight,
    pub sub: IntWeight,
}

impl fmt::Display for BundleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{}]", self.quotient, self.sub)
    }
}

/// Rank of Σ^{(a,b)} on a rank-2 bundle.
pub fn rank2_dim(w: &IntWeight) -> u64 {
    let e = w.entries();
    (e[0] - e[1] + 1) as u64
}

fn check_rank2(w: &IntWeight) -> Result<(i64, i64)> {
    match *w.entries() {
        [a, b] => Ok((a, b)),
        _ => Err(Error::NotRankTwo(w.entries().to_vec())),
    }
}

fn rank2_label(a: i64, b: i64) -> IntWeight {
    IntWeight::new(vec![a, b]).expect("a >= b")
}

/// Characters of GL(2)-modules, as Laurent polynomials in two variables.
type Char2 = BTreeMap<(i64, i64), i64>;

fn irreducible_char(a: i64, b: i64) -> impl Iterator<Item = (i64, i64)> {
    (0..=a - b).map(move |j| (a - j, b + j))
}

fn expr_weights(e: &SchurExpr) -> Result<Vec<(i64, i64)>> {
    let mut out = Vec::new();
    for (w, m) in e.iter() {
        let (a, b) = check_rank2(w)?;
        for _ in 0..m {
            out.extend(irreducible_char(a, b));
        }
    }
    Ok(out)
}

/// Splits a character into irreducibles by repeatedly removing the highest weight.
fn peel(mut ch: Char2) -> Result<SchurExpr> {
    ch.retain(|_, v| *v != 0);
    let mut out = SchurExpr::new();
    while let Some((&(a, b), &m)) = ch.iter().next_back() {
        if m < 0 || a < b {
            return Err(Error::NegativeMultiplicity { label: format!("({a},{b})"), mult: m });
        }
        for w in irreducible_char(a, b) {
            *ch.entry(w).or_insert(0) -= m;
        }
        ch.retain(|_, v| *v != 0);
        out.add(rank2_label(a, b), m as u64);
    }
    Ok(out)
}

/// Tensor product of two rank-2 expressions by the Clebsch–Gordan rule.
pub fn rank2_tensor(e1: &SchurExpr, e2: &SchurExpr) -> Result<SchurExpr> {
    let mut out = SchurExpr::new();
    for (w1, m1) in e1.iter() {
        let (a, b) = check_rank2(w1)?;
        for (w2, m2) in e2.iter() {
            let (c, d) = check_rank2(w2)?;
            for j in 0..=(a - b).min(c - d) {
                out.add(rank2_label(a + c - j, b + d + j), m1 * m2);
            }
        }
    }
    Ok(out)
}

/// Λⁱ of an arbitrary rank-2 expression.
pub fn rank2_ext_power_of(e: &SchurExpr, i: usize) -> Result<SchurExpr> {
    let weights = expr_weights(e)?;
    if i > weights.len() {
        return Err(Error::PowerOutOfRange { i, max: weights.len() });
    }
    // e_k of the weights, degree by degree
    let mut elementary: Vec<Char2> = vec![Char2::new(); i + 1];
    elementary[0].insert((0, 0), 1);
    for &(x, y) in &weights {
        for k in (1..=i).rev() {
            let prev: Vec<_> = elementary[k - 1].iter().map(|(&(p, q), &c)| ((p + x, q + y), c)).collect();
            for (w, c) in prev {
                *elementary[k].entry(w).or_insert(0) += c;
            }
        }
    }
    peel(elementary.swap_remove(i))
}

/// Sⁱ of an arbitrary rank-2 expression.
pub fn rank2_sym_power_of(e: &SchurExpr, i: usize) -> Result<SchurExpr> {
    let weights = expr_weights(e)?;
    // h_k of the weights, degree by degree
    let mut complete: Vec<Char2> = vec![Char2::new(); i + 1];
    complete[0].insert((0, 0), 1);
    for &(x, y) in &weights {
        for k in 1..=i {
            let prev: Vec<_> = complete[k - 1].iter().map(|(&(p, q), &c)| ((p + x, q + y), c)).collect();
            for (w, c) in prev {
                *complete[k].entry(w).or_insert(0) += c;
            }
        }
    }
    peel(complete.swap_remove(i))
}

/// Λⁱ(S^d T) for a rank-2 bundle T.
pub fn rank2_ext_power(d: usize, i: usize) -> Result<SchurExpr> {
    if i > d + 1 {
        return Err(Error::PowerOutOfRange { i, max: d + 1 });
    }
    rank2_ext_power_of(&SchurExpr::single(rank2_label(d as i64, 0)), i)
}

/// Sⁱ(S^d T) for a rank-2 bundle T.
pub fn rank2_sym_power(d: usize, i: usize) -> Result<SchurExpr> {
    rank2_sym_power_of(&SchurExpr::single(rank2_label(d as i64, 0)), i)
}

/// Dual of a rank-2 expression.
pub fn rank2_dual(e: &SchurExpr) -> SchurExpr {
    e.map_labels(IntWeight::dual)
}

/// The labelling partition d(λ) attached to λ = (λ₁ ≥ … ≥ λ_c ≥ c).
fn d_of(lambda: &[usize]) -> Partition {
    let c = lambda.len();
    let mut parts: Vec<i64> = lambda.iter().map(|&x| x as i64).collect();
    for j in (1..=c).rev() {
        let count = if j == c { lambda[c - 1] + 1 - c } else { lambda[j - 1] - lambda[j] };
        parts.extend(std::iter::repeat_n(j as i64, count));
    }
    Partition::new(parts).expect("d(λ) is a partition")
}

/// Partitions of `total` into exactly `c` parts, each at least `min`.
fn partitions_exact(total: usize, c: usize, min: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, slots: usize, cap: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if left < slots * min {
            return;
        }
        let hi = cap.min(left - (slots - 1) * min);
        for x in (min..=hi).rev() {
            prefix.push(x);
            rec(left - x, slots - 1, x, min, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, c, total, min, &mut Vec::new(), &mut out);
    out
}

/// Λᵃ(Λ²U) for a bundle U of rank `rank_u`, as a sum of Σ^μ U. Labels with
/// more than `rank_u` rows vanish and are dropped.
pub fn ext_lambda2(a: usize, rank_u: usize) -> SchurExpr<Partition> {
    let mut out = SchurExpr::new();
    if a == 0 {
        out.add(Partition::empty(), 1);
        return out;
    }
    let mut c = 1;
    while c * (c + 1) / 2 <= a {
        for lambda in partitions_exact(a + c * (c - 1) / 2, c, c) {
            let d = d_of(&lambda);
            if d.len() <= rank_u {
                out.add(d, 1);
            }
        }
        c += 1;
    }
    out
}

/// Littlewood–Richardson product, keeping only labels with at most `rank`
/// rows.
pub fn lr_product(e1: &SchurExpr<Partition>, e2: &SchurExpr<Partition>, rank: usize) -> SchurExpr<Partition> {
    let mut out = SchurExpr::new();
    for (mu, m1) in e1.iter() {
        for (nu, m2) in e2.iter() {
            for (lambda, c) in lr_coefficients(mu, nu) {
                if lambda.len() <= rank {
                    out.add(lambda, c * m1 * m2);
                }
            }
        }
    }
    out
}

fn subtract(acc: &mut BTreeMap<Partition, i64>, e: &SchurExpr<Partition>) {
    for (l, m) in e.iter() {
        *acc.entry(l.clone()).or_insert(0) -= m as i64;
    }
}

/// Σ^{(a,b)'}(Λ²U) for U of rank `rank_u`, the Schur functor of the two-column
/// diagram with columns of lengths a ≥ b.
pub fn two_column_schur(a: usize, b: usize, rank_u: usize) -> Result<SchurExpr<Partition>> {
    if a < b {
        return Err(Error::Invalid(format!("two-column shape needs a >= b, got ({a},{b})")));
    }
    let mut memo = BTreeMap::new();
    two_column_rec(a, b, rank_u, &mut memo)
}

fn two_column_rec(
    a: usize,
    b: usize,
    rank_u: usize,
    memo: &mut BTreeMap<(usize, usize), SchurExpr<Partition>>,
) -> Result<SchurExpr<Partition>> {
    if let Some(e) = memo.get(&(a, b)) {
        return Ok(e.clone());
    }
    let product = lr_product(&ext_lambda2(a, rank_u), &ext_lambda2(b, rank_u), rank_u);
    let mut acc: BTreeMap<Partition, i64> = product.iter().map(|(l, m)| (l.clone(), m as i64)).collect();
    for j in 1..=b {
        let lower = two_column_rec(a + j, b - j, rank_u, memo)?;
        subtract(&mut acc, &lower);
    }
    let mut out = SchurExpr::new();
    for (label, m) in acc {
        if m < 0 {
            return Err(Error::NegativeMultiplicity { label: label.to_string(), mult: m });
        }
        out.add(label, m as u64);
    }
    memo.insert((a, b), out.clone());
    Ok(out)
}

/// The shapes (a,b) with a+b = t, a ≥ b ≥ 0, indexing the summands
/// Σ^{(a,b)'}(Λ²U) ⊠ Σ^{(a,b)}L of Λᵗ(Λ²U ⊠ L).
pub fn koszul_box_terms(t: usize) -> Vec<(usize, usize)> {
    (0..=t / 2).rev().map(|b| (t - b, b)).rev().collect()
}

/// The conjugate partition of the two-row shape (a,b).
pub fn two_column_shape(a: usize, b: usize) -> Partition {
    transpose(&Partition::new(vec![a as i64, b as i64]).expect("a >= b >= 0"))
}

/// Rank of Σ^λ U for a polynomial label on a rank-n bundle, zero if λ is too
/// long.
pub fn partition_dim(p: &Partition, n: usize) -> BigUint {
    match IntWeight::from_partition(p, n) {
        Ok(w) => weyl_dim(&w, n).expect("length n"),
        Err(_) => BigUint::default(),
    }
}
