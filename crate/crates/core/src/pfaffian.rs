//! Pfaffians, rank strata of skew forms, constant-rank pencils and their
//! kernel hulls, and the degree constants of Pfaffian Fano schemes.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_integer::binomial;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{mat_mul, nullspace, rank, transpose, Matrix};

/// A skew-symmetric matrix over a field.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix<E> {
    entries: Matrix<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> SkewMatrix<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, entries: Matrix<E>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::NotSkew);
        }
        for i in 0..n {
            for j in 0..=i {
                if entries[i][j] != field.neg(&entries[j][i]) {
                    return Err(Error::NotSkew);
                }
            }
        }
        Ok(Self { entries })
    }

    /// The skew matrix with upper-triangular entries `upper(i, j)`, i < j.
    pub fn from_upper<F: Field<Elem = E>>(field: &F, size: usize, mut upper: impl FnMut(usize, usize) -> E) -> Self {
        let mut m = vec![vec![field.zero(); size]; size];
        for i in 0..size {
            for j in i + 1..size {
                let v = upper(i, j);
                m[j][i] = field.neg(&v);
                m[i][j] = v;
            }
        }
        Self { entries: m }
    }

    pub fn random<R: Rng>(field: &PrimeField, size: usize, rng: &mut R) -> SkewMatrix<u64> {
        SkewMatrix::from_upper(field, size, |_, _| rng.gen_range(0..field.modulus()))
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Matrix<E> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i][j]
    }

    /// B M Bᵀ.
    pub fn congruent<F: Field<Elem = E>>(&self, field: &F, b: &[Vec<E>]) -> Self {
        let bm = mat_mul(field, b, &self.entries);
        Self { entries: mat_mul(field, &bm, &transpose(b)) }
    }

    pub fn combine<F: Field<Elem = E>>(&self, field: &F, a: &E, other: &Self, b: &E) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| field.add(&field.mul(a, x), &field.mul(b, y))).collect())
            .collect();
        Self { entries }
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        rank(field, &self.entries)
    }
}

/// Pfaffian of the principal submatrix on `indices`, by expansion along the
/// first row with memoization over index subsets.
pub fn principal_pfaffian<F: Field>(field: &F, m: &SkewMatrix<F::Elem>, indices: &[usize]) -> Result<F::Elem> {
    if indices.len() % 2 == 1 {
        return Err(Error::OddSize(indices.len()));
    }
    if indices.len() > 64 {
        return Err(Error::Invalid("Pfaffians are limited to 64 rows".into()));
    }
    let mut memo = HashMap::new();
    let full = if indices.len() == 64 { u64::MAX } else { (1u64 << indices.len()) - 1 };
    Ok(pf_rec(field, m, indices, full, &mut memo))
}

fn pf_rec<F: Field>(
    field: &F,
    m: &SkewMatrix<F::Elem>,
    idx: &[usize],
    set: u64,
    memo: &mut HashMap<u64, F::Elem>,
) -> F::Elem {
    if set == 0 {
        return field.one();
    }
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let first = set.trailing_zeros() as usize;
    let rest = set & !(1u64 << first);
    let mut total = field.zero();
    let mut bits = rest;
    let mut position = 0;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = m.get(idx[first], idx[j]);
        if !field.is_zero(a) {
            let sub = pf_rec(field, m, idx, rest & !(1u64 << j), memo);
            let term = field.mul(a, &sub);
            total = if position % 2 == 0 { field.add(&total, &term) } else { field.sub(&total, &term) };
        }
        position += 1;
    }
    memo.insert(set, total.clone());
    total
}

pub fn pfaffian<F: Field>(field: &F, m: &SkewMatrix<F::Elem>) -> Result<F::Elem> {
    let all: Vec<usize> = (0..m.size()).collect();
    principal_pfaffian(field, m, &all)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::forms::index_tuples(n, k)
}

/// Whether M lies in Pf_k, the locus of rank ≤ 2n−2k, tested by the vanishing
/// of all principal Pfaffian minors of size 2(n−k+1).
pub fn pfaffian_rank_stratum<F: Field>(field: &F, m: &SkewMatrix<F::Elem>, k: usize) -> Result<bool> {
    let size = m.size();
    if size % 2 == 1 {
        return Err(Error::OddSize(size));
    }
    let n = size / 2;
    if k == 0 || k >= n {
        return Err(Error::StratumOutOfRange { k, max: n.saturating_sub(1) });
    }
    for s in subsets(size, 2 * (n - k + 1)) {
        if !field.is_zero(&principal_pfaffian(field, m, &s)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A line {A + tB} of skew forms over F_p.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewPencil {
    pub a: SkewMatrix<u64>,
    pub b: SkewMatrix<u64>,
}

impl SkewPencil {
    pub fn new(field: &PrimeField, a: SkewMatrix<u64>, b: SkewMatrix<u64>) -> Result<Self> {
        if a.size() != b.size() {
            return Err(Error::LengthMismatch { expected: a.size(), found: b.size() });
        }
        let flat = |m: &SkewMatrix<u64>| m.entries().iter().flatten().copied().collect::<Vec<u64>>();
        if rank(field, &[flat(&a), flat(&b)]) < 2 {
            return Err(Error::DegeneratePencil);
        }
        Ok(Self { a, b })
    }

    pub fn at(&self, field: &PrimeField, t: u64) -> SkewMatrix<u64> {
        self.a.combine(field, &1, &self.b, &t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullReport {
    pub constant_rank: bool,
    pub hull_dim: usize,
    /// Ranks at t = 0, …, 2n and at t = ∞.
    pub sample_ranks: Vec<usize>,
}

/// Polynomial arithmetic over F_p, coefficients lowest degree first.
fn poly_trim(mut p: Vec<u64>) -> Vec<u64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_rem(field: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let lead_inv = field.inv(b.last().expect("nonzero divisor"));
    while r.len() >= b.len() {
        let c = field.mul(r.last().expect("non-empty"), &lead_inv);
        let shift = r.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = field.sub(&r[shift + i], &field.mul(&c, &bi));
        }
        r = poly_trim(r);
    }
    r
}

fn poly_gcd(field: &PrimeField, a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    let (mut a, mut b) = (poly_trim(a), poly_trim(b));
    while !b.is_empty() {
        let r = poly_rem(field, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// Coefficients of the polynomial of degree < points.len() through the given
/// (x, y) points.
fn interpolate(field: &PrimeField, points: &[(u64, u64)]) -> Vec<u64> {
    let n = points.len();
    let mut out = vec![0u64; n];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![1u64];
        let mut denom = 1u64;
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![0u64; basis.len() + 1];
            for (k, &c) in basis.iter().enumerate() {
                next[k + 1] = field.add(&next[k + 1], &c);
                next[k] = field.sub(&next[k], &field.mul(&c, &xj));
            }
            basis = next;
            denom = field.mul(&denom, &field.sub(&xi, &xj));
        }
        let scale = field.div(&yi, &denom);
        for (k, c) in basis.iter().enumerate() {
            out[k] = field.add(&out[k], &field.mul(c, &scale));
        }
    }
    out
}

/// Whether every member of the pencil, including t = ∞, has rank exactly
/// 2n−2k over the algebraic closure, given that the sampled ranks are all at
/// most that: the principal Pfaffian minors of size 2(n−k), as polynomials in
/// t, must have no common root and not all drop degree.
fn generic_rank_certified(field: &PrimeField, pencil: &SkewPencil, n: usize, k: usize) -> Result<bool> {
    let size = 2 * (n - k);
    let degree = n - k;
    let samples: Vec<u64> = (0..=degree as u64).collect();
    let members: Vec<SkewMatrix<u64>> = samples.iter().map(|&t| pencil.at(field, t)).collect();
    let mut gcd: Vec<u64> = Vec::new();
    let mut top_degree_seen = false;
    for s in subsets(2 * n, size) {
        let points: Vec<(u64, u64)> = samples
            .iter()
            .zip(&members)
            .map(|(&t, m)| Ok((t, principal_pfaffian(field, m, &s)?)))
            .collect::<Result<_>>()?;
        let poly = poly_trim(interpolate(field, &points));
        if poly.len() == degree + 1 {
            top_degree_seen = true;
        }
        gcd = poly_gcd(field, gcd, poly);
        if gcd.len() == 1 && top_degree_seen {
            return Ok(true);
        }
    }
    Ok(gcd.len() == 1 && top_degree_seen)
}

/// Samples the pencil at 2n+1 parameters and at infinity, certifies constant
/// rank 2n−2k symbolically, and returns the dimension of the span of the
/// sampled kernels.
pub fn pencil_kernel_hull(field: &PrimeField, pencil: &SkewPencil, k: usize) -> Result<HullReport> {
    let size = pencil.a.size();
    if size % 2 == 1 {
        return Err(Error::OddSize(size));
    }
    let n = size / 2;
    if k == 0 || k >= n {
        return Err(Error::StratumOutOfRange { k, max: n.saturating_sub(1) });
    }
    let target = 2 * n - 2 * k;
    let mut members: Vec<SkewMatrix<u64>> = (0..=2 * n as u64).map(|t| pencil.at(field, t)).collect();
    members.push(pencil.b.clone());
    let sample_ranks: Vec<usize> = members.iter().map(|m| m.rank(field)).collect();
    let mut kernels: Matrix<u64> = Vec::new();
    for m in &members {
        kernels.extend(nullspace(field, m.entries(), size));
    }
    let hull_dim = rank(field, &kernels);
    let constant_rank =
        sample_ranks.iter().all(|&r| r == target) && generic_rank_certified(field, pencil, n, k)?;
    Ok(HullReport { constant_rank, hull_dim, sample_ranks })
}

fn random_invertible<R: Rng>(field: &PrimeField, size: usize, rng: &mut R) -> Matrix<u64> {
    loop {
        let g: Matrix<u64> = (0..size).map(|_| (0..size).map(|_| rng.gen_range(0..field.modulus())).collect()).collect();
        if rank(field, &g) == size {
            return g;
        }
    }
}

/// Random minimal indices ε₁, …, ε_{2k} ≥ 0 with Σ εᵢ = n − k.
fn random_minimal_indices<R: Rng>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut eps = vec![0usize; 2 * k];
    for _ in 0..n - k {
        eps[rng.gen_range(0..2 * k)] += 1;
    }
    eps
}

/// A random pencil of constant rank 2n−2k: a block sum of 2k Kronecker blocks
/// of sizes 2εᵢ+1 with random minimal indices, moved by a random congruence
/// and a random change of basis of the pencil.
pub fn random_constant_rank_pencil<R: Rng>(field: &PrimeField, n: usize, k: usize, rng: &mut R) -> Result<SkewPencil> {
    if k == 0 || k >= n {
        return Err(Error::StratumOutOfRange { k, max: n.saturating_sub(1) });
    }
    let size = 2 * n;
    let mut a = vec![vec![0u64; size]; size];
    let mut b = vec![vec![0u64; size]; size];
    let mut offset = 0;
    for eps in random_minimal_indices(n, k, rng) {
        // x_0..x_eps at offset.., y_1..y_eps after them; L(t) y_r pairs with
        // t·x_{r-1} + x_r.
        for r in 0..eps {
            let y = offset + eps + 1 + r;
            let (x_b, x_a) = (offset + r, offset + r + 1);
            b[x_b][y] = 1;
            b[y][x_b] = field.neg(&1);
            a[x_a][y] = 1;
            a[y][x_a] = field.neg(&1);
        }
        offset += 2 * eps + 1;
    }
    let g = random_invertible(field, size, rng);
    let a = SkewMatrix::new(field, a)?.congruent(field, &g);
    let b = SkewMatrix::new(field, b)?.congruent(field, &g);
    let h = random_invertible(field, 2, rng);
    let a2 = a.combine(field, &h[0][0], &b, &h[0][1]);
    let b2 = a.combine(field, &h[1][0], &b, &h[1][1]);
    SkewPencil::new(field, a2, b2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullTrials {
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub constant_rank_accepted: usize,
    pub hull_dims: BTreeMap<usize, usize>,
}

/// Runs `trials` random constant-rank pencils and tallies hull dimensions of
/// those certified to have constant rank.
pub fn hull_trials<R: Rng>(field: &PrimeField, n: usize, k: usize, trials: usize, rng: &mut R) -> Result<HullTrials> {
    let mut hull_dims = BTreeMap::new();
    let mut accepted = 0;
    for _ in 0..trials {
        let pencil = random_constant_rank_pencil(field, n, k, rng)?;
        let report = pencil_kernel_hull(field, &pencil, k)?;
        if report.constant_rank {
            accepted += 1;
            *hull_dims.entry(report.hull_dim).or_insert(0) += 1;
        }
    }
    Ok(HullTrials { n, k, trials, constant_rank_accepted: accepted, hull_dims })
}

/// d_n = (2n−2)! / (n! (n−1)!), the degree of Gr(2, n+1).
pub fn catalan_degree(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Invalid("catalan_degree needs n >= 1".into()));
    }
    let n = BigUint::from(n);
    let one = BigUint::from(1u32);
    let two = BigUint::from(2u32);
    Ok(binomial(&two * &n - &two, &n - &one) / &n)
}

/// c_n = (n² − 3n + 4) / 2.
pub fn cn_constant(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::Invalid("cn_constant needs n >= 2".into()));
    }
    let n = n as u64;
    Ok((n * n + 4 - 3 * n) / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crepancy {
    pub det_bidegree: (i64, i64),
    pub canonical_bidegree: (i64, i64),
}

/// Bidegrees on Gr(n+1, 2n) × Gr(2, Λ²W*) of det(Λ²U* ⊠ L*) and, by
/// adjunction, of the canonical bundle of its zero locus.
pub fn crepancy_bidegrees(n: usize) -> Result<Crepancy> {
    if n < 2 {
        return Err(Error::Invalid("crepancy_bidegrees needs n >= 2".into()));
    }
    let n = n as i64;
    let (w, u_rank, l_rank) = (2 * n, n + 1, 2);
    let lambda2_w = w * (w - 1) / 2;
    // ω of Gr(r, N) is O(−N)
    let omega = (-w, -lambda2_w);
    // det Λ²E = (det E)^{rank E − 1}; det(A ⊠ B) = det(A)^{rk B} ⊠ det(B)^{rk A}
    let lambda2_u_rank = u_rank * (u_rank - 1) / 2;
    let det = ((u_rank - 1) * l_rank, lambda2_u_rank);
    Ok(Crepancy { det_bidegree: det, canonical_bidegree: (omega.0 + det.0, omega.1 + det.1) })
}
