//! Jacobian rings of hypersurfaces and the Griffiths residue computation of
//! their primitive Hodge numbers.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poly::{monomial_index, monomials, HomogeneousForm};
use crate::error::{Error, Result};
use crate::field::{is_prime, PrimeField};
use crate::modp::{self, SparseRow};

/// Dimensions of a graded vector space, indexed by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub dims: BTreeMap<usize, u64>,
}

impl GradedDims {
    pub fn get(&self, degree: i64) -> u64 {
        usize::try_from(degree).ok().and_then(|d| self.dims.get(&d).copied()).unwrap_or(0)
    }
}

/// Hilbert series of the Jacobian ring of a generic degree-`d` form in
/// `n_vars` variables: `((1 - t^(d-1)) / (1 - t))^n_vars`.
pub fn jacobian_hilbert_series(n_vars: usize, d: usize) -> GradedDims {
    assert!(d >= 2);
    let mut coeffs = vec![1u64];
    for _ in 0..n_vars {
        let mut next = vec![0u64; coeffs.len() + d - 2];
        for (i, &c) in coeffs.iter().enumerate() {
            for slot in &mut next[i..i + d - 1] {
                *slot = slot.checked_add(c).expect("Hilbert series coefficient overflow");
            }
        }
        coeffs = next;
    }
    GradedDims { dims: coeffs.into_iter().enumerate().collect() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeEntry {
    pub p: usize,
    pub q: usize,
    /// Degree of the Jacobian ring piece, negative when the piece is empty.
    pub jacobian_degree: i64,
    pub primitive: u64,
    pub value: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypersurfaceHodge {
    pub ambient_dim: usize,
    pub degree: usize,
    pub jacobian: GradedDims,
    /// Middle-dimensional Hodge numbers h^{p,q}, p + q = ambient_dim - 1, p descending.
    pub table: Vec<HodgeEntry>,
}

impl HypersurfaceHodge {
    pub fn h(&self, p: usize, q: usize) -> Option<u64> {
        self.table.iter().find(|e| e.p == p && e.q == q).map(|e| e.value)
    }
}

/// Middle Hodge numbers of a smooth degree-`d` hypersurface in P^N by
/// Griffiths residues: h^{N-k,k-1}_prim = dim R_{kd-N-1}, plus the hyperplane
/// class in the middle (p,p) slot when N-1 is even.
pub fn hypersurface_hodge(ambient_dim: usize, d: usize) -> Result<HypersurfaceHodge> {
    if d < 2 || ambient_dim < 1 {
        return Err(Error::Invalid(format!("need N >= 1 and d >= 2, got N={ambient_dim}, d={d}")));
    }
    let n = ambient_dim;
    let jacobian = jacobian_hilbert_series(n + 1, d);
    let table = (1..=n)
        .map(|k| {
            let jacobian_degree = (k * d) as i64 - n as i64 - 1;
            let primitive = jacobian.get(jacobian_degree);
            let (p, q) = (n - k, k - 1);
            let value = primitive + u64::from(p == q);
            HodgeEntry { p, q, jacobian_degree, primitive, value }
        })
        .collect();
    Ok(HypersurfaceHodge { ambient_dim, degree: d, jacobian, table })
}

/// Rows `x^m * (df/dx_i)` spanning the degree-`degree` part of the Jacobian
/// ideal, as sparse vectors over the degree-`degree` monomials.
pub fn jacobian_ideal_rows(field: &PrimeField, f: &HomogeneousForm<u64>, degree: usize) -> Vec<SparseRow> {
    let n = f.n_vars();
    let dd = f.degree() - 1;
    if degree < dd {
        return Vec::new();
    }
    let target = monomial_index(&monomials(n, degree));
    let partials: Vec<_> = (0..n).map(|i| f.partial(field, i)).collect();
    let mut rows = Vec::new();
    for mult in monomials(n, degree - dd) {
        for g in &partials {
            let row: SparseRow = g
                .terms()
                .map(|(e, &c)| {
                    let prod: Vec<u32> = e.iter().zip(&mult).map(|(a, b)| a + b).collect();
                    (target[&prod], c)
                })
                .collect();
            rows.push(row);
        }
    }
    rows
}

/// Dimension of the degree-`degree` piece of the Jacobian ring of `f` over F_p.
pub fn jacobian_piece_dim(field: &PrimeField, f: &HomogeneousForm<u64>, degree: usize) -> usize {
    let total = monomials(f.n_vars(), degree).len();
    total - modp::sparse_rank(field, &jacobian_ideal_rows(field, f, degree), total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PhiRank {
    /// Rank of u -> u(f) from End(V) to S^4 V*.
    pub rank: usize,
    /// dim ker of the dual map S^4 V -> End(V).
    pub psi_kernel: usize,
    /// dim coker of the dual map.
    pub psi_cokernel: usize,
}

/// Matrix of the Lie algebra action `u -> u(f)` of End(V) on a form: one row
/// per elementary matrix E_ij, acting as the derivation x_i d/dx_j.
pub fn phi_matrix(field: &PrimeField, f: &HomogeneousForm<u64>) -> Vec<SparseRow> {
    let n = f.n_vars();
    let target = monomial_index(&monomials(n, f.degree()));
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let dj = f.partial(field, j);
            let row = dj
                .terms()
                .map(|(e, &c)| {
                    let mut e = e.clone();
                    e[i] += 1;
                    (target[&e], c)
                })
                .collect();
            rows.push(row);
        }
    }
    rows
}

/// Rank of φ_f for an octic quartic (8 variables, degree 4).
pub fn griffiths_phi_rank(field: &PrimeField, f: &HomogeneousForm<u64>) -> Result<PhiRank> {
    f.check_shape(8, 4)?;
    let cols = monomials(8, 4).len();
    let rank = modp::sparse_rank(field, &phi_matrix(field, f), cols);
    Ok(PhiRank { rank, psi_kernel: cols - rank, psi_cokernel: 64 - rank })
}

/// Corank of β_f : S^5 V ⊗ V* -> S^8 V, multiplication of quintics with the
/// partial derivatives of an octic quartic.
pub fn griffiths_beta_corank(field: &PrimeField, f: &HomogeneousForm<u64>) -> Result<usize> {
    f.check_shape(8, 4)?;
    Ok(jacobian_piece_dim(field, f, 8))
}

/// A prime drawn uniformly from `lo..hi` by a seeded generator.
pub fn prime_from_seed(seed: u64, lo: u64, hi: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let candidate = rng.gen_range(lo..hi);
        if is_prime(candidate) && candidate >= 5 {
            return candidate;
        }
    }
}

/// The default prime range for finite-field rank certificates.
pub const PRIME_RANGE: (u64, u64) = (10_000, 100_000);
