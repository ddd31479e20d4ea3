//! GL-invariants of alternating forms: 2-rank, orbit dimension, and the rank
//! of the quadratic form q_ω of a 3-form in seven variables.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{index_tuples, AltForm};
use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::linalg::{rank, Matrix};

/// Rank of the bilinear form (x, y) ↦ f(x ∧ y) on Λᵏ V, for a 2k-form f.
pub fn two_rank(f: &AltForm) -> Result<usize> {
    if f.degree() % 2 == 1 {
        return Err(Error::OddDegree(f.degree()));
    }
    let basis = index_tuples(f.space_dim(), f.degree() / 2);
    let m: Matrix<BigRational> = basis
        .iter()
        .map(|x| basis.iter().map(|y| f.value_on(&[x.as_slice(), y.as_slice()].concat())).collect())
        .collect();
    Ok(rank(&Rationals, &m))
}

/// Dimension of the GL(V)-orbit of f: the rank of X ↦ X·f on gl(V).
pub fn orbit_dim(f: &AltForm) -> usize {
    let n = f.space_dim();
    let targets = index_tuples(n, f.degree());
    let mut rows: Matrix<BigRational> = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            // E_ab sends e_b to e_a
            let row = targets
                .iter()
                .map(|t| {
                    let mut acc = BigRational::zero();
                    for k in 0..t.len() {
                        if t[k] == b {
                            let mut seq = t.clone();
                            seq[k] = a;
                            acc += f.value_on(&seq);
                        }
                    }
                    acc
                })
                .collect();
            rows.push(row);
        }
    }
    rank(&Rationals, &rows)
}

fn as_three_form(f: &AltForm, volume: &BigRational) -> Result<AltForm> {
    if f.space_dim() != 7 {
        return Err(Error::UnsupportedForm(format!("q_ω needs 7 variables, got {}", f.space_dim())));
    }
    match f.degree() {
        3 => Ok(f.clone()),
        4 => Ok(f.complement_dual(volume)),
        p => Err(Error::UnsupportedForm(format!("q_ω needs a 3- or 4-form, got degree {p}"))),
    }
}

/// Matrix of q_ω, ω ∧ (u⌟ω) ∧ (u⌟ω) = q_ω(u) Ω, with Ω = volume · e₁∧…∧e₇.
/// A 4-form is first turned into a 3-form on the dual space through the same
/// volume element.
pub fn q_matrix(f: &AltForm, volume: &BigRational) -> Result<Matrix<BigRational>> {
    if volume.is_zero() {
        return Err(Error::Invalid("volume element must be nonzero".into()));
    }
    let omega = as_three_form(f, volume)?;
    let top: Vec<usize> = (0..7).collect();
    let contractions: Vec<AltForm> = (0..7).map(|i| omega.interior(i)).collect();
    let mut m = vec![vec![BigRational::zero(); 7]; 7];
    for i in 0..7 {
        let left = omega.wedge(&contractions[i])?;
        for j in i..7 {
            let c = left.wedge(&contractions[j])?.coeff(&top) / volume;
            m[i][j] = c.clone();
            m[j][i] = c;
        }
    }
    Ok(m)
}

pub fn q_rank(f: &AltForm) -> Result<usize> {
    Ok(rank(&Rationals, &q_matrix(f, &BigRational::one())?))
}

/// A GL(7)-orbit in Λ³ or Λ⁴ of a 7-dimensional space and its invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub name: &'static str,
    pub orbit_dim: usize,
    pub two_rank: usize,
    pub q_rank: usize,
}

const fn record(name: &'static str, orbit_dim: usize, two_rank: usize, q_rank: usize) -> OrbitRecord {
    OrbitRecord { name, orbit_dim, two_rank, q_rank }
}

/// The ten orbits, each with (orbit dimension, 2-rank, rank of q_ω).
pub const ORBIT_TABLE: [OrbitRecord; 10] = [
    record("O9", 35, 21, 7),
    record("O7", 34, 18, 4),
    record("O5", 31, 16, 2),
    record("O6", 28, 16, 1),
    record("O3", 26, 12, 0),
    record("O4", 25, 12, 0),
    record("O8", 24, 15, 1),
    record("O2", 20, 10, 0),
    record("O1", 13, 6, 0),
    record("zero", 0, 0, 0),
];

/// Identifies the orbit of a 3- or 4-form in seven variables.
pub fn classify_orbit(f: &AltForm) -> Result<OrbitRecord> {
    let four = match f.degree() {
        4 => f.clone(),
        3 => f.complement_dual(&BigRational::one()),
        p => return Err(Error::UnsupportedForm(format!("orbits are classified for 3- and 4-forms, got {p}"))),
    };
    let dim = orbit_dim(f);
    let r2 = two_rank(&four)?;
    let rq = q_rank(f)?;
    ORBIT_TABLE
        .iter()
        .find(|r| (r.orbit_dim, r.two_rank, r.q_rank) == (dim, r2, rq))
        .copied()
        .ok_or(Error::NoOrbitMatch { dim, two_rank: r2, q_rank: rq })
}

#[cfg(test)]
mod tests {
    use super::super::alpha4_as_form;
    use super::*;
    use crate::linalg::determinant;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix<BigRational> {
        loop {
            let g: Matrix<BigRational> = (0..n).map(|_| (0..n).map(|_| q(rng.gen_range(-3..=3))).collect()).collect();
            if !determinant(&Rationals, &g).is_zero() {
                return g;
            }
        }
    }

    #[test]
    fn table_triples_are_distinct() {
        for (i, a) in ORBIT_TABLE.iter().enumerate() {
            for b in &ORBIT_TABLE[i + 1..] {
                assert_ne!((a.orbit_dim, a.two_rank, a.q_rank), (b.orbit_dim, b.two_rank, b.q_rank));
            }
        }
    }

    #[test]
    fn alpha4_invariants() {
        let f = alpha4_as_form();
        assert_eq!(two_rank(&f).unwrap(), 18);
        assert_eq!(orbit_dim(&f), 34);
        assert_eq!(q_rank(&f).unwrap(), 4);
        assert_eq!(classify_orbit(&f).unwrap().name, "O7");
    }

    #[test]
    fn zero_and_decomposable() {
        let z = AltForm::zero(4, 7);
        assert_eq!((orbit_dim(&z), two_rank(&z).unwrap(), q_rank(&z).unwrap()), (0, 0, 0));
        assert_eq!(classify_orbit(&z).unwrap().name, "zero");
        let d = AltForm::decomposable(7, &[0, 1, 2, 3]).unwrap();
        assert_eq!(classify_orbit(&d).unwrap(), ORBIT_TABLE[8]);
        let d3 = AltForm::decomposable(7, &[4, 5, 6]).unwrap();
        assert_eq!(classify_orbit(&d3).unwrap().name, "O1");
    }

    #[test]
    fn random_forms_are_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..3 {
            let f = AltForm::random(4, 7, 5, &mut rng);
            assert_eq!(classify_orbit(&f).unwrap().name, "O9");
            let g = AltForm::random(3, 7, 5, &mut rng);
            assert_eq!(q_rank(&g).unwrap(), 7);
            assert_eq!(classify_orbit(&g).unwrap().name, "O9");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(two_rank(&AltForm::zero(3, 7)), Err(Error::OddDegree(3))));
        assert!(q_rank(&AltForm::zero(3, 6)).is_err());
        assert!(q_rank(&AltForm::zero(2, 7)).is_err());
        assert!(classify_orbit(&AltForm::zero(2, 7)).is_err());
    }

    #[test]
    fn q_rank_ignores_volume() {
        let f = alpha4_as_form();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let v = BigRational::new(rng.gen_range(1..20).into(), rng.gen_range(1..20).into());
            let v = if rng.gen() { -v } else { v };
            assert_eq!(rank(&Rationals, &q_matrix(&f, &v).unwrap()), 4);
        }
    }

    #[test]
    fn invariants_survive_gl_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = alpha4_as_form();
        for _ in 0..5 {
            let g = random_invertible(&mut rng, 7);
            let h = f.pullback(&g).unwrap();
            assert_eq!(classify_orbit(&h).unwrap().name, "O7");
        }
    }
}
