//! Alternating forms with exact rational coefficients, their GL-orbit
//! invariants in seven variables, the 4-form α₄ on the Fano scheme of a quartic
//! sixfold, and the normal-bundle type of a line on a hypersurface.

mod alpha4;
mod invariants;
mod line;

pub use alpha4::{alpha4_as_form, eval_alpha4, TangentVector7, ALPHA4_BASIS};
pub use invariants::{
    classify_orbit, orbit_dim, q_matrix, q_rank, two_rank, OrbitRecord, ORBIT_TABLE,
};
pub use line::{line_type, LineKind, LineTypeResult};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Rationals};
use crate::linalg::{determinant, Matrix};

/// An alternating p-form on an n-dimensional space, stored on strictly
/// increasing 0-based index tuples. JSON uses 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltForm {
    degree: usize,
    space_dim: usize,
    coeffs: BTreeMap<Vec<usize>, BigRational>,
}

/// Sign of the permutation sorting `seq`, or None if it has a repeat.
pub(crate) fn sort_sign(seq: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            match seq[i].cmp(&seq[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    Some((sorted, if inversions % 2 == 0 { 1 } else { -1 }))
}

/// All strictly increasing k-tuples from 0..n, in lexicographic order.
pub fn index_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for i in start..n {
            prefix.push(i);
            rec(n, k, i + 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

impl AltForm {
    pub fn zero(degree: usize, space_dim: usize) -> Self {
        Self { degree, space_dim, coeffs: BTreeMap::new() }
    }

    /// Builds a form from (indices, coefficient) pairs with 0-based indices in
    /// any order; unsorted tuples are sorted with the matching sign.
    pub fn from_terms(
        degree: usize,
        space_dim: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, BigRational)>,
    ) -> Result<Self> {
        let mut f = Self::zero(degree, space_dim);
        for (idx, c) in terms {
            if idx.len() != degree || idx.iter().any(|&i| i >= space_dim) {
                return Err(Error::UnsupportedForm(format!(
                    "index tuple {idx:?} does not fit a {degree}-form on a {space_dim}-dimensional space"
                )));
            }
            let (sorted, sign) = sort_sign(&idx)
                .ok_or_else(|| Error::UnsupportedForm(format!("repeated index in {idx:?}")))?;
            f.add(sorted, if sign > 0 { c } else { -c });
        }
        Ok(f)
    }

    fn add(&mut self, idx: Vec<usize>, c: BigRational) {
        let sum = self.coeff(&idx) + c;
        if sum.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, sum);
        }
    }

    /// e_{i1} ∧ … ∧ e_{ip}, 0-based.
    pub fn decomposable(space_dim: usize, indices: &[usize]) -> Result<Self> {
        Self::from_terms(indices.len(), space_dim, [(indices.to_vec(), BigRational::one())])
    }

    /// A form whose coefficients are independent uniform integers in
    /// `-bound..=bound`.
    pub fn random<R: Rng>(degree: usize, space_dim: usize, bound: i64, rng: &mut R) -> Self {
        let terms = index_tuples(space_dim, degree)
            .into_iter()
            .map(|idx| (idx, BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))));
        Self::from_terms(degree, space_dim, terms).expect("tuples are in range")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigRational)> {
        self.coeffs.iter()
    }

    /// Coefficient on a sorted tuple.
    pub fn coeff(&self, idx: &[usize]) -> BigRational {
        self.coeffs.get(idx).cloned().unwrap_or_else(BigRational::zero)
    }

    /// f(e_{i1}, …, e_{ip}) for an arbitrary index sequence.
    pub fn value_on(&self, seq: &[usize]) -> BigRational {
        match sort_sign(seq) {
            None => BigRational::zero(),
            Some((sorted, s)) => {
                let c = self.coeff(&sorted);
                if s > 0 {
                    c
                } else {
                    -c
                }
            }
        }
    }

    /// f(v₁, …, v_p) = Σ_I f_I det(v_k[I_l]).
    pub fn evaluate(&self, vectors: &[Vec<BigRational>]) -> Result<BigRational> {
        if vectors.len() != self.degree || vectors.iter().any(|v| v.len() != self.space_dim) {
            return Err(Error::UnsupportedForm(format!(
                "expected {} vectors of length {}",
                self.degree, self.space_dim
            )));
        }
        let mut total = BigRational::zero();
        for (idx, c) in &self.coeffs {
            let m: Matrix<BigRational> = vectors.iter().map(|v| idx.iter().map(|&i| v[i].clone()).collect()).collect();
            total += c * determinant(&Rationals, &m);
        }
        Ok(total)
    }

    /// The pulled-back form (g*f)(v₁,…,v_p) = f(g v₁, …, g v_p).
    pub fn pullback(&self, g: &[Vec<BigRational>]) -> Result<Self> {
        let n = self.space_dim;
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, found: g.len() });
        }
        let mut out = Self::zero(self.degree, n);
        for target in index_tuples(n, self.degree) {
            let mut c = BigRational::zero();
            for (src, fc) in &self.coeffs {
                let minor: Matrix<BigRational> =
                    src.iter().map(|&r| target.iter().map(|&col| g[r][col].clone()).collect()).collect();
                c += fc * determinant(&Rationals, &minor);
            }
            if !c.is_zero() {
                out.coeffs.insert(target, c);
            }
        }
        Ok(out)
    }

    /// The (n−p)-form J ↦ volume · sign(I,J) · f_I with I the complement of J,
    /// realizing Λᵖ V* ≅ Λ^{n−p} V ⊗ det V*.
    pub fn complement_dual(&self, volume: &BigRational) -> Self {
        let n = self.space_dim;
        let mut out = Self::zero(n - self.degree, n);
        for (idx, c) in &self.coeffs {
            let rest: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
            let seq: Vec<usize> = idx.iter().chain(&rest).copied().collect();
            let (_, s) = sort_sign(&seq).expect("complement is disjoint");
            let v = c * volume;
            out.coeffs.insert(rest, if s > 0 { v } else { -v });
        }
        out
    }

    /// e_i ⌟ f, the contraction with the i-th basis vector.
    pub fn interior(&self, i: usize) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(1), self.space_dim);
        for (idx, c) in &self.coeffs {
            if let Some(pos) = idx.iter().position(|&x| x == i) {
                let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != i).collect();
                let v = if pos % 2 == 0 { c.clone() } else { -c.clone() };
                out.coeffs.insert(rest, v);
            }
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.space_dim != other.space_dim {
            return Err(Error::LengthMismatch { expected: self.space_dim, found: other.space_dim });
        }
        let mut out = Self::zero(self.degree + other.degree, self.space_dim);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let seq: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some((sorted, s)) = sort_sign(&seq) {
                    let v = ca * cb;
                    out.add(sorted, if s > 0 { v } else { -v });
                }
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    indices: Vec<usize>,
    #[serde(deserialize_with = "rational_from_json")]
    coeff: String,
}

fn rational_from_json<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<String, D::Error> {
    match serde_json::Value::deserialize(d)? {
        serde_json::Value::String(s) => Ok(s),
        serde_json::Value::Number(n) if n.is_i64() => Ok(n.to_string()),
        other => Err(serde::de::Error::custom(format!("expected a rational, found {other}"))),
    }
}

impl Serialize for AltForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|(idx, c)| TermJson {
            indices: idx.iter().map(|i| i + 1).collect(),
            coeff: format_rational(c),
        }))
    }
}

impl AltForm {
    /// Parses the JSON term list. The degree is read from the terms; an empty
    /// list needs it supplied.
    pub fn from_json(json: &str, space_dim: usize, degree: Option<usize>) -> Result<Self> {
        let terms: Vec<TermJson> = serde_json::from_str(json)?;
        let degree = match (degree, terms.first()) {
            (Some(d), _) => d,
            (None, Some(t)) => t.indices.len(),
            (None, None) => return Err(Error::UnsupportedForm("empty form needs an explicit degree".into())),
        };
        let mut parsed = Vec::new();
        for t in terms {
            if t.indices.windows(2).any(|w| w[0] >= w[1]) || t.indices.contains(&0) {
                return Err(Error::UnsupportedForm(format!(
                    "indices must be strictly increasing and 1-based, got {:?}",
                    t.indices
                )));
            }
            parsed.push((t.indices.iter().map(|i| i - 1).collect(), parse_rational(&t.coeff)?));
        }
        Self::from_terms(degree, space_dim, parsed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn json_round_trip() {
        let f = AltForm::from_terms(2, 4, [(vec![1, 0], q(3)), (vec![2, 3], BigRational::new(1.into(), 2.into()))])
            .unwrap();
        assert_eq!(f.coeff(&[0, 1]), q(-3));
        let json = f.to_json();
        assert_eq!(json, r#"[{"indices":[1,2],"coeff":"-3"},{"indices":[3,4],"coeff":"1/2"}]"#);
        assert_eq!(AltForm::from_json(&json, 4, None).unwrap(), f);
        assert!(AltForm::from_json(r#"[{"indices":[2,1],"coeff":"1"}]"#, 4, None).is_err());
        assert!(AltForm::from_json(r#"[{"indices":[0,1],"coeff":"1"}]"#, 4, None).is_err());
        assert!(AltForm::from_json("[]", 4, None).is_err());
        assert!(AltForm::from_json(r#"[{"indices":[1,2],"coeff":2}]"#, 4, None).is_ok());
    }

    #[test]
    fn repeated_arguments_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = AltForm::random(3, 5, 4, &mut rng);
        let v: Vec<BigRational> = (0..5).map(|i| q(i * i - 2)).collect();
        let w: Vec<BigRational> = (0..5).map(|i| q(1 - i)).collect();
        assert!(f.evaluate(&[v.clone(), w.clone(), v.clone()]).unwrap().is_zero());
        let a = f.evaluate(&[v.clone(), w.clone(), w.iter().zip(&v).map(|(x, y)| x + y).collect()]).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn pullback_is_an_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = AltForm::random(2, 4, 3, &mut rng);
        let g: Matrix<BigRational> = (0..4).map(|i| (0..4).map(|j| q(((i * 3 + j * 5) % 7) as i64 - 3)).collect()).collect();
        let h: Matrix<BigRational> = (0..4).map(|i| (0..4).map(|j| q(i64::from(i == j) + i64::from(j == i + 1))).collect()).collect();
        let gh = crate::linalg::mat_mul(&Rationals, &g, &h);
        // (gh)*f = h*(g*f)
        assert_eq!(f.pullback(&gh).unwrap(), f.pullback(&g).unwrap().pullback(&h).unwrap());
    }

    #[test]
    fn wedge_and_interior() {
        let e = |i: usize| AltForm::decomposable(4, &[i]).unwrap();
        let e01 = e(0).wedge(&e(1)).unwrap();
        assert_eq!(e01, AltForm::decomposable(4, &[0, 1]).unwrap());
        assert_eq!(e(1).wedge(&e(0)).unwrap().coeff(&[0, 1]), q(-1));
        assert_eq!(e01.interior(1).coeff(&[0]), q(-1));
        assert_eq!(e01.interior(0), e(1));
    }

    #[test]
    fn complement_dual_of_top_pieces() {
        let f = AltForm::decomposable(7, &[0, 1, 2, 3]).unwrap();
        assert_eq!(f.complement_dual(&q(1)), AltForm::decomposable(7, &[4, 5, 6]).unwrap());
        let g = AltForm::decomposable(7, &[0, 1, 2, 4]).unwrap();
        // (0,1,2,4,3,5,6) has one inversion
        assert_eq!(g.complement_dual(&q(2)).coeff(&[3, 5, 6]), q(-2));
    }
}
