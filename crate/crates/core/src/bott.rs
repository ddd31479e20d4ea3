//! Borel–Weil–Bott on Grassmannians: cohomology of Σ^α Q ⊗ Σ^β S on Gr(m, N).

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::weights::{weyl_dim, IntWeight};

/// An irreducible homogeneous bundle Σ^α Q ⊗ Σ^β S on Gr(m, N), where S is
/// the rank-m tautological subbundle and Q the rank N−m quotient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrassmannianBundle {
    ambient_dim: usize,
    sub_rank: usize,
    quotient_weight: IntWeight,
    sub_weight: IntWeight,
}

impl GrassmannianBundle {
    pub fn new(ambient_dim: usize, sub_rank: usize, quotient_weight: IntWeight, sub_weight: IntWeight) -> Result<Self> {
        if sub_rank == 0 || sub_rank >= ambient_dim {
            return Err(Error::InvalidGrassmannian { sub_rank, ambient_dim });
        }
        if quotient_weight.len() != ambient_dim - sub_rank {
            return Err(Error::LengthMismatch { expected: ambient_dim - sub_rank, found: quotient_weight.len() });
        }
        if sub_weight.len() != sub_rank {
            return Err(Error::LengthMismatch { expected: sub_rank, found: sub_weight.len() });
        }
        Ok(Self { ambient_dim, sub_rank, quotient_weight, sub_weight })
    }

    /// Σ^β S with trivial quotient part.
    pub fn sub_only(ambient_dim: usize, sub_rank: usize, sub_weight: IntWeight) -> Result<Self> {
        let q = IntWeight::zero(ambient_dim.saturating_sub(sub_rank));
        Self::new(ambient_dim, sub_rank, q, sub_weight)
    }

    pub fn from_slices(ambient_dim: usize, sub_rank: usize, quotient: &[i64], sub: &[i64]) -> Result<Self> {
        Self::new(ambient_dim, sub_rank, IntWeight::new(quotient.to_vec())?, IntWeight::new(sub.to_vec())?)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn sub_rank(&self) -> usize {
        self.sub_rank
    }

    pub fn quotient_weight(&self) -> &IntWeight {
        &self.quotient_weight
    }

    pub fn sub_weight(&self) -> &IntWeight {
        &self.sub_weight
    }

    pub fn grassmannian_dim(&self) -> usize {
        self.sub_rank * (self.ambient_dim - self.sub_rank)
    }

    /// The bundle E* ⊗ ω_G, whose cohomology is Serre dual to that of E.
    pub fn serre_dual(&self) -> Self {
        let m = self.sub_rank as i64;
        let r = (self.ambient_dim - self.sub_rank) as i64;
        Self {
            ambient_dim: self.ambient_dim,
            sub_rank: self.sub_rank,
            quotient_weight: self.quotient_weight.dual().shifted(-m),
            sub_weight: self.sub_weight.dual().shifted(r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BottResult {
    Vanishing,
    Cohomology { degree: usize, weight: IntWeight, dim: BigUint },
}

impl BottResult {
    pub fn degree(&self) -> Option<usize> {
        match self {
            Self::Vanishing => None,
            Self::Cohomology { degree, .. } => Some(*degree),
        }
    }

    pub fn dim(&self) -> BigUint {
        match self {
            Self::Vanishing => BigUint::default(),
            Self::Cohomology { dim, .. } => dim.clone(),
        }
    }

    pub fn is_vanishing(&self) -> bool {
        matches!(self, Self::Vanishing)
    }
}

impl Serialize for BottResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            status: &'static str,
            q: Option<usize>,
            lambda: Option<&'a IntWeight>,
            dim: String,
        }
        let repr = match self {
            Self::Vanishing => Repr { status: "vanishing", q: None, lambda: None, dim: "0".into() },
            Self::Cohomology { degree, weight, dim } => {
                Repr { status: "cohomology", q: Some(*degree), lambda: Some(weight), dim: dim.to_string() }
            }
        };
        repr.serialize(s)
    }
}

pub fn bott_cohomology(b: &GrassmannianBundle) -> BottResult {
    let n = b.ambient_dim;
    let s: Vec<i64> = b
        .quotient_weight
        .entries()
        .iter()
        .chain(b.sub_weight.entries())
        .enumerate()
        .map(|(i, &x)| x + (n - i) as i64)
        .collect();
    let mut inversions = 0;
    for i in 0..n {
        for j in i + 1..n {
            match s[i].cmp(&s[j]) {
                std::cmp::Ordering::Equal => return BottResult::Vanishing,
                std::cmp::Ordering::Less => inversions += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    let mut sorted = s;
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    let lambda: Vec<i64> = sorted.iter().enumerate().map(|(i, &x)| x - (n - i) as i64).collect();
    let weight = IntWeight::new(lambda).expect("sorted shift of a strictly decreasing sequence");
    let dim = weyl_dim(&weight, n).expect("length is N");
    BottResult::Cohomology { degree: inversions, weight, dim }
}

/// Outcome of comparing Bott's recipe for Σ^{(a,b)} S on Gr(2,8) against the
/// closed-form description of where the cohomology lives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineCheck {
    pub a: i64,
    pub b: i64,
    pub predicted: Option<usize>,
    pub computed: Option<usize>,
    pub pass: bool,
}

/// Closed form on Gr(2,8): nonzero at q=0 iff 0 ≥ a ≥ b, at q=6 iff a ≥ 7 and
/// 1 ≥ b, at q=12 iff a ≥ b ≥ 8, and nowhere else.
pub fn gr28_predicted_degree(a: i64, b: i64) -> Option<usize> {
    if 0 >= a && a >= b {
        Some(0)
    } else if a >= 7 && 1 >= b {
        Some(6)
    } else if a >= b && b >= 8 {
        Some(12)
    } else {
        None
    }
}

pub fn bott_line_conditions(a: i64, b: i64) -> Result<LineCheck> {
    let bundle = GrassmannianBundle::sub_only(8, 2, IntWeight::new(vec![a, b])?)?;
    let computed = bott_cohomology(&bundle).degree();
    let predicted = gr28_predicted_degree(a, b);
    Ok(LineCheck { a, b, predicted, computed, pass: predicted == computed })
}

/// Runs [`bott_line_conditions`] over all a ≥ b with |a|, |b| ≤ bound.
pub fn sweep_line_conditions(bound: i64) -> Vec<LineCheck> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=a {
            out.push(bott_line_conditions(a, b).expect("a >= b"));
        }
    }
    out
}
