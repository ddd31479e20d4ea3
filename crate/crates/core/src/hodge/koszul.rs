//! E₁ pages of Koszul complexes on Gr(2, N) and what they determine about
//! cohomology on the zero locus.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::bott::{bott_cohomology, BottResult, GrassmannianBundle};
use crate::error::{Error, Result};
use crate::schur::{rank2_dual, rank2_ext_power_of, rank2_tensor, BundleLabel, SchurExpr};
use crate::weights::IntWeight;

/// One irreducible summand of Λⁱ(E*) ⊗ twist with nonzero cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PageGroup {
    pub bundle: BundleLabel,
    pub multiplicity: u64,
    /// Highest weight of the GL(N)-module H^q of the bundle.
    pub lambda: IntWeight,
    pub dim: u64,
}

/// The E₁ page E₁^{-i,q} = H^q(G, Λⁱ(E*) ⊗ twist) of the Koszul resolution of
/// the zero locus of a section of E, twisted.
#[derive(Debug, Clone, Serialize)]
pub struct KoszulPage {
    pub sub_rank: usize,
    pub ambient_dim: usize,
    pub section: SchurExpr,
    pub twist: SchurExpr<BundleLabel>,
    pub grid: BTreeMap<(usize, usize), Vec<PageGroup>>,
}

impl KoszulPage {
    pub fn dim_at(&self, i: usize, q: usize) -> u64 {
        self.grid.get(&(i, q)).map_or(0, |g| g.iter().map(|x| x.dim * x.multiplicity).sum())
    }

    /// Nonzero positions with their total dimensions.
    pub fn dims(&self) -> BTreeMap<(usize, usize), u64> {
        self.grid.keys().map(|&(i, q)| ((i, q), self.dim_at(i, q))).filter(|&(_, d)| d > 0).collect()
    }

    /// Σ (−1)^{q−i} dim E₁^{-i,q}, the Euler characteristic of the twist
    /// restricted to the zero locus.
    pub fn euler_characteristic(&self) -> BigInt {
        self.dims()
            .iter()
            .map(|(&(i, q), &d)| if (q + i) % 2 == 0 { BigInt::from(d) } else { -BigInt::from(d) })
            .sum()
    }
}

/// Builds the page for a section of `section` on Gr(m, N); `section` and the
/// sub parts of `twist` are rank-m labels. Only m = 2 is supported.
pub fn koszul_page(m: usize, n: usize, section: &SchurExpr, twist: &SchurExpr<BundleLabel>) -> Result<KoszulPage> {
    if m != 2 {
        return Err(Error::Invalid(format!("Koszul pages are implemented for rank-2 subbundles only, got m={m}")));
    }
    if n <= m {
        return Err(Error::InvalidGrassmannian { sub_rank: m, ambient_dim: n });
    }
    let rank: u64 = section.iter().map(|(l, mult)| crate::schur::rank2_dim(l) * mult).sum();
    let dual = rank2_dual(section);
    let mut grid: BTreeMap<(usize, usize), Vec<PageGroup>> = BTreeMap::new();
    for i in 0..=rank as usize {
        let ext = rank2_ext_power_of(&dual, i)?;
        for (tw, tmult) in twist.iter() {
            let product = rank2_tensor(&ext, &SchurExpr::single(tw.sub.clone()))?;
            for (sub, mult) in product.iter() {
                let bundle = GrassmannianBundle::new(n, m, tw.quotient.clone(), sub.clone())?;
                if let BottResult::Cohomology { degree, weight, dim } = bott_cohomology(&bundle) {
                    let dim = u64::try_from(&dim).map_err(|_| Error::Invalid(format!("dimension {dim} overflows")))?;
                    grid.entry((i, degree)).or_default().push(PageGroup {
                        bundle: BundleLabel { quotient: tw.quotient.clone(), sub: sub.clone() },
                        multiplicity: mult * tmult,
                        lambda: weight,
                        dim,
                    });
                }
            }
        }
    }
    Ok(KoszulPage { sub_rank: m, ambient_dim: n, section: section.clone(), twist: twist.clone(), grid })
}

/// Differentials the spectral sequence cannot decide by itself and which are
/// settled by explicit matrix ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResolutionRule {
    /// ψ_f : S⁴V → End(V), the transpose of u ↦ u(f), on the page of S⁴T.
    PsiF,
    /// The map whose cokernel is coker β_f, on the page of S²(S⁴T).
    AlphaF,
}

impl ResolutionRule {
    /// Page positions (source, target) of the differential the rule settles.
    pub fn positions(self) -> ((usize, usize), (usize, usize)) {
        match self {
            Self::PsiF | Self::AlphaF => ((2, 6), (1, 6)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub rule: ResolutionRule,
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub rank: u64,
}

impl Resolution {
    pub fn new(rule: ResolutionRule, rank: u64) -> Self {
        let (source, target) = rule.positions();
        Self { rule, source, target, rank }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collapse {
    /// Dimensions of the determined nonzero cohomology groups, by degree.
    pub dims: BTreeMap<i64, u64>,
    pub ambiguous_degrees: BTreeSet<i64>,
    /// Pairs of nonzero entries that a differential could connect.
    pub ambiguous_pairs: Vec<((usize, usize), (usize, usize))>,
    pub applied: Vec<Resolution>,
}

impl Collapse {
    pub fn is_ambiguous(&self) -> bool {
        !self.ambiguous_degrees.is_empty()
    }

    /// Dimension in degree k, or None when the page does not determine it.
    pub fn h(&self, k: i64) -> Option<u64> {
        if self.ambiguous_degrees.contains(&k) {
            None
        } else {
            Some(self.dims.get(&k).copied().unwrap_or(0))
        }
    }
}

/// The r ≥ 1 for which d_r runs from `from` to `to`: (i,q) → (i−r, q−r+1).
fn differential_length(from: (usize, usize), to: (usize, usize)) -> Option<usize> {
    let r = from.0.checked_sub(to.0)?;
    (r >= 1 && to.1 + r == from.1 + 1).then_some(r)
}

pub fn collapse_page(page: &KoszulPage) -> Collapse {
    collapse_dims(&page.dims(), &[]).expect("no resolutions to validate")
}

pub fn collapse_page_with(page: &KoszulPage, resolutions: &[Resolution]) -> Result<Collapse> {
    collapse_dims(&page.dims(), resolutions)
}

/// Collapse of a page given as dimensions. Each resolution fixes the rank of
/// one differential; any other pair of nonzero entries that some d_r could
/// join makes both of their total degrees undetermined.
pub fn collapse_dims(dims: &BTreeMap<(usize, usize), u64>, resolutions: &[Resolution]) -> Result<Collapse> {
    let mut live: BTreeMap<(usize, usize), u64> = dims.iter().filter(|(_, &d)| d > 0).map(|(&k, &d)| (k, d)).collect();
    for r in resolutions {
        if differential_length(r.source, r.target).is_none() {
            return Err(Error::Invalid(format!("no differential runs from {:?} to {:?}", r.source, r.target)));
        }
        for pos in [r.source, r.target] {
            let d = live.get(&pos).copied().unwrap_or(0);
            if r.rank > d {
                return Err(Error::Invalid(format!("rank {} exceeds dimension {d} at {pos:?}", r.rank)));
            }
        }
        for pos in [r.source, r.target] {
            let d = live.get_mut(&pos).expect("checked above");
            *d -= r.rank;
        }
    }
    live.retain(|_, d| *d > 0);
    let resolved: BTreeSet<_> = resolutions.iter().map(|r| (r.source, r.target)).collect();
    let total = |(i, q): (usize, usize)| q as i64 - i as i64;
    let mut ambiguous_pairs = Vec::new();
    let mut ambiguous_degrees = BTreeSet::new();
    for &from in live.keys() {
        for &to in live.keys() {
            if differential_length(from, to).is_some() && !resolved.contains(&(from, to)) {
                ambiguous_pairs.push((from, to));
                ambiguous_degrees.insert(total(from));
                ambiguous_degrees.insert(total(to));
            }
        }
    }
    let mut out = BTreeMap::new();
    for (&pos, &d) in &live {
        if !ambiguous_degrees.contains(&total(pos)) {
            *out.entry(total(pos)).or_insert(0) += d;
        }
    }
    Ok(Collapse { dims: out, ambiguous_degrees, ambiguous_pairs, applied: resolutions.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_page() {
        let c = collapse_dims(&BTreeMap::new(), &[]).unwrap();
        assert!(c.dims.is_empty() && !c.is_ambiguous());
        assert_eq!(c.h(3), Some(0));
    }

    #[test]
    fn adjacent_entries_are_flagged() {
        let dims = BTreeMap::from([((2, 6), 330), ((1, 6), 64), ((0, 0), 1)]);
        let c = collapse_dims(&dims, &[]).unwrap();
        assert_eq!(c.ambiguous_pairs, vec![((2, 6), (1, 6))]);
        assert_eq!(c.h(4), None);
        assert_eq!(c.h(5), None);
        assert_eq!(c.h(0), Some(1));
    }

    #[test]
    fn longer_differentials_are_flagged() {
        // d_3 from (3,5) lands on (0,3)
        let dims = BTreeMap::from([((3, 5), 2), ((0, 3), 7)]);
        let c = collapse_dims(&dims, &[]).unwrap();
        assert_eq!(c.ambiguous_pairs, vec![((3, 5), (0, 3))]);
        assert!(c.dims.is_empty());
    }

    #[test]
    fn resolution_settles_one_pair_only() {
        let dims = BTreeMap::from([((2, 6), 330), ((1, 6), 64), ((0, 6), 5)]);
        let c = collapse_dims(&dims, &[Resolution::new(ResolutionRule::PsiF, 64)]).unwrap();
        assert_eq!(c.h(4), Some(266));
        // (1,6) is gone after the resolution, so (0,6) is free
        assert_eq!(c.h(6), Some(5));
        let c = collapse_dims(&dims, &[Resolution::new(ResolutionRule::PsiF, 60)]).unwrap();
        assert_eq!(c.h(4), Some(270));
        assert_eq!(c.h(5), None);
        assert_eq!(c.h(6), None);
        assert!(collapse_dims(&dims, &[Resolution::new(ResolutionRule::PsiF, 65)]).is_err());
    }

    proptest! {
        /// Whenever a degree is reported, no entry contributing to it can be
        /// hit by or emit any differential towards another nonzero entry.
        #[test]
        fn never_asserts_under_a_possible_differential(
            entries in proptest::collection::btree_map((0usize..6, 0usize..13), 1u64..50, 0..12)
        ) {
            let c = collapse_dims(&entries, &[]).unwrap();
            for &a in entries.keys() {
                for &b in entries.keys() {
                    if differential_length(a, b).is_some() {
                        prop_assert_eq!(c.h(a.1 as i64 - a.0 as i64), None);
                        prop_assert_eq!(c.h(b.1 as i64 - b.0 as i64), None);
                    }
                }
            }
            let reported: u64 = c.dims.values().sum();
            let free: u64 = entries.iter()
                .filter(|(&(i, q), _)| c.h(q as i64 - i as i64).is_some())
                .map(|(_, &d)| d).sum();
            prop_assert_eq!(reported, free);
        }
    }
}
