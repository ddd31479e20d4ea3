//! Vanishing of H^q(Gr(2, 2n), Λᵗ(SⁿL)) for the tautological rank-2 bundle L.

use serde::Serialize;

use crate::bott::{bott_cohomology, BottResult, GrassmannianBundle};
use crate::error::{Error, Result};
use crate::schur::rank2_ext_power;
use crate::weights::IntWeight;

#[derive(Debug, Clone, Serialize)]
pub struct VanishingGroup {
    pub label: IntWeight,
    pub q: usize,
    pub dim: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VanishingRow {
    pub t: usize,
    pub groups: Vec<VanishingGroup>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VanishingReport {
    pub n: usize,
    pub rows: Vec<VanishingRow>,
    pub pass: bool,
}

/// For 0 < t ≤ n+1 checks that every nonzero group sits in degree 2n−2 or
/// 4n−4 and none in degree ≤ t; for t = 0 checks H⁰ = C.
pub fn gr2_syml_vanishing(n: usize) -> Result<VanishingReport> {
    if n < 2 {
        return Err(Error::Invalid(format!("need n >= 2, got {n}")));
    }
    let mut rows = Vec::new();
    for t in 0..=n + 1 {
        let mut groups = Vec::new();
        for (label, mult) in rank2_ext_power(n, t)?.iter() {
            let b = GrassmannianBundle::sub_only(2 * n, 2, label.clone())?;
            if let BottResult::Cohomology { degree, dim, .. } = bott_cohomology(&b) {
                let dim = dim * num_bigint::BigUint::from(mult);
                groups.push(VanishingGroup { label: label.clone(), q: degree, dim: dim.to_string() });
            }
        }
        let pass = if t == 0 {
            groups.len() == 1 && groups[0].q == 0 && groups[0].dim == "1"
        } else {
            groups.iter().all(|g| (g.q == 2 * n - 2 || g.q == 4 * n - 4) && g.q > t)
        };
        rows.push(VanishingRow { t, groups, pass });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(VanishingReport { n, rows, pass })
}
