//! Hodge numbers of a quartic sixfold Y ⊂ P⁷ and of its Fano scheme of lines
//! F ⊂ Gr(2,8), the zero locus of the section of S⁴T* induced by the quartic.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::jacobian::{
    griffiths_beta_corank, griffiths_phi_rank, hypersurface_hodge, jacobian_hilbert_series, prime_from_seed, PhiRank,
    PRIME_RANGE,
};
use super::koszul::{collapse_page, collapse_page_with, koszul_page, Collapse, KoszulPage, Resolution, ResolutionRule};
use super::poly::HomogeneousForm;
use crate::bott::{bott_cohomology, GrassmannianBundle};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::schur::{rank2_sym_power, BundleLabel, SchurExpr};
use crate::weights::{transpose, IntWeight, Partition};

const M: usize = 2;
const N: usize = 8;

fn weight(v: &[i64]) -> IntWeight {
    IntWeight::new(v.to_vec()).expect("non-increasing literal")
}

fn sub_twist(e: &SchurExpr) -> SchurExpr<BundleLabel> {
    e.map_labels(|s| BundleLabel { quotient: IntWeight::zero(N - M), sub: s.clone() })
}

/// S⁴T*, whose section cuts out F.
pub fn fano_section() -> SchurExpr {
    SchurExpr::single(weight(&[0, -4]))
}

pub fn trivial_twist() -> SchurExpr<BundleLabel> {
    sub_twist(&SchurExpr::single(weight(&[0, 0])))
}

/// The conormal bundle S⁴T of F.
pub fn conormal_twist() -> SchurExpr<BundleLabel> {
    sub_twist(&SchurExpr::single(weight(&[4, 0])))
}

/// Ω¹_G = Q* ⊗ T.
pub fn cotangent_twist() -> SchurExpr<BundleLabel> {
    SchurExpr::single(BundleLabel { quotient: weight(&[0, 0, 0, 0, 0, -1]), sub: weight(&[1, 0]) })
}

/// S²(S⁴T), the second symmetric power of the conormal bundle.
pub fn conormal_sym2_twist() -> SchurExpr<BundleLabel> {
    sub_twist(&rank2_sym_power(4, 2).expect("symmetric powers always decompose"))
}

pub fn structure_sheaf_page() -> Result<KoszulPage> {
    koszul_page(M, N, &fano_section(), &trivial_twist())
}

pub fn conormal_page() -> Result<KoszulPage> {
    koszul_page(M, N, &fano_section(), &conormal_twist())
}

pub fn cotangent_page() -> Result<KoszulPage> {
    koszul_page(M, N, &fano_section(), &cotangent_twist())
}

pub fn conormal_sym2_page() -> Result<KoszulPage> {
    koszul_page(M, N, &fano_section(), &conormal_sym2_twist())
}

fn partitions_in_box(size: usize, rows: usize, cols: usize) -> Vec<Partition> {
    fn rec(left: usize, rows: usize, cap: usize, prefix: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition::new(prefix.clone()).expect("built non-increasing"));
            return;
        }
        if rows == 0 {
            return;
        }
        for x in (1..=cap.min(left)).rev() {
            prefix.push(x as i64);
            rec(left - x, rows - 1, x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, rows, cols, &mut Vec::new(), &mut out);
    out
}

/// h^{p,q} of Gr(m, n), from Bott applied to Ω^p = Λᵖ(Q* ⊗ S) = ⊕ Σ^μ Q* ⊗ Σ^{μ'} S.
pub fn grassmannian_hodge(m: usize, n: usize, p: usize, q: usize) -> Result<u64> {
    if m == 0 || m >= n {
        return Err(Error::InvalidGrassmannian { sub_rank: m, ambient_dim: n });
    }
    let r = n - m;
    let mut total = 0u64;
    for mu in partitions_in_box(p, r, m) {
        let quotient = IntWeight::from_partition(&mu, r)?.dual();
        let sub = IntWeight::from_partition(&transpose(&mu), m)?;
        let b = GrassmannianBundle::new(n, m, quotient, sub)?;
        let res = bott_cohomology(&b);
        if res.degree() == Some(q) {
            total += u64::try_from(res.dim()).map_err(|_| Error::Invalid("dimension overflow".into()))?;
        }
    }
    Ok(total)
}

/// dim H^k(C) for 0 → A → B → C → 0 in the long exact sequence
/// A^k → B^k → C^k → A^{k+1} → B^{k+1}, when both outer maps are forced to be
/// zero by a vanishing source or target.
pub fn les_quotient(a_k: Option<u64>, b_k: Option<u64>, a_next: Option<u64>, b_next: Option<u64>) -> Option<u64> {
    let (a_k, b_k, a_next, b_next) = (a_k?, b_k?, a_next?, b_next?);
    let left_zero = a_k == 0 || b_k == 0;
    let right_zero = a_next == 0 || b_next == 0;
    (left_zero && right_zero).then_some(b_k + a_next)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Griffiths residue via the Hilbert series of the Jacobian ring.
    JacobianSeries,
    /// Bott on the Koszul page, collapsed without ambiguity.
    KoszulBott,
    /// Koszul page plus the long exact sequence of the conormal sequence.
    ConormalSequence,
    /// Koszul page with the ψ_f differential from a finite-field rank.
    PsiMatrix,
    /// Koszul page with the α_f differential from a finite-field rank.
    AlphaMatrix,
    /// Same as the matrix routes, with ranks read off the Hilbert series.
    SeriesRoute,
}

#[derive(Debug, Clone, Serialize)]
pub struct HodgeNumber {
    pub variety: &'static str,
    pub p: usize,
    pub q: usize,
    pub value: Option<u64>,
    pub route: Route,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FanoHodgeOptions {
    pub seed: u64,
    pub prime: Option<u64>,
    pub skip_matrix: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PageReport {
    pub name: &'static str,
    pub entries: Vec<PageEntry>,
    pub collapse: Collapse,
}

#[derive(Debug, Clone, Serialize)]
pub struct PageEntry {
    pub i: usize,
    pub q: usize,
    pub dim: u64,
    pub lambdas: Vec<IntWeight>,
}

impl PageReport {
    fn new(name: &'static str, page: &KoszulPage, collapse: Collapse) -> Self {
        let entries = page
            .grid
            .iter()
            .map(|(&(i, q), groups)| PageEntry {
                i,
                q,
                dim: page.dim_at(i, q),
                lambdas: groups.iter().map(|g| g.lambda.clone()).collect(),
            })
            .collect();
        Self { name, entries, collapse }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FanoHodgeReport {
    pub seed: u64,
    pub prime: Option<u64>,
    pub numbers: Vec<HodgeNumber>,
    pub phi: Option<PhiRank>,
    pub beta_corank: Option<u64>,
    pub pages: Vec<PageReport>,
}

impl FanoHodgeReport {
    pub fn get(&self, variety: &str, p: usize, q: usize) -> Option<u64> {
        self.numbers.iter().find(|h| h.variety == variety && h.p == p && h.q == q).and_then(|h| h.value)
    }
}

/// The seeded random quartic in 8 variables over F_p used by the matrix routes.
pub fn seeded_quartic(field: &PrimeField, seed: u64) -> HomogeneousForm<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    HomogeneousForm::random(field, 8, 4, &mut rng)
}

/// Computes the Hodge numbers of Y and the holomorphic and (1,q), (2,2) Hodge
/// numbers of F. With `skip_matrix`, the ranks of ψ_f and β_f are replaced by
/// the values the Jacobian ring of a generic quartic predicts.
pub fn quartic_sixfold_fano(opts: FanoHodgeOptions) -> Result<FanoHodgeReport> {
    let mut numbers = Vec::new();
    let y = hypersurface_hodge(7, 4)?;
    for e in &y.table {
        if e.p >= e.q {
            numbers.push(HodgeNumber { variety: "Y", p: e.p, q: e.q, value: Some(e.value), route: Route::JacobianSeries });
        }
    }

    let o_page = structure_sheaf_page()?;
    let o_collapse = collapse_page(&o_page);
    for q in [0usize, 4, 7] {
        let value = o_collapse.h(q as i64);
        numbers.push(HodgeNumber { variety: "F", p: q, q: 0, value, route: Route::KoszulBott });
    }

    let (prime, phi, beta, psi_rank, corank, matrix_route) = if opts.skip_matrix {
        let series = jacobian_hilbert_series(8, 4);
        let psi_kernel = series.get(4);
        (None, None, None, 330 - psi_kernel, series.get(8), Route::SeriesRoute)
    } else {
        let p = opts.prime.unwrap_or_else(|| prime_from_seed(opts.seed, PRIME_RANGE.0, PRIME_RANGE.1));
        let field = PrimeField::new(p)?;
        let f = seeded_quartic(&field, opts.seed);
        let phi = griffiths_phi_rank(&field, &f)?;
        let beta = griffiths_beta_corank(&field, &f)? as u64;
        (Some(p), Some(phi), Some(beta), phi.rank as u64, beta, Route::PsiMatrix)
    };

    let conormal = conormal_page()?;
    let conormal_raw = collapse_page(&conormal);
    let conormal_resolved = collapse_page_with(&conormal, &[Resolution::new(ResolutionRule::PsiF, psi_rank)])?;
    let cotangent = cotangent_page()?;
    let cotangent_collapse = collapse_page(&cotangent);
    for q in 1..=3usize {
        let k = q as i64;
        let value = les_quotient(
            conormal_resolved.h(k),
            cotangent_collapse.h(k),
            conormal_resolved.h(k + 1),
            cotangent_collapse.h(k + 1),
        );
        let route = if q == 3 { matrix_route } else { Route::ConormalSequence };
        numbers.push(HodgeNumber { variety: "F", p: 1, q, value, route });
    }

    let sym2 = conormal_sym2_page()?;
    let alpha_rank = sym2.dim_at(2, 6).checked_sub(corank).ok_or_else(|| {
        Error::Invalid(format!("corank {corank} exceeds the dimension of the S^8 V entry"))
    })?;
    let sym2_resolved = collapse_page_with(&sym2, &[Resolution::new(ResolutionRule::AlphaF, alpha_rank)])?;
    let h22_g = grassmannian_hodge(M, N, 2, 2)?;
    let h22 = sym2_resolved.h(4).map(|c| h22_g + c);
    let route = if opts.skip_matrix { Route::SeriesRoute } else { Route::AlphaMatrix };
    numbers.push(HodgeNumber { variety: "F", p: 2, q: 2, value: h22, route });

    let pages = vec![
        PageReport::new("O_F", &o_page, o_collapse),
        PageReport::new("S^4T", &conormal, conormal_raw),
        PageReport::new("S^4T resolved", &conormal, conormal_resolved),
        PageReport::new("Omega^1_G", &cotangent, cotangent_collapse),
        PageReport::new("S^2(S^4T) resolved", &sym2, sym2_resolved),
    ];
    Ok(FanoHodgeReport { seed: opts.seed, prime, numbers, phi, beta_corank: beta, pages })
}
