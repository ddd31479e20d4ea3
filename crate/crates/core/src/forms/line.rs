//! Whether a line on a hypersurface is of the first or second type, read off
//! from the span of the restricted partial derivatives.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{format_rational, Rationals};
use crate::hodge::poly::HomogeneousForm;
use crate::linalg::{rank, rref, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LineKind {
    /// The restricted partials span all binary cubics.
    FirstType,
    /// They span a 3-dimensional subspace.
    SecondType,
}

#[derive(Debug, Clone, Serialize)]
pub struct LineTypeResult {
    pub kind: LineKind,
    pub span_dim: usize,
    /// Columns of the coordinate change x = M y putting the line at
    /// y₀ = … = y₅ = 0; the last two columns are the given points.
    #[serde(serialize_with = "ser_matrix")]
    pub coordinate_change: Matrix<BigRational>,
    /// Coefficients of ∂f/∂y_i on the line, i = 0..5, in the basis
    /// y₆³, y₆²y₇, y₆y₇², y₇³.
    #[serde(serialize_with = "ser_matrix")]
    pub restricted_partials: Matrix<BigRational>,
    /// For the first type, an invertible G with G·(restricted partials) equal
    /// to the identity on top of two zero rows.
    #[serde(serialize_with = "ser_opt_matrix")]
    pub normalizer: Option<Matrix<BigRational>>,
}

fn to_strings(m: &Matrix<BigRational>) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

fn ser_matrix<S: serde::Serializer>(m: &Matrix<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    to_strings(m).serialize(s)
}

fn ser_opt_matrix<S: serde::Serializer>(m: &Option<Matrix<BigRational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.as_ref().map(to_strings).serialize(s)
}

/// Completes the two points to a basis with standard basis vectors, points last.
fn adapted_basis(p: &[BigRational], q: &[BigRational]) -> Result<Matrix<BigRational>> {
    let n = p.len();
    if rank(&Rationals, &[p.to_vec(), q.to_vec()]) < 2 {
        return Err(Error::DegenerateLine);
    }
    let mut chosen: Matrix<BigRational> = vec![p.to_vec(), q.to_vec()];
    let mut extra = Vec::new();
    for i in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[i] = BigRational::one();
        chosen.push(e.clone());
        if rank(&Rationals, &chosen) == chosen.len() {
            extra.push(e);
        } else {
            chosen.pop();
        }
    }
    extra.push(p.to_vec());
    extra.push(q.to_vec());
    Ok(extra)
}

/// Classifies the line through `p` and `q` on the hypersurface f = 0 in P⁷.
pub fn line_type(f: &HomogeneousForm<BigRational>, p: &[BigRational], q: &[BigRational]) -> Result<LineTypeResult> {
    let n = f.n_vars();
    if n != 8 || p.len() != n || q.len() != n {
        return Err(Error::FormShape { expected_vars: 8, expected_degree: f.degree(), vars: n, degree: f.degree() });
    }
    let columns = adapted_basis(p, q)?;
    let g = f.linear_substitution(&Rationals, &columns);
    let on_line = |h: &HomogeneousForm<BigRational>| -> Vec<(u32, BigRational)> {
        h.terms().filter(|(e, _)| e[..6].iter().all(|&x| x == 0)).map(|(e, c)| (e[7], c.clone())).collect()
    };
    if !on_line(&g).is_empty() {
        return Err(Error::LineNotOnHypersurface);
    }
    let d = f.degree();
    let width = d; // binary forms of degree d-1 have d coefficients
    let partials: Matrix<BigRational> = (0..6)
        .map(|i| {
            let mut row = vec![BigRational::zero(); width];
            for (k7, c) in on_line(&g.partial(&Rationals, i)) {
                row[k7 as usize] = c;
            }
            row
        })
        .collect();
    let span_dim = rank(&Rationals, &partials);
    let kind = match span_dim {
        s if s == width => LineKind::FirstType,
        s if s + 1 == width => LineKind::SecondType,
        s => return Err(Error::SingularAlongLine(s)),
    };
    let normalizer = (kind == LineKind::FirstType).then(|| {
        // Row-reduce [C | I]; the right block records the row operations.
        let augmented: Matrix<BigRational> = partials
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..6).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        let (reduced, _) = rref(&Rationals, augmented);
        reduced.into_iter().map(|r| r[width..].to_vec()).collect()
    });
    Ok(LineTypeResult { kind, span_dim, coordinate_change: columns, restricted_partials: partials, normalizer })
}
