//! The 4-form α₄ on the tangent space of the Fano scheme of lines of a quartic
//! sixfold, in coordinates (a₀, a₁, b₀, b₁, c₁, c₂, c₃).

use num_rational::BigRational;
use num_traits::One;

use super::AltForm;
use crate::field::Rationals;
use crate::linalg::determinant;

/// Coordinate names, in basis order.
pub const ALPHA4_BASIS: [&str; 7] = ["a0", "a1", "b0", "b1", "c1", "c2", "c3"];

const A0: usize = 0;
const A1: usize = 1;
const B0: usize = 2;
const B1: usize = 3;
const C1: usize = 4;
const C2: usize = 5;
const C3: usize = 6;

/// The four (index tuple, sign) terms of α₄.
const TERMS: [([usize; 4], i64); 4] =
    [([A0, B0, C2, C3], 1), ([A0, B1, C1, C3], -1), ([A1, B0, C1, C3], -1), ([A1, B1, C1, C2], 1)];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TangentVector7 {
    pub a0: BigRational,
    pub a1: BigRational,
    pub b0: BigRational,
    pub b1: BigRational,
    pub c1: BigRational,
    pub c2: BigRational,
    pub c3: BigRational,
}

impl TangentVector7 {
    pub fn from_coords(c: [BigRational; 7]) -> Self {
        let [a0, a1, b0, b1, c1, c2, c3] = c;
        Self { a0, a1, b0, b1, c1, c2, c3 }
    }

    pub fn coords(&self) -> [BigRational; 7] {
        [
            self.a0.clone(),
            self.a1.clone(),
            self.b0.clone(),
            self.b1.clone(),
            self.c1.clone(),
            self.c2.clone(),
            self.c3.clone(),
        ]
    }

    /// The basis vector dual to coordinate `i`.
    pub fn basis(i: usize) -> Self {
        let mut c: [BigRational; 7] = Default::default();
        c[i] = BigRational::one();
        Self::from_coords(c)
    }
}

/// Sum of the four signed 4×4 determinants defining α₄(ξ₁, ξ₂, ξ₃, ξ₄).
pub fn eval_alpha4(xi: &[TangentVector7; 4]) -> BigRational {
    let coords: Vec<[BigRational; 7]> = xi.iter().map(TangentVector7::coords).collect();
    let mut total = BigRational::default();
    for (cols, sign) in TERMS {
        let m: Vec<Vec<BigRational>> = coords.iter().map(|c| cols.iter().map(|&j| c[j].clone()).collect()).collect();
        let d = determinant(&Rationals, &m);
        if sign > 0 {
            total += d;
        } else {
            total -= d;
        }
    }
    total
}

pub fn alpha4_as_form() -> AltForm {
    AltForm::from_terms(
        4,
        7,
        TERMS.iter().map(|(idx, s)| (idx.to_vec(), BigRational::from_integer((*s).into()))),
    )
    .expect("valid tuples")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn basis4(i: [usize; 4]) -> [TangentVector7; 4] {
        i.map(TangentVector7::basis)
    }

    fn random_vector(rng: &mut ChaCha8Rng) -> TangentVector7 {
        TangentVector7::from_coords(std::array::from_fn(|_| BigRational::from_integer(rng.gen_range(-5i64..=5).into())))
    }

    #[test]
    fn values_on_basis() {
        assert_eq!(eval_alpha4(&basis4([A0, B0, C2, C3])), BigRational::one());
        assert_eq!(eval_alpha4(&basis4([A1, B0, C1, C3])), -BigRational::one());
        assert_eq!(eval_alpha4(&basis4([A1, B1, C1, C2])), BigRational::one());
        assert!(eval_alpha4(&basis4([A0, A1, B0, B1])).is_zero());
    }

    #[test]
    fn form_coefficients() {
        let f = alpha4_as_form();
        assert_eq!(f.terms().count(), 4);
        assert_eq!(f.coeff(&[A0, B0, C2, C3]), BigRational::one());
        assert_eq!(f.coeff(&[A1, B1, C1, C2]), BigRational::one());
        assert_eq!(f.coeff(&[A0, B1, C1, C3]), -BigRational::one());
        assert_eq!(f.coeff(&[A1, B0, C1, C3]), -BigRational::one());
    }

    #[test]
    fn alternating_and_matches_contraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = alpha4_as_form();
        for _ in 0..50 {
            let xi: [TangentVector7; 4] = std::array::from_fn(|_| random_vector(&mut rng));
            let v = eval_alpha4(&xi);
            let vecs: Vec<Vec<BigRational>> = xi.iter().map(|x| x.coords().to_vec()).collect();
            assert_eq!(f.evaluate(&vecs).unwrap(), v);
            let mut swapped = xi.clone();
            swapped.swap(1, 3);
            assert_eq!(eval_alpha4(&swapped), -v.clone());
            let mut repeated = xi.clone();
            repeated[2] = repeated[0].clone();
            assert!(eval_alpha4(&repeated).is_zero());
        }
    }
}
