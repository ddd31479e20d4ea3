//! Homogeneous forms in a fixed number of variables.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Field, PrimeField};

pub type Exponent = Vec<u32>;

/// All exponent vectors of `n_vars` variables and total degree `degree`, in
/// lexicographic order with `x_0` most significant.
pub fn monomials(n_vars: usize, degree: usize) -> Vec<Exponent> {
    fn rec(prefix: &mut Exponent, left: usize, remaining: u32, out: &mut Vec<Exponent>) {
        if left == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            rec(prefix, left - 1, remaining - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n_vars > 0 {
        rec(&mut Vec::with_capacity(n_vars), n_vars, degree as u32, &mut out);
    }
    out
}

pub fn monomial_index(basis: &[Exponent]) -> HashMap<Exponent, usize> {
    basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect()
}

/// A homogeneous polynomial with coefficients in some field.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousForm<E> {
    n_vars: usize,
    degree: usize,
    coeffs: BTreeMap<Exponent, E>,
}

/// Alias used where a quartic is expected.
pub type QuarticForm<E> = HomogeneousForm<E>;

impl<E: Clone + PartialEq> HomogeneousForm<E> {
    pub fn zero(n_vars: usize, degree: usize) -> Self {
        Self { n_vars, degree, coeffs: BTreeMap::new() }
    }

    /// Builds a form from `(exponent, coefficient)` terms. Zero coefficients
    /// are dropped and repeated exponents are summed.
    pub fn from_terms<F: Field<Elem = E>>(
        field: &F,
        n_vars: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Exponent, E)>,
    ) -> Result<Self> {
        let mut form = Self::zero(n_vars, degree);
        for (exp, c) in terms {
            if exp.len() != n_vars || exp.iter().sum::<u32>() as usize != degree {
                return Err(Error::Invalid(format!(
                    "exponent {exp:?} is not a degree-{degree} monomial in {n_vars} variables"
                )));
            }
            form.add_term(field, exp, c);
        }
        Ok(form)
    }

    fn add_term<F: Field<Elem = E>>(&mut self, field: &F, exp: Exponent, c: E) {
        let entry = self.coeffs.entry(exp).or_insert_with(|| field.zero());
        *entry = field.add(entry, &c);
        self.coeffs.retain(|_, v| !field.is_zero(v));
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &E)> {
        self.coeffs.iter()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, exp: &[u32]) -> E {
        self.coeffs.get(exp).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn check_shape(&self, n_vars: usize, degree: usize) -> Result<()> {
        if self.n_vars != n_vars || self.degree != degree {
            return Err(Error::FormShape {
                expected_vars: n_vars,
                expected_degree: degree,
                vars: self.n_vars,
                degree: self.degree,
            });
        }
        Ok(())
    }

    pub fn partial<F: Field<Elem = E>>(&self, field: &F, var: usize) -> Self {
        let mut out = Self::zero(self.n_vars, self.degree.saturating_sub(1));
        for (exp, c) in &self.coeffs {
            if exp[var] == 0 {
                continue;
            }
            let mut e = exp.clone();
            e[var] -= 1;
            let scaled = field.mul(c, &field.from_i64(exp[var] as i64));
            out.add_term(field, e, scaled);
        }
        out
    }

    /// Substitutes `x = M y`, where `columns[j]` is the image of the j-th new
    /// coordinate vector. The result is a form in `columns.len()` variables.
    pub fn linear_substitution<F: Field<Elem = E>>(&self, field: &F, columns: &[Vec<E>]) -> Self {
        let new_vars = columns.len();
        // Each old variable x_i becomes the linear form sum_j columns[j][i] y_j.
        let linear: Vec<Self> = (0..self.n_vars)
            .map(|i| {
                let mut l = Self::zero(new_vars, 1);
                for (j, col) in columns.iter().enumerate() {
                    let mut e = vec![0; new_vars];
                    e[j] = 1;
                    l.add_term(field, e, col[i].clone());
                }
                l
            })
            .collect();
        let mut out = Self::zero(new_vars, self.degree);
        for (exp, c) in &self.coeffs {
            let mut term = Self::constant(field, new_vars, c.clone());
            for (i, &k) in exp.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(field, &linear[i]);
                }
            }
            for (e, v) in term.coeffs {
                out.add_term(field, e, v);
            }
        }
        out
    }

    fn constant<F: Field<Elem = E>>(field: &F, n_vars: usize, c: E) -> Self {
        let mut out = Self::zero(n_vars, 0);
        out.add_term(field, vec![0; n_vars], c);
        out
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = Self::zero(self.n_vars, self.degree + other.degree);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(field, e, field.mul(ca, cb));
            }
        }
        out
    }

    /// Coefficient vector in the basis returned by [`monomials`].
    pub fn dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<E> {
        monomials(self.n_vars, self.degree).iter().map(|m| self.coeff(field, m)).collect()
    }
}

impl HomogeneousForm<u64> {
    /// A form with independent uniform coefficients in F_p on every monomial.
    pub fn random<R: Rng>(field: &PrimeField, n_vars: usize, degree: usize, rng: &mut R) -> Self {
        let terms = monomials(n_vars, degree)
            .into_iter()
            .map(|m| (m, rng.gen_range(0..field.modulus())))
            .collect::<Vec<_>>();
        Self::from_terms(field, n_vars, degree, terms).expect("monomials have the right shape")
    }

    /// Fermat form `sum x_i^degree`.
    pub fn fermat(field: &PrimeField, n_vars: usize, degree: usize) -> Self {
        let terms = (0..n_vars).map(|i| {
            let mut e = vec![0; n_vars];
            e[i] = degree as u32;
            (e, 1)
        });
        Self::from_terms(field, n_vars, degree, terms).expect("valid exponents")
    }
}

impl HomogeneousForm<BigRational> {
    /// Reduces a rational form modulo p. Fails if a denominator vanishes mod p.
    pub fn reduce_mod(&self, field: &PrimeField) -> Result<HomogeneousForm<u64>> {
        let p = num_bigint::BigInt::from(field.modulus());
        let mut terms = Vec::new();
        for (exp, c) in &self.coeffs {
            let num = field.reduce_i64(i64::try_from(c.numer() % &p).expect("residue fits"));
            let den = field.reduce_i64(i64::try_from(c.denom() % &p).expect("residue fits"));
            if den == 0 {
                return Err(Error::Invalid(format!("denominator of {c} vanishes mod {}", field.modulus())));
            }
            terms.push((exp.clone(), field.div(&num, &den)));
        }
        HomogeneousForm::from_terms(field, self.n_vars, self.degree, terms)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TermJson {
    exponents: Vec<u32>,
    coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FormJson {
    n_vars: usize,
    degree: usize,
    terms: Vec<TermJson>,
}

impl Serialize for HomogeneousForm<BigRational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormJson {
            n_vars: self.n_vars,
            degree: self.degree,
            terms: self
                .coeffs
                .iter()
                .map(|(e, c)| TermJson { exponents: e.clone(), coeff: format_rational(c) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomogeneousForm<BigRational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FormJson::deserialize(d)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| Ok((t.exponents, parse_rational(&t.coeff).map_err(D::Error::custom)?)))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        HomogeneousForm::from_terms(&crate::field::Rationals, raw.n_vars, raw.degree, terms)
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(8, 4).len(), 330);
        assert_eq!(monomials(8, 5).len(), 792);
        assert_eq!(monomials(8, 8).len(), 6435);
        assert_eq!(monomials(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn partials_and_substitution() {
        let q = Rationals;
        // f = x0^2 x1 + 3 x1^3
        let f = HomogeneousForm::from_terms(
            &q,
            2,
            3,
            vec![(vec![2, 1], q.from_i64(1)), (vec![0, 3], q.from_i64(3))],
        )
        .unwrap();
        let d1 = f.partial(&q, 1);
        assert_eq!(d1.coeff(&q, &[2, 0]), q.from_i64(1));
        assert_eq!(d1.coeff(&q, &[0, 2]), q.from_i64(9));
        // swap variables
        let swapped = f.linear_substitution(&q, &[vec![q.zero(), q.one()], vec![q.one(), q.zero()]]);
        assert_eq!(swapped.coeff(&q, &[1, 2]), q.from_i64(1));
        assert_eq!(swapped.coeff(&q, &[3, 0]), q.from_i64(3));
    }

    #[test]
    fn json_round_trip_and_shape_errors() {
        let text = r#"{"n_vars":2,"degree":2,"terms":[{"exponents":[1,1],"coeff":"-1/2"}]}"#;
        let f: HomogeneousForm<BigRational> = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), text);
        let bad = r#"{"n_vars":2,"degree":2,"terms":[{"exponents":[1,2],"coeff":"1"}]}"#;
        assert!(serde_json::from_str::<HomogeneousForm<BigRational>>(bad).is_err());
        assert!(f.check_shape(8, 4).is_err());
    }
}
