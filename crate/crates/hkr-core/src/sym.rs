//! The symmetric algebra on an n-dimensional space, realized as polynomials
//! in n commuting variables with rational coefficients.

use std::fmt;

use num::{BigInt, One};

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::{binomial, format_scalar, Scalar};

/// Exponent vector of a commutative monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    /// The basis vector `e_i` (0-based).
    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.dim());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    /// `x^{a - e_i}`, or `None` when the exponent of variable i is zero.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    pub fn raise(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// All divisors `b ≤ a`, in lexicographic order.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Vec::with_capacity(self.dim())];
        for &e in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for prefix in &out {
                for j in 0..=e {
                    let mut p = prefix.clone();
                    p.push(j);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(Monomial).collect()
    }

    /// `Π_i C(a_i, b_i)`.
    pub fn binomial(&self, sub: &Monomial) -> BigInt {
        self.0
            .iter()
            .zip(&sub.0)
            .fold(BigInt::one(), |acc, (&a, &b)| acc * binomial(a as usize, b as usize))
    }

    /// The factors of the monomial as a sorted list of variable indices,
    /// e.g. `x1^2 x2` gives `[0, 0, 1]`.
    pub fn factors(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        for (i, &e) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, e as usize));
        }
        out
    }

    pub fn from_factors(dim: usize, factors: &[usize]) -> Monomial {
        let mut e = vec![0u16; dim];
        for &i in factors {
            e[i] += 1;
        }
        Monomial(e)
    }

    /// All monomials of exactly the given degree.
    pub fn of_degree(dim: usize, degree: usize) -> Vec<Monomial> {
        fn fill(dim: usize, left: usize, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == dim {
                prefix.push(left as u16);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e as u16);
                fill(dim, left - e, prefix, out);
                prefix.pop();
            }
        }
        if dim == 0 {
            return if degree == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        fill(dim, degree, &mut Vec::new(), &mut out);
        out
    }

    /// All monomials of degree at most `max_degree`, graded.
    pub fn up_to_degree(dim: usize, max_degree: usize) -> Vec<Monomial> {
        (0..=max_degree).flat_map(|d| Monomial::of_degree(dim, d)).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial: finite rational combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymElement {
    dim: usize,
    terms: LinComb<Monomial>,
}

impl SymElement {
    pub fn zero(dim: usize) -> Self {
        SymElement {
            dim,
            terms: LinComb::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(Monomial::one(dim), Scalar::one())
    }

    pub fn var(dim: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(dim, i), Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        SymElement {
            dim: m.dim(),
            terms: LinComb::single(m, c),
        }
    }

    pub fn from_terms(dim: usize, terms: LinComb<Monomial>) -> Result<Self> {
        for m in terms.keys() {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: m.dim(),
                });
            }
        }
        Ok(SymElement { dim, terms })
    }

    pub(crate) fn from_terms_unchecked(dim: usize, terms: LinComb<Monomial>) -> Self {
        SymElement { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &LinComb<Monomial> {
        &self.terms
    }

    pub fn into_terms(self) -> LinComb<Monomial> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.coeff(m)
    }

    fn check_dim(&self, other: &SymElement) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SymElement) -> Result<SymElement> {
        self.check_dim(other)?;
        Ok(SymElement {
            dim: self.dim,
            terms: self.terms.plus(&other.terms),
        })
    }

    pub fn sub(&self, other: &SymElement) -> Result<SymElement> {
        self.check_dim(other)?;
        Ok(SymElement {
            dim: self.dim,
            terms: self.terms.minus(&other.terms),
        })
    }

    pub fn scale(&self, c: &Scalar) -> SymElement {
        SymElement {
            dim: self.dim,
            terms: self.terms.scaled(c),
        }
    }

    /// The ∨-product.
    pub fn mul(&self, other: &SymElement) -> Result<SymElement> {
        self.check_dim(other)?;
        let mut terms = LinComb::new();
        for (a, ca) in self.terms.iter() {
            for (b, cb) in other.terms.iter() {
                terms.add_term(a.mul(b), ca * cb);
            }
        }
        Ok(SymElement {
            dim: self.dim,
            terms,
        })
    }

    pub fn mul_monomial(&self, m: &Monomial) -> SymElement {
        SymElement {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: usize) -> SymElement {
        let mut out = SymElement::one(self.dim);
        for _ in 0..n {
            out = out.mul(self).expect("same dimension");
        }
        out
    }

    /// Homogeneous components, by increasing degree; zero gives an empty list.
    pub fn grade(&self) -> Vec<(usize, SymElement)> {
        let mut parts: std::collections::BTreeMap<usize, LinComb<Monomial>> = Default::default();
        for (m, c) in self.terms.iter() {
            parts
                .entry(m.degree())
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        parts
            .into_iter()
            .map(|(d, terms)| (d, SymElement { dim: self.dim, terms }))
            .collect()
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Keep only components of degree at most `n`.
    pub fn truncate(&self, n: usize) -> SymElement {
        let mut terms = self.terms.clone();
        terms.retain(|m| m.degree() <= n);
        SymElement {
            dim: self.dim,
            terms,
        }
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*{}", format_scalar(c), m)?;
        }
        Ok(())
    }
}

/// `sym_mul` with the dimension check surfaced as an error.
pub fn sym_mul(a: &SymElement, b: &SymElement) -> Result<SymElement> {
    a.mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn poly(dim: usize, terms: &[(&[u16], i64)]) -> SymElement {
        let mut lc = LinComb::new();
        for (e, c) in terms {
            lc.add_term(Monomial::new(e.to_vec()), int(*c));
        }
        SymElement::from_terms(dim, lc).unwrap()
    }

    #[test]
    fn square_of_variable() {
        let x = SymElement::var(2, 0);
        assert_eq!(x.mul(&x).unwrap(), poly(2, &[(&[2, 0], 1)]));
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(a.mul(&b).unwrap(), poly(2, &[(&[2, 0], 1), (&[0, 2], -1)]));
    }

    #[test]
    fn unit_law() {
        let w = poly(2, &[(&[1, 2], 3), (&[0, 0], -1)]);
        assert_eq!(SymElement::one(2).mul(&w).unwrap(), w);
    }

    #[test]
    fn grading() {
        let w = poly(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[1, 1], 1)]);
        let g = w.grade();
        assert_eq!(g.iter().map(|p| p.0).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(SymElement::zero(2).grade().is_empty());
        let h = poly(2, &[(&[2, 0], 1), (&[0, 2], -1)]);
        assert_eq!(h.grade(), vec![(2, h.clone())]);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(SymElement::one(2).mul(&SymElement::one(3)).is_err());
    }

    #[test]
    fn divisor_enumeration() {
        let m = Monomial::new(vec![2, 1]);
        assert_eq!(m.divisors().len(), 6);
        assert_eq!(Monomial::of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::up_to_degree(2, 3).len(), 10);
    }

    fn arb_poly() -> impl Strategy<Value = SymElement> {
        prop::collection::vec(((0u16..3, 0u16..3), -3i64..4), 0..4).prop_map(|ts| {
            let mut lc = LinComb::new();
            for ((a, b), c) in ts {
                lc.add_term(Monomial::new(vec![a, b]), int(c));
            }
            SymElement::from_terms(2, lc).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        }

        #[test]
        fn degrees_add(a in arb_poly(), b in arb_poly()) {
            if let (Some(da), Some(db)) = (a.homogeneous_degree(), b.homogeneous_degree()) {
                let p = a.mul(&b).unwrap();
                if !p.is_zero() {
                    prop_assert_eq!(p.homogeneous_degree(), Some(da + db));
                }
            }
        }

        #[test]
        fn grade_sums_back(a in arb_poly()) {
            let mut sum = SymElement::zero(2);
            for (d, part) in a.grade() {
                prop_assert_eq!(part.homogeneous_degree(), Some(d));
                sum = sum.add(&part).unwrap();
            }
            prop_assert_eq!(sum, a);
        }

        #[test]
        fn canonical_form_idempotent(a in arb_poly()) {
            let again = SymElement::from_terms(2, a.terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect()).unwrap();
            prop_assert_eq!(again, a);
        }
    }
}
