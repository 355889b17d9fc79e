//! The enveloping algebra `A ⊗ A` with `(a⊗b)(ã⊗b̃) = (aã)⊗(b̃b)`.

use num::One;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::Scalar;
use crate::sym::{Monomial, SymElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AePair {
    dim: usize,
    terms: LinComb<(Monomial, Monomial)>,
}

impl AePair {
    pub fn one(dim: usize) -> Self {
        Self::basis(Monomial::one(dim), Monomial::one(dim), Scalar::one())
    }

    pub fn zero(dim: usize) -> Self {
        AePair { dim, terms: LinComb::new() }
    }

    pub fn basis(left: Monomial, right: Monomial, c: Scalar) -> Self {
        AePair {
            dim: left.dim(),
            terms: LinComb::single((left, right), c),
        }
    }

    /// `a ⊗ b` for polynomials, expanded bilinearly.
    pub fn tensor(a: &SymElement, b: &SymElement) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
        }
        let mut terms = LinComb::new();
        for (x, cx) in a.terms() {
            for (y, cy) in b.terms() {
                terms.add_term((x.clone(), y.clone()), cx * cy);
            }
        }
        Ok(AePair { dim: a.dim(), terms })
    }

    pub fn from_terms(dim: usize, terms: LinComb<(Monomial, Monomial)>) -> Self {
        AePair { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &LinComb<(Monomial, Monomial)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &AePair) -> Result<AePair> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(AePair { dim: self.dim, terms: self.terms.plus(&other.terms) })
    }

    pub fn scale(&self, c: &Scalar) -> AePair {
        AePair { dim: self.dim, terms: self.terms.scaled(c) }
    }

    pub fn mul(&self, other: &AePair) -> Result<AePair> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut terms = LinComb::new();
        for ((a, b), c) in self.terms.iter() {
            for ((a2, b2), c2) in other.terms.iter() {
                // left factors in A, right factors in the opposite algebra
                terms.add_term((a.mul(a2), b2.mul(b)), c * c2);
            }
        }
        Ok(AePair { dim: self.dim, terms })
    }
}

pub fn ae_mul(p: &AePair, q: &AePair) -> Result<AePair> {
    p.mul(q)
}
