//! The Bar resolution `C_k = A^{⊗(k+2)}` of the polynomial algebra.

use num::One;

use crate::ae::AePair;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::{int, Scalar};
use crate::sym::{Monomial, SymElement};

/// Basis tuple `x_0 ⊗ x_1 ⊗ … ⊗ x_{k+1}`.
pub type BarKey = Vec<Monomial>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarChain {
    dim: usize,
    arity: usize,
    terms: LinComb<BarKey>,
}

impl BarChain {
    pub fn zero(dim: usize, arity: usize) -> Self {
        BarChain { dim, arity, terms: LinComb::new() }
    }

    pub fn basis(tuple: BarKey, c: Scalar) -> Self {
        assert!(tuple.len() >= 2, "a bar tuple has at least two slots");
        BarChain {
            dim: tuple[0].dim(),
            arity: tuple.len() - 2,
            terms: LinComb::single(tuple, c),
        }
    }

    /// `1 ⊗ m_1 ⊗ … ⊗ m_k ⊗ 1`.
    pub fn middle(dim: usize, mids: &[Monomial]) -> Self {
        let mut tuple = Vec::with_capacity(mids.len() + 2);
        tuple.push(Monomial::one(dim));
        tuple.extend_from_slice(mids);
        tuple.push(Monomial::one(dim));
        BarChain { dim, arity: mids.len(), terms: LinComb::single(tuple, Scalar::one()) }
    }

    pub fn from_terms(dim: usize, arity: usize, terms: LinComb<BarKey>) -> Result<Self> {
        for t in terms.keys() {
            if t.len() != arity + 2 {
                return Err(Error::ArityMismatch { expected: arity + 2, found: t.len() });
            }
            for m in t {
                if m.dim() != dim {
                    return Err(Error::DimensionMismatch { left: dim, right: m.dim() });
                }
            }
        }
        Ok(BarChain { dim, arity, terms })
    }

    pub(crate) fn from_terms_unchecked(dim: usize, arity: usize, terms: LinComb<BarKey>) -> Self {
        BarChain { dim, arity, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &LinComb<BarKey> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn check_shape(&self, other: &BarChain) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    pub fn add(&self, other: &BarChain) -> Result<BarChain> {
        self.check_shape(other)?;
        Ok(BarChain { dim: self.dim, arity: self.arity, terms: self.terms.plus(&other.terms) })
    }

    pub fn sub(&self, other: &BarChain) -> Result<BarChain> {
        self.check_shape(other)?;
        Ok(BarChain { dim: self.dim, arity: self.arity, terms: self.terms.minus(&other.terms) })
    }

    pub fn scale(&self, c: &Scalar) -> BarChain {
        BarChain { dim: self.dim, arity: self.arity, terms: self.terms.scaled(c) }
    }

    /// `d_k = Σ_{j=0}^{k} (-1)^j x_0⊗…⊗x_j x_{j+1}⊗…⊗x_{k+1}`.
    pub fn differential(&self) -> Result<BarChain> {
        if self.arity == 0 {
            return Err(Error::Level { op: "bar differential", level: 0 });
        }
        let k = self.arity;
        let mut terms = LinComb::new();
        for (t, c) in self.terms.iter() {
            for j in 0..=k {
                let mut merged = Vec::with_capacity(k + 1);
                merged.extend_from_slice(&t[..j]);
                merged.push(t[j].mul(&t[j + 1]));
                merged.extend_from_slice(&t[j + 2..]);
                terms.add_term(merged, if j % 2 == 0 { c.clone() } else { -c });
            }
        }
        Ok(BarChain { dim: self.dim, arity: k - 1, terms })
    }

    /// The contracting homotopy `x_0⊗…⊗x_{k+1} ↦ 1⊗x_0⊗…⊗x_{k+1}`.
    pub fn contract(&self) -> BarChain {
        let one = Monomial::one(self.dim);
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| {
                let mut u = Vec::with_capacity(t.len() + 1);
                u.push(one.clone());
                u.extend_from_slice(t);
                (u, c.clone())
            })
            .collect();
        BarChain { dim: self.dim, arity: self.arity + 1, terms }
    }

    /// `ε(a⊗b) = ab`.
    pub fn augment(&self) -> Result<SymElement> {
        if self.arity != 0 {
            return Err(Error::ArityMismatch { expected: 0, found: self.arity });
        }
        let terms = self.terms.iter().map(|(t, c)| (t[0].mul(&t[1]), c.clone())).collect();
        Ok(SymElement::from_terms_unchecked(self.dim, terms))
    }

    /// `(a⊗b)·(x_0⊗…⊗x_{k+1}) = (a x_0)⊗…⊗(x_{k+1} b)`.
    pub fn act(&self, p: &AePair) -> Result<BarChain> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: p.dim(), right: self.dim });
        }
        let mut terms = LinComb::new();
        for ((a, b), cp) in p.terms() {
            for (t, c) in self.terms.iter() {
                terms.add_term(act_key(a, b, t), cp * c);
            }
        }
        Ok(BarChain { dim: self.dim, arity: self.arity, terms })
    }

    /// Largest degree appearing in any single slot.
    pub fn max_slot_degree(&self) -> usize {
        self.terms.keys().flat_map(|t| t.iter().map(Monomial::degree)).max().unwrap_or(0)
    }
}

pub(crate) fn act_key(a: &Monomial, b: &Monomial, t: &[Monomial]) -> BarKey {
    let n = t.len();
    let mut u = t.to_vec();
    u[0] = a.mul(&t[0]);
    u[n - 1] = t[n - 1].mul(b);
    u
}

/// Contracting homotopy at an explicit level: level `k ≥ 0` takes arity-k
/// chains.
pub fn bar_h(c: &BarChain, level: isize) -> Result<BarChain> {
    if level < 0 || level as usize != c.arity() {
        return Err(Error::Level { op: "bar homotopy", level });
    }
    Ok(c.contract())
}

/// Contracting homotopy at level −1: `α ↦ 1⊗α`.
pub fn bar_h_unit(a: &SymElement) -> BarChain {
    let one = Monomial::one(a.dim());
    let terms = a.terms().iter().map(|(m, c)| (vec![one.clone(), m.clone()], c.clone())).collect();
    BarChain::from_terms_unchecked(a.dim(), 0, terms)
}

pub fn bar_d(c: &BarChain) -> Result<BarChain> {
    c.differential()
}

pub(crate) fn sign(j: usize) -> Scalar {
    if j % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn d1_on_single_variable() {
        let x = m(&[1, 0]);
        let one = m(&[0, 0]);
        let c = BarChain::middle(2, &[x.clone()]);
        let expected = BarChain::basis(vec![x.clone(), one.clone()], int(1))
            .sub(&BarChain::basis(vec![one.clone(), x], int(1)))
            .unwrap();
        assert_eq!(c.differential().unwrap(), expected);
    }

    #[test]
    fn d2_expansion() {
        let (x, y, one) = (m(&[1, 0]), m(&[0, 1]), m(&[0, 0]));
        let c = BarChain::middle(2, &[x.clone(), y.clone()]);
        // x⊗y⊗1 − 1⊗xy⊗1 + 1⊗x⊗y
        let mut expected = LinComb::new();
        expected.add_term(vec![x.clone(), y.clone(), one.clone()], int(1));
        expected.add_term(vec![one.clone(), x.mul(&y), one.clone()], int(-1));
        expected.add_term(vec![one, x, y], int(1));
        assert_eq!(c.differential().unwrap().terms(), &expected);
    }

    #[test]
    fn homotopy_prepends_unit() {
        let (x, y, z) = (m(&[1, 0]), m(&[0, 1]), m(&[1, 1]));
        let c = BarChain::basis(vec![x.clone(), y.clone(), z.clone()], int(1));
        let h = bar_h(&c, 1).unwrap();
        assert_eq!(h, BarChain::basis(vec![m(&[0, 0]), x, y, z], int(1)));
        assert!(bar_h(&c, 0).is_err());
    }

    #[test]
    fn augmentation() {
        let (x, y) = (m(&[1, 0]), m(&[0, 1]));
        let c = BarChain::basis(vec![x.clone(), y.clone()], int(1));
        assert_eq!(c.augment().unwrap(), SymElement::monomial(x.mul(&y), int(1)));
        let a = SymElement::monomial(x.clone(), int(3));
        assert_eq!(bar_h_unit(&a).augment().unwrap(), a);
        let d = BarChain::middle(2, &[x]).differential().unwrap();
        assert!(d.augment().unwrap().is_zero());
    }

    #[test]
    fn action_on_outer_slots() {
        let (a, b, x0, x1, x2) = (m(&[1, 0]), m(&[0, 1]), m(&[0, 2]), m(&[1, 1]), m(&[2, 0]));
        let c = BarChain::basis(vec![x0.clone(), x1.clone(), x2.clone()], int(1));
        let p = AePair::basis(a.clone(), b.clone(), int(1));
        assert_eq!(
            c.act(&p).unwrap(),
            BarChain::basis(vec![a.mul(&x0), x1, x2.mul(&b)], int(1))
        );
        assert_eq!(c.act(&AePair::one(2)).unwrap(), c);
    }
}
