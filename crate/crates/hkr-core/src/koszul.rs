//! The Koszul resolution `K_k = A^e ⊗ Λ^k(V)` with its differential, the
//! Koszul derivative δ, the path `i_t` and the integrated homotopy.

use crate::ae::AePair;
use crate::error::{Error, Result};
use crate::ext::ExtMonomial;
use crate::lincomb::LinComb;
use crate::scalar::{from_bigint, int, Scalar};
use crate::sym::{Monomial, SymElement};
use crate::tpoly::TPoly;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KoszulKey {
    pub left: Monomial,
    pub right: Monomial,
    pub wedge: ExtMonomial,
}

impl KoszulKey {
    pub fn new(left: Monomial, right: Monomial, wedge: ExtMonomial) -> Self {
        KoszulKey { left, right, wedge }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KoszulChain {
    dim: usize,
    degree: usize,
    terms: LinComb<KoszulKey>,
}

impl KoszulChain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        KoszulChain { dim, degree, terms: LinComb::new() }
    }

    pub fn basis(key: KoszulKey, c: Scalar) -> Self {
        KoszulChain { dim: key.left.dim(), degree: key.wedge.len(), terms: LinComb::single(key, c) }
    }

    pub fn from_terms(dim: usize, degree: usize, terms: LinComb<KoszulKey>) -> Result<Self> {
        for k in terms.keys() {
            if k.wedge.len() != degree {
                return Err(Error::Degree { expected: degree, found: k.wedge.len() });
            }
            for m in [&k.left, &k.right] {
                if m.dim() != dim {
                    return Err(Error::DimensionMismatch { left: dim, right: m.dim() });
                }
            }
            if let Some(i) = k.wedge.max_index() {
                if i >= dim {
                    return Err(Error::DimensionMismatch { left: dim, right: i + 1 });
                }
            }
        }
        Ok(KoszulChain { dim, degree, terms })
    }

    pub(crate) fn from_terms_unchecked(dim: usize, degree: usize, terms: LinComb<KoszulKey>) -> Self {
        KoszulChain { dim, degree, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &LinComb<KoszulKey> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn check_shape(&self, other: &KoszulChain) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.degree != other.degree {
            return Err(Error::Degree { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn add(&self, other: &KoszulChain) -> Result<KoszulChain> {
        self.check_shape(other)?;
        Ok(KoszulChain { dim: self.dim, degree: self.degree, terms: self.terms.plus(&other.terms) })
    }

    pub fn sub(&self, other: &KoszulChain) -> Result<KoszulChain> {
        self.check_shape(other)?;
        Ok(KoszulChain { dim: self.dim, degree: self.degree, terms: self.terms.minus(&other.terms) })
    }

    pub fn scale(&self, c: &Scalar) -> KoszulChain {
        KoszulChain { dim: self.dim, degree: self.degree, terms: self.terms.scaled(c) }
    }

    /// The two halves of the differential, `∂ = ∂_left − ∂_right`:
    /// `∂_left(α⊗β⊗u) = Σ_j (−1)^{j−1} u_j α⊗β⊗u^j` and
    /// `∂_right(α⊗β⊗u) = Σ_j (−1)^{j−1} α⊗u_j β⊗u^j`.
    pub fn boundary_halves(&self) -> Result<(KoszulChain, KoszulChain)> {
        if self.degree == 0 {
            return Err(Error::Level { op: "koszul differential", level: 0 });
        }
        let mut left = LinComb::new();
        let mut right = LinComb::new();
        for (key, c) in self.terms.iter() {
            for j in 0..key.wedge.len() {
                let i = key.wedge.index(j);
                let rest = key.wedge.without(j);
                let c = if j % 2 == 0 { c.clone() } else { -c };
                left.add_term(KoszulKey::new(key.left.raise(i), key.right.clone(), rest.clone()), c.clone());
                right.add_term(KoszulKey::new(key.left.clone(), key.right.raise(i), rest), c);
            }
        }
        let d = self.degree - 1;
        Ok((
            KoszulChain { dim: self.dim, degree: d, terms: left },
            KoszulChain { dim: self.dim, degree: d, terms: right },
        ))
    }

    pub fn boundary(&self) -> Result<KoszulChain> {
        let (l, r) = self.boundary_halves()?;
        l.sub(&r)
    }

    /// `δ(x^a⊗β⊗u) = Σ_i a_i x^{a−e_i}⊗β⊗(e_i∧u)`.
    pub fn delta(&self) -> KoszulChain {
        let mut terms = LinComb::new();
        for (key, c) in self.terms.iter() {
            for i in 0..self.dim {
                let Some(lowered) = key.left.lower(i) else { continue };
                let Some((sign, wedge)) = key.wedge.prepend(i) else { continue };
                let mult = key.left.exponents()[i] as i64;
                terms.add_term(KoszulKey::new(lowered, key.right.clone(), wedge), c * int(sign * mult));
            }
        }
        KoszulChain { dim: self.dim, degree: self.degree + 1, terms }
    }

    /// `i_t(x^a⊗β⊗u) = Σ_{b≤a} C(a,b) t^{|a|−|b|}(1−t)^{|b|} x^{a−b}⊗x^b β⊗u`.
    pub fn path(&self) -> TPoly<KoszulKey> {
        let mut out = TPoly::zero(1);
        for (key, c) in self.terms.iter() {
            push_path(&mut out, key, c);
        }
        out
    }

    /// `∫_0^1 t^k i_t(μ) dt`.
    pub fn integrated_path(&self, k: usize) -> KoszulChain {
        let terms = self.path().shift(0, k as u32).simplex_integrate();
        KoszulChain { dim: self.dim, degree: self.degree, terms }
    }

    /// `h_k(μ) = ∫_0^1 t^k (i_t ∘ δ)(μ) dt` for μ of degree k.
    pub fn homotopy(&self, k: usize) -> Result<KoszulChain> {
        if self.degree != k {
            return Err(Error::Degree { expected: k, found: self.degree });
        }
        Ok(self.delta().integrated_path(k))
    }

    /// `ε(α⊗β) = αβ`.
    pub fn augment(&self) -> Result<SymElement> {
        if self.degree != 0 {
            return Err(Error::Degree { expected: 0, found: self.degree });
        }
        let terms = self.terms.iter().map(|(k, c)| (k.left.mul(&k.right), c.clone())).collect();
        Ok(SymElement::from_terms_unchecked(self.dim, terms))
    }

    /// Left factor multiplies the first slot, right factor the second.
    pub fn act(&self, p: &AePair) -> Result<KoszulChain> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: p.dim(), right: self.dim });
        }
        let mut terms = LinComb::new();
        for ((a, b), cp) in p.terms() {
            for (k, c) in self.terms.iter() {
                terms.add_term(KoszulKey::new(a.mul(&k.left), k.right.mul(b), k.wedge.clone()), cp * c);
            }
        }
        Ok(KoszulChain { dim: self.dim, degree: self.degree, terms })
    }

    /// Componentwise product `(αα̃)⊗(ββ̃)⊗(u∧ũ)`.
    pub fn product(&self, other: &KoszulChain) -> Result<KoszulChain> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut terms = LinComb::new();
        for (a, ca) in self.terms.iter() {
            for (b, cb) in other.terms.iter() {
                if let Some(key) = key_product(a, b) {
                    terms.add_term(key.1, ca * cb * int(key.0));
                }
            }
        }
        Ok(KoszulChain { dim: self.dim, degree: self.degree + other.degree, terms })
    }
}

pub(crate) fn key_product(a: &KoszulKey, b: &KoszulKey) -> Option<(i64, KoszulKey)> {
    let (sign, wedge) = a.wedge.wedge(&b.wedge)?;
    Some((sign, KoszulKey::new(a.left.mul(&b.left), a.right.mul(&b.right), wedge)))
}

fn push_path(out: &mut TPoly<KoszulKey>, key: &KoszulKey, c: &Scalar) {
    let total = key.left.degree() as u32;
    for b in key.left.divisors() {
        let weight = c * from_bigint(key.left.binomial(&b));
        let moved = b.degree() as u32;
        let target = KoszulKey::new(
            key.left.div(&b).expect("divisor"),
            b.mul(&key.right),
            key.wedge.clone(),
        );
        out.add_beta_term(0, total - moved, moved, &target, &weight);
    }
}

/// `h_{-1}(α) = 1⊗α`.
pub fn koszul_h_unit(a: &SymElement) -> KoszulChain {
    let one = Monomial::one(a.dim());
    let terms = a
        .terms()
        .iter()
        .map(|(m, c)| (KoszulKey::new(one.clone(), m.clone(), ExtMonomial::empty()), c.clone()))
        .collect();
    KoszulChain::from_terms_unchecked(a.dim(), 0, terms)
}

pub fn koszul_partial(c: &KoszulChain) -> Result<KoszulChain> {
    c.boundary()
}

pub fn koszul_delta(c: &KoszulChain) -> KoszulChain {
    c.delta()
}

pub fn koszul_i_t(c: &KoszulChain) -> TPoly<KoszulKey> {
    c.path()
}

pub fn koszul_h(c: &KoszulChain, k: usize) -> Result<KoszulChain> {
    c.homotopy(k)
}
