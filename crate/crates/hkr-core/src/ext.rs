//! The exterior algebra: wedge monomials kept as strictly ascending index
//! lists, signs normalized on construction.

use std::fmt;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::{int, permutation_sign, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExtMonomial(Vec<u8>);

impl ExtMonomial {
    pub fn empty() -> Self {
        ExtMonomial(Vec::new())
    }

    /// Canonical form of `e_{i_1} ∧ … ∧ e_{i_k}` as `(sign, sorted)`;
    /// `None` if an index repeats.
    pub fn from_indices(indices: &[usize]) -> Option<(i64, ExtMonomial)> {
        let sign = permutation_sign(indices);
        let mut sorted: Vec<u8> = indices.iter().map(|&i| i as u8).collect();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, ExtMonomial(sorted)))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn index(&self, j: usize) -> usize {
        self.0[j] as usize
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|&i| i as usize)
    }

    /// The monomial with its j-th factor (0-based) deleted.
    pub fn without(&self, j: usize) -> ExtMonomial {
        let mut v = self.0.clone();
        v.remove(j);
        ExtMonomial(v)
    }

    /// `e_i ∧ self`.
    pub fn prepend(&self, i: usize) -> Option<(i64, ExtMonomial)> {
        let i = i as u8;
        match self.0.binary_search(&i) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, i);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                Some((sign, ExtMonomial(v)))
            }
        }
    }

    pub fn wedge(&self, other: &ExtMonomial) -> Option<(i64, ExtMonomial)> {
        let joined: Vec<usize> = self.indices().chain(other.indices()).collect();
        ExtMonomial::from_indices(&joined)
    }
}

impl fmt::Display for ExtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("e{}", i + 1)).collect();
        write!(f, "{}", parts.join("^"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement {
    dim: usize,
    terms: LinComb<ExtMonomial>,
}

impl ExtElement {
    pub fn zero(dim: usize) -> Self {
        ExtElement {
            dim,
            terms: LinComb::new(),
        }
    }

    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut out = ExtElement::zero(dim);
        for &i in indices {
            if i >= dim {
                return Err(Error::DimensionMismatch { left: dim, right: i + 1 });
            }
        }
        if let Some((sign, m)) = ExtMonomial::from_indices(indices) {
            out.terms.add_term(m, int(sign));
        }
        Ok(out)
    }

    pub fn from_terms(dim: usize, terms: LinComb<ExtMonomial>) -> Result<Self> {
        for m in terms.keys() {
            if let Some(i) = m.max_index() {
                if i >= dim {
                    return Err(Error::DimensionMismatch { left: dim, right: i + 1 });
                }
            }
        }
        Ok(ExtElement { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &LinComb<ExtMonomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(ExtMonomial::len);
        let first = lens.next()?;
        lens.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &ExtElement) -> Result<ExtElement> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(ExtElement { dim: self.dim, terms: self.terms.plus(&other.terms) })
    }

    pub fn scale(&self, c: &Scalar) -> ExtElement {
        ExtElement { dim: self.dim, terms: self.terms.scaled(c) }
    }

    pub fn wedge(&self, other: &ExtElement) -> Result<ExtElement> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut terms = LinComb::new();
        for (u, cu) in self.terms.iter() {
            for (v, cv) in other.terms.iter() {
                if let Some((sign, w)) = u.wedge(v) {
                    terms.add_term(w, cu * cv * int(sign));
                }
            }
        }
        Ok(ExtElement { dim: self.dim, terms })
    }
}

pub fn wedge_mul(u: &ExtElement, v: &ExtElement) -> Result<ExtElement> {
    u.wedge(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(dim: usize, idx: &[usize]) -> ExtElement {
        ExtElement::basis(dim, idx).unwrap()
    }

    #[test]
    fn antisymmetry() {
        assert_eq!(e(3, &[0]).wedge(&e(3, &[1])).unwrap(), e(3, &[0, 1]));
        assert_eq!(e(3, &[1]).wedge(&e(3, &[0])).unwrap(), e(3, &[0, 1]).scale(&int(-1)));
        assert!(e(3, &[0]).wedge(&e(3, &[0])).unwrap().is_zero());
        assert_eq!(e(3, &[0, 1]).wedge(&e(3, &[2])).unwrap(), e(3, &[0, 1, 2]));
    }

    #[test]
    fn prepend_sign() {
        let u = ExtMonomial::from_indices(&[0, 2]).unwrap().1;
        let (s, w) = u.prepend(1).unwrap();
        assert_eq!(s, -1);
        assert_eq!(w, ExtMonomial::from_indices(&[0, 1, 2]).unwrap().1);
        assert!(u.prepend(2).is_none());
    }

    fn arb_ext() -> impl Strategy<Value = ExtElement> {
        prop::collection::vec((prop::collection::vec(0usize..4, 0..4), -2i64..3), 0..4).prop_map(|ts| {
            let mut out = ExtElement::zero(4);
            for (idx, c) in ts {
                out = out.add(&e(4, &idx).scale(&int(c))).unwrap();
            }
            out
        })
    }

    fn arb_homogeneous(k: usize) -> impl Strategy<Value = ExtElement> {
        prop::collection::vec((prop::sample::subsequence(vec![0usize, 1, 2, 3], k), -2i64..3), 0..4).prop_map(|ts| {
            let mut out = ExtElement::zero(4);
            for (idx, c) in ts {
                out = out.add(&e(4, &idx).scale(&int(c))).unwrap();
            }
            out
        })
    }

    proptest! {
        #[test]
        fn graded_commutativity((p, q, u, v) in (0usize..3, 0usize..3)
            .prop_flat_map(|(p, q)| (Just(p), Just(q), arb_homogeneous(p), arb_homogeneous(q)))) {
            let sign = if (p * q) % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(u.wedge(&v).unwrap(), v.wedge(&u).unwrap().scale(&int(sign)));
        }

        #[test]
        fn odd_squares_vanish(u in arb_homogeneous(1)) {
            prop_assert!(u.wedge(&u).unwrap().is_zero());
        }

        #[test]
        fn associativity(a in arb_ext(), b in arb_ext(), c in arb_ext()) {
            prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
        }
    }
}
