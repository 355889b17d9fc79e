//! Sparse rational linear combinations over an ordered key type.
//!
//! Every element type in the crate is a `LinComb` over some basis key, so
//! canonical form (no stored zeros, sorted keys) is enforced in one place.

use std::collections::btree_map::{self, BTreeMap};

use num::Zero;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: Scalar) -> Self {
        let mut out = Self::new();
        out.add_term(key, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (k, c) in other.iter() {
            self.add_term(k.clone(), -c.clone());
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn scaled(&self, factor: &Scalar) -> Self {
        if factor.is_zero() {
            return Self::new();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        LinComb {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    /// Linear extension of a basis map.
    pub fn map_linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2>) -> LinComb<K2> {
        let mut out = LinComb::new();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// `c·key + …` with keys in debug form; `0` when empty.
    pub fn describe(&self) -> String
    where
        K: std::fmt::Debug,
    {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self.iter().map(|(k, c)| format!("{}·{k:?}", crate::scalar::format_scalar(c))).collect();
        parts.join(" + ")
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&K) -> bool) {
        self.terms.retain(|k, _| keep(k));
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut out = LinComb::new();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}
