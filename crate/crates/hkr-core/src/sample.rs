//! Seeded random elements. Every random element is a sparse combination of
//! monomials with coefficients in {−2, −1, 1, 2}.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bar::BarChain;
use crate::bimodule::SymBimodule;
use crate::cochain::{Cochain, MultilinearTable};
use crate::ext::ExtMonomial;
use crate::koszul::{KoszulChain, KoszulKey};
use crate::lincomb::LinComb;
use crate::scalar::{int, Scalar};
use crate::sym::{Monomial, SymElement};

pub type SampleRng = ChaCha8Rng;

/// Independent generator for one named stream under a seed.
pub fn stream(seed: u64, name: &str) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    rng.set_stream(id);
    rng
}

pub fn coeff(rng: &mut SampleRng) -> Scalar {
    int(*[-2i64, -1, 1, 2].choose(rng).expect("nonempty"))
}

pub fn monomial(rng: &mut SampleRng, dim: usize, max_degree: usize) -> Monomial {
    let pool = Monomial::up_to_degree(dim, max_degree);
    pool.choose(rng).expect("nonempty").clone()
}

fn combination<K: Ord + Clone>(rng: &mut SampleRng, terms: usize, mut key: impl FnMut(&mut SampleRng) -> K) -> LinComb<K> {
    let mut out = LinComb::new();
    for _ in 0..terms {
        let k = key(rng);
        let c = coeff(rng);
        out.add_term(k, c);
    }
    out
}

pub fn sym(rng: &mut SampleRng, dim: usize, max_degree: usize, terms: usize) -> SymElement {
    let pool = Monomial::up_to_degree(dim, max_degree);
    let t = combination(rng, terms, |r| pool.choose(r).expect("nonempty").clone());
    SymElement::from_terms(dim, t).expect("dimension")
}

pub fn homogeneous(rng: &mut SampleRng, dim: usize, degree: usize, terms: usize) -> SymElement {
    let pool = Monomial::of_degree(dim, degree);
    let t = combination(rng, terms, |r| pool.choose(r).expect("nonempty").clone());
    SymElement::from_terms(dim, t).expect("dimension")
}

pub fn wedge(rng: &mut SampleRng, dim: usize, k: usize) -> ExtMonomial {
    let mut idx: Vec<usize> = (0..dim).collect();
    idx.shuffle(rng);
    idx.truncate(k);
    idx.sort_unstable();
    ExtMonomial::from_indices(&idx).expect("distinct").1
}

pub fn koszul(rng: &mut SampleRng, dim: usize, k: usize, max_degree: usize, terms: usize) -> KoszulChain {
    let pool = Monomial::up_to_degree(dim, max_degree);
    let t = combination(rng, terms, |r| {
        let left = pool.choose(r).expect("nonempty").clone();
        let right = pool.choose(r).expect("nonempty").clone();
        KoszulKey::new(left, right, wedge(r, dim, k))
    });
    KoszulChain::from_terms(dim, k, t).expect("shape")
}

pub fn bar(rng: &mut SampleRng, dim: usize, arity: usize, max_degree: usize, terms: usize) -> BarChain {
    let pool = Monomial::up_to_degree(dim, max_degree);
    let t = combination(rng, terms, |r| (0..arity + 2).map(|_| pool.choose(r).expect("nonempty").clone()).collect());
    BarChain::from_terms(dim, arity, t).expect("shape")
}

/// A Bar chain `1⊗x_1⊗…⊗x_k⊗1` combination.
pub fn bar_middle(rng: &mut SampleRng, dim: usize, arity: usize, max_degree: usize, terms: usize) -> BarChain {
    let pool = Monomial::up_to_degree(dim, max_degree);
    let one = Monomial::one(dim);
    let t = combination(rng, terms, |r| {
        let mut key = vec![one.clone()];
        key.extend((0..arity).map(|_| pool.choose(r).expect("nonempty").clone()));
        key.push(one.clone());
        key
    });
    BarChain::from_terms(dim, arity, t).expect("shape")
}

/// Random antisymmetric table with polynomial values.
pub fn antisymmetric_table(rng: &mut SampleRng, dim: usize, k: usize, max_degree: usize) -> MultilinearTable<Monomial> {
    let mut entries = Vec::new();
    if k <= dim {
        let subsets = itertools::Itertools::combinations(0..dim, k);
        for idx in subsets {
            if rng.gen_bool(0.75) {
                entries.push((idx, sym(rng, dim, max_degree, 2).into_terms()));
            }
        }
    }
    MultilinearTable::antisymmetric(dim, k, entries).expect("valid indices")
}

/// Random cochain supported on a few monomial tuples.
pub fn point_cochain(rng: &mut SampleRng, dim: usize, arity: usize, max_degree: usize, points: usize) -> Cochain<SymBimodule> {
    let mut values = BTreeMap::new();
    for _ in 0..points {
        let args: Vec<Monomial> = (0..arity).map(|_| monomial(rng, dim, max_degree)).collect();
        values.insert(args, sym(rng, dim, max_degree, 2).into_terms());
    }
    Cochain::points(arity, values).expect("arity")
}

/// Random combination of words `e_{i_1}⊗…⊗e_{i_k}`.
pub fn tensor_words(rng: &mut SampleRng, dim: usize, k: usize, terms: usize) -> LinComb<Vec<usize>> {
    combination(rng, terms, |r| (0..k).map(|_| r.gen_range(0..dim)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a: Vec<Scalar> = (0..20).map(|_| coeff(&mut stream(7, "x"))).collect();
        let b: Vec<Scalar> = (0..20).map(|_| coeff(&mut stream(7, "x"))).collect();
        assert_eq!(a, b);
        let mut r1 = stream(7, "x");
        let mut r2 = stream(7, "y");
        let s1: Vec<Scalar> = (0..32).map(|_| coeff(&mut r1)).collect();
        let s2: Vec<Scalar> = (0..32).map(|_| coeff(&mut r2)).collect();
        assert_ne!(s1, s2);
    }

    #[test]
    fn coefficients_in_range() {
        let mut r = stream(1, "c");
        for _ in 0..200 {
            let c = coeff(&mut r);
            assert!(c != int(0) && c >= int(-2) && c <= int(2));
        }
    }

    #[test]
    fn table_is_antisymmetric() {
        let mut r = stream(3, "t");
        for k in 1..=3 {
            assert!(antisymmetric_table(&mut r, 3, k, 2).is_antisymmetric());
        }
    }
}
