//! Comparison maps between the Koszul and Bar resolutions, the retraction
//! `Ω = F∘G` onto the Koszul image, A^e-linearization and the recursive
//! homotopy `s` with `id − Ω = d s + s d`.

use std::borrow::Borrow;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use num::One;

use crate::ae::AePair;
use crate::bar::{act_key, BarChain};
use crate::ext::ExtMonomial;
use crate::koszul::{KoszulChain, KoszulKey};
use crate::lincomb::LinComb;
use crate::scalar::{from_bigint, int, permutation_sign, Scalar};
use crate::sym::Monomial;
use crate::tpoly::TPoly;

/// `F_k(α⊗β⊗u_1∧…∧u_k) = Σ_σ sign(σ) α⊗u_{σ(1)}⊗…⊗u_{σ(k)}⊗β`.
pub fn koszul_to_bar(c: &KoszulChain) -> BarChain {
    let dim = c.dim();
    let k = c.degree();
    let mut terms = LinComb::new();
    for (key, coeff) in c.terms() {
        let idx: Vec<usize> = key.wedge.indices().collect();
        for perm in idx.iter().copied().permutations(k) {
            let sign = permutation_sign(&perm);
            let mut tuple = Vec::with_capacity(k + 2);
            tuple.push(key.left.clone());
            tuple.extend(perm.iter().map(|&i| Monomial::var(dim, i)));
            tuple.push(key.right.clone());
            terms.add_term(tuple, coeff * int(sign));
        }
    }
    BarChain::from_terms_unchecked(dim, k, terms)
}

/// `î_t(1⊗x^c⊗1) = Σ_{b≤c} C(c,b) t^{|c|−|b|}(1−t)^{|b|} x^{c−b}⊗x^b` in the
/// variable `var` of a `vars`-variable polynomial.
pub fn hat_path(c: &Monomial, var: usize, vars: usize) -> TPoly<(Monomial, Monomial)> {
    let mut out = TPoly::zero(vars);
    let total = c.degree() as u32;
    for b in c.divisors() {
        let moved = b.degree() as u32;
        let weight = from_bigint(c.binomial(&b));
        let key = (c.div(&b).expect("divisor"), b);
        out.add_beta_term(var, total - moved, moved, &key, &weight);
    }
    out
}

/// `G_k(1⊗x^{a_1}⊗…⊗x^{a_k}⊗1)`.
pub fn bar_to_koszul_middle(dim: usize, mids: &[Monomial]) -> KoszulChain {
    let k = mids.len();
    let one = Monomial::one(dim);
    if k == 0 {
        return KoszulChain::basis(KoszulKey::new(one.clone(), one, ExtMonomial::empty()), Scalar::one());
    }
    // per slot: (variable index, multiplicity, reduced monomial)
    let choices: Vec<Vec<(usize, i64, Monomial)>> = mids
        .iter()
        .map(|a| {
            (0..dim)
                .filter_map(|i| a.lower(i).map(|c| (i, a.exponents()[i] as i64, c)))
                .collect()
        })
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return KoszulChain::zero(dim, k);
    }
    let mut path_cache: HashMap<(usize, Monomial), TPoly<(Monomial, Monomial)>> = HashMap::new();
    let mut terms = LinComb::new();
    for combo in choices.iter().map(|v| v.iter()).multi_cartesian_product() {
        let indices: Vec<usize> = combo.iter().map(|c| c.0).collect();
        let Some((sign, wedge)) = ExtMonomial::from_indices(&indices) else { continue };
        let weight = int(sign * combo.iter().map(|c| c.1).product::<i64>());
        let mut acc = TPoly::constant(k, &LinComb::single((one.clone(), one.clone()), Scalar::one()));
        for (s, choice) in combo.iter().enumerate() {
            let factor = path_cache
                .entry((s, choice.2.clone()))
                .or_insert_with(|| hat_path(&choice.2, s, k));
            acc = acc.product(factor, |(l1, r1), (l2, r2)| Some((1, (l1.mul(l2), r1.mul(r2)))));
        }
        for ((l, r), c) in &acc.simplex_integrate() {
            terms.add_term(KoszulKey::new(l.clone(), r.clone(), wedge.clone()), c * &weight);
        }
    }
    KoszulChain::from_terms_unchecked(dim, k, terms)
}

fn bar_to_koszul_with<R: Borrow<KoszulChain>>(c: &BarChain, mut middle: impl FnMut(&[Monomial]) -> R) -> KoszulChain {
    let k = c.arity();
    let mut terms = LinComb::new();
    for (t, coeff) in c.terms() {
        let image = middle(&t[1..k + 1]);
        let image: &KoszulChain = image.borrow();
        let (a, b) = (&t[0], &t[k + 1]);
        for (key, ck) in image.terms() {
            terms.add_term(KoszulKey::new(a.mul(&key.left), key.right.mul(b), key.wedge.clone()), coeff * ck);
        }
    }
    KoszulChain::from_terms_unchecked(c.dim(), k, terms)
}

/// `G_k`, extended A^e-linearly from the middle slots.
pub fn bar_to_koszul(c: &BarChain) -> KoszulChain {
    bar_to_koszul_with(c, |mids| bar_to_koszul_middle(c.dim(), mids))
}

/// `Ω_k = F_k ∘ G_k`.
pub fn omega(c: &BarChain) -> BarChain {
    koszul_to_bar(&bar_to_koszul(c))
}

/// The A^e-linearization `v⊗m⊗w ↦ (v⊗w) · φ(1⊗m⊗1)` of a linear map on Bar
/// chains.
pub fn ae_linearize<'a>(phi: impl Fn(&BarChain) -> BarChain + 'a) -> impl Fn(&BarChain) -> BarChain + 'a {
    move |c: &BarChain| linearize_with(c, |mids| phi(&BarChain::middle(c.dim(), mids)))
}

fn linearize_with<R: Borrow<BarChain>>(c: &BarChain, mut middle: impl FnMut(&[Monomial]) -> R) -> BarChain {
    let k = c.arity();
    let mut terms = LinComb::new();
    let mut arity = None;
    for (t, coeff) in c.terms() {
        let image = middle(&t[1..k + 1]);
        let image: &BarChain = image.borrow();
        arity = Some(image.arity());
        for (u, cu) in image.terms() {
            terms.add_term(act_key(&t[0], &t[k + 1], u), coeff * cu);
        }
    }
    let arity = arity.unwrap_or_else(|| middle_arity_of_zero(c, &mut middle));
    BarChain::from_terms_unchecked(c.dim(), arity, terms)
}

fn middle_arity_of_zero<R: Borrow<BarChain>>(c: &BarChain, middle: &mut impl FnMut(&[Monomial]) -> R) -> usize {
    let mids = vec![Monomial::one(c.dim()); c.arity()];
    middle(&mids).borrow().arity()
}

/// Cached comparison data for one ambient dimension: `G` on middle tuples
/// and the homotopy `s` on middle tuples. Both are pure, so the caches only
/// ever store the unique value for a key.
pub struct Comparison {
    dim: usize,
    koszul_cache: Mutex<HashMap<Vec<Monomial>, Arc<KoszulChain>>>,
    homotopy_cache: Mutex<HashMap<Vec<Monomial>, Arc<BarChain>>>,
}

impl Comparison {
    pub fn new(dim: usize) -> Self {
        Comparison { dim, koszul_cache: Mutex::default(), homotopy_cache: Mutex::default() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn koszul_middle(&self, mids: &[Monomial]) -> Arc<KoszulChain> {
        if let Some(hit) = self.koszul_cache.lock().unwrap().get(mids) {
            return hit.clone();
        }
        let value = Arc::new(bar_to_koszul_middle(self.dim, mids));
        self.koszul_cache.lock().unwrap().insert(mids.to_vec(), value.clone());
        value
    }

    pub fn to_koszul(&self, c: &BarChain) -> KoszulChain {
        bar_to_koszul_with(c, |mids| self.koszul_middle(mids))
    }

    pub fn to_bar(&self, c: &KoszulChain) -> BarChain {
        koszul_to_bar(c)
    }

    pub fn retract(&self, c: &BarChain) -> BarChain {
        koszul_to_bar(&self.to_koszul(c))
    }

    /// `s_k(1⊗m⊗1) = h_k((id − Ω_k − s_{k−1} d_k)(1⊗m⊗1))`, with `s_0 = 0`.
    pub fn homotopy_middle(&self, mids: &[Monomial]) -> Arc<BarChain> {
        if mids.is_empty() {
            return Arc::new(BarChain::zero(self.dim, 1));
        }
        if let Some(hit) = self.homotopy_cache.lock().unwrap().get(mids) {
            return hit.clone();
        }
        let c = BarChain::middle(self.dim, mids);
        let boundary = c.differential().expect("positive arity");
        let rest = c
            .sub(&self.retract(&c))
            .and_then(|r| r.sub(&self.homotopy(&boundary)))
            .expect("same shape");
        let value = Arc::new(rest.contract());
        self.homotopy_cache.lock().unwrap().insert(mids.to_vec(), value.clone());
        value
    }

    /// The A^e-linear homotopy `s` on arbitrary chains.
    pub fn homotopy(&self, c: &BarChain) -> BarChain {
        if c.is_zero() {
            return BarChain::zero(self.dim, c.arity() + 1);
        }
        linearize_with(c, |mids| self.homotopy_middle(mids))
    }

    pub fn cached_homotopies(&self) -> usize {
        self.homotopy_cache.lock().unwrap().len()
    }
}

/// Applies `s` with a throwaway cache.
pub fn homotopy_s(c: &BarChain) -> BarChain {
    Comparison::new(c.dim()).homotopy(c)
}

/// Convenience: act on a chain by a basis pair.
pub fn act_pair(c: &BarChain, left: &Monomial, right: &Monomial) -> BarChain {
    c.act(&AePair::basis(left.clone(), right.clone(), Scalar::one())).expect("same dimension")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn kkey(a: &[u16], b: &[u16], u: &[usize]) -> KoszulKey {
        KoszulKey::new(m(a), m(b), ExtMonomial::from_indices(u).unwrap().1)
    }

    #[test]
    fn f_examples() {
        let c = KoszulChain::basis(kkey(&[1, 0], &[0, 2], &[0]), int(1));
        assert_eq!(koszul_to_bar(&c), BarChain::basis(vec![m(&[1, 0]), m(&[1, 0]), m(&[0, 2])], int(1)));
        let c = KoszulChain::basis(kkey(&[0, 0], &[0, 0], &[0, 1]), int(1));
        let mut expected = LinComb::new();
        expected.add_term(vec![m(&[0, 0]), m(&[1, 0]), m(&[0, 1]), m(&[0, 0])], int(1));
        expected.add_term(vec![m(&[0, 0]), m(&[0, 1]), m(&[1, 0]), m(&[0, 0])], int(-1));
        assert_eq!(koszul_to_bar(&c).terms(), &expected);
        let c = KoszulChain::basis(kkey(&[1, 1], &[2, 0], &[]), int(3));
        assert_eq!(koszul_to_bar(&c), BarChain::basis(vec![m(&[1, 1]), m(&[2, 0])], int(3)));
    }

    #[test]
    fn g_examples() {
        let g = bar_to_koszul_middle(2, &[m(&[1, 0])]);
        assert_eq!(g, KoszulChain::basis(kkey(&[0, 0], &[0, 0], &[0]), int(1)));
        // G_1(1⊗x²⊗1) = x⊗1⊗e1 + 1⊗x⊗e1
        let g = bar_to_koszul_middle(1, &[m(&[2])]);
        let expected = KoszulChain::basis(kkey(&[1], &[0], &[0]), int(1))
            .add(&KoszulChain::basis(kkey(&[0], &[1], &[0]), int(1)))
            .unwrap();
        assert_eq!(g, expected);
        assert!(bar_to_koszul_middle(2, &[m(&[1, 0]), m(&[0, 0])]).is_zero());
    }

    #[test]
    fn omega_examples() {
        let c = BarChain::middle(2, &[m(&[1, 0])]);
        assert_eq!(omega(&c), c);
        let c0 = BarChain::basis(vec![m(&[1, 2]), m(&[0, 1])], int(2));
        assert_eq!(omega(&c0), c0);
    }

    #[test]
    fn linearization_examples() {
        let c = BarChain::basis(vec![m(&[1, 0]), m(&[0, 1]), m(&[1, 1])], int(1));
        let id = ae_linearize(|c: &BarChain| c.clone());
        assert_eq!(id(&c), c);
        let d = ae_linearize(|c: &BarChain| c.differential().unwrap());
        assert_eq!(d(&c), c.differential().unwrap());
        let h = ae_linearize(|c: &BarChain| c.contract());
        assert_eq!(
            h(&c),
            BarChain::basis(vec![m(&[1, 0]), m(&[0, 0]), m(&[0, 1]), m(&[1, 1])], int(1))
        );
    }

    #[test]
    fn homotopy_low_levels() {
        let cmp = Comparison::new(2);
        let c0 = BarChain::basis(vec![m(&[1, 0]), m(&[0, 1])], int(1));
        assert!(cmp.homotopy(&c0).is_zero());
        assert!(cmp.homotopy(&BarChain::middle(2, &[m(&[1, 0])])).is_zero());
    }

    mod laws {
        use super::*;
        use crate::bar::{bar_h, bar_h_unit};
        use crate::sample;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn differentials_square_to_zero(seed in any::<u64>(), k in 2usize..=3) {
                let mut r = sample::stream(seed, "dd");
                let b = sample::bar(&mut r, 2, k, 3, 3);
                prop_assert!(b.differential().unwrap().differential().unwrap().is_zero());
                let c = sample::koszul(&mut r, k, k, 3, 3);
                prop_assert!(c.boundary().unwrap().boundary().unwrap().is_zero());
                prop_assert!(c.delta().delta().is_zero());
            }

            #[test]
            fn bar_homotopy_contracts(seed in any::<u64>(), k in 1usize..=3) {
                let mut r = sample::stream(seed, "bar-h");
                let a = sample::sym(&mut r, 2, 3, 3);
                prop_assert_eq!(bar_h_unit(&a).augment().unwrap(), a);
                let c = sample::bar(&mut r, 2, k, 3, 3);
                let lhs = bar_h(&c, k as isize).unwrap().differential().unwrap()
                    .add(&bar_h(&c.differential().unwrap(), k as isize - 1).unwrap()).unwrap();
                prop_assert_eq!(lhs, c);
            }

            #[test]
            fn koszul_homotopy_contracts(seed in any::<u64>(), k in 1usize..=2) {
                let mut r = sample::stream(seed, "koszul-h");
                let c = sample::koszul(&mut r, 3, k, 3, 3);
                let lhs = c.homotopy(k).unwrap().boundary().unwrap()
                    .add(&c.boundary().unwrap().homotopy(k - 1).unwrap()).unwrap();
                prop_assert_eq!(lhs, c);
            }

            #[test]
            fn comparison_maps(seed in any::<u64>(), k in 1usize..=2) {
                let mut r = sample::stream(seed, "comparison");
                let cmp = Comparison::new(2);
                let c = sample::koszul(&mut r, 2, k, 3, 3);
                prop_assert_eq!(koszul_to_bar(&c).differential().unwrap(), koszul_to_bar(&c.boundary().unwrap()));
                prop_assert_eq!(cmp.to_koszul(&koszul_to_bar(&c)), c);
                let b = sample::bar(&mut r, 2, k, 3, 2);
                let lhs = b.sub(&koszul_to_bar(&cmp.to_koszul(&b))).unwrap();
                let rhs = cmp.homotopy(&b).differential().unwrap().add(&cmp.homotopy(&b.differential().unwrap())).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
