//! Algebraic multidifferential operators: brackets with left
//! multiplication, bounded order certification, and differential bimodules
//! whose right action is the left action plus order-bounded corrections.

use std::fmt;
use itertools::Itertools;
use num::One;
use rayon::prelude::*;

use crate::bimodule::{Bimodule, ModElem, SymBimodule};
use crate::chain_maps::hat_path;
use crate::cochain::{monomial_tuples, Cochain};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::{from_bigint, int, Scalar};
use crate::sym::{Monomial, SymElement};
use crate::tpoly::{one_minus_power, TPoly};

/// `(a *_L φ(…) − φ(…, a·x_slot, …))`, with `slot` counted from 0.
pub fn bracket<B: Bimodule>(phi: &Cochain<B>, slot: usize, multiplier: &SymElement) -> Result<Cochain<B>> {
    if slot >= phi.arity() {
        return Err(Error::SlotOutOfRange { slot, arity: phi.arity() });
    }
    Ok(phi.bracket_node(slot, multiplier.clone()))
}

/// Iterated bracket with monomial multipliers all in one slot, expanded
/// over subsets of the multipliers that move into the argument.
pub fn iterated_bracket_eval<B: Bimodule>(
    phi: &Cochain<B>,
    module: &B,
    slot: usize,
    multipliers: &[Monomial],
    args: &[Monomial],
) -> ModElem<B> {
    let r = multipliers.len();
    let one = Monomial::one(module.dim());
    let mut out = LinComb::new();
    let mut shifted = args.to_vec();
    for mask in 0u32..(1 << r) {
        let mut inside = one.clone();
        let mut outside = one.clone();
        for (j, a) in multipliers.iter().enumerate() {
            if mask & (1 << j) != 0 {
                inside = inside.mul(a);
            } else {
                outside = outside.mul(a);
            }
        }
        shifted[slot] = args[slot].mul(&inside);
        let value = module.left(&outside, &phi.eval(module, &shifted));
        let sign = if mask.count_ones() % 2 == 0 { int(1) } else { int(-1) };
        out.add_scaled(&value, &sign);
    }
    out
}

/// Search limits of an order certificate: argument monomials and bracket
/// multipliers range over all monomials up to these degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderBounds {
    pub arg_degree: usize,
    pub multiplier_degree: usize,
}

impl Default for OrderBounds {
    fn default() -> Self {
        OrderBounds { arg_degree: 3, multiplier_degree: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderWitness<K: Ord> {
    pub slot: usize,
    pub multipliers: Vec<Monomial>,
    pub args: Vec<Monomial>,
    pub value: LinComb<K>,
}

impl<K: Ord + Clone + fmt::Debug> fmt::Display for OrderWitness<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "slot {} multipliers [{}] args [{}] value {}", self.slot + 1, self.multipliers.iter().join(", "), self.args.iter().join(", "), self.value.describe())
    }
}

/// Result of a bounded order check. `witness` is the first violating
/// bracket in (slot, multipliers, arguments) order.
#[derive(Clone, Debug)]
pub struct OrderCertificate<K: Ord> {
    pub orders: Vec<usize>,
    pub bounds: OrderBounds,
    pub witness: Option<OrderWitness<K>>,
}

impl<K: Ord> OrderCertificate<K> {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks that every bracket of length `orders[i] + 1` in slot `i`
/// annihilates `phi` within the bounds.
pub fn check_order<B: Bimodule>(
    phi: &Cochain<B>,
    module: &B,
    orders: &[usize],
    bounds: OrderBounds,
) -> Result<OrderCertificate<B::Key>> {
    if orders.len() != phi.arity() {
        return Err(Error::ArityMismatch { expected: phi.arity(), found: orders.len() });
    }
    let dim = module.dim();
    let multipliers: Vec<Monomial> =
        Monomial::up_to_degree(dim, bounds.multiplier_degree).into_iter().filter(|m| !m.is_one()).collect();
    let tuples = monomial_tuples(dim, phi.arity(), bounds.arg_degree);
    let jobs: Vec<(usize, Vec<Monomial>)> = orders
        .iter()
        .enumerate()
        .flat_map(|(slot, &l)| {
            multipliers.iter().cloned().combinations_with_replacement(l + 1).map(move |ms| (slot, ms))
        })
        .collect();
    let witness = jobs.par_iter().find_map_first(|(slot, ms)| {
        tuples.iter().find_map(|args| {
            let value = iterated_bracket_eval(phi, module, *slot, ms, args);
            (!value.is_zero()).then(|| OrderWitness { slot: *slot, multipliers: ms.clone(), args: args.clone(), value })
        })
    });
    Ok(OrderCertificate { orders: orders.to_vec(), bounds, witness })
}

/// A bimodule whose right action is `*_L + D_1 + … + D_s`.
pub trait DifferentialBimodule: Bimodule {
    /// The number `s` of correction maps.
    fn order(&self) -> usize;

    /// `D_l(x^a, m)` on a basis element, for `1 ≤ l`; zero beyond the order.
    fn correction_basis(&self, l: usize, a: &Monomial, m: &Self::Key) -> ModElem<Self>;

    /// Basis elements used by the axiom checks.
    fn sample_keys(&self, coefficient_degree: usize) -> Vec<Self::Key>;

    fn correction(&self, l: usize, a: &Monomial, m: &ModElem<Self>) -> ModElem<Self> {
        m.map_linear(|k| self.correction_basis(l, a, k))
    }

    fn correction_sym(&self, l: usize, a: &SymElement, m: &ModElem<Self>) -> ModElem<Self> {
        let mut out = LinComb::new();
        for (x, c) in a.terms() {
            out.add_scaled(&self.correction(l, x, m), c);
        }
        out
    }
}

/// A polynomial in the word `δ^α`: exponent `α_j` counts uses of generator `j`.
pub type Word = Vec<u16>;

/// Differential operators `x^c δ^α` of order at most `s` built from commuting
/// derivations `δ_1..δ_r` of the polynomial algebra. The left action
/// multiplies the coefficient, the right action composes with
/// multiplication: `δ^α ∘ v = Σ_{β≤α} C(α,β) δ^β(v) δ^{α−β}`.
#[derive(Clone, Debug)]
pub struct DerivationBimodule {
    dim: usize,
    order: usize,
    /// `images[j][i] = δ_j(x_i)`.
    images: Vec<Vec<SymElement>>,
}

impl DerivationBimodule {
    /// Builds the bimodule from derivations given by their values on the
    /// variables.
    pub fn new(dim: usize, images: Vec<Vec<SymElement>>, order: usize) -> Result<Self> {
        let generators = images
            .iter()
            .enumerate()
            .map(|(j, row)| {
                if row.len() != dim {
                    return Err(Error::NotDerivation { index: j + 1, reason: format!("expected {dim} images") });
                }
                let mut table = crate::cochain::MultilinearTable::new(dim, 1);
                for (i, v) in row.iter().enumerate() {
                    if v.dim() != dim {
                        return Err(Error::DimensionMismatch { left: dim, right: v.dim() });
                    }
                    table.set(vec![i], v.terms().clone())?;
                }
                Ok(Cochain::derivative_extension(table))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_cochains(dim, &generators, order, OrderBounds { arg_degree: 2, multiplier_degree: 1 })
    }

    /// Builds the bimodule from arbitrary arity-1 cochains, each of which
    /// must certify order 1 within `bounds` and vanish on 1.
    pub fn from_cochains(
        dim: usize,
        generators: &[Cochain<SymBimodule>],
        order: usize,
        bounds: OrderBounds,
    ) -> Result<Self> {
        let module = SymBimodule::new(dim);
        let mut images = Vec::new();
        for (j, g) in generators.iter().enumerate() {
            if g.arity() != 1 {
                return Err(Error::NotDerivation { index: j + 1, reason: format!("arity {}", g.arity()) });
            }
            if !g.eval(&module, &[Monomial::one(dim)]).is_zero() {
                return Err(Error::NotDerivation { index: j + 1, reason: "nonzero on 1".into() });
            }
            let cert = check_order(g, &module, &[1], bounds)?;
            if let Some(w) = cert.witness {
                return Err(Error::NotDerivation { index: j + 1, reason: format!("order exceeds 1: {w}") });
            }
            images.push((0..dim).map(|i| module.element(&g.eval(&module, &[Monomial::var(dim, i)]))).collect());
        }
        let out = DerivationBimodule { dim, order, images };
        out.check_commuting()?;
        Ok(out)
    }

    fn check_commuting(&self) -> Result<()> {
        for (j, k) in (0..self.images.len()).tuple_combinations() {
            for i in 0..self.dim {
                let jk = self.apply_generator(j, &self.images[k][i]);
                let kj = self.apply_generator(k, &self.images[j][i]);
                if jk != kj {
                    return Err(Error::NonCommuting(j + 1, k + 1));
                }
            }
        }
        Ok(())
    }

    pub fn generators(&self) -> usize {
        self.images.len()
    }

    /// `δ_j(p) = Σ_i ∂_i p · δ_j(x_i)`.
    pub fn apply_generator(&self, j: usize, p: &SymElement) -> SymElement {
        let mut out = SymElement::zero(self.dim);
        for (m, c) in p.terms() {
            for i in 0..self.dim {
                let Some(low) = m.lower(i) else { continue };
                let factor = self.images[j][i].mul_monomial(&low).scale(&(c * int(m.exponents()[i] as i64)));
                out = out.add(&factor).expect("same dimension");
            }
        }
        out
    }

    /// `δ^β(p)`.
    pub fn apply_word(&self, word: &[u16], p: &SymElement) -> SymElement {
        let mut out = p.clone();
        for (j, &n) in word.iter().enumerate() {
            for _ in 0..n {
                out = self.apply_generator(j, &out);
            }
        }
        out
    }

    /// All words of degree at most the order.
    pub fn words(&self) -> Vec<Word> {
        Monomial::up_to_degree(self.images.len(), self.order).into_iter().map(|m| m.exponents().to_vec()).collect()
    }

    /// `Σ_{β≤α, |β| in levels} C(α,β) x^c δ^β(x^a) δ^{α−β}`.
    fn expand(&self, a: &Monomial, key: &(Monomial, Word), level: Option<usize>) -> LinComb<(Monomial, Word)> {
        let (coef, word) = key;
        let alpha = Monomial::new(word.clone());
        let base = SymElement::monomial(a.clone(), Scalar::one());
        let mut out = LinComb::new();
        for beta in alpha.divisors() {
            if level.is_some_and(|l| beta.degree() != l) {
                continue;
            }
            let weight = from_bigint(alpha.binomial(&beta));
            let applied = self.apply_word(beta.exponents(), &base);
            let rest = alpha.div(&beta).expect("divisor").exponents().to_vec();
            for (p, c) in applied.terms() {
                out.add_term((coef.mul(p), rest.clone()), &weight * c);
            }
        }
        out
    }
}

impl Bimodule for DerivationBimodule {
    type Key = (Monomial, Word);

    fn dim(&self) -> usize {
        self.dim
    }

    fn left_basis(&self, a: &Monomial, m: &Self::Key) -> LinComb<Self::Key> {
        LinComb::single((a.mul(&m.0), m.1.clone()), Scalar::one())
    }

    fn right_basis(&self, m: &Self::Key, a: &Monomial) -> LinComb<Self::Key> {
        self.expand(a, m, None)
    }

    fn is_symmetric(&self) -> bool {
        self.order == 0 || self.images.iter().flatten().all(SymElement::is_zero)
    }
}

impl DifferentialBimodule for DerivationBimodule {
    fn order(&self) -> usize {
        self.order
    }

    fn correction_basis(&self, l: usize, a: &Monomial, m: &Self::Key) -> ModElem<Self> {
        if l == 0 || l > self.order {
            return LinComb::new();
        }
        self.expand(a, m, Some(l))
    }

    fn sample_keys(&self, coefficient_degree: usize) -> Vec<Self::Key> {
        let words = self.words();
        Monomial::up_to_degree(self.dim, coefficient_degree)
            .into_iter()
            .flat_map(|c| words.iter().map(move |w| (c.clone(), w.clone())))
            .collect()
    }
}

/// Wraps a differential bimodule and adds `m` to `D_level(v, m)` for every
/// linear monomial `v`; the right action is rebuilt from the corrupted
/// corrections. Used to exercise the axiom checker.
#[derive(Clone, Debug)]
pub struct FaultyCorrection<M> {
    pub inner: M,
    pub level: usize,
}

impl<M: DifferentialBimodule> Bimodule for FaultyCorrection<M> {
    type Key = M::Key;

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn left_basis(&self, a: &Monomial, m: &Self::Key) -> LinComb<Self::Key> {
        self.inner.left_basis(a, m)
    }

    fn right_basis(&self, m: &Self::Key, a: &Monomial) -> LinComb<Self::Key> {
        let mut out = self.left_basis(a, m);
        for l in 1..=self.order() {
            out.add_assign(&self.correction_basis(l, a, m));
        }
        out
    }

    fn is_symmetric(&self) -> bool {
        false
    }
}

impl<M: DifferentialBimodule> DifferentialBimodule for FaultyCorrection<M> {
    fn order(&self) -> usize {
        self.inner.order().max(self.level)
    }

    fn correction_basis(&self, l: usize, a: &Monomial, m: &Self::Key) -> ModElem<Self> {
        let mut out = self.inner.correction_basis(l, a, m);
        if l == self.level && a.degree() == 1 {
            out.add_term(m.clone(), Scalar::one());
        }
        out
    }

    fn sample_keys(&self, coefficient_degree: usize) -> Vec<Self::Key> {
        self.inner.sample_keys(coefficient_degree)
    }
}

/// Outcome of one axiom over the enumerated region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub id: &'static str,
    pub description: &'static str,
    pub checks: usize,
    pub witness: Option<String>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(AxiomResult::passed)
    }

    pub fn get(&self, id: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.id == id)
    }
}

/// Enumeration limits for [`check_axioms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomBounds {
    /// Degree of the algebra elements fed to the corrections.
    pub degree: usize,
    /// Coefficient degree of the sampled module basis elements.
    pub coefficient_degree: usize,
    /// Degree of multipliers in composites and order brackets.
    pub multiplier_degree: usize,
}

impl Default for AxiomBounds {
    fn default() -> Self {
        AxiomBounds { degree: 2, coefficient_degree: 1, multiplier_degree: 1 }
    }
}

fn first_failure<T: Sync, R: Send>(items: &[T], check: impl Fn(&T) -> Option<R> + Sync + Send) -> Option<R> {
    items.par_iter().find_map_first(check)
}

fn result(id: &'static str, description: &'static str, checks: usize, witness: Option<String>) -> AxiomResult {
    AxiomResult { id, description, checks, witness }
}

/// Compositions of `total` into parts in `1..=max_part`.
fn compositions(total: usize, max_part: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=max_part.min(total) {
        for mut rest in compositions(total - first, max_part) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Exact check of the differential bimodule axioms and the bimodule laws on
/// all monomials and sample keys within the bounds.
pub fn check_axioms<M: DifferentialBimodule + 'static>(module: &M, bounds: AxiomBounds) -> AxiomReport {
    let dim = module.dim();
    let s = module.order();
    let monos = Monomial::up_to_degree(dim, bounds.degree);
    let multipliers: Vec<Monomial> =
        Monomial::up_to_degree(dim, bounds.multiplier_degree).into_iter().filter(|m| !m.is_one()).collect();
    let keys = module.sample_keys(bounds.coefficient_degree);
    let levels: Vec<usize> = (1..=s).collect();
    let unit = |k: &M::Key| LinComb::single(k.clone(), Scalar::one());
    let mut results = Vec::new();

    // right action splits as left action plus corrections
    let pairs: Vec<(&Monomial, &M::Key)> = monos.iter().cartesian_product(&keys).collect();
    let w = first_failure(&pairs, |(a, k)| {
        let m = unit(k);
        let mut expected = module.left(a, &m);
        for &l in &levels {
            expected.add_assign(&module.correction(l, a, &m));
        }
        (module.right(&m, a) != expected).then(|| format!("a = {a}, m = {k:?}"))
    });
    results.push(result("split", "right action = left action + Σ D_l", pairs.len(), w));

    let w = first_failure(&keys, |k| {
        let m = unit(k);
        let one = Monomial::one(dim);
        let bad = module.left(&one, &m) != m
            || module.right(&m, &one) != m
            || levels.iter().any(|&l| !module.correction(l, &one, &m).is_zero());
        bad.then(|| format!("m = {k:?}"))
    });
    results.push(result("unit", "1 acts trivially, D_l(1, m) = 0", keys.len(), w));

    let triples: Vec<(&Monomial, &Monomial, &M::Key)> =
        monos.iter().cartesian_product(&monos).cartesian_product(&keys).map(|((a, b), k)| (a, b, k)).collect();
    let w = first_failure(&triples, |(a, b, k)| {
        let m = unit(k);
        let ab = a.mul(b);
        let bad = module.right(&module.right(&m, a), b) != module.right(&m, &ab)
            || module.left(a, &module.left(b, &m)) != module.left(&ab, &m)
            || module.left(a, &module.right(&m, b)) != module.right(&module.left(a, &m), b);
        bad.then(|| format!("a = {a}, b = {b}, m = {k:?}"))
    });
    results.push(result("bimodule", "(m·a)·b = m·(ab), left associativity, compatibility", triples.len(), w));

    let w = first_failure(&triples, |(a, b, k)| {
        let m = unit(k);
        levels.iter().find_map(|&l| {
            (module.correction(l, a, &module.left(b, &m)) != module.left(b, &module.correction(l, a, &m)))
                .then(|| format!("l = {l}, a = {a}, b = {b}, m = {k:?}"))
        })
    });
    results.push(result("a", "D_l(a, b·m) = b·D_l(a, m)", triples.len() * s, w));

    let mut chains: Vec<(Vec<usize>, Vec<Monomial>)> = Vec::new();
    if s > 0 {
        for total in s + 1..=s + 2 {
            for comp in compositions(total, s) {
                for ms in (0..comp.len()).map(|_| multipliers.iter().cloned()).multi_cartesian_product() {
                    chains.push((comp.clone(), ms));
                }
            }
        }
    }
    let jobs: Vec<(&(Vec<usize>, Vec<Monomial>), &M::Key)> = chains.iter().cartesian_product(&keys).collect();
    let w = first_failure(&jobs, |((ls, ms), k)| {
        let mut m = unit(k);
        for (l, a) in ls.iter().zip(ms).rev() {
            m = module.correction(*l, a, &m);
        }
        (!m.is_zero()).then(|| format!("levels {ls:?}, args [{}], m = {k:?}", ms.iter().join(", ")))
    });
    results.push(result("b", "composites with Σ l_i > s vanish", jobs.len(), w));

    let w = first_failure(&triples, |(a, b, k)| {
        let m = unit(k);
        let ab = a.mul(b);
        levels.iter().find_map(|&l| {
            let mut rhs = module.left(b, &module.correction(l, a, &m));
            rhs.add_assign(&module.left(a, &module.correction(l, b, &m)));
            for j in 1..l {
                rhs.add_assign(&module.correction(j, b, &module.correction(l - j, a, &m)));
            }
            (module.correction(l, &ab, &m) != rhs).then(|| format!("l = {l}, a = {a}, b = {b}, m = {k:?}"))
        })
    });
    results.push(result("c", "D_l(ab, m) = b·D_l(a,m) + Σ D_j(b, D_{l−j}(a,m)) + a·D_l(b,m)", triples.len() * s, w));

    let order_bounds = OrderBounds { arg_degree: bounds.degree, multiplier_degree: bounds.multiplier_degree };
    let mut checks = 0;
    let mut w = None;
    'outer: for &l in &levels {
        for k in &keys {
            let m = unit(k);
            let probe = Cochain::function(1, format!("D_{l}(·, m)"), move |md: &M, args: &[Monomial]| {
                md.correction(l, &args[0], &m)
            });
            checks += 1;
            let cert = check_order(&probe, module, &[l], order_bounds).expect("arity 1");
            if let Some(wit) = cert.witness {
                w = Some(format!("l = {l}, m = {k:?}: {wit}"));
                break 'outer;
            }
        }
    }
    results.push(result("d", "D_l(·, m) has order l", checks, w));

    let linear: Vec<Monomial> = (0..dim).map(|i| Monomial::var(dim, i)).collect();
    let jobs: Vec<(&Monomial, &M::Key)> = linear.iter().cartesian_product(&keys).collect();
    let w = first_failure(&jobs, |(v, k)| {
        let m = unit(k);
        levels.iter().filter(|&&l| l >= 2).find_map(|&l| {
            let d = module.correction(l, v, &m);
            (!d.is_zero()).then(|| format!("l = {l}, v = {v}, m = {k:?}, D_l(v, m) = {}", d.describe()))
        })
    });
    results.push(result("e", "D_l(v, m) = 0 for linear v and l ≥ 2", jobs.len(), w));

    AxiomReport { results }
}

/// `î(1⊗u⊗1) *_e m` and `u·m + Σ_l (1−t)^l D_l(u, m)` as polynomials in `t`.
pub fn transport_sides<M: DifferentialBimodule>(
    module: &M,
    u: &Monomial,
    m: &M::Key,
) -> (TPoly<M::Key>, TPoly<M::Key>) {
    let m = LinComb::single(m.clone(), Scalar::one());
    let lhs = hat_path(u, 0, 1).map_payload(|(left, right)| module.enveloping(left, right, &m));
    let mut rhs = TPoly::constant(1, &module.left(u, &m));
    for l in 1..=module.order() {
        let d = module.correction(l, u, &m);
        for (j, w) in one_minus_power(l as u32) {
            for (k, c) in &d {
                rhs.add_term(vec![j], k.clone(), c * &w);
            }
        }
    }
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::MultilinearTable;
    use crate::hkr::{xi, xi_transported};
    use crate::chain_maps::Comparison;
    use std::sync::Arc;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn partial(dim: usize, i: usize) -> Cochain<SymBimodule> {
        let mut t = MultilinearTable::new(dim, 1);
        t.set(vec![i], LinComb::single(Monomial::one(dim), int(1))).unwrap();
        Cochain::derivative_extension(t)
    }

    fn constant_fields(dim: usize) -> Vec<Vec<SymElement>> {
        (0..dim).map(|j| (0..dim).map(|i| if i == j { SymElement::one(dim) } else { SymElement::zero(dim) }).collect()).collect()
    }

    #[test]
    fn bracket_of_left_multiplication_vanishes() {
        let module = SymBimodule::new(2);
        let fixed = LinComb::single(m(&[1, 2]), int(1));
        let lm = Cochain::function(1, "left multiplication", move |md: &SymBimodule, a: &[Monomial]| md.left(&a[0], &fixed));
        let b = bracket(&lm, 0, &SymElement::var(2, 1)).unwrap();
        for x in Monomial::up_to_degree(2, 3) {
            assert!(b.eval(&module, &[x]).is_zero());
        }
        assert!(bracket(&lm, 1, &SymElement::var(2, 1)).is_err());
        assert!(check_order(&lm, &module, &[0], OrderBounds::default()).unwrap().holds());
    }

    #[test]
    fn brackets_commute() {
        let module = SymBimodule::new(2);
        let d = partial(2, 0);
        let phi = Cochain::function(2, "product of derivatives", move |md: &SymBimodule, a: &[Monomial]| {
            let x = md.element(&d.eval(md, &a[0..1]));
            let y = md.element(&d.eval(md, &a[1..2]));
            x.mul(&y).unwrap().into_terms()
        });
        let a = SymElement::var(2, 0);
        let b = SymElement::monomial(m(&[1, 1]), int(1));
        let ab = bracket(&bracket(&phi, 0, &a).unwrap(), 1, &b).unwrap();
        let ba = bracket(&bracket(&phi, 1, &b).unwrap(), 0, &a).unwrap();
        for t in monomial_tuples(2, 2, 2) {
            assert_eq!(ab.eval(&module, &t), ba.eval(&module, &t));
        }
    }

    #[test]
    fn derivation_bracket_is_order_zero() {
        let module = SymBimodule::new(2);
        let d = partial(2, 0);
        let once = bracket(&d, 0, &SymElement::var(2, 0)).unwrap();
        // [x_1, ∂_1] applied to v is −v
        assert_eq!(once.eval(&module, &[m(&[1, 1])]), LinComb::single(m(&[1, 1]), int(-1)));
        let twice = bracket(&once, 0, &SymElement::var(2, 1)).unwrap();
        for x in Monomial::up_to_degree(2, 3) {
            assert!(twice.eval(&module, &[x]).is_zero());
        }
    }

    #[test]
    fn order_of_composite_derivations() {
        let module = SymBimodule::new(2);
        let d = partial(2, 0);
        let e = partial(2, 1);
        assert!(check_order(&d, &module, &[1], OrderBounds::default()).unwrap().holds());
        let comp = Cochain::function(1, "∂1∂2", move |md: &SymBimodule, a: &[Monomial]| {
            let inner = md.element(&e.eval(md, a));
            d.eval_sym(md, &[inner]).unwrap()
        });
        let first = check_order(&comp, &module, &[1], OrderBounds::default()).unwrap();
        assert!(!first.holds());
        assert!(check_order(&comp, &module, &[2], OrderBounds::default()).unwrap().holds());
        assert!(check_order(&comp, &module, &[3], OrderBounds::default()).unwrap().holds());
    }

    #[test]
    fn derivation_bimodule_axioms() {
        for s in 0..=2 {
            let module = DerivationBimodule::new(2, constant_fields(2), s).unwrap();
            let report = check_axioms(&module, AxiomBounds::default());
            assert!(report.passed(), "{s}: {report:?}");
        }
    }

    #[test]
    fn derivation_bimodule_right_action_example() {
        let module = DerivationBimodule::new(2, constant_fields(2), 2).unwrap();
        let delta2 = LinComb::single((m(&[0, 0]), vec![2, 0]), int(1));
        let v = m(&[1, 0]);
        let expected: LinComb<(Monomial, Word)> =
            [((m(&[1, 0]), vec![2, 0]), int(1)), ((m(&[0, 0]), vec![1, 0]), int(2))].into_iter().collect();
        assert_eq!(module.right(&delta2, &v), expected);
        assert!(module.correction(1, &Monomial::one(2), &delta2).is_zero());
    }

    #[test]
    fn non_commuting_generators_rejected() {
        let x1 = SymElement::var(2, 0);
        let images = vec![vec![SymElement::one(2), SymElement::zero(2)], vec![SymElement::zero(2), x1]];
        assert!(matches!(DerivationBimodule::new(2, images, 1), Err(Error::NonCommuting(1, 2))));
    }

    #[test]
    fn non_derivation_generator_rejected() {
        let module = SymBimodule::new(2);
        let d = partial(2, 0);
        let square = Cochain::function(1, "∂1∂1", move |md: &SymBimodule, a: &[Monomial]| {
            let inner = md.element(&d.eval(md, a));
            d.eval_sym(md, &[inner]).unwrap()
        });
        let _ = module;
        let err = DerivationBimodule::from_cochains(2, &[square], 1, OrderBounds::default()).unwrap_err();
        assert!(matches!(err, Error::NotDerivation { index: 1, .. }));
    }

    #[test]
    fn injected_fault_detected() {
        let inner = DerivationBimodule::new(2, constant_fields(2), 2).unwrap();
        let report = check_axioms(&FaultyCorrection { inner, level: 2 }, AxiomBounds::default());
        assert!(!report.get("e").unwrap().passed());
        assert!(report.get("e").unwrap().witness.as_ref().unwrap().contains("l = 2"));
    }

    #[test]
    fn transport_identity() {
        let module = DerivationBimodule::new(2, constant_fields(2), 2).unwrap();
        for u in Monomial::up_to_degree(2, 3) {
            for k in module.sample_keys(1) {
                let (lhs, rhs) = transport_sides(&module, &u, &k);
                assert_eq!(lhs, rhs, "u = {u}, m = {k:?}");
            }
        }
    }

    #[test]
    fn xi_certifies_order_s_plus_one() {
        let module = DerivationBimodule::new(2, constant_fields(2), 1).unwrap();
        let cmp = Arc::new(Comparison::new(2));
        let f = MultilinearTable::antisymmetric(2, 1, vec![(vec![0], LinComb::single((m(&[0, 0]), vec![1, 0]), int(1)))]).unwrap();
        let phi = xi_transported(&f, cmp).unwrap();
        let bounds = OrderBounds { arg_degree: 2, multiplier_degree: 1 };
        assert!(check_order(&phi, &module, &[2], bounds).unwrap().holds());
        assert!(!check_order(&phi, &module, &[1], bounds).unwrap().holds());
        let _ = xi::<DerivationBimodule>;
    }
}
