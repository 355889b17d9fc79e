//! Hochschild cochains `A^k → M`, represented by a finite specification and
//! evaluated on monomial tuples (every cochain is multilinear, so monomial
//! values determine it).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use num::One;

use crate::bar::{sign, BarChain};
use crate::bimodule::{Bimodule, ModElem};
use crate::chain_maps::Comparison;
use crate::error::{Error, Result};
use crate::ext::ExtMonomial;
use crate::lincomb::LinComb;
use crate::scalar::{factorial, from_bigint, int, permutation_sign, Scalar};
use crate::sym::{Monomial, SymElement};

/// Values `f(e_{i_1}, …, e_{i_k})` of a multilinear map on basis vectors.
/// Missing entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearTable<K: Ord> {
    dim: usize,
    arity: usize,
    values: BTreeMap<Vec<usize>, LinComb<K>>,
}

impl<K: Ord + Clone> MultilinearTable<K> {
    pub fn new(dim: usize, arity: usize) -> Self {
        MultilinearTable { dim, arity, values: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn set(&mut self, indices: Vec<usize>, value: LinComb<K>) -> Result<()> {
        self.check(&indices)?;
        if value.is_zero() {
            self.values.remove(&indices);
        } else {
            self.values.insert(indices, value);
        }
        Ok(())
    }

    fn check(&self, indices: &[usize]) -> Result<()> {
        if indices.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: indices.len() });
        }
        if let Some(&i) = indices.iter().find(|&&i| i >= self.dim) {
            return Err(Error::DimensionMismatch { left: self.dim, right: i + 1 });
        }
        Ok(())
    }

    /// Builds the antisymmetric table determined by values on the given
    /// index tuples (each tuple with distinct entries, any order).
    pub fn antisymmetric(
        dim: usize,
        arity: usize,
        entries: impl IntoIterator<Item = (Vec<usize>, LinComb<K>)>,
    ) -> Result<Self> {
        let mut base: BTreeMap<ExtMonomial, LinComb<K>> = BTreeMap::new();
        let probe = MultilinearTable::<K>::new(dim, arity);
        for (idx, value) in entries {
            probe.check(&idx)?;
            let (sign, key) = ExtMonomial::from_indices(&idx).ok_or(Error::NotAntisymmetric)?;
            base.entry(key).or_default().add_scaled(&value, &int(sign));
        }
        let mut table = MultilinearTable::new(dim, arity);
        for (key, value) in base {
            let sorted: Vec<usize> = key.indices().collect();
            for perm in sorted.iter().copied().permutations(arity) {
                let sign = permutation_sign(&perm);
                table.set(perm, value.scaled(&int(sign)))?;
            }
        }
        Ok(table)
    }

    pub fn get(&self, indices: &[usize]) -> LinComb<K> {
        self.values.get(indices).cloned().unwrap_or_default()
    }

    pub fn get_ref(&self, indices: &[usize]) -> Option<&LinComb<K>> {
        self.values.get(indices)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &LinComb<K>)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_antisymmetric(&self) -> bool {
        for (idx, value) in &self.values {
            let Some((_, key)) = ExtMonomial::from_indices(idx) else { return false };
            let sorted: Vec<usize> = key.indices().collect();
            let base_sign = permutation_sign(idx);
            let base = value.scaled(&int(base_sign));
            for perm in sorted.iter().copied().permutations(self.arity) {
                if self.get(&perm) != base.scaled(&int(permutation_sign(&perm))) {
                    return false;
                }
            }
        }
        true
    }

    /// Value on a wedge monomial `e_{i_1}∧…∧e_{i_k}` with ascending indices.
    pub fn on_wedge(&self, wedge: &ExtMonomial) -> Option<&LinComb<K>> {
        let idx: Vec<usize> = wedge.indices().collect();
        self.values.get(&idx)
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let values = self
            .values
            .iter()
            .map(|(k, v)| (k.clone(), v.scaled(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        MultilinearTable { dim: self.dim, arity: self.arity, values }
    }
}

type EvalFn<B> = dyn Fn(&B, &[Monomial]) -> ModElem<B> + Send + Sync;

enum Node<B: Bimodule> {
    Zero,
    Constant(ModElem<B>),
    Points(BTreeMap<Vec<Monomial>, ModElem<B>>),
    Derivative(MultilinearTable<B::Key>),
    Coboundary(Cochain<B>),
    Combination(Vec<(Scalar, Cochain<B>)>),
    Antisymmetrized(Cochain<B>),
    Corrector(Cochain<B>, Arc<Comparison>),
    Retracted(Cochain<B>, Arc<Comparison>),
    Transported(MultilinearTable<B::Key>, Arc<Comparison>),
    Bracket { slot: usize, multiplier: SymElement, inner: Cochain<B> },
    Function(String, Arc<EvalFn<B>>),
    Memo(Cochain<B>, Mutex<HashMap<Vec<Monomial>, ModElem<B>>>),
}

/// A k-multilinear map `A^k → M`, evaluated lazily from its specification.
pub struct Cochain<B: Bimodule> {
    arity: usize,
    node: Arc<Node<B>>,
}

impl<B: Bimodule> Clone for Cochain<B> {
    fn clone(&self) -> Self {
        Cochain { arity: self.arity, node: self.node.clone() }
    }
}

impl<B: Bimodule> fmt::Debug for Cochain<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &*self.node {
            Node::Zero => "zero".to_string(),
            Node::Constant(_) => "constant".to_string(),
            Node::Points(p) => format!("points[{}]", p.len()),
            Node::Derivative(_) => "derivative extension".to_string(),
            Node::Coboundary(inner) => format!("δ({inner:?})"),
            Node::Combination(parts) => format!("combination[{}]", parts.len()),
            Node::Antisymmetrized(inner) => format!("Alt({inner:?})"),
            Node::Corrector(inner, _) => format!("corrector({inner:?})"),
            Node::Retracted(inner, _) => format!("retracted({inner:?})"),
            Node::Transported(_, _) => "transported table".to_string(),
            Node::Bracket { slot, inner, .. } => format!("bracket[{slot}]({inner:?})"),
            Node::Function(name, _) => name.clone(),
            Node::Memo(inner, _) => format!("{inner:?}"),
        };
        write!(f, "Cochain<{}>({kind})", self.arity)
    }
}

impl<B: Bimodule> Cochain<B> {
    fn from_node(arity: usize, node: Node<B>) -> Self {
        Cochain { arity, node: Arc::new(node) }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn zero(arity: usize) -> Self {
        Self::from_node(arity, Node::Zero)
    }

    /// An arity-0 cochain, i.e. a module element.
    pub fn constant(value: ModElem<B>) -> Self {
        Self::from_node(0, Node::Constant(value))
    }

    /// A cochain supported on finitely many monomial tuples.
    pub fn points(arity: usize, values: BTreeMap<Vec<Monomial>, ModElem<B>>) -> Result<Self> {
        for key in values.keys() {
            if key.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: key.len() });
            }
        }
        Ok(Self::from_node(arity, Node::Points(values)))
    }

    /// The unique extension of a table on basis vectors that is a derivation
    /// in every slot.
    pub fn derivative_extension(table: MultilinearTable<B::Key>) -> Self {
        let arity = table.arity();
        Self::from_node(arity, Node::Derivative(table))
    }

    pub fn function(
        arity: usize,
        name: impl Into<String>,
        f: impl Fn(&B, &[Monomial]) -> ModElem<B> + Send + Sync + 'static,
    ) -> Self {
        Self::from_node(arity, Node::Function(name.into(), Arc::new(f)))
    }

    /// The Hochschild coboundary.
    pub fn coboundary(&self) -> Self {
        Self::from_node(self.arity + 1, Node::Coboundary(self.clone()))
    }

    pub fn linear_combination(arity: usize, parts: Vec<(Scalar, Cochain<B>)>) -> Result<Self> {
        for (_, p) in &parts {
            if p.arity != arity {
                return Err(Error::ArityMismatch { expected: arity, found: p.arity });
            }
        }
        Ok(Self::from_node(arity, Node::Combination(parts)))
    }

    pub fn plus(&self, other: &Cochain<B>) -> Result<Self> {
        Self::linear_combination(self.arity, vec![(Scalar::one(), self.clone()), (Scalar::one(), other.clone())])
    }

    pub fn minus(&self, other: &Cochain<B>) -> Result<Self> {
        Self::linear_combination(self.arity, vec![(Scalar::one(), self.clone()), (int(-1), other.clone())])
    }

    pub fn scaled(&self, c: Scalar) -> Self {
        Self::from_node(self.arity, Node::Combination(vec![(c, self.clone())]))
    }

    pub fn antisymmetrized(&self) -> Self {
        Self::from_node(self.arity, Node::Antisymmetrized(self.clone()))
    }

    pub(crate) fn corrector_node(&self, comparison: Arc<Comparison>) -> Self {
        Self::from_node(self.arity - 1, Node::Corrector(self.clone(), comparison))
    }

    pub(crate) fn retracted_node(&self, comparison: Arc<Comparison>) -> Self {
        Self::from_node(self.arity, Node::Retracted(self.clone(), comparison))
    }

    pub(crate) fn transported_node(table: MultilinearTable<B::Key>, comparison: Arc<Comparison>) -> Self {
        Self::from_node(table.arity(), Node::Transported(table, comparison))
    }

    pub(crate) fn bracket_node(&self, slot: usize, multiplier: SymElement) -> Self {
        Self::from_node(self.arity, Node::Bracket { slot, multiplier, inner: self.clone() })
    }

    /// Caches evaluations; useful when the same arguments recur.
    pub fn memoized(&self) -> Self {
        Self::from_node(self.arity, Node::Memo(self.clone(), Mutex::default()))
    }

    /// Evaluate on a tuple of monomials. Panics on arity mismatch; see
    /// [`Cochain::try_eval`].
    pub fn eval(&self, module: &B, args: &[Monomial]) -> ModElem<B> {
        assert_eq!(args.len(), self.arity, "cochain arity");
        match &*self.node {
            Node::Zero => LinComb::new(),
            Node::Constant(m) => m.clone(),
            Node::Points(values) => values.get(args).cloned().unwrap_or_default(),
            Node::Derivative(table) => eval_derivative(module, table, args),
            Node::Coboundary(inner) => eval_coboundary(module, inner, args),
            Node::Combination(parts) => {
                let mut out = LinComb::new();
                for (c, p) in parts {
                    out.add_scaled(&p.eval(module, args), c);
                }
                out
            }
            Node::Antisymmetrized(inner) => {
                let k = args.len();
                let mut out = LinComb::new();
                for perm in (0..k).permutations(k) {
                    let permuted: Vec<Monomial> = perm.iter().map(|&i| args[i].clone()).collect();
                    out.add_scaled(&inner.eval(module, &permuted), &int(permutation_sign(&perm)));
                }
                out.scaled(&Scalar::new(1.into(), factorial(k)))
            }
            Node::Corrector(inner, cmp) => {
                let chain = cmp.homotopy_middle(args);
                zeta(module, inner, &chain)
            }
            Node::Retracted(inner, cmp) => {
                let chain = cmp.retract(&BarChain::middle(module.dim(), args));
                zeta(module, inner, &chain)
            }
            Node::Transported(table, cmp) => {
                let image = cmp.koszul_middle(args);
                let mut out = LinComb::new();
                for (key, c) in image.terms() {
                    if let Some(value) = table.on_wedge(&key.wedge) {
                        out.add_scaled(&module.enveloping(&key.left, &key.right, value), c);
                    }
                }
                out
            }
            Node::Bracket { slot, multiplier, inner } => {
                let mut out = module.left_sym(multiplier, &inner.eval(module, args));
                let mut shifted = args.to_vec();
                for (a, c) in multiplier.terms() {
                    shifted[*slot] = a.mul(&args[*slot]);
                    out.add_scaled(&inner.eval(module, &shifted), &-c);
                }
                out
            }
            Node::Function(_, f) => f(module, args),
            Node::Memo(inner, cache) => {
                if let Some(hit) = cache.lock().unwrap().get(args) {
                    return hit.clone();
                }
                let value = inner.eval(module, args);
                cache.lock().unwrap().insert(args.to_vec(), value.clone());
                value
            }
        }
    }

    pub fn try_eval(&self, module: &B, args: &[Monomial]) -> Result<ModElem<B>> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: args.len() });
        }
        Ok(self.eval(module, args))
    }

    /// Multilinear evaluation on polynomials.
    pub fn eval_sym(&self, module: &B, args: &[SymElement]) -> Result<ModElem<B>> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: args.len() });
        }
        let mut out = LinComb::new();
        let slots: Vec<Vec<(&Monomial, &Scalar)>> = args.iter().map(|a| a.terms().iter().collect()).collect();
        if slots.is_empty() {
            return Ok(self.eval(module, &[]));
        }
        for combo in slots.iter().map(|s| s.iter()).multi_cartesian_product() {
            let monos: Vec<Monomial> = combo.iter().map(|(m, _)| (*m).clone()).collect();
            let c: Scalar = combo.iter().map(|(_, c)| (*c).clone()).product();
            out.add_scaled(&self.eval(module, &monos), &c);
        }
        Ok(out)
    }

    /// First tuple on which two cochains differ, with both values.
    pub fn first_difference<'a>(
        &self,
        other: &Cochain<B>,
        module: &B,
        tuples: impl IntoIterator<Item = &'a Vec<Monomial>>,
    ) -> Option<(Vec<Monomial>, ModElem<B>, ModElem<B>)> {
        for t in tuples {
            let a = self.eval(module, t);
            let b = other.eval(module, t);
            if a != b {
                return Some((t.clone(), a, b));
            }
        }
        None
    }
}

/// `ζφ(x_0⊗x_1⊗…⊗x_k⊗x_{k+1}) = x_0 *_L φ(x_1,…,x_k) *_R x_{k+1}`.
pub(crate) fn zeta<B: Bimodule>(module: &B, phi: &Cochain<B>, chain: &BarChain) -> ModElem<B> {
    let k = chain.arity();
    let mut out = LinComb::new();
    for (t, c) in chain.terms() {
        let value = phi.eval(module, &t[1..k + 1]);
        if value.is_zero() {
            continue;
        }
        out.add_scaled(&module.enveloping(&t[0], &t[k + 1], &value), c);
    }
    out
}

fn eval_derivative<B: Bimodule>(module: &B, table: &MultilinearTable<B::Key>, args: &[Monomial]) -> ModElem<B> {
    let dim = module.dim();
    if args.is_empty() {
        return table.get(&[]);
    }
    let choices: Vec<Vec<(usize, u16, Monomial)>> = args
        .iter()
        .map(|a| (0..dim).filter_map(|i| a.lower(i).map(|low| (i, a.exponents()[i], low))).collect())
        .collect();
    let mut out = LinComb::new();
    for combo in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
        let idx: Vec<usize> = combo.iter().map(|c| c.0).collect();
        let Some(value) = table.get_ref(&idx) else { continue };
        let mult: i64 = combo.iter().map(|c| c.1 as i64).product();
        let prefactor = combo.iter().fold(Monomial::one(dim), |acc, c| acc.mul(&c.2));
        out.add_scaled(&module.left(&prefactor, value), &int(mult));
    }
    out
}

fn eval_coboundary<B: Bimodule>(module: &B, inner: &Cochain<B>, args: &[Monomial]) -> ModElem<B> {
    // (δφ)(a_1..a_{k+1}) = a_1 φ(a_2..) + Σ_i (−1)^i φ(.., a_i a_{i+1}, ..) + (−1)^{k+1} φ(a_1..a_k) a_{k+1}
    let k = inner.arity();
    let mut out = module.left(&args[0], &inner.eval(module, &args[1..]));
    for i in 1..=k {
        let mut merged = Vec::with_capacity(k);
        merged.extend_from_slice(&args[..i - 1]);
        merged.push(args[i - 1].mul(&args[i]));
        merged.extend_from_slice(&args[i + 1..]);
        out.add_scaled(&inner.eval(module, &merged), &sign(i));
    }
    let last = module.right(&inner.eval(module, &args[..k]), &args[k]);
    out.add_scaled(&last, &sign(k + 1));
    out
}

/// `k!`, as a scalar.
pub(crate) fn factorial_scalar(k: usize) -> Scalar {
    from_bigint(factorial(k))
}

/// All tuples of `arity` monomials with each entry of degree at most `max_degree`.
pub fn monomial_tuples(dim: usize, arity: usize, max_degree: usize) -> Vec<Vec<Monomial>> {
    let monos = Monomial::up_to_degree(dim, max_degree);
    if arity == 0 {
        return vec![vec![]];
    }
    (0..arity).map(|_| monos.iter().cloned()).multi_cartesian_product().collect()
}

/// Tuples whose total degree is at most `max_total`.
pub fn monomial_tuples_total(dim: usize, arity: usize, max_total: usize) -> Vec<Vec<Monomial>> {
    monomial_tuples(dim, arity, max_total)
        .into_iter()
        .filter(|t| t.iter().map(Monomial::degree).sum::<usize>() <= max_total)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::SymBimodule;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn partial_x1(dim: usize) -> Cochain<SymBimodule> {
        let mut t = MultilinearTable::new(dim, 1);
        t.set(vec![0], LinComb::single(Monomial::one(dim), int(1))).unwrap();
        Cochain::derivative_extension(t)
    }

    #[test]
    fn derivative_extension_values() {
        let module = SymBimodule::new(2);
        let d = partial_x1(2);
        assert_eq!(d.eval(&module, &[m(&[2, 1])]), LinComb::single(m(&[1, 1]), int(2)));
        assert!(d.eval(&module, &[m(&[0, 0])]).is_zero());
    }

    #[test]
    fn derivations_are_cocycles() {
        let module = SymBimodule::new(2);
        let dd = partial_x1(2).coboundary();
        for t in monomial_tuples(2, 2, 3) {
            assert!(dd.eval(&module, &t).is_zero());
        }
    }

    #[test]
    fn constant_coboundary_vanishes_for_symmetric_module() {
        let module = SymBimodule::new(2);
        let c = Cochain::constant(LinComb::single(m(&[1, 2]), int(3)));
        for t in monomial_tuples(2, 1, 3) {
            assert!(c.coboundary().eval(&module, &t).is_zero());
        }
    }

    #[test]
    fn antisymmetric_table_expansion() {
        let t: MultilinearTable<Monomial> =
            MultilinearTable::antisymmetric(3, 2, vec![(vec![1, 0], LinComb::single(m(&[0, 0, 0]), int(1)))]).unwrap();
        assert_eq!(t.get(&[0, 1]), LinComb::single(m(&[0, 0, 0]), int(-1)));
        assert_eq!(t.get(&[1, 0]), LinComb::single(m(&[0, 0, 0]), int(1)));
        assert!(t.get(&[0, 0]).is_zero());
        assert!(t.is_antisymmetric());
        let mut bad = MultilinearTable::new(2, 2);
        bad.set(vec![0, 1], LinComb::single(m(&[0, 0]), int(1))).unwrap();
        assert!(!bad.is_antisymmetric());
    }

    #[test]
    fn multilinear_evaluation() {
        let module = SymBimodule::new(2);
        let d = partial_x1(2);
        let a = SymElement::from_terms(2, [(m(&[2, 0]), int(1)), (m(&[1, 1]), int(3))].into_iter().collect()).unwrap();
        let v = d.eval_sym(&module, &[a]).unwrap();
        let expected: LinComb<Monomial> = [(m(&[1, 0]), int(2)), (m(&[0, 1]), int(3))].into_iter().collect();
        assert_eq!(v, expected);
    }
}
