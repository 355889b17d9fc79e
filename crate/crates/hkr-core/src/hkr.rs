//! The HKR decomposition of Hochschild cochains: antisymmetrization,
//! derivative cochains built from tables on basis vectors, and the
//! computable corrector obtained by pulling back the comparison homotopy.

use std::sync::Arc;

use itertools::Itertools;
use num::One;
use rayon::prelude::*;

use crate::bar::BarChain;
use crate::bimodule::{Bimodule, ModElem};
use crate::chain_maps::Comparison;
use crate::cochain::{factorial_scalar, zeta, Cochain, MultilinearTable};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::{binomial, from_bigint, int, Scalar};
use crate::sym::Monomial;

pub fn hoch_delta<B: Bimodule>(phi: &Cochain<B>) -> Cochain<B> {
    phi.coboundary()
}

pub fn alt_cochain<B: Bimodule>(phi: &Cochain<B>) -> Cochain<B> {
    phi.antisymmetrized()
}

pub fn derivative_extension<B: Bimodule>(table: MultilinearTable<B::Key>) -> Cochain<B> {
    Cochain::derivative_extension(table)
}

/// `(1/k!)` times the derivative extension of an antisymmetric table. Over
/// a symmetric bimodule this is an antisymmetric cocycle.
pub fn xi<B: Bimodule>(table: &MultilinearTable<B::Key>) -> Result<Cochain<B>> {
    if !table.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let k = table.arity();
    Ok(Cochain::derivative_extension(table.scaled(&(Scalar::one() / factorial_scalar(k)))))
}

/// Version of [`xi`] for arbitrary bimodules: the table, read on wedge
/// monomials, composed with the comparison map to the Koszul resolution.
/// Agrees with [`xi`] when the bimodule is symmetric.
pub fn xi_transported<B: Bimodule>(table: &MultilinearTable<B::Key>, comparison: Arc<Comparison>) -> Result<Cochain<B>> {
    if !table.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    if table.dim() != comparison.dim() {
        return Err(Error::DimensionMismatch { left: table.dim(), right: comparison.dim() });
    }
    Ok(Cochain::transported_node(table.clone(), comparison))
}

/// `k!·Alt(φ)` restricted to basis vectors.
pub fn xi_hat<B: Bimodule>(phi: &Cochain<B>, module: &B) -> MultilinearTable<B::Key> {
    let dim = module.dim();
    let k = phi.arity();
    let alt = phi.antisymmetrized();
    let scale = factorial_scalar(k);
    let mut table = MultilinearTable::new(dim, k);
    let tuples: Vec<Vec<usize>> = if k == 0 { vec![vec![]] } else { (0..k).map(|_| 0..dim).multi_cartesian_product().collect() };
    for idx in tuples {
        let args: Vec<Monomial> = idx.iter().map(|&i| Monomial::var(dim, i)).collect();
        let value = alt.eval(module, &args).scaled(&scale);
        table.set(idx, value).expect("indices in range");
    }
    table
}

/// `ζφ(c)`: evaluate a cochain against a Bar chain, using the outer slots
/// as the enveloping action.
pub fn zeta_eval<B: Bimodule>(phi: &Cochain<B>, module: &B, c: &BarChain) -> Result<ModElem<B>> {
    if c.arity() != phi.arity() {
        return Err(Error::ArityMismatch { expected: phi.arity(), found: c.arity() });
    }
    Ok(zeta(module, phi, c))
}

/// `(x_1..x_{k−1}) ↦ ζφ(s(1⊗x_1⊗…⊗x_{k−1}⊗1))`.
pub fn corrector<B: Bimodule>(phi: &Cochain<B>, comparison: Arc<Comparison>) -> Result<Cochain<B>> {
    if phi.arity() == 0 {
        return Err(Error::Level { op: "corrector", level: 0 });
    }
    Ok(phi.corrector_node(comparison))
}

/// `(x_1..x_k) ↦ ζφ(Ω(1⊗x_1⊗…⊗x_k⊗1))`.
pub fn omega_project<B: Bimodule>(phi: &Cochain<B>, comparison: Arc<Comparison>) -> Cochain<B> {
    phi.retracted_node(comparison)
}

/// Output of [`hkr_decompose`].
#[derive(Clone, Debug)]
pub struct HkrDecomposition<B: Bimodule> {
    pub antisymmetric: Cochain<B>,
    pub corrector: Cochain<B>,
    /// `φ − Alt(φ) − δ(corrector)` on each sample, zero entries included.
    pub residuals: Vec<(Vec<Monomial>, ModElem<B>)>,
}

impl<B: Bimodule> HkrDecomposition<B> {
    pub fn max_residual_terms(&self) -> usize {
        self.residuals.iter().map(|(_, r)| r.len()).max().unwrap_or(0)
    }

    pub fn is_exact(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }
}

pub fn hkr_decompose<B: Bimodule>(
    phi: &Cochain<B>,
    module: &B,
    comparison: Arc<Comparison>,
    samples: &[Vec<Monomial>],
) -> Result<HkrDecomposition<B>> {
    let antisymmetric = phi.antisymmetrized();
    let corrector = corrector(phi, comparison)?.memoized();
    let coboundary = corrector.coboundary();
    let residuals = samples
        .par_iter()
        .map(|t| {
            let mut r = phi.eval(module, t);
            r.sub_assign(&antisymmetric.eval(module, t));
            r.sub_assign(&coboundary.eval(module, t));
            (t.clone(), r)
        })
        .collect();
    Ok(HkrDecomposition { antisymmetric, corrector, residuals })
}

/// Closed form of the degree-2 corrector on a monomial `x^a`:
/// `φ(1,x^a) − Σ_i a_i Σ_{b ≤ a−e_i} C(a−e_i, b) / (L·C(L−1,|b|)) · φ(x^{a−e_i−b}, x_i) *_R x^b`
/// with `L = |a|`.
pub fn corrector_k2_explicit<B: Bimodule>(phi: &Cochain<B>, module: &B, x: &Monomial) -> Result<ModElem<B>> {
    if phi.arity() != 2 {
        return Err(Error::ArityMismatch { expected: 2, found: phi.arity() });
    }
    let dim = module.dim();
    let one = Monomial::one(dim);
    let mut out = phi.eval(module, &[one, x.clone()]);
    let total = x.degree();
    for i in 0..dim {
        let Some(rest) = x.lower(i) else { continue };
        let mult = int(x.exponents()[i] as i64);
        let var = Monomial::var(dim, i);
        for moved in rest.divisors() {
            let stay = rest.div(&moved).expect("divisor");
            let weight = from_bigint(rest.binomial(&moved))
                / (int(total as i64) * from_bigint(binomial(total - 1, moved.degree())));
            let value = module.right(&phi.eval(module, &[stay, var.clone()]), &moved);
            out.add_scaled(&value, &-(&mult * weight));
        }
    }
    Ok(out)
}

/// Linear extension of [`corrector_k2_explicit`].
pub fn corrector_k2_explicit_sym<B: Bimodule>(
    phi: &Cochain<B>,
    module: &B,
    x: &crate::sym::SymElement,
) -> Result<ModElem<B>> {
    let mut out = LinComb::new();
    for (m, c) in x.terms() {
        out.add_scaled(&corrector_k2_explicit(phi, module, m)?, c);
    }
    Ok(out)
}
