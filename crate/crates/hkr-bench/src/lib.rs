//! Fixtures shared by the benchmarks.

use hkr_core::sample::{self, SampleRng};
use hkr_core::{xi, BarChain, Cochain, SymBimodule};

pub const SEED: u64 = 7;

pub fn rng(name: &str) -> SampleRng {
    sample::stream(SEED, name)
}

/// Random chains `1 ⊗ m ⊗ 1` of the given arity in `dim` variables.
pub fn bar_chains(dim: usize, arity: usize, max_degree: usize, count: usize) -> Vec<BarChain> {
    let mut r = rng("bar");
    (0..count).map(|_| sample::bar_middle(&mut r, dim, arity, max_degree, 2)).collect()
}

/// ξ of a random antisymmetric table plus a random coboundary.
pub fn hkr_cochain(dim: usize, arity: usize, max_degree: usize) -> Cochain<SymBimodule> {
    let mut r = rng("cochain");
    let f = sample::antisymmetric_table(&mut r, dim, arity, 2);
    let psi = sample::point_cochain(&mut r, dim, arity - 1, max_degree, 4);
    xi::<SymBimodule>(&f).unwrap().plus(&psi.coboundary()).unwrap()
}
