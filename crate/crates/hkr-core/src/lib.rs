//! Exact homological algebra for polynomial algebras: Bar and Koszul
//! resolutions, the comparison maps between them, Hochschild cochains over
//! pluggable bimodules with computable HKR correctors, multidifferential
//! order checks and the ℓ1 seminorm estimates.

pub mod ae;
pub mod bar;
pub mod bimodule;
pub mod chain_maps;
pub mod cochain;
pub mod error;
pub mod ext;
pub mod hkr;
pub mod koszul;
pub mod lincomb;
pub mod multidiff;
pub mod sample;
pub mod scalar;
pub mod seminorms;
pub mod sym;
pub mod text;
pub mod tpoly;
pub mod verify;

pub use ae::{ae_mul, AePair};
pub use bar::{bar_d, bar_h, bar_h_unit, BarChain, BarKey};
pub use bimodule::{Bimodule, MatrixBimodule, ModElem, SymBimodule};
pub use chain_maps::{ae_linearize, bar_to_koszul, homotopy_s, koszul_to_bar, omega, Comparison};
pub use cochain::{monomial_tuples, monomial_tuples_total, Cochain, MultilinearTable};
pub use error::{Error, Result};
pub use ext::{wedge_mul, ExtElement, ExtMonomial};
pub use hkr::{
    alt_cochain, corrector, corrector_k2_explicit, derivative_extension, hkr_decompose, hoch_delta, omega_project, xi,
    xi_hat, xi_transported, zeta_eval, HkrDecomposition,
};
pub use koszul::{koszul_delta, koszul_h, koszul_h_unit, koszul_i_t, koszul_partial, KoszulChain, KoszulKey};
pub use lincomb::LinComb;
pub use multidiff::{
    bracket, check_axioms, check_order, transport_sides, AxiomBounds, AxiomReport, DerivationBimodule,
    DifferentialBimodule, FaultyCorrection, OrderBounds, OrderCertificate,
};
pub use scalar::Scalar;
pub use seminorms::{
    operator_bound_report, pfrak, pnorm_k, series_exp, BoundReport, BoundSampling, BoundedMap, TensorWords, TruncatedSeries,
};
pub use sym::{sym_mul, Monomial, SymElement};
pub use tpoly::TPoly;
pub use verify::{run_suite, CheckOutcome, RunConfig, Suite, VerifyReport};
