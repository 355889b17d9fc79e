//! Verification suites: every identity of the toolkit checked exactly on
//! seeded samples or exhaustive monomial enumerations.

use std::fmt::{self, Write};
use std::sync::Arc;

use itertools::Itertools;
use num::One;
use rand::Rng;
use rayon::prelude::*;

use crate::ae::AePair;
use crate::bar::{bar_h, bar_h_unit, BarChain};
use crate::bimodule::{Bimodule, MatrixBimodule, SymBimodule};
use crate::chain_maps::{koszul_to_bar, Comparison};
use crate::cochain::{monomial_tuples, Cochain, MultilinearTable};
use crate::hkr::{corrector, corrector_k2_explicit, omega_project, xi, xi_hat, xi_transported, zeta_eval};
use crate::koszul::{koszul_h_unit, KoszulChain};
use crate::lincomb::LinComb;
use crate::multidiff::{
    bracket, check_axioms, check_order, transport_sides, AxiomBounds, DerivationBimodule, FaultyCorrection, OrderBounds,
};
use crate::sample::{self, SampleRng};
use crate::scalar::{format_scalar, int, Scalar};
use crate::seminorms::{
    exp_bound, operator_bound_report, pfrak, pnorm_k, series_exp, BoundSampling, BoundedMap,
};
use crate::sym::{Monomial, SymElement};

/// Sizes and seed of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub dim: usize,
    pub max_degree: usize,
    pub max_k: usize,
    pub seed: u64,
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { dim: 2, max_degree: 3, max_k: 3, seed: 1, samples: 200 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Complexes,
    ChainMaps,
    Hkr,
    Multidiff,
    Seminorms,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Complexes => "complexes",
            Suite::ChainMaps => "chain-maps",
            Suite::Hkr => "hkr",
            Suite::Multidiff => "multidiff",
            Suite::Seminorms => "seminorms",
            Suite::All => "all",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        [Suite::Complexes, Suite::ChainMaps, Suite::Hkr, Suite::Multidiff, Suite::Seminorms, Suite::All]
            .into_iter()
            .find(|s| s.name() == name)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of one identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: String,
    pub identity: String,
    pub cases: usize,
    pub detail: Option<String>,
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub config: RunConfig,
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }

    pub fn render_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "suite {}  dim {}  max-degree {}  max-k {}  seed {}  samples {}\n",
            self.suite, c.dim, c.max_degree, c.max_k, c.seed, c.samples
        );
        for o in &self.outcomes {
            let status = if o.passed() { "PASS" } else { "FAIL" };
            write!(out, "{status}  {}  {}  ({} cases)", o.id, o.identity, o.cases).unwrap();
            if let Some(d) = &o.detail {
                write!(out, "  {d}").unwrap();
            }
            out.push('\n');
            if let Some(w) = &o.witness {
                writeln!(out, "      witness: {w}").unwrap();
            }
        }
        let failed = self.failures().count();
        writeln!(out, "summary: {} passed, {failed} failed", self.outcomes.len() - failed).unwrap();
        out
    }

    /// Tab-separated: id, status, cases, identity, detail, witness.
    pub fn render_machine(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "# suite={} dim={} max_degree={} max_k={} seed={} samples={}\n",
            self.suite, c.dim, c.max_degree, c.max_k, c.seed, c.samples
        );
        for o in &self.outcomes {
            let status = if o.passed() { "pass" } else { "fail" };
            writeln!(
                out,
                "{}\t{status}\t{}\t{}\t{}\t{}",
                o.id,
                o.cases,
                o.identity,
                o.detail.as_deref().unwrap_or("-"),
                o.witness.as_deref().unwrap_or("-")
            )
            .unwrap();
        }
        out
    }
}

struct Outcome {
    cases: usize,
    detail: Option<String>,
    witness: Option<String>,
}

impl Outcome {
    fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

/// Runs `check` on each case, stopping at the first failure.
fn each<T>(cases: impl IntoIterator<Item = T>, mut check: impl FnMut(&T) -> Option<String>) -> Outcome {
    let mut n = 0;
    for case in cases {
        n += 1;
        if let Some(w) = check(&case) {
            return Outcome { cases: n, detail: None, witness: Some(w) };
        }
    }
    Outcome { cases: n, detail: None, witness: None }
}

/// Parallel version of [`each`]; the witness is the first failing case in
/// input order, so results do not depend on scheduling.
fn each_par<T: Sync>(cases: &[T], check: impl Fn(&T) -> Option<String> + Sync + Send) -> Outcome {
    let witness = cases.par_iter().find_map_first(check);
    Outcome { cases: cases.len(), detail: None, witness }
}

fn expect(ok: bool, witness: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(witness)
}

type Job = Box<dyn Fn() -> Outcome + Send + Sync>;

struct Check {
    id: String,
    identity: String,
    run: Job,
}

fn check(id: impl Into<String>, identity: impl Into<String>, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Check {
    Check { id: id.into(), identity: identity.into(), run: Box::new(run) }
}

fn rng(cfg: &RunConfig, id: &str) -> SampleRng {
    sample::stream(cfg.seed, id)
}

fn show<K: fmt::Debug + Ord + Clone>(v: &LinComb<K>) -> String {
    v.describe()
}

fn show_tuple(t: &[Monomial]) -> String {
    format!("({})", t.iter().join(", "))
}

/// Dimension used at chain level `k`: levels above the configured
/// dimension are spot-checked in dimension `k`.
fn level_dim(cfg: &RunConfig, k: usize) -> usize {
    cfg.dim.max(k)
}

fn complexes(cfg: RunConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for k in 2..=cfg.max_k + 1 {
        let id = format!("complexes/bar-dd/{k}");
        let idc = id.clone();
        out.push(check(id, "d∘d = 0 on Bar chains", move || {
            let mut r = rng(&cfg, &idc);
            let chains: Vec<BarChain> = (0..cfg.samples).map(|_| sample::bar(&mut r, cfg.dim, k, cfg.max_degree, 3)).collect();
            each_par(&chains, |c| {
                let dd = c.differential().and_then(|d| d.differential()).expect("arity ≥ 2");
                expect(dd.is_zero(), || format!("{c:?}"))
            })
        }));
    }
    for k in 2..=cfg.max_k {
        let id = format!("complexes/koszul-dd/{k}");
        let idc = id.clone();
        out.push(check(id, "∂∘∂ = 0 on Koszul chains", move || {
            let mut r = rng(&cfg, &idc);
            let dim = level_dim(&cfg, k);
            let chains: Vec<KoszulChain> = (0..cfg.samples).map(|_| sample::koszul(&mut r, dim, k, cfg.max_degree, 3)).collect();
            each_par(&chains, |c| {
                let dd = c.boundary().and_then(|d| d.boundary()).expect("degree ≥ 2");
                expect(dd.is_zero(), || format!("{c:?}"))
            })
        }));
    }
    for k in 0..=cfg.max_k {
        let id = format!("complexes/koszul-delta-delta/{k}");
        let idc = id.clone();
        out.push(check(id, "δ∘δ = 0 on Koszul chains", move || {
            let mut r = rng(&cfg, &idc);
            let dim = level_dim(&cfg, k + 2);
            let chains: Vec<KoszulChain> = (0..cfg.samples).map(|_| sample::koszul(&mut r, dim, k, cfg.max_degree, 3)).collect();
            each_par(&chains, |c| expect(c.delta().delta().is_zero(), || format!("{c:?}")))
        }));
    }
    out.push(check("complexes/koszul-leibniz", "δ and ∂ are graded derivations of the componentwise product", move || {
        let mut r = rng(&cfg, "complexes/koszul-leibniz");
        let dim = level_dim(&cfg, 3);
        let pairs: Vec<(KoszulChain, KoszulChain)> = (0..cfg.samples)
            .map(|_| {
                let p = r.gen_range(0..=1);
                let q = r.gen_range(0..=2);
                (sample::koszul(&mut r, dim, p, 2, 2), sample::koszul(&mut r, dim, q, 2, 2))
            })
            .collect();
        each_par(&pairs, |(a, b)| {
            let sign = if a.degree() % 2 == 0 { int(1) } else { int(-1) };
            let prod = a.product(b).expect("shape");
            let delta_rhs = a.delta().product(b).unwrap().add(&a.product(&b.delta()).unwrap().scale(&sign)).unwrap();
            if prod.delta() != delta_rhs {
                return Some(format!("δ: {a:?} · {b:?}"));
            }
            if a.degree() + b.degree() == 0 {
                return None;
            }
            let bd = |c: &KoszulChain| if c.degree() == 0 { KoszulChain::zero(dim, 0) } else { c.boundary().unwrap() };
            let lhs = bd(&prod);
            let first = if a.degree() == 0 { None } else { Some(bd(a).product(b).unwrap()) };
            let second = if b.degree() == 0 { None } else { Some(a.product(&bd(b)).unwrap().scale(&sign)) };
            let rhs = match (first, second) {
                (Some(x), Some(y)) => x.add(&y).unwrap(),
                (Some(x), None) | (None, Some(x)) => x,
                (None, None) => unreachable!(),
            };
            expect(lhs == rhs, || format!("∂: {a:?} · {b:?}"))
        })
    }));

    out.push(check("complexes/bar-homotopy/-1", "ε∘h₋₁ = id", move || {
        let mut r = rng(&cfg, "complexes/bar-homotopy/-1");
        let xs: Vec<SymElement> = (0..cfg.samples).map(|_| sample::sym(&mut r, cfg.dim, cfg.max_degree, 3)).collect();
        each_par(&xs, |a| expect(bar_h_unit(a).augment().unwrap() == *a, || a.to_string()))
    }));
    out.push(check("complexes/bar-homotopy/0", "d₁h₀ + h₋₁ε = id", move || {
        let mut r = rng(&cfg, "complexes/bar-homotopy/0");
        let cs: Vec<BarChain> = (0..cfg.samples).map(|_| sample::bar(&mut r, cfg.dim, 0, cfg.max_degree, 3)).collect();
        each_par(&cs, |c| {
            let lhs = bar_h(c, 0).unwrap().differential().unwrap().add(&bar_h_unit(&c.augment().unwrap())).unwrap();
            expect(lhs == *c, || format!("{c:?}"))
        })
    }));
    for k in 1..=cfg.max_k {
        let id = format!("complexes/bar-homotopy/{k}");
        let idc = id.clone();
        out.push(check(id, "d h_k + h_{k−1} d = id", move || {
            let mut r = rng(&cfg, &idc);
            let cs: Vec<BarChain> = (0..cfg.samples).map(|_| sample::bar(&mut r, cfg.dim, k, cfg.max_degree, 3)).collect();
            each_par(&cs, |c| {
                let a = bar_h(c, k as isize).unwrap().differential().unwrap();
                let b = bar_h(&c.differential().unwrap(), k as isize - 1).unwrap();
                expect(a.add(&b).unwrap() == *c, || format!("{c:?}"))
            })
        }));
    }
    out.push(check("complexes/koszul-homotopy/-1", "ε∘h₋₁ = id", move || {
        let mut r = rng(&cfg, "complexes/koszul-homotopy/-1");
        let xs: Vec<SymElement> = (0..cfg.samples).map(|_| sample::sym(&mut r, cfg.dim, cfg.max_degree, 3)).collect();
        each_par(&xs, |a| expect(koszul_h_unit(a).augment().unwrap() == *a, || a.to_string()))
    }));
    out.push(check("complexes/koszul-homotopy/0", "∂₁h₀ + h₋₁ε = id", move || {
        let mut r = rng(&cfg, "complexes/koszul-homotopy/0");
        let cs: Vec<KoszulChain> = (0..cfg.samples).map(|_| sample::koszul(&mut r, cfg.dim, 0, cfg.max_degree, 3)).collect();
        each_par(&cs, |c| {
            let lhs = c.homotopy(0).unwrap().boundary().unwrap().add(&koszul_h_unit(&c.augment().unwrap())).unwrap();
            expect(lhs == *c, || format!("{c:?}"))
        })
    }));
    for k in 1..=cfg.max_k {
        let id = format!("complexes/koszul-homotopy/{k}");
        let idc = id.clone();
        out.push(check(id, "∂ h_k + h_{k−1} ∂ = id", move || {
            let mut r = rng(&cfg, &idc);
            let dim = level_dim(&cfg, k);
            let cs: Vec<KoszulChain> = (0..cfg.samples).map(|_| sample::koszul(&mut r, dim, k, cfg.max_degree, 3)).collect();
            each_par(&cs, |c| {
                let up = c.homotopy(k).unwrap();
                let a = if up.degree() > dim { KoszulChain::zero(dim, k) } else { up.boundary().unwrap() };
                let b = c.boundary().unwrap().homotopy(k - 1).unwrap();
                expect(a.add(&b).unwrap() == *c, || format!("{c:?}"))
            })
        }));
    }
    out
}

fn chain_maps(cfg: RunConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for k in 1..=cfg.max_k {
        let id = format!("chain-maps/dF-eq-F-boundary/{k}");
        let idc = id.clone();
        out.push(check(id, "d∘F = F∘∂", move || {
            let mut r = rng(&cfg, &idc);
            let dim = level_dim(&cfg, k);
            let cs: Vec<KoszulChain> = (0..cfg.samples).map(|_| sample::koszul(&mut r, dim, k, cfg.max_degree, 3)).collect();
            each_par(&cs, |c| {
                let lhs = koszul_to_bar(c).differential().unwrap();
                let rhs = koszul_to_bar(&c.boundary().unwrap());
                expect(lhs == rhs, || format!("{c:?}"))
            })
        }));
    }
    for k in 1..=cfg.max_k {
        let id = format!("chain-maps/boundary-G-eq-G-d/{k}");
        let idc = id.clone();
        out.push(check(id, "∂∘G = G∘d", move || {
            let mut r = rng(&cfg, &idc);
            let dim = level_dim(&cfg, k);
            let cmp = Comparison::new(dim);
            let cs: Vec<BarChain> = (0..cfg.samples).map(|_| sample::bar(&mut r, dim, k, cfg.max_degree, 2)).collect();
            each_par(&cs, |c| {
                let g = cmp.to_koszul(c);
                let lhs = if g.degree() > dim { KoszulChain::zero(dim, k - 1) } else { g.boundary().unwrap() };
                let rhs = cmp.to_koszul(&c.differential().unwrap());
                expect(lhs == rhs, || format!("{c:?}"))
            })
        }));
    }
    for k in 0..=cfg.max_k {
        let id = format!("chain-maps/GF-eq-id/{k}");
        let idc = id.clone();
        out.push(check(id, "G∘F = id", move || {
            let mut r = rng(&cfg, &idc);
            let dim = level_dim(&cfg, k);
            let cmp = Comparison::new(dim);
            let cs: Vec<KoszulChain> = (0..cfg.samples).map(|_| sample::koszul(&mut r, dim, k, cfg.max_degree, 3)).collect();
            each_par(&cs, |c| expect(cmp.to_koszul(&koszul_to_bar(c)) == *c, || format!("{c:?}")))
        }));
    }
    for k in 0..=cfg.max_k {
        let id = format!("chain-maps/homotopy/{k}");
        let idc = id.clone();
        out.push(check(id, "id − F∘G = d∘s + s∘d", move || {
            let mut r = rng(&cfg, &idc);
            let dim = level_dim(&cfg, k);
            let cmp = Comparison::new(dim);
            let cs: Vec<BarChain> = (0..cfg.samples).map(|_| sample::bar(&mut r, dim, k, cfg.max_degree, 2)).collect();
            each_par(&cs, |c| {
                let lhs = c.sub(&cmp.retract(c)).unwrap();
                let mut rhs = cmp.homotopy(c).differential().unwrap();
                if k > 0 {
                    rhs = rhs.add(&cmp.homotopy(&c.differential().unwrap())).unwrap();
                }
                expect(lhs == rhs, || format!("{c:?}"))
            })
        }));
    }
    for k in 1..=cfg.max_k {
        let id = format!("chain-maps/homotopy-linear/{k}");
        let idc = id.clone();
        out.push(check(id, "s(p·c) = p·s(c) for p in A^e", move || {
            let mut r = rng(&cfg, &idc);
            let dim = level_dim(&cfg, k);
            let cmp = Comparison::new(dim);
            let cases: Vec<(AePair, BarChain)> = (0..cfg.samples / 4)
                .map(|_| {
                    let a = sample::sym(&mut r, dim, 2, 2);
                    let b = sample::sym(&mut r, dim, 2, 2);
                    (AePair::tensor(&a, &b).unwrap(), sample::bar_middle(&mut r, dim, k, cfg.max_degree, 2))
                })
                .collect();
            each_par(&cases, |(p, c)| {
                let lhs = cmp.homotopy(&c.act(p).unwrap());
                let rhs = cmp.homotopy(c).act(p).unwrap();
                expect(lhs == rhs, || format!("{p:?} · {c:?}"))
            })
        }));
    }
    out
}

fn sym_table(r: &mut SampleRng, dim: usize, k: usize) -> MultilinearTable<Monomial> {
    sample::antisymmetric_table(r, dim, k, 2)
}

fn character() -> MatrixBimodule {
    MatrixBimodule::character(vec![int(2), int(-1), int(3)], vec![int(1), int(3), int(-2)]).expect("rank one")
}

fn character_points(r: &mut SampleRng, dim: usize, arity: usize, points: usize) -> Cochain<MatrixBimodule> {
    let mut values = std::collections::BTreeMap::new();
    for _ in 0..points {
        let args: Vec<Monomial> = (0..arity).map(|_| sample::monomial(r, dim, 2)).collect();
        values.insert(args, LinComb::single(0usize, sample::coeff(r)));
    }
    Cochain::points(arity, values).expect("arity")
}

/// Leibniz evaluation from values on variables, computed by peeling off
/// one variable at a time; independent of the closed-form extension.
fn leibniz_cochain(table: MultilinearTable<Monomial>) -> Cochain<SymBimodule> {
    fn go(module: &SymBimodule, table: &MultilinearTable<Monomial>, args: &[Monomial]) -> LinComb<Monomial> {
        let dim = module.dim();
        if let Some(slot) = args.iter().position(|a| a.degree() >= 2) {
            let a = &args[slot];
            let i = a.exponents().iter().position(|&e| e > 0).expect("nonconstant");
            let rest = a.lower(i).expect("positive exponent");
            let var = Monomial::var(dim, i);
            let mut left = args.to_vec();
            left[slot] = rest.clone();
            let mut right = args.to_vec();
            right[slot] = var.clone();
            let mut out = module.left(&var, &go(module, table, &left));
            out.add_assign(&module.left(&rest, &go(module, table, &right)));
            return out;
        }
        if args.iter().any(Monomial::is_one) {
            return LinComb::new();
        }
        let idx: Vec<usize> = args.iter().map(|a| a.exponents().iter().position(|&e| e == 1).unwrap()).collect();
        table.get(&idx)
    }
    let arity = table.arity();
    Cochain::function(arity, "Leibniz recursion", move |m: &SymBimodule, args: &[Monomial]| go(m, &table, args))
}

fn hkr(cfg: RunConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for k in 0..=2 {
        let id = format!("hkr/hochschild-dd/{k}");
        let idc = id.clone();
        out.push(check(id, "δ∘δ = 0 on cochains (S(V) and a character bimodule)", move || {
            let mut r = rng(&cfg, &idc);
            let module = SymBimodule::new(cfg.dim);
            let chi = character_for(cfg.dim);
            let tuples = monomial_tuples(cfg.dim, k + 2, 2);
            let mut total = 0;
            for _ in 0..4 {
                let phi = sample::point_cochain(&mut r, cfg.dim, k, 2, 6).coboundary().coboundary();
                let o = each_par(&tuples, |t| {
                    let v = phi.eval(&module, t);
                    expect(v.is_zero(), || format!("{} ↦ {}", show_tuple(t), show(&v)))
                });
                total += o.cases;
                if o.witness.is_some() {
                    return o;
                }
                let psi = character_points(&mut r, cfg.dim, k, 6).coboundary().coboundary();
                let o = each_par(&tuples, |t| {
                    let v = psi.eval(&chi, t);
                    expect(v.is_zero(), || format!("{} ↦ {}", show_tuple(t), show(&v)))
                });
                total += o.cases;
                if o.witness.is_some() {
                    return o;
                }
            }
            Outcome { cases: total, detail: None, witness: None }
        }));
    }
    for k in 1..=cfg.max_k {
        let id = format!("hkr/alt-delta/{k}");
        let idc = id.clone();
        out.push(check(id, "Alt∘δ = 0 over S(V)", move || {
            let mut r = rng(&cfg, &idc);
            let module = SymBimodule::new(cfg.dim);
            let tuples = monomial_tuples(cfg.dim, k, 2);
            let mut total = 0;
            for _ in 0..4 {
                let phi = sample::point_cochain(&mut r, cfg.dim, k - 1, 2, 8).coboundary().antisymmetrized();
                let o = each_par(&tuples, |t| {
                    let v = phi.eval(&module, t);
                    expect(v.is_zero(), || format!("{} ↦ {}", show_tuple(t), show(&v)))
                });
                total += o.cases;
                if o.witness.is_some() {
                    return o;
                }
            }
            Outcome { cases: total, detail: None, witness: None }
        }));
    }
    for k in 1..=2 {
        let id = format!("hkr/derivative-extension/{k}");
        let idc = id.clone();
        out.push(check(id, "derivative extension is Leibniz in each slot and unique", move || {
            let mut r = rng(&cfg, &idc);
            let module = SymBimodule::new(cfg.dim);
            let mut table = MultilinearTable::new(cfg.dim, k);
            for idx in (0..k).map(|_| 0..cfg.dim).multi_cartesian_product() {
                table.set(idx, sample::sym(&mut r, cfg.dim, 2, 2).into_terms()).unwrap();
            }
            let phi: Cochain<SymBimodule> = Cochain::derivative_extension(table.clone());
            let oracle = leibniz_cochain(table);
            let tuples = monomial_tuples(cfg.dim, k, cfg.max_degree);
            each_par(&tuples, |t| {
                let v = phi.eval(&module, t);
                let w = oracle.eval(&module, t);
                expect(v == w, || format!("{}: {} vs {}", show_tuple(t), show(&v), show(&w)))
            })
        }));
    }
    for k in 1..=cfg.max_k {
        let id = format!("hkr/xi/{k}");
        let idc = id.clone();
        out.push(check(id, "ξ(f) is an antisymmetric cocycle and ξ̂(ξ(f)) = f", move || {
            let mut r = rng(&cfg, &idc);
            let dim = level_dim(&cfg, k);
            let module = SymBimodule::new(dim);
            let tuples = monomial_tuples(dim, k + 1, 1);
            each(0..10, |_| {
                let f = sym_table(&mut r, dim, k);
                let phi = xi::<SymBimodule>(&f).unwrap();
                if xi_hat(&phi, &module) != f {
                    return Some(format!("ξ̂∘ξ differs for {f:?}"));
                }
                let d = phi.coboundary();
                tuples.iter().find_map(|t| {
                    let v = d.eval(&module, t);
                    (!v.is_zero()).then(|| format!("δξ(f){} = {}", show_tuple(t), show(&v)))
                })
            })
        }));
    }
    for k in 2..=3.min(cfg.max_k.max(2)) {
        let id = format!("hkr/decomposition/{k}");
        let idc = id.clone();
        out.push(check(id, "φ = Alt(φ) + δ(corrector φ) and Alt(φ) = ξ(f) for φ = ξ(f) + δψ", move || {
            let mut r = rng(&cfg, &idc);
            let module = SymBimodule::new(cfg.dim);
            let cmp = Arc::new(Comparison::new(cfg.dim));
            let tuples = monomial_tuples(cfg.dim, k, cfg.max_degree);
            let mut total = 0;
            for n in 0..50 {
                let xi_f = xi::<SymBimodule>(&sym_table(&mut r, cfg.dim, k)).unwrap();
                let psi = sample::point_cochain(&mut r, cfg.dim, k - 1, cfg.max_degree, 4);
                let phi = xi_f.plus(&psi.coboundary()).unwrap();
                let alt = phi.antisymmetrized();
                let cob = corrector(&phi, cmp.clone()).unwrap().memoized().coboundary();
                let o = each_par(&tuples, |t| {
                    let a = alt.eval(&module, t);
                    let x = xi_f.eval(&module, t);
                    if a != x {
                        return Some(format!("cochain {n}, {}: Alt = {}, ξ(f) = {}", show_tuple(t), show(&a), show(&x)));
                    }
                    let residual = phi.eval(&module, t).minus(&a).minus(&cob.eval(&module, t));
                    expect(residual.is_zero(), || format!("cochain {n}, {}: residual {}", show_tuple(t), show(&residual)))
                });
                total += o.cases;
                if o.witness.is_some() {
                    return Outcome { cases: total, ..o };
                }
            }
            Outcome { cases: total, detail: Some("50 cochains".into()), witness: None }
        }));
    }
    out.push(check("hkr/explicit-corrector", "closed-form degree-2 corrector = recursive corrector", move || {
        let mut r = rng(&cfg, "hkr/explicit-corrector");
        let module = SymBimodule::new(cfg.dim);
        let cmp = Arc::new(Comparison::new(cfg.dim));
        let xs = Monomial::up_to_degree(cfg.dim, cfg.max_degree);
        let mut total = 0;
        for n in 0..20 {
            let base = sample::point_cochain(&mut r, cfg.dim, 2, cfg.max_degree, 10);
            let phi = if n % 2 == 0 {
                base
            } else {
                let psi = sample::point_cochain(&mut r, cfg.dim, 1, cfg.max_degree, 4);
                xi::<SymBimodule>(&sym_table(&mut r, cfg.dim, 2)).unwrap().plus(&psi.coboundary()).unwrap().plus(&base).unwrap()
            };
            let rec = corrector(&phi, cmp.clone()).unwrap();
            let o = each_par(&xs, |x| {
                let a = corrector_k2_explicit(&phi, &module, x).unwrap();
                let b = rec.eval(&module, std::slice::from_ref(x));
                expect(a == b, || format!("cochain {n}, x = {x}: closed form {}, recursive {}", show(&a), show(&b)))
            });
            total += o.cases;
            if o.witness.is_some() {
                return Outcome { cases: total, ..o };
            }
        }
        Outcome { cases: total, detail: Some("20 cochains".into()), witness: None }
    }));
    out.push(check("hkr/zeta-linear", "ζφ(p·c) = p·ζφ(c)", move || {
        let mut r = rng(&cfg, "hkr/zeta-linear");
        let chi = character_for(cfg.dim);
        let phi = character_points(&mut r, cfg.dim, 2, 12);
        let cases: Vec<(Monomial, Monomial, BarChain)> = (0..cfg.samples)
            .map(|_| (sample::monomial(&mut r, cfg.dim, 2), sample::monomial(&mut r, cfg.dim, 2), sample::bar(&mut r, cfg.dim, 2, 2, 3)))
            .collect();
        each_par(&cases, |(a, b, c)| {
            let acted = c.act(&AePair::basis(a.clone(), b.clone(), Scalar::one())).unwrap();
            let lhs = zeta_eval(&phi, &chi, &acted).unwrap();
            let rhs = chi.enveloping(a, b, &zeta_eval(&phi, &chi, c).unwrap());
            expect(lhs == rhs, || format!("({a}⊗{b}) · {c:?}"))
        })
    }));
    for k in 1..=2 {
        let id = format!("hkr/omega-identity/{k}");
        let idc = id.clone();
        out.push(check(id, "φ − ζΩζφ = δ(corrector φ) + corrector(δφ) over a character bimodule", move || {
            let mut r = rng(&cfg, &idc);
            let chi = character_for(cfg.dim);
            let cmp = Arc::new(Comparison::new(cfg.dim));
            let tuples = monomial_tuples(cfg.dim, k, 2);
            let mut total = 0;
            for _ in 0..5 {
                let phi = character_points(&mut r, cfg.dim, k, 10);
                let lhs = phi.minus(&omega_project(&phi, cmp.clone())).unwrap();
                let rhs = corrector(&phi, cmp.clone())
                    .unwrap()
                    .coboundary()
                    .plus(&corrector(&phi.coboundary(), cmp.clone()).unwrap())
                    .unwrap();
                let o = each_par(&tuples, |t| {
                    let a = lhs.eval(&chi, t);
                    let b = rhs.eval(&chi, t);
                    expect(a == b, || format!("{}: {} vs {}", show_tuple(t), show(&a), show(&b)))
                });
                total += o.cases;
                if o.witness.is_some() {
                    return o;
                }
            }
            Outcome { cases: total, detail: None, witness: None }
        }));
    }
    out
}

fn character_for(dim: usize) -> MatrixBimodule {
    let base = character();
    if dim == 3 {
        return base;
    }
    let l: Vec<Scalar> = (0..dim).map(|i| int([2, -1, 3][i % 3] + (i / 3) as i64)).collect();
    let rr: Vec<Scalar> = (0..dim).map(|i| int([1, 3, -2][i % 3] - (i / 3) as i64)).collect();
    MatrixBimodule::character(l, rr).expect("rank one")
}

fn unit_fields(dim: usize) -> Vec<Vec<SymElement>> {
    (0..dim)
        .map(|j| (0..dim).map(|i| if i == j { SymElement::one(dim) } else { SymElement::zero(dim) }).collect())
        .collect()
}

fn partial(dim: usize, i: usize) -> Cochain<SymBimodule> {
    let mut t = MultilinearTable::new(dim, 1);
    t.set(vec![i], LinComb::single(Monomial::one(dim), Scalar::one())).unwrap();
    Cochain::derivative_extension(t)
}

fn multidiff(cfg: RunConfig, inject_fault: bool) -> Vec<Check> {
    let mut out = Vec::new();
    let bounds = OrderBounds { arg_degree: cfg.max_degree.min(3), multiplier_degree: 2 };
    out.push(check("multidiff/derivation-order", "derivations certify order 1", move || {
        let mut r = rng(&cfg, "multidiff/derivation-order");
        let module = SymBimodule::new(cfg.dim);
        each(0..6, |n| {
            let k = 1 + n % 2;
            let mut table = MultilinearTable::new(cfg.dim, k);
            for idx in (0..k).map(|_| 0..cfg.dim).multi_cartesian_product() {
                table.set(idx, sample::sym(&mut r, cfg.dim, 2, 2).into_terms()).unwrap();
            }
            let phi: Cochain<SymBimodule> = Cochain::derivative_extension(table);
            let b = OrderBounds { arg_degree: bounds.arg_degree.min(4 - k), ..bounds };
            check_order(&phi, &module, &vec![1; k], b).unwrap().witness.map(|w| format!("sample {n}: {w}"))
        })
        .with_detail(format!("args ≤ {}, multipliers ≤ {}", bounds.arg_degree, bounds.multiplier_degree))
    }));
    out.push(check("multidiff/composite-order", "composites of two derivations certify order 2 and fail order 1", move || {
        let module = SymBimodule::new(cfg.dim);
        let pairs: Vec<(usize, usize)> = (0..cfg.dim).tuple_combinations().chain((0..cfg.dim).map(|i| (i, i))).collect();
        each(pairs, |&(i, j)| {
            let (d, e) = (partial(cfg.dim, i), partial(cfg.dim, j));
            let comp = Cochain::function(1, "composite", move |m: &SymBimodule, a: &[Monomial]| {
                let inner = m.element(&e.eval(m, a));
                d.eval_sym(m, &[inner]).unwrap()
            });
            if let Some(w) = check_order(&comp, &module, &[2], bounds).unwrap().witness {
                return Some(format!("∂{}∂{} at order 2: {w}", i + 1, j + 1));
            }
            let first = check_order(&comp, &module, &[1], bounds).unwrap();
            expect(!first.holds(), || format!("∂{}∂{} passed order 1", i + 1, j + 1))
        })
    }));
    out.push(check("multidiff/bracket-commute", "brackets in different slots and multipliers commute", move || {
        let mut r = rng(&cfg, "multidiff/bracket-commute");
        let module = SymBimodule::new(cfg.dim);
        let phi = sample::point_cochain(&mut r, cfg.dim, 2, 3, 12)
            .plus(&Cochain::derivative_extension(sym_table(&mut r, cfg.dim, 2)))
            .unwrap();
        let tuples = monomial_tuples(cfg.dim, 2, 2);
        each(0..20, |_| {
            let (i, j) = (r.gen_range(0..2), r.gen_range(0..2));
            let a = sample::sym(&mut r, cfg.dim, 2, 2);
            let b = sample::sym(&mut r, cfg.dim, 2, 2);
            let ab = bracket(&bracket(&phi, i, &a).unwrap(), j, &b).unwrap();
            let ba = bracket(&bracket(&phi, j, &b).unwrap(), i, &a).unwrap();
            tuples.iter().find_map(|t| expect(ab.eval(&module, t) == ba.eval(&module, t), || format!("slots {i},{j} a = {a} b = {b} at {}", show_tuple(t))))
        })
    }));
    out.push(check("multidiff/filtration", "order certificates persist at higher orders", move || {
        let module = SymBimodule::new(cfg.dim);
        let d = partial(cfg.dim, 0);
        each(1..=3, |&l| {
            let b = OrderBounds { arg_degree: 2, multiplier_degree: 1 };
            expect(check_order(&d, &module, &[l], b).unwrap().holds(), || format!("order {l}"))
        })
    }));
    for s in 1..=2 {
        for k in 1..=2 {
            let id = format!("multidiff/xi-order/{s}/{k}");
            let idc = id.clone();
            out.push(check(id, "ξ(f) into a derivation bimodule of order s certifies order s+1", move || {
                let mut r = rng(&cfg, &idc);
                let module = DerivationBimodule::new(cfg.dim, unit_fields(cfg.dim), s).unwrap();
                let cmp = Arc::new(Comparison::new(cfg.dim));
                let keys = module.words();
                let entries: Vec<(Vec<usize>, LinComb<(Monomial, Vec<u16>)>)> = (0..cfg.dim)
                    .combinations(k)
                    .map(|idx| {
                        let mut v = LinComb::new();
                        for _ in 0..2 {
                            let w = keys[r.gen_range(0..keys.len())].clone();
                            v.add_term((sample::monomial(&mut r, cfg.dim, 1), w), sample::coeff(&mut r));
                        }
                        (idx, v)
                    })
                    .collect();
                let f = MultilinearTable::antisymmetric(cfg.dim, k, entries).unwrap();
                let phi = xi_transported(&f, cmp).unwrap().memoized();
                let b = OrderBounds { arg_degree: 3, multiplier_degree: 2 };
                let cert = check_order(&phi, &module, &vec![s + 1; k], b).unwrap();
                Outcome { cases: 1, detail: Some("args ≤ 3, multipliers ≤ 2".into()), witness: cert.witness.map(|w| w.to_string()) }
            }));
        }
    }
    for s in 1..=2 {
        let id = format!("multidiff/axioms/{s}");
        out.push(check(id, "differential bimodule axioms a–e and bimodule laws", move || {
            let module = DerivationBimodule::new(cfg.dim, unit_fields(cfg.dim), s).unwrap();
            let report = check_axioms(&module, AxiomBounds::default());
            let cases = report.results.iter().map(|r| r.checks).sum();
            let witness = report.results.iter().find_map(|r| r.witness.as_ref().map(|w| format!("axiom {}: {w}", r.id)));
            Outcome { cases, detail: Some(report.results.iter().map(|r| r.id).join(",")), witness }
        }));
    }
    out.push(check("multidiff/transport", "î(1⊗u⊗1)·m = u·m + Σ (1−t)^l D_l(u, m)", move || {
        let module = DerivationBimodule::new(cfg.dim, unit_fields(cfg.dim), 2).unwrap();
        use crate::multidiff::DifferentialBimodule;
        let cases: Vec<(Monomial, (Monomial, Vec<u16>))> =
            Monomial::up_to_degree(cfg.dim, 3).into_iter().cartesian_product(module.sample_keys(1)).collect();
        each_par(&cases, |(u, m)| {
            let (lhs, rhs) = transport_sides(&module, u, m);
            expect(lhs == rhs, || format!("u = {u}, m = {m:?}"))
        })
    }));
    out.push(check("multidiff/fault-detected", "a corrupted D₂ is rejected by axiom e", move || {
        let inner = DerivationBimodule::new(cfg.dim, unit_fields(cfg.dim), 2).unwrap();
        let report = check_axioms(&FaultyCorrection { inner, level: 2 }, AxiomBounds::default());
        let e = report.get("e").expect("axiom e");
        Outcome { cases: e.checks, detail: e.witness.clone().map(|w| format!("detected: {w}")), witness: e.passed().then(|| "fault not detected".into()) }
    }));
    if inject_fault {
        out.push(check("multidiff/injected-fixture", "differential bimodule axioms on the corrupted fixture", move || {
            let inner = DerivationBimodule::new(cfg.dim, unit_fields(cfg.dim), 2).unwrap();
            let report = check_axioms(&FaultyCorrection { inner, level: 2 }, AxiomBounds::default());
            let cases = report.results.iter().map(|r| r.checks).sum();
            let e = report.get("e").expect("axiom e");
            let witness = e
                .witness
                .as_ref()
                .map(|w| format!("axiom e: {w}"))
                .or_else(|| report.results.iter().find_map(|r| r.witness.as_ref().map(|w| format!("axiom {}: {w}", r.id))));
            Outcome { cases, detail: None, witness }
        }));
    }
    out
}

fn seminorms(cfg: RunConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let c = Scalar::new(3.into(), 2.into());
    let cc = c.clone();
    out.push(check("seminorms/submultiplicative", "𝔭(αβ) ≤ 𝔭(α)𝔭(β)", move || {
        let mut r = rng(&cfg, "seminorms/submultiplicative");
        let dim = cfg.dim.min(3);
        let pairs: Vec<(SymElement, SymElement)> = (0..cfg.samples.max(500))
            .map(|_| (sample::sym(&mut r, dim, 4, 3), sample::sym(&mut r, dim, 4, 3)))
            .collect();
        each_par(&pairs, |(a, b)| {
            let lhs = pfrak(&cc, &a.mul(b).unwrap());
            let rhs = pfrak(&cc, a) * pfrak(&cc, b);
            expect(lhs <= rhs, || format!("{a} · {b}"))
        })
    }));
    let cc = c.clone();
    out.push(check("seminorms/separable", "p(u₁⋯u_k) = Π p(u_i) for disjointly supported linear u_i", move || {
        let mut r = rng(&cfg, "seminorms/separable");
        let dim = cfg.dim.max(3);
        let cases: Vec<Vec<SymElement>> = (0..cfg.samples)
            .map(|_| {
                let mut vars: Vec<usize> = (0..dim).collect();
                rand::seq::SliceRandom::shuffle(vars.as_mut_slice(), &mut r);
                let parts = r.gen_range(1..=dim);
                let mut factors = vec![SymElement::zero(dim); parts];
                for (n, v) in vars.into_iter().enumerate() {
                    let m = SymElement::monomial(Monomial::var(dim, v), sample::coeff(&mut r));
                    factors[n % parts] = factors[n % parts].add(&m).unwrap();
                }
                factors
            })
            .collect();
        each_par(&cases, |fs| {
            let prod = fs.iter().skip(1).fold(fs[0].clone(), |acc, f| acc.mul(f).unwrap());
            let lhs = pnorm_k(&cc, &prod).unwrap();
            let rhs: Scalar = fs.iter().map(|f| pnorm_k(&cc, f).unwrap()).product();
            expect(lhs == rhs, || fs.iter().join(" · "))
        })
    }));
    let cc = c.clone();
    out.push(check("seminorms/axioms", "triangle inequality and absolute homogeneity", move || {
        let mut r = rng(&cfg, "seminorms/axioms");
        let cases: Vec<(SymElement, SymElement, Scalar)> = (0..cfg.samples)
            .map(|_| (sample::sym(&mut r, cfg.dim, 4, 4), sample::sym(&mut r, cfg.dim, 4, 4), sample::coeff(&mut r) / int(3)))
            .collect();
        each_par(&cases, |(a, b, s)| {
            let tri = pfrak(&cc, &a.add(b).unwrap()) <= pfrak(&cc, a) + pfrak(&cc, b);
            let hom = pfrak(&cc, &a.scale(s)) == num::Signed::abs(s) * pfrak(&cc, a);
            expect(tri && hom, || format!("{a}, {b}, {s}"))
        })
    }));
    for map in BoundedMap::ALL {
        for k in 1..=cfg.max_k {
            let id = format!("seminorms/bound/{}/{k}", map.name());
            let cc = c.clone();
            out.push(check(id, format!("observed ratio ≤ {}", format_scalar(&map.bound(k))), move || {
                let sampling = BoundSampling { dim: cfg.dim, level: k, max_degree: cfg.max_degree, samples: cfg.samples, seed: cfg.seed };
                let report = operator_bound_report(map, sampling, &cc);
                let witness = report
                    .rows
                    .iter()
                    .find(|row| row.ratio > row.bound)
                    .map(|row| format!("sample {} ratio {}", row.sample, format_scalar(&row.ratio)));
                Outcome {
                    cases: report.rows.len(),
                    detail: Some(format!("max ratio {} bound {}", format_scalar(&report.max_ratio()), format_scalar(&report.bound))),
                    witness,
                }
            }));
        }
    }
    let cc = c;
    out.push(check("seminorms/exp", "𝔭(exp_N u) ≤ Σ_{k≤N} p(u)^k/k! and exp_N(u)² = exp_N(2u), N ≤ 8", move || {
        let mut r = rng(&cfg, "seminorms/exp");
        let cases: Vec<(SymElement, usize)> =
            (0..cfg.samples / 4).map(|n| (sample::homogeneous(&mut r, cfg.dim, 1, 2), n % 9)).collect();
        each_par(&cases, |(u, n)| {
            let e = series_exp(u, *n).unwrap();
            let bound = exp_bound(&pfrak(&cc, u), *n);
            let square = e.mul(&e).unwrap() == series_exp(&u.scale(&int(2)), *n).unwrap();
            expect(e.pfrak(&cc) <= bound && square, || format!("u = {u}, N = {n}"))
        })
    }));
    out
}

fn checks(suite: Suite, cfg: RunConfig, inject_fault: bool) -> Vec<Check> {
    match suite {
        Suite::Complexes => complexes(cfg),
        Suite::ChainMaps => chain_maps(cfg),
        Suite::Hkr => hkr(cfg),
        Suite::Multidiff => multidiff(cfg, inject_fault),
        Suite::Seminorms => seminorms(cfg),
        Suite::All => {
            let mut all = complexes(cfg);
            all.extend(chain_maps(cfg));
            all.extend(hkr(cfg));
            all.extend(multidiff(cfg, inject_fault));
            all.extend(seminorms(cfg));
            all
        }
    }
}

/// Runs a suite. Checks run in parallel and are reported sorted by id.
pub fn run_suite(suite: Suite, cfg: RunConfig, inject_fault: bool) -> VerifyReport {
    run_filtered(suite, cfg, inject_fault, |_| true)
}

/// Runs the checks of a suite whose id satisfies `keep`.
pub fn run_filtered(suite: Suite, cfg: RunConfig, inject_fault: bool, keep: impl Fn(&str) -> bool) -> VerifyReport {
    let selected: Vec<Check> = checks(suite, cfg, inject_fault).into_iter().filter(|c| keep(&c.id)).collect();
    let mut outcomes: Vec<CheckOutcome> = selected
        .par_iter()
        .map(|c| {
            let o = (c.run)();
            CheckOutcome { id: c.id.clone(), identity: c.identity.clone(), cases: o.cases, detail: o.detail, witness: o.witness }
        })
        .collect();
    outcomes.sort_by(|a, b| a.id.cmp(&b.id));
    VerifyReport { suite, config: cfg, outcomes }
}
