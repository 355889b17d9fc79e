//! End-to-end acceptance run: each test prints one PASS/FAIL line and
//! asserts it. All comparisons are exact.

use std::process::Command;
use std::sync::Arc;

use hkr_core::multidiff::DifferentialBimodule;
use hkr_core::sample::{self, SampleRng};
use hkr_core::seminorms::{exp_bound, operator_bound_report, pfrak, pnorm_k, series_exp, BoundSampling, BoundedMap};
use hkr_core::{
    bar_h, bar_h_unit, check_axioms, check_order, corrector, corrector_k2_explicit, koszul_h_unit, koszul_to_bar,
    monomial_tuples, transport_sides, xi, xi_transported, AePair, AxiomBounds, Cochain, Comparison,
    DerivationBimodule, FaultyCorrection, KoszulChain, LinComb, Monomial, MultilinearTable, OrderBounds, Scalar,
    SymBimodule, SymElement,
};

const SEED: u64 = 1;
const SAMPLES: usize = 200;
const DEGREE: usize = 3;

fn verdict(id: &str, name: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("PASS {id} {name}");
    } else {
        println!("FAIL {id} {name}: {}", failures[0]);
    }
    assert!(failures.is_empty(), "{id}: {}", failures.join("; "));
}

fn rng(name: &str) -> SampleRng {
    sample::stream(SEED, name)
}

fn int(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

fn dim_for(k: usize) -> usize {
    2usize.max(k)
}

fn unit_fields(dim: usize) -> Vec<Vec<SymElement>> {
    (0..dim)
        .map(|j| (0..dim).map(|i| if i == j { SymElement::one(dim) } else { SymElement::zero(dim) }).collect())
        .collect()
}

#[test]
fn c01_complex_laws() {
    let mut fails = Vec::new();
    let mut r = rng("c01");
    for k in 2..=4 {
        for _ in 0..SAMPLES {
            let c = sample::bar(&mut r, 2, k, DEGREE, 3);
            if !c.differential().unwrap().differential().unwrap().is_zero() {
                fails.push(format!("d∘d at arity {k}"));
            }
        }
    }
    for k in 2..=3 {
        for _ in 0..SAMPLES {
            let c = sample::koszul(&mut r, dim_for(k), k, DEGREE, 3);
            if !c.boundary().unwrap().boundary().unwrap().is_zero() {
                fails.push(format!("∂∘∂ at degree {k}"));
            }
            if !c.delta().delta().is_zero() {
                fails.push(format!("δ∘δ on Koszul chains at degree {k}"));
            }
        }
    }
    let module = SymBimodule::new(2);
    for k in 0..=2 {
        let tuples = monomial_tuples(2, k + 2, 2);
        for _ in 0..5 {
            let phi = sample::point_cochain(&mut r, 2, k, DEGREE, 8);
            let dd = phi.coboundary().coboundary();
            if let Some(t) = tuples.iter().find(|t| !dd.eval(&module, t).is_zero()) {
                fails.push(format!("Hochschild δ∘δ at arity {k} on {t:?}"));
            }
        }
    }
    verdict("c01", "d∘d = 0, ∂∘∂ = 0, δ∘δ = 0", &fails);
}

#[test]
fn c02_bar_homotopy() {
    let mut fails = Vec::new();
    let mut r = rng("c02");
    for _ in 0..SAMPLES {
        let a = sample::sym(&mut r, 2, DEGREE, 3);
        if bar_h_unit(&a).augment().unwrap() != a {
            fails.push("ε∘h₋₁".into());
        }
        let c = sample::bar(&mut r, 2, 0, DEGREE, 3);
        let lhs = bar_h(&c, 0).unwrap().differential().unwrap().add(&bar_h_unit(&c.augment().unwrap())).unwrap();
        if lhs != c {
            fails.push("d₁h₀ + h₋₁ε".into());
        }
        for k in 1..=3 {
            let c = sample::bar(&mut r, 2, k, DEGREE, 3);
            let a = bar_h(&c, k as isize).unwrap().differential().unwrap();
            let b = bar_h(&c.differential().unwrap(), k as isize - 1).unwrap();
            if a.add(&b).unwrap() != c {
                fails.push(format!("level {k}"));
            }
        }
    }
    verdict("c02", "Bar contracting homotopy, levels −1..3", &fails);
}

#[test]
fn c03_koszul_homotopy() {
    let mut fails = Vec::new();
    let mut r = rng("c03");
    for _ in 0..SAMPLES {
        let a = sample::sym(&mut r, 2, DEGREE, 3);
        if koszul_h_unit(&a).augment().unwrap() != a {
            fails.push("ε∘h₋₁".into());
        }
        let c = sample::koszul(&mut r, 2, 0, DEGREE, 3);
        let lhs = c.homotopy(0).unwrap().boundary().unwrap().add(&koszul_h_unit(&c.augment().unwrap())).unwrap();
        if lhs != c {
            fails.push("∂₁h₀ + h₋₁ε".into());
        }
        for k in 1..=3 {
            let dim = dim_for(k);
            let c = sample::koszul(&mut r, dim, k, DEGREE, 3);
            let up = c.homotopy(k).unwrap();
            let a = if up.degree() > dim { KoszulChain::zero(dim, k) } else { up.boundary().unwrap() };
            let b = c.boundary().unwrap().homotopy(k - 1).unwrap();
            if a.add(&b).unwrap() != c {
                fails.push(format!("level {k}"));
            }
        }
    }
    verdict("c03", "Koszul contracting homotopy, levels −1..3", &fails);
}

#[test]
fn c04_chain_equivalence() {
    let mut fails = Vec::new();
    let mut r = rng("c04");
    for k in 1..=3 {
        let dim = dim_for(k);
        let cmp = Comparison::new(dim);
        for _ in 0..SAMPLES {
            let c = sample::koszul(&mut r, dim, k, DEGREE, 3);
            if koszul_to_bar(&c).differential().unwrap() != koszul_to_bar(&c.boundary().unwrap()) {
                fails.push(format!("d∘F at {k}"));
            }
            if cmp.to_koszul(&koszul_to_bar(&c)) != c {
                fails.push(format!("G∘F at {k}"));
            }
            let b = sample::bar(&mut r, dim, k, DEGREE, 2);
            let g = cmp.to_koszul(&b);
            let lhs = if g.degree() > dim { KoszulChain::zero(dim, k - 1) } else { g.boundary().unwrap() };
            if lhs != cmp.to_koszul(&b.differential().unwrap()) {
                fails.push(format!("∂∘G at {k}"));
            }
        }
    }
    verdict("c04", "d∘F = F∘∂, ∂∘G = G∘d, G∘F = id", &fails);
}

#[test]
fn c05_recursive_homotopy() {
    let mut fails = Vec::new();
    let mut r = rng("c05");
    for k in 1..=3 {
        let dim = dim_for(k);
        let cmp = Comparison::new(dim);
        for _ in 0..SAMPLES {
            let c = sample::bar(&mut r, dim, k, DEGREE, 2);
            let lhs = c.sub(&koszul_to_bar(&cmp.to_koszul(&c))).unwrap();
            let rhs = cmp.homotopy(&c).differential().unwrap().add(&cmp.homotopy(&c.differential().unwrap())).unwrap();
            if lhs != rhs {
                fails.push(format!("id − FG at {k}"));
            }
        }
        for _ in 0..SAMPLES / 4 {
            let p = AePair::tensor(&sample::sym(&mut r, dim, 2, 2), &sample::sym(&mut r, dim, 2, 2)).unwrap();
            let c = sample::bar_middle(&mut r, dim, k, DEGREE, 2);
            if cmp.homotopy(&c.act(&p).unwrap()) != cmp.homotopy(&c).act(&p).unwrap() {
                fails.push(format!("A^e-linearity at {k}"));
            }
        }
    }
    verdict("c05", "id − F∘G = d∘s + s∘d, s A^e-linear", &fails);
}

#[test]
fn c06_hkr_decomposition() {
    let mut fails = Vec::new();
    let mut r = rng("c06");
    let module = SymBimodule::new(2);
    let cmp = Arc::new(Comparison::new(2));
    let mut checked = 0;
    for k in 2..=3 {
        let tuples = monomial_tuples(2, k, DEGREE);
        for n in 0..50 {
            let f = sample::antisymmetric_table(&mut r, 2, k, 2);
            let xi_f = xi::<SymBimodule>(&f).unwrap();
            let psi = sample::point_cochain(&mut r, 2, k - 1, DEGREE, 4);
            let phi = xi_f.plus(&psi.coboundary()).unwrap();
            let alt = phi.antisymmetrized();
            let cob = corrector(&phi, cmp.clone()).unwrap().memoized().coboundary();
            for t in &tuples {
                checked += 1;
                let a = alt.eval(&module, t);
                if a != xi_f.eval(&module, t) {
                    fails.push(format!("k={k} cochain {n}: Alt(φ) ≠ ξ(f) at {t:?}"));
                }
                if phi.eval(&module, t) != a.plus(&cob.eval(&module, t)) {
                    fails.push(format!("k={k} cochain {n}: residual at {t:?}"));
                }
            }
        }
    }
    assert_eq!(checked, 50 * (100 + 1000));
    verdict("c06", "φ = Alt(φ) + δ(corrector φ), Alt(φ) = ξ(f), 50 cochains for k = 2, 3", &fails);
}

#[test]
fn c07_explicit_corrector() {
    let mut fails = Vec::new();
    let mut r = rng("c07");
    let module = SymBimodule::new(2);
    let cmp = Arc::new(Comparison::new(2));
    for n in 0..20 {
        let f = sample::antisymmetric_table(&mut r, 2, 2, 2);
        let psi = sample::point_cochain(&mut r, 2, 1, DEGREE, 4);
        let noise = sample::point_cochain(&mut r, 2, 2, DEGREE, 10);
        let phi = xi::<SymBimodule>(&f).unwrap().plus(&psi.coboundary()).unwrap().plus(&noise).unwrap();
        let rec = corrector(&phi, cmp.clone()).unwrap();
        for x in Monomial::up_to_degree(2, DEGREE) {
            if corrector_k2_explicit(&phi, &module, &x).unwrap() != rec.eval(&module, std::slice::from_ref(&x)) {
                fails.push(format!("cochain {n}, x = {x}"));
            }
        }
    }
    verdict("c07", "closed-form degree-2 corrector = recursive corrector", &fails);
}

#[test]
fn c08_multidifferential_orders() {
    let mut fails = Vec::new();
    let mut r = rng("c08");
    let module = SymBimodule::new(2);
    let bounds = OrderBounds { arg_degree: 3, multiplier_degree: 2 };
    let partial = |i: usize| {
        let mut t = MultilinearTable::new(2, 1);
        t.set(vec![i], LinComb::single(Monomial::one(2), int(1))).unwrap();
        Cochain::<SymBimodule>::derivative_extension(t)
    };
    for i in 0..2 {
        if !check_order(&partial(i), &module, &[1], bounds).unwrap().holds() {
            fails.push(format!("∂{} not order 1", i + 1));
        }
    }
    for (i, j) in [(0, 0), (0, 1), (1, 1)] {
        let (d, e) = (partial(i), partial(j));
        let comp = Cochain::function(1, "composite", move |m: &SymBimodule, a: &[Monomial]| {
            let inner = m.element(&e.eval(m, a));
            d.eval_sym(m, &[inner]).unwrap()
        });
        if !check_order(&comp, &module, &[2], bounds).unwrap().holds() {
            fails.push(format!("∂{}∂{} not order 2", i + 1, j + 1));
        }
        if check_order(&comp, &module, &[1], bounds).unwrap().witness.is_none() {
            fails.push(format!("∂{}∂{} has no order-1 witness", i + 1, j + 1));
        }
    }
    for s in 1..=2 {
        let dm = DerivationBimodule::new(2, unit_fields(2), s).unwrap();
        let words = dm.words();
        for k in 1..=2 {
            let entries: Vec<(Vec<usize>, LinComb<(Monomial, Vec<u16>)>)> = increasing_indices(2, k)
                .into_iter()
                .map(|idx| {
                    let w = words[(idx.iter().sum::<usize>() + s) % words.len()].clone();
                    (idx, LinComb::single((sample::monomial(&mut r, 2, 1), w), sample::coeff(&mut r)))
                })
                .collect();
            let f = MultilinearTable::antisymmetric(2, k, entries).unwrap();
            let phi = xi_transported(&f, Arc::new(Comparison::new(2))).unwrap().memoized();
            if let Some(w) = check_order(&phi, &dm, &vec![s + 1; k], bounds).unwrap().witness {
                fails.push(format!("ξ into order {s}, arity {k}: {w}"));
            }
        }
    }
    verdict("c08", "derivations order 1, composites order 2 with witness, ξ order s+1", &fails);
}

fn increasing_indices(n: usize, k: usize) -> Vec<Vec<usize>> {
    match k {
        1 => (0..n).map(|i| vec![i]).collect(),
        2 => (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j])).collect(),
        _ => unreachable!(),
    }
}

#[test]
fn c09_differential_bimodule_axioms() {
    let mut fails = Vec::new();
    for s in 1..=2 {
        let dm = DerivationBimodule::new(2, unit_fields(2), s).unwrap();
        let report = check_axioms(&dm, AxiomBounds { degree: 3, coefficient_degree: 1, multiplier_degree: 1 });
        for res in &report.results {
            if let Some(w) = &res.witness {
                fails.push(format!("s={s} axiom {}: {w}", res.id));
            }
        }
        for u in Monomial::up_to_degree(2, 3) {
            for m in dm.sample_keys(1) {
                let (lhs, rhs) = transport_sides(&dm, &u, &m);
                if lhs != rhs {
                    fails.push(format!("transport at u = {u}"));
                }
            }
        }
    }
    let inner = DerivationBimodule::new(2, unit_fields(2), 2).unwrap();
    let faulty = check_axioms(&FaultyCorrection { inner, level: 2 }, AxiomBounds::default());
    match faulty.get("e").and_then(|e| e.witness.clone()) {
        Some(w) => println!("     injected fault witness: {w}"),
        None => fails.push("injected fault in D₂ not detected".into()),
    }
    verdict("c09", "axioms a–e, bimodule law, injected fault detected", &fails);
}

#[test]
fn c10_seminorms() {
    let mut fails = Vec::new();
    let mut r = rng("c10");
    let c = Scalar::new(3.into(), 2.into());
    for _ in 0..500 {
        let a = sample::sym(&mut r, 3, 4, 3);
        let b = sample::sym(&mut r, 3, 4, 3);
        if pfrak(&c, &a.mul(&b).unwrap()) > pfrak(&c, &a) * pfrak(&c, &b) {
            fails.push(format!("submultiplicativity at {a}, {b}"));
        }
    }
    for _ in 0..SAMPLES {
        let u = SymElement::monomial(Monomial::var(3, 0), sample::coeff(&mut r))
            .add(&SymElement::monomial(Monomial::var(3, 1), sample::coeff(&mut r)))
            .unwrap();
        let v = SymElement::monomial(Monomial::var(3, 2), sample::coeff(&mut r));
        if pnorm_k(&c, &u.mul(&v).unwrap()).unwrap() != pnorm_k(&c, &u).unwrap() * pnorm_k(&c, &v).unwrap() {
            fails.push(format!("separable product {u} · {v}"));
        }
    }
    for map in BoundedMap::ALL {
        for k in 1..=3 {
            let sampling = BoundSampling { dim: 2, level: k, max_degree: DEGREE, samples: SAMPLES, seed: SEED };
            let report = operator_bound_report(map, sampling, &c);
            if !report.holds() || report.rows.is_empty() {
                fails.push(format!("{map} at {k}: max ratio {}", report.max_ratio()));
            }
        }
    }
    for n in 0..=8 {
        for _ in 0..20 {
            let u = sample::homogeneous(&mut r, 2, 1, 2);
            if series_exp(&u, n).unwrap().pfrak(&c) > exp_bound(&pfrak(&c, &u), n) {
                fails.push(format!("exp bound at N = {n}, u = {u}"));
            }
        }
    }
    verdict("c10", "submultiplicativity, separable products, operator constants, exp bound", &fails);
}

fn hkr(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hkr")).args(args).output().expect("binary runs");
    (out.status.code(), out.stdout)
}

#[test]
fn c11_cli_determinism() {
    let mut fails = Vec::new();
    let (code_a, first) = hkr(&["verify", "--suite", "all", "--seed", "1"]);
    let (code_b, second) = hkr(&["verify", "--suite", "all", "--seed", "1"]);
    if code_a != Some(0) || code_b != Some(0) {
        fails.push(format!("verify all exit codes {code_a:?}, {code_b:?}"));
    }
    if first != second || first.is_empty() {
        fails.push("reports differ between runs".into());
    }
    let (code, _) = hkr(&["verify", "--suite", "multidiff", "--inject-fault"]);
    if code != Some(1) {
        fails.push(format!("injected fault exit {code:?}"));
    }
    let dir = std::env::temp_dir().join(format!("hkr-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "sym 2 0\n1 0 : 1/0\n").unwrap();
    let (code, _) = hkr(&["apply", "--map", "bar_h", bad.to_str().unwrap()]);
    if code != Some(2) {
        fails.push(format!("parse error exit {code:?}"));
    }
    let koszul = dir.join("k.txt");
    std::fs::write(&koszul, "koszul 2 1\n1 0 | 0 1 | 1 : 1\n").unwrap();
    let (code, _) = hkr(&["apply", "--map", "G", koszul.to_str().unwrap()]);
    if code != Some(3) {
        fails.push(format!("shape error exit {code:?}"));
    }
    let (code, _) = hkr(&["apply", "--map", "F", koszul.to_str().unwrap()]);
    if code != Some(0) {
        fails.push(format!("apply exit {code:?}"));
    }
    std::fs::remove_dir_all(&dir).ok();
    verdict("c11", "byte-identical verify reports, exit codes 0/1/2/3", &fails);
}
