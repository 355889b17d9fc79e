//! ℓ1 seminorms for the max-norm basis. A symmetric monomial
//! `e_{i_1}∨…∨e_{i_k} = (1/k!) Σ_σ e_{σ(i_1)}⊗…⊗e_{σ(i_k)}` expands into
//! tensor coefficients whose absolute values sum to 1, so the π-seminorm of
//! a polynomial is `Σ c^{|a|} |coefficient|`. For example
//! `p²_c(x_1 x_2) = c²·(1/2 + 1/2) = c²` and `p²_c(x_1²) = c²`.

use std::fmt;

use itertools::Itertools;
use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bar::BarChain;
use crate::chain_maps::koszul_to_bar;
use crate::error::{Error, Result};
use crate::koszul::KoszulChain;
use crate::lincomb::LinComb;
use crate::sample;
use crate::scalar::{factorial, from_bigint, int, permutation_sign, Scalar};
use crate::sym::SymElement;

fn cpow(c: &Scalar, n: usize) -> Scalar {
    num::pow(c.clone(), n)
}

fn weighted_l1<K: Ord>(terms: &LinComb<K>, c: &Scalar, degree: impl Fn(&K) -> usize) -> Scalar
where
    K: Clone,
{
    terms.iter().map(|(k, a)| a.abs() * cpow(c, degree(k))).sum()
}

/// `p^k_c` of a homogeneous element of degree `k`; zero maps to zero.
pub fn pnorm_k(c: &Scalar, omega: &SymElement) -> Result<Scalar> {
    if omega.is_zero() {
        return Ok(Scalar::zero());
    }
    if omega.homogeneous_degree().is_none() {
        return Err(Error::NotHomogeneous);
    }
    Ok(pfrak(c, omega))
}

/// `𝔭_c(ω) = Σ_l p^l_c(ω_l)`.
pub fn pfrak(c: &Scalar, omega: &SymElement) -> Scalar {
    weighted_l1(omega.terms(), c, |m| m.degree())
}

/// Projective seminorm of a Bar chain: the product of `𝔭_c` over slots.
pub fn bar_seminorm(c: &Scalar, chain: &BarChain) -> Scalar {
    weighted_l1(chain.terms(), c, |t| t.iter().map(|m| m.degree()).sum())
}

/// `𝔭_c(α)·𝔭_c(β)·p^k_c(u)` extended by ℓ1.
pub fn koszul_seminorm(c: &Scalar, chain: &KoszulChain) -> Scalar {
    weighted_l1(chain.terms(), c, |k| k.left.degree() + k.right.degree() + k.wedge.len())
}

/// Linear combinations of tensor words `e_{i_1}⊗…⊗e_{i_k}`.
pub type TensorWords = LinComb<Vec<usize>>;

pub fn tensor_seminorm(c: &Scalar, words: &TensorWords) -> Scalar {
    weighted_l1(words, c, Vec::len)
}

fn project(words: &TensorWords, signed: bool) -> TensorWords {
    let mut out = LinComb::new();
    for (w, a) in words {
        let k = w.len();
        let weight = a / from_bigint(factorial(k));
        for perm in (0..k).permutations(k) {
            let image: Vec<usize> = perm.iter().map(|&i| w[i]).collect();
            let s = if signed { int(permutation_sign(&perm)) } else { Scalar::one() };
            out.add_term(image, &weight * s);
        }
    }
    out
}

pub fn sym_projector(words: &TensorWords) -> TensorWords {
    project(words, false)
}

pub fn alt_projector(words: &TensorWords) -> TensorWords {
    project(words, true)
}

/// Homogeneous components of degrees `0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    components: Vec<SymElement>,
}

impl TruncatedSeries {
    pub fn from_element(order: usize, omega: &SymElement) -> Self {
        let dim = omega.dim();
        let mut components = vec![SymElement::zero(dim); order + 1];
        for (deg, part) in omega.grade() {
            if deg <= order {
                components[deg] = part;
            }
        }
        TruncatedSeries { order, components }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn component(&self, degree: usize) -> Option<&SymElement> {
        self.components.get(degree)
    }

    pub fn to_element(&self) -> SymElement {
        self.components.iter().fold(SymElement::zero(self.dim()), |acc, p| acc.add(p).expect("same dimension"))
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    /// Product truncated at the smaller order.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let order = self.order.min(other.order);
        let product = self.to_element().mul(&other.to_element())?;
        Ok(TruncatedSeries::from_element(order, &product))
    }

    pub fn pfrak(&self, c: &Scalar) -> Scalar {
        self.components.iter().map(|p| pfrak(c, p)).sum()
    }
}

/// `Σ_{k≤N} u^k / k!` for `u` homogeneous of degree 1 (or zero).
pub fn series_exp(u: &SymElement, order: usize) -> Result<TruncatedSeries> {
    if let Some(d) = u.homogeneous_degree() {
        if d != 1 {
            return Err(Error::Degree { expected: 1, found: d });
        }
    } else if !u.is_zero() {
        return Err(Error::NotHomogeneous);
    }
    let mut sum = SymElement::one(u.dim());
    let mut power = SymElement::one(u.dim());
    for k in 1..=order {
        power = power.mul(u)?.scale(&Scalar::new(1.into(), (k as i64).into()));
        sum = sum.add(&power)?;
    }
    Ok(TruncatedSeries::from_element(order, &sum))
}

/// `Σ_{k≤N} x^k / k!`.
pub fn exp_bound(x: &Scalar, order: usize) -> Scalar {
    (0..=order).map(|k| cpow(x, k) / from_bigint(factorial(k))).sum()
}

/// Maps whose seminorm constants are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundedMap {
    KoszulToBar,
    BoundaryLeft,
    BoundaryRight,
    Boundary,
    Sym,
    Alt,
    IntegratedPath,
    KoszulDelta,
}

impl BoundedMap {
    pub const ALL: [BoundedMap; 8] = [
        BoundedMap::KoszulToBar,
        BoundedMap::BoundaryLeft,
        BoundedMap::BoundaryRight,
        BoundedMap::Boundary,
        BoundedMap::Sym,
        BoundedMap::Alt,
        BoundedMap::IntegratedPath,
        BoundedMap::KoszulDelta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundedMap::KoszulToBar => "F",
            BoundedMap::BoundaryLeft => "boundary-left",
            BoundedMap::BoundaryRight => "boundary-right",
            BoundedMap::Boundary => "boundary",
            BoundedMap::Sym => "Sym",
            BoundedMap::Alt => "Alt",
            BoundedMap::IntegratedPath => "integrated-path",
            BoundedMap::KoszulDelta => "koszul-delta",
        }
    }

    /// The proven constant at chain level `k`.
    pub fn bound(self, k: usize) -> Scalar {
        match self {
            BoundedMap::KoszulToBar => from_bigint(factorial(k)),
            BoundedMap::BoundaryLeft | BoundedMap::BoundaryRight => int(k as i64),
            BoundedMap::Boundary => int(2 * k as i64),
            BoundedMap::Sym | BoundedMap::Alt | BoundedMap::KoszulDelta => Scalar::one(),
            BoundedMap::IntegratedPath => Scalar::new(1.into(), (k as i64 + 1).into()),
        }
    }
}

impl fmt::Display for BoundedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sample sizes for [`operator_bound_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundSampling {
    pub dim: usize,
    pub level: usize,
    pub max_degree: usize,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub map: BoundedMap,
    pub level: usize,
    pub sample: usize,
    pub ratio: Scalar,
    pub bound: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub map: BoundedMap,
    pub level: usize,
    pub bound: Scalar,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn max_ratio(&self) -> Scalar {
        self.rows.iter().map(|r| r.ratio.clone()).max().unwrap_or_else(Scalar::zero)
    }

    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.ratio <= r.bound)
    }
}

fn ratio(num: Scalar, den: Scalar) -> Option<Scalar> {
    (!den.is_zero()).then(|| num / den)
}

/// Observed ratios `‖map(x)‖ / ‖x‖` on seeded samples at scale `c`. For the
/// Koszul `δ` the denominator uses the rescaled seminorm `𝔭_{2c}`. Zero
/// samples are skipped.
pub fn operator_bound_report(map: BoundedMap, sampling: BoundSampling, c: &Scalar) -> BoundReport {
    let BoundSampling { dim, level: k, max_degree, samples, seed } = sampling;
    let mut rng = sample::stream(seed, &format!("bound/{}/{k}", map.name()));
    let bound = map.bound(k);
    let inputs: Vec<Input> = (0..samples)
        .map(|_| match map {
            BoundedMap::Sym | BoundedMap::Alt => Input::Words(sample::tensor_words(&mut rng, dim, k, 4)),
            _ => Input::Koszul(sample::koszul(&mut rng, dim.max(k), k, max_degree, 3)),
        })
        .collect();
    let two_c = c * int(2);
    let rows: Vec<BoundRow> = inputs
        .par_iter()
        .enumerate()
        .filter_map(|(i, input)| {
            let r = match (map, input) {
                (BoundedMap::Sym, Input::Words(w)) => ratio(tensor_seminorm(c, &sym_projector(w)), tensor_seminorm(c, w)),
                (BoundedMap::Alt, Input::Words(w)) => ratio(tensor_seminorm(c, &alt_projector(w)), tensor_seminorm(c, w)),
                (BoundedMap::KoszulToBar, Input::Koszul(x)) => {
                    ratio(bar_seminorm(c, &koszul_to_bar(x)), koszul_seminorm(c, x))
                }
                (BoundedMap::BoundaryLeft | BoundedMap::BoundaryRight | BoundedMap::Boundary, Input::Koszul(x)) => {
                    let image = match map {
                        BoundedMap::Boundary => x.boundary().ok()?,
                        BoundedMap::BoundaryLeft => x.boundary_halves().ok()?.0,
                        _ => x.boundary_halves().ok()?.1,
                    };
                    ratio(koszul_seminorm(c, &image), koszul_seminorm(c, x))
                }
                (BoundedMap::IntegratedPath, Input::Koszul(x)) => {
                    ratio(koszul_seminorm(c, &x.integrated_path(k)), koszul_seminorm(c, x))
                }
                (BoundedMap::KoszulDelta, Input::Koszul(x)) => {
                    ratio(koszul_seminorm(c, &x.delta()), koszul_seminorm(&two_c, x))
                }
                _ => unreachable!("input kind matches map"),
            }?;
            Some(BoundRow { map, level: k, sample: i, ratio: r, bound: bound.clone() })
        })
        .collect();
    BoundReport { map, level: k, bound, rows }
}

enum Input {
    Koszul(KoszulChain),
    Words(TensorWords),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;
    use crate::sym::Monomial;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn poly(terms: &[(&[u16], i64)]) -> SymElement {
        SymElement::from_terms(terms[0].0.len(), terms.iter().map(|(e, c)| (m(e), int(*c))).collect()).unwrap()
    }

    #[test]
    fn pnorm_examples() {
        let c = frac(3, 2);
        assert_eq!(pnorm_k(&c, &poly(&[(&[1, 0], 1), (&[0, 1], 1)])).unwrap(), int(3));
        assert_eq!(pnorm_k(&c, &poly(&[(&[1, 1], 1)])).unwrap(), frac(9, 4));
        assert_eq!(pnorm_k(&c, &poly(&[(&[0, 0], -5)])).unwrap(), int(5));
        assert!(pnorm_k(&c, &poly(&[(&[0, 0], 1), (&[1, 0], 1)])).is_err());
        assert_eq!(pfrak(&c, &poly(&[(&[0, 0], 1), (&[1, 0], 1)])), frac(5, 2));
        assert_eq!(pfrak(&c, &SymElement::zero(2)), int(0));
    }

    #[test]
    fn symmetric_monomial_convention() {
        // x_1 x_2 expands to (1/2)(e1⊗e2 + e2⊗e1)
        let words: TensorWords = [(vec![0, 1], frac(1, 2)), (vec![1, 0], frac(1, 2))].into_iter().collect();
        assert_eq!(tensor_seminorm(&int(1), &words), pnorm_k(&int(1), &poly(&[(&[1, 1], 1)])).unwrap());
    }

    #[test]
    fn exp_examples() {
        let zero = series_exp(&SymElement::zero(2), 5).unwrap();
        assert_eq!(zero.to_element(), SymElement::one(2));
        assert!(series_exp(&poly(&[(&[2, 0], 1)]), 3).is_err());
        let u = poly(&[(&[1, 0], 1), (&[0, 1], -2)]);
        for n in 0..=8 {
            let e = series_exp(&u, n).unwrap();
            let c = frac(2, 3);
            assert!(e.pfrak(&c) <= exp_bound(&pfrak(&c, &u), n));
            let sq = e.mul(&e).unwrap();
            assert_eq!(sq, series_exp(&u.scale(&int(2)), n).unwrap());
        }
    }

    #[test]
    fn bound_constants() {
        assert_eq!(BoundedMap::KoszulToBar.bound(3), int(6));
        assert_eq!(BoundedMap::Boundary.bound(2), int(4));
        assert_eq!(BoundedMap::IntegratedPath.bound(2), frac(1, 3));
    }

    #[test]
    fn bound_reports_hold() {
        for map in BoundedMap::ALL {
            for k in 1..=3 {
                let r = operator_bound_report(map, BoundSampling { dim: 3, level: k, max_degree: 3, samples: 40, seed: 5 }, &frac(3, 2));
                assert!(r.holds(), "{map} {k} {}", r.max_ratio());
                assert!(!r.rows.is_empty());
            }
        }
    }

    #[test]
    fn f_bound_is_attained() {
        let r = operator_bound_report(BoundedMap::KoszulToBar, BoundSampling { dim: 3, level: 3, max_degree: 2, samples: 20, seed: 1 }, &int(1));
        assert_eq!(r.max_ratio(), int(6));
    }

    fn arb_poly() -> impl Strategy<Value = SymElement> {
        proptest::collection::vec((0u16..3, 0u16..3, -3i64..=3), 0..6).prop_map(|ts| {
            SymElement::from_terms(2, ts.into_iter().map(|(a, b, c)| (m(&[a, b]), int(c))).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn submultiplicative(a in arb_poly(), b in arb_poly(), p in 1i64..5, q in 1i64..5) {
            let c = frac(p, q);
            prop_assert!(pfrak(&c, &a.mul(&b).unwrap()) <= pfrak(&c, &a) * pfrak(&c, &b));
        }

        #[test]
        fn seminorm_axioms(a in arb_poly(), b in arb_poly(), s in -4i64..=4) {
            let c = frac(1, 2);
            prop_assert!(pfrak(&c, &a.add(&b).unwrap()) <= pfrak(&c, &a) + pfrak(&c, &b));
            prop_assert_eq!(pfrak(&c, &a.scale(&int(s))), int(s.abs()) * pfrak(&c, &a));
        }

        #[test]
        fn separable_products(x in proptest::collection::vec(-3i64..=3, 2), y in proptest::collection::vec(-3i64..=3, 2)) {
            // linear forms with disjoint supports: x_1-part and x_2-part
            let u = SymElement::monomial(m(&[1, 0]), int(x[0]));
            let v = SymElement::monomial(m(&[0, 1]), int(y[1]));
            let c = int(2);
            prop_assert_eq!(pnorm_k(&c, &u.mul(&v).unwrap()).unwrap(), pnorm_k(&c, &u).unwrap() * pnorm_k(&c, &v).unwrap());
        }
    }
}
