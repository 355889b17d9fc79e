//! Polynomials in auxiliary variables `t_1..t_m` with chain-valued
//! coefficients, and their exact integration over the ordered simplex
//! `1 ≥ t_1 ≥ … ≥ t_m ≥ 0`.

use num::{One, Zero};

use crate::lincomb::LinComb;
use crate::scalar::{binomial, from_bigint, int, Scalar};

pub type TExp = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoly<K: Ord> {
    vars: usize,
    terms: LinComb<(TExp, K)>,
}

impl<K: Ord + Clone> TPoly<K> {
    pub fn zero(vars: usize) -> Self {
        TPoly { vars, terms: LinComb::new() }
    }

    /// A t-independent payload.
    pub fn constant(vars: usize, payload: &LinComb<K>) -> Self {
        let mut out = Self::zero(vars);
        for (k, c) in payload {
            out.terms.add_term((vec![0; vars], k.clone()), c.clone());
        }
        out
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &LinComb<(TExp, K)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add_term(&mut self, exp: TExp, key: K, c: Scalar) {
        debug_assert_eq!(exp.len(), self.vars);
        self.terms.add_term((exp, key), c);
    }

    /// Adds `c · t_var^m (1 - t_var)^n · key`, expanding the binomial.
    pub fn add_beta_term(&mut self, var: usize, m: u32, n: u32, key: &K, c: &Scalar) {
        for (j, w) in one_minus_power(n) {
            let mut exp = vec![0; self.vars];
            exp[var] = m + j;
            self.terms.add_term((exp, key.clone()), c * w);
        }
    }

    pub fn add_assign(&mut self, other: &TPoly<K>) {
        self.terms.add_assign(&other.terms);
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        TPoly { vars: self.vars, terms: self.terms.scaled(c) }
    }

    /// Multiply by `t_var^m`.
    pub fn shift(&self, var: usize, m: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((e, k), c)| {
                let mut e = e.clone();
                e[var] += m;
                ((e, k.clone()), c.clone())
            })
            .collect();
        TPoly { vars: self.vars, terms }
    }

    /// Formal derivative in `t_var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for ((e, k), c) in self.terms.iter() {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.terms.add_term((e2, k.clone()), c * int(e[var] as i64));
        }
        out
    }

    /// Apply a linear map to the payload, keeping the t-dependence.
    pub fn map_payload<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2>) -> TPoly<K2> {
        let mut out = TPoly::zero(self.vars);
        for ((e, k), c) in self.terms.iter() {
            for (k2, c2) in &f(k) {
                out.terms.add_term((e.clone(), k2.clone()), c * c2);
            }
        }
        out
    }

    /// Product of two t-polynomials in the same variables, with a bilinear
    /// payload product returning an optional signed key.
    pub fn product<K2: Ord + Clone, K3: Ord + Clone>(
        &self,
        other: &TPoly<K2>,
        mut f: impl FnMut(&K, &K2) -> Option<(i64, K3)>,
    ) -> TPoly<K3> {
        assert_eq!(self.vars, other.vars);
        let mut out = TPoly::zero(self.vars);
        for ((e1, k1), c1) in self.terms.iter() {
            for ((e2, k2), c2) in other.terms.iter() {
                if let Some((sign, k3)) = f(k1, k2) {
                    let e: TExp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                    out.terms.add_term((e, k3), c1 * c2 * int(sign));
                }
            }
        }
        out
    }

    /// Re-embed into a larger variable set, placing the variables at `offset`.
    pub fn widen(&self, vars: usize, offset: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((e, k), c)| {
                let mut w = vec![0; vars];
                w[offset..offset + e.len()].copy_from_slice(e);
                ((w, k.clone()), c.clone())
            })
            .collect();
        TPoly { vars, terms }
    }

    /// Exact integral over `1 ≥ t_1 ≥ … ≥ t_m ≥ 0`.
    pub fn simplex_integrate(&self) -> LinComb<K> {
        let mut out = LinComb::new();
        for ((e, k), c) in self.terms.iter() {
            out.add_term(k.clone(), c * simplex_monomial_integral(e));
        }
        out
    }

    /// Evaluate the t-dependence at a point, leaving the payload.
    pub fn evaluate(&self, point: &[Scalar]) -> LinComb<K> {
        let mut out = LinComb::new();
        for ((e, k), c) in self.terms.iter() {
            let mut v = c.clone();
            for (t, &p) in point.iter().zip(e) {
                for _ in 0..p {
                    v *= t;
                }
            }
            out.add_term(k.clone(), v);
        }
        out
    }
}

/// Coefficients of `(1 - t)^n = Σ_j C(n,j) (-1)^j t^j`.
pub fn one_minus_power(n: u32) -> Vec<(u32, Scalar)> {
    (0..=n)
        .map(|j| {
            let c = from_bigint(binomial(n as usize, j as usize));
            (j, if j % 2 == 0 { c } else { -c })
        })
        .collect()
}

/// `∫_0^1 dt_1 ∫_0^{t_1} dt_2 … ∫_0^{t_{m-1}} dt_m  Π t_s^{e_s}`.
///
/// Integrating the innermost variable turns `t_m^{e_m}` into
/// `t_{m-1}^{e_m+1}/(e_m+1)`, which then joins the next exponent.
pub fn simplex_monomial_integral(exp: &[u32]) -> Scalar {
    let mut carry: u64 = 0;
    let mut denom = num::BigInt::one();
    for &e in exp.iter().rev() {
        let m = e as u64 + carry;
        denom *= num::BigInt::from(m + 1);
        carry = m + 1;
    }
    if denom.is_zero() {
        return Scalar::zero();
    }
    Scalar::new(num::BigInt::one(), denom)
}
