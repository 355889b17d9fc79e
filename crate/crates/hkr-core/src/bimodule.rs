//! Bimodules over the polynomial algebra. Every module element is a sparse
//! combination over a basis key; the actions are given on basis data and
//! extended bilinearly.

use std::fmt::Debug;
use std::hash::Hash;

use num::Zero;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::Scalar;
use crate::sym::{Monomial, SymElement};

pub trait Bimodule: Send + Sync {
    type Key: Ord + Clone + Debug + Hash + Send + Sync + 'static;

    fn dim(&self) -> usize;

    /// `x^a *_L m` on a basis element.
    fn left_basis(&self, a: &Monomial, m: &Self::Key) -> LinComb<Self::Key>;

    /// `m *_R x^a` on a basis element.
    fn right_basis(&self, m: &Self::Key, a: &Monomial) -> LinComb<Self::Key>;

    /// Whether left and right actions agree.
    fn is_symmetric(&self) -> bool;

    fn left(&self, a: &Monomial, m: &LinComb<Self::Key>) -> LinComb<Self::Key> {
        if a.is_one() {
            return m.clone();
        }
        m.map_linear(|k| self.left_basis(a, k))
    }

    fn right(&self, m: &LinComb<Self::Key>, a: &Monomial) -> LinComb<Self::Key> {
        if a.is_one() {
            return m.clone();
        }
        m.map_linear(|k| self.right_basis(k, a))
    }

    fn left_sym(&self, a: &SymElement, m: &LinComb<Self::Key>) -> LinComb<Self::Key> {
        let mut out = LinComb::new();
        for (x, c) in a.terms() {
            out.add_scaled(&self.left(x, m), c);
        }
        out
    }

    fn right_sym(&self, m: &LinComb<Self::Key>, a: &SymElement) -> LinComb<Self::Key> {
        let mut out = LinComb::new();
        for (x, c) in a.terms() {
            out.add_scaled(&self.right(m, x), c);
        }
        out
    }

    /// `(a⊗b) *_e m = a *_L (m *_R b)`.
    fn enveloping(&self, a: &Monomial, b: &Monomial, m: &LinComb<Self::Key>) -> LinComb<Self::Key> {
        self.left(a, &self.right(m, b))
    }
}

pub type ModElem<B> = LinComb<<B as Bimodule>::Key>;

/// The algebra itself, acting by multiplication on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymBimodule {
    dim: usize,
}

impl SymBimodule {
    pub fn new(dim: usize) -> Self {
        SymBimodule { dim }
    }

    pub fn element(&self, m: &LinComb<Monomial>) -> SymElement {
        SymElement::from_terms_unchecked(self.dim, m.clone())
    }
}

impl Bimodule for SymBimodule {
    type Key = Monomial;

    fn dim(&self) -> usize {
        self.dim
    }

    fn left_basis(&self, a: &Monomial, m: &Monomial) -> LinComb<Monomial> {
        LinComb::single(a.mul(m), num::One::one())
    }

    fn right_basis(&self, m: &Monomial, a: &Monomial) -> LinComb<Monomial> {
        LinComb::single(m.mul(a), num::One::one())
    }

    fn is_symmetric(&self) -> bool {
        true
    }
}

pub type Matrix = Vec<Vec<Scalar>>;

/// A finite-dimensional bimodule `Q^r` given by action tables: one matrix
/// per variable for each side. The matrices of one side must commute among
/// themselves and with every matrix of the other side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixBimodule {
    dim: usize,
    rank: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

impl MatrixBimodule {
    pub fn new(dim: usize, rank: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Self> {
        if left.len() != dim || right.len() != dim {
            return Err(Error::InvalidBimodule(format!("need {dim} matrices per side")));
        }
        for m in left.iter().chain(&right) {
            if m.len() != rank || m.iter().any(|row| row.len() != rank) {
                return Err(Error::InvalidBimodule(format!("matrices must be {rank}x{rank}")));
            }
        }
        let all: Vec<(&str, usize, &Matrix)> = left
            .iter()
            .enumerate()
            .map(|(i, m)| ("left", i, m))
            .chain(right.iter().enumerate().map(|(i, m)| ("right", i, m)))
            .collect();
        for (p, (sa, ia, a)) in all.iter().enumerate() {
            for (sb, ib, b) in &all[p + 1..] {
                if mat_mul(a, b) != mat_mul(b, a) {
                    return Err(Error::InvalidBimodule(format!(
                        "{sa} action of x{} and {sb} action of x{} do not commute",
                        ia + 1,
                        ib + 1
                    )));
                }
            }
        }
        Ok(MatrixBimodule { dim, rank, left, right })
    }

    /// Rank-one module where `x_i` acts by `λ_i` on the left and `μ_i` on
    /// the right.
    pub fn character(left: Vec<Scalar>, right: Vec<Scalar>) -> Result<Self> {
        let dim = left.len();
        let wrap = |v: Vec<Scalar>| v.into_iter().map(|c| vec![vec![c]]).collect();
        MatrixBimodule::new(dim, 1, wrap(left), wrap(right))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn apply(&self, mats: &[Matrix], a: &Monomial, j: usize) -> LinComb<usize> {
        let mut v: Vec<Scalar> = (0..self.rank).map(|i| if i == j { num::One::one() } else { Scalar::zero() }).collect();
        for (i, &e) in a.exponents().iter().enumerate() {
            for _ in 0..e {
                v = (0..self.rank)
                    .map(|r| (0..self.rank).map(|c| &mats[i][r][c] * &v[c]).sum())
                    .collect();
            }
        }
        v.into_iter().enumerate().collect()
    }
}

impl Bimodule for MatrixBimodule {
    type Key = usize;

    fn dim(&self) -> usize {
        self.dim
    }

    fn left_basis(&self, a: &Monomial, m: &usize) -> LinComb<usize> {
        self.apply(&self.left, a, *m)
    }

    fn right_basis(&self, m: &usize, a: &Monomial) -> LinComb<usize> {
        self.apply(&self.right, a, *m)
    }

    fn is_symmetric(&self) -> bool {
        self.left == self.right
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn sym_module_is_multiplication() {
        let m = SymBimodule::new(2);
        let x = Monomial::var(2, 0);
        let y = Monomial::var(2, 1);
        let v = LinComb::single(y.clone(), int(2));
        assert_eq!(m.left(&x, &v), LinComb::single(x.mul(&y), int(2)));
        assert_eq!(m.right(&v, &x), m.left(&x, &v));
    }

    #[test]
    fn character_module_actions() {
        let m = MatrixBimodule::character(vec![int(2), int(3)], vec![int(5), int(7)]).unwrap();
        let a = Monomial::new(vec![1, 1]);
        let v = LinComb::single(0usize, int(1));
        assert_eq!(m.left(&a, &v), LinComb::single(0, int(6)));
        assert_eq!(m.right(&v, &a), LinComb::single(0, int(35)));
        assert!(!m.is_symmetric());
    }

    #[test]
    fn non_commuting_tables_rejected() {
        let e12 = vec![vec![int(0), int(1)], vec![int(0), int(0)]];
        let e21 = vec![vec![int(0), int(0)], vec![int(1), int(0)]];
        let zero = vec![vec![int(0), int(0)], vec![int(0), int(0)]];
        assert!(MatrixBimodule::new(1, 2, vec![e12.clone()], vec![e21]).is_err());
        assert!(MatrixBimodule::new(1, 2, vec![e12], vec![zero]).is_ok());
    }

    #[test]
    fn bimodule_laws_on_jordan_block() {
        let j = vec![vec![int(1), int(1)], vec![int(0), int(1)]];
        let m = MatrixBimodule::new(1, 2, vec![j.clone()], vec![j]).unwrap();
        let v: LinComb<usize> = [(0, int(1)), (1, int(-2))].into_iter().collect();
        let a = Monomial::new(vec![2]);
        let b = Monomial::new(vec![3]);
        assert_eq!(m.left(&a, &m.left(&b, &v)), m.left(&a.mul(&b), &v));
        assert_eq!(m.right(&m.right(&v, &a), &b), m.right(&v, &a.mul(&b)));
        assert_eq!(m.left(&a, &m.right(&v, &b)), m.right(&m.left(&a, &v), &b));
    }
}
