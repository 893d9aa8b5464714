//! Coefficient algebras for the Magnus terms.
//!
//! Both Magnus paths only need linear combinations and commutators, so they
//! are written against [`LieAlgebra`]. [`DenseAlgebra`] works on explicit
//! matrices. [`GeneratorAlgebra`] works on formal combinations of nested
//! commutators of a fixed generator set and only touches matrices when a
//! result is evaluated; every nested commutator matrix is computed once and
//! cached. For a transverse field Ising step every coefficient lies in the
//! span of the driver, the Ising diagonal and the offsets, so one cache serves
//! every step of a simulation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_complex::Complex64;

use crate::linalg::{add_scaled, commutator, CMatrix};

pub trait LieAlgebra {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;

    /// `y += alpha * x`
    fn axpy(&self, y: &mut Self::Elem, alpha: Complex64, x: &Self::Elem);

    /// `[a, b] = ab - ba`
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn scaled(&self, alpha: Complex64, x: &Self::Elem) -> Self::Elem {
        let mut y = self.zero();
        self.axpy(&mut y, alpha, x);
        y
    }
}

/// Square complex matrices of a fixed dimension.
#[derive(Debug, Clone, Copy)]
pub struct DenseAlgebra {
    pub dim: usize,
}

impl LieAlgebra for DenseAlgebra {
    type Elem = CMatrix;

    fn zero(&self) -> CMatrix {
        CMatrix::zeros(self.dim, self.dim)
    }

    fn axpy(&self, y: &mut CMatrix, alpha: Complex64, x: &CMatrix) {
        add_scaled(y, alpha, x);
    }

    fn commutator(&self, a: &CMatrix, b: &CMatrix) -> CMatrix {
        commutator(a, b)
    }
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Generator,
    Bracket(u32, u32),
}

/// Formal linear combination of interned commutator trees, sorted by tree id.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LieCombination {
    terms: Vec<(u32, Complex64)>,
}

impl LieCombination {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub struct GeneratorAlgebra {
    dim: usize,
    nodes: RefCell<Vec<Node>>,
    brackets: RefCell<BTreeMap<(u32, u32), u32>>,
    matrices: RefCell<Vec<Option<CMatrix>>>,
}

impl GeneratorAlgebra {
    /// All generators must be square matrices of the same dimension.
    pub fn new(generators: Vec<CMatrix>) -> Self {
        let dim = generators.first().map_or(0, |g| g.nrows());
        assert!(
            generators
                .iter()
                .all(|g| g.nrows() == dim && g.ncols() == dim),
            "generators must share one square shape"
        );
        let nodes = generators.iter().map(|_| Node::Generator).collect();
        GeneratorAlgebra {
            dim,
            nodes: RefCell::new(nodes),
            brackets: RefCell::new(BTreeMap::new()),
            matrices: RefCell::new(generators.into_iter().map(Some).collect()),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self, k: usize) -> LieCombination {
        assert!(k < self.n_generators());
        LieCombination {
            terms: alloc::vec![(k as u32, Complex64::new(1.0, 0.0))],
        }
    }

    pub fn n_generators(&self) -> usize {
        self.nodes
            .borrow()
            .iter()
            .filter(|n| matches!(n, Node::Generator))
            .count()
    }

    /// Number of distinct trees interned so far.
    pub fn n_trees(&self) -> usize {
        self.nodes.borrow().len()
    }

    fn bracket_id(&self, lo: u32, hi: u32) -> u32 {
        if let Some(&id) = self.brackets.borrow().get(&(lo, hi)) {
            return id;
        }
        let mut nodes = self.nodes.borrow_mut();
        let id = nodes.len() as u32;
        nodes.push(Node::Bracket(lo, hi));
        self.matrices.borrow_mut().push(None);
        self.brackets.borrow_mut().insert((lo, hi), id);
        id
    }

    fn ensure(&self, id: u32) {
        if self.matrices.borrow()[id as usize].is_some() {
            return;
        }
        let node = self.nodes.borrow()[id as usize];
        if let Node::Bracket(l, r) = node {
            self.ensure(l);
            self.ensure(r);
            let m = {
                let mats = self.matrices.borrow();
                commutator(
                    mats[l as usize].as_ref().unwrap(),
                    mats[r as usize].as_ref().unwrap(),
                )
            };
            self.matrices.borrow_mut()[id as usize] = Some(m);
        }
    }

    /// Dense matrix of a combination.
    pub fn evaluate(&self, x: &LieCombination) -> CMatrix {
        for &(id, _) in &x.terms {
            self.ensure(id);
        }
        let mats = self.matrices.borrow();
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for &(id, coeff) in &x.terms {
            add_scaled(&mut out, coeff, mats[id as usize].as_ref().unwrap());
        }
        out
    }
}

impl LieAlgebra for GeneratorAlgebra {
    type Elem = LieCombination;

    fn zero(&self) -> LieCombination {
        LieCombination::default()
    }

    fn axpy(&self, y: &mut LieCombination, alpha: Complex64, x: &LieCombination) {
        if alpha == Complex64::new(0.0, 0.0) || x.terms.is_empty() {
            return;
        }
        let mut merged = Vec::with_capacity(y.terms.len() + x.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < y.terms.len() || j < x.terms.len() {
            let take_y = j == x.terms.len() || (i < y.terms.len() && y.terms[i].0 < x.terms[j].0);
            let take_x = i == y.terms.len() || (j < x.terms.len() && x.terms[j].0 < y.terms[i].0);
            if take_y {
                merged.push(y.terms[i]);
                i += 1;
            } else if take_x {
                merged.push((x.terms[j].0, alpha * x.terms[j].1));
                j += 1;
            } else {
                merged.push((y.terms[i].0, y.terms[i].1 + alpha * x.terms[j].1));
                i += 1;
                j += 1;
            }
        }
        y.terms = merged;
    }

    fn commutator(&self, a: &LieCombination, b: &LieCombination) -> LieCombination {
        let mut acc: BTreeMap<u32, Complex64> = BTreeMap::new();
        for &(ta, ca) in &a.terms {
            for &(tb, cb) in &b.terms {
                if ta == tb {
                    continue;
                }
                let (id, w) = if ta < tb {
                    (self.bracket_id(ta, tb), ca * cb)
                } else {
                    (self.bracket_id(tb, ta), -(ca * cb))
                };
                *acc.entry(id).or_default() += w;
            }
        }
        LieCombination {
            terms: acc.into_iter().collect(),
        }
    }
}

/// Polynomial `sum_m coeffs[m] u^m` with coefficients in some algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<E> {
    pub coeffs: Vec<E>,
}

impl<E> Polynomial<E> {
    pub fn new(coeffs: Vec<E>) -> Self {
        Polynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Antiderivative vanishing at `u = 0`.
pub(crate) fn integrate<L: LieAlgebra>(alg: &L, p: &Polynomial<L::Elem>) -> Polynomial<L::Elem> {
    let mut coeffs = Vec::with_capacity(p.coeffs.len() + 1);
    coeffs.push(alg.zero());
    for (m, c) in p.coeffs.iter().enumerate() {
        coeffs.push(alg.scaled(Complex64::new(1.0 / (m as f64 + 1.0), 0.0), c));
    }
    Polynomial { coeffs }
}

/// Pointwise commutator `[p(u), q(u)]`.
pub(crate) fn commutator_poly<L: LieAlgebra>(
    alg: &L,
    p: &Polynomial<L::Elem>,
    q: &Polynomial<L::Elem>,
) -> Polynomial<L::Elem> {
    if p.coeffs.is_empty() || q.coeffs.is_empty() {
        return Polynomial { coeffs: Vec::new() };
    }
    let mut coeffs: Vec<L::Elem> = (0..p.coeffs.len() + q.coeffs.len() - 1)
        .map(|_| alg.zero())
        .collect();
    let one = Complex64::new(1.0, 0.0);
    for (a, pa) in p.coeffs.iter().enumerate() {
        for (b, qb) in q.coeffs.iter().enumerate() {
            let c = alg.commutator(pa, qb);
            alg.axpy(&mut coeffs[a + b], one, &c);
        }
    }
    Polynomial { coeffs }
}

pub(crate) fn axpy_poly<L: LieAlgebra>(
    alg: &L,
    y: &mut Polynomial<L::Elem>,
    alpha: Complex64,
    x: &Polynomial<L::Elem>,
) {
    while y.coeffs.len() < x.coeffs.len() {
        y.coeffs.push(alg.zero());
    }
    for (yc, xc) in y.coeffs.iter_mut().zip(&x.coeffs) {
        alg.axpy(yc, alpha, xc);
    }
}

/// Value at `u = 1`.
pub(crate) fn value_at_one<L: LieAlgebra>(alg: &L, p: &Polynomial<L::Elem>) -> L::Elem {
    let mut out = alg.zero();
    for c in &p.coeffs {
        alg.axpy(&mut out, Complex64::new(1.0, 0.0), c);
    }
    out
}
