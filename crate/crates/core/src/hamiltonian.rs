//! Ising models, the transverse driver and assembly of `H(s)`.
//!
//! The Ising part is diagonal in the computational basis and is only ever
//! stored as its diagonal. Dense matrices appear when `H(s)` is assembled.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use nalgebra::DMatrix;

use crate::encoding::{int_to_spin, spin_of, SpinVector, StateIndex};
use crate::error::{Error, Result};
use crate::linalg::{c, eigvalsh_real, hermitian_deviation, CMatrix};
use crate::schedule::AnnealingSchedule;

/// Largest system the dense propagator accepts.
pub const MAX_QUBITS: usize = 16;

/// An Ising term: a longitudinal field on one qubit or a coupling between two.
/// Indices are 1-based; couplings are stored with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Field(usize),
    Coupling(usize, usize),
}

impl Term {
    pub fn coupling(i: usize, j: usize) -> Term {
        Term::Coupling(i.min(j), i.max(j))
    }

    /// Builds a term from an index tuple of length 1 or 2.
    pub fn from_indices(indices: &[usize]) -> Result<Term> {
        match *indices {
            [i] => Ok(Term::Field(i)),
            [i, j] => Ok(Term::coupling(i, j)),
            _ => Err(Error::InvalidConfig("terms act on one or two qubits")),
        }
    }

    pub fn max_index(self) -> usize {
        match self {
            Term::Field(i) => i,
            Term::Coupling(i, j) => i.max(j),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Field(i) => write!(f, "({i},)"),
            Term::Coupling(i, j) => write!(f, "({i},{j})"),
        }
    }
}

/// `sum_i h_i Z_i + sum_ij J_ij Z_i Z_j`
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IsingModel {
    n_qubits: usize,
    terms: BTreeMap<Term, f64>,
}

impl IsingModel {
    /// An empty model on `n_qubits` qubits.
    pub fn new(n_qubits: usize) -> Self {
        IsingModel {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    /// Qubit count is the largest index that appears.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Term, f64)>,
    {
        let mut model = IsingModel::new(0);
        for (term, coeff) in terms {
            model.insert(term, coeff)?;
        }
        Ok(model)
    }

    /// Adds a term, growing the qubit count if needed. Both orientations of a
    /// coupling name the same term, so `(2,1)` after `(1,2)` is a duplicate.
    pub fn insert(&mut self, term: Term, coeff: f64) -> Result<()> {
        let term = match term {
            Term::Field(0) | Term::Coupling(0, _) | Term::Coupling(_, 0) => {
                return Err(Error::QubitIndexZero)
            }
            Term::Coupling(i, j) if i == j => return Err(Error::SelfCoupling(i)),
            Term::Coupling(i, j) => Term::coupling(i, j),
            t => t,
        };
        if !coeff.is_finite() {
            return Err(Error::NonFiniteCoefficient(format!("{term}")));
        }
        if self.terms.contains_key(&term) {
            return Err(Error::DuplicateTerm(format!("{term}")));
        }
        self.n_qubits = self.n_qubits.max(term.max_index());
        self.terms.insert(term, coeff);
        Ok(())
    }

    /// Overrides the qubit count; it may not drop below the largest index used.
    pub fn with_n_qubits(mut self, n: usize) -> Result<Self> {
        let needed = self.terms.keys().map(|t| t.max_index()).max().unwrap_or(0);
        if n < needed {
            return Err(Error::QubitOutOfRange {
                index: needed,
                n_qubits: n,
            });
        }
        self.n_qubits = n;
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &BTreeMap<Term, f64> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_fields(&self) -> bool {
        self.terms.keys().any(|t| matches!(t, Term::Field(_)))
    }

    /// Classical energy of a spin configuration.
    pub fn energy(&self, spins: &SpinVector) -> Result<f64> {
        if spins.len() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: spins.len(),
            });
        }
        let s = spins.spins();
        Ok(self
            .terms
            .iter()
            .map(|(term, &w)| match *term {
                Term::Field(i) => w * s[i - 1] as f64,
                Term::Coupling(i, j) => w * (s[i - 1] * s[j - 1]) as f64,
            })
            .sum())
    }

    /// The five-spin frustrated ring used throughout the examples: eight
    /// unit couplings with mixed signs and no local fields.
    pub fn five_spin_benchmark() -> Self {
        let couplings = [
            ((1, 2), -1.0),
            ((1, 3), -1.0),
            ((1, 4), 1.0),
            ((2, 3), -1.0),
            ((2, 5), 1.0),
            ((3, 4), -1.0),
            ((3, 5), -1.0),
            ((4, 5), -1.0),
        ];
        IsingModel::from_terms(
            couplings
                .iter()
                .map(|&((i, j), w)| (Term::Coupling(i, j), w)),
        )
        .expect("benchmark model is valid")
    }
}

/// Constant per-qubit `X` and `Z` field offsets added to `H(s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldOffsets {
    x: Vec<f64>,
    z: Vec<f64>,
}

impl FieldOffsets {
    pub fn new(x: Vec<f64>, z: Vec<f64>) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::OffsetLength {
                which: 'z',
                expected: x.len(),
                found: z.len(),
            });
        }
        if x.iter().chain(z.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteCoefficient(String::from("field offset")));
        }
        Ok(FieldOffsets { x, z })
    }

    pub fn zeros(n: usize) -> Self {
        FieldOffsets {
            x: vec![0.0; n],
            z: vec![0.0; n],
        }
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(self.z.iter()).all(|&v| v == 0.0)
    }

    pub(crate) fn check(&self, n: usize) -> Result<()> {
        if self.x.len() != n {
            return Err(Error::OffsetLength {
                which: 'x',
                expected: n,
                found: self.x.len(),
            });
        }
        Ok(())
    }
}

/// Dense Hermitian operator on `2^n` amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator(CMatrix);

impl HermitianOperator {
    pub fn new(m: CMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        let dev = hermitian_deviation(&m);
        if dev > tol {
            return Err(Error::InvalidConfig("operator is not Hermitian"));
        }
        Ok(HermitianOperator(m))
    }

    pub(crate) fn new_unchecked(m: CMatrix) -> Self {
        HermitianOperator(m)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        crate::linalg::eigvalsh(self.0.clone())
    }
}

pub(crate) fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::NoQubits);
    }
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
    }
    Ok(())
}

/// Diagonal of the Ising Hamiltonian, indexed by basis state.
pub fn ising_diagonal(model: &IsingModel) -> Result<Vec<f64>> {
    let n = model.n_qubits();
    check_size(n)?;
    let dim = 1usize << n;
    let mut diag = vec![0.0; dim];
    for (term, &w) in model.terms() {
        match *term {
            Term::Field(i) => {
                for (v, d) in diag.iter_mut().enumerate() {
                    *d += w * spin_of(v, i - 1);
                }
            }
            Term::Coupling(i, j) => {
                for (v, d) in diag.iter_mut().enumerate() {
                    *d += w * spin_of(v, i - 1) * spin_of(v, j - 1);
                }
            }
        }
    }
    Ok(diag)
}

/// `sum_i X_i` as a dense real matrix.
pub fn transverse_matrix_real(n: usize) -> Result<DMatrix<f64>> {
    check_size(n)?;
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    for v in 0..dim {
        for k in 0..n {
            m[(v ^ (1 << k), v)] = 1.0;
        }
    }
    Ok(m)
}

pub fn transverse_matrix(n: usize) -> Result<HermitianOperator> {
    Ok(HermitianOperator(transverse_matrix_real(n)?.map(c)))
}

/// Dense matrix of `sum_i (dx_i X_i + dz_i Z_i)`.
pub fn offset_matrix(offsets: &FieldOffsets) -> Result<DMatrix<f64>> {
    let n = offsets.len();
    check_size(n)?;
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    for v in 0..dim {
        for k in 0..n {
            m[(v ^ (1 << k), v)] += offsets.x[k];
            m[(v, v)] += offsets.z[k] * spin_of(v, k);
        }
    }
    Ok(m)
}

fn check_s(s: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfDomain(s));
    }
    Ok(())
}

fn real_hamiltonian(
    model: &IsingModel,
    schedule: &AnnealingSchedule,
    s: f64,
    offsets: Option<&FieldOffsets>,
) -> Result<DMatrix<f64>> {
    check_s(s)?;
    let n = model.n_qubits();
    let mut h = transverse_matrix_real(n)? * (schedule.driver_sign().value() * schedule.a(s));
    let b = schedule.b(s);
    for (v, e) in ising_diagonal(model)?.into_iter().enumerate() {
        h[(v, v)] += b * e;
    }
    if let Some(off) = offsets {
        off.check(n)?;
        h += offset_matrix(off)?;
    }
    Ok(h)
}

/// `sign * A(s) * sum X + B(s) * H_ising + offsets`
pub fn hamiltonian_at(
    model: &IsingModel,
    schedule: &AnnealingSchedule,
    s: f64,
    offsets: Option<&FieldOffsets>,
) -> Result<HermitianOperator> {
    Ok(HermitianOperator(
        real_hamiltonian(model, schedule, s, offsets)?.map(c),
    ))
}

/// Ascending instantaneous eigenvalues of `H(s)` on a grid of `s` values.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub s_grid: Vec<f64>,
    pub levels: Vec<Vec<f64>>,
}

/// Smallest separation between two levels over the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gap {
    pub s: f64,
    pub gap: f64,
}

impl SpectrumResult {
    pub fn min_gap(&self, lower: usize, upper: usize) -> Option<Gap> {
        self.s_grid
            .iter()
            .zip(&self.levels)
            .filter(|(_, lv)| upper < lv.len())
            .map(|(&s, lv)| Gap {
                s,
                gap: lv[upper] - lv[lower],
            })
            .min_by(|a, b| a.gap.total_cmp(&b.gap))
    }
}

pub fn eigenspectrum(
    model: &IsingModel,
    schedule: &AnnealingSchedule,
    s_grid: &[f64],
    offsets: Option<&FieldOffsets>,
) -> Result<SpectrumResult> {
    if s_grid.is_empty() {
        return Err(Error::InvalidConfig("spectrum grid is empty"));
    }
    let levels = s_grid
        .iter()
        .map(|&s| real_hamiltonian(model, schedule, s, offsets).map(eigvalsh_real))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumResult {
        s_grid: s_grid.to_vec(),
        levels,
    })
}

/// Smallest gap between the ground level and the first level above the
/// ground manifold of the final Ising Hamiltonian. With a `g`-fold degenerate
/// Ising ground energy this is `min_gap(0, g)`.
pub fn ground_manifold_gap(model: &IsingModel, spectrum: &SpectrumResult) -> Result<Option<Gap>> {
    let g = brute_force_ground_states(model)?.states.len();
    Ok(spectrum.min_gap(0, g))
}

/// Evenly spaced grid of `count` points on `[0, 1]`.
pub fn unit_grid(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..count).map(|k| k as f64 / (count - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundStates {
    pub energy: f64,
    /// Degenerate minimizers, ordered by basis-state index.
    pub states: Vec<SpinVector>,
}

/// Exhaustive scan of the Ising diagonal. Energies within `1e-9` (relative to
/// the scale of the ground energy) count as degenerate.
pub fn brute_force_ground_states(model: &IsingModel) -> Result<GroundStates> {
    let diag = ising_diagonal(model)?;
    let n = model.n_qubits();
    let energy = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let tol = 1e-9 * energy.abs().max(1.0);
    let states = diag
        .iter()
        .enumerate()
        .filter(|(_, &e)| e - energy <= tol)
        .map(|(v, _)| int_to_spin(StateIndex(v as u64), n))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroundStates { energy, states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{binary_to_spin, int_to_binary};
    use crate::linalg::eigvalsh;
    use crate::schedule::{builtin_schedule, BuiltinSchedule};
    use core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn five_spin_all_up_energy() {
        let h5 = IsingModel::five_spin_benchmark();
        let diag = ising_diagonal(&h5).unwrap();
        assert_eq!(diag[0], -4.0);
        // direct energy evaluation on every configuration
        for v in 0..32u64 {
            let s = binary_to_spin(&int_to_binary(StateIndex(v), 5).unwrap());
            assert_eq!(diag[v as usize], h5.energy(&s).unwrap());
        }
    }

    #[test]
    fn trivial_diagonals() {
        assert_eq!(ising_diagonal(&IsingModel::new(1)).unwrap(), vec![0.0, 0.0]);
        let m = IsingModel::from_terms([(Term::Field(1), 1.0)]).unwrap();
        assert_eq!(ising_diagonal(&m).unwrap(), vec![1.0, -1.0]);
    }

    #[test]
    fn model_validation() {
        let mut m = IsingModel::new(2);
        m.insert(Term::Coupling(1, 2), -1.0).unwrap();
        assert!(matches!(
            m.insert(Term::Coupling(2, 1), 1.0),
            Err(Error::DuplicateTerm(_))
        ));
        assert_eq!(m.insert(Term::Field(0), 1.0), Err(Error::QubitIndexZero));
        assert_eq!(
            m.insert(Term::Coupling(3, 3), 1.0),
            Err(Error::SelfCoupling(3))
        );
        assert!(matches!(
            m.insert(Term::Field(1), f64::NAN),
            Err(Error::NonFiniteCoefficient(_))
        ));
        assert!(m.clone().with_n_qubits(1).is_err());
        assert_eq!(m.with_n_qubits(4).unwrap().n_qubits(), 4);
        assert_eq!(
            ising_diagonal(&IsingModel::new(17)),
            Err(Error::TooManyQubits { n: 17, max: 16 })
        );
        assert_eq!(transverse_matrix(0).unwrap_err(), Error::NoQubits);
    }

    #[test]
    fn transverse_small_cases() {
        let x1 = transverse_matrix_real(1).unwrap();
        assert_eq!(x1, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
        let ev = eigvalsh(transverse_matrix(2).unwrap().into_matrix());
        for (a, b) in ev.iter().zip([-2.0, 0.0, 0.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        let x3 = transverse_matrix_real(3).unwrap();
        for r in 0..8 {
            assert_eq!(x3.row(r).sum(), 3.0);
        }
    }

    #[test]
    fn assembly_endpoints() {
        let h5 = IsingModel::five_spin_benchmark();
        let lin = builtin_schedule(BuiltinSchedule::Linear);
        let h0 = hamiltonian_at(&h5, &lin, 0.0, None).unwrap();
        assert_eq!(h0, transverse_matrix(5).unwrap());
        let h1 = hamiltonian_at(&h5, &lin, 1.0, None).unwrap();
        let diag = ising_diagonal(&h5).unwrap();
        let expected = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            32,
            diag.iter().map(|&d| c(d)),
        ));
        assert_eq!(h1.into_matrix(), expected);
    }

    #[test]
    fn circular_midpoint() {
        let h5 = IsingModel::five_spin_benchmark();
        let circ = builtin_schedule(BuiltinSchedule::Circular);
        let h = hamiltonian_at(&h5, &circ, 0.5, None).unwrap().into_matrix();
        let x = transverse_matrix(5).unwrap().into_matrix();
        let diag = ising_diagonal(&h5).unwrap();
        let mut expected = x.scale(FRAC_1_SQRT_2);
        for v in 0..32 {
            expected[(v, v)] += c(FRAC_1_SQRT_2 * diag[v]);
        }
        assert!(crate::linalg::max_abs(&(h - expected)) < 1e-15);
    }

    #[test]
    fn assembly_rejects_bad_s() {
        let circ = builtin_schedule(BuiltinSchedule::Circular);
        let m = IsingModel::new(1);
        assert_eq!(
            hamiltonian_at(&m, &circ, 1.5, None).unwrap_err(),
            Error::OutOfDomain(1.5)
        );
    }

    #[test]
    fn single_qubit_spectrum() {
        let lin = builtin_schedule(BuiltinSchedule::Linear);
        let spec = eigenspectrum(&IsingModel::new(1), &lin, &[0.0, 1.0], None).unwrap();
        assert!((spec.levels[0][0] + 1.0).abs() < 1e-14);
        assert!((spec.levels[0][1] - 1.0).abs() < 1e-14);
        assert_eq!(spec.levels[1], vec![0.0, 0.0]);
    }

    #[test]
    fn offsets_enter_assembly() {
        let lin = builtin_schedule(BuiltinSchedule::Linear);
        let off = FieldOffsets::new(vec![0.25], vec![-0.5]).unwrap();
        let h = hamiltonian_at(&IsingModel::new(1), &lin, 1.0, Some(&off)).unwrap();
        let m = h.matrix();
        assert_eq!(m[(0, 0)].re, -0.5);
        assert_eq!(m[(1, 1)].re, 0.5);
        assert_eq!(m[(0, 1)].re, 0.25);
        let wrong = FieldOffsets::zeros(3);
        assert!(hamiltonian_at(&IsingModel::new(1), &lin, 0.5, Some(&wrong)).is_err());
    }

    #[test]
    fn ground_state_scan() {
        let m = IsingModel::from_terms([(Term::Field(1), 1.0)]).unwrap();
        let g = brute_force_ground_states(&m).unwrap();
        assert_eq!(g.energy, -1.0);
        assert_eq!(g.states, vec![SpinVector::new(&[-1]).unwrap()]);
        let g = brute_force_ground_states(&IsingModel::new(2)).unwrap();
        assert_eq!(g.energy, 0.0);
        assert_eq!(g.states.len(), 4);
    }

    #[test]
    fn grid() {
        assert_eq!(unit_grid(2), vec![0.0, 1.0]);
        assert_eq!(unit_grid(5)[2], 0.5);
    }
}
