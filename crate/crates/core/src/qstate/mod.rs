//! States, sharp measurements and the statistics of measuring them in sequence.
//!
//! A [`DensityMatrix`] carries its own (clipped) eigen-decomposition, so every
//! matrix function downstream (square roots, fractional powers, logarithms)
//! is a cheap spectral map. An [`OrthonormalBasis`] stores its kets as the
//! columns of a unitary. [`OverlapMatrix`] is oriented rows = first basis,
//! columns = second basis.

mod io;
pub mod linalg;
mod sample;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{LogBase, Real};

pub use io::{BasisFile, StateFile};
pub use linalg::{CMatrix, CVector};
pub use sample::{haar_pure_state, haar_unitary, hilbert_schmidt_state, sample, uniform_simplex, Sample, SampleKind};

use linalg::{cplx, from_spectrum, gram_deviation, hermitian_eigen, max_asymmetry, pseudo_pow};

/// Tolerance for Hermiticity, trace, positivity, orthonormality and
/// normalization checks on inputs.
pub const VALIDATION_TOL: f64 = 1e-8;

/// A d×d Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix<T: Real> {
    entries: CMatrix<T>,
    eigenvalues: DVector<T>,
    eigenvectors: CMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates `entries` and clips the spectrum to `[0, 1]`.
    pub fn new(entries: CMatrix<T>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows < 2 {
            return Err(Error::DimensionTooSmall(rows));
        }
        let tol = T::lit(VALIDATION_TOL);
        let asym = max_asymmetry(&entries);
        if !(asym <= tol) {
            return Err(Error::NotHermitian(asym.as_f64()));
        }
        let herm = linalg::hermitian_part(&entries);
        let tr = linalg::trace(&herm).re;
        if !((tr - T::one()).magnitude() <= tol) {
            return Err(Error::TraceNotOne(tr.as_f64()));
        }
        let (vals, vecs) = hermitian_eigen(&herm);
        let min = vals.iter().copied().fold(T::infinity(), |a, b| if b < a { b } else { a });
        if min < -tol {
            return Err(Error::NotPositive(min.as_f64()));
        }
        let needs_clip = vals.iter().any(|&v| v < T::zero() || v > T::one());
        if needs_clip {
            let clipped = vals.map(|v| v.clamp(T::zero(), T::one()));
            let total: T = clipped.iter().copied().fold(T::zero(), |a, b| a + b);
            let clipped = clipped / total;
            let entries = from_spectrum(&clipped, &vecs);
            Ok(Self { entries, eigenvalues: clipped, eigenvectors: vecs })
        } else {
            let inv = cplx(T::one() / tr);
            Ok(Self { entries: herm * inv, eigenvalues: vals / tr, eigenvectors: vecs })
        }
    }

    /// Builds a state from a spectrum and orthonormal eigenvectors that are
    /// already known to be valid.
    pub(crate) fn from_spectral_unchecked(eigenvalues: DVector<T>, eigenvectors: CMatrix<T>) -> Self {
        let entries = from_spectrum(&eigenvalues, &eigenvectors);
        Self { entries, eigenvalues, eigenvectors }
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) nonzero ket.
    pub fn pure(ket: &CVector<T>) -> Result<Self> {
        let d = ket.len();
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        let norm = ket.norm();
        if !(norm > T::zero()) {
            return Err(Error::InvalidInput("zero ket".into()));
        }
        let unit = ket.map(|z| z / cplx(norm));
        Self::new(&unit * unit.adjoint())
    }

    /// `I / d`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        let w = T::one() / T::lit(dim as f64);
        Ok(Self::from_spectral_unchecked(DVector::from_element(dim, w), CMatrix::identity(dim, dim)))
    }

    /// The state diagonal in `basis` with weights `dist`.
    pub fn diagonal_in(basis: &OrthonormalBasis<T>, dist: &ProbDist<T>) -> Result<Self> {
        check_dims(basis.dim(), dist.dim())?;
        Ok(Self::from_spectral_unchecked(DVector::from_column_slice(dist.probs()), basis.columns().clone()))
    }

    /// `diag(dist)` in the computational basis.
    pub fn diagonal(dist: &ProbDist<T>) -> Result<Self> {
        Self::diagonal_in(&OrthonormalBasis::computational(dist.dim())?, dist)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix<T> {
        &self.entries
    }

    /// Clipped, renormalized spectrum.
    pub fn eigenvalues(&self) -> &DVector<T> {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &CMatrix<T> {
        &self.eigenvectors
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> T {
        self.eigenvalues.iter().fold(T::zero(), |acc, &l| acc + l * l)
    }

    /// `f(ρ)` through the clipped spectrum.
    pub fn apply(&self, f: impl Fn(T) -> T) -> CMatrix<T> {
        from_spectrum(&self.eigenvalues.map(f), &self.eigenvectors)
    }

    /// `ρ^s` on the support (zero eigenvalues stay 0, including `s = 0`).
    pub fn power(&self, s: T) -> CMatrix<T> {
        self.apply(|x| pseudo_pow(x, s))
    }

    pub fn sqrt(&self) -> CMatrix<T> {
        self.power(T::lit(0.5))
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, unitary: &CMatrix<T>) -> Result<Self> {
        check_dims(self.dim(), unitary.nrows())?;
        Ok(Self::from_spectral_unchecked(self.eigenvalues.clone(), unitary * &self.eigenvectors))
    }
}

/// `d` orthonormal kets, stored as the columns of a unitary.
#[derive(Debug, Clone)]
pub struct OrthonormalBasis<T: Real> {
    columns: CMatrix<T>,
}

impl<T: Real> OrthonormalBasis<T> {
    pub fn new(columns: CMatrix<T>) -> Result<Self> {
        let (rows, cols) = columns.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows < 2 {
            return Err(Error::DimensionTooSmall(rows));
        }
        let dev = gram_deviation(&columns);
        if !(dev <= T::lit(VALIDATION_TOL)) {
            return Err(Error::NotOrthonormal(dev.as_f64()));
        }
        Ok(Self { columns })
    }

    /// The computational ("Z") basis.
    pub fn computational(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        Ok(Self { columns: CMatrix::identity(dim, dim) })
    }

    /// Discrete Fourier basis; for `d = 2` this is the X basis `{|+⟩, |−⟩}`.
    pub fn fourier(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        let scale = T::one() / T::lit(dim as f64).sqrt();
        let columns = CMatrix::from_fn(dim, dim, |j, k| {
            let phase = T::two_pi() * T::lit((j * k) as f64) / T::lit(dim as f64);
            Complex::new(phase.cos() * scale, phase.sin() * scale)
        });
        Ok(Self { columns })
    }

    pub fn dim(&self) -> usize {
        self.columns.nrows()
    }

    pub fn columns(&self) -> &CMatrix<T> {
        &self.columns
    }

    pub fn ket(&self, i: usize) -> CVector<T> {
        self.columns.column(i).into_owned()
    }

    /// `|k_i⟩⟨k_i|`.
    pub fn projector(&self, i: usize) -> CMatrix<T> {
        let k = self.columns.column(i);
        k * k.adjoint()
    }
}

/// Doubly stochastic matrix of basis overlaps, `c_ij = |⟨A_i|B_j⟩|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapMatrix<T: Real> {
    entries: DMatrix<T>,
    cmax: T,
}

impl<T: Real> OverlapMatrix<T> {
    /// Validates a doubly stochastic matrix.
    pub fn new(entries: DMatrix<T>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows < 2 {
            return Err(Error::DimensionTooSmall(rows));
        }
        let tol = T::lit(VALIDATION_TOL);
        if entries.iter().any(|&c| !(c >= -tol)) {
            return Err(Error::InvalidInput("overlap matrix has negative entries".into()));
        }
        for i in 0..rows {
            let r = entries.row(i).sum();
            let c = entries.column(i).sum();
            if !((r - T::one()).magnitude() <= tol && (c - T::one()).magnitude() <= tol) {
                return Err(Error::InvalidInput(format!(
                    "overlap matrix is not doubly stochastic at index {i} (row {r}, column {c})"
                )));
            }
        }
        let cmax = max_entry(&entries);
        Ok(Self { entries, cmax })
    }

    /// `c_ij = |⟨a_i|b_j⟩|²`.
    pub fn between(a: &OrthonormalBasis<T>, b: &OrthonormalBasis<T>) -> Result<Self> {
        check_dims(a.dim(), b.dim())?;
        let amps = a.columns().adjoint() * b.columns();
        let entries = amps.map(|z| z.norm_sqr());
        let cmax = max_entry(&entries);
        Ok(Self { entries, cmax })
    }

    /// The qubit overlap `[[c00, 1 − c00], [1 − c00, c00]]`.
    pub fn qubit(c00: T) -> Result<Self> {
        if !(c00 >= T::zero() && c00 <= T::one()) {
            return Err(Error::InvalidInput(format!("c00 = {c00} is outside [0, 1]")));
        }
        let off = T::one() - c00;
        Self::new(DMatrix::from_row_slice(2, 2, &[c00, off, off, c00]))
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new(DMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<T> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[(i, j)]
    }

    /// `c = max_ij c_ij`.
    pub fn cmax(&self) -> T {
        self.cmax
    }

    /// Overlap matrix of the reversed measurement order.
    pub fn transpose(&self) -> Self {
        Self { entries: self.entries.transpose(), cmax: self.cmax }
    }
}

fn max_entry<T: Real>(m: &DMatrix<T>) -> T {
    m.iter().copied().fold(T::zero(), |a, b| if b > a { b } else { a })
}

/// A probability distribution over `d ≥ 2` outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist<T: Real> {
    probs: Vec<T>,
}

impl<T: Real> ProbDist<T> {
    /// Validates: entries in `[0, 1]` and sum 1, both within `VALIDATION_TOL`.
    /// Tiny excursions are clipped and the result renormalized.
    pub fn new(probs: Vec<T>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::DimensionTooSmall(probs.len()));
        }
        let tol = T::lit(VALIDATION_TOL);
        if let Some((i, p)) = probs.iter().enumerate().find(|(_, &p)| !(p >= -tol && p <= T::one() + tol)) {
            return Err(Error::NotNormalized(format!("entry {i} = {p} is outside [0, 1]")));
        }
        let sum: T = probs.iter().copied().fold(T::zero(), |a, b| a + b);
        if !((sum - T::one()).magnitude() <= tol) {
            return Err(Error::NotNormalized(format!("entries sum to {sum}")));
        }
        Ok(Self::clip_normalize(probs))
    }

    fn clip_normalize(probs: Vec<T>) -> Self {
        let clipped: Vec<T> = probs.into_iter().map(|p| p.clamp(T::zero(), T::one())).collect();
        let sum: T = clipped.iter().copied().fold(T::zero(), |a, b| a + b);
        Self { probs: clipped.into_iter().map(|p| p / sum).collect() }
    }

    /// Normalizes nonnegative weights (e.g. counts).
    pub fn from_weights(weights: &[T]) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::DimensionTooSmall(weights.len()));
        }
        if weights.iter().any(|&w| !(w >= T::zero())) {
            return Err(Error::NotNormalized("negative weight".into()));
        }
        let sum: T = weights.iter().copied().fold(T::zero(), |a, b| a + b);
        if !(sum > T::zero()) {
            return Err(Error::NotNormalized("weights sum to zero".into()));
        }
        Ok(Self { probs: weights.iter().map(|&w| w / sum).collect() })
    }

    pub fn uniform(dim: usize) -> Result<Self> {
        Self::from_weights(&vec![T::one(); dim])
    }

    /// Deterministic distribution on outcome `i`.
    pub fn point(dim: usize, i: usize) -> Result<Self> {
        let mut w = vec![T::zero(); dim];
        if i >= dim {
            return Err(Error::InvalidInput(format!("outcome {i} out of range for d = {dim}")));
        }
        w[i] = T::one();
        Self::from_weights(&w)
    }

    /// `(p0, 1 − p0)`.
    pub fn binary(p0: T) -> Result<Self> {
        Self::new(vec![p0, T::one() - p0])
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.probs.iter().zip(&other.probs).fold(T::zero(), |acc, (&a, &b)| {
            let d = (a - b).magnitude();
            if d > acc {
                d
            } else {
                acc
            }
        })
    }
}

impl<T: Real> std::ops::Index<usize> for ProbDist<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.probs[i]
    }
}

/// Which way the overlap matrix is applied in [`sequential_dist`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    /// `q′_j = Σ_i p_i c_ij` (A then B).
    #[default]
    Forward,
    /// `p′_i = Σ_j c_ij q_j` (B then A).
    Dual,
}

pub(crate) fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(a, b))
    }
}

/// Dephasing channel `Σ_i Π_i ρ Π_i`.
pub fn dephase<T: Real>(rho: &DensityMatrix<T>, basis: &OrthonormalBasis<T>) -> Result<DensityMatrix<T>> {
    let p = outcome_dist(rho, basis)?;
    DensityMatrix::diagonal_in(basis, &p)
}

/// `p_i = ⟨k_i|ρ|k_i⟩`.
pub fn outcome_dist<T: Real>(rho: &DensityMatrix<T>, basis: &OrthonormalBasis<T>) -> Result<ProbDist<T>> {
    check_dims(rho.dim(), basis.dim())?;
    let cols = basis.columns();
    let m = rho.entries() * cols;
    let probs: Vec<T> = (0..basis.dim()).map(|i| cols.column(i).dotc(&m.column(i)).re).collect();
    let clipped: Vec<T> = probs.iter().map(|&p| p.clamp(T::zero(), T::one())).collect();
    ProbDist::from_weights(&clipped)
}

/// Outcome statistics of the second measurement after the first has dephased
/// the state (`Forward`), or of the reversed order (`Dual`).
pub fn sequential_dist<T: Real>(
    dist: &ProbDist<T>,
    overlap: &OverlapMatrix<T>,
    direction: Direction,
) -> Result<ProbDist<T>> {
    let d = overlap.dim();
    check_dims(dist.dim(), d)?;
    let c = overlap.entries();
    let out: Vec<T> = (0..d)
        .map(|k| {
            (0..d).fold(T::zero(), |acc, m| {
                let w = match direction {
                    Direction::Forward => c[(m, k)],
                    Direction::Dual => c[(k, m)],
                };
                acc + dist[m] * w
            })
        })
        .collect();
    ProbDist::from_weights(&out)
}

/// Uhlmann fidelity `‖√ρ₁ √ρ₂‖₁`, clipped to `[0, 1]`.
///
/// Singular values avoid the square roots of round-off eigenvalues that the
/// equivalent form `tr √(√ρ₂ ρ₁ √ρ₂)` would take.
pub fn fidelity<T: Real>(rho1: &DensityMatrix<T>, rho2: &DensityMatrix<T>) -> Result<T> {
    check_dims(rho1.dim(), rho2.dim())?;
    let product = rho1.sqrt() * rho2.sqrt();
    let f = product.singular_values().iter().fold(T::zero(), |acc, &s| acc + s);
    Ok(f.clamp(T::zero(), T::one()))
}

/// `−Σ λ log λ` over the clipped spectrum.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>, base: LogBase) -> T {
    let nats = rho.eigenvalues().iter().fold(T::zero(), |acc, &l| {
        if l > T::lit(crate::uncertainty::PROB_FLOOR) {
            acc - l * l.ln()
        } else {
            acc
        }
    });
    base.from_nats(nats).max(T::zero())
}
