use nalgebra::DVector;
use num_complex::Complex;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use super::linalg::{cplx, hermitian_part, CMatrix, CVector};
use super::{DensityMatrix, OrthonormalBasis, ProbDist};
use crate::rng::stream_rng;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    /// Uniform (Haar) pure state.
    HaarStatePure,
    /// Hilbert–Schmidt random mixed state, `G G† / tr(G G†)` for Ginibre `G`.
    HaarStateMixed,
    /// Columns of a Haar-random unitary.
    HaarUnitaryBasis,
    /// Uniform point on the probability simplex.
    Simplex,
}

#[derive(Debug, Clone)]
pub enum Sample<T: Real> {
    State(DensityMatrix<T>),
    Basis(OrthonormalBasis<T>),
    Dist(ProbDist<T>),
}

/// Draws one object of `kind` from stream 0 of `seed`. Panics if `dim < 2`.
pub fn sample<T: Real>(kind: SampleKind, dim: usize, seed: u64) -> Sample<T> {
    assert!(dim >= 2, "sample dimension must be at least 2");
    let mut rng = stream_rng(seed, 0);
    match kind {
        SampleKind::HaarStatePure => Sample::State(haar_pure_state(&mut rng, dim)),
        SampleKind::HaarStateMixed => Sample::State(hilbert_schmidt_state(&mut rng, dim)),
        SampleKind::HaarUnitaryBasis => Sample::Basis(haar_unitary(&mut rng, dim)),
        SampleKind::Simplex => Sample::Dist(uniform_simplex(&mut rng, dim)),
    }
}

fn gaussian_complex<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

fn ginibre<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix<T> {
    // column-major fill keeps the draw order fixed
    let mut m = CMatrix::zeros(dim, dim);
    for j in 0..dim {
        for i in 0..dim {
            m[(i, j)] = gaussian_complex(rng);
        }
    }
    m
}

/// Haar unitary: QR of a Ginibre matrix with the phases of `diag(R)` moved into `Q`.
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> OrthonormalBasis<T> {
    let qr = ginibre::<T, R>(rng, dim).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let n = d.norm_sqr().sqrt();
        let phase = if n > T::zero() { d / cplx(n) } else { cplx(T::one()) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    OrthonormalBasis { columns: q }
}

/// Normalized complex Gaussian vector.
pub fn haar_pure_state<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix<T> {
    let mut ket: CVector<T> = DVector::from_fn(dim, |_, _| gaussian_complex(rng));
    let norm = ket.norm();
    ket /= cplx(norm);
    // complete the ket to an orthonormal frame so the spectral form is exact
    let mut evecs = CMatrix::identity(dim, dim);
    evecs.set_column(0, &ket);
    let mut evecs = evecs.qr().q();
    evecs.set_column(0, &ket);
    let mut values = DVector::zeros(dim);
    values[0] = T::one();
    DensityMatrix::from_spectral_unchecked(values, evecs)
}

/// Hilbert–Schmidt random mixed state.
pub fn hilbert_schmidt_state<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix<T> {
    let g = ginibre::<T, R>(rng, dim);
    let w = hermitian_part(&(&g * g.adjoint()));
    let tr = super::linalg::trace(&w).re;
    DensityMatrix::new(w * cplx(T::one() / tr)).expect("Wishart matrix is a valid state")
}

/// Dirichlet(1, …, 1) via normalized exponentials.
pub fn uniform_simplex<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ProbDist<T> {
    let w: Vec<T> = (0..dim).map(|_| T::lit(rng.sample::<f64, _>(Exp1))).collect();
    ProbDist::from_weights(&w).expect("exponential weights are positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::linalg::gram_deviation;

    #[test]
    fn pure_states_are_pure() {
        for seed in 0..20 {
            for d in 2..6 {
                let Sample::State(rho) = sample::<f64>(SampleKind::HaarStatePure, d, seed) else { unreachable!() };
                assert!((rho.purity() - 1.0).abs() < 1e-10);
                assert!((rho.entries().trace().re - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unitary_columns_orthonormal() {
        for seed in 0..20 {
            let Sample::Basis(b) = sample::<f64>(SampleKind::HaarUnitaryBasis, 4, seed) else { unreachable!() };
            assert!(gram_deviation(b.columns()) < 1e-12);
        }
    }

    #[test]
    fn mixed_states_valid() {
        let Sample::State(rho) = sample::<f64>(SampleKind::HaarStateMixed, 3, 9) else { unreachable!() };
        assert!(rho.purity() < 1.0 && rho.purity() >= 1.0 / 3.0 - 1e-12);
    }

    #[test]
    fn deterministic_in_seed() {
        let Sample::Basis(a) = sample::<f64>(SampleKind::HaarUnitaryBasis, 3, 11) else { unreachable!() };
        let Sample::Basis(b) = sample::<f64>(SampleKind::HaarUnitaryBasis, 3, 11) else { unreachable!() };
        assert_eq!(a.columns(), b.columns());
        let Sample::Dist(p) = sample::<f64>(SampleKind::Simplex, 5, 3) else { unreachable!() };
        let Sample::Dist(q) = sample::<f64>(SampleKind::Simplex, 5, 3) else { unreachable!() };
        assert_eq!(p, q);
    }

    #[test]
    fn binary_simplex_is_uniform() {
        let mut rng = stream_rng(2024, 0);
        let n = 100_000;
        let mean = (0..n).map(|_| uniform_simplex::<f64, _>(&mut rng, 2)[0]).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.005, "mean {mean}");
    }
}
