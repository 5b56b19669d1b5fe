//! Hermitian eigen-machinery behind every matrix function in the crate.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex;

use crate::scalar::Real;

pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

/// Eigenvalues at or below this magnitude are treated as outside the support.
pub const SUPPORT_TOL: f64 = 1e-12;

#[inline]
pub(crate) fn cplx<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// Eigen-decomposition of a Hermitian matrix (only the lower triangle is read).
pub fn hermitian_eigen<T: Real>(m: &CMatrix<T>) -> (DVector<T>, CMatrix<T>) {
    let eig = SymmetricEigen::new(m.clone());
    (eig.eigenvalues, eig.eigenvectors)
}

/// `V diag(values) V†`.
pub fn from_spectrum<T: Real>(values: &DVector<T>, vectors: &CMatrix<T>) -> CMatrix<T> {
    let d = vectors.nrows();
    let mut scaled = vectors.clone();
    for (k, &v) in values.iter().enumerate() {
        let s = cplx(v);
        for r in 0..d {
            scaled[(r, k)] *= s;
        }
    }
    scaled * vectors.adjoint()
}

/// Applies `f` to the eigenvalues of a Hermitian matrix.
pub fn hermitian_apply<T: Real>(m: &CMatrix<T>, f: impl Fn(T) -> T) -> CMatrix<T> {
    let (vals, vecs) = hermitian_eigen(m);
    from_spectrum(&vals.map(f), &vecs)
}

/// Pseudo-power on the support: eigenvalues `<= SUPPORT_TOL` map to 0.
#[inline]
pub fn pseudo_pow<T: Real>(x: T, s: T) -> T {
    if x <= T::lit(SUPPORT_TOL) {
        T::zero()
    } else if s == T::one() {
        x
    } else {
        x.powf(s)
    }
}

/// Largest `|m_ij - conj(m_ji)|`.
pub fn max_asymmetry<T: Real>(m: &CMatrix<T>) -> T {
    let d = m.nrows();
    let mut worst = T::zero();
    for i in 0..d {
        for j in i..d {
            let dev = (m[(i, j)] - m[(j, i)].conj()).norm_sqr().sqrt();
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}

/// `(m + m†) / 2`.
pub fn hermitian_part<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    (m + m.adjoint()) * cplx(T::lit(0.5))
}

pub fn trace<T: Real>(m: &CMatrix<T>) -> Complex<T> {
    m.diagonal().iter().fold(Complex::new(T::zero(), T::zero()), |acc, &z| acc + z)
}

/// Real part of `tr(a b)` without forming the product.
pub fn trace_product_re<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> T {
    let d = a.nrows();
    let mut acc = T::zero();
    for i in 0..d {
        for k in 0..d {
            acc += (a[(i, k)] * b[(k, i)]).re;
        }
    }
    acc
}

/// Largest deviation of `v† v` from the identity.
pub fn gram_deviation<T: Real>(v: &CMatrix<T>) -> T {
    let g = v.adjoint() * v;
    let d = g.nrows();
    let mut worst = T::zero();
    for i in 0..d {
        for j in 0..d {
            let target = if i == j { T::one() } else { T::zero() };
            let dev = (g[(i, j)] - cplx(target)).norm_sqr().sqrt();
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}
