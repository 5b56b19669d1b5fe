//! Operational bounds on the relative entropy of coherence.

use crate::divergence::kl_divergence;
use crate::error::Result;
use crate::qstate::{
    check_dims, outcome_dist, sequential_dist, von_neumann_entropy, DensityMatrix, Direction, OrthonormalBasis,
    OverlapMatrix,
};
use crate::scalar::{ExtendedReal, LogBase, Real};
use crate::uncertainty::shannon;

/// `H(p) ≥ C_r(ρ) ≥ KL(q‖q′)` for the coherence of `ρ` in basis A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceBounds<T: Real> {
    pub upper: T,
    pub exact: T,
    pub lower: ExtendedReal<T>,
    pub base: LogBase,
}

impl<T: Real> CoherenceBounds<T> {
    /// Whether `upper ≥ exact ≥ lower` holds to `tol`.
    pub fn sandwich_holds(&self, tol: T) -> bool {
        let lower_ok = match self.lower {
            ExtendedReal::Finite(l) => self.exact >= l - tol,
            ExtendedReal::Infinite => false,
        };
        self.upper >= self.exact - tol && lower_ok
    }
}

pub fn coherence_bounds<T: Real>(
    rho: &DensityMatrix<T>,
    a: &OrthonormalBasis<T>,
    b: &OrthonormalBasis<T>,
    base: LogBase,
) -> Result<CoherenceBounds<T>> {
    check_dims(rho.dim(), a.dim())?;
    check_dims(rho.dim(), b.dim())?;
    let p = outcome_dist(rho, a)?;
    let q = outcome_dist(rho, b)?;
    let qp = sequential_dist(&p, &OverlapMatrix::between(a, b)?, Direction::Forward)?;
    let upper = shannon(&p, base);
    let exact = (upper - von_neumann_entropy(rho, base)).max(T::zero());
    let lower = kl_divergence(&q, &qp, base)?;
    Ok(CoherenceBounds { upper, exact, lower, base })
}
