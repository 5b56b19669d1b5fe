//! Qubit admissibility grids over `(p₀, q₀)` at fixed `c₀₀`.

use crate::error::{Error, Result};
use crate::qstate::{OverlapMatrix, ProbDist};
use crate::relations::{eval_with_dual, RelationId};
use crate::scalar::{LogBase, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct RegionGrid<T: Real> {
    pub relation: RelationId,
    pub c00: T,
    pub resolution: usize,
    /// Row-major: `cells[i * resolution + j]` is the cell `p₀ = i/(res−1)`, `q₀ = j/(res−1)`.
    pub cells: Vec<bool>,
}

impl<T: Real> RegionGrid<T> {
    pub fn coordinate(&self, k: usize) -> T {
        T::lit(k as f64) / T::lit((self.resolution - 1) as f64)
    }

    pub fn admissible(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.resolution + j]
    }

    /// `(p₀, q₀, admissible)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (T, T, bool)> + '_ {
        let r = self.resolution;
        (0..r * r).map(move |k| (self.coordinate(k / r), self.coordinate(k % r), self.cells[k]))
    }

    pub fn admitted_fraction(&self) -> f64 {
        self.cells.iter().filter(|&&c| c).count() as f64 / self.cells.len() as f64
    }
}

pub fn region_grid<T: Real>(rel: &RelationId, c00: T, resolution: usize) -> Result<RegionGrid<T>> {
    rel.validate()?;
    if resolution < 2 {
        return Err(Error::InvalidInput(format!("grid resolution must be at least 2, got {resolution}")));
    }
    let overlap = OverlapMatrix::qubit(c00)?;
    let step = |k: usize| T::lit(k as f64) / T::lit((resolution - 1) as f64);
    let mut cells = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        let p = ProbDist::binary(step(i))?;
        for j in 0..resolution {
            let q = ProbDist::binary(step(j))?;
            let (fwd, dual) = eval_with_dual(rel, &p, &q, &overlap, LogBase::Two)?;
            cells.push(fwd.satisfied && dual.satisfied);
        }
    }
    Ok(RegionGrid { relation: *rel, c00, resolution, cells })
}
