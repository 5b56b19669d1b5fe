//! JSON state and basis files.
//!
//! State: `{"dim": d, "rho": [[[re, im], ...], ...]}` (row-major).
//! Basis: `{"dim": d, "columns": [[[re, im], ...], ...]}`, one entry per ket.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::linalg::CMatrix;
use super::{DensityMatrix, OrthonormalBasis};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim: usize,
    pub rho: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisFile {
    pub dim: usize,
    pub columns: Vec<Vec<[f64; 2]>>,
}

fn parse<'a, F: Deserialize<'a>>(text: &'a str) -> Result<F> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("line {} column {}: {e}", e.line(), e.column())))
}

fn to_matrix<T: Real>(field: &str, dim: usize, rows: &[Vec<[f64; 2]>]) -> Result<CMatrix<T>> {
    if rows.len() != dim {
        return Err(Error::InvalidInput(format!("field '{field}': expected {dim} entries, found {}", rows.len())));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::InvalidInput(format!(
                "field '{field}[{i}]': expected {dim} entries, found {}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|z| !(z[0].is_finite() && z[1].is_finite())) {
            return Err(Error::InvalidInput(format!("field '{field}[{i}][{j}]': not finite")));
        }
    }
    Ok(CMatrix::from_fn(dim, dim, |i, j| {
        let [re, im] = rows[i][j];
        Complex::new(T::lit(re), T::lit(im))
    }))
}

fn from_matrix<T: Real>(m: &CMatrix<T>) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re.as_f64(), m[(i, j)].im.as_f64()]).collect()).collect()
}

impl StateFile {
    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn to_state<T: Real>(&self) -> Result<DensityMatrix<T>> {
        let m = to_matrix("rho", self.dim, &self.rho)?;
        DensityMatrix::new(m).map_err(|e| Error::InvalidInput(format!("field 'rho': {e}")))
    }

    pub fn from_state<T: Real>(rho: &DensityMatrix<T>) -> Self {
        Self { dim: rho.dim(), rho: from_matrix(rho.entries()) }
    }
}

impl BasisFile {
    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    /// `columns[k]` is ket `k`.
    pub fn to_basis<T: Real>(&self) -> Result<OrthonormalBasis<T>> {
        let kets = to_matrix::<T>("columns", self.dim, &self.columns)?;
        OrthonormalBasis::new(kets.transpose()).map_err(|e| Error::InvalidInput(format!("field 'columns': {e}")))
    }

    pub fn from_basis<T: Real>(basis: &OrthonormalBasis<T>) -> Self {
        Self { dim: basis.dim(), columns: from_matrix(&basis.columns().transpose()) }
    }
}
