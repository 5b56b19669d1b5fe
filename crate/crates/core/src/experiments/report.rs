//! Flat records for `volume.csv`, `region.csv` and `coherence.csv`.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{ExtendedReal, LogBase, Real};

use super::{CoherenceBounds, RegionGrid, VolumeEstimate};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeRow {
    pub relation: String,
    pub variant: String,
    pub alpha: Option<f64>,
    pub dim: usize,
    pub samples: u64,
    pub seed: u64,
    pub volume: f64,
    pub std_error: f64,
    pub log_base: LogBase,
}

impl VolumeRow {
    pub fn new<T: Real>(est: &VolumeEstimate<T>, log_base: LogBase) -> Self {
        Self {
            relation: est.relation.id.name().to_string(),
            variant: est.relation.variant.name().to_string(),
            alpha: est.relation.alpha,
            dim: est.dim,
            samples: est.samples,
            seed: est.seed,
            volume: est.volume.as_f64(),
            std_error: est.std_error.as_f64(),
            log_base,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionRow {
    pub relation: String,
    pub c00: f64,
    pub p0: f64,
    pub q0: f64,
    pub admissible: bool,
    pub variant: String,
    pub log_base: LogBase,
}

pub fn region_rows<T: Real>(grid: &RegionGrid<T>, log_base: LogBase) -> Vec<RegionRow> {
    let relation = grid.relation.to_string();
    let variant = grid.relation.variant.name().to_string();
    grid.iter()
        .map(|(p0, q0, admissible)| RegionRow {
            relation: relation.clone(),
            c00: grid.c00.as_f64(),
            p0: p0.as_f64(),
            q0: q0.as_f64(),
            admissible,
            variant: variant.clone(),
            log_base,
        })
        .collect()
}

/// `lower` is `None` when the bound is unbounded. `source` is `state` for
/// exact bounds and `shots` for plug-in estimates, where `seed` and
/// `samples` (shots per experiment) apply.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoherenceRow {
    pub upper: f64,
    pub exact: f64,
    #[serde(serialize_with = "extended")]
    pub lower: Option<f64>,
    pub base: LogBase,
    pub source: &'static str,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
}

fn extended<S: serde::Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_f64(*x),
        None => s.serialize_str("inf"),
    }
}

impl CoherenceRow {
    pub fn new<T: Real>(b: &CoherenceBounds<T>) -> Self {
        Self {
            upper: b.upper.as_f64(),
            exact: b.exact.as_f64(),
            lower: extended_to_option(b.lower),
            base: b.base,
            source: "state",
            seed: None,
            samples: None,
        }
    }
}

pub fn extended_to_option<T: Real>(v: ExtendedReal<T>) -> Option<f64> {
    v.finite().map(|x| x.as_f64())
}

/// Writes `rows` as CSV with a header line.
pub fn write_csv<W: Write, R: Serialize>(out: W, rows: &[R]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    }
    w.flush().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    Ok(())
}
