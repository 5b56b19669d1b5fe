//! The seven-row volume comparison and its published reference values.

use serde::Serialize;

use crate::error::Result;
use crate::relations::{RelationId, RelationKind, Variant};
use crate::scalar::{LogBase, Real};

use super::volume::{estimate_volumes, VolumeEstimate};

/// Tolerated gap between an estimate and its reference at `d = 2`.
pub const TOLERANCE_D2: f64 = 0.01;
/// Tolerated gap at `d = 3`.
pub const TOLERANCE_D3: f64 = 0.015;

/// Published volume for a row, keyed by relation kind.
pub fn reference_volume(kind: RelationKind, dim: usize) -> Option<f64> {
    let (d2, d3) = match kind {
        RelationKind::UTr => (0.930, 0.94675),
        RelationKind::UTrPrime => (0.705, 0.94682),
        RelationKind::URd => (0.787, 0.917),
        RelationKind::URe => (0.770, 0.905),
        RelationKind::UTs => (0.814, 0.937),
        RelationKind::UHs => (0.705, 0.887),
        RelationKind::EurMu => (0.974, 0.999),
        _ => return None,
    };
    match dim {
        2 => Some(d2),
        3 => Some(d3),
        _ => None,
    }
}

pub fn tolerance(dim: usize) -> f64 {
    if dim == 2 {
        TOLERANCE_D2
    } else {
        TOLERANCE_D3
    }
}

/// The seven rows, with `U_ts` in its canonical form. `with_printed` appends
/// the printed `U_ts` form.
pub fn relations(with_printed: bool) -> Vec<RelationId> {
    let half = |kind, variant| RelationId::with_alpha(kind, variant, 0.5).expect("alpha 0.5 is in range");
    let mut rows = vec![
        RelationId::canonical(RelationKind::UTr),
        RelationId::canonical(RelationKind::UTrPrime),
        half(RelationKind::URd, Variant::Canonical),
        RelationId::canonical(RelationKind::URe),
        half(RelationKind::UTs, Variant::Canonical),
        RelationId::canonical(RelationKind::UHs),
        RelationId::mu_shannon(),
    ];
    if with_printed {
        rows.push(half(RelationKind::UTs, Variant::Printed));
    }
    rows
}

/// One row of the comparison against the published table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyRow {
    pub relation: String,
    pub variant: String,
    pub alpha: Option<f64>,
    pub dim: usize,
    pub samples: u64,
    pub seed: u64,
    pub volume: f64,
    pub std_error: f64,
    pub reference: f64,
    pub gap: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
    pub log_base: LogBase,
}

impl DiscrepancyRow {
    pub fn from_estimate<T: Real>(est: &VolumeEstimate<T>, log_base: LogBase) -> Option<Self> {
        let reference = reference_volume(est.relation.id, est.dim)?;
        let volume = est.volume.as_f64();
        let gap = volume - reference;
        let tolerance = tolerance(est.dim);
        Some(Self {
            relation: est.relation.id.name().to_string(),
            variant: est.relation.variant.name().to_string(),
            alpha: est.relation.alpha,
            dim: est.dim,
            samples: est.samples,
            seed: est.seed,
            volume,
            std_error: est.std_error.as_f64(),
            reference,
            gap,
            tolerance,
            within_tolerance: gap.abs() <= tolerance,
            log_base,
        })
    }
}

/// Runs every row on one shared sample stream.
pub fn run<T: Real>(dim: usize, samples: u64, seed: u64, with_printed: bool) -> Result<Vec<VolumeEstimate<T>>> {
    estimate_volumes(&relations(with_printed), dim, samples, seed)
}

pub fn discrepancy_report<T: Real>(estimates: &[VolumeEstimate<T>], log_base: LogBase) -> Vec<DiscrepancyRow> {
    estimates.iter().filter_map(|e| DiscrepancyRow::from_estimate(e, log_base)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_rows_plus_printed() {
        assert_eq!(relations(false).len(), 7);
        let all = relations(true);
        assert_eq!(all.len(), 8);
        assert_eq!(all[7].variant, Variant::Printed);
        assert!(all.iter().all(|r| reference_volume(r.id, 2).is_some()));
    }

    #[test]
    fn report_row() {
        let est = VolumeEstimate::<f64> {
            relation: RelationId::mu_shannon(),
            dim: 2,
            samples: 1000,
            accepted: 970,
            volume: 0.97,
            std_error: 0.005,
            seed: 1,
        };
        let row = DiscrepancyRow::from_estimate(&est, LogBase::Two).unwrap();
        assert!((row.gap + 0.004).abs() < 1e-12);
        assert!(row.within_tolerance);
    }
}
