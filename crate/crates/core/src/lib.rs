//! # udr-core
//!
//! Uncertainty–disturbance relations for sequential sharp measurements.
//!
//! Measuring `A` on a state `ρ` dephases it to `ρ_A`; a subsequent `B`
//! measurement then sees `q′ = Cᵀp` instead of its undisturbed statistics
//! `q`, where `C` is the overlap matrix `c_ij = |⟨A_i|B_j⟩|²`. Data
//! processing turns any monotone state distance into a trade-off
//! "uncertainty of `p` ≥ disturbance between `q` and `q′`".
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`qstate`] | density matrices, bases, dephasing, overlaps, fidelity, sampling, JSON files |
//! | [`divergence`] | trace, infidelity, sandwiched Rényi, Tsallis, relative entropy, Hilbert–Schmidt; gauges |
//! | [`uncertainty`] | δ, Rényi/Shannon entropies, half-norm, majorization |
//! | [`relations`] | the relation catalog, duals, the universal bound, DPI margins, counterexample search |
//! | [`experiments`] | feasible-region volumes, region grids, coherence bounds, finite-shot estimation |
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix `f64`, which is what the tolerances are calibrated for.

#![forbid(unsafe_code)]
// `!(x >= lo)` style checks reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod divergence;
mod error;
pub mod experiments;
pub mod qstate;
pub mod relations;
pub mod rng;
mod scalar;
pub mod uncertainty;

pub use error::{Error, Result};
pub use scalar::{ExtendedReal, LogBase, Real};

pub type DensityMatrix = qstate::DensityMatrix<f64>;
pub type OrthonormalBasis = qstate::OrthonormalBasis<f64>;
pub type OverlapMatrix = qstate::OverlapMatrix<f64>;
pub type ProbDist = qstate::ProbDist<f64>;

pub type RelationVerdict = relations::RelationVerdict<f64>;
pub type VolumeEstimate = experiments::VolumeEstimate<f64>;
pub type CoherenceBounds = experiments::CoherenceBounds<f64>;
