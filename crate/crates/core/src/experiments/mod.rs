//! Reproducible numerical experiments built on the relation catalog.

mod coherence;
mod region;
pub mod report;
mod shots;
pub mod table2;
mod volume;

pub use coherence::{coherence_bounds, CoherenceBounds};
pub use region::{region_grid, RegionGrid};
pub use shots::{estimate_coherence, simulate_shots, CoherenceEstimate, ShotCounts, ShotKind};
pub use volume::{
    draw_instance, estimate_acceptance, estimate_volume, estimate_volumes, VolumeEstimate, MIN_VOLUME_SAMPLES,
};
