//! Mixed volumes, mixed area measures and quermassintegrals.

pub mod area;
pub mod measure;
pub mod quermass;
pub mod volume;

pub use area::{default_ball_resolution, mixed_area_measure, mixed_volume_by_measure, surface_measure_i};
pub use measure::{Atom, AtomicSphericalMeasure};
pub use quermass::{mixed_quermassintegral, p_mixed_quermassintegral, quermassintegral, quermassintegral_generic};
pub use volume::{mixed_volume, mixed_volume_polyfit, mixed_volume_polyfit_with, Method, MixedVolumeResult};
