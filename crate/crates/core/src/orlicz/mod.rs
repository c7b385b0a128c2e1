//! The Orlicz class Φ and the functionals and measures built on it.

pub mod functionals;
pub mod measure;
pub mod phi;

pub use functionals::{lp_multiple_mixed_volume, orlicz_multiple_mixed_volume, orlicz_multiple_mixed_volume_oriented, Orientation};
pub use measure::{
    cone_volume_measure, log_expectation, log_ratio_expectation, mixed_volume_measure, normalize, orlicz_measure_on,
    orlicz_mixed_volume_measure, v1_measure, Provenance, VolumeMeasure,
};
pub use phi::{OrliczFunction, PhiKind};
