//! Exact polytope geometry in the plane and in space.

pub mod body;
pub mod directions;
pub mod firey;
pub mod generate;
pub mod hull2;
pub mod hull3;
pub mod vector;

pub use body::{detect_dilate, hausdorff_distance, Body, Direction, Facet};
pub use firey::firey_sum_approx;
pub use generate::{ball_approx, generate, BodyGenSpec, BodyKind};
pub use vector::Vec3;
