//! Mixed volumes, mixed area measures, quermassintegrals and Orlicz
//! functionals of convex polytopes in R² and R³, together with a lab that
//! evaluates the log-Minkowski / Aleksandrov–Fenchel family of inequalities
//! on concrete bodies.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod lab;
pub mod mixed;
pub mod orlicz;

pub use error::{GeomError, Result};
