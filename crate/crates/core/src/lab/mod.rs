//! Numerical laboratory for the inequality catalog: single checks, the proof
//! trace of the log-AF inequality, and seeded fuzz campaigns.

pub mod catalog;
pub mod check;
pub mod fuzz;
pub mod report;
pub mod trace;

pub use catalog::{InequalityId, Tolerance, APPROX_TOL_AT_1024, EXACT_TOL};
pub use check::{af_product, check, inputs_digest, CheckParams, InequalityReport, Status, DEFAULT_M};
pub use fuzz::{fuzz, trial_rng, DilateProbe, FuzzConfig, FuzzOutcome, FuzzRecord, IdSummary, TrialError};
pub use report::{csv_string, outcome_json, slack_histogram_svg, write_csv, CSV_HEADER};
pub use trace::{proof_trace, ProofTrace};
