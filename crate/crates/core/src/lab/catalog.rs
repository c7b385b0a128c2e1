//! Inequality identifiers, body roles and tolerance policy.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityId {
    LogMinkConj,
    LogMink,
    ClassicalAf,
    MinkQuermass,
    LpQuermass,
    LpBmQuermass,
    OrliczAf,
    OrliczMinkGhw,
    OrliczQuermass,
    LpMinkFirey,
    LogAf,
    Intermediate,
    Corollary,
}

use InequalityId::*;

impl InequalityId {
    pub const ALL: [InequalityId; 13] = [
        LogMinkConj,
        LogMink,
        ClassicalAf,
        MinkQuermass,
        LpQuermass,
        LpBmQuermass,
        OrliczAf,
        OrliczMinkGhw,
        OrliczQuermass,
        LpMinkFirey,
        LogAf,
        Intermediate,
        Corollary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LogMinkConj => "LOG_MINK_CONJ_1_1",
            LogMink => "LOG_MINK_1_2",
            ClassicalAf => "CLASSICAL_AF_1_8",
            MinkQuermass => "MINK_QUERMASS_2_4",
            LpQuermass => "LP_QUERMASS_2_8",
            LpBmQuermass => "LP_BM_QUERMASS_2_9",
            OrliczAf => "ORLICZ_AF_3_2",
            OrliczMinkGhw => "ORLICZ_MINK_GHW_3_3",
            OrliczQuermass => "ORLICZ_QUERMASS_3_4",
            LpMinkFirey => "LP_MINK_FIREY_SECOND_3_4",
            LogAf => "LOG_AF_4_9",
            Intermediate => "INTERMEDIATE_4_16",
            Corollary => "COROLLARY_4_17",
        }
    }

    /// Names of the bodies the check expects, in order.
    pub fn roles(self, dim: usize) -> Vec<String> {
        let seq = |prefix: &str, count: usize| (1..=count).map(|k| format!("{prefix}{k}")).collect::<Vec<_>>();
        match self {
            ClassicalAf => seq("L", dim),
            OrliczAf => {
                let mut r = seq("K", dim);
                r.push(format!("L{dim}"));
                r
            }
            LogAf | Intermediate => {
                let mut r = seq("L", dim);
                r.push(format!("K{dim}"));
                r
            }
            _ => vec!["K".into(), "L".into()],
        }
    }

    pub fn arity(self, dim: usize) -> usize {
        self.roles(dim).len()
    }

    pub fn uses_r(self) -> bool {
        matches!(self, ClassicalAf | OrliczAf | LogAf)
    }

    pub fn uses_p(self) -> bool {
        matches!(self, LpQuermass | LpBmQuermass | LpMinkFirey)
    }

    pub fn uses_i(self) -> bool {
        matches!(self, MinkQuermass | LpQuermass | LpBmQuermass | OrliczQuermass | Corollary)
    }

    pub fn uses_phi(self) -> bool {
        matches!(self, OrliczAf | OrliczMinkGhw | OrliczQuermass | LogAf | Intermediate | Corollary)
    }

    /// Largest admissible `i` in dimension `n`.
    pub fn max_i(self, n: usize) -> usize {
        match self {
            LpBmQuermass | OrliczQuermass => n - 1,
            _ => n - 2,
        }
    }

    /// Whether the inequality is only conjectured in this dimension.
    pub fn is_conjecture(self, dim: usize) -> bool {
        self == LogMinkConj && dim >= 3
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        InequalityId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| GeomError::InvalidParameter(format!("unknown inequality id {s:?}")))
    }
}

impl Serialize for InequalityId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for InequalityId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Default relative tolerance for exact paths.
pub const EXACT_TOL: f64 = 1e-9;
/// Relative tolerance for approximate paths at `m = 1024` directions.
pub const APPROX_TOL_AT_1024: f64 = 5e-3;

/// Relative tolerances; the absolute tolerance is `rel · max(|lhs|, |rhs|, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub exact: f64,
    pub approx_at_1024: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { exact: EXACT_TOL, approx_at_1024: APPROX_TOL_AT_1024 }
    }
}

impl Tolerance {
    pub fn exact(exact: f64) -> Self {
        Tolerance { exact, ..Default::default() }
    }

    /// Ball and Firey approximants with `m` directions err by `O(δ²)` for grid
    /// spacing `δ`, i.e. `O(m^{−2/(n−1)})`; the constant is pinned at `m = 1024`.
    pub fn approx(&self, dim: usize, m: usize) -> f64 {
        self.approx_at_1024 * (1024.0 / m as f64).powf(2.0 / (dim as f64 - 1.0))
    }
}
