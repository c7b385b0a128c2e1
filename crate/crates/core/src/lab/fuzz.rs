//! Randomized campaigns over the inequality catalog.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geometry::generate::{random_hull_with, symmetric_hull_with};
use crate::geometry::Body;
use crate::orlicz::OrliczFunction;

use super::catalog::{InequalityId, Tolerance};
use super::check::{check, CheckParams, InequalityReport, Status, DEFAULT_M};

/// How the last body of each trial relates to its partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DilateProbe {
    /// Independent random bodies.
    #[default]
    Off,
    /// `K = cL`.
    Pure,
    /// `K = cL + t` with a small random `t`; slack is reported, equality never asserted.
    Translated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub dim: usize,
    pub trials: usize,
    /// Points per random hull.
    pub points: usize,
    pub symmetric: bool,
    pub phi_pool: Vec<OrliczFunction>,
    /// `p` is drawn uniformly from `[p_range.0, p_range.1]`.
    pub p_range: (f64, f64),
    /// Optional cap on `i` (the per-id maximum always applies).
    pub i_max: Option<usize>,
    /// Optional fixed `r`; otherwise uniform in `1..=n`.
    pub r: Option<usize>,
    pub m: usize,
    pub dilate: DilateProbe,
    pub tolerance: Tolerance,
}

impl FuzzConfig {
    pub fn new(dim: usize, trials: usize) -> Self {
        FuzzConfig {
            dim,
            trials,
            points: 8,
            symmetric: false,
            phi_pool: vec![
                OrliczFunction::power(1.0).expect("valid"),
                OrliczFunction::power(2.0).expect("valid"),
                OrliczFunction::exp_normalized(1.0).expect("valid"),
            ],
            p_range: (1.0, 4.0),
            i_max: None,
            r: None,
            m: DEFAULT_M,
            dilate: DilateProbe::Off,
            tolerance: Tolerance::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dim != 2 && self.dim != 3 {
            return Err(GeomError::UnsupportedDimension(self.dim));
        }
        if self.phi_pool.is_empty() {
            return Err(GeomError::InvalidParameter("φ pool is empty".into()));
        }
        if !(self.p_range.0 >= 1.0 && self.p_range.1 >= self.p_range.0) {
            return Err(GeomError::InvalidParameter(format!("bad p range {:?}", self.p_range)));
        }
        if self.points < self.dim + 1 {
            return Err(GeomError::InvalidParameter(format!("need at least {} points per hull", self.dim + 1)));
        }
        if let Some(r) = self.r {
            if r == 0 || r > self.dim {
                return Err(GeomError::InvalidParameter(format!("r must satisfy 1 ≤ r ≤ {}", self.dim)));
            }
        }
        Ok(())
    }
}

/// One trial: the report plus the vertex data needed to replay it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzRecord {
    pub trial: usize,
    pub report: InequalityReport,
    pub bodies: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialError {
    pub id: InequalityId,
    pub trial: usize,
    pub seed: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extreme {
    pub slack: f64,
    pub inputs_digest: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdSummary {
    pub id: InequalityId,
    pub trials: usize,
    pub errors: usize,
    pub violations: usize,
    /// Conjectured inequalities log violations as findings instead.
    pub findings_only: bool,
    pub min_slack: Option<f64>,
    /// The five smallest-slack instances.
    pub smallest: Vec<Extreme>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzOutcome {
    pub records: Vec<FuzzRecord>,
    pub errors: Vec<TrialError>,
    pub summary: Vec<IdSummary>,
}

impl FuzzOutcome {
    pub fn reports(&self) -> impl Iterator<Item = &InequalityReport> {
        self.records.iter().map(|r| &r.report)
    }

    /// Violations of inequalities that are theorems in the tested dimension.
    pub fn hard_violations(&self) -> usize {
        self.summary.iter().filter(|s| !s.findings_only).map(|s| s.violations).sum()
    }
}

/// Seed for trial `trial` of `id`: `seed ⊕ trial`, on a stream owned by the id.
pub fn trial_rng(seed: u64, id: InequalityId, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial as u64);
    let stream = InequalityId::ALL.iter().position(|&x| x == id).expect("listed") as u64;
    rng.set_stream(stream);
    rng
}

fn trial_bodies(id: InequalityId, cfg: &FuzzConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Body>> {
    let n = cfg.dim;
    let count = id.arity(n);
    let symmetric = cfg.symmetric || id == InequalityId::LogMinkConj;
    let mut bodies = (0..count)
        .map(|_| {
            if symmetric {
                symmetric_hull_with(n, cfg.points.div_ceil(2), rng)
            } else {
                random_hull_with(n, cfg.points, true, rng)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if cfg.dilate != DilateProbe::Off {
        let c: f64 = rng.random_range(0.25..4.0);
        let base = &bodies[count - 2];
        let mut dilate = base.scale_translate(c, [0.0; 3])?;
        if cfg.dilate == DilateProbe::Translated {
            let mut t = [0.0; 3];
            for x in t.iter_mut().take(n) {
                *x = rng.random_range(-0.1..0.1);
            }
            dilate = dilate.translate(t);
        }
        bodies[count - 1] = dilate;
    }
    Ok(bodies)
}

fn trial_params(id: InequalityId, cfg: &FuzzConfig, rng: &mut ChaCha8Rng) -> CheckParams {
    let n = cfg.dim;
    let r = cfg.r.unwrap_or_else(|| rng.random_range(1..=n));
    let phi = cfg.phi_pool[rng.random_range(0..cfg.phi_pool.len())].clone();
    let p = if cfg.p_range.1 > cfg.p_range.0 { rng.random_range(cfg.p_range.0..=cfg.p_range.1) } else { cfg.p_range.0 };
    let i_top = cfg.i_max.map_or(id.max_i(n), |cap| cap.min(id.max_i(n)));
    let i = rng.random_range(0..=i_top);
    CheckParams {
        r: id.uses_r().then_some(r),
        p: id.uses_p().then_some(p),
        i: id.uses_i().then_some(i),
        phi: id.uses_phi().then_some(phi),
        m: Some(cfg.m),
    }
}

fn run_trial(id: InequalityId, cfg: &FuzzConfig, seed: u64, trial: usize) -> std::result::Result<FuzzRecord, TrialError> {
    let mut rng = trial_rng(seed, id, trial);
    let trial_seed = seed ^ trial as u64;
    let err = |e: GeomError| TrialError { id, trial, seed: trial_seed, message: e.to_string() };
    let bodies = trial_bodies(id, cfg, &mut rng).map_err(err)?;
    let params = trial_params(id, cfg, &mut rng);
    let refs: Vec<&Body> = bodies.iter().collect();
    let mut report = check(id, &refs, &params, &cfg.tolerance).map_err(err)?;
    report.seed = Some(trial_seed);
    Ok(FuzzRecord { trial, report, bodies: bodies.iter().map(|b| b.vertex_coords()).collect() })
}

/// Runs `cfg.trials` trials for each id. Trials run in parallel; results are
/// ordered by (id order, trial index), so the outcome depends only on `seed`.
pub fn fuzz(ids: &[InequalityId], cfg: &FuzzConfig, seed: u64) -> Result<FuzzOutcome> {
    cfg.validate()?;
    let mut records = Vec::new();
    let mut errors = Vec::new();
    let mut summary = Vec::new();
    for &id in ids {
        let mut results: Vec<(usize, std::result::Result<FuzzRecord, TrialError>)> =
            (0..cfg.trials).into_par_iter().map(|t| (t, run_trial(id, cfg, seed, t))).collect();
        results.sort_by_key(|(t, _)| *t);
        let mut recs = Vec::new();
        let mut errs = Vec::new();
        for (_, r) in results {
            match r {
                Ok(rec) => recs.push(rec),
                Err(e) => errs.push(e),
            }
        }
        summary.push(summarize(id, cfg, &recs, errs.len()));
        records.extend(recs);
        errors.extend(errs);
    }
    Ok(FuzzOutcome { records, errors, summary })
}

fn summarize(id: InequalityId, cfg: &FuzzConfig, recs: &[FuzzRecord], errors: usize) -> IdSummary {
    let mut by_slack: Vec<&InequalityReport> = recs.iter().map(|r| &r.report).collect();
    by_slack.sort_by(|a, b| a.slack.total_cmp(&b.slack).then_with(|| a.seed.cmp(&b.seed)));
    IdSummary {
        id,
        trials: cfg.trials,
        errors,
        violations: by_slack.iter().filter(|r| r.status == Status::Violation).count(),
        findings_only: id.is_conjecture(cfg.dim),
        min_slack: by_slack.first().map(|r| r.slack),
        smallest: by_slack
            .iter()
            .take(5)
            .map(|r| Extreme { slack: r.slack, inputs_digest: r.inputs_digest.clone(), seed: r.seed.unwrap_or_default() })
            .collect(),
    }
}
