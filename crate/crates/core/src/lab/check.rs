//! Evaluation of a single inequality on concrete bodies.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{GeomError, Result};
use crate::geometry::{firey_sum_approx, Body};
use crate::mixed::{mixed_quermassintegral, mixed_volume, p_mixed_quermassintegral, quermassintegral, surface_measure_i};
use crate::orlicz::{
    cone_volume_measure, log_expectation, log_ratio_expectation, normalize, orlicz_measure_on,
    orlicz_mixed_volume_measure, orlicz_multiple_mixed_volume, v1_measure, OrliczFunction,
};

use super::catalog::{InequalityId, Tolerance};

pub const DEFAULT_M: usize = 1024;

/// Per-check parameters; unused ones are ignored (and left out of the report).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    pub r: Option<usize>,
    pub p: Option<f64>,
    pub i: Option<usize>,
    pub phi: Option<OrliczFunction>,
    /// Directions used by ball and Firey approximants.
    pub m: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Equality,
    Violation,
    ApproximateHolds,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Equality => "equality",
            Status::Violation => "violation",
            Status::ApproximateHolds => "approximate_holds",
        }
    }

    pub fn classify(slack: f64, tolerance: f64, approximate: bool) -> Self {
        if slack < -tolerance {
            Status::Violation
        } else if slack.abs() <= tolerance {
            Status::Equality
        } else if approximate {
            Status::ApproximateHolds
        } else {
            Status::Holds
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub id: InequalityId,
    pub dim: usize,
    pub r: Option<usize>,
    pub p: Option<f64>,
    pub i: Option<usize>,
    pub phi: Option<String>,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs − rhs`; nonnegative when the inequality holds.
    pub slack: f64,
    pub tolerance: f64,
    pub status: Status,
    pub approximate: bool,
    pub inputs_digest: String,
    pub seed: Option<u64>,
}

/// Stable hash of the vertex data, the id and the parameters that id uses.
pub fn inputs_digest(id: InequalityId, bodies: &[&Body], r: Option<usize>, p: Option<f64>, i: Option<usize>, phi: Option<&str>, m: Option<usize>) -> String {
    let mut h = Sha256::new();
    h.update(id.as_str().as_bytes());
    for b in bodies {
        h.update([b.dim() as u8, 0xff]);
        for v in b.vertices() {
            for x in &v[..b.dim()] {
                h.update(x.to_bits().to_le_bytes());
            }
        }
    }
    h.update(format!("|r={r:?}|p={:?}|i={i:?}|phi={phi:?}|m={m:?}", p.map(f64::to_bits)).as_bytes());
    hex::encode(&h.finalize()[..8])
}

/// `Π_{k=1}^{r} V(M_k,…,M_k, M_{r+1},…,M_n)^{1/r}` with `M_k` repeated `r` times.
pub fn af_product(ms: &[&Body], r: usize) -> Result<f64> {
    let n = ms.len();
    if r == 0 || r > n {
        return Err(GeomError::PreconditionViolated(format!("r must satisfy 1 ≤ r ≤ {n}, got {r}")));
    }
    let mut prod = 1.0;
    for k in 0..r {
        let mut bodies = vec![ms[k]; r];
        bodies.extend_from_slice(&ms[r..]);
        prod *= mixed_volume(&bodies)?.value.max(0.0).powf(1.0 / r as f64);
    }
    Ok(prod)
}

struct Ctx<'a> {
    n: usize,
    bodies: &'a [&'a Body],
    params: &'a CheckParams,
}

impl Ctx<'_> {
    fn r(&self) -> Result<usize> {
        let r = self.params.r.unwrap_or(self.n);
        if r == 0 || r > self.n {
            return Err(GeomError::PreconditionViolated(format!("r must satisfy 1 ≤ r ≤ {}, got {r}", self.n)));
        }
        Ok(r)
    }

    fn p(&self) -> Result<f64> {
        match self.params.p {
            Some(p) if p >= 1.0 && p.is_finite() => Ok(p),
            Some(p) => Err(GeomError::PreconditionViolated(format!("p must be ≥ 1, got {p}"))),
            None => Err(GeomError::PreconditionViolated("parameter p is required".into())),
        }
    }

    fn i(&self, max: usize) -> Result<usize> {
        let i = self.params.i.unwrap_or(0);
        if i > max {
            return Err(GeomError::PreconditionViolated(format!("i must satisfy 0 ≤ i ≤ {max}, got {i}")));
        }
        Ok(i)
    }

    fn phi(&self) -> Result<&OrliczFunction> {
        self.params.phi.as_ref().ok_or_else(|| GeomError::PreconditionViolated("parameter phi is required".into()))
    }

    fn m(&self) -> usize {
        self.params.m.unwrap_or(DEFAULT_M)
    }

    fn origin(&self, k: usize, role: &str) -> Result<()> {
        if self.bodies[k].contains_origin_interior() {
            Ok(())
        } else {
            Err(GeomError::PreconditionViolated(format!("origin must be interior to {role}")))
        }
    }
}

/// Evaluates inequality `id` on `bodies` (ordered as `id.roles(dim)`).
pub fn check(id: InequalityId, bodies: &[&Body], params: &CheckParams, tol: &Tolerance) -> Result<InequalityReport> {
    let n = bodies.first().map(|b| b.dim()).ok_or(GeomError::ArityMismatch { expected: 2, got: 0 })?;
    if let Some(b) = bodies.iter().find(|b| b.dim() != n) {
        return Err(GeomError::DimensionMismatch(n, b.dim()));
    }
    if bodies.len() != id.arity(n) {
        return Err(GeomError::ArityMismatch { expected: id.arity(n), got: bodies.len() });
    }
    if let Some(k) = bodies.iter().position(|b| !b.is_full_dimensional()) {
        return Err(GeomError::PreconditionViolated(format!("{} must be full-dimensional", id.roles(n)[k])));
    }
    let cx = Ctx { n, bodies, params };
    let nf = n as f64;
    let (lhs, rhs, approximate) = match id {
        InequalityId::LogMinkConj => {
            let (k, l) = (bodies[0], bodies[1]);
            for (b, role) in [(k, "K"), (l, "L")] {
                if !b.is_origin_symmetric(1e-12 * b.radius().max(1.0)) {
                    return Err(GeomError::PreconditionViolated(format!("{role} must be origin-symmetric")));
                }
            }
            cx.origin(0, "K")?;
            cx.origin(1, "L")?;
            let mu = normalize(&cone_volume_measure(l)?)?;
            (log_ratio_expectation(k, l, &mu)?, (k.volume() / l.volume()).ln() / nf, false)
        }
        InequalityId::LogMink => {
            let (k, l) = (bodies[0], bodies[1]);
            cx.origin(0, "K")?;
            cx.origin(1, "L")?;
            let mu = normalize(&v1_measure(l, k)?)?;
            (log_ratio_expectation(k, l, &mu)?, (k.volume() / l.volume()).ln() / nf, false)
        }
        InequalityId::ClassicalAf => {
            let r = cx.r()?;
            (mixed_volume(bodies)?.value, af_product(bodies, r)?, false)
        }
        InequalityId::MinkQuermass => {
            let (k, l) = (bodies[0], bodies[1]);
            let i = cx.i(n - 2)?;
            let e = (n - i) as i32;
            let lhs = mixed_quermassintegral(k, l, i, cx.m())?.powi(e);
            let rhs = quermassintegral(k, i)?.powi(e - 1) * quermassintegral(l, i)?;
            (lhs, rhs, i >= 1)
        }
        InequalityId::LpQuermass => {
            let (k, l) = (bodies[0], bodies[1]);
            let (p, i) = (cx.p()?, cx.i(n - 2)?);
            cx.origin(0, "K")?;
            cx.origin(1, "L")?;
            let e = (n - i) as f64;
            let lhs = p_mixed_quermassintegral(k, l, p, i, cx.m())?.powf(e);
            let rhs = quermassintegral(k, i)?.powf(e - p) * quermassintegral(l, i)?.powf(p);
            (lhs, rhs, i >= 1)
        }
        InequalityId::LpBmQuermass => {
            let (k, l) = (bodies[0], bodies[1]);
            let (p, i) = (cx.p()?, cx.i(n - 1)?);
            cx.origin(0, "K")?;
            cx.origin(1, "L")?;
            let e = p / (n - i) as f64;
            let sum = firey_sum_approx(k, l, p, cx.m())?;
            let lhs = quermassintegral(&sum, i)?.powf(e);
            let rhs = quermassintegral(k, i)?.powf(e) + quermassintegral(l, i)?.powf(e);
            (lhs, rhs, true)
        }
        InequalityId::OrliczAf => {
            let (r, phi) = (cx.r()?, cx.phi()?);
            cx.origin(n - 1, "K_n")?;
            cx.origin(n, "L_n")?;
            let (ks, kn, ln) = (&bodies[..n - 1], bodies[n - 1], bodies[n]);
            let lhs = orlicz_multiple_mixed_volume(ks, kn, ln, phi)?;
            let mut with_ln = ks.to_vec();
            with_ln.push(ln);
            let v = mixed_volume(&with_ln)?.value;
            let rhs = v * phi.eval(af_product(&bodies[..n], r)? / v);
            (lhs, rhs, false)
        }
        InequalityId::OrliczMinkGhw => {
            let (k, l) = (bodies[0], bodies[1]);
            let phi = cx.phi()?;
            cx.origin(0, "K")?;
            cx.origin(1, "L")?;
            let ks = vec![k; n - 1];
            let lhs = orlicz_multiple_mixed_volume(&ks, l, k, phi)?;
            let vk = k.volume();
            (lhs, vk * phi.eval((l.volume() / vk).powf(1.0 / nf)), false)
        }
        InequalityId::OrliczQuermass => {
            let (k, l) = (bodies[0], bodies[1]);
            let (phi, i) = (cx.phi()?, cx.i(n - 1)?);
            cx.origin(0, "K")?;
            cx.origin(1, "L")?;
            let s = surface_measure_i(k, i, cx.m())?;
            let lhs = orlicz_measure_on(&s, l, k, phi)?.total_mass();
            let wk = quermassintegral(k, i)?;
            let rhs = wk * phi.eval((quermassintegral(l, i)? / wk).powf(1.0 / (n - i) as f64));
            (lhs, rhs, i >= 1)
        }
        InequalityId::LpMinkFirey => {
            let (k, l) = (bodies[0], bodies[1]);
            let p = cx.p()?;
            cx.origin(0, "K")?;
            cx.origin(1, "L")?;
            let lhs = p_mixed_quermassintegral(k, l, p, 0, cx.m())?;
            (lhs, k.volume().powf((nf - p) / nf) * l.volume().powf(p / nf), false)
        }
        InequalityId::LogAf | InequalityId::Intermediate => {
            let phi = cx.phi()?;
            cx.origin(n - 1, "L_n")?;
            cx.origin(n, "K_n")?;
            let (ls, ln, kn) = (&bodies[..n - 1], bodies[n - 1], bodies[n]);
            let mu = orlicz_mixed_volume_measure(ls, kn, ln, phi)?;
            let lhs = log_expectation(kn, ln, phi, &normalize(&mu)?)?;
            let v = mixed_volume(&bodies[..n])?.value;
            let rhs = if id == InequalityId::LogAf {
                let mut ms = ls.to_vec();
                ms.push(kn);
                phi.ln_eval(af_product(&ms, cx.r()?)? / v)
            } else {
                (orlicz_multiple_mixed_volume(ls, kn, ln, phi)? / v).ln()
            };
            (lhs, rhs, false)
        }
        InequalityId::Corollary => {
            let (k, l) = (bodies[0], bodies[1]);
            let (phi, i) = (cx.phi()?, cx.i(n - 2)?);
            cx.origin(0, "K")?;
            cx.origin(1, "L")?;
            let s = surface_measure_i(l, i, cx.m())?;
            let mu = normalize(&orlicz_measure_on(&s, k, l, phi)?)?;
            let lhs = log_ratio_expectation(k, l, &mu)?;
            let rhs = (quermassintegral(k, i)? / quermassintegral(l, i)?).ln() / (n - i) as f64;
            (lhs, rhs, i >= 1)
        }
    };
    if !lhs.is_finite() || !rhs.is_finite() {
        return Err(GeomError::DegenerateInput(format!("non-finite sides: lhs = {lhs}, rhs = {rhs}")));
    }
    let r = id.uses_r().then(|| cx.r()).transpose()?;
    let p = if id.uses_p() { params.p } else { None };
    let i = id.uses_i().then(|| params.i.unwrap_or(0));
    let phi = if id.uses_phi() { params.phi.as_ref().map(|f| f.label()) } else { None };
    let m = approximate.then(|| cx.m());
    let slack = lhs - rhs;
    let rel = if approximate { tol.approx(n, cx.m()) } else { tol.exact };
    let tolerance = rel * lhs.abs().max(rhs.abs()).max(1.0);
    Ok(InequalityReport {
        id,
        dim: n,
        r,
        p,
        i,
        inputs_digest: inputs_digest(id, bodies, r, p, i, phi.as_deref(), m),
        phi,
        lhs,
        rhs,
        slack,
        tolerance,
        status: Status::classify(slack, tolerance, approximate),
        approximate,
        seed: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{generate, BodyGenSpec};

    fn boxed(s: &[f64]) -> Body {
        generate(&BodyGenSpec::boxed(s)).unwrap()
    }

    fn rand(dim: usize, seed: u64) -> Body {
        generate(&BodyGenSpec::random_hull(dim, 10, seed)).unwrap()
    }

    #[test]
    fn classical_af_box_fixture() {
        let (a, b) = (boxed(&[1.0, 1.0]), boxed(&[2.0, 1.0]));
        let params = CheckParams { r: Some(2), ..Default::default() };
        let rep = check(InequalityId::ClassicalAf, &[&a, &b], &params, &Tolerance::default()).unwrap();
        assert!((rep.lhs - 1.5).abs() < 1e-12);
        assert!((rep.rhs - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(rep.status, Status::Holds);
    }

    #[test]
    fn log_af_dilate_is_equality() {
        for dim in [2, 3] {
            let l = rand(dim, 7);
            let k = l.scale_translate(3.0, [0.0; 3]).unwrap();
            let mut bodies = vec![&l; dim];
            bodies.push(&k);
            for r in 1..=dim {
                let params = CheckParams { r: Some(r), phi: Some(OrliczFunction::exp_normalized(1.0).unwrap()), ..Default::default() };
                let rep = check(InequalityId::LogAf, &bodies, &params, &Tolerance::default()).unwrap();
                assert_eq!(rep.status, Status::Equality, "{rep:?}");
                assert!((rep.lhs - OrliczFunction::exp_normalized(1.0).unwrap().eval(3.0).ln()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn status_classification() {
        assert_eq!(Status::classify(-1.0, 0.5, false), Status::Violation);
        assert_eq!(Status::classify(0.4, 0.5, true), Status::Equality);
        assert_eq!(Status::classify(1.0, 0.5, true), Status::ApproximateHolds);
        assert_eq!(Status::classify(1.0, 0.5, false), Status::Holds);
    }

    #[test]
    fn preconditions_are_named() {
        let (k, l) = (rand(2, 1), rand(2, 2));
        let err = check(InequalityId::LogMinkConj, &[&k, &l], &CheckParams::default(), &Tolerance::default()).unwrap_err();
        assert!(err.to_string().contains("symmetric"), "{err}");
        let err = check(InequalityId::LpMinkFirey, &[&k, &l], &CheckParams::default(), &Tolerance::default()).unwrap_err();
        assert!(err.to_string().contains("p is required"), "{err}");
        let params = CheckParams { r: Some(3), ..Default::default() };
        assert!(check(InequalityId::ClassicalAf, &[&k, &l], &params, &Tolerance::default()).is_err());
        let far = k.translate([5.0, 0.0, 0.0]);
        let err = check(InequalityId::LogMink, &[&far, &l], &CheckParams::default(), &Tolerance::default()).unwrap_err();
        assert!(err.to_string().contains("origin"), "{err}");
    }

    #[test]
    fn digest_is_stable_and_sensitive() {
        let (k, l) = (rand(2, 1), rand(2, 2));
        let a = inputs_digest(InequalityId::LogMink, &[&k, &l], None, None, None, None, None);
        assert_eq!(a, inputs_digest(InequalityId::LogMink, &[&k, &l], None, None, None, None, None));
        assert_ne!(a, inputs_digest(InequalityId::LogMink, &[&l, &k], None, None, None, None, None));
        assert_eq!(a.len(), 16);
    }
}
