//! The `q → ∞` machinery behind the log-AF inequality, evaluated numerically.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geometry::Body;
use crate::orlicz::{log_expectation, log_ratio_expectation, normalize, orlicz_mixed_volume_measure, OrliczFunction};

use crate::orlicz::functionals::{prepare, support_pairs};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub q_values: Vec<f64>,
    /// `f(q) = (1/V_φ) Σ φ(ratio_j)^{q/(q+n)} dv_j`.
    pub f_values: Vec<f64>,
    /// Sign of `f′(q) = n/(q+n)² · (1/V_φ) Σ φ^{q/(q+n)} ln φ dv_j`.
    pub derivative_signs: Vec<i8>,
    /// Signs of the forward differences `f(q_{k+1}) − f(q_k)`.
    pub difference_signs: Vec<i8>,
    /// `V_φ − (Σ φ^{q/(q+n)} dv)^{(q+n)/q} (Σ dv)^{−n/q}`; nonnegative by Hölder.
    pub holder_gaps: Vec<f64>,
    /// `f(q)^{q+n}`, which tends to `exp(−(n/V_φ) Σ φ ln φ dv)`.
    pub f_powers: Vec<f64>,
    pub limit_estimate: f64,
    pub lhopital_limit: f64,
    /// `∫ ln φ(h_{K_n}/h_{L_n}) dV̄_φ`.
    pub log_phi_expectation: f64,
    /// `∫ ln(h_{K_n}/h_{L_n}) dV̄_φ`.
    pub log_ratio_expectation: f64,
    pub v_phi: f64,
    pub v: f64,
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

pub fn proof_trace(ls: &[&Body], kn: &Body, ln: &Body, phi: &OrliczFunction, q_list: &[f64]) -> Result<ProofTrace> {
    if q_list.is_empty() {
        return Err(GeomError::InvalidParameter("q list is empty".into()));
    }
    if q_list.iter().any(|&q| !(q >= 1.0) || !q.is_finite()) || q_list.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(GeomError::InvalidParameter("q values must be increasing and ≥ 1".into()));
    }
    let n = kn.dim() as f64;
    let s = prepare(ls, kn, ln)?;
    let pairs = support_pairs(&s, kn, ln)?;
    // dv_j = (1/n) h_{L_n}(u_j) w_j and φ_j = φ(h_{K_n}/h_{L_n}).
    let dv: Vec<f64> = s.atoms().iter().zip(&pairs).map(|(a, &(_, hl))| hl * a.weight / n).collect();
    let phis: Vec<f64> = pairs.iter().map(|&(hk, hl)| phi.eval(hk / hl)).collect();
    let ln_phis: Vec<f64> = pairs.iter().map(|&(hk, hl)| phi.ln_eval(hk / hl)).collect();
    let v: f64 = dv.iter().sum();
    let v_phi: f64 = phis.iter().zip(&dv).map(|(f, d)| f * d).sum();

    let mut out = ProofTrace {
        q_values: q_list.to_vec(),
        f_values: Vec::new(),
        derivative_signs: Vec::new(),
        difference_signs: Vec::new(),
        holder_gaps: Vec::new(),
        f_powers: Vec::new(),
        limit_estimate: 0.0,
        lhopital_limit: (-(n / v_phi) * phis.iter().zip(&ln_phis).zip(&dv).map(|((f, l), d)| f * l * d).sum::<f64>()).exp(),
        log_phi_expectation: 0.0,
        log_ratio_expectation: 0.0,
        v_phi,
        v,
    };
    for &q in q_list {
        let t = q / (q + n);
        let s_t: f64 = ln_phis.iter().zip(&dv).map(|(l, d)| (t * l).exp() * d).sum();
        let d_t: f64 = ln_phis.iter().zip(&dv).map(|(l, d)| (t * l).exp() * l * d).sum();
        let f = s_t / v_phi;
        out.f_values.push(f);
        out.derivative_signs.push(sign(n / ((q + n) * (q + n)) * d_t / v_phi));
        out.holder_gaps.push(v_phi - s_t.powf(1.0 / t) * v.powf(-n / q));
        out.f_powers.push(f.powf(q + n));
    }
    out.difference_signs = out.f_values.windows(2).map(|w| sign(w[1] - w[0])).collect();
    out.limit_estimate = *out.f_values.last().expect("nonempty");
    let mu = normalize(&orlicz_mixed_volume_measure(ls, kn, ln, phi)?)?;
    out.log_phi_expectation = log_expectation(kn, ln, phi, &mu)?;
    out.log_ratio_expectation = log_ratio_expectation(kn, ln, &mu)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{generate, BodyGenSpec};

    fn rand(dim: usize, seed: u64) -> Body {
        generate(&BodyGenSpec::random_hull(dim, 10, seed)).unwrap()
    }

    const QS: [f64; 4] = [1.0, 10.0, 100.0, 1000.0];

    #[test]
    fn identical_bodies_give_unit_f() {
        let (a, l) = (rand(3, 1), rand(3, 2));
        let phi = OrliczFunction::power(2.0).unwrap();
        let t = proof_trace(&[&a, &a], &l, &l, &phi, &QS).unwrap();
        assert!(t.f_values.iter().all(|f| (f - 1.0).abs() < 1e-12));
        assert!(t.holder_gaps.iter().all(|g| g.abs() < 1e-9));
    }

    #[test]
    fn dilates_close_the_holder_gap() {
        let (a, l) = (rand(2, 3), rand(2, 4));
        let k = l.scale_translate(0.5, [0.0; 3]).unwrap();
        let phi = OrliczFunction::exp_normalized(1.0).unwrap();
        let t = proof_trace(&[&a], &k, &l, &phi, &QS).unwrap();
        assert!(t.holder_gaps.iter().all(|g| g.abs() < 1e-9), "{:?}", t.holder_gaps);
    }

    #[test]
    fn random_instance_converges() {
        let (a, k, l) = (rand(3, 5), rand(3, 6), rand(3, 7));
        let phi = OrliczFunction::power(2.0).unwrap();
        let t = proof_trace(&[&a, &a], &k, &l, &phi, &QS).unwrap();
        assert!(t.f_values.iter().all(|&f| f > 0.0));
        assert!((t.limit_estimate - 1.0).abs() < (t.f_values[1] - 1.0).abs());
        assert!(t.holder_gaps.iter().all(|&g| g >= -1e-9));
        assert!((t.f_powers[3] - t.lhopital_limit).abs() < 1e-2 * t.lhopital_limit);
        assert!(t.log_phi_expectation >= (t.v_phi / t.v).ln() - 1e-9);
    }

    #[test]
    fn rejects_bad_q_lists() {
        let l = rand(2, 1);
        let phi = OrliczFunction::power(1.0).unwrap();
        assert!(proof_trace(&[&l], &l, &l, &phi, &[10.0, 1.0]).is_err());
        assert!(proof_trace(&[&l], &l, &l, &phi, &[0.5]).is_err());
        assert!(proof_trace(&[&l], &l, &l, &phi, &[]).is_err());
    }
}
