//! Orlicz and `L_p` multiple mixed volumes.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geometry::Body;
use crate::mixed::{mixed_area_measure, AtomicSphericalMeasure};

use super::phi::OrliczFunction;

/// Which way the support ratio is taken inside `φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `φ(h_{K_n}/h_{L_n})·h_{L_n}`, the form used by the log-AF theorem and its proof.
    #[default]
    Theorem,
    /// `φ(h_{L_n}/h_{K_n})·h_{K_n}`, the alternative form of the defining integral.
    AsWritten31,
}

/// Checks arity and the origin conditions shared by every Orlicz functional,
/// returning the mixed area measure `S(L₁,…,L_{n−1}; ·)`.
pub(crate) fn prepare(ls: &[&Body], kn: &Body, ln: &Body) -> Result<AtomicSphericalMeasure> {
    let n = kn.dim();
    if ln.dim() != n {
        return Err(GeomError::DimensionMismatch(n, ln.dim()));
    }
    if ls.len() != n - 1 {
        return Err(GeomError::ArityMismatch { expected: n - 1, got: ls.len() });
    }
    kn.require_origin_interior("K_n")?;
    ln.require_origin_interior("L_n")?;
    mixed_area_measure(ls)
}

/// Support values `(h_{K_n}(u_j), h_{L_n}(u_j))` at every atom, both required positive.
pub(crate) fn support_pairs(s: &AtomicSphericalMeasure, kn: &Body, ln: &Body) -> Result<Vec<(f64, f64)>> {
    s.atoms()
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let hk = kn.support_vec(a.direction);
            let hl = ln.support_vec(a.direction);
            if !(hk > 0.0) {
                return Err(GeomError::NonpositiveSupport { atom: j, value: hk });
            }
            if !(hl > 0.0) {
                return Err(GeomError::NonpositiveSupport { atom: j, value: hl });
            }
            Ok((hk, hl))
        })
        .collect()
}

/// `V_φ(L₁,…,L_{n−1}, K_n, L_n) = (1/n) Σ φ(h_{K_n}/h_{L_n}) h_{L_n} w_j`.
pub fn orlicz_multiple_mixed_volume(ls: &[&Body], kn: &Body, ln: &Body, phi: &OrliczFunction) -> Result<f64> {
    orlicz_multiple_mixed_volume_oriented(ls, kn, ln, phi, Orientation::Theorem)
}

pub fn orlicz_multiple_mixed_volume_oriented(
    ls: &[&Body],
    kn: &Body,
    ln: &Body,
    phi: &OrliczFunction,
    orientation: Orientation,
) -> Result<f64> {
    let s = prepare(ls, kn, ln)?;
    let pairs = support_pairs(&s, kn, ln)?;
    let sum: f64 = s
        .atoms()
        .iter()
        .zip(&pairs)
        .map(|(a, &(hk, hl))| match orientation {
            Orientation::Theorem => phi.eval(hk / hl) * hl * a.weight,
            Orientation::AsWritten31 => phi.eval(hl / hk) * hk * a.weight,
        })
        .sum();
    Ok(sum / kn.dim() as f64)
}

/// `(1/n) Σ (h_{K_n}/h_{L_n})^p h_{L_n} w_j`, evaluated as `h_K^p h_L^{1−p}`.
pub fn lp_multiple_mixed_volume(ls: &[&Body], kn: &Body, ln: &Body, p: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(GeomError::InvalidParameter(format!("p must be ≥ 1, got {p}")));
    }
    let s = prepare(ls, kn, ln)?;
    let pairs = support_pairs(&s, kn, ln)?;
    let n = kn.dim() as f64;
    Ok(s.atoms()
        .iter()
        .zip(&pairs)
        .map(|(a, &(hk, hl))| (p * hk.ln() + (1.0 - p) * hl.ln()).exp() * a.weight / n)
        .sum())
}
