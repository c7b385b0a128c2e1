//! Mixed volume measures, their Orlicz reweightings and log-expectations.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geometry::Body;
use crate::mixed::{mixed_area_measure, Atom, AtomicSphericalMeasure};

use super::functionals::{prepare, support_pairs};
use super::phi::OrliczFunction;

/// Where a [`VolumeMeasure`] came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// `(1/n) h_{L_n} dS(L₁,…,L_{n−1}; ·)`.
    Plain,
    /// `(1/n) φ(h_{K_n}/h_{L_n}) h_{L_n} dS(L₁,…,L_{n−1}; ·)`.
    Orlicz { phi: String },
    /// The Orlicz measure for `φ = x^p`.
    PPower { p: f64 },
    /// Cone-volume measure `(1/n) h_L dS_L`.
    Cone,
    /// `(1/n) h_K dS_L`, of total mass `V₁(L, K)`.
    V1,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeMeasure {
    pub base: AtomicSphericalMeasure,
    pub provenance: Provenance,
    pub normalized: bool,
    /// Total mass divided out by [`normalize`]; the mass itself before that.
    pub normalizer: f64,
}

impl VolumeMeasure {
    fn from_weights(s: &AtomicSphericalMeasure, weights: Vec<f64>, provenance: Provenance) -> Self {
        let atoms: Vec<Atom> = s
            .atoms()
            .iter()
            .zip(weights)
            .map(|(a, weight)| Atom { direction: a.direction, weight })
            .collect();
        let base = AtomicSphericalMeasure::from_parts(s.dim(), atoms, s.is_approximate());
        let normalizer = base.total_mass();
        VolumeMeasure { base, provenance, normalized: false, normalizer }
    }

    pub fn total_mass(&self) -> f64 {
        self.base.total_mass()
    }

    pub fn atoms(&self) -> &[Atom] {
        self.base.atoms()
    }
}

fn plain_on(s: &AtomicSphericalMeasure, ln: &Body, provenance: Provenance) -> Result<VolumeMeasure> {
    let n = ln.dim() as f64;
    let weights = s
        .atoms()
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let h = ln.support_vec(a.direction);
            if h < 0.0 {
                Err(GeomError::NonpositiveSupport { atom: j, value: h })
            } else {
                Ok(h * a.weight / n)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VolumeMeasure::from_weights(s, weights, provenance))
}

/// `dv = (1/n) h_{L_n} dS(L₁,…,L_{n−1}; ·)`; its mass is `V(L₁,…,L_n)`.
pub fn mixed_volume_measure(ls: &[&Body]) -> Result<VolumeMeasure> {
    let n = ls.first().map(|b| b.dim()).ok_or(GeomError::ArityMismatch { expected: 1, got: 0 })?;
    if ls.len() != n {
        return Err(GeomError::ArityMismatch { expected: n, got: ls.len() });
    }
    let ln = ls[n - 1];
    if !ln.is_full_dimensional() {
        return Err(GeomError::DegenerateInput("L_n must be full-dimensional".into()));
    }
    let s = mixed_area_measure(&ls[..n - 1])?;
    plain_on(&s, ln, Provenance::Plain)
}

/// Cone-volume measure of `L`.
pub fn cone_volume_measure(l: &Body) -> Result<VolumeMeasure> {
    let ls = vec![l; l.dim()];
    let mut mu = mixed_volume_measure(&ls)?;
    mu.provenance = Provenance::Cone;
    Ok(mu)
}

/// `(1/n) h_K dS_L`.
pub fn v1_measure(l: &Body, k: &Body) -> Result<VolumeMeasure> {
    if k.dim() != l.dim() {
        return Err(GeomError::DimensionMismatch(l.dim(), k.dim()));
    }
    let ls = vec![l; l.dim() - 1];
    let s = mixed_area_measure(&ls)?;
    plain_on(&s, k, Provenance::V1)
}

/// Reweights `s` by `(1/n) φ(h_K/h_L) h_L`; the atom list of `s` is kept as is.
pub fn orlicz_measure_on(s: &AtomicSphericalMeasure, k: &Body, l: &Body, phi: &OrliczFunction) -> Result<VolumeMeasure> {
    k.require_origin_interior("K_n")?;
    l.require_origin_interior("L_n")?;
    let pairs = support_pairs(s, k, l)?;
    let n = l.dim() as f64;
    let weights = s
        .atoms()
        .iter()
        .zip(&pairs)
        .map(|(a, &(hk, hl))| phi.eval(hk / hl) * (hl * a.weight / n))
        .collect();
    Ok(VolumeMeasure::from_weights(s, weights, Provenance::Orlicz { phi: phi.label() }))
}

/// `dv_φ = (1/n) φ(h_{K_n}/h_{L_n}) h_{L_n} dS(L₁,…,L_{n−1}; ·)`.
pub fn orlicz_mixed_volume_measure(ls: &[&Body], kn: &Body, ln: &Body, phi: &OrliczFunction) -> Result<VolumeMeasure> {
    let s = prepare(ls, kn, ln)?;
    orlicz_measure_on(&s, kn, ln, phi)
}

/// Probability measure `μ / |μ|`. Idempotent.
pub fn normalize(mu: &VolumeMeasure) -> Result<VolumeMeasure> {
    if mu.normalized {
        return Ok(mu.clone());
    }
    let mass = mu.total_mass();
    if !(mass > 0.0) {
        return Err(GeomError::ZeroMass);
    }
    let atoms = mu
        .atoms()
        .iter()
        .map(|a| Atom { direction: a.direction, weight: a.weight / mass })
        .collect();
    Ok(VolumeMeasure {
        base: AtomicSphericalMeasure::from_parts(mu.base.dim(), atoms, mu.base.is_approximate()),
        provenance: mu.provenance.clone(),
        normalized: true,
        normalizer: mass,
    })
}

fn require_normalized(mu: &VolumeMeasure) -> Result<()> {
    if mu.normalized {
        Ok(())
    } else {
        Err(GeomError::PreconditionViolated("measure must be normalized".into()))
    }
}

/// `∫ ln φ(h_{K_n}/h_{L_n}) dμ` for a probability measure `μ`.
pub fn log_expectation(kn: &Body, ln: &Body, phi: &OrliczFunction, mu: &VolumeMeasure) -> Result<f64> {
    require_normalized(mu)?;
    let mut acc = 0.0;
    for (j, a) in mu.atoms().iter().enumerate() {
        let ratio = kn.support_vec(a.direction) / ln.support_vec(a.direction);
        let value = phi.eval(ratio);
        if !(value > 0.0) || !(ratio > 0.0) {
            return Err(GeomError::LogOfNonpositive { atom: j, value });
        }
        acc += phi.ln_eval(ratio) * a.weight;
    }
    Ok(acc)
}

/// `∫ ln(h_K/h_L) dμ` for a probability measure `μ`.
pub fn log_ratio_expectation(k: &Body, l: &Body, mu: &VolumeMeasure) -> Result<f64> {
    require_normalized(mu)?;
    let mut acc = 0.0;
    for (j, a) in mu.atoms().iter().enumerate() {
        let ratio = k.support_vec(a.direction) / l.support_vec(a.direction);
        if !(ratio > 0.0) {
            return Err(GeomError::LogOfNonpositive { atom: j, value: ratio });
        }
        acc += ratio.ln() * a.weight;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{generate, BodyGenSpec};
    use crate::mixed::mixed_volume;
    use crate::orlicz::orlicz_multiple_mixed_volume;

    fn rand(dim: usize, seed: u64) -> Body {
        generate(&BodyGenSpec::random_hull(dim, 10, seed)).unwrap()
    }

    #[test]
    fn unit_cube_mass() {
        let cube = generate(&BodyGenSpec::boxed(&[1.0, 1.0, 1.0])).unwrap();
        let mu = mixed_volume_measure(&[&cube, &cube, &cube]).unwrap();
        assert!((mu.total_mass() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn plain_mass_is_mixed_volume() {
        for dim in [2, 3] {
            let bodies: Vec<Body> = (0..dim).map(|s| rand(dim, 30 + s as u64)).collect();
            let refs: Vec<&Body> = bodies.iter().collect();
            let mu = mixed_volume_measure(&refs).unwrap();
            let v = mixed_volume(&refs).unwrap().value;
            assert!((mu.total_mass() - v).abs() < 1e-10 * v);
            assert!(mu.atoms().iter().all(|a| a.weight >= 0.0));
        }
    }

    #[test]
    fn orlicz_reduces_to_plain() {
        let (a, b, l) = (rand(3, 1), rand(3, 2), rand(3, 3));
        let phi = OrliczFunction::exp_normalized(2.0).unwrap();
        let plain = mixed_volume_measure(&[&a, &b, &l]).unwrap();
        let orl = orlicz_mixed_volume_measure(&[&a, &b], &l, &l, &phi).unwrap();
        assert_eq!(plain.atoms().len(), orl.atoms().len());
        for (x, y) in plain.atoms().iter().zip(orl.atoms()) {
            assert_eq!(x.direction, y.direction);
            assert!((x.weight - y.weight).abs() <= 1e-12 * x.weight.max(1.0));
        }
        let doubled = orlicz_mixed_volume_measure(&[&a, &b], &l.scale_translate(2.0, [0.0; 3]).unwrap(), &l, &OrliczFunction::power(1.0).unwrap()).unwrap();
        for (x, y) in plain.atoms().iter().zip(doubled.atoms()) {
            assert!((2.0 * x.weight - y.weight).abs() <= 1e-12 * y.weight.max(1.0));
        }
    }

    #[test]
    fn normalize_and_log_expectations() {
        let (a, l) = (rand(2, 4), rand(2, 5));
        let k = l.scale_translate(3.0, [0.0; 3]).unwrap();
        let phi = OrliczFunction::power(2.0).unwrap();
        let mu = orlicz_mixed_volume_measure(&[&a], &k, &l, &phi).unwrap();
        let vphi = orlicz_multiple_mixed_volume(&[&a], &k, &l, &phi).unwrap();
        assert!((mu.total_mass() - vphi).abs() < 1e-12 * vphi);
        let p = normalize(&mu).unwrap();
        assert!((p.total_mass() - 1.0).abs() < 1e-12);
        assert_eq!(p.normalizer, mu.total_mass());
        assert_eq!(normalize(&p).unwrap(), p);
        assert!((log_expectation(&k, &l, &phi, &p).unwrap() - 2.0 * 3f64.ln()).abs() < 1e-12);
        assert!(log_expectation(&l, &l, &phi, &p).unwrap().abs() < 1e-15);
        assert!((log_ratio_expectation(&k, &l, &p).unwrap() - 3f64.ln()).abs() < 1e-12);
        assert!(matches!(log_expectation(&k, &l, &phi, &mu), Err(GeomError::PreconditionViolated(_))));
    }

    #[test]
    fn zero_mass_rejected() {
        let l = rand(2, 6);
        let mut mu = cone_volume_measure(&l).unwrap();
        mu.base = AtomicSphericalMeasure::from_parts(2, vec![], false);
        assert_eq!(normalize(&mu), Err(GeomError::ZeroMass));
    }
}
