//! Mixed volumes by polarization, with an independent polynomial-fit oracle.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geometry::Body;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Polarization,
    Polyfit,
    MeasureRepresentation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedVolumeResult {
    pub value: f64,
    pub method: Method,
    /// Largest sub-sum volume (polarization) or largest fit residual (polyfit).
    pub condition: f64,
}

pub(crate) fn check_bodies(bodies: &[&Body], expected: usize) -> Result<usize> {
    let dim = bodies.first().map(|b| b.dim()).ok_or(GeomError::ArityMismatch { expected, got: 0 })?;
    if let Some(b) = bodies.iter().find(|b| b.dim() != dim) {
        return Err(GeomError::DimensionMismatch(dim, b.dim()));
    }
    if bodies.len() != expected {
        return Err(GeomError::ArityMismatch { expected, got: bodies.len() });
    }
    Ok(dim)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Groups equal bodies, returning representatives and multiplicities.
fn group_equal<'a>(bodies: &[&'a Body]) -> Vec<(&'a Body, usize)> {
    let mut groups: Vec<(&Body, usize)> = Vec::new();
    for &b in bodies {
        match groups.iter_mut().find(|(g, _)| g.vertices() == b.vertices()) {
            Some(entry) => entry.1 += 1,
            None => groups.push((b, 1)),
        }
    }
    groups
}

/// `V(K₁,…,K_n) = (1/n!) Σ_{∅≠S⊆[n]} (−1)^{n−|S|} Vol(Σ_{i∈S} K_i)`.
///
/// Repeated bodies are grouped, so the sum runs over multiplicity vectors
/// weighted by binomial coefficients; each distinct sub-sum is hulled once.
pub fn mixed_volume(bodies: &[&Body]) -> Result<MixedVolumeResult> {
    let n = bodies.first().map(|b| b.dim()).unwrap_or(0);
    check_bodies(bodies, n.max(1))?;
    let groups = group_equal(bodies);
    let mut counts = vec![0usize; groups.len()];
    let mut total = 0.0;
    let mut condition: f64 = 0.0;
    loop {
        // advance the mixed-radix counter
        let mut k = 0;
        while k < counts.len() && counts[k] == groups[k].1 {
            counts[k] = 0;
            k += 1;
        }
        if k == counts.len() {
            break;
        }
        counts[k] += 1;

        let size: usize = counts.iter().sum();
        let weight: f64 = counts.iter().zip(&groups).map(|(&c, g)| binomial(g.1, c)).product();
        let terms: Vec<(f64, &Body)> = counts
            .iter()
            .zip(&groups)
            .filter(|(&c, _)| c > 0)
            .map(|(&c, g)| (c as f64, g.0))
            .collect();
        let vol = Body::linear_combination(&terms)?.volume();
        condition = condition.max(vol);
        let sign = if (n - size).is_multiple_of(2) { 1.0 } else { -1.0 };
        total += sign * weight * vol;
    }
    Ok(MixedVolumeResult { value: total / factorial(n), method: Method::Polarization, condition })
}

/// Default sampling levels for each coefficient `λ_i` of the fit.
pub const POLYFIT_LEVELS: [f64; 3] = [1.0 / 3.0, 2.0 / 3.0, 1.0];

/// Exponent vectors of all degree-`n` monomials in `n` variables.
fn monomials(n: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n - 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n as u32, &mut Vec::new(), &mut out);
    out
}

/// Fits `Vol(λ₁K₁+…+λ_nK_n)` on the grid `levels^n` and reads off the
/// `λ₁⋯λ_n` coefficient, which equals `n!·V(K₁,…,K_n)` because the
/// volume polynomial sums over all ordered index tuples.
pub fn mixed_volume_polyfit_with(bodies: &[&Body], levels: &[f64]) -> Result<MixedVolumeResult> {
    let n = bodies.first().map(|b| b.dim()).unwrap_or(0);
    check_bodies(bodies, n.max(1))?;
    let monos = monomials(n);
    let samples = levels.len().pow(n as u32);
    if samples < monos.len() {
        return Err(GeomError::IllConditionedFit(format!(
            "{samples} samples for {} monomials",
            monos.len()
        )));
    }
    let mut design = DMatrix::<f64>::zeros(samples, monos.len());
    let mut rhs = DVector::<f64>::zeros(samples);
    let mut lambda = vec![0.0; n];
    for s in 0..samples {
        let mut rest = s;
        for l in lambda.iter_mut() {
            *l = levels[rest % levels.len()];
            rest /= levels.len();
        }
        for (c, mono) in monos.iter().enumerate() {
            design[(s, c)] = mono.iter().zip(&lambda).map(|(&e, &l)| l.powi(e as i32)).product();
        }
        let terms: Vec<(f64, &Body)> = lambda.iter().copied().zip(bodies.iter().copied()).collect();
        rhs[s] = Body::linear_combination(&terms)?.volume();
    }
    let svd = design.clone().svd(true, true);
    let coeffs = svd
        .solve(&rhs, 1e-14)
        .map_err(|e| GeomError::IllConditionedFit(e.to_string()))?;
    let residual = (&design * &coeffs - &rhs).amax();
    let scale = rhs.amax();
    if !(residual <= 1e-8 * scale) {
        return Err(GeomError::IllConditionedFit(format!("residual {residual:e} against scale {scale:e}")));
    }
    let target = monos.iter().position(|m| m.iter().all(|&e| e == 1)).expect("square-free monomial present");
    Ok(MixedVolumeResult { value: coeffs[target] / factorial(n), method: Method::Polyfit, condition: residual })
}

pub fn mixed_volume_polyfit(bodies: &[&Body]) -> Result<MixedVolumeResult> {
    mixed_volume_polyfit_with(bodies, &POLYFIT_LEVELS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{generate, BodyGenSpec};

    fn boxed(s: &[f64]) -> Body {
        generate(&BodyGenSpec::boxed(s)).unwrap()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2).len(), 3);
        assert_eq!(monomials(3).len(), 10);
    }

    #[test]
    fn box_fixtures() {
        let (a, b) = (boxed(&[1.0, 1.0]), boxed(&[2.0, 1.0]));
        assert!((mixed_volume(&[&a, &b]).unwrap().value - 1.5).abs() < 1e-14);
        let (x, y, z) = (boxed(&[1.0, 1.0, 1.0]), boxed(&[1.0, 2.0, 1.0]), boxed(&[1.0, 1.0, 3.0]));
        assert!((mixed_volume(&[&x, &y, &z]).unwrap().value - 14.0 / 6.0).abs() < 1e-13);
        assert!((mixed_volume_polyfit(&[&x, &y, &z]).unwrap().value - 14.0 / 6.0).abs() < 1e-10);
    }

    #[test]
    fn diagonal_is_volume() {
        let k = generate(&BodyGenSpec::random_hull(3, 9, 4)).unwrap();
        let v = k.volume();
        assert!((mixed_volume(&[&k, &k, &k]).unwrap().value - v).abs() < 1e-12 * v);
        assert!((mixed_volume_polyfit(&[&k, &k, &k]).unwrap().value - v).abs() < 1e-9 * v);
    }

    #[test]
    fn arity_and_dimension_errors() {
        let a = boxed(&[1.0, 1.0]);
        let c = boxed(&[1.0, 1.0, 1.0]);
        assert_eq!(mixed_volume(&[&a]).unwrap_err(), GeomError::ArityMismatch { expected: 2, got: 1 });
        assert_eq!(mixed_volume(&[&a, &c]).unwrap_err(), GeomError::DimensionMismatch(2, 3));
        assert!(matches!(
            mixed_volume_polyfit_with(&[&a, &a], &[1.0]),
            Err(GeomError::IllConditionedFit(_))
        ));
    }
}
