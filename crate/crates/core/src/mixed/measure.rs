use serde::{Deserialize, Serialize};

use crate::geometry::vector::{dot, norm, sub, Vec3};

/// Atoms lighter than this fraction of the total mass are dropped.
pub const PRUNE_FRACTION: f64 = 1e-14;
/// Atoms closer than this (Euclidean distance of unit vectors) are merged.
pub const MERGE_DISTANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub direction: Vec3,
    pub weight: f64,
}

/// Finitely supported positive measure on the unit sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomicSphericalMeasure {
    dim: usize,
    atoms: Vec<Atom>,
    /// Set when the measure involves a polytopal stand-in for the unit ball.
    approximate: bool,
}

impl AtomicSphericalMeasure {
    /// Normalizes raw atoms: merges near-coincident directions, then prunes
    /// negligible (or round-off negative) weights.
    pub fn new(dim: usize, raw: Vec<Atom>, approximate: bool) -> Self {
        let mut raw = raw;
        raw.sort_by(|a, b| a.direction[0].total_cmp(&b.direction[0]));
        let mut merged: Vec<Atom> = Vec::with_capacity(raw.len());
        let mut taken = vec![false; raw.len()];
        for i in 0..raw.len() {
            if taken[i] {
                continue;
            }
            let mut atom = raw[i];
            for j in i + 1..raw.len() {
                if raw[j].direction[0] - raw[i].direction[0] >= MERGE_DISTANCE {
                    break;
                }
                if !taken[j] && norm(sub(raw[j].direction, raw[i].direction)) < MERGE_DISTANCE {
                    atom.weight += raw[j].weight;
                    taken[j] = true;
                }
            }
            merged.push(atom);
        }
        let total: f64 = merged.iter().map(|a| a.weight.max(0.0)).sum();
        merged.retain(|a| a.weight > PRUNE_FRACTION * total);
        merged.sort_by(|a, b| crate::geometry::vector::lex_cmp(&a.direction, &b.direction));
        AtomicSphericalMeasure { dim, atoms: merged, approximate }
    }

    /// Builds a measure from atoms that are already canonical (used for
    /// reweighting, which must keep the support intact atom by atom).
    pub(crate) fn from_parts(dim: usize, atoms: Vec<Atom>, approximate: bool) -> Self {
        AtomicSphericalMeasure { dim, atoms, approximate }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_approximate(&self) -> bool {
        self.approximate
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// `∫ f dμ`.
    pub fn integrate(&self, mut f: impl FnMut(Vec3) -> f64) -> f64 {
        self.atoms.iter().map(|a| f(a.direction) * a.weight).sum()
    }

    /// `(1/n) ∫ h_L dμ`, the mixed-volume pairing with a support function.
    pub fn pair_with_support(&self, support: impl Fn(Vec3) -> f64) -> f64 {
        self.integrate(support) / self.dim as f64
    }

    /// Resultant `∫ u dμ(u)`; vanishes for surface area measures of closed bodies.
    pub fn resultant(&self) -> Vec3 {
        self.atoms.iter().fold([0.0; 3], |acc, a| {
            [
                acc[0] + a.direction[0] * a.weight,
                acc[1] + a.direction[1] * a.weight,
                acc[2] + a.direction[2] * a.weight,
            ]
        })
    }

    /// Weight of the atom at `u`, if any.
    pub fn weight_at(&self, u: Vec3) -> Option<f64> {
        self.atoms
            .iter()
            .find(|a| dot(a.direction, u) > 1.0 - 1e-12)
            .map(|a| a.weight)
    }
}
