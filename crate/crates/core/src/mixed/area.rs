//! Mixed area measures of polytopes and the ball-approximant surface measures.

use std::collections::HashSet;

use crate::error::{GeomError, Result};
use crate::geometry::hull2::hull_area;
use crate::geometry::vector::{dot, orthonormal_complement, Vec3};
use crate::geometry::{ball_approx, Body};

use super::measure::{Atom, AtomicSphericalMeasure};
use super::volume::{check_bodies, Method, MixedVolumeResult};

/// Default resolution of the unit-ball approximant.
pub fn default_ball_resolution(dim: usize) -> usize {
    if dim == 2 {
        256
    } else {
        1024
    }
}

/// Vertex indices of the face `F(K, u)`.
fn face_indices(body: &Body, u: Vec3) -> Vec<usize> {
    let h = body.support_vec(u);
    let eps = 1e-9 * body.radius().max(1.0);
    (0..body.vertices().len())
        .filter(|&k| dot(body.vertices()[k], u) >= h - eps)
        .collect()
}

fn project(points: impl Iterator<Item = Vec3>, e1: Vec3, e2: Vec3) -> Vec<[f64; 2]> {
    points.map(|p| [dot(p, e1), dot(p, e2)]).collect()
}

/// Surface area measure of one body: facet normals weighted by facet areas.
fn facet_measure(body: &Body) -> Vec<Atom> {
    (0..body.facets().len())
        .map(|k| Atom { direction: body.facets()[k].normal, weight: body.facet_area(k) })
        .collect()
}

/// `S(K₁,…,K_{n−1}; ·)`.
///
/// In the plane this is the edge-length measure of the single body (segments
/// allowed). In space the atoms sit at the facet normals `u` of `K₁+K₂`, with
/// weight the mixed area `(A(F₁+F₂) − A(F₁) − A(F₂))/2` of the faces
/// `F_i = F(K_i, u)` measured in `u⊥`.
pub fn mixed_area_measure(bodies: &[&Body]) -> Result<AtomicSphericalMeasure> {
    let dim = bodies.first().map(|b| b.dim()).ok_or(GeomError::ArityMismatch { expected: 1, got: 0 })?;
    check_bodies(bodies, dim - 1)?;
    if dim == 2 {
        return Ok(AtomicSphericalMeasure::new(2, facet_measure(bodies[0]), false));
    }
    let (a, b) = (bodies[0], bodies[1]);
    if a.vertices() == b.vertices() {
        return Ok(AtomicSphericalMeasure::new(3, facet_measure(a), false));
    }
    let sum = a.minkowski_sum(b)?;
    let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    let mut atoms = Vec::with_capacity(sum.facets().len());
    for facet in sum.facets() {
        let u = facet.normal;
        let fa = face_indices(a, u);
        let fb = face_indices(b, u);
        if !seen.insert((fa.clone(), fb.clone())) {
            continue;
        }
        let (e1, e2) = orthonormal_complement(u);
        let pa = project(fa.iter().map(|&k| a.vertices()[k]), e1, e2);
        let pb = project(fb.iter().map(|&k| b.vertices()[k]), e1, e2);
        let pab: Vec<[f64; 2]> = pa
            .iter()
            .flat_map(|p| pb.iter().map(move |q| [p[0] + q[0], p[1] + q[1]]))
            .collect();
        let weight = 0.5 * (hull_area(&pab) - hull_area(&pa) - hull_area(&pb));
        atoms.push(Atom { direction: u, weight });
    }
    Ok(AtomicSphericalMeasure::new(3, atoms, false))
}

/// `V(K₁,…,K_n) = (1/n) ∫ h_{K_n} dS(K₁,…,K_{n−1}; ·)`, independent of polarization.
pub fn mixed_volume_by_measure(bodies: &[&Body]) -> Result<MixedVolumeResult> {
    let dim = bodies.first().map(|b| b.dim()).ok_or(GeomError::ArityMismatch { expected: 1, got: 0 })?;
    check_bodies(bodies, dim)?;
    let last = bodies[dim - 1];
    let s = mixed_area_measure(&bodies[..dim - 1])?;
    Ok(MixedVolumeResult {
        value: s.pair_with_support(|u| last.support_vec(u)),
        method: Method::MeasureRepresentation,
        condition: s.total_mass(),
    })
}

/// `S_i(K, ·) = S(K,…,K, B,…,B; ·)` with `i` copies of the ball.
///
/// `i = 0` is exact; for `i ≥ 1` the ball is replaced by `ball_approx(dim, m)`
/// and the measure is flagged approximate.
pub fn surface_measure_i(k: &Body, i: usize, m: usize) -> Result<AtomicSphericalMeasure> {
    let n = k.dim();
    if i > n - 1 {
        return Err(GeomError::IndexOutOfRange { index: i, max: n - 1 });
    }
    if i == 0 {
        let bodies = vec![k; n - 1];
        return mixed_area_measure(&bodies);
    }
    let ball = ball_approx(n, m)?;
    let mut bodies: Vec<&Body> = vec![k; n - 1 - i];
    bodies.extend(std::iter::repeat_n(&ball, i));
    let exact = mixed_area_measure(&bodies)?;
    Ok(AtomicSphericalMeasure::from_parts(n, exact.atoms().to_vec(), true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{generate, BodyGenSpec};
    use crate::mixed::volume::mixed_volume;

    fn boxed(s: &[f64]) -> Body {
        generate(&BodyGenSpec::boxed(s)).unwrap()
    }

    #[test]
    fn unit_square_edges() {
        let sq = boxed(&[1.0, 1.0]);
        let m = mixed_area_measure(&[&sq]).unwrap();
        assert_eq!(m.atoms().len(), 4);
        for u in [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0]] {
            assert!((m.weight_at(u).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!((m.pair_with_support(|u| sq.support_vec(u)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unit_cube_faces() {
        let c = boxed(&[1.0, 1.0, 1.0]);
        let m = surface_measure_i(&c, 0, 0).unwrap();
        assert_eq!(m.atoms().len(), 6);
        assert!((m.total_mass() - 6.0).abs() < 1e-14);
        assert!(m.atoms().iter().all(|a| (a.weight - 1.0).abs() < 1e-14));
    }

    #[test]
    fn distinct_boxes_have_axis_atoms() {
        let (a, b) = (boxed(&[1.0, 2.0, 1.0]), boxed(&[3.0, 1.0, 1.0]));
        let m = mixed_area_measure(&[&a, &b]).unwrap();
        // at ±e₁ the faces are 2×1 and 1×1 rectangles: mixed area (2·1 + 1·1)/2
        assert!((m.weight_at([1.0, 0.0, 0.0]).unwrap() - 1.5).abs() < 1e-14);
        let k = boxed(&[1.0, 1.0, 3.0]);
        let via_measure = m.pair_with_support(|u| k.support_vec(u));
        let direct = mixed_volume(&[&a, &b, &k]).unwrap().value;
        assert!((via_measure - direct).abs() < 1e-13);
    }

    #[test]
    fn segments_allowed_in_plane() {
        let seg = Body::from_coords_allow_degenerate(&[vec![0.0, 0.0], vec![2.0, 0.0]], 2).unwrap();
        let m = mixed_area_measure(&[&seg]).unwrap();
        assert_eq!(m.atoms().len(), 2);
        assert!((m.total_mass() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn ball_measure_in_plane_is_polygon_perimeter() {
        let k = boxed(&[1.0, 1.0]);
        let s1 = surface_measure_i(&k, 1, 64).unwrap();
        assert!(s1.is_approximate());
        let perimeter = 64.0 * 2.0 * (std::f64::consts::PI / 64.0).sin();
        assert!((s1.total_mass() - perimeter).abs() < 1e-12);
        assert!(matches!(surface_measure_i(&k, 2, 64), Err(GeomError::IndexOutOfRange { .. })));
    }
}
