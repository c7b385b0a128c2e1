//! Outer polytopal approximation of the Firey p-sum `K +_p L`.

use crate::error::{GeomError, Result};

use super::body::Body;
use super::directions;
use super::vector::{add, cross, dot, norm, normalize, scale, Vec3};

/// Smallest direction grid accepted per dimension.
pub fn min_directions(dim: usize) -> usize {
    if dim == 2 {
        3
    } else {
        8
    }
}

/// `(a^p + b^p)^{1/p}` without overflow for large `p`.
pub fn p_norm_pair(a: f64, b: f64, p: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == 0.0 {
        return 0.0;
    }
    hi * (1.0 + (lo / hi).powf(p)).powf(1.0 / p)
}

/// Intersection of `{x : x·u ≤ b}` over `(u, b)`, with every `b > 0`.
///
/// Vertices are recovered by polarity: facets `{y·n = o}` of the hull of the
/// points `u / b` map to vertices `n / o`.
pub fn halfspace_intersection(dim: usize, halfspaces: &[(Vec3, f64)]) -> Result<Body> {
    if halfspaces.iter().any(|&(_, b)| !(b > 0.0)) {
        return Err(GeomError::InfeasibleIntersection);
    }
    let dual: Vec<Vec3> = halfspaces.iter().map(|&(u, b)| scale(u, 1.0 / b)).collect();
    let polar = Body::hull_allow_degenerate(&dual, dim)?;
    if !polar.contains_origin_interior() {
        return Err(GeomError::InfeasibleIntersection);
    }
    let verts: Vec<Vec3> = polar.facets().iter().map(|f| scale(f.normal, 1.0 / f.offset)).collect();
    Body::hull(&verts, dim)
}

/// Halfspace intersection with right-hand sides `(h_K^p + h_L^p)^{1/p}`;
/// contains the true Firey sum.
///
/// The directions are the canonical `m`-direction grid, the facet normals of
/// `K + L`, and (in space) points along the great arcs joining adjacent facet
/// normals of `K` and of `L`, at the grid spacing. The sum has flat faces at
/// the first set and ruled surface pieces over the arcs; a plain grid misses
/// both and errs to first order there, while the curved remainder is
/// approximated to second order in the spacing.
pub fn firey_sum_approx(k: &Body, l: &Body, p: f64, m: usize) -> Result<Body> {
    if k.dim() != l.dim() {
        return Err(GeomError::DimensionMismatch(k.dim(), l.dim()));
    }
    if !(p >= 1.0) {
        return Err(GeomError::InvalidParameter(format!("Firey sum needs p ≥ 1, got {p}")));
    }
    let dim = k.dim();
    let min = min_directions(dim);
    if m < min {
        return Err(GeomError::TooFewDirections { got: m, min });
    }
    k.require_origin_interior("K")?;
    l.require_origin_interior("L")?;
    let mut dirs = directions::grid(dim, m);
    dirs.extend(k.minkowski_sum(l)?.facet_normals());
    if dim == 3 {
        let spacing = (4.0 * std::f64::consts::PI / m as f64).sqrt();
        for body in [k, l] {
            dirs.extend(ridge_arc_directions(body, spacing));
        }
    }
    let halfspaces: Vec<(Vec3, f64)> = dirs
        .into_iter()
        .map(|u| (u, p_norm_pair(k.support_vec(u), l.support_vec(u), p)))
        .collect();
    halfspace_intersection(dim, &halfspaces)
}

/// Interior points of each ridge arc of `body`, spaced at most `spacing` apart.
fn ridge_arc_directions(body: &Body, spacing: f64) -> Vec<Vec3> {
    let facets = body.facets();
    let mut out = Vec::new();
    for (a, b) in body.ridge_facet_pairs() {
        let (n1, n2) = (facets[a].normal, facets[b].normal);
        let angle = norm(cross(n1, n2)).atan2(dot(n1, n2));
        let steps = (angle / spacing).ceil() as usize;
        for j in 1..steps {
            let t = j as f64 / steps as f64;
            let (s1, s2) = (((1.0 - t) * angle).sin(), (t * angle).sin());
            out.push(normalize(add(scale(n1, s1), scale(n2, s2))));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::body::hausdorff_distance;
    use crate::geometry::generate::{generate, BodyGenSpec};

    fn centered_box(a: f64, b: f64) -> Body {
        Body::from_coords(&[vec![-a, -b], vec![a, -b], vec![a, b], vec![-a, b]], 2).unwrap()
    }

    #[test]
    fn p_one_with_aligned_grid_is_minkowski_sum() {
        let (k, l) = (centered_box(1.0, 0.5), centered_box(0.25, 2.0));
        let approx = firey_sum_approx(&k, &l, 1.0, 64).unwrap();
        let exact = k.minkowski_sum(&l).unwrap();
        assert!(hausdorff_distance(&approx, &exact).unwrap() < 1e-12);
    }

    #[test]
    fn equal_summands_scale_by_root_two() {
        let k = centered_box(1.0, 0.5);
        for p in [1.0, 2.0, 3.5] {
            let approx = firey_sum_approx(&k, &k, p, 32).unwrap();
            let target = k.scale_translate(2f64.powf(1.0 / p), [0.0; 3]).unwrap();
            assert!(hausdorff_distance(&approx, &target).unwrap() < 1e-12);
        }
    }

    #[test]
    fn p_one_is_exact_and_p_two_converges() {
        let k = generate(&BodyGenSpec::random_hull(3, 10, 1)).unwrap();
        let l = generate(&BodyGenSpec::random_hull(3, 10, 2)).unwrap();
        let exact = k.minkowski_sum(&l).unwrap();
        let one = firey_sum_approx(&k, &l, 1.0, 64).unwrap();
        assert!(hausdorff_distance(&one, &exact).unwrap() < 1e-9);
        let mut last = f64::INFINITY;
        for m in [64, 256, 1024] {
            let approx = firey_sum_approx(&k, &l, 2.0, m).unwrap();
            for u in directions::fibonacci_sphere(2000) {
                let h = p_norm_pair(k.support_vec(u), l.support_vec(u), 2.0);
                assert!(approx.support_vec(u) >= h - 1e-9);
            }
            assert!(approx.volume() < last);
            last = approx.volume();
        }
    }

    #[test]
    fn too_few_directions_rejected() {
        let k = centered_box(1.0, 1.0);
        assert!(matches!(firey_sum_approx(&k, &k, 1.0, 2), Err(GeomError::TooFewDirections { .. })));
        let off = k.translate([5.0, 0.0, 0.0]);
        assert!(matches!(firey_sum_approx(&off, &k, 1.0, 16), Err(GeomError::OriginNotInterior(_))));
    }
}
