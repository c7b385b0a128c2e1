//! Convex polytopes in V-representation with derived facet structure.

use crate::error::{GeomError, Result};

use super::directions;
use super::hull2::{convex_hull_2d, Hull2};
use super::hull3::{convex_hull_3d, Hull3};
use super::vector::{self, add, cross, dot, norm, scale, sub, Vec3};

/// Unit vector in R² or R³ (planar directions carry `z = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction(Vec3);

impl Direction {
    /// Normalizes `coords`; fails on the zero vector.
    pub fn new(coords: &[f64]) -> Result<Self> {
        if coords.is_empty() || coords.len() > 3 {
            return Err(GeomError::UnsupportedDimension(coords.len()));
        }
        let v = vector::from_slice(coords);
        let n = norm(v);
        if !(n > 0.0) || !n.is_finite() {
            return Err(GeomError::InvalidParameter("direction must be a nonzero finite vector".into()));
        }
        Ok(Direction(scale(v, 1.0 / n)))
    }

    pub fn coords(&self) -> Vec3 {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    /// Outward unit normal.
    pub normal: Vec3,
    /// Support value in the normal direction.
    pub offset: f64,
    /// Vertex indices: edge endpoints in 2D, counterclockwise polygon in 3D.
    pub vertices: Vec<usize>,
}

/// A convex body given by its extreme points.
///
/// Full-dimensional bodies carry their facets; lower-dimensional ones are
/// representable (they arise as summands and sub-sums) and have volume zero.
/// A planar segment keeps its two "sides" as facets, and so does a flat
/// polygon in space, so that their surface area measures are well defined.
#[derive(Debug, Clone, PartialEq)]
pub struct Body {
    dim: usize,
    vertices: Vec<Vec3>,
    facets: Vec<Facet>,
    /// `(length, facet_a, facet_b)` for each edge between two facets (3D only).
    ridges: Vec<(f64, usize, usize)>,
    affine_dim: usize,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 3 {
        Ok(())
    } else {
        Err(GeomError::UnsupportedDimension(dim))
    }
}

impl Body {
    /// Convex hull of `points`; rejects sets that are not full-dimensional.
    pub fn hull(points: &[Vec3], dim: usize) -> Result<Body> {
        let body = Self::hull_allow_degenerate(points, dim)?;
        if !body.is_full_dimensional() {
            return Err(GeomError::DegenerateInput(format!(
                "points span a {}-dimensional affine subspace of R^{}",
                body.affine_dim, dim
            )));
        }
        Ok(body)
    }

    /// Convex hull of coordinate rows of length `dim`.
    pub fn from_coords(rows: &[Vec<f64>], dim: usize) -> Result<Body> {
        check_dim(dim)?;
        let pts = coords_to_points(rows, dim)?;
        Self::hull(&pts, dim)
    }

    pub fn from_coords_allow_degenerate(rows: &[Vec<f64>], dim: usize) -> Result<Body> {
        check_dim(dim)?;
        let pts = coords_to_points(rows, dim)?;
        Self::hull_allow_degenerate(&pts, dim)
    }

    /// Convex hull of `points`, keeping points, segments and flat polygons.
    pub fn hull_allow_degenerate(points: &[Vec3], dim: usize) -> Result<Body> {
        check_dim(dim)?;
        if points.is_empty() {
            return Err(GeomError::DegenerateInput("empty point set".into()));
        }
        if points.iter().any(|p| p.iter().any(|c| !c.is_finite())) {
            return Err(GeomError::InvalidParameter("non-finite coordinate".into()));
        }
        if dim == 2 {
            let flat: Vec<Vec3> = points.iter().map(|p| [p[0], p[1], 0.0]).collect();
            Ok(Self::hull_planar(&flat))
        } else {
            Ok(Self::hull_spatial(points))
        }
    }

    fn hull_planar(points: &[Vec3]) -> Body {
        let flat: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
        match convex_hull_2d(&flat) {
            Hull2::Empty => unreachable!("non-empty input"),
            Hull2::Point(a) => Body::assemble(2, 0, points, &[a], vec![], vec![]),
            Hull2::Segment(a, b) => {
                let e = sub(points[b], points[a]);
                let n = vector::normalize([e[1], -e[0], 0.0]);
                let facets = vec![
                    (n, vec![a, b]),
                    (scale(n, -1.0), vec![b, a]),
                ];
                Body::assemble(2, 1, points, &[a, b], facets, vec![])
            }
            Hull2::Polygon(ring) => {
                let k = ring.len();
                let facets = (0..k)
                    .map(|j| {
                        let (a, b) = (ring[j], ring[(j + 1) % k]);
                        let e = sub(points[b], points[a]);
                        (vector::normalize([e[1], -e[0], 0.0]), vec![a, b])
                    })
                    .collect();
                Body::assemble(2, 2, points, &ring, facets, vec![])
            }
        }
    }

    fn hull_spatial(points: &[Vec3]) -> Body {
        match convex_hull_3d(points) {
            Hull3::Empty => unreachable!("non-empty input"),
            Hull3::Point(a) => Body::assemble(3, 0, points, &[a], vec![], vec![]),
            Hull3::Segment(a, b) => Body::assemble(3, 1, points, &[a, b], vec![], vec![]),
            Hull3::Planar { normal, polygon } => {
                let mut back = polygon.clone();
                back.reverse();
                let facets = vec![(normal, polygon.clone()), (scale(normal, -1.0), back)];
                Body::assemble(3, 2, points, &polygon, facets, vec![])
            }
            Hull3::Full { facets, ridges } => {
                let mut used: Vec<usize> = facets.iter().flat_map(|f| f.polygon.iter().copied()).collect();
                used.sort_unstable();
                used.dedup();
                let raw = facets.into_iter().map(|f| (f.normal, f.polygon)).collect();
                let ridges = ridges.into_iter().map(|r| (r.length, r.facets.0, r.facets.1)).collect();
                Body::assemble(3, 3, points, &used, raw, ridges)
            }
        }
    }

    /// Builds the canonical body: vertices sorted lexicographically, facet
    /// indices remapped, offsets taken as the maximum over facet vertices.
    fn assemble(
        dim: usize,
        affine_dim: usize,
        points: &[Vec3],
        extreme: &[usize],
        facets: Vec<(Vec3, Vec<usize>)>,
        ridges: Vec<(f64, usize, usize)>,
    ) -> Body {
        let mut order: Vec<usize> = extreme.to_vec();
        order.sort_by(|&a, &b| vector::lex_cmp(&points[a], &points[b]));
        order.dedup_by(|a, b| points[*a] == points[*b]);
        let vertices: Vec<Vec3> = order.iter().map(|&i| points[i]).collect();
        let lookup = |i: usize| -> usize {
            vertices
                .binary_search_by(|v| vector::lex_cmp(v, &points[i]))
                .expect("facet vertex is extreme")
        };
        let facets = facets
            .into_iter()
            .map(|(normal, idx)| {
                let vertices_idx: Vec<usize> = idx.iter().map(|&i| lookup(i)).collect();
                let offset = vertices_idx
                    .iter()
                    .map(|&k| dot(normal, vertices[k]))
                    .fold(f64::NEG_INFINITY, f64::max);
                Facet { normal, offset, vertices: vertices_idx }
            })
            .collect();
        Body { dim, vertices, facets, ridges, affine_dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    /// Vertex coordinates truncated to the ambient dimension.
    pub fn vertex_coords(&self) -> Vec<Vec<f64>> {
        self.vertices.iter().map(|v| v[..self.dim].to_vec()).collect()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    /// Support function `max_{v} v·u` for an arbitrary (not necessarily unit) vector.
    pub fn support_vec(&self, u: Vec3) -> f64 {
        self.vertices.iter().map(|&v| dot(v, u)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn support(&self, u: &Direction) -> f64 {
        self.support_vec(u.0)
    }

    /// Euclidean radius of the smallest origin-centred ball containing the body.
    pub fn radius(&self) -> f64 {
        self.vertices.iter().map(|&v| norm(v)).fold(0.0, f64::max)
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, &a) in self.vertices.iter().enumerate() {
            for &b in &self.vertices[i + 1..] {
                d = d.max(norm(sub(a, b)));
            }
        }
        d
    }

    pub fn vertex_centroid(&self) -> Vec3 {
        let s = self.vertices.iter().fold([0.0; 3], |acc, &v| add(acc, v));
        scale(s, 1.0 / self.vertices.len() as f64)
    }

    /// `(n−1)`-dimensional measure of facet `k`: edge length in 2D, polygon area in 3D.
    pub fn facet_area(&self, k: usize) -> f64 {
        let f = &self.facets[k];
        if self.dim == 2 {
            return norm(sub(self.vertices[f.vertices[1]], self.vertices[f.vertices[0]]));
        }
        let ring = &f.vertices;
        let origin = self.vertices[ring[0]];
        let mut acc = [0.0; 3];
        for j in 1..ring.len() - 1 {
            let a = sub(self.vertices[ring[j]], origin);
            let b = sub(self.vertices[ring[j + 1]], origin);
            acc = add(acc, cross(a, b));
        }
        0.5 * dot(acc, f.normal).abs()
    }

    /// Perimeter in 2D, surface area in 3D (both sides counted for flat bodies).
    pub fn surface_area(&self) -> f64 {
        (0..self.facets.len()).map(|k| self.facet_area(k)).sum()
    }

    /// Fan decomposition from the vertex centroid: pyramids over facets.
    pub fn volume(&self) -> f64 {
        if !self.is_full_dimensional() {
            return 0.0;
        }
        let c = self.vertex_centroid();
        let n = self.dim as f64;
        (0..self.facets.len())
            .map(|k| {
                let f = &self.facets[k];
                self.facet_area(k) * (f.offset - dot(f.normal, c))
            })
            .sum::<f64>()
            / n
    }

    /// Half the sum of edge length times exterior dihedral angle (3D).
    pub fn edge_angle_sum(&self) -> f64 {
        0.5 * self
            .ridges
            .iter()
            .map(|&(len, a, b)| {
                let (na, nb) = (self.facets[a].normal, self.facets[b].normal);
                len * norm(cross(na, nb)).atan2(dot(na, nb))
            })
            .sum::<f64>()
    }

    /// Strict interiority of the origin: every facet offset is positive.
    pub fn contains_origin_interior(&self) -> bool {
        let tol = 1e-12 * self.radius().max(1.0);
        self.is_full_dimensional() && self.facets.iter().all(|f| f.offset > tol)
    }

    pub fn require_origin_interior(&self, what: &str) -> Result<()> {
        if self.contains_origin_interior() {
            Ok(())
        } else {
            Err(GeomError::OriginNotInterior(what.to_string()))
        }
    }

    /// Origin symmetry of the vertex set, within `tol` per coordinate.
    pub fn is_origin_symmetric(&self, tol: f64) -> bool {
        self.vertices.iter().all(|&v| {
            let m = scale(v, -1.0);
            self.vertices.iter().any(|&w| norm(sub(w, m)) <= tol)
        })
    }

    /// `c·K + t`.
    pub fn scale_translate(&self, c: f64, t: Vec3) -> Result<Body> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(GeomError::NonpositiveScale(c));
        }
        let t = if self.dim == 2 { [t[0], t[1], 0.0] } else { t };
        let map = |v: Vec3| add(scale(v, c), t);
        let mut out = self.clone();
        for v in &mut out.vertices {
            *v = map(*v);
        }
        for f in &mut out.facets {
            f.offset = f.offset * c + dot(f.normal, t);
        }
        for r in &mut out.ridges {
            r.0 *= c;
        }
        // ordering is preserved by positive scaling plus translation only up to ties; re-sort
        let mut perm: Vec<usize> = (0..out.vertices.len()).collect();
        perm.sort_by(|&a, &b| vector::lex_cmp(&out.vertices[a], &out.vertices[b]));
        if perm.iter().enumerate().any(|(k, &p)| k != p) {
            let mut inverse = vec![0; perm.len()];
            for (k, &p) in perm.iter().enumerate() {
                inverse[p] = k;
            }
            out.vertices = perm.iter().map(|&p| out.vertices[p]).collect();
            for f in &mut out.facets {
                for v in &mut f.vertices {
                    *v = inverse[*v];
                }
            }
        }
        Ok(out)
    }

    pub fn translate(&self, t: Vec3) -> Body {
        self.scale_translate(1.0, t).expect("unit scale")
    }

    /// Convex hull of all pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Body) -> Result<Body> {
        if self.dim != other.dim {
            return Err(GeomError::DimensionMismatch(self.dim, other.dim));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for &a in &self.vertices {
            for &b in &other.vertices {
                pts.push(add(a, b));
            }
        }
        Body::hull_allow_degenerate(&pts, self.dim)
    }

    /// Minkowski combination `Σ c_i K_i` with nonnegative coefficients.
    pub fn linear_combination(terms: &[(f64, &Body)]) -> Result<Body> {
        let active: Vec<&(f64, &Body)> = terms.iter().filter(|(c, _)| *c != 0.0).collect();
        let dim = terms.first().map(|t| t.1.dim).ok_or_else(|| GeomError::DegenerateInput("no summands".into()))?;
        if let Some(t) = terms.iter().find(|t| t.1.dim != dim) {
            return Err(GeomError::DimensionMismatch(dim, t.1.dim));
        }
        if active.is_empty() {
            return Body::hull_allow_degenerate(&[[0.0; 3]], dim);
        }
        let mut acc: Vec<Vec3> = active[0].1.vertices.iter().map(|&v| scale(v, active[0].0)).collect();
        for (k, (c, body)) in active.iter().enumerate().skip(1) {
            let mut next = Vec::with_capacity(acc.len() * body.vertices.len());
            for &a in &acc {
                for &b in &body.vertices {
                    next.push(add(a, scale(b, *c)));
                }
            }
            acc = if k + 1 < active.len() {
                Body::hull_allow_degenerate(&next, dim)?.vertices
            } else {
                next
            };
        }
        Body::hull_allow_degenerate(&acc, dim)
    }

    /// Pairs of facet indices sharing an edge (solid bodies in space only).
    pub fn ridge_facet_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.ridges.iter().map(|&(_, a, b)| (a, b))
    }

    pub fn facet_normals(&self) -> impl Iterator<Item = Vec3> + '_ {
        self.facets.iter().map(|f| f.normal)
    }
}

fn coords_to_points(rows: &[Vec<f64>], dim: usize) -> Result<Vec<Vec3>> {
    rows.iter()
        .map(|r| {
            if r.len() != dim {
                Err(GeomError::DimensionMismatch(dim, r.len()))
            } else {
                Ok(vector::from_slice(r))
            }
        })
        .collect()
}

/// Direction grid used to evaluate sup-norm distances between support functions.
fn comparison_grid(dim: usize) -> Vec<Vec3> {
    if dim == 2 {
        directions::circle_grid(360)
    } else {
        directions::fibonacci_sphere(2000)
    }
}

/// `max |h_A(u) − h_B(u)|` over both facet-normal sets and a fixed fine grid.
pub fn hausdorff_distance(a: &Body, b: &Body) -> Result<f64> {
    if a.dim != b.dim {
        return Err(GeomError::DimensionMismatch(a.dim, b.dim));
    }
    let mut dirs: Vec<Vec3> = a.facet_normals().chain(b.facet_normals()).collect();
    dirs.extend(comparison_grid(a.dim));
    Ok(dirs
        .into_iter()
        .map(|u| (a.support_vec(u) - b.support_vec(u)).abs())
        .fold(0.0, f64::max))
}

/// Recovers `(c, t)` with `A = c·B + t` when it holds within `tol·diam(B)`.
pub fn detect_dilate(a: &Body, b: &Body, tol: f64) -> Option<(f64, Vec3)> {
    if a.dim != b.dim || !a.is_full_dimensional() || !b.is_full_dimensional() {
        return None;
    }
    if a.vertices.len() != b.vertices.len() {
        return None;
    }
    let (va, vb) = (a.volume(), b.volume());
    if !(va > 0.0 && vb > 0.0) {
        return None;
    }
    let c = (va / vb).powf(1.0 / a.dim as f64);
    let t = sub(a.vertex_centroid(), scale(b.vertex_centroid(), c));
    let threshold = tol * b.diameter();
    let matches = a
        .facet_normals()
        .chain(b.facet_normals())
        .all(|u| (a.support_vec(u) - (c * b.support_vec(u) + dot(t, u))).abs() <= threshold);
    matches.then_some((c, t))
}
