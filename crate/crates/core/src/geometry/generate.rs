//! Deterministic body generators and the polytopal unit-ball approximant.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitCircle, UnitSphere};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

use super::body::Body;
use super::directions;
use super::vector::{scale, Vec3};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BodyKind {
    /// Hull of `count` points: uniform direction, radius uniform in [0.5, 1.5].
    RandomHull { count: usize },
    /// Hull of `±p`: explicit `points` when given, otherwise `count` random ones.
    SymmetricHull {
        #[serde(default)]
        count: usize,
        #[serde(default)]
        points: Option<Vec<Vec3>>,
    },
    /// Axis-parallel box `[0, s₁] × … × [0, s_n]`.
    Box { sides: Vec<f64> },
    /// Regular `k`-gon inscribed in the circle of the given radius (planar only).
    RegularPolygon { k: usize, radius: f64 },
    BallApprox { m: usize },
    DilateOf { of: Box<BodyGenSpec>, c: f64, t: Vec3 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodyGenSpec {
    pub dim: usize,
    #[serde(flatten)]
    pub kind: BodyKind,
    #[serde(default)]
    pub seed: u64,
    /// Random hulls are translated so that the origin is strictly interior.
    #[serde(default)]
    pub origin_interior: bool,
}

impl BodyGenSpec {
    pub fn random_hull(dim: usize, count: usize, seed: u64) -> Self {
        BodyGenSpec { dim, kind: BodyKind::RandomHull { count }, seed, origin_interior: true }
    }

    pub fn symmetric_hull(dim: usize, count: usize, seed: u64) -> Self {
        BodyGenSpec { dim, kind: BodyKind::SymmetricHull { count, points: None }, seed, origin_interior: true }
    }

    pub fn boxed(sides: &[f64]) -> Self {
        BodyGenSpec {
            dim: sides.len(),
            kind: BodyKind::Box { sides: sides.to_vec() },
            seed: 0,
            origin_interior: false,
        }
    }
}

/// Random point with uniform direction and radius uniform in [0.5, 1.5].
pub fn random_point<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec3 {
    let r: f64 = rng.random_range(0.5..1.5);
    if dim == 2 {
        let [x, y]: [f64; 2] = UnitCircle.sample(rng);
        [r * x, r * y, 0.0]
    } else {
        let p: [f64; 3] = UnitSphere.sample(rng);
        scale(p, r)
    }
}

/// Random full-dimensional hull of `count` points, drawn from `rng`.
pub fn random_hull_with<R: Rng + ?Sized>(dim: usize, count: usize, origin_interior: bool, rng: &mut R) -> Result<Body> {
    if count < dim + 1 {
        return Err(GeomError::InvalidParameter(format!("random_hull needs at least {} points", dim + 1)));
    }
    loop {
        let pts: Vec<Vec3> = (0..count).map(|_| random_point(dim, rng)).collect();
        let body = match Body::hull(&pts, dim) {
            Ok(b) => b,
            Err(GeomError::DegenerateInput(_)) => continue,
            Err(e) => return Err(e),
        };
        if origin_interior && !body.contains_origin_interior() {
            return Ok(body.translate(scale(body.vertex_centroid(), -1.0)));
        }
        return Ok(body);
    }
}

pub fn symmetric_hull_with<R: Rng + ?Sized>(dim: usize, count: usize, rng: &mut R) -> Result<Body> {
    if count == 0 {
        return Err(GeomError::InvalidParameter("symmetric_hull needs at least one point".into()));
    }
    loop {
        let half: Vec<Vec3> = (0..count).map(|_| random_point(dim, rng)).collect();
        match mirrored(&half, dim) {
            Err(GeomError::DegenerateInput(_)) => continue,
            other => return other,
        }
    }
}

fn mirrored(points: &[Vec3], dim: usize) -> Result<Body> {
    let all: Vec<Vec3> = points.iter().flat_map(|&p| [p, scale(p, -1.0)]).collect();
    Body::hull(&all, dim)
}

/// Inscribed polytope approximating the unit ball: the regular `m`-gon in the
/// plane; in space the octahedron for `m = 6` and Fibonacci-sphere points otherwise.
pub fn ball_approx(dim: usize, m: usize) -> Result<Body> {
    match dim {
        2 if m >= 3 => Body::hull(&directions::circle_grid(m), 2),
        3 if m == 6 => Body::hull(&directions::axis_directions(), 3),
        3 if m > 6 => Body::hull(&directions::fibonacci_sphere(m), 3),
        2 | 3 => Err(GeomError::TooFewDirections { got: m, min: if dim == 2 { 3 } else { 6 } }),
        _ => Err(GeomError::UnsupportedDimension(dim)),
    }
}

pub fn generate(spec: &BodyGenSpec) -> Result<Body> {
    let dim = spec.dim;
    if dim != 2 && dim != 3 {
        return Err(GeomError::UnsupportedDimension(dim));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match &spec.kind {
        BodyKind::RandomHull { count } => random_hull_with(dim, *count, spec.origin_interior, &mut rng),
        BodyKind::SymmetricHull { count, points } => match points {
            Some(pts) => mirrored(pts, dim),
            None => symmetric_hull_with(dim, *count, &mut rng),
        },
        BodyKind::Box { sides } => {
            if sides.len() != dim {
                return Err(GeomError::DimensionMismatch(dim, sides.len()));
            }
            if sides.iter().any(|&s| !(s > 0.0)) {
                return Err(GeomError::InvalidParameter("box sides must be positive".into()));
            }
            let mut pts = Vec::new();
            for mask in 0..(1usize << dim) {
                let mut p = [0.0; 3];
                for (c, &s) in sides.iter().enumerate() {
                    if mask >> c & 1 == 1 {
                        p[c] = s;
                    }
                }
                pts.push(p);
            }
            Body::hull(&pts, dim)
        }
        BodyKind::RegularPolygon { k, radius } => {
            if dim != 2 {
                return Err(GeomError::UnsupportedDimension(dim));
            }
            if *k < 3 || !(*radius > 0.0) {
                return Err(GeomError::InvalidParameter("regular_polygon needs k ≥ 3 and radius > 0".into()));
            }
            let pts: Vec<Vec3> = directions::circle_grid(*k).into_iter().map(|p| scale(p, *radius)).collect();
            Body::hull(&pts, 2)
        }
        BodyKind::BallApprox { m } => ball_approx(dim, *m),
        BodyKind::DilateOf { of, c, t } => {
            if of.dim != dim {
                return Err(GeomError::DimensionMismatch(dim, of.dim));
            }
            generate(of)?.scale_translate(*c, *t)
        }
    }
}
