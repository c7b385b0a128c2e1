//! Planar convex hull (Andrew's monotone chain) on exact orientation predicates.

use robust::{orient2d, Coord};

/// Turns whose sine falls below this are treated as straight.
pub const COLLINEAR_SINE: f64 = 1e-10;

/// Result of a planar hull: extreme point indices, counterclockwise, starting
/// from the lexicographically smallest point.
#[derive(Debug, Clone, PartialEq)]
pub enum Hull2 {
    Empty,
    Point(usize),
    Segment(usize, usize),
    Polygon(Vec<usize>),
}

impl Hull2 {
    pub fn indices(&self) -> Vec<usize> {
        match self {
            Hull2::Empty => vec![],
            Hull2::Point(a) => vec![*a],
            Hull2::Segment(a, b) => vec![*a, *b],
            Hull2::Polygon(v) => v.clone(),
        }
    }
}

#[inline]
fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    orient2d(
        Coord { x: a[0], y: a[1] },
        Coord { x: b[0], y: b[1] },
        Coord { x: c[0], y: c[1] },
    )
}

fn nearly_straight(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> bool {
    let e1 = [b[0] - a[0], b[1] - a[1]];
    let e2 = [c[0] - b[0], c[1] - b[1]];
    let cr = e1[0] * e2[1] - e1[1] * e2[0];
    let l1 = e1[0].hypot(e1[1]);
    let l2 = e2[0].hypot(e2[1]);
    cr.abs() <= COLLINEAR_SINE * l1 * l2
}

pub fn convex_hull_2d(points: &[[f64; 2]]) -> Hull2 {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        points[i][0]
            .total_cmp(&points[j][0])
            .then(points[i][1].total_cmp(&points[j][1]))
    });
    order.dedup_by(|a, b| points[*a] == points[*b]);
    match order.len() {
        0 => return Hull2::Empty,
        1 => return Hull2::Point(order[0]),
        _ => {}
    }

    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2
            && orient(points[lower[lower.len() - 2]], points[lower[lower.len() - 1]], points[i]) <= 0.0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2
            && orient(points[upper[upper.len() - 2]], points[upper[upper.len() - 1]], points[i]) <= 0.0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    let mut ring = lower;
    ring.extend(upper);

    // drop vertices whose turn is numerically flat
    loop {
        if ring.len() < 3 {
            break;
        }
        let n = ring.len();
        let flat = (0..n).find(|&k| {
            nearly_straight(points[ring[(k + n - 1) % n]], points[ring[k]], points[ring[(k + 1) % n]])
        });
        match flat {
            Some(k) => {
                ring.remove(k);
            }
            None => break,
        }
    }

    if ring.len() < 3 {
        let first = order[0];
        let last = *order.last().unwrap();
        return Hull2::Segment(first, last);
    }
    let start = (0..ring.len())
        .min_by(|&a, &b| {
            let (p, q) = (points[ring[a]], points[ring[b]]);
            p[0].total_cmp(&q[0]).then(p[1].total_cmp(&q[1]))
        })
        .unwrap();
    ring.rotate_left(start);
    Hull2::Polygon(ring)
}

/// Signed shoelace area of a polygon given in order.
pub fn polygon_area(points: &[[f64; 2]], ring: &[usize]) -> f64 {
    let n = ring.len();
    if n < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for k in 0..n {
        let a = points[ring[k]];
        let b = points[ring[(k + 1) % n]];
        acc += a[0] * b[1] - a[1] * b[0];
    }
    0.5 * acc
}

/// Area of the convex hull of a planar point set (zero when degenerate).
pub fn hull_area(points: &[[f64; 2]]) -> f64 {
    match convex_hull_2d(points) {
        Hull2::Polygon(ring) => polygon_area(points, &ring),
        _ => 0.0,
    }
}
