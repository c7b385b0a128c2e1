//! Deterministic direction grids on the unit circle and sphere.

use std::f64::consts::PI;

use super::vector::Vec3;

/// Vertices of the regular `m`-gon inscribed in the unit circle, first at angle 0.
pub fn circle_grid(m: usize) -> Vec<Vec3> {
    (0..m)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / m as f64;
            [t.cos(), t.sin(), 0.0]
        })
        .collect()
}

/// Golden-spiral (Fibonacci) points on the unit sphere.
pub fn fibonacci_sphere(m: usize) -> Vec<Vec3> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..m)
        .map(|k| {
            let z = 1.0 - (2 * k + 1) as f64 / m as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let t = golden * k as f64;
            [r * t.cos(), r * t.sin(), z]
        })
        .collect()
}

/// The six signed coordinate axes.
pub fn axis_directions() -> Vec<Vec3> {
    vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ]
}

/// The canonical `m`-point grid in the given dimension.
pub fn grid(dim: usize, m: usize) -> Vec<Vec3> {
    if dim == 2 {
        circle_grid(m)
    } else {
        fibonacci_sphere(m)
    }
}
