//! Quermassintegrals and (p-)mixed quermassintegrals.

use std::f64::consts::PI;

use crate::error::{GeomError, Result};
use crate::geometry::{ball_approx, Body};

use super::area::surface_measure_i;
use super::volume::{mixed_volume, MixedVolumeResult};

/// `W_i(K)` from closed forms: volume, surface area, the edge–angle sum and
/// the ball volume in space; area, half perimeter and `π` in the plane.
pub fn quermassintegral(k: &Body, i: usize) -> Result<f64> {
    let n = k.dim();
    if i > n {
        return Err(GeomError::IndexOutOfRange { index: i, max: n });
    }
    Ok(match (n, i) {
        (_, 0) => k.volume(),
        (2, 1) => k.surface_area() / 2.0,
        (2, 2) => PI,
        (3, 1) => k.surface_area() / 3.0,
        (3, 2) => {
            if !k.is_full_dimensional() {
                return Err(GeomError::DegenerateInput("edge–angle sum needs a solid body".into()));
            }
            k.edge_angle_sum() / 3.0
        }
        _ => 4.0 * PI / 3.0,
    })
}

/// `W_i(K) = V(K,…,K, B,…,B)` by polarization with `ball_approx(dim, m)` for `B`.
pub fn quermassintegral_generic(k: &Body, i: usize, m: usize) -> Result<MixedVolumeResult> {
    let n = k.dim();
    if i > n {
        return Err(GeomError::IndexOutOfRange { index: i, max: n });
    }
    let ball = ball_approx(n, m)?;
    let mut bodies: Vec<&Body> = vec![k; n - i];
    bodies.extend(std::iter::repeat_n(&ball, i));
    mixed_volume(&bodies)
}

/// `W_i(K, L) = (1/n) ∫ h_L dS_i(K, ·)`.
pub fn mixed_quermassintegral(k: &Body, l: &Body, i: usize, m: usize) -> Result<f64> {
    if k.dim() != l.dim() {
        return Err(GeomError::DimensionMismatch(k.dim(), l.dim()));
    }
    let measure = surface_measure_i(k, i, m)?;
    Ok(measure.pair_with_support(|u| l.support_vec(u)))
}

/// `W_{p,i}(K, L) = (1/n) ∫ h_L^p h_K^{1−p} dS_i(K, ·)`.
pub fn p_mixed_quermassintegral(k: &Body, l: &Body, p: f64, i: usize, m: usize) -> Result<f64> {
    if k.dim() != l.dim() {
        return Err(GeomError::DimensionMismatch(k.dim(), l.dim()));
    }
    if !(p >= 1.0) {
        return Err(GeomError::InvalidParameter(format!("p must be ≥ 1, got {p}")));
    }
    k.require_origin_interior("K")?;
    l.require_origin_interior("L")?;
    let measure = surface_measure_i(k, i, m)?;
    let mut acc = 0.0;
    for (j, atom) in measure.atoms().iter().enumerate() {
        let hk = k.support_vec(atom.direction);
        if !(hk > 0.0) {
            return Err(GeomError::NonpositiveSupport { atom: j, value: hk });
        }
        let hl = l.support_vec(atom.direction);
        acc += hl.powf(p) * hk.powf(1.0 - p) * atom.weight;
    }
    Ok(acc / k.dim() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{generate, BodyGenSpec};

    #[test]
    fn unit_cube_closed_forms() {
        let c = generate(&BodyGenSpec::boxed(&[1.0, 1.0, 1.0])).unwrap();
        let expect = [1.0, 2.0, PI, 4.0 * PI / 3.0];
        for (i, w) in expect.iter().enumerate() {
            assert!((quermassintegral(&c, i).unwrap() - w).abs() < 1e-12 * w);
        }
        assert!(matches!(quermassintegral(&c, 4), Err(GeomError::IndexOutOfRange { .. })));
    }

    #[test]
    fn unit_square_half_perimeter() {
        let s = generate(&BodyGenSpec::boxed(&[1.0, 1.0])).unwrap();
        assert_eq!(quermassintegral(&s, 1).unwrap(), 2.0);
    }

    #[test]
    fn generic_path_tracks_closed_form() {
        let k = generate(&BodyGenSpec::random_hull(2, 8, 3)).unwrap();
        let exact = quermassintegral(&k, 1).unwrap();
        let approx = quermassintegral_generic(&k, 1, 512).unwrap().value;
        assert!(approx <= exact && (exact - approx) / exact < 1e-4);
    }

    #[test]
    fn p_mixed_reductions() {
        let k = generate(&BodyGenSpec::random_hull(3, 10, 7)).unwrap();
        let l = generate(&BodyGenSpec::random_hull(3, 10, 8)).unwrap();
        let w = mixed_quermassintegral(&k, &l, 0, 0).unwrap();
        assert!((p_mixed_quermassintegral(&k, &l, 1.0, 0, 0).unwrap() - w).abs() < 1e-13 * w);
        let wk = quermassintegral(&k, 0).unwrap();
        for p in [1.0, 2.0, 5.0] {
            assert!((p_mixed_quermassintegral(&k, &k, p, 0, 0).unwrap() - wk).abs() < 1e-12 * wk);
            let l3 = k.scale_translate(3.0, [0.0; 3]).unwrap();
            let target = 3f64.powf(p) * wk;
            assert!((p_mixed_quermassintegral(&k, &l3, p, 0, 0).unwrap() - target).abs() < 1e-12 * target);
        }
    }
}
