//! Randomized invariants of the geometry, mixed-volume, Orlicz and lab layers.

use mvlab::geometry::vector::{dot, normalize};
use mvlab::geometry::{ball_approx, detect_dilate, firey_sum_approx, generate, Body, BodyGenSpec};
use mvlab::lab::{check, af_product, proof_trace, CheckParams, InequalityId, Status, Tolerance};
use mvlab::mixed::{mixed_area_measure, mixed_volume};
use mvlab::orlicz::{
    lp_multiple_mixed_volume, mixed_volume_measure, orlicz_mixed_volume_measure, orlicz_multiple_mixed_volume,
    OrliczFunction,
};
use proptest::prelude::*;

fn body(dim: usize, seed: u64) -> Body {
    generate(&BodyGenSpec::random_hull(dim, 9, seed)).unwrap()
}

fn bodies(dim: usize, count: usize, seed: u64) -> Vec<Body> {
    (0..count).map(|k| body(dim, seed.wrapping_mul(31).wrapping_add(k as u64))).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn phis() -> Vec<OrliczFunction> {
    vec![
        OrliczFunction::power(1.0).unwrap(),
        OrliczFunction::power(2.0).unwrap(),
        OrliczFunction::exp_normalized(1.0).unwrap(),
        OrliczFunction::piecewise_linear(vec![[0.0, 0.0], [0.5, 0.2], [1.0, 1.0], [3.0, 6.0]]).unwrap(),
    ]
}

fn dims() -> impl Strategy<Value = usize> {
    prop_oneof![Just(2usize), Just(3usize)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn support_is_additive(dim in dims(), seed in any::<u64>(), dirs in proptest::collection::vec(proptest::array::uniform3(-1.0f64..1.0), 20)) {
        let (a, b) = (body(dim, seed), body(dim, seed ^ 1));
        let sum = a.minkowski_sum(&b).unwrap();
        for d in dirs {
            let mut u = d;
            if dim == 2 { u[2] = 0.0; }
            if u.iter().map(|x| x * x).sum::<f64>() < 1e-6 { continue; }
            let u = normalize(u);
            let (ha, hb) = (a.support_vec(u), b.support_vec(u));
            prop_assert!((sum.support_vec(u) - ha - hb).abs() <= 1e-9 * (1.0 + ha.abs() + hb.abs()));
        }
    }

    #[test]
    fn volume_homogeneous_and_translation_invariant(dim in dims(), seed in any::<u64>(), c in 0.1f64..10.0, t in proptest::array::uniform3(-5.0f64..5.0)) {
        let k = body(dim, seed);
        let mut t = t;
        if dim == 2 { t[2] = 0.0; }
        let scaled = k.scale_translate(c, [0.0; 3]).unwrap();
        prop_assert!(rel(scaled.volume(), c.powi(dim as i32) * k.volume()) < 1e-9);
        prop_assert!(rel(k.translate(t).volume(), k.volume()) < 1e-9);
    }

    #[test]
    fn hull_is_idempotent(dim in dims(), seed in any::<u64>()) {
        let k = body(dim, seed);
        let again = Body::hull(k.vertices(), dim).unwrap();
        prop_assert_eq!(again.vertices(), k.vertices());
    }

    #[test]
    fn dilates_are_detected(dim in dims(), seed in any::<u64>(), c in 0.1f64..10.0, t in proptest::array::uniform3(-2.0f64..2.0)) {
        let k = body(dim, seed);
        let mut t = t;
        if dim == 2 { t[2] = 0.0; }
        let (c2, t2) = detect_dilate(&k.scale_translate(c, t).unwrap(), &k, 1e-9).expect("dilate recognized");
        prop_assert!((c2 - c).abs() <= 1e-9 * c);
        for j in 0..3 { prop_assert!((t2[j] - t[j]).abs() <= 1e-9 * (1.0 + c)); }
    }

    #[test]
    fn firey_one_contains_minkowski_sum(dim in dims(), seed in any::<u64>()) {
        let (a, b) = (body(dim, seed), body(dim, seed ^ 9));
        let exact = a.minkowski_sum(&b).unwrap();
        let m = if dim == 2 { 64 } else { 256 };
        let approx = firey_sum_approx(&a, &b, 1.0, m).unwrap();
        let finer = firey_sum_approx(&a, &b, 1.0, 4 * m).unwrap();
        for u in mvlab::geometry::directions::grid(dim, m) {
            prop_assert!(approx.support_vec(u) >= exact.support_vec(u) - 1e-9);
        }
        prop_assert!(finer.volume() <= approx.volume() + 1e-9);
        prop_assert!(finer.volume() >= exact.volume() - 1e-9);
    }

    #[test]
    fn mixed_volume_is_symmetric(seed in any::<u64>()) {
        let bs = bodies(3, 3, seed);
        let v = mixed_volume(&[&bs[0], &bs[1], &bs[2]]).unwrap().value;
        for p in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let w = mixed_volume(&[&bs[p[0]], &bs[p[1]], &bs[p[2]]]).unwrap().value;
            prop_assert!(rel(v, w) < 1e-10);
        }
    }

    #[test]
    fn mixed_volume_is_multilinear_and_homogeneous(dim in dims(), seed in any::<u64>(), c in 0.1f64..10.0) {
        let bs = bodies(dim, dim + 1, seed);
        let rest: Vec<&Body> = bs[2..].iter().collect();
        let with = |first: &Body| {
            let mut v = vec![first];
            v.extend(rest.iter().copied());
            mixed_volume(&v).unwrap().value
        };
        let sum = bs[0].minkowski_sum(&bs[1]).unwrap();
        prop_assert!(rel(with(&sum), with(&bs[0]) + with(&bs[1])) < 1e-9);
        prop_assert!(rel(with(&bs[0].scale_translate(c, [0.0; 3]).unwrap()), c * with(&bs[0])) < 1e-9);
        prop_assert!(rel(with(&bs[0].translate([3.0, -1.0, 0.0])), with(&bs[0])) < 1e-9);
    }

    #[test]
    fn mixed_volume_is_monotone(dim in dims(), seed in any::<u64>()) {
        let bs = bodies(dim, dim, seed);
        let bigger = {
            let mut pts = bs[0].vertices().to_vec();
            pts.extend(body(dim, seed ^ 77).vertices().iter().map(|v| [v[0] * 1.3, v[1] * 1.3, v[2] * 1.3]));
            Body::hull(&pts, dim).unwrap()
        };
        prop_assert!(bs[0].facet_normals().all(|u| bigger.support_vec(u) >= bs[0].support_vec(u) - 1e-12));
        let mut small: Vec<&Body> = bs.iter().collect();
        let v = mixed_volume(&small).unwrap().value;
        small[0] = &bigger;
        prop_assert!(v <= mixed_volume(&small).unwrap().value + 1e-9);
    }

    #[test]
    fn measure_represents_mixed_volume(dim in dims(), seed in any::<u64>()) {
        let bs = bodies(dim, dim, seed);
        let refs: Vec<&Body> = bs.iter().collect();
        let s = mixed_area_measure(&refs[..dim - 1]).unwrap();
        let rep = s.pair_with_support(|u| bs[dim - 1].support_vec(u));
        prop_assert!(rel(rep, mixed_volume(&refs).unwrap().value) < 1e-9);
        let r = s.resultant();
        prop_assert!(dot(r, r).sqrt() < 1e-9 * s.total_mass().max(1.0));
    }

    #[test]
    fn orlicz_reduction_and_mass(dim in dims(), seed in any::<u64>(), which in 0usize..4) {
        let bs = bodies(dim, dim + 1, seed);
        let phi = &phis()[which];
        let ls: Vec<&Body> = bs[..dim - 1].iter().collect();
        let (kn, ln) = (&bs[dim], &bs[dim - 1]);
        let mut all = ls.clone();
        all.push(ln);
        let plain = mixed_volume_measure(&all).unwrap();
        let same = orlicz_mixed_volume_measure(&ls, ln, ln, phi).unwrap();
        prop_assert_eq!(plain.atoms().len(), same.atoms().len());
        for (a, b) in plain.atoms().iter().zip(same.atoms()) {
            prop_assert_eq!(a.direction, b.direction);
            prop_assert!((a.weight - b.weight).abs() <= 1e-12 * a.weight.max(1.0));
        }
        let mu = orlicz_mixed_volume_measure(&ls, kn, ln, phi).unwrap();
        let v_phi = orlicz_multiple_mixed_volume(&ls, kn, ln, phi).unwrap();
        prop_assert!(rel(mu.total_mass(), v_phi) < 1e-10);
        prop_assert!(rel(plain.total_mass(), mixed_volume(&all).unwrap().value) < 1e-10);
    }

    #[test]
    fn power_phi_agrees_with_lp(dim in dims(), seed in any::<u64>(), p in 1.0f64..6.0) {
        let bs = bodies(dim, dim + 1, seed);
        let ls: Vec<&Body> = bs[..dim - 1].iter().collect();
        let a = orlicz_multiple_mixed_volume(&ls, &bs[dim], &bs[dim - 1], &OrliczFunction::power(p).unwrap()).unwrap();
        let b = lp_multiple_mixed_volume(&ls, &bs[dim], &bs[dim - 1], p).unwrap();
        prop_assert!(rel(a, b) < 1e-12);
    }

    #[test]
    fn orlicz_monotone_in_k_and_covariant(dim in dims(), seed in any::<u64>(), which in 0usize..4, c in 0.2f64..5.0) {
        let bs = bodies(dim, dim + 1, seed);
        let phi = &phis()[which];
        let ls: Vec<&Body> = bs[..dim - 1].iter().collect();
        let (k, l) = (&bs[dim], &bs[dim - 1]);
        let mut pts = k.vertices().to_vec();
        pts.extend(body(dim, seed ^ 5).vertices());
        let bigger = Body::hull(&pts, dim).unwrap();
        let v_small = orlicz_multiple_mixed_volume(&ls, k, l, phi).unwrap();
        prop_assert!(v_small <= orlicz_multiple_mixed_volume(&ls, &bigger, l, phi).unwrap() + 1e-9);
        let mut all = ls.clone();
        all.push(l);
        let v = mixed_volume(&all).unwrap().value;
        let dil = orlicz_multiple_mixed_volume(&ls, &l.scale_translate(c, [0.0; 3]).unwrap(), l, phi).unwrap();
        prop_assert!(rel(dil, phi.eval(c) * v) < 1e-10);
    }

    #[test]
    fn log_af_is_two_sided(dim in dims(), seed in any::<u64>(), which in 0usize..4, r in 1usize..=3) {
        let r = r.min(dim);
        let bs = bodies(dim, dim + 1, seed);
        let refs: Vec<&Body> = bs.iter().collect();
        let params = CheckParams { r: Some(r), phi: Some(phis()[which].clone()), ..Default::default() };
        let tol = Tolerance::default();
        let outer = check(InequalityId::LogAf, &refs, &params, &tol).unwrap();
        let middle = check(InequalityId::Intermediate, &refs, &params, &tol).unwrap();
        prop_assert!((outer.lhs - middle.lhs).abs() < 1e-12);
        prop_assert!(outer.lhs >= middle.rhs - 1e-9);
        prop_assert!(middle.rhs >= outer.rhs - 1e-9);
        prop_assert_ne!(outer.status, Status::Violation);
    }

    #[test]
    fn log_af_remark_chain(dim in dims(), seed in any::<u64>(), which in 0usize..4, r in 1usize..=3) {
        let r = r.min(dim);
        let bs = bodies(dim, dim, seed);
        let mut refs: Vec<&Body> = bs.iter().collect();
        refs.push(&bs[dim - 1]);
        let phi = phis()[which].clone();
        let params = CheckParams { r: Some(r), phi: Some(phi.clone()), ..Default::default() };
        let rep = check(InequalityId::LogAf, &refs, &params, &Tolerance::default()).unwrap();
        prop_assert!(rep.lhs.abs() < 1e-12);
        prop_assert!(rep.rhs <= 1e-12);
        let classical = check(InequalityId::ClassicalAf, &refs[..dim], &CheckParams { r: Some(r), ..Default::default() }, &Tolerance::default()).unwrap();
        prop_assert!(classical.slack >= -1e-9 * classical.lhs.max(1.0));
        let ratio = af_product(&refs[..dim], r).unwrap() / mixed_volume(&refs[..dim]).unwrap().value;
        prop_assert!((rep.rhs - phi.ln_eval(ratio)).abs() < 1e-12);
    }

    #[test]
    fn proof_trace_holder_gaps(dim in dims(), seed in any::<u64>(), which in 0usize..4) {
        let bs = bodies(dim, dim + 1, seed);
        let ls: Vec<&Body> = bs[..dim - 1].iter().collect();
        let t = proof_trace(&ls, &bs[dim], &bs[dim - 1], &phis()[which], &[1.0, 10.0, 100.0, 1000.0]).unwrap();
        prop_assert_eq!(t.f_values.len(), 4);
        prop_assert!(t.f_values.iter().all(|&f| f > 0.0));
        prop_assert!(t.holder_gaps.iter().all(|&g| g >= -1e-9));
    }
}

#[test]
fn ball_approx_polygon_areas() {
    for m in [4usize, 8, 64] {
        let area = ball_approx(2, m).unwrap().volume();
        let expected = m as f64 / 2.0 * (2.0 * std::f64::consts::PI / m as f64).sin();
        assert!((area - expected).abs() < 1e-14, "m = {m}: {area} vs {expected}");
    }
}
