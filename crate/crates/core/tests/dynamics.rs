use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use tischler_core::dynamics::*;
use tischler_core::enumerate::enumerate_trees;
use tischler_core::rotation_graph::library::k4;
use tischler_core::rotation_graph::Orientation;
use tischler_core::tischler::{validate, BranchingData};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn all_builtins() -> Vec<(String, AntiRationalMap)> {
    let mut out: Vec<(String, AntiRationalMap)> = (2..=5)
        .map(|d| (format!("zbar{d}"), builtin("zbar", Some(d)).unwrap()))
        .collect();
    for name in ["f_1_1", "f_2_1", "f_3_1", "f_2_2", "tetrahedral"] {
        out.push((name.to_string(), builtin(name, None).unwrap()));
    }
    out
}

#[test]
fn count_identity_for_every_builtin() {
    for (name, f) in all_builtins() {
        let r = verify_map(&f, &tol()).unwrap();
        assert!(r.identity_ok, "{name}: {:?}", r.counts);
        assert!(r.max_residual < 1e-10, "{name}");
    }
}

#[test]
fn tetrahedral_fixed_points() {
    let f = builtin("tetrahedral", None).unwrap();
    let r = verify_map(&f, &tol()).unwrap();
    assert_eq!(r.counts.superattracting, 4);
    assert_eq!(r.counts.attracting, 0);
    assert_eq!(r.counts.repelling, 6);
    let expected: Vec<C> = (0..3)
        .map(|k| C::from_polar(1.0, 2.0 * PI * k as f64 / 3.0))
        .chain([C::new(0.0, 0.0)])
        .collect();
    for p in r
        .fixed_points
        .iter()
        .filter(|p| p.kind == FixedKind::Superattracting)
    {
        let z = p.location.finite().unwrap();
        assert!(expected.iter().any(|e| (z - *e).norm() < 1e-9), "{z}");
    }
    let one = r
        .fixed_points
        .iter()
        .find(|p| p.location.finite().is_some_and(|z| (z - 1.0).norm() < 1e-9))
        .unwrap();
    assert!(one.real_multiplier < 1e-9);
}

#[test]
fn cubic_has_five_repelling_points() {
    let f = builtin("f_1_1", None).unwrap();
    let r = verify_map(&f, &tol()).unwrap();
    assert_eq!(r.counts.superattracting, 3);
    assert_eq!(r.counts.repelling, 5);
}

#[test]
fn derivative_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (name, f) in all_builtins() {
        let mut checked = 0;
        while checked < 100 {
            let w = C::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let h = 1e-5 * w.norm().max(1.0);
            let r = |x: C| f.eval_finite(x.conj());
            let fd = (r(w + h) - r(w - h)) / (2.0 * h);
            let exact = f.r_prime(w);
            if !exact.is_finite() || exact.norm() > 1e6 {
                continue;
            }
            let err = (fd - exact).norm() / exact.norm().max(1.0);
            assert!(err < 1e-6, "{name} at {w}: {fd} vs {exact}");
            checked += 1;
        }
    }
}

fn random_moebius(rng: &mut ChaCha8Rng) -> Moebius {
    let mut c = || C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    loop {
        let h = Moebius {
            a: c(),
            b: c(),
            c: c(),
            d: c(),
        };
        if (h.a * h.d - h.b * h.c).norm() > 0.5 {
            return h;
        }
    }
}

#[test]
fn real_multiplier_is_chart_independent() {
    let f = builtin("zbar", Some(2)).unwrap();
    let base = fixed_points(&f, &tol()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let h = random_moebius(&mut rng);
        let g = f.conjugate(&h).unwrap();
        let moved = fixed_points(&g, &tol()).unwrap();
        assert_eq!(moved.len(), base.len());
        for p in &base {
            let image = h.apply(p.location);
            let q = moved
                .iter()
                .min_by(|x, y| {
                    x.location
                        .chordal_distance(image)
                        .total_cmp(&y.location.chordal_distance(image))
                })
                .unwrap();
            assert!(q.location.chordal_distance(image) < 1e-7);
            assert!((q.real_multiplier - p.real_multiplier).abs() < 1e-8);
        }
    }
}

#[test]
fn rays_are_forward_invariant() {
    for name in ["tetrahedral", "f_1_1", "f_2_2"] {
        let f = builtin(name, None).unwrap();
        let x = extract_tischler(&f, &tol()).unwrap();
        for ray in &x.rays {
            assert!(
                ray.max_residual < 1e-8,
                "{name} ray {} from {}",
                ray.ray,
                ray.source
            );
        }
    }
}

#[test]
fn tetrahedral_rays_at_one_land_at_distinct_points() {
    let f = builtin("tetrahedral", None).unwrap();
    let x = extract_tischler(&f, &tol()).unwrap();
    let mut at_one: Vec<usize> = x
        .rays
        .iter()
        .filter(|r| r.source.finite().is_some_and(|z| (z - 1.0).norm() < 1e-9))
        .map(|r| r.landing_index)
        .collect();
    assert_eq!(at_one.len(), 3);
    at_one.sort_unstable();
    at_one.dedup();
    assert_eq!(at_one.len(), 3);
}

#[test]
fn cubic_ray_toward_one_lands_on_the_segment() {
    let f = builtin("f_1_1", None).unwrap();
    let x = extract_tischler(&f, &tol()).unwrap();
    let from_zero: Vec<&RayTrace> = x
        .rays
        .iter()
        .filter(|r| r.source == ExtPoint::Finite(C::new(0.0, 0.0)))
        .collect();
    assert_eq!(from_zero.len(), 3);
    let real: Vec<C> = from_zero
        .iter()
        .filter_map(|r| r.landing.finite())
        .filter(|z| z.im.abs() < 1e-9 && 0.0 < z.re && z.re < 1.0)
        .collect();
    assert_eq!(real.len(), 1);
    assert!((real[0].re - 0.5).abs() < 1e-9);
}

#[test]
fn tetrahedral_graph_is_k4() {
    let f = builtin("tetrahedral", None).unwrap();
    let x = extract_tischler(&f, &tol()).unwrap();
    let expected = validate(&k4()).unwrap().expand_full();
    assert_eq!(
        x.full.canonical_code(Orientation::Preserve),
        expected.canonical_code(Orientation::Preserve)
    );
}

#[test]
fn polynomial_graphs_are_tree_compactifications() {
    for (m0, m1) in [(1, 1), (2, 1), (3, 1), (2, 2)] {
        let f = builtin(&format!("f_{m0}_{m1}"), None).unwrap();
        let x = extract_tischler(&f, &tol()).unwrap();
        let trees = enumerate_trees(&BranchingData::from_multiplicities(vec![m0, m1]));
        assert_eq!(trees.len(), 1);
        let (compact, _) = trees[0].compactify();
        assert_eq!(
            x.tischler.canonical_code(),
            compact.canonical_code(),
            "({m0},{m1})"
        );
        assert_eq!(x.full.face_count(), m0 + m1 + 2);
    }
}
