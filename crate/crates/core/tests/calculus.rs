//! Polynomial calculus and polyhedral quadrature against independent oracles.

use hsk_core::fields::{surface_div_flat, Monomial};
use hsk_core::geometry::canned;
use hsk_core::sample;
use hsk_core::{PartSpec, Poly, PolyhedralPart, Tolerances, Vector3, VelocityField};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn parts() -> Vec<(&'static str, PolyhedralPart)> {
    let tol = Tolerances::default();
    canned::all().into_iter().map(|(name, spec)| (name, PolyhedralPart::build(&spec, &tol).unwrap())).collect()
}

/// L-shaped prism: non-convex, with one re-entrant edge along `x₃`.
fn l_prism() -> PartSpec {
    let base = [(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, 2.0), (0.0, 2.0)];
    let mut vertices: Vec<Vector3> = base.iter().map(|&(x, y)| Vector3::new(x, y, 0.0)).collect();
    vertices.extend(base.iter().map(|&(x, y)| Vector3::new(x, y, 1.0)));
    let mut faces = vec![(0..6).rev().collect::<Vec<_>>(), (6..12).collect()];
    for i in 0..6 {
        let j = (i + 1) % 6;
        faces.push(vec![i, j, j + 6, i + 6]);
    }
    PartSpec { vertices, faces }
}

/// `∫_P div u` and `∫_∂P u·n`.
fn divergence_sides(u: &VelocityField, part: &PolyhedralPart) -> (f64, f64) {
    let div = u.div();
    let deg = u.degree();
    let bulk = part.integrate_volume_with(deg, |x| div.eval(x));
    let flux = (0..part.faces().len())
        .map(|f| {
            let n = part.faces()[f].normal;
            part.integrate_face_with(f, deg, |x| u.eval(x).dot(&n))
        })
        .sum();
    (bulk, flux)
}

/// Five-point central difference, exact for quintics along the line.
fn directional_derivative(f: impl Fn(&Vector3) -> Vector3, x: &Vector3, d: &Vector3, h: f64) -> Vector3 {
    let at = |s: f64| f(&(*x + *d * (s * h)));
    (at(-2.0) - at(2.0) + (at(1.0) - at(-1.0)) * 8.0) * (1.0 / (12.0 * h))
}

#[test]
fn closed_surfaces_have_zero_area_vector() {
    for (name, part) in parts() {
        assert!(part.area_vector_sum().max_abs() <= 1e-12, "{name}");
    }
}

#[test]
fn non_convex_prism_is_accepted() {
    let part = PolyhedralPart::build(&l_prism(), &Tolerances::default()).unwrap();
    assert!((part.volume() - 3.0).abs() < 1e-14);
    assert_eq!(part.edges().len(), 18);
    let u = sample::velocity_field(&mut rng(5), 4);
    let (bulk, flux) = divergence_sides(&u, &part);
    assert!((bulk - flux).abs() <= 1e-11 * bulk.abs().max(1.0));
    // at the re-entrant edge m′ turns away from n″; on convex edges m′·n″ > 0
    let reentrant = part
        .edges()
        .iter()
        .find(|e| {
            let (a, b) = e.segment;
            [a, b].iter().all(|p| p[0] == 1.0 && p[1] == 1.0)
        })
        .unwrap();
    reentrant.frame.validate(1e-12).unwrap();
    assert!(reentrant.frame.m_prime.dot(&reentrant.frame.n_second) < 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn packed_second_gradient_matches_nested_gradient(seed in any::<u64>(), degree in 0usize..=6) {
        let v = sample::velocity_field(&mut rng(seed), degree);
        let nested = v.grad().grad();
        let packed = v.grad2();
        // grad2 stores only j ≤ k; the nested gradient must agree on both halves
        for (m, c) in nested.terms() {
            prop_assert!(c.symmetry_defect() <= 1e-12, "{:?}", m);
        }
        let x = sample::vector(&mut rng(seed ^ 1));
        prop_assert!((nested.eval(&x) - packed.eval(&x).expand()).max_abs() <= 1e-10);
    }

    #[test]
    fn curl_curl_is_grad_div_minus_laplacian(seed in any::<u64>(), degree in 0usize..=5) {
        let mut r = rng(seed);
        // integer coefficients keep every operation exact
        let ints: Vec<(Monomial, Vector3)> = Monomial::up_to(degree)
            .into_iter()
            .map(|m| (m, Vector3::new(r.gen_range(-9..=9) as f64, r.gen_range(-9..=9) as f64, r.gen_range(-9..=9) as f64)))
            .collect();
        let v = Poly::from_terms(ints).unwrap();
        let lhs = v.curl().curl();
        let rhs = v.div().grad() - v.laplacian();
        prop_assert_eq!(lhs, rhs);

        let v = sample::velocity_field(&mut r, degree);
        let diff = v.curl().curl() - (v.div().grad() - v.laplacian());
        prop_assert!(diff.max_coefficient() <= 1e-12);
    }

    #[test]
    fn divergence_of_gradient_is_laplacian(seed in any::<u64>(), degree in 0usize..=6) {
        let v = sample::velocity_field(&mut rng(seed), degree);
        let diff = v.grad().div() - v.laplacian();
        prop_assert!(diff.max_coefficient() <= 1e-12);
    }

    #[test]
    fn surface_divergence_matches_finite_differences(seed in any::<u64>(), degree in 0usize..=3) {
        let mut r = rng(seed);
        let h = sample::hyperstress_field(&mut r, degree);
        let n = sample::unit_vector(&mut r);
        let x = sample::vector(&mut r);
        // any orthonormal tangent pair will do; build one independently
        let helper = sample::unit_vector(&mut r);
        let t1 = (helper - n * helper.dot(&n)).normalized().unwrap();
        let t2 = n.cross(&t1);
        let mut oracle = Vector3::ZERO;
        for t in [t1, t2] {
            oracle += directional_derivative(|y| h.eval(y).apply(&n).apply(&t), &x, &t, 1e-3);
        }
        let got = surface_div_flat(&h, &n, &x, 1e-12).unwrap();
        prop_assert!((got - oracle).max_abs() <= 1e-8, "{:?} vs {:?}", got, oracle);
    }

    #[test]
    fn divergence_theorem_on_canned_parts(seed in any::<u64>(), degree in 0usize..=4) {
        let u = sample::velocity_field(&mut rng(seed), degree);
        for (name, part) in parts() {
            let (bulk, flux) = divergence_sides(&u, &part);
            prop_assert!((bulk - flux).abs() <= 1e-11 * bulk.abs().max(1.0), "{}: {} vs {}", name, bulk, flux);
        }
    }

    #[test]
    fn rigid_motions_preserve_volume_and_areas(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = sample::rotation(&mut r);
        let shift = sample::vector(&mut r) * 10.0;
        let tol = Tolerances::default();
        for (name, spec) in canned::all() {
            let base = PolyhedralPart::build(&spec, &tol).unwrap();
            let moved = PartSpec { vertices: spec.vertices.iter().map(|p| q.apply(p) + shift).collect(), faces: spec.faces.clone() };
            let moved = PolyhedralPart::build(&moved, &tol).unwrap();
            prop_assert!((moved.volume() - base.volume()).abs() <= 1e-12, "{}", name);
            for (a, b) in base.faces().iter().zip(moved.faces()) {
                prop_assert!((a.area - b.area).abs() <= 1e-12);
                prop_assert!((q.apply(&a.normal) - b.normal).max_abs() <= 1e-12);
            }
        }
    }
}
