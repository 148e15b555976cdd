//! Contact actions, their inversion, and virtual-power balance on parts.

use hsk_core::balance::{bulk_residual, global_balance, internal_power, verify_pvp, EdgeTerm, FieldTriple};
use hsk_core::fields::Monomial;
use hsk_core::geometry::canned;
use hsk_core::sample;
use hsk_core::traction::{
    edge_force, reconstruct_hyperstress, reconstruct_reduced_stress, reconstruct_stress, simple_traction,
    surface_traction,
};
use hsk_core::{OrthonormalBasis, Poly, PolyhedralPart, StressField, Tensor2, Tensor3Sym, Tolerances, Vector3};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn part(name: &str) -> PolyhedralPart {
    let spec = canned::all().into_iter().find(|(n, _)| *n == name).unwrap().1;
    PolyhedralPart::build(&spec, &Tolerances::default()).unwrap()
}

fn roundtrip(h: &Tensor3Sym, basis: &OrthonormalBasis) -> Tensor3Sym {
    let tol = Tolerances::default();
    reconstruct_hyperstress(|n| h.contract_dyad(n, n), |e| edge_force(h, e, &tol).unwrap(), basis)
}

/// Stress field whose rows are curls, hence divergence-free.
fn solenoidal_stress(r: &mut ChaCha8Rng, degree: usize) -> StressField {
    let rows = [0, 1, 2].map(|_| sample::divergence_free_velocity(r, degree));
    let mut out = Poly::zero();
    for (i, row) in rows.iter().enumerate() {
        out = out + row.map(|c| Vector3::unit(i).outer(c));
    }
    out
}

#[test]
fn hyperstress_roundtrip_in_the_standard_basis() {
    let mut r = rng(11);
    for _ in 0..1000 {
        let h = sample::tensor3sym(&mut r);
        assert!((roundtrip(&h, &OrthonormalBasis::STANDARD) - h).max_abs() <= 1e-13);
    }
}

#[test]
fn hyperstress_reconstruction_is_basis_independent() {
    let mut r = rng(12);
    let h = sample::tensor3sym(&mut r);
    let reference = roundtrip(&h, &OrthonormalBasis::STANDARD);
    for _ in 0..100 {
        let other = roundtrip(&h, &sample::basis(&mut r));
        assert!((other - reference).max_abs() <= 1e-12);
    }
}

#[test]
fn stress_is_recovered_from_tractions() {
    let tol = Tolerances::default();
    let mut r = rng(13);
    let t = sample::symmetric_stress_field(&mut r, 2);
    let h = sample::hyperstress_field(&mut r, 2);
    let basis = sample::basis(&mut r);
    for _ in 0..10 {
        let x = sample::vector(&mut r);
        let reduced =
            reconstruct_reduced_stress(|y, n| surface_traction(&t, &h, y, n, &tol).unwrap(), &h, &x, &basis, &tol)
                .unwrap();
        let got = reconstruct_stress(&reduced, &h, &x);
        assert!((got - t.eval(&x)).max_abs() <= 1e-11);
    }
}

#[test]
fn rigid_velocities_spend_no_internal_power() {
    let mut r = rng(14);
    for (name, spec) in canned::all() {
        let p = PolyhedralPart::build(&spec, &Tolerances::default()).unwrap();
        let w = sample::skew_tensor2(&mut r);
        let v = Poly::from_terms([(Monomial::ONE, sample::vector(&mut r))].into_iter().chain((0..3).map(|k| {
            let mut e = [0u8; 3];
            e[k] = 1;
            (Monomial(e), w.column(k))
        })))
        .unwrap();
        let f = FieldTriple::new(sample::symmetric_stress_field(&mut r, 2), sample::hyperstress_field(&mut r, 2), v);
        assert!(internal_power(&f, &p).unwrap().abs() <= 1e-12, "{name}");
    }
}

#[test]
fn edge_integrals_are_needed_for_varying_velocities() {
    let tol = Tolerances::default();
    let p = part("chamfered_cube");
    let mut r = rng(15);
    let f =
        FieldTriple::new(Poly::zero(), Poly::constant(sample::tensor3sym(&mut r)), sample::velocity_field(&mut r, 1));
    let with = verify_pvp(&f, &p, "chamfered_cube", EdgeTerm::Include, &tol).unwrap();
    let without = verify_pvp(&f, &p, "chamfered_cube", EdgeTerm::Omit, &tol).unwrap();
    assert!(with.passed);
    assert!(without.pvp_residual >= 1e-3, "{}", without.pvp_residual);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_force_ignores_pair_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let tol = Tolerances::default();
        let h = sample::tensor3sym(&mut r);
        let e = sample::edge_frame(&mut r);
        prop_assert_eq!(edge_force(&h, &e, &tol).unwrap(), edge_force(&h, &e.swapped(), &tol).unwrap());
    }

    #[test]
    fn simple_continua_use_cauchy_tractions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let tol = Tolerances::default();
        let t = sample::stress_field(&mut r, 2);
        let (x, n) = (sample::vector(&mut r), sample::unit_vector(&mut r));
        let got = surface_traction(&t, &Poly::zero(), &x, &n, &tol).unwrap();
        prop_assert_eq!(got, simple_traction(&t.eval(&x), &n, &tol).unwrap());
    }

    #[test]
    fn virtual_power_identity_holds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let tol = Tolerances::default();
        let f = FieldTriple::new(
            sample::stress_field(&mut r, 2),
            sample::hyperstress_field(&mut r, 2),
            sample::velocity_field(&mut r, 3),
        );
        for (name, spec) in canned::all() {
            let p = PolyhedralPart::build(&spec, &tol).unwrap();
            let report = verify_pvp(&f, &p, name, EdgeTerm::Include, &tol).unwrap();
            prop_assert!(report.passed, "{}: {}", name, report.pvp_residual);
        }
    }

    #[test]
    fn balanced_fields_have_balanced_contact_actions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let tol = Tolerances::default();
        let h = sample::hyperstress_field(&mut r, 2);
        let t = &solenoidal_stress(&mut r, 2) + &h.div();
        let f = FieldTriple::new(t, h, Poly::zero());
        let probes: Vec<Vector3> = (0..8).map(|_| sample::vector(&mut r)).collect();
        prop_assert!(bulk_residual(&f, &probes) <= 1e-12);
        for (name, spec) in canned::all() {
            let p = PolyhedralPart::build(&spec, &tol).unwrap();
            let g = global_balance(&f, &p, &tol).unwrap();
            prop_assert!(g.max_abs() <= 1e-11, "{}: {:?}", name, g);
        }
    }
}

#[test]
fn zero_fields_balance_trivially() {
    let tol = Tolerances::default();
    let f = FieldTriple::new(Poly::constant(Tensor2::ZERO), Poly::zero(), Poly::zero());
    let report = verify_pvp(&f, &part("cube"), "cube", EdgeTerm::Include, &tol).unwrap();
    assert_eq!(report.pvp_residual, 0.0);
    assert!(report.passed);
}
