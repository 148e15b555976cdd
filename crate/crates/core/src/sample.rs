//! Seeded random instances for property suites.
//!
//! Components are uniform on `[-1, 1]`; the caller supplies the generator,
//! so determinism follows from the seed.

use core::f64::consts::PI;

use rand::Rng;

use crate::fields::{HyperstressField, Monomial, Poly, StressField, VelocityField};
use crate::geometry::EdgeFrame;
use crate::tensor::{sqrt, OrthonormalBasis, Rotation, Tensor2, Tensor3Sym, Vector3};

fn unit_interval<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(-1.0..=1.0)
}

pub fn vector<R: Rng + ?Sized>(rng: &mut R) -> Vector3 {
    Vector3([0; 3].map(|_| unit_interval(rng)))
}

/// Uniformly distributed unit vector.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Vector3 {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi = rng.gen_range(0.0..2.0 * PI);
    let r = sqrt((1.0 - z * z).max(0.0));
    Vector3::new(r * libm::cos(phi), r * libm::sin(phi), z)
}

pub fn tensor2<R: Rng + ?Sized>(rng: &mut R) -> Tensor2 {
    Tensor2::from_fn(|_, _| unit_interval(rng))
}

pub fn symmetric_tensor2<R: Rng + ?Sized>(rng: &mut R) -> Tensor2 {
    tensor2(rng).sym()
}

pub fn skew_tensor2<R: Rng + ?Sized>(rng: &mut R) -> Tensor2 {
    tensor2(rng).skew()
}

pub fn tensor3sym<R: Rng + ?Sized>(rng: &mut R) -> Tensor3Sym {
    Tensor3Sym::from_fn(|_, _, _| unit_interval(rng))
}

/// Haar-distributed rotation (Shoemake's quaternion construction).
pub fn rotation<R: Rng + ?Sized>(rng: &mut R) -> Rotation {
    let u1: f64 = rng.gen();
    let (a, b) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
    let (r1, r2) = (sqrt(1.0 - u1), sqrt(u1));
    Rotation::from_quaternion(r2 * libm::cos(b), r1 * libm::sin(a), r1 * libm::cos(a), r2 * libm::sin(b))
        .expect("quaternion has unit norm")
}

pub fn basis<R: Rng + ?Sized>(rng: &mut R) -> OrthonormalBasis {
    OrthonormalBasis::rotated(&rotation(rng))
}

/// Valid edge frame about a random tangent, with independent in-plane
/// angles for the two pairs and a random orientation of `m″`.
pub fn edge_frame<R: Rng + ?Sized>(rng: &mut R) -> EdgeFrame {
    let b = basis(rng);
    let (u, w, tangent) = (b[0], b[1], b[2]);
    let in_plane = |angle: f64| u * libm::cos(angle) + w * libm::sin(angle);
    let alpha = rng.gen_range(0.0..2.0 * PI);
    let beta = rng.gen_range(0.0..2.0 * PI);
    let n_prime = in_plane(alpha);
    let m_prime = tangent.cross(&n_prime);
    let n_second = in_plane(beta);
    let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
    let m_second = tangent.cross(&n_second) * sign;
    EdgeFrame { n_prime, m_prime, n_second, m_second }
}

/// Dense polynomial with every monomial up to `degree` and coefficients
/// drawn by `coef`.
pub fn poly<C, R, F>(rng: &mut R, degree: usize, mut coef: F) -> Poly<C>
where
    C: crate::fields::Coefficient,
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> C,
{
    let terms: alloc::vec::Vec<(Monomial, C)> = Monomial::up_to(degree).into_iter().map(|m| (m, coef(rng))).collect();
    Poly::from_terms(terms).expect("degree within bounds and finite coefficients")
}

pub fn velocity_field<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> VelocityField {
    poly(rng, degree, |r| vector(r))
}

pub fn stress_field<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> StressField {
    poly(rng, degree, |r| tensor2(r))
}

pub fn symmetric_stress_field<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> StressField {
    poly(rng, degree, |r| symmetric_tensor2(r))
}

pub fn hyperstress_field<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> HyperstressField {
    poly(rng, degree, |r| tensor3sym(r))
}

/// `curl ψ` for a random potential of degree `degree + 1`, so the result
/// has degree at most `degree` and vanishing divergence.
pub fn divergence_free_velocity<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> VelocityField {
    velocity_field(rng, degree + 1).curl()
}
