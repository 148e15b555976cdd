//! Observer changes and the rotational invariance of the internal power.
//!
//! An instantaneous observer change is `(q̇, Q, W)` with `W = Q̇Qᵀ` skew.
//! Velocities transform as `v⁺ = q̇ + Qv + Wx⁺`, so that
//! `(grad v)⁺ = Q∗grad v + W` and `(grad²v)⁺ = Q∗grad²v`. With `T⁺ = Q∗T`
//! and `H⁺ = Q∗H` the specific internal power changes by `−T⁺·W`, which
//! vanishes for every spin exactly when `T` is symmetric.

use crate::error::{Error, Result};
use crate::geometry::EdgeFrame;
use crate::tensor::{sqrt, Rotation, Tensor2, Tensor3Sym, Vector3};
use crate::tolerance::Tolerances;
use crate::traction::edge_force_unchecked;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ObserverChange {
    pub q_dot: Vector3,
    pub rotation: Rotation,
    spin: Tensor2,
}

impl ObserverChange {
    pub const IDENTITY: ObserverChange =
        ObserverChange { q_dot: Vector3::ZERO, rotation: Rotation::IDENTITY, spin: Tensor2::ZERO };

    /// Rejects spins with `max|W + Wᵀ| > tol`.
    pub fn new(q_dot: Vector3, rotation: Rotation, spin: Tensor2, tol: f64) -> Result<Self> {
        if !spin.is_finite() || !q_dot.is_finite() {
            return Err(Error::NonFinite);
        }
        let defect = (spin + spin.transpose()).max_abs();
        if defect > tol {
            return Err(Error::NotSkew { defect });
        }
        Ok(ObserverChange { q_dot, rotation, spin })
    }

    pub fn spin(&self) -> &Tensor2 {
        &self.spin
    }
}

/// `v⁺ = q̇ + Qv + Wx⁺`.
pub fn transform_velocity(v: &Vector3, x_plus: &Vector3, obs: &ObserverChange) -> Vector3 {
    obs.q_dot + obs.rotation.apply(v) + obs.spin.apply(x_plus)
}

/// `(Q∗grad v + W, Q∗grad²v)`.
pub fn transform_gradients(grad_v: &Tensor2, grad2_v: &Tensor3Sym, obs: &ObserverChange) -> (Tensor2, Tensor3Sym) {
    (obs.rotation.rotate2(grad_v) + obs.spin, obs.rotation.rotate3(grad2_v))
}

/// `(Q∗T, Q∗H)`.
pub fn transform_dynamics(stress: &Tensor2, hyperstress: &Tensor3Sym, q: &Rotation) -> (Tensor2, Tensor3Sym) {
    (q.rotate2(stress), q.rotate3(hyperstress))
}

/// `|T·grad v + H·grad²v − T⁺·(grad v)⁺ − H⁺·(grad²v)⁺|`.
///
/// Analytically this is `|(Q∗T)·W| = |skew(Q∗T)·W|`, which reduces to
/// `|skew(T)·W|` for `Q = I`.
pub fn power_invariance_residual(
    stress: &Tensor2,
    hyperstress: &Tensor3Sym,
    grad_v: &Tensor2,
    grad2_v: &Tensor3Sym,
    obs: &ObserverChange,
) -> f64 {
    let before = stress.dot(grad_v) + hyperstress.inner(grad2_v);
    let (t_plus, h_plus) = transform_dynamics(stress, hyperstress, &obs.rotation);
    let (g_plus, g2_plus) = transform_gradients(grad_v, grad2_v, obs);
    let after = t_plus.dot(&g_plus) + h_plus.inner(&g2_plus);
    (before - after).abs()
}

/// A unit spin `W = skew(T)/|skew(T)|` that exposes a non-symmetric
/// stress, or `None` when `|skew(T)| ≤ tol.symmetry`.
///
/// At `Q = I` the returned spin gives a residual of `|skew(T)|`.
pub fn find_symmetry_witness(stress: &Tensor2, tol: &Tolerances) -> Option<Tensor2> {
    let skew = stress.skew();
    let norm = skew.norm();
    (norm > tol.symmetry).then(|| skew * (1.0 / norm))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IndifferenceResiduals {
    pub traction: f64,
    pub hypertraction: f64,
    pub edge_force: f64,
}

impl IndifferenceResiduals {
    pub fn max(&self) -> f64 {
        self.traction.max(self.hypertraction).max(self.edge_force)
    }
}

/// Compares the contact actions of `(Q∗T, Q∗H)` on the rotated normal and
/// frame with the rotated actions of `(T, H)`, for homogeneous fields.
///
/// For constant `H` the surface divergence vanishes, so `t = T n`.
pub fn traction_indifference_check(
    stress: &Tensor2,
    hyperstress: &Tensor3Sym,
    n: &Vector3,
    frame: &EdgeFrame,
    q: &Rotation,
    tol: &Tolerances,
) -> Result<IndifferenceResiduals> {
    n.check_unit(tol.unit)?;
    frame.validate(tol.frame)?;
    let (t_plus, h_plus) = transform_dynamics(stress, hyperstress, q);
    let n_plus = q.apply(n);
    let frame_plus = frame.rotated(q);

    let traction = (t_plus.apply(&n_plus) - q.apply(&stress.apply(n))).norm();
    let hypertraction = (h_plus.contract_dyad(&n_plus, &n_plus) - q.apply(&hyperstress.contract_dyad(n, n))).norm();
    let edge_force =
        (edge_force_unchecked(&h_plus, &frame_plus) - q.apply(&edge_force_unchecked(hyperstress, frame))).norm();
    Ok(IndifferenceResiduals { traction, hypertraction, edge_force })
}

/// Frobenius norm of the skew part, `|skew(T)|`.
pub fn skew_norm(stress: &Tensor2) -> f64 {
    let s = stress.skew();
    sqrt(s.dot(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::coordinate_edge;
    use core::f64::consts::FRAC_PI_2;

    fn e(i: usize) -> Vector3 {
        Vector3::unit(i)
    }

    fn quarter_turn() -> Rotation {
        Rotation::about_coordinate_axis(2, FRAC_PI_2).unwrap()
    }

    fn spin12() -> Tensor2 {
        e(0).outer(&e(1)) - e(1).outer(&e(0))
    }

    #[test]
    fn transform_velocity_examples() {
        let v = Vector3::new(0.3, -1.0, 2.0);
        let x = Vector3::new(1.0, 2.0, 3.0);
        assert_eq!(transform_velocity(&v, &x, &ObserverChange::IDENTITY), v);

        let obs = ObserverChange::new(e(0), Rotation::IDENTITY, Tensor2::ZERO, 1e-13).unwrap();
        assert_eq!(transform_velocity(&Vector3::ZERO, &x, &obs), e(0));

        let obs = ObserverChange::new(Vector3::ZERO, quarter_turn(), Tensor2::ZERO, 1e-13).unwrap();
        assert!((transform_velocity(&e(0), &x, &obs) - e(1)).max_abs() < 1e-15);
    }

    #[test]
    fn spin_must_be_skew() {
        let err = ObserverChange::new(Vector3::ZERO, Rotation::IDENTITY, Tensor2::IDENTITY, 1e-13).unwrap_err();
        assert!(matches!(err, Error::NotSkew { .. }));
    }

    #[test]
    fn transform_gradients_examples() {
        let g = Tensor2([[1.0, 2.0, 0.0], [0.0, 3.0, -1.0], [4.0, 0.0, 0.5]]);
        let g2 = Tensor3Sym::sym_dyad(&e(0), &e(1), &e(2));
        let obs = ObserverChange::new(Vector3::ZERO, Rotation::IDENTITY, spin12(), 1e-13).unwrap();
        let (a, b) = transform_gradients(&g, &g2, &obs);
        assert_eq!(a, g + spin12());
        assert_eq!(b, g2);

        let q = Rotation::about_axis(&Vector3::new(1.0, 2.0, -0.5), 0.7).unwrap();
        let obs = ObserverChange::new(Vector3::ZERO, q, Tensor2::ZERO, 1e-13).unwrap();
        let (a, _) = transform_gradients(&Tensor2::IDENTITY, &g2, &obs);
        assert!((a - Tensor2::IDENTITY).max_abs() < 1e-15);

        let obs = ObserverChange::new(Vector3::ZERO, quarter_turn(), Tensor2::ZERO, 1e-13).unwrap();
        let (_, b) = transform_gradients(&g, &Tensor3Sym::sym_dyad(&e(0), &e(0), &e(0)), &obs);
        assert!((b - Tensor3Sym::sym_dyad(&e(1), &e(1), &e(1))).max_abs() < 1e-15);
    }

    #[test]
    fn power_invariance_examples() {
        let sym = Tensor2([[1.0, 2.0, 0.0], [2.0, -1.0, 0.5], [0.0, 0.5, 3.0]]);
        let h = Tensor3Sym::sym_dyad(&e(0), &e(1), &e(2));
        let g = Tensor2([[0.1, 0.2, 0.3], [0.4, 0.5, 0.6], [0.7, 0.8, 0.9]]);
        let g2 = Tensor3Sym::spherical(&Vector3::new(1.0, 0.0, -1.0));
        let q = Rotation::about_axis(&Vector3::new(0.2, 1.0, 0.3), 1.1).unwrap();
        let obs = ObserverChange::new(e(2), q, spin12() * 2.5, 1e-13).unwrap();
        assert!(power_invariance_residual(&sym, &h, &g, &g2, &obs) < 1e-13);

        let t = e(0).outer(&e(1));
        let obs = ObserverChange::new(Vector3::ZERO, Rotation::IDENTITY, spin12(), 1e-13).unwrap();
        let r = power_invariance_residual(&t, &Tensor3Sym::ZERO, &Tensor2::ZERO, &Tensor3Sym::ZERO, &obs);
        assert!((r - 1.0).abs() < 1e-15);

        let obs = ObserverChange::new(e(1), q, Tensor2::ZERO, 1e-13).unwrap();
        assert!(power_invariance_residual(&t, &h, &g, &g2, &obs) < 1e-13);
    }

    #[test]
    fn symmetry_witness_examples() {
        let tol = Tolerances::default();
        let t = e(0).outer(&e(1));
        let w = find_symmetry_witness(&t, &tol).unwrap();
        let obs = ObserverChange::new(Vector3::ZERO, Rotation::IDENTITY, w, 1e-13).unwrap();
        let r = power_invariance_residual(&t, &Tensor3Sym::ZERO, &Tensor2::ZERO, &Tensor3Sym::ZERO, &obs);
        assert!(r >= 0.70);
        assert!((r - skew_norm(&t)).abs() < 1e-15);
        assert!((r - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(find_symmetry_witness(&Tensor2::diag([1.0, 2.0, 3.0]), &tol).is_none());
        assert!(find_symmetry_witness(&Tensor2::IDENTITY, &tol).is_none());
    }

    #[test]
    fn traction_indifference_examples() {
        let tol = Tolerances::default();
        let t = Tensor2([[1.0, 2.0, 0.0], [2.0, -1.0, 0.5], [0.0, 0.5, 3.0]]);
        let h = Tensor3Sym::sym_dyad(&e(0), &e(1), &e(2)) + Tensor3Sym::spherical(&e(1));
        let n = Vector3::new(1.0, 2.0, 2.0) * (1.0 / 3.0);
        let frame = coordinate_edge(0, 2).unwrap();
        let r = traction_indifference_check(&t, &h, &n, &frame, &Rotation::IDENTITY, &tol).unwrap();
        assert_eq!(r.max(), 0.0);

        let q = Rotation::about_axis(&Vector3::new(-0.3, 1.0, 0.8), 2.2).unwrap();
        let hs = Tensor3Sym::spherical(&Vector3::new(1.0, -2.0, 0.5));
        let r = traction_indifference_check(&t, &hs, &n, &frame, &q, &tol).unwrap();
        assert!(r.hypertraction < 1e-14);
        assert!(r.edge_force < 1e-14);
        let r = traction_indifference_check(&t, &h, &n, &frame, &q, &tol).unwrap();
        assert!(r.max() < 1e-13);
    }
}
