//! Traction, hypertraction and edge-force maps, and their inverses.
//!
//! Forward direction: given the stress `T` and hyperstress `H`,
//!
//! ```text
//! t(x, n) = (T − div H) n − ˢdiv((H n) ˢI)
//! h(x, n) = H[n ⊗ n]
//! f(x, ℰ) = H[n′ ⊗ m′ + n″ ⊗ m″]
//! ```
//!
//! Inverse direction: the six vectors `h(eⱼ)` and `f(ℰⱼₖ)` on the
//! coordinate planes and edges of any orthonormal basis determine `H`,
//!
//! ```text
//! H = Σⱼ h(eⱼ) ⊗ eⱼ ⊗ eⱼ + ½ Σ_{j<k} f(ℰⱼₖ) ⊗ (eⱼ ⊗ eₖ + eₖ ⊗ eⱼ)
//! ```
//!
//! and then `T̃ = T − div H` and `T` follow from the tractions.

use crate::error::Result;
use crate::fields::{surface_div_field, surface_div_flat, HyperstressField, StressField};
use crate::geometry::{coordinate_edge_in, EdgeFrame};
use crate::tensor::{OrthonormalBasis, Tensor2, Tensor3Sym, Vector3};
use crate::tolerance::Tolerances;

/// Surface sample of the diffused contact actions.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TractionSample {
    pub point: Vector3,
    pub normal: Vector3,
    pub traction: Vector3,
    pub hypertraction: Vector3,
}

/// Edge sample of the concentrated contact action.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EdgeForceSample {
    pub point: Vector3,
    pub frame: EdgeFrame,
    pub force: Vector3,
}

/// `T n` for a simple continuum.
pub fn simple_traction(t: &Tensor2, n: &Vector3, tol: &Tolerances) -> Result<Vector3> {
    n.check_unit(tol.unit)?;
    Ok(t.apply(n))
}

/// `Σᵢ t(nⁱ) ⊗ nⁱ` over an orthonormal triple.
pub fn simple_stress_from_tractions(t_map: impl Fn(&Vector3) -> Vector3, basis: &OrthonormalBasis) -> Tensor2 {
    basis.vectors().iter().fold(Tensor2::ZERO, |acc, n| acc + t_map(n).outer(n))
}

/// Diffused traction at `x` on the plane through `x` with unit normal `n`.
pub fn surface_traction(
    stress: &StressField,
    hyperstress: &HyperstressField,
    x: &Vector3,
    n: &Vector3,
    tol: &Tolerances,
) -> Result<Vector3> {
    n.check_unit(tol.unit)?;
    let reduced = stress.eval(x) - hyperstress.div().eval(x);
    Ok(reduced.apply(n) - surface_div_flat(hyperstress, n, x, tol.unit)?)
}

/// Traction field on planes with normal `n`, as a polynomial in `x`.
pub fn surface_traction_field(
    stress: &StressField,
    hyperstress: &HyperstressField,
    n: &Vector3,
    tol: &Tolerances,
) -> Result<crate::fields::VelocityField> {
    n.check_unit(tol.unit)?;
    let reduced = stress - &hyperstress.div();
    Ok(reduced.map(|t| t.apply(n)) - surface_div_field(hyperstress, n, tol.unit)?)
}

/// `h = (H n) n = H[n ⊗ n]`.
pub fn surface_hypertraction(h: &Tensor3Sym, n: &Vector3, tol: &Tolerances) -> Result<Vector3> {
    n.check_unit(tol.unit)?;
    Ok(h.contract_dyad(n, n))
}

/// `f = H[n′ ⊗ m′ + n″ ⊗ m″]`, i.e. `⟦(H n) m⟧`.
pub fn edge_force(h: &Tensor3Sym, frame: &EdgeFrame, tol: &Tolerances) -> Result<Vector3> {
    frame.validate(tol.frame)?;
    Ok(edge_force_unchecked(h, frame))
}

pub(crate) fn edge_force_unchecked(h: &Tensor3Sym, frame: &EdgeFrame) -> Vector3 {
    h.contract_dyad(&frame.n_prime, &frame.m_prime) + h.contract_dyad(&frame.n_second, &frame.m_second)
}

/// Hyperstress from hypertractions on the coordinate planes and edge forces
/// on the coordinate edges of `basis`.
pub fn reconstruct_hyperstress(
    h_map: impl Fn(&Vector3) -> Vector3,
    f_map: impl Fn(&EdgeFrame) -> Vector3,
    basis: &OrthonormalBasis,
) -> Tensor3Sym {
    let e = basis.vectors();
    let mut out = Tensor3Sym::ZERO;
    for j in 0..3 {
        out += Tensor3Sym::sym_dyad(&h_map(&e[j]), &e[j], &e[j]);
    }
    for (j, k) in [(0, 1), (0, 2), (1, 2)] {
        let edge = coordinate_edge_in(basis, j, k).expect("j < k ≤ 2");
        // ½ f ⊗ (eⱼ⊗eₖ + eₖ⊗eⱼ) = f ⊗ sym(eⱼ⊗eₖ)
        out += Tensor3Sym::sym_dyad(&f_map(&edge), &e[j], &e[k]);
    }
    out
}

/// `T̃(x) = Σᵢ (t(x, nᵢ) + ˢdiv((H(x) nᵢ) ˢI)) ⊗ nᵢ`.
pub fn reconstruct_reduced_stress(
    t_map: impl Fn(&Vector3, &Vector3) -> Vector3,
    hyperstress: &HyperstressField,
    x: &Vector3,
    basis: &OrthonormalBasis,
    tol: &Tolerances,
) -> Result<Tensor2> {
    let mut out = Tensor2::ZERO;
    for n in basis.vectors() {
        let column = t_map(x, n) + surface_div_flat(hyperstress, n, x, tol.unit)?;
        out += column.outer(n);
    }
    Ok(out)
}

/// `T(x) = T̃(x) + div H(x)`.
pub fn reconstruct_stress(reduced: &Tensor2, hyperstress: &HyperstressField, x: &Vector3) -> Tensor2 {
    *reduced + hyperstress.div().eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Poly;
    use crate::geometry::coordinate_edge;
    use crate::tensor::Rotation;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn e(i: usize) -> Vector3 {
        Vector3::unit(i)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn only(i: usize, j: usize, k: usize) -> Tensor3Sym {
        let mut h = Tensor3Sym::ZERO;
        h.set(i, j, k, 1.0);
        h
    }

    #[test]
    fn simple_traction_examples() {
        let t = Tensor2::diag([1.0, 2.0, 3.0]);
        assert_eq!(simple_traction(&t, &e(1), &tol()).unwrap(), Vector3::new(0.0, 2.0, 0.0));
        let n = Vector3::new(0.6, 0.0, 0.8);
        assert_eq!(simple_traction(&Tensor2::IDENTITY, &n, &tol()).unwrap(), n);
        let t = e(0).outer(&e(1)) + e(1).outer(&e(0));
        let n = Vector3::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0);
        assert!((simple_traction(&t, &n, &tol()).unwrap() - n).max_abs() < 1e-16);
        assert!(simple_traction(&t, &Vector3::new(1.0, 1.0, 0.0), &tol()).is_err());
    }

    #[test]
    fn simple_stress_examples() {
        let t = Tensor2::diag([1.0, 2.0, 3.0]);
        assert_eq!(simple_stress_from_tractions(|n| t.apply(n), &OrthonormalBasis::STANDARD), t);
        let q = Rotation::from_quaternion(0.9, 0.1, -0.3, 0.2).unwrap();
        let basis = OrthonormalBasis::rotated(&q);
        let got = simple_stress_from_tractions(|n| *n, &basis);
        assert!((got - Tensor2::IDENTITY).max_abs() < 1e-15);
        assert_eq!(simple_stress_from_tractions(|_| Vector3::ZERO, &basis), Tensor2::ZERO);
    }

    #[test]
    fn surface_traction_examples() {
        let x = Vector3::new(0.4, -0.2, 1.3);
        let t = Tensor2([[1.0, 2.0, 0.0], [2.0, -1.0, 0.5], [0.0, 0.5, 3.0]]);
        let n = Vector3::new(0.0, 0.6, 0.8);
        let got = surface_traction(&Poly::constant(t), &Poly::zero(), &x, &n, &tol()).unwrap();
        assert_eq!(got, t.apply(&n));

        let h = Poly::monomial([1, 0, 0], Tensor3Sym::spherical(&e(0))).unwrap();
        let got = surface_traction(&Poly::zero(), &h, &x, &e(0), &tol()).unwrap();
        assert_eq!(got, -e(0));

        let hc = Poly::constant(Tensor3Sym::spherical(&Vector3::new(1.0, 2.0, 3.0)));
        assert_eq!(surface_traction(&Poly::zero(), &hc, &x, &n, &tol()).unwrap(), Vector3::ZERO);
    }

    #[test]
    fn hypertraction_examples() {
        let h = Tensor3Sym::spherical(&Vector3::new(1.0, 2.0, 3.0));
        let n = Vector3::new(2.0, -1.0, 2.0) * (1.0 / 3.0);
        let got = surface_hypertraction(&h, &n, &tol()).unwrap();
        assert!((got - Vector3::new(1.0, 2.0, 3.0)).max_abs() < 1e-15);
        assert_eq!(surface_hypertraction(&only(0, 1, 2), &e(1), &tol()).unwrap(), Vector3::ZERO);
        assert_eq!(surface_hypertraction(&only(0, 1, 1), &e(1), &tol()).unwrap(), e(0));
    }

    #[test]
    fn edge_force_examples() {
        let edge = coordinate_edge(0, 1).unwrap();
        assert_eq!(edge_force(&only(2, 0, 1), &edge, &tol()).unwrap(), e(2) * 2.0);
        let q = Rotation::about_axis(&Vector3::new(1.0, 1.0, 0.0), 0.3).unwrap();
        let frame = edge.rotated(&q);
        let sph = Tensor3Sym::spherical(&Vector3::new(1.0, -2.0, 0.5));
        assert!(edge_force(&sph, &frame, &tol()).unwrap().max_abs() < 1e-15);
        assert_eq!(edge_force(&Tensor3Sym::ZERO, &frame, &tol()).unwrap(), Vector3::ZERO);
        let bad = EdgeFrame { n_prime: e(0), m_prime: e(0), n_second: e(1), m_second: e(0) };
        assert!(edge_force(&sph, &bad, &tol()).is_err());
    }

    #[test]
    fn swapping_pairs_leaves_edge_force() {
        let mut h = Tensor3Sym::ZERO;
        for (n, c) in h.0.iter_mut().flatten().enumerate() {
            *c = n as f64 * 0.37 - 2.0;
        }
        let edge = coordinate_edge(1, 2).unwrap();
        let a = edge_force(&h, &edge, &tol()).unwrap();
        let b = edge_force(&h, &edge.swapped(), &tol()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reconstruct_examples() {
        let h = only(0, 1, 2);
        let basis = OrthonormalBasis::STANDARD;
        let f = |frame: &EdgeFrame| edge_force_unchecked(&h, frame);
        assert_eq!(f(&coordinate_edge(1, 2).unwrap()), e(0) * 2.0);
        let got = reconstruct_hyperstress(|n| h.contract_dyad(n, n), f, &basis);
        assert_eq!(got, h);

        let hv = Vector3::new(0.5, -1.0, 2.0);
        let got = reconstruct_hyperstress(|_| hv, |_| Vector3::ZERO, &basis);
        assert_eq!(got, Tensor3Sym::spherical(&hv));

        assert_eq!(reconstruct_hyperstress(|_| Vector3::ZERO, |_| Vector3::ZERO, &basis), Tensor3Sym::ZERO);
    }

    #[test]
    fn reduced_stress_examples() {
        let basis = OrthonormalBasis::STANDARD;
        let x = Vector3::new(0.3, 0.2, 0.1);
        let t = Tensor2([[1.0, 2.0, 0.0], [2.0, -1.0, 0.5], [0.0, 0.5, 3.0]]);
        let got = reconstruct_reduced_stress(|_, n| t.apply(n), &Poly::zero(), &x, &basis, &tol()).unwrap();
        assert_eq!(got, t);

        let h = Poly::monomial([1, 0, 0], Tensor3Sym::spherical(&e(0))).unwrap();
        let zero = Poly::zero();
        let t_map = |x: &Vector3, n: &Vector3| surface_traction(&zero, &h, x, n, &tol()).unwrap();
        let reduced = reconstruct_reduced_stress(t_map, &h, &x, &basis, &tol()).unwrap();
        assert_eq!(reduced, -e(0).outer(&e(0)));
        assert_eq!(reconstruct_stress(&reduced, &h, &x), Tensor2::ZERO);

        let got = reconstruct_reduced_stress(|_, _| Vector3::ZERO, &Poly::zero(), &x, &basis, &tol()).unwrap();
        assert_eq!(got, Tensor2::ZERO);

        let hc = Poly::constant(Tensor3Sym::spherical(&Vector3::new(1.0, 1.0, 1.0)));
        assert_eq!(reconstruct_stress(&t, &hc, &x), t);
    }
}
