//! Hyperstresses that transmit no edge forces.
//!
//! If the edge force vanishes on every edge through a point then
//! `H = h ⊗ I` there, with `3h = H[I]`; conversely every such `H` gives
//! `f = (n′·m′ + n″·m″) h = 0`. The forward direction rests on a rotation
//! scan: turning the basis by `θ` about `e₃` gives
//!
//! ```text
//! f̄₁₂(θ) = sin 2θ (h₂ − h₁) + cos 2θ f₁₂
//! ```
//!
//! so zero edge forces at `θ = π/4` force `h₁ = h₂`.
//!
//! Also here: the Navier–Stokes-α split `H = H₁ + H₂` with a reactive
//! `H₁` and a spherical active part `H₂ = −g ⊗ I`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::fields::VelocityField;
use crate::geometry::{coordinate_edge, coordinate_edge_in, EdgeFrame};
use crate::tensor::{OrthonormalBasis, Rotation, Tensor2, Tensor3Sym, Vector3};
use crate::tolerance::Tolerances;
use crate::traction::edge_force_unchecked;

/// `H = h ⊗ I`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SphericalHyperstress {
    pub h: Vector3,
}

impl SphericalHyperstress {
    pub fn expand(&self) -> Tensor3Sym {
        Tensor3Sym::spherical(&self.h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Classification {
    /// `H[I]/3`.
    pub h: Vector3,
    /// Max-abs packed component of `H − h ⊗ I`.
    pub residual: f64,
    pub spherical: bool,
}

impl Classification {
    pub fn accepted(&self) -> Option<SphericalHyperstress> {
        self.spherical.then_some(SphericalHyperstress { h: self.h })
    }
}

/// Fits `h = H[I]/3` and accepts iff the max-abs residual is at most `tol`.
pub fn classify_spherical(h: &Tensor3Sym, tol: f64) -> Classification {
    let fit = h.contract2(&Tensor2::IDENTITY) * (1.0 / 3.0);
    let residual = (*h - Tensor3Sym::spherical(&fit)).max_abs();
    Classification { h: fit, residual, spherical: residual <= tol }
}

/// `(i, j)` such that turning about `e_axis` carries `e_i` towards `e_j`.
fn scan_pair(axis: usize) -> Result<(usize, usize)> {
    if axis > 2 {
        return Err(Error::BadAxis(axis));
    }
    Ok(((axis + 1) % 3, (axis + 2) % 3))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanSample {
    pub theta: f64,
    pub force: Vector3,
}

/// Edge force on the coordinate edge of the basis turned by `θ` about
/// `e_axis`, from the closed-form expansion. Axis 2 scans the `(1, 2)`
/// edge, axis 0 the `(2, 3)` edge and axis 1 the `(3, 1)` edge.
pub fn edge_scan(h: &Tensor3Sym, axis: usize, thetas: &[f64]) -> Result<Vec<ScanSample>> {
    let (i, j) = scan_pair(axis)?;
    let (ei, ej) = (Vector3::unit(i), Vector3::unit(j));
    let hi = h.contract_dyad(&ei, &ei);
    let hj = h.contract_dyad(&ej, &ej);
    let fij = h.contract_dyad(&ei, &ej) * 2.0;
    Ok(thetas
        .iter()
        .map(|&theta| {
            let (s2, c2) = (libm::sin(2.0 * theta), libm::cos(2.0 * theta));
            ScanSample { theta, force: (hj - hi) * s2 + fij * c2 }
        })
        .collect())
}

/// The same quantity evaluated as `2 Q (Qᵀ∗H)[eᵢ ⊗ eⱼ]`.
pub fn edge_scan_direct(h: &Tensor3Sym, axis: usize, thetas: &[f64]) -> Result<Vec<ScanSample>> {
    let (i, j) = scan_pair(axis)?;
    let (ei, ej) = (Vector3::unit(i), Vector3::unit(j));
    thetas
        .iter()
        .map(|&theta| {
            let q = Rotation::about_coordinate_axis(axis, theta)?;
            let pulled = q.transpose().rotate3(h);
            Ok(ScanSample { theta, force: q.apply(&(pulled.contract_dyad(&ei, &ej) * 2.0)) })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EdgeProbe {
    pub name: &'static str,
    pub rotated: bool,
    pub frame: EdgeFrame,
    pub force: Vector3,
}

/// Frames probed by [`prove_spherical_from_zero_edges`]: the three
/// coordinate edges, then the `(1, 2)` edge turned by `π/4` about `e₃`
/// and the `(2, 3)` edge turned by `π/4` about `e₁`.
pub fn probe_frames() -> [(&'static str, bool, EdgeFrame); 5] {
    let turned = |axis: usize| {
        let q = Rotation::about_coordinate_axis(axis, FRAC_PI_4).expect("coordinate axis");
        let (i, j) = scan_pair(axis).expect("coordinate axis");
        coordinate_edge_in(&OrthonormalBasis::rotated(&q), i.min(j), i.max(j)).expect("distinct axes")
    };
    let edge = |j, k| coordinate_edge(j, k).expect("distinct axes");
    [
        ("E12", false, edge(0, 1)),
        ("E13", false, edge(0, 2)),
        ("E23", false, edge(1, 2)),
        ("E12 turned pi/4 about e3", true, turned(2)),
        ("E23 turned pi/4 about e1", true, turned(0)),
    ]
}

/// Evaluates `f_map` on every probe frame.
pub fn probe_edges(f_map: impl Fn(&EdgeFrame) -> Vector3) -> Vec<EdgeProbe> {
    probe_frames()
        .into_iter()
        .map(|(name, rotated, frame)| EdgeProbe { name, rotated, force: f_map(&frame), frame })
        .collect()
}

/// Recovers `h` from hypertraction and edge-force maps that vanish on the
/// probe edges.
///
/// Fails with [`Error::NonSpherical`] naming the worst probe when any edge
/// force exceeds `tol.edge_probe`, or when the coordinate hypertractions
/// disagree by more than `tol.spherical`.
pub fn prove_spherical_from_zero_edges(
    h_map: impl Fn(&Vector3) -> Vector3,
    f_map: impl Fn(&EdgeFrame) -> Vector3,
    tol: &Tolerances,
) -> Result<Vector3> {
    let probes = probe_edges(f_map);
    let worst = probes.iter().max_by(|a, b| a.force.norm().total_cmp(&b.force.norm())).expect("probe set is non-empty");
    if worst.force.norm() > tol.edge_probe {
        return Err(Error::NonSpherical { probe: worst.name.into(), magnitude: worst.force.norm() });
    }
    let hs = [0, 1, 2].map(|j| {
        let e = Vector3::unit(j);
        h_map(&e)
    });
    let h = (hs[0] + hs[1] + hs[2]) * (1.0 / 3.0);
    for (j, hj) in hs.iter().enumerate() {
        let gap = (*hj - h).max_abs();
        if gap > tol.spherical {
            return Err(Error::NonSpherical { probe: format!("h{}", j + 1), magnitude: gap });
        }
    }
    Ok(h)
}

/// Maps induced by a constant hyperstress, for feeding
/// [`prove_spherical_from_zero_edges`].
pub fn maps_of(h: &Tensor3Sym) -> (impl Fn(&Vector3) -> Vector3 + '_, impl Fn(&EdgeFrame) -> Vector3 + '_) {
    (move |n: &Vector3| h.contract_dyad(n, n), move |e: &EdgeFrame| edge_force_unchecked(h, e))
}

/// `λ = tr(wH)/3` and the max-abs residual of `wH − λI`.
pub fn forte_vianello_check(h: &Tensor3Sym, w: &Vector3) -> (f64, f64) {
    let wh = h.left_contract(w);
    let lambda = wh.trace() / 3.0;
    (lambda, (wh - Tensor2::IDENTITY * lambda).max_abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NsAlphaDecomposition {
    /// Reactive part, `(H₁)_ijk = ½(δ_ij g_k + δ_ik g_j)`.
    pub reactive: Tensor3Sym,
    /// Active part, `−g ⊗ I`.
    pub active: Tensor3Sym,
    pub g: Vector3,
}

impl NsAlphaDecomposition {
    pub fn total(&self) -> Tensor3Sym {
        self.reactive + self.active
    }
}

pub fn nsalpha_decompose(g: &Vector3) -> NsAlphaDecomposition {
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let reactive = Tensor3Sym::from_fn(|i, j, k| 0.5 * (d(i, j) * g.0[k] + d(i, k) * g.0[j]));
    NsAlphaDecomposition { reactive, active: Tensor3Sym::spherical(&-*g), g: *g }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NsAlphaPower {
    /// `|(H₁ + H₂)·grad²v − g·curl curl v|` at the point.
    pub full: f64,
    /// `|g·curl curl v + g·Δv|`, only when `div v ≡ 0`.
    pub divergence_free: Option<f64>,
}

/// Checks `H·grad²v = g·curl curl v` at `x`, and `g·curl curl v = −g·Δv`
/// when `v` is divergence-free. Incompressibility is decided on the
/// coefficients of `div v`, relative to the largest coefficient of `v`.
pub fn nsalpha_power_check(g: &Vector3, v: &VelocityField, x: &Vector3, tol: &Tolerances) -> NsAlphaPower {
    let hyper = nsalpha_decompose(g).total();
    let curl_curl = v.curl().curl().eval(x);
    let full = (hyper.inner(&v.grad2().eval(x)) - g.dot(&curl_curl)).abs();
    let div_free = v.div().vanishes(v.max_coefficient(), tol.coefficient);
    let divergence_free = div_free.then(|| (g.dot(&curl_curl) + g.dot(&v.laplacian().eval(x))).abs());
    NsAlphaPower { full, divergence_free }
}

/// `g = ζ Δv(x)`.
pub fn nsalpha_constitutive(zeta: f64, v: &VelocityField, x: &Vector3) -> Result<Vector3> {
    if zeta.is_nan() || zeta <= 0.0 {
        return Err(Error::NonPositive(zeta));
    }
    Ok(v.laplacian().eval(x) * zeta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Poly;

    fn e(i: usize) -> Vector3 {
        Vector3::unit(i)
    }

    fn h123() -> Tensor3Sym {
        let mut h = Tensor3Sym::ZERO;
        h.set(0, 1, 2, 1.0);
        h
    }

    #[test]
    fn classify_examples() {
        let h = Vector3::new(1.0, -2.0, 0.5);
        let c = classify_spherical(&Tensor3Sym::spherical(&h), 1e-12);
        assert!(c.residual <= 1e-15);
        assert_eq!(c.accepted().unwrap().h, h);

        let c = classify_spherical(&h123(), 1e-12);
        assert_eq!(c.h, Vector3::ZERO);
        assert_eq!(c.residual, 1.0);
        assert!(c.accepted().is_none());

        let c = classify_spherical(&Tensor3Sym::ZERO, 1e-12);
        assert_eq!((c.h, c.residual, c.spherical), (Vector3::ZERO, 0.0, true));
    }

    #[test]
    fn edge_scan_examples() {
        let thetas: Vec<f64> = (0..16).map(|i| i as f64 * 0.2).collect();
        let hs = Tensor3Sym::spherical(&Vector3::new(0.4, 1.0, -3.0));
        for axis in 0..3 {
            assert!(edge_scan(&hs, axis, &thetas).unwrap().iter().all(|s| s.force.max_abs() < 1e-15));
        }

        let h = Tensor3Sym::sym_dyad(&e(0), &e(0), &e(0)) + Tensor3Sym::sym_dyad(&e(0), &e(1), &e(1)) * 2.0;
        let s = edge_scan(&h, 2, &[FRAC_PI_4]).unwrap();
        assert!((s[0].force - e(0)).max_abs() < 1e-15);

        let g = h123() + h;
        let s = edge_scan(&g, 2, &[0.0]).unwrap();
        assert_eq!(s[0].force, g.contract_dyad(&e(0), &e(1)) * 2.0);
        assert!(matches!(edge_scan(&g, 3, &[0.0]), Err(Error::BadAxis(3))));
    }

    #[test]
    fn edge_scan_matches_rotation() {
        let h = Tensor3Sym::from_fn(|i, j, k| (i * 7 + j * 3 + k) as f64 * 0.1 - 0.9);
        let thetas: Vec<f64> = (0..64).map(|i| i as f64 * core::f64::consts::PI / 64.0).collect();
        for axis in 0..3 {
            let a = edge_scan(&h, axis, &thetas).unwrap();
            let b = edge_scan_direct(&h, axis, &thetas).unwrap();
            for (a, b) in a.iter().zip(&b) {
                assert!((a.force - b.force).max_abs() < 1e-13, "axis {axis} θ {}", a.theta);
            }
        }
    }

    #[test]
    fn probe_frames_are_valid_and_match_the_scan() {
        let h = Tensor3Sym::from_fn(|i, j, k| (i + 2 * j + 3 * k) as f64 - 2.5);
        for (_, _, frame) in probe_frames() {
            frame.validate(1e-12).unwrap();
        }
        let probes = probe_edges(|f| edge_force_unchecked(&h, f));
        let s3 = edge_scan(&h, 2, &[FRAC_PI_4]).unwrap()[0].force;
        let s1 = edge_scan(&h, 0, &[FRAC_PI_4]).unwrap()[0].force;
        assert!((probes[3].force - s3).max_abs() < 1e-13);
        assert!((probes[4].force - s1).max_abs() < 1e-13);
    }

    #[test]
    fn prove_spherical_examples() {
        let tol = Tolerances::default();
        let h = Vector3::new(1.0, -2.0, 0.5);
        let hs = Tensor3Sym::spherical(&h);
        let (hm, fm) = maps_of(&hs);
        assert!((prove_spherical_from_zero_edges(hm, fm, &tol).unwrap() - h).max_abs() < 1e-15);

        let h1 = Tensor3Sym::sym_dyad(&e(0), &e(0), &e(0));
        let (hm, fm) = maps_of(&h1);
        for probe in &probe_edges(&fm)[..3] {
            assert_eq!(probe.force, Vector3::ZERO);
        }
        match prove_spherical_from_zero_edges(hm, fm, &tol) {
            Err(Error::NonSpherical { probe, magnitude }) => {
                assert!(probe.contains("turned"));
                assert!((magnitude - 1.0).abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }

        let h = prove_spherical_from_zero_edges(|_| Vector3::ZERO, |_| Vector3::ZERO, &tol).unwrap();
        assert_eq!(h, Vector3::ZERO);
    }

    #[test]
    fn forte_vianello_examples() {
        let (l, r) = forte_vianello_check(&Tensor3Sym::spherical(&Vector3::new(1.0, 2.0, 3.0)), &e(1));
        assert_eq!((l, r), (2.0, 0.0));
        let (l, r) = forte_vianello_check(&h123(), &e(0));
        assert_eq!((l, r), (0.0, 1.0));
        let (l, r) = forte_vianello_check(&h123(), &Vector3::ZERO);
        assert_eq!((l, r), (0.0, 0.0));
    }

    #[test]
    fn nsalpha_decompose_examples() {
        let d = nsalpha_decompose(&e(2));
        assert_eq!(d.reactive.get(2, 0, 0), 0.0);
        assert_eq!(d.reactive.get(0, 0, 2), 0.5);
        let c = classify_spherical(&d.active, 1e-12);
        assert_eq!(c.accepted().unwrap().h, -e(2));
        let z = nsalpha_decompose(&Vector3::ZERO);
        assert_eq!((z.reactive, z.active), (Tensor3Sym::ZERO, Tensor3Sym::ZERO));
        let frame = coordinate_edge(0, 1).unwrap();
        assert_eq!(edge_force_unchecked(&d.active, &frame), Vector3::ZERO);
    }

    #[test]
    fn nsalpha_power_examples() {
        let tol = Tolerances::default();
        let x = Vector3::new(0.3, -0.2, 1.5);
        let v = Poly::monomial([2, 0, 0], e(2)).unwrap();
        let hyper = nsalpha_decompose(&e(2)).total();
        assert_eq!(hyper.inner(&v.grad2().eval(&x)), -2.0);
        let r = nsalpha_power_check(&e(2), &v, &x, &tol);
        assert_eq!(r.full, 0.0);
        assert_eq!(r.divergence_free, Some(0.0));

        let lin = Poly::monomial([0, 1, 0], Vector3::new(1.0, 2.0, 3.0)).unwrap();
        let r = nsalpha_power_check(&Vector3::new(1.0, 1.0, 1.0), &lin, &x, &tol);
        assert_eq!(r.full, 0.0);

        let v = Poly::monomial([2, 0, 0], e(0)).unwrap();
        let r = nsalpha_power_check(&e(2), &v, &x, &tol);
        assert_eq!(r.full, 0.0);
        assert_eq!(r.divergence_free, None);
    }

    #[test]
    fn nsalpha_constitutive_examples() {
        let v = Poly::monomial([2, 0, 0], e(2)).unwrap();
        let x = Vector3::new(1.0, 2.0, 3.0);
        assert_eq!(nsalpha_constitutive(2.0, &v, &x).unwrap(), Vector3::new(0.0, 0.0, 4.0));
        let harmonic = Poly::monomial([1, 1, 0], e(0)).unwrap();
        assert_eq!(nsalpha_constitutive(1.0, &harmonic, &x).unwrap(), Vector3::ZERO);
        assert!(matches!(nsalpha_constitutive(0.0, &v, &x), Err(Error::NonPositive(_))));
    }
}
