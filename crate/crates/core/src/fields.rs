//! Polynomial tensor fields over 3D space.
//!
//! A field is a finite sum `Σ c_α x^α` with multi-index exponents `α` and
//! tensor-valued coefficients `c_α`. Differentiation acts on coefficients
//! exactly, so every differential identity used downstream holds to
//! roundoff. Fields are snapshots in space; there is no time variable.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::tensor::{Tensor2, Tensor3, Tensor3Sym, Vector3, PAIRS};

/// Largest total degree a field may carry.
pub const MAX_DEGREE: usize = 8;

/// Exponent triple `(a₁, a₂, a₃)` of `x₁^a₁ x₂^a₂ x₃^a₃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub [u8; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    /// Lowers exponent `k` by one.
    fn lowered(&self, k: usize) -> Monomial {
        let mut e = self.0;
        e[k] -= 1;
        Monomial(e)
    }

    /// All monomials of total degree at most `degree`, in a fixed order.
    pub fn up_to(degree: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        for d in 0..=degree {
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    out.push(Monomial([a as u8, b as u8, (d - a - b) as u8]));
                }
            }
        }
        out
    }
}

/// Coefficient types a [`Poly`] can carry.
pub trait Coefficient:
    Copy + PartialEq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    const ZERO: Self;
    fn max_abs(&self) -> f64;
    fn is_finite(&self) -> bool;
}

impl Coefficient for f64 {
    const ZERO: f64 = 0.0;
    fn max_abs(&self) -> f64 {
        self.abs()
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Coefficient for Vector3 {
    const ZERO: Vector3 = Vector3::ZERO;
    fn max_abs(&self) -> f64 {
        Vector3::max_abs(self)
    }
    fn is_finite(&self) -> bool {
        Vector3::is_finite(self)
    }
}

impl Coefficient for Tensor2 {
    const ZERO: Tensor2 = Tensor2::ZERO;
    fn max_abs(&self) -> f64 {
        Tensor2::max_abs(self)
    }
    fn is_finite(&self) -> bool {
        Tensor2::is_finite(self)
    }
}

impl Coefficient for Tensor3 {
    const ZERO: Tensor3 = Tensor3::ZERO;
    fn max_abs(&self) -> f64 {
        Tensor3::max_abs(self)
    }
    fn is_finite(&self) -> bool {
        self.0.iter().flatten().flatten().all(|c| c.is_finite())
    }
}

impl Coefficient for Tensor3Sym {
    const ZERO: Tensor3Sym = Tensor3Sym::ZERO;
    fn max_abs(&self) -> f64 {
        Tensor3Sym::max_abs(self)
    }
    fn is_finite(&self) -> bool {
        Tensor3Sym::is_finite(self)
    }
}

/// Polynomial field with coefficients of type `C`.
///
/// Terms are kept in a sorted map, so duplicate exponents are merged and
/// iteration order is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

pub type ScalarField = Poly<f64>;
pub type VelocityField = Poly<Vector3>;
pub type StressField = Poly<Tensor2>;
pub type HyperstressField = Poly<Tensor3Sym>;

impl<C: Coefficient> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::zero();
        p.accumulate(Monomial::ONE, c);
        p
    }

    /// Builds a field from `(exponent, coefficient)` pairs, merging
    /// duplicates. Rejects degrees above [`MAX_DEGREE`] and non-finite
    /// coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Result<Self> {
        let mut p = Self::zero();
        for (m, c) in terms {
            if m.degree() > MAX_DEGREE {
                return Err(Error::DegreeOverflow { degree: m.degree(), max: MAX_DEGREE });
            }
            if !c.is_finite() {
                return Err(Error::NonFinite);
            }
            p.accumulate(m, c);
        }
        Ok(p)
    }

    /// Single term `c x^e`.
    pub fn monomial(e: [u8; 3], c: C) -> Result<Self> {
        Self::from_terms([(Monomial(e), c)])
    }

    fn accumulate(&mut self, m: Monomial, c: C) {
        let slot = self.terms.entry(m).or_insert(C::ZERO);
        *slot = *slot + c;
        if *slot == C::ZERO {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree present; zero for the zero field.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn max_coefficient(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.max_abs()))
    }

    /// True when every coefficient is at most `rel_tol · scale` in magnitude.
    pub fn vanishes(&self, scale: f64, rel_tol: f64) -> bool {
        self.max_coefficient() <= rel_tol * scale
    }

    pub fn eval(&self, x: &Vector3) -> C {
        let deg = self.degree();
        let mut powers = [[1.0; MAX_DEGREE + 1]; 3];
        for (axis, row) in powers.iter_mut().enumerate() {
            for d in 1..=deg {
                row[d] = row[d - 1] * x.0[axis];
            }
        }
        self.terms.iter().fold(C::ZERO, |acc, (m, c)| {
            let [a, b, g] = m.0;
            acc + *c * (powers[0][a as usize] * powers[1][b as usize] * powers[2][g as usize])
        })
    }

    /// `∂f/∂x_k`.
    pub fn partial(&self, k: usize) -> Poly<C> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let a = m.0[k];
            if a > 0 {
                out.accumulate(m.lowered(k), *c * a as f64);
            }
        }
        out
    }

    /// Directional derivative `Σ_k d_k ∂f/∂x_k`.
    pub fn derivative_along(&self, d: &Vector3) -> Poly<C> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for k in 0..3 {
                let a = m.0[k];
                if a > 0 && d.0[k] != 0.0 {
                    out.accumulate(m.lowered(k), *c * (a as f64 * d.0[k]));
                }
            }
        }
        out
    }

    /// Applies a linear map to every coefficient.
    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.accumulate(*m, f(c));
        }
        out
    }

    /// Gradient with the derivative index placed by `embed(∂_k coefficient, k)`.
    fn grad_with<D: Coefficient>(&self, embed: impl Fn(&C, usize) -> D) -> Poly<D> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for k in 0..3 {
                let a = m.0[k];
                if a > 0 {
                    out.accumulate(m.lowered(k), embed(&(*c * a as f64), k));
                }
            }
        }
        out
    }
}

impl<C: Coefficient> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, *c);
        }
        out
    }
}

impl<C: Coefficient> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Poly<C>) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, *c * -1.0);
        }
        out
    }
}

impl<C: Coefficient> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self * -1.0
    }
}

impl<C: Coefficient> Mul<f64> for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, s: f64) -> Poly<C> {
        self.map(|c| *c * s)
    }
}

impl Poly<f64> {
    pub fn grad(&self) -> Poly<Vector3> {
        self.grad_with(|c, k| Vector3::unit(k) * *c)
    }
}

impl Poly<Vector3> {
    /// `(grad v)_ij = ∂v_i/∂x_j`.
    pub fn grad(&self) -> Poly<Tensor2> {
        self.grad_with(|c, k| {
            let mut t = Tensor2::ZERO;
            for i in 0..3 {
                t.0[i][k] = c.0[i];
            }
            t
        })
    }

    /// `(grad²v)_ijk = ∂²v_i/∂x_j∂x_k`, packed.
    ///
    /// The integer factor of each mixed partial is formed before it meets the
    /// coefficient, so both orders of differentiation give the same bits.
    pub fn grad2(&self) -> Poly<Tensor3Sym> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (p, &(j, k)) in PAIRS.iter().enumerate() {
                let (aj, ak) = (m.0[j] as u32, m.0[k] as u32);
                let factor = if j == k { aj * aj.saturating_sub(1) } else { aj * ak };
                if factor == 0 {
                    continue;
                }
                let mut e = m.0;
                e[j] -= 1;
                e[k] -= 1;
                let mut h = Tensor3Sym::ZERO;
                for i in 0..3 {
                    h.0[i][p] = c.0[i] * factor as f64;
                }
                out.accumulate(Monomial(e), h);
            }
        }
        out
    }

    pub fn div(&self) -> Poly<f64> {
        self.grad().map(Tensor2::trace)
    }

    /// `(curl v)_i = ε_ijk ∂v_k/∂x_j`.
    pub fn curl(&self) -> Poly<Vector3> {
        self.grad().map(|g| Vector3::new(g.0[2][1] - g.0[1][2], g.0[0][2] - g.0[2][0], g.0[1][0] - g.0[0][1]))
    }

    pub fn laplacian(&self) -> Poly<Vector3> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for k in 0..3 {
                let a = m.0[k] as u32;
                if a >= 2 {
                    let mut e = m.0;
                    e[k] -= 2;
                    out.accumulate(Monomial(e), *c * (a * (a - 1)) as f64);
                }
            }
        }
        out
    }
}

impl Poly<Tensor2> {
    /// Gradient with the derivative as the new last index.
    pub fn grad(&self) -> Poly<Tensor3> {
        self.grad_with(|c, k| {
            let mut t = Tensor3::ZERO;
            for i in 0..3 {
                for j in 0..3 {
                    t.0[i][j][k] = c.0[i][j];
                }
            }
            t
        })
    }

    /// `(div T)_i = ∂T_ij/∂x_j`.
    pub fn div(&self) -> Poly<Vector3> {
        self.grad_with(|c, k| c.column(k))
    }
}

impl Poly<Tensor3Sym> {
    /// `(div H)_ij = ∂H_ijk/∂x_k`.
    pub fn div(&self) -> Poly<Tensor2> {
        self.grad_with(|c, k| Tensor2::from_fn(|i, j| c.get(i, j, k)))
    }
}

/// Rank-tagged field, for code that handles fields of unknown rank.
#[derive(Debug, Clone, PartialEq)]
pub enum PolyField {
    Scalar(Poly<f64>),
    Vector(Poly<Vector3>),
    Tensor(Poly<Tensor2>),
    /// General third-order field (gradient of a second-order field).
    Tensor3(Poly<Tensor3>),
    /// Third-order field with right-pair symmetry.
    Hyperstress(Poly<Tensor3Sym>),
}

impl PolyField {
    pub fn rank(&self) -> usize {
        match self {
            PolyField::Scalar(_) => 0,
            PolyField::Vector(_) => 1,
            PolyField::Tensor(_) => 2,
            PolyField::Tensor3(_) | PolyField::Hyperstress(_) => 3,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            PolyField::Scalar(p) => p.degree(),
            PolyField::Vector(p) => p.degree(),
            PolyField::Tensor(p) => p.degree(),
            PolyField::Tensor3(p) => p.degree(),
            PolyField::Hyperstress(p) => p.degree(),
        }
    }

    pub fn grad(&self) -> Result<PolyField> {
        match self {
            PolyField::Scalar(p) => Ok(PolyField::Vector(p.grad())),
            PolyField::Vector(p) => Ok(PolyField::Tensor(p.grad())),
            PolyField::Tensor(p) => Ok(PolyField::Tensor3(p.grad())),
            PolyField::Tensor3(_) | PolyField::Hyperstress(_) => Err(Error::UnsupportedOrder { rank: 3 }),
        }
    }

    pub fn div(&self) -> Result<PolyField> {
        match self {
            PolyField::Scalar(_) => Err(Error::DivergenceOfScalar),
            PolyField::Vector(p) => Ok(PolyField::Scalar(p.div())),
            PolyField::Tensor(p) => Ok(PolyField::Vector(p.div())),
            PolyField::Tensor3(p) => Ok(PolyField::Tensor(p.grad_with(|c, k| Tensor2::from_fn(|i, j| c.0[i][j][k])))),
            PolyField::Hyperstress(p) => Ok(PolyField::Tensor(p.div())),
        }
    }
}

/// Deterministic orthonormal tangent pair for the plane with normal `n`.
///
/// Starts from the coordinate axis least aligned with `n` (lowest index on
/// ties), removes its normal component and completes with `n × τ₁`.
pub fn tangent_basis(n: &Vector3) -> (Vector3, Vector3) {
    let mut axis = 0;
    for k in 1..3 {
        if n.0[k].abs() < n.0[axis].abs() {
            axis = k;
        }
    }
    let e = Vector3::unit(axis);
    let t1 = (e - *n * e.dot(n)).normalized().expect("axis least aligned with a unit normal is never parallel to it");
    let t2 = n.cross(&t1);
    (t1, t2)
}

/// The field `x ↦ ˢdiv((H(x) n) ˢI)` on planes with constant unit normal `n`.
///
/// On a flat surface the tangential divergence is `Σ_α (∂_{τα}(H n)) τα`
/// over an orthonormal tangent pair `τα`.
pub fn surface_div_field(h: &HyperstressField, n: &Vector3, unit_tol: f64) -> Result<VelocityField> {
    n.check_unit(unit_tol)?;
    let (t1, t2) = tangent_basis(n);
    let mut out = Poly::zero();
    for t in [t1, t2] {
        let dh = h.derivative_along(&t);
        out = out + dh.map(|c| c.apply(n).apply(&t));
    }
    Ok(out)
}

/// `ˢdiv((H n) ˢI)` at `x` on the plane through `x` with normal `n`.
pub fn surface_div_flat(h: &HyperstressField, n: &Vector3, x: &Vector3, unit_tol: f64) -> Result<Vector3> {
    Ok(surface_div_field(h, n, unit_tol)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(terms: &[([u8; 3], [f64; 3])]) -> VelocityField {
        Poly::from_terms(terms.iter().map(|&(e, c)| (Monomial(e), Vector3(c)))).unwrap()
    }

    #[test]
    fn identity_flow_gradient() {
        let x = v(&[([1, 0, 0], [1.0, 0.0, 0.0]), ([0, 1, 0], [0.0, 1.0, 0.0]), ([0, 0, 1], [0.0, 0.0, 1.0])]);
        let g = x.grad();
        assert_eq!(g.eval(&Vector3::new(0.3, -2.0, 7.0)), Tensor2::IDENTITY);
        assert_eq!(g.degree(), 0);
        assert!(Poly::constant(Vector3::new(1.0, 2.0, 3.0)).grad().is_empty());
    }

    #[test]
    fn grad2_examples() {
        let f = v(&[([2, 0, 0], [0.0, 0.0, 1.0])]);
        let h = f.grad2().eval(&Vector3::new(0.5, 0.5, 0.5));
        let mut expected = Tensor3Sym::ZERO;
        expected.set(2, 0, 0, 2.0);
        assert_eq!(h, expected);

        let f = v(&[([1, 1, 0], [0.0, 0.0, 1.0])]);
        let mut expected = Tensor3Sym::ZERO;
        expected.set(2, 0, 1, 1.0);
        assert_eq!(f.grad2().eval(&Vector3::new(-1.0, 3.0, 2.0)), expected);

        let f = v(&[([0, 3, 0], [1.0, 0.0, 0.0])]);
        let x = Vector3::new(0.1, -1.5, 4.0);
        assert_eq!(f.grad2().eval(&x).get(0, 1, 1), 6.0 * x[1]);

        let lin = v(&[([1, 0, 0], [1.0, 2.0, 3.0]), ([0, 0, 0], [4.0, 5.0, 6.0])]);
        assert!(lin.grad2().is_empty());
    }

    #[test]
    fn div_examples() {
        // H(x) = x₁ (e₁⊗I)
        let h = Poly::monomial([1, 0, 0], Tensor3Sym::spherical(&Vector3::unit(0))).unwrap();
        assert_eq!(h.div().eval(&Vector3::new(9.0, 1.0, 2.0)), Vector3::unit(0).outer(&Vector3::unit(0)));
        assert!(Poly::constant(Tensor3Sym::spherical(&Vector3::new(1.0, 1.0, 1.0))).div().is_empty());
        // T(x) = x₂ e₁⊗e₂
        let t = Poly::monomial([0, 1, 0], Vector3::unit(0).outer(&Vector3::unit(1))).unwrap();
        assert_eq!(t.div().eval(&Vector3::new(1.0, 2.0, 3.0)), Vector3::unit(0));
    }

    #[test]
    fn curl_laplacian_examples() {
        let f = v(&[([2, 0, 0], [0.0, 0.0, 1.0])]);
        let x = Vector3::new(0.2, 0.4, -0.1);
        assert_eq!(f.laplacian().eval(&x), Vector3::new(0.0, 0.0, 2.0));
        assert!(f.div().is_empty());
        assert_eq!(f.curl().curl().eval(&x), Vector3::new(0.0, 0.0, -2.0));

        let c = Poly::constant(Vector3::new(1.0, -1.0, 2.0));
        assert!(c.curl().is_empty() && c.laplacian().is_empty() && c.div().is_empty());

        let id = v(&[([1, 0, 0], [1.0, 0.0, 0.0]), ([0, 1, 0], [0.0, 1.0, 0.0]), ([0, 0, 1], [0.0, 0.0, 1.0])]);
        assert_eq!(id.div().eval(&x), 3.0);
        assert!(id.curl().is_empty());
        assert!(id.laplacian().is_empty());
    }

    #[test]
    fn degree_overflow_rejected() {
        let err = Poly::monomial([5, 4, 0], 1.0).unwrap_err();
        assert_eq!(err, Error::DegreeOverflow { degree: 9, max: MAX_DEGREE });
        assert!(Poly::monomial([4, 4, 0], 1.0).is_ok());
    }

    #[test]
    fn duplicates_merge_and_cancel() {
        let p =
            Poly::from_terms([(Monomial([1, 0, 0]), 2.0), (Monomial([1, 0, 0]), -2.0), (Monomial::ONE, 1.0)]).unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn rank_tagged_errors() {
        let h = PolyField::Hyperstress(Poly::zero());
        assert_eq!(h.grad().unwrap_err(), Error::UnsupportedOrder { rank: 3 });
        assert_eq!(PolyField::Scalar(Poly::zero()).div().unwrap_err(), Error::DivergenceOfScalar);
        let t = PolyField::Tensor(Poly::monomial([0, 1, 0], Tensor2::IDENTITY).unwrap());
        assert_eq!(t.grad().unwrap().rank(), 3);
    }

    #[test]
    fn surface_div_examples() {
        let x = Vector3::new(0.3, 0.7, 0.1);
        let k = Tensor3Sym::spherical(&Vector3::new(1.0, 2.0, 3.0));
        assert_eq!(surface_div_flat(&Poly::constant(k), &Vector3::unit(2), &x, 1e-12).unwrap(), Vector3::ZERO);

        let h = Poly::monomial([1, 0, 0], Tensor3Sym::spherical(&Vector3::unit(0))).unwrap();
        assert_eq!(surface_div_flat(&h, &Vector3::unit(0), &x, 1e-12).unwrap().max_abs(), 0.0);

        assert!(matches!(surface_div_flat(&h, &Vector3::new(1.0, 1.0, 0.0), &x, 1e-12), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn tangent_basis_is_orthonormal() {
        for n in [Vector3::unit(0), Vector3::new(0.6, 0.8, 0.0), Vector3::new(1.0, 1.0, 1.0).normalized().unwrap()] {
            let (a, b) = tangent_basis(&n);
            assert!((a.norm() - 1.0).abs() < 1e-15 && (b.norm() - 1.0).abs() < 1e-15);
            assert!(a.dot(&n).abs() < 1e-15 && b.dot(&n).abs() < 1e-15 && a.dot(&b).abs() < 1e-15);
        }
    }
}
