//! Virtual-power identity and bulk/boundary balances over polyhedral parts.
//!
//! For polynomial fields the integration-by-parts identity
//!
//! ```text
//! ∫_P T·grad v + H·grad²v
//!   = ∫_P (−div T̃)·v
//!   + Σ_F ∫_F (T̃n − ˢdiv((Hn)ˢI))·v + (Hn)n·∂ₙv
//!   + Σ_E ∫_E ⟦(Hn)m⟧·v
//! ```
//!
//! holds exactly, and all quadratures are chosen exact for the integrand
//! degree, so residuals measure roundoff only. Simple continua are the
//! `H = 0` case of the same code.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fields::{surface_div_field, HyperstressField, Poly, StressField, VelocityField, MAX_DEGREE};
use crate::geometry::PolyhedralPart;
use crate::tensor::{Tensor2, Vector3};
use crate::tolerance::Tolerances;
use crate::traction::{edge_force_unchecked, surface_traction_field};

/// Stress, hyperstress and test velocity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FieldTriple {
    pub stress: StressField,
    pub hyperstress: HyperstressField,
    pub velocity: VelocityField,
}

impl FieldTriple {
    pub fn new(stress: StressField, hyperstress: HyperstressField, velocity: VelocityField) -> Self {
        FieldTriple { stress, hyperstress, velocity }
    }

    fn check_degrees(&self) -> Result<()> {
        for degree in [self.stress.degree(), self.hyperstress.degree(), self.velocity.degree()] {
            if degree > MAX_DEGREE {
                return Err(Error::DegreeOverflow { degree, max: MAX_DEGREE });
            }
        }
        Ok(())
    }
}

/// How the edge integrals enter the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EdgeTerm {
    #[default]
    Include,
    /// Drop edge integrals entirely.
    Omit,
    /// Flip the sign of every edge integral (mutation check).
    Negate,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FaceContribution {
    pub face: usize,
    /// `∫_F t·v`
    pub traction_power: f64,
    /// `∫_F h·∂ₙv`
    pub hypertraction_power: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EdgeContribution {
    pub edge: usize,
    pub vertices: (usize, usize),
    /// `∫_E f·v` as it entered the balance (after [`EdgeTerm`]).
    pub power: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BalanceReport {
    pub part: String,
    pub internal_power: f64,
    /// Face plus edge contributions.
    pub external_power: f64,
    /// `∫_P (−div T̃)·v`
    pub bulk_term: f64,
    /// `|internal − (bulk + external)| / max(|internal|, 1)`
    pub pvp_residual: f64,
    /// Largest `|div T̃|` over the sample points.
    pub bulk_residual_max: f64,
    /// `∫_∂P t + ∫_E f`
    pub global_force_residual: Vector3,
    pub edge_term: EdgeTerm,
    pub faces: Vec<FaceContribution>,
    pub edges: Vec<EdgeContribution>,
    pub tolerance: f64,
    pub passed: bool,
}

/// Fields derived once per triple and reused across integrals.
struct Derived {
    reduced_div: VelocityField,
    grad_v: crate::fields::Poly<Tensor2>,
    grad2_v: HyperstressField,
}

impl Derived {
    fn new(fields: &FieldTriple) -> Self {
        let reduced = &fields.stress - &fields.hyperstress.div();
        Derived { reduced_div: reduced.div(), grad_v: fields.velocity.grad(), grad2_v: fields.velocity.grad2() }
    }
}

/// `∫_P T·grad v + H·grad²v`.
pub fn internal_power(fields: &FieldTriple, part: &PolyhedralPart) -> Result<f64> {
    fields.check_degrees()?;
    let d = Derived::new(fields);
    Ok(internal_with(fields, &d, part))
}

fn internal_with(fields: &FieldTriple, d: &Derived, part: &PolyhedralPart) -> f64 {
    let degree = (fields.stress.degree() + d.grad_v.degree()).max(fields.hyperstress.degree() + d.grad2_v.degree());
    part.integrate_volume_with(degree, |x| {
        fields.stress.eval(x).dot(&d.grad_v.eval(x)) + fields.hyperstress.eval(x).inner(&d.grad2_v.eval(x))
    })
}

struct Boundary {
    faces: Vec<FaceContribution>,
    edges: Vec<EdgeContribution>,
}

fn boundary_with(fields: &FieldTriple, d: &Derived, part: &PolyhedralPart, tol: &Tolerances) -> Result<Boundary> {
    let v = &fields.velocity;
    let mut faces = Vec::with_capacity(part.faces().len());
    for (fi, face) in part.faces().iter().enumerate() {
        let n = face.normal;
        let t = surface_traction_field(&fields.stress, &fields.hyperstress, &n, tol)?;
        let h = fields.hyperstress.map(|c| c.contract_dyad(&n, &n));
        let dn_v = d.grad_v.map(|g| g.apply(&n));
        let traction_power = part.integrate_face_with(fi, t.degree() + v.degree(), |x| t.eval(x).dot(&v.eval(x)));
        let hypertraction_power =
            part.integrate_face_with(fi, h.degree() + dn_v.degree(), |x| h.eval(x).dot(&dn_v.eval(x)));
        faces.push(FaceContribution { face: fi, traction_power, hypertraction_power });
    }
    let mut edges = Vec::with_capacity(part.edges().len());
    for (ei, edge) in part.edges().iter().enumerate() {
        let f = fields.hyperstress.map(|c| edge_force_unchecked(c, &edge.frame));
        let power = part.integrate_edge_with(ei, f.degree() + v.degree(), |x| f.eval(x).dot(&v.eval(x)));
        edges.push(EdgeContribution { edge: ei, vertices: edge.vertices, power });
    }
    Ok(Boundary { faces, edges })
}

/// `Σ_F ∫_F (t·v + h·∂ₙv) + Σ_E ∫_E f·v` with `t`, `h`, `f` induced by the fields.
pub fn external_power(fields: &FieldTriple, part: &PolyhedralPart, tol: &Tolerances) -> Result<f64> {
    fields.check_degrees()?;
    let d = Derived::new(fields);
    let b = boundary_with(fields, &d, part, tol)?;
    Ok(b.faces.iter().map(|f| f.traction_power + f.hypertraction_power).sum::<f64>()
        + b.edges.iter().map(|e| e.power).sum::<f64>())
}

/// Checks the integration-by-parts identity on `part`.
///
/// Tolerance breaches are flagged in the report, not raised.
pub fn verify_pvp(
    fields: &FieldTriple,
    part: &PolyhedralPart,
    part_id: &str,
    edge_term: EdgeTerm,
    tol: &Tolerances,
) -> Result<BalanceReport> {
    fields.check_degrees()?;
    let d = Derived::new(fields);
    let internal = internal_with(fields, &d, part);
    let v = &fields.velocity;
    let bulk_term =
        part.integrate_volume_with(d.reduced_div.degree() + v.degree(), |x| -d.reduced_div.eval(x).dot(&v.eval(x)));

    let mut boundary = boundary_with(fields, &d, part, tol)?;
    let sign = match edge_term {
        EdgeTerm::Include => 1.0,
        EdgeTerm::Omit => 0.0,
        EdgeTerm::Negate => -1.0,
    };
    boundary.edges.iter_mut().for_each(|e| e.power *= sign);

    let external: f64 = boundary.faces.iter().map(|f| f.traction_power + f.hypertraction_power).sum::<f64>()
        + boundary.edges.iter().map(|e| e.power).sum::<f64>();
    let pvp_residual = (internal - (bulk_term + external)).abs() / internal.abs().max(1.0);

    let mut samples = part.vertices().to_vec();
    samples.push(part.centroid_of_vertices());
    let bulk_residual_max = bulk_residual(fields, &samples);
    let global_force_residual = global_balance(fields, part, tol)?;

    Ok(BalanceReport {
        part: String::from(part_id),
        internal_power: internal,
        external_power: external,
        bulk_term,
        pvp_residual,
        bulk_residual_max,
        global_force_residual,
        edge_term,
        faces: boundary.faces,
        edges: boundary.edges,
        tolerance: tol.pvp,
        passed: pvp_residual <= tol.pvp,
    })
}

/// Largest `|div(T − div H)|` over `points`.
pub fn bulk_residual(fields: &FieldTriple, points: &[Vector3]) -> f64 {
    let reduced = &fields.stress - &fields.hyperstress.div();
    let div = reduced.div();
    points.iter().map(|x| div.eval(x).norm()).fold(0.0, f64::max)
}

/// `∫_∂P t + Σ_E ∫_E f`; equals `∫_P div T̃`, hence zero in equilibrium.
pub fn global_balance(fields: &FieldTriple, part: &PolyhedralPart, tol: &Tolerances) -> Result<Vector3> {
    let mut total = Vector3::ZERO;
    for (fi, face) in part.faces().iter().enumerate() {
        let t = surface_traction_field(&fields.stress, &fields.hyperstress, &face.normal, tol)?;
        total += part.integrate_face_with(fi, t.degree(), |x| t.eval(x));
    }
    for (ei, edge) in part.edges().iter().enumerate() {
        let f = fields.hyperstress.map(|c| edge_force_unchecked(c, &edge.frame));
        total += part.integrate_edge_with(ei, f.degree(), |x| f.eval(x));
    }
    Ok(total)
}

/// Loads assigned on the faces and edges of a body's boundary; `None`
/// marks a portion where nothing is assigned.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundaryLoads {
    pub traction: Vec<Option<VelocityField>>,
    pub hypertraction: Vec<Option<VelocityField>>,
    pub edge_force: Vec<Option<VelocityField>>,
}

impl BoundaryLoads {
    /// The loads the fields themselves induce on every face and edge.
    pub fn induced(
        stress: &StressField,
        hyperstress: &HyperstressField,
        part: &PolyhedralPart,
        tol: &Tolerances,
    ) -> Result<Self> {
        let mut loads = BoundaryLoads::default();
        for face in part.faces() {
            let n = face.normal;
            loads.traction.push(Some(surface_traction_field(stress, hyperstress, &n, tol)?));
            loads.hypertraction.push(Some(hyperstress.map(|c| c.contract_dyad(&n, &n))));
        }
        for edge in part.edges() {
            loads.edge_force.push(Some(hyperstress.map(|c| edge_force_unchecked(c, &edge.frame))));
        }
        Ok(loads)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FaceResidual {
    pub face: usize,
    pub traction: Option<f64>,
    pub hypertraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EdgeResidual {
    pub edge: usize,
    pub force: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundaryResiduals {
    pub faces: Vec<FaceResidual>,
    pub edges: Vec<EdgeResidual>,
}

impl BoundaryResiduals {
    pub fn max(&self) -> f64 {
        let faces = self.faces.iter().flat_map(|f| [f.traction, f.hypertraction]);
        let edges = self.edges.iter().map(|e| e.force);
        faces.chain(edges).flatten().fold(0.0, f64::max)
    }
}

/// Degree of the sampling rule used to probe boundary residuals.
const SAMPLE_DEGREE: usize = 4;

/// Residuals of the diffused and concentrated boundary balances,
/// `T̃n − ˢdiv((Hn)ˢI) − t₀`, `(Hn)n − h₀` and `⟦(Hn)m⟧ − f₀`, as the
/// largest magnitude over face and edge sample points.
pub fn boundary_residuals(
    stress: &StressField,
    hyperstress: &HyperstressField,
    part: &PolyhedralPart,
    loads: &BoundaryLoads,
    tol: &Tolerances,
) -> Result<BoundaryResiduals> {
    if loads.traction.len() != part.faces().len()
        || loads.hypertraction.len() != part.faces().len()
        || loads.edge_force.len() != part.edges().len()
    {
        return Err(Error::Shape(String::from("boundary loads do not match the part's faces and edges")));
    }
    let reduced = stress - &hyperstress.div();
    let mut faces = Vec::with_capacity(part.faces().len());
    for (fi, face) in part.faces().iter().enumerate() {
        let n = face.normal;
        let mut points: Vec<Vector3> = part.face_rule(fi, SAMPLE_DEGREE).points.iter().map(|p| p.0).collect();
        points.extend(face.loop_indices.iter().map(|&i| part.vertices()[i]));
        let sdiv = surface_div_field(hyperstress, &n, tol.unit)?;
        let traction = loads.traction[fi].as_ref().map(|t0| {
            let diff = reduced.map(|t| t.apply(&n)) - sdiv.clone() - t0.clone();
            max_norm(&diff, &points)
        });
        let hypertraction = loads.hypertraction[fi].as_ref().map(|h0| {
            let diff = hyperstress.map(|c| c.contract_dyad(&n, &n)) - h0.clone();
            max_norm(&diff, &points)
        });
        faces.push(FaceResidual { face: fi, traction, hypertraction });
    }
    let mut edges = Vec::with_capacity(part.edges().len());
    for (ei, edge) in part.edges().iter().enumerate() {
        let mut points: Vec<Vector3> = part.edge_rule(ei, SAMPLE_DEGREE).points.iter().map(|p| p.0).collect();
        points.extend([edge.segment.0, edge.segment.1]);
        let force = loads.edge_force[ei].as_ref().map(|f0| {
            let diff = hyperstress.map(|c| edge_force_unchecked(c, &edge.frame)) - f0.clone();
            max_norm(&diff, &points)
        });
        edges.push(EdgeResidual { edge: ei, force });
    }
    Ok(BoundaryResiduals { faces, edges })
}

fn max_norm(field: &Poly<Vector3>, points: &[Vector3]) -> f64 {
    points.iter().map(|x| field.eval(x).norm()).fold(0.0, f64::max)
}
