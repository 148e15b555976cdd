//! Flat-faced polyhedral parts, edge frames and quadrature over them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fields::{Coefficient, ScalarField};
use crate::quadrature::{segment_rule, tetrahedron_rule, triangle_rule, QuadratureRule};
use crate::tensor::{OrthonormalBasis, Rotation, Tensor2, Vector3};
use crate::tolerance::Tolerances;

/// Local first-order description of an edge: `(n′, m′; n″, m″)`.
///
/// `n′`, `n″` are the outward normals of the two faces meeting at the edge;
/// `m′`, `m″` lie in those faces, are orthogonal to the edge and point out of
/// the face interiors. All four vectors lie in the plane orthogonal to the
/// edge tangent.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EdgeFrame {
    pub n_prime: Vector3,
    pub m_prime: Vector3,
    pub n_second: Vector3,
    pub m_second: Vector3,
}

impl EdgeFrame {
    /// Validates unit length, pairwise orthogonality of `(n′, m′)` and
    /// `(n″, m″)`, and coplanarity of all four vectors.
    pub fn new(n_prime: Vector3, m_prime: Vector3, n_second: Vector3, m_second: Vector3, tol: f64) -> Result<Self> {
        let frame = EdgeFrame { n_prime, m_prime, n_second, m_second };
        frame.validate(tol)?;
        Ok(frame)
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        for (name, v) in [("n'", self.n_prime), ("m'", self.m_prime), ("n''", self.n_second), ("m''", self.m_second)] {
            if !v.is_finite() || (v.norm() - 1.0).abs() > tol {
                return Err(Error::InvalidFrame(format!("{name} has length {}", v.norm())));
            }
        }
        let d1 = self.n_prime.dot(&self.m_prime).abs();
        let d2 = self.n_second.dot(&self.m_second).abs();
        if d1 > tol || d2 > tol {
            return Err(Error::InvalidFrame(format!("pairs not orthogonal ({d1:e}, {d2:e})")));
        }
        let tangent = self.tangent();
        let off = self.n_second.dot(&tangent).abs().max(self.m_second.dot(&tangent).abs());
        if off > tol {
            return Err(Error::InvalidFrame(format!("vectors not coplanar ({off:e})")));
        }
        Ok(())
    }

    /// Edge direction `n′ × m′` (unit for a valid frame).
    pub fn tangent(&self) -> Vector3 {
        self.n_prime.cross(&self.m_prime)
    }

    /// `n′ ⊗ m′ + n″ ⊗ m″`.
    pub fn descriptor(&self) -> Tensor2 {
        self.n_prime.outer(&self.m_prime) + self.n_second.outer(&self.m_second)
    }

    /// The same edge with the two pairs interchanged.
    pub fn swapped(&self) -> EdgeFrame {
        EdgeFrame { n_prime: self.n_second, m_prime: self.m_second, n_second: self.n_prime, m_second: self.m_prime }
    }

    /// Every vector rotated by `q`.
    pub fn rotated(&self, q: &Rotation) -> EdgeFrame {
        EdgeFrame {
            n_prime: q.apply(&self.n_prime),
            m_prime: q.apply(&self.m_prime),
            n_second: q.apply(&self.n_second),
            m_second: q.apply(&self.m_second),
        }
    }
}

/// Coordinate edge `ℰ_jk` of the standard basis, `j < k` (zero-based).
///
/// The frame is `(e_j, e_k; e_k, e_j)`, so that its descriptor is
/// `e_j ⊗ e_k + e_k ⊗ e_j`.
pub fn coordinate_edge(j: usize, k: usize) -> Result<EdgeFrame> {
    coordinate_edge_in(&OrthonormalBasis::STANDARD, j, k)
}

/// Coordinate edge `ℰ_jk` of an arbitrary orthonormal basis.
pub fn coordinate_edge_in(basis: &OrthonormalBasis, j: usize, k: usize) -> Result<EdgeFrame> {
    if j > 2 {
        return Err(Error::BadAxis(j));
    }
    if k > 2 {
        return Err(Error::BadAxis(k));
    }
    if j >= k {
        return Err(Error::DegenerateEdge { j, k });
    }
    Ok(EdgeFrame { n_prime: basis[j], m_prime: basis[k], n_second: basis[k], m_second: basis[j] })
}

/// `(face, from, to)`
type DirectedUse = (usize, usize, usize);

/// Input description of a part: vertices and counterclockwise (seen from
/// outside) face loops.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PartSpec {
    pub vertices: Vec<Vector3>,
    pub faces: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrientedFace {
    /// Vertex loop, counterclockwise with respect to `normal`.
    pub loop_indices: Vec<usize>,
    pub normal: Vector3,
    pub area: f64,
    /// Fan triangles `(p0, p_i, p_{i+1})` with signed doubled areas.
    triangles: Vec<([Vector3; 3], f64)>,
}

impl OrientedFace {
    pub fn triangles(&self) -> impl Iterator<Item = &([Vector3; 3], f64)> {
        self.triangles.iter()
    }
}

/// Boundary edge of a part with its frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub vertices: (usize, usize),
    /// `(face′, face″)`; face′ has the lower index.
    pub faces: (usize, usize),
    pub segment: (Vector3, Vector3),
    pub frame: EdgeFrame,
}

impl Edge {
    pub fn length(&self) -> f64 {
        (self.segment.1 - self.segment.0).norm()
    }
}

/// Closed, consistently oriented, flat-faced polyhedron.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralPart {
    vertices: Vec<Vector3>,
    faces: Vec<OrientedFace>,
    edges: Vec<Edge>,
    volume: f64,
}

impl PolyhedralPart {
    /// Builds a part and validates planarity, manifoldness, orientation and
    /// every edge frame.
    pub fn build(spec: &PartSpec, tol: &Tolerances) -> Result<Self> {
        let vertices = spec.vertices.clone();
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let scale = bounding_diagonal(&vertices).max(f64::MIN_POSITIVE);

        let mut faces = Vec::with_capacity(spec.faces.len());
        for (fi, loop_indices) in spec.faces.iter().enumerate() {
            faces.push(build_face(fi, loop_indices, &vertices, scale, tol)?);
        }

        // undirected edge → directed uses (face, from, to)
        let mut uses: BTreeMap<(usize, usize), Vec<DirectedUse>> = BTreeMap::new();
        for (fi, face) in faces.iter().enumerate() {
            let l = &face.loop_indices;
            for i in 0..l.len() {
                let (a, b) = (l[i], l[(i + 1) % l.len()]);
                uses.entry((a.min(b), a.max(b))).or_default().push((fi, a, b));
            }
        }

        let mut edges = Vec::with_capacity(uses.len());
        for (&(a, b), list) in &uses {
            if list.len() != 2 {
                return Err(Error::NonManifoldEdge { a, b, count: list.len() });
            }
            let (first, second) = if list[0].0 <= list[1].0 { (list[0], list[1]) } else { (list[1], list[0]) };
            if first.1 == second.1 {
                return Err(Error::InconsistentOrientation { a, b });
            }
            let (f1, f2) = (&faces[first.0], &faces[second.0]);
            let d1 = vertices[first.2] - vertices[first.1];
            let d2 = vertices[second.2] - vertices[second.1];
            let m1 = d1.cross(&f1.normal).normalized().ok_or(Error::DegenerateFace { face: first.0 })?;
            let m2 = d2.cross(&f2.normal).normalized().ok_or(Error::DegenerateFace { face: second.0 })?;
            let frame = EdgeFrame::new(f1.normal, m1, f2.normal, m2, tol.frame)?;
            edges.push(Edge {
                vertices: (a, b),
                faces: (first.0, second.0),
                segment: (vertices[first.1], vertices[first.2]),
                frame,
            });
        }

        // V = ⅓ Σ_F area_F (p_F · n_F)
        let volume: f64 = faces.iter().map(|f| f.area * vertices[f.loop_indices[0]].dot(&f.normal)).sum::<f64>() / 3.0;
        if volume.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater) {
            return Err(Error::InvertedOrientation { volume });
        }

        Ok(PolyhedralPart { vertices, faces, edges, volume })
    }

    pub fn vertices(&self) -> &[Vector3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[OrientedFace] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn centroid_of_vertices(&self) -> Vector3 {
        let sum = self.vertices.iter().fold(Vector3::ZERO, |a, v| a + *v);
        sum * (1.0 / self.vertices.len() as f64)
    }

    /// `Σ_F area_F n_F`, zero for a closed surface.
    pub fn area_vector_sum(&self) -> Vector3 {
        self.faces.iter().fold(Vector3::ZERO, |a, f| a + f.normal * f.area)
    }

    /// Volume rule exact to `degree`, from signed cones over the fan
    /// triangles of every face. Valid for non-convex parts.
    pub fn volume_rule(&self, degree: usize) -> QuadratureRule {
        let apex = self.centroid_of_vertices();
        let mut rule = QuadratureRule::default();
        for face in &self.faces {
            for (t, _) in &face.triangles {
                rule.extend(tetrahedron_rule([apex, t[0], t[1], t[2]], degree));
            }
        }
        rule
    }

    pub fn face_rule(&self, face: usize, degree: usize) -> QuadratureRule {
        let mut rule = QuadratureRule::default();
        for (t, jac) in &self.faces[face].triangles {
            rule.extend(triangle_rule(*t, *jac, degree));
        }
        rule
    }

    pub fn edge_rule(&self, edge: usize, degree: usize) -> QuadratureRule {
        let (a, b) = self.edges[edge].segment;
        segment_rule(&a, &b, degree)
    }

    pub fn integrate_volume_with<C: Coefficient>(&self, degree: usize, f: impl Fn(&Vector3) -> C) -> C {
        self.volume_rule(degree).integrate(f)
    }

    pub fn integrate_face_with<C: Coefficient>(&self, face: usize, degree: usize, f: impl Fn(&Vector3) -> C) -> C {
        self.face_rule(face, degree).integrate(f)
    }

    pub fn integrate_edge_with<C: Coefficient>(&self, edge: usize, degree: usize, f: impl Fn(&Vector3) -> C) -> C {
        self.edge_rule(edge, degree).integrate(f)
    }
}

/// `∫_P f` for a scalar polynomial, with a rule exact to `order`.
pub fn integrate_volume(f: &ScalarField, part: &PolyhedralPart, order: usize) -> Result<f64> {
    check_order(f.degree(), order)?;
    Ok(part.integrate_volume_with(order, |x| f.eval(x)))
}

/// `∫_F f` over face `face`.
pub fn integrate_face(f: &ScalarField, part: &PolyhedralPart, face: usize, order: usize) -> Result<f64> {
    check_order(f.degree(), order)?;
    Ok(part.integrate_face_with(face, order, |x| f.eval(x)))
}

/// `∫_E f` along edge `edge`.
pub fn integrate_edge(f: &ScalarField, part: &PolyhedralPart, edge: usize, order: usize) -> Result<f64> {
    check_order(f.degree(), order)?;
    Ok(part.integrate_edge_with(edge, order, |x| f.eval(x)))
}

fn check_order(needed: usize, order: usize) -> Result<()> {
    if needed > order {
        return Err(Error::QuadratureOrder { needed, order });
    }
    Ok(())
}

fn bounding_diagonal(vertices: &[Vector3]) -> f64 {
    if vertices.is_empty() {
        return 0.0;
    }
    let mut lo = vertices[0];
    let mut hi = vertices[0];
    for v in vertices {
        for k in 0..3 {
            lo.0[k] = lo.0[k].min(v.0[k]);
            hi.0[k] = hi.0[k].max(v.0[k]);
        }
    }
    (hi - lo).norm()
}

fn build_face(
    fi: usize,
    loop_indices: &[usize],
    vertices: &[Vector3],
    scale: f64,
    tol: &Tolerances,
) -> Result<OrientedFace> {
    if loop_indices.len() < 3 {
        return Err(Error::DegenerateFace { face: fi });
    }
    if let Some(&index) = loop_indices.iter().find(|&&i| i >= vertices.len()) {
        return Err(Error::BadVertexIndex { face: fi, index });
    }
    let pts: Vec<Vector3> = loop_indices.iter().map(|&i| vertices[i]).collect();
    // Newell's method: the doubled vector area of the loop
    let mut area2 = Vector3::ZERO;
    for i in 0..pts.len() {
        area2 += pts[i].cross(&pts[(i + 1) % pts.len()]);
    }
    let doubled = area2.norm();
    if doubled <= f64::EPSILON * scale * scale {
        return Err(Error::DegenerateFace { face: fi });
    }
    let normal = area2 * (1.0 / doubled);
    let deviation = pts.iter().map(|p| (*p - pts[0]).dot(&normal).abs()).fold(0.0, f64::max);
    if deviation > tol.planarity * scale {
        return Err(Error::NonPlanarFace { face: fi, deviation });
    }
    let triangles = (1..pts.len() - 1)
        .map(|i| {
            let t = [pts[0], pts[i], pts[i + 1]];
            let jac = (t[1] - t[0]).cross(&(t[2] - t[0])).dot(&normal);
            (t, jac)
        })
        .collect();
    Ok(OrientedFace { loop_indices: loop_indices.to_vec(), normal, area: 0.5 * doubled, triangles })
}

/// Canned parts used by the verification suites.
pub mod canned {
    use super::*;
    use alloc::vec;

    fn v(x: f64, y: f64, z: f64) -> Vector3 {
        Vector3::new(x, y, z)
    }

    /// Flips loops whose normal points toward the vertex centroid. Only
    /// meaningful for convex parts.
    fn orient_outward(mut spec: PartSpec) -> PartSpec {
        let n = spec.vertices.len() as f64;
        let c = spec.vertices.iter().fold(Vector3::ZERO, |a, p| a + *p) * (1.0 / n);
        for face in &mut spec.faces {
            let p: Vec<Vector3> = face.iter().map(|&i| spec.vertices[i]).collect();
            let mut area2 = Vector3::ZERO;
            for i in 0..p.len() {
                area2 += p[i].cross(&p[(i + 1) % p.len()]);
            }
            if area2.dot(&(p[0] - c)) < 0.0 {
                face.reverse();
            }
        }
        spec
    }

    /// `[0, 1]³`; vertex index `x + 2y + 4z`. Faces in the order
    /// x=0, x=1, y=0, y=1, z=0, z=1.
    pub fn unit_cube() -> PartSpec {
        let vertices = (0..8).map(|i| v((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64)).collect();
        PartSpec {
            vertices,
            faces: vec![
                vec![0, 4, 6, 2],
                vec![1, 3, 7, 5],
                vec![0, 1, 5, 4],
                vec![2, 6, 7, 3],
                vec![0, 2, 3, 1],
                vec![4, 5, 7, 6],
            ],
        }
    }

    /// Regular tetrahedron inscribed in `[-1, 1]³`.
    pub fn regular_tetrahedron() -> PartSpec {
        orient_outward(PartSpec {
            vertices: vec![v(1.0, 1.0, 1.0), v(1.0, -1.0, -1.0), v(-1.0, 1.0, -1.0), v(-1.0, -1.0, 1.0)],
            faces: vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        })
    }

    /// Triangular prism over `(0,0), (1,0), (0,1)` with height 1.
    pub fn wedge() -> PartSpec {
        orient_outward(PartSpec {
            vertices: vec![
                v(0.0, 0.0, 0.0),
                v(1.0, 0.0, 0.0),
                v(0.0, 1.0, 0.0),
                v(0.0, 0.0, 1.0),
                v(1.0, 0.0, 1.0),
                v(0.0, 1.0, 1.0),
            ],
            faces: vec![vec![0, 1, 2], vec![3, 4, 5], vec![0, 1, 4, 3], vec![1, 2, 5, 4], vec![2, 0, 3, 5]],
        })
    }

    /// Unit cube with the corner `(1,1,1)` cut off by `x₁ + x₂ + x₃ = 2.5`.
    pub fn chamfered_cube() -> PartSpec {
        let mut vertices: Vec<Vector3> =
            (0..7).map(|i| v((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64)).collect();
        vertices.extend([v(0.5, 1.0, 1.0), v(1.0, 0.5, 1.0), v(1.0, 1.0, 0.5)]);
        orient_outward(PartSpec {
            vertices,
            faces: vec![
                vec![0, 4, 6, 2],
                vec![1, 3, 9, 8, 5],
                vec![0, 1, 5, 4],
                vec![2, 6, 7, 9, 3],
                vec![0, 2, 3, 1],
                vec![4, 5, 8, 7, 6],
                vec![7, 8, 9],
            ],
        })
    }

    /// `(name, spec)` for every canned part.
    pub fn all() -> Vec<(&'static str, PartSpec)> {
        vec![
            ("cube", unit_cube()),
            ("tetrahedron", regular_tetrahedron()),
            ("wedge", wedge()),
            ("chamfered_cube", chamfered_cube()),
        ]
    }
}
