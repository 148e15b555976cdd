//! Gauss-type quadrature exact for polynomials of a declared degree.
//!
//! Segments use Gauss–Legendre. Triangles and tetrahedra use collapsed
//! (Duffy) tensor-product Gauss–Legendre rules, which reach any polynomial
//! degree without tabulated point sets.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::fields::Coefficient;
use crate::tensor::Vector3;

/// Gauss–Legendre nodes and weights on `[0, 1]` with `n` points.
///
/// Exact for polynomials of degree `2n − 1`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "Gauss–Legendre rule needs at least one point");
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 1..=n {
        // Newton on P_n from the Tricomi initial guess
        let mut x = libm::cos(PI * (i as f64 - 0.25) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes.push(0.5 * (1.0 - x));
        weights.push(0.5 * w);
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Points needed for a 1D Gauss–Legendre rule exact to `degree`.
pub fn points_for_degree(degree: usize) -> usize {
    degree / 2 + 1
}

/// Weighted point set; weights include the geometric Jacobian.
#[derive(Debug, Clone, Default)]
pub struct QuadratureRule {
    pub points: Vec<(Vector3, f64)>,
}

impl QuadratureRule {
    pub fn integrate<C: Coefficient>(&self, f: impl Fn(&Vector3) -> C) -> C {
        self.points.iter().fold(C::ZERO, |acc, (x, w)| acc + f(x) * *w)
    }

    pub fn extend(&mut self, other: QuadratureRule) {
        self.points.extend(other.points);
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Rule on the segment `[a, b]` exact to `degree`.
pub fn segment_rule(a: &Vector3, b: &Vector3, degree: usize) -> QuadratureRule {
    let (t, w) = gauss_legendre(points_for_degree(degree));
    let d = *b - *a;
    let len = d.norm();
    QuadratureRule { points: t.iter().zip(&w).map(|(&t, &w)| (*a + d * t, w * len)).collect() }
}

/// Rule on the triangle `(p0, p1, p2)` exact to `degree`, with every
/// weight multiplied by `jacobian` (twice the area, possibly signed).
pub fn triangle_rule(p: [Vector3; 3], jacobian: f64, degree: usize) -> QuadratureRule {
    // ξ = u, η = (1 − u) v; the collapse adds one degree in u
    let (tu, wu) = gauss_legendre(points_for_degree(degree + 1));
    let (tv, wv) = gauss_legendre(points_for_degree(degree));
    let (a, b) = (p[1] - p[0], p[2] - p[0]);
    let mut points = Vec::with_capacity(tu.len() * tv.len());
    for (&u, &wu) in tu.iter().zip(&wu) {
        for (&v, &wv) in tv.iter().zip(&wv) {
            let (xi, eta) = (u, (1.0 - u) * v);
            points.push((p[0] + a * xi + b * eta, wu * wv * (1.0 - u) * jacobian));
        }
    }
    QuadratureRule { points }
}

/// Rule on the tetrahedron `(p0, p1, p2, p3)` exact to `degree`. Weights
/// carry the signed factor `det[p1 − p0, p2 − p0, p3 − p0]`.
pub fn tetrahedron_rule(p: [Vector3; 4], degree: usize) -> QuadratureRule {
    let (a, b, c) = (p[1] - p[0], p[2] - p[0], p[3] - p[0]);
    let det = a.dot(&b.cross(&c));
    let (tu, wu) = gauss_legendre(points_for_degree(degree + 2));
    let (tv, wv) = gauss_legendre(points_for_degree(degree + 1));
    let (tw, ww) = gauss_legendre(points_for_degree(degree));
    let mut points = Vec::with_capacity(tu.len() * tv.len() * tw.len());
    for (&u, &wu) in tu.iter().zip(&wu) {
        for (&v, &wv) in tv.iter().zip(&wv) {
            for (&w, &ww) in tw.iter().zip(&ww) {
                let xi = u;
                let eta = (1.0 - u) * v;
                let zeta = (1.0 - u) * (1.0 - v) * w;
                let jac = (1.0 - u) * (1.0 - u) * (1.0 - v);
                points.push((p[0] + a * xi + b * eta + c * zeta, wu * wv * ww * jac * det));
            }
        }
    }
    QuadratureRule { points }
}
