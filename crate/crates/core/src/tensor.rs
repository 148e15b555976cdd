//! Fixed-dimension tensor algebra.
//!
//! Components are Cartesian with respect to the standard basis `e₁, e₂, e₃`
//! (indices `0..3` in code). The hyperstress lives in [`Tensor3Sym`], whose
//! packed storage holds `H_ijk` only for `j ≤ k`, so the right-pair symmetry
//! `H_ijk = H_ikj` cannot be violated.

use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Vector3(pub [f64; 3]);

impl Vector3 {
    pub const ZERO: Vector3 = Vector3([0.0; 3]);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vector3([x, y, z])
    }

    /// Standard basis vector `e_{i+1}`.
    pub fn unit(i: usize) -> Self {
        let mut v = [0.0; 3];
        v[i] = 1.0;
        Vector3(v)
    }

    pub fn dot(&self, other: &Vector3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, other: &Vector3) -> Vector3 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        Vector3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.dot(self))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Unit vector along `self`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Vector3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| *self * (1.0 / n))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// `a ⊗ b`, with `(a ⊗ b)_ij = a_i b_j`.
    pub fn outer(&self, other: &Vector3) -> Tensor2 {
        Tensor2::from_fn(|i, j| self.0[i] * other.0[j])
    }

    /// Rejects vectors whose length differs from one by more than `tol`.
    pub fn check_unit(&self, tol: f64) -> Result<()> {
        let norm = self.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > tol {
            return Err(Error::NotUnit { norm });
        }
        Ok(())
    }
}

impl Index<usize> for Vector3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector3 {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for Vector3 {
    type Output = Vector3;
    fn add(self, rhs: Vector3) -> Vector3 {
        Vector3([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl AddAssign for Vector3 {
    fn add_assign(&mut self, rhs: Vector3) {
        *self = *self + rhs;
    }
}

impl Sub for Vector3 {
    type Output = Vector3;
    fn sub(self, rhs: Vector3) -> Vector3 {
        Vector3([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl SubAssign for Vector3 {
    fn sub_assign(&mut self, rhs: Vector3) {
        *self = *self - rhs;
    }
}

impl Neg for Vector3 {
    type Output = Vector3;
    fn neg(self) -> Vector3 {
        Vector3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for Vector3 {
    type Output = Vector3;
    fn mul(self, s: f64) -> Vector3 {
        Vector3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

/// Second-order tensor, stored row-major: `self.0[i][j] = A_ij`.
///
/// Symmetry is not an invariant; skew tensors (spins) use the same type.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tensor2(pub [[f64; 3]; 3]);

impl Tensor2 {
    pub const ZERO: Tensor2 = Tensor2([[0.0; 3]; 3]);
    pub const IDENTITY: Tensor2 = Tensor2([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut a = [[0.0; 3]; 3];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = f(i, j);
            }
        }
        Tensor2(a)
    }

    pub fn diag(d: [f64; 3]) -> Self {
        Tensor2::from_fn(|i, j| if i == j { d[i] } else { 0.0 })
    }

    pub fn transpose(&self) -> Tensor2 {
        Tensor2::from_fn(|i, j| self.0[j][i])
    }

    /// Scalar product `A·B = A_ij B_ij`.
    pub fn dot(&self, other: &Tensor2) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += self.0[i][j] * other.0[i][j];
            }
        }
        s
    }

    pub fn apply(&self, v: &Vector3) -> Vector3 {
        Vector3::new(
            self.0[0][0] * v.0[0] + self.0[0][1] * v.0[1] + self.0[0][2] * v.0[2],
            self.0[1][0] * v.0[0] + self.0[1][1] * v.0[1] + self.0[1][2] * v.0[2],
            self.0[2][0] * v.0[0] + self.0[2][1] * v.0[1] + self.0[2][2] * v.0[2],
        )
    }

    pub fn column(&self, j: usize) -> Vector3 {
        Vector3::new(self.0[0][j], self.0[1][j], self.0[2][j])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> f64 {
        let a = &self.0;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    pub fn sym(&self) -> Tensor2 {
        Tensor2::from_fn(|i, j| 0.5 * (self.0[i][j] + self.0[j][i]))
    }

    pub fn skew(&self) -> Tensor2 {
        Tensor2::from_fn(|i, j| 0.5 * (self.0[i][j] - self.0[j][i]))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        sqrt(self.dot(self))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|c| c.is_finite())
    }
}

impl Index<(usize, usize)> for Tensor2 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Tensor2 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl Add for Tensor2 {
    type Output = Tensor2;
    fn add(self, rhs: Tensor2) -> Tensor2 {
        Tensor2::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl AddAssign for Tensor2 {
    fn add_assign(&mut self, rhs: Tensor2) {
        *self = *self + rhs;
    }
}

impl Sub for Tensor2 {
    type Output = Tensor2;
    fn sub(self, rhs: Tensor2) -> Tensor2 {
        Tensor2::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl SubAssign for Tensor2 {
    fn sub_assign(&mut self, rhs: Tensor2) {
        *self = *self - rhs;
    }
}

impl Neg for Tensor2 {
    type Output = Tensor2;
    fn neg(self) -> Tensor2 {
        self * -1.0
    }
}

impl Mul<f64> for Tensor2 {
    type Output = Tensor2;
    fn mul(self, s: f64) -> Tensor2 {
        Tensor2::from_fn(|i, j| self.0[i][j] * s)
    }
}

impl Mul<Tensor2> for Tensor2 {
    type Output = Tensor2;
    fn mul(self, rhs: Tensor2) -> Tensor2 {
        Tensor2::from_fn(|i, j| (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
    }
}

impl Mul<Vector3> for Tensor2 {
    type Output = Vector3;
    fn mul(self, v: Vector3) -> Vector3 {
        self.apply(&v)
    }
}

/// General third-order tensor, `self.0[i][j][k] = A_ijk`.
///
/// Used for gradients of second-order fields and for deliberately
/// non-symmetric inputs; hyperstresses use [`Tensor3Sym`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tensor3(pub [[[f64; 3]; 3]; 3]);

impl Tensor3 {
    pub const ZERO: Tensor3 = Tensor3([[[0.0; 3]; 3]; 3]);

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut a = [[[0.0; 3]; 3]; 3];
        for (i, slab) in a.iter_mut().enumerate() {
            for (j, row) in slab.iter_mut().enumerate() {
                for (k, c) in row.iter_mut().enumerate() {
                    *c = f(i, j, k);
                }
            }
        }
        Tensor3(a)
    }

    /// `A[B]_i = A_ijk B_jk`.
    pub fn contract2(&self, b: &Tensor2) -> Vector3 {
        let mut out = Vector3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out.0[i] += self.0[i][j][k] * b.0[j][k];
                }
            }
        }
        out
    }

    /// Largest `|A_ijk − A_ikj|`.
    pub fn symmetry_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    d = d.max((self.0[i][j][k] - self.0[i][k][j]).abs());
                }
            }
        }
        d
    }

    /// Packs the right-pair symmetric part. The caller decides whether the
    /// discarded skew part (see [`Tensor3::symmetry_defect`]) is acceptable.
    pub fn sym_part(&self) -> Tensor3Sym {
        Tensor3Sym::from_fn(|i, j, k| 0.5 * (self.0[i][j][k] + self.0[i][k][j]))
    }

    /// Packs `A_ijk` for `j ≤ k` without averaging. Exact when the tensor is
    /// right-pair symmetric.
    pub fn pack_upper(&self) -> Tensor3Sym {
        Tensor3Sym::from_fn(|i, j, k| self.0[i][j][k])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().flatten().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl Add for Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: Tensor3) -> Tensor3 {
        Tensor3::from_fn(|i, j, k| self.0[i][j][k] + rhs.0[i][j][k])
    }
}

impl Sub for Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: Tensor3) -> Tensor3 {
        Tensor3::from_fn(|i, j, k| self.0[i][j][k] - rhs.0[i][j][k])
    }
}

impl Neg for Tensor3 {
    type Output = Tensor3;
    fn neg(self) -> Tensor3 {
        self * -1.0
    }
}

impl Mul<f64> for Tensor3 {
    type Output = Tensor3;
    fn mul(self, s: f64) -> Tensor3 {
        Tensor3::from_fn(|i, j, k| self.0[i][j][k] * s)
    }
}

/// Index pairs `{jk}` of the packed layout, in storage order.
pub const PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];

/// Packed slot of the unordered pair `{j, k}`.
#[inline]
pub const fn pair_index(j: usize, k: usize) -> usize {
    match (j, k) {
        (0, 0) => 0,
        (1, 1) => 1,
        (2, 2) => 2,
        (0, 1) | (1, 0) => 3,
        (0, 2) | (2, 0) => 4,
        _ => 5,
    }
}

/// Third-order tensor with `H_ijk = H_ikj`.
///
/// Storage is `self.0[i][p]` with `p` indexing [`PAIRS`]: 18 independent
/// reals. Off-diagonal pairs are stored once and expanded on demand.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tensor3Sym(pub [[f64; 6]; 3]);

impl Tensor3Sym {
    pub const ZERO: Tensor3Sym = Tensor3Sym([[0.0; 6]; 3]);

    /// Builds from a component function sampled at `j ≤ k` only.
    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut h = [[0.0; 6]; 3];
        for (i, row) in h.iter_mut().enumerate() {
            for (p, &(j, k)) in PAIRS.iter().enumerate() {
                row[p] = f(i, j, k);
            }
        }
        Tensor3Sym(h)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.0[i][pair_index(j, k)]
    }

    /// Sets `H_ijk` and, implicitly, `H_ikj`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: f64) {
        self.0[i][pair_index(j, k)] = value;
    }

    /// `a ⊗ sym(b ⊗ c)`.
    pub fn sym_dyad(a: &Vector3, b: &Vector3, c: &Vector3) -> Self {
        Tensor3Sym::from_fn(|i, j, k| a.0[i] * 0.5 * (b.0[j] * c.0[k] + b.0[k] * c.0[j]))
    }

    /// `h ⊗ I`, i.e. `H_ijk = h_i δ_jk`.
    pub fn spherical(h: &Vector3) -> Self {
        Tensor3Sym::from_fn(|i, j, k| if j == k { h.0[i] } else { 0.0 })
    }

    pub fn expand(&self) -> Tensor3 {
        Tensor3::from_fn(|i, j, k| self.get(i, j, k))
    }

    /// `(H a)_ij = H_ijk a_k`.
    pub fn apply(&self, a: &Vector3) -> Tensor2 {
        Tensor2::from_fn(|i, j| (0..3).map(|k| self.get(i, j, k) * a.0[k]).sum())
    }

    /// `(H[A])_i = H_ijk A_jk`.
    pub fn contract2(&self, a: &Tensor2) -> Vector3 {
        let mut out = Vector3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out.0[i] += self.get(i, j, k) * a.0[j][k];
                }
            }
        }
        out
    }

    /// `H[a ⊗ b] = (H b) a`.
    ///
    /// Summed over packed pairs with the symmetric weight `a_j b_k + a_k b_j`,
    /// so swapping `a` and `b` gives a bitwise identical result.
    pub fn contract_dyad(&self, a: &Vector3, b: &Vector3) -> Vector3 {
        let mut w = [0.0; 6];
        for (p, &(j, k)) in PAIRS.iter().enumerate() {
            w[p] = if j == k { a.0[j] * b.0[j] } else { a.0[j] * b.0[k] + a.0[k] * b.0[j] };
        }
        Vector3([0, 1, 2].map(|i| (0..6).map(|p| self.0[i][p] * w[p]).sum()))
    }

    /// `(w H)_jk = w_i H_ijk`, a symmetric second-order tensor.
    pub fn left_contract(&self, w: &Vector3) -> Tensor2 {
        Tensor2::from_fn(|j, k| (0..3).map(|i| w.0[i] * self.get(i, j, k)).sum())
    }

    /// Full scalar product `Σ_ijk H_ijk K_ijk`; off-diagonal pairs count twice.
    pub fn inner(&self, other: &Tensor3Sym) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for p in 0..6 {
                let weight = if p < 3 { 1.0 } else { 2.0 };
                s += weight * self.0[i][p] * other.0[i][p];
            }
        }
        s
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|c| c.is_finite())
    }
}

impl Add for Tensor3Sym {
    type Output = Tensor3Sym;
    fn add(self, rhs: Tensor3Sym) -> Tensor3Sym {
        let mut out = self;
        out += rhs;
        out
    }
}

impl AddAssign for Tensor3Sym {
    fn add_assign(&mut self, rhs: Tensor3Sym) {
        for i in 0..3 {
            for p in 0..6 {
                self.0[i][p] += rhs.0[i][p];
            }
        }
    }
}

impl Sub for Tensor3Sym {
    type Output = Tensor3Sym;
    fn sub(self, rhs: Tensor3Sym) -> Tensor3Sym {
        self + rhs * -1.0
    }
}

impl Neg for Tensor3Sym {
    type Output = Tensor3Sym;
    fn neg(self) -> Tensor3Sym {
        self * -1.0
    }
}

impl Mul<f64> for Tensor3Sym {
    type Output = Tensor3Sym;
    fn mul(self, s: f64) -> Tensor3Sym {
        let mut out = self;
        out.0.iter_mut().flatten().for_each(|c| *c *= s);
        out
    }
}

/// Proper orthogonal tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Rotation(Tensor2);

impl Rotation {
    pub const IDENTITY: Rotation = Rotation(Tensor2::IDENTITY);

    /// Validates `QᵀQ = I` and `det Q = +1` to `tol`.
    pub fn new(matrix: Tensor2, tol: f64) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let orthogonality = (matrix.transpose() * matrix - Tensor2::IDENTITY).max_abs();
        let det = matrix.det();
        if orthogonality > tol || (det - 1.0).abs() > tol {
            return Err(Error::NotRotation { orthogonality, det });
        }
        Ok(Rotation(matrix))
    }

    /// Right-handed rotation by `angle` about the unit vector `axis`.
    pub fn about_axis(axis: &Vector3, angle: f64) -> Result<Self> {
        let a = axis.normalized().ok_or(Error::NotUnit { norm: 0.0 })?;
        let (s, c) = (libm::sin(angle), libm::cos(angle));
        let k = skew_of(&a);
        // Rodrigues: I + sin K + (1 − cos) K²
        let m = Tensor2::IDENTITY + k * s + (k * k) * (1.0 - c);
        Ok(Rotation(m))
    }

    /// Rotation by `angle` about the coordinate axis `e_{axis+1}`.
    pub fn about_coordinate_axis(axis: usize, angle: f64) -> Result<Self> {
        if axis > 2 {
            return Err(Error::BadAxis(axis));
        }
        Rotation::about_axis(&Vector3::unit(axis), angle)
    }

    /// Rotation from a (not necessarily normalized) quaternion `w + xi + yj + zk`.
    pub fn from_quaternion(w: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        let n = sqrt(w * w + x * x + y * y + z * z);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotUnit { norm: n });
        }
        let (w, x, y, z) = (w / n, x / n, y / n, z / n);
        Ok(Rotation(Tensor2([
            [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
            [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
            [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
        ])))
    }

    pub fn matrix(&self) -> &Tensor2 {
        &self.0
    }

    pub fn transpose(&self) -> Rotation {
        Rotation(self.0.transpose())
    }

    pub fn apply(&self, v: &Vector3) -> Vector3 {
        self.0.apply(v)
    }

    /// `Q ∗ A = Q A Qᵀ`.
    pub fn rotate2(&self, a: &Tensor2) -> Tensor2 {
        self.0 * *a * self.0.transpose()
    }

    /// `[Q ∗ H]_ijk = Q_ip Q_jq Q_kr H_pqr`.
    pub fn rotate3(&self, h: &Tensor3Sym) -> Tensor3Sym {
        let q = &self.0 .0;
        // contract the first index once, then the pair
        let mut first = [[[0.0; 3]; 3]; 3];
        for (i, slab) in first.iter_mut().enumerate() {
            for q_ in 0..3 {
                for r in 0..3 {
                    slab[q_][r] = (0..3).map(|p| q[i][p] * h.get(p, q_, r)).sum();
                }
            }
        }
        Tensor3Sym::from_fn(|i, j, k| {
            let mut s = 0.0;
            for a in 0..3 {
                for b in 0..3 {
                    s += q[j][a] * q[k][b] * first[i][a][b];
                }
            }
            s
        })
    }

    /// Same action on a general third-order tensor.
    pub fn rotate3_full(&self, h: &Tensor3) -> Tensor3 {
        let q = &self.0 .0;
        Tensor3::from_fn(|i, j, k| {
            let mut s = 0.0;
            for p in 0..3 {
                for a in 0..3 {
                    for b in 0..3 {
                        s += q[i][p] * q[j][a] * q[k][b] * h.0[p][a][b];
                    }
                }
            }
            s
        })
    }
}

impl Mul for Rotation {
    type Output = Rotation;
    fn mul(self, rhs: Rotation) -> Rotation {
        Rotation(self.0 * rhs.0)
    }
}

/// Skew tensor `K` with `K v = a × v`.
pub fn skew_of(a: &Vector3) -> Tensor2 {
    let [x, y, z] = a.0;
    Tensor2([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
}

/// Three mutually orthogonal unit vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OrthonormalBasis([Vector3; 3]);

impl OrthonormalBasis {
    pub const STANDARD: OrthonormalBasis =
        OrthonormalBasis([Vector3([1.0, 0.0, 0.0]), Vector3([0.0, 1.0, 0.0]), Vector3([0.0, 0.0, 1.0])]);

    pub fn new(vectors: [Vector3; 3], tol: f64) -> Result<Self> {
        let mut defect: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((vectors[i].dot(&vectors[j]) - target).abs());
            }
        }
        if !defect.is_finite() || defect > tol {
            return Err(Error::NotOrthonormal { defect });
        }
        Ok(OrthonormalBasis(vectors))
    }

    /// The basis `Q e_i`.
    pub fn rotated(q: &Rotation) -> Self {
        OrthonormalBasis([0, 1, 2].map(|i| q.matrix().column(i)))
    }

    pub fn vectors(&self) -> &[Vector3; 3] {
        &self.0
    }
}

impl Index<usize> for OrthonormalBasis {
    type Output = Vector3;
    fn index(&self, i: usize) -> &Vector3 {
        &self.0[i]
    }
}
