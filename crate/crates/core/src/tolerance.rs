//! Centralized tolerances.
//!
//! Every threshold used by validation code lives here so that suites can be
//! tightened or relaxed from one place.

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerances {
    /// Unit-length check for normals and frame vectors.
    pub unit: f64,
    /// Orthogonality and determinant checks for rotations and bases.
    pub rotation: f64,
    /// Skew-symmetry of spin tensors.
    pub skew: f64,
    /// Edge-frame orthogonality and coplanarity.
    pub frame: f64,
    /// Distance of face vertices from their best plane, relative to part size.
    pub planarity: f64,
    /// Relative residual of the virtual-power identity.
    pub pvp: f64,
    /// Max-abs residual accepted by the spherical classification.
    pub spherical: f64,
    /// Edge-force magnitude treated as zero by the rotated-edge probes.
    pub edge_probe: f64,
    /// Frobenius norm of `skew(T)` below which `T` counts as symmetric.
    pub symmetry: f64,
    /// Relative size of polynomial coefficients treated as cancelled.
    pub coefficient: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        unit: 1e-12,
        rotation: 1e-12,
        skew: 1e-13,
        frame: 1e-12,
        planarity: 1e-10,
        pvp: 1e-10,
        spherical: 1e-12,
        edge_probe: 1e-12,
        symmetry: 1e-12,
        coefficient: 1e-13,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
