//! Tensor calculus of second-gradient continua.
//!
//! The crate covers the full chain that links stresses and hyperstresses to
//! the contact actions they induce on surfaces and edges:
//!
//! * [`tensor`]: fixed 3D vectors, second-order tensors, rotations and the
//!   right-pair symmetric third-order tensor [`Tensor3Sym`] that stores a
//!   hyperstress.
//! * [`fields`]: polynomial tensor fields with exact differentiation.
//! * [`geometry`]: flat-faced polyhedral parts, edge frames and exact
//!   quadrature over volumes, faces and edges.
//! * [`traction`]: traction, hypertraction and edge-force maps, and the
//!   reconstruction of stress and hyperstress from them.
//! * [`balance`]: virtual-power identity and bulk/boundary balance residuals.
//! * [`invariance`]: observer changes and power invariance.
//! * [`special`]: hyperstresses that transmit no edge forces and the
//!   Navier–Stokes-α decomposition.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![warn(missing_debug_implementations)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod balance;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod invariance;
pub mod quadrature;
pub mod sample;
pub mod special;
pub mod tensor;
pub mod tolerance;
pub mod traction;

pub use error::{Error, Result};
pub use fields::{HyperstressField, Poly, ScalarField, StressField, VelocityField};
pub use geometry::{EdgeFrame, OrientedFace, PartSpec, PolyhedralPart};
pub use tensor::{OrthonormalBasis, Rotation, Tensor2, Tensor3, Tensor3Sym, Vector3};
pub use tolerance::Tolerances;
