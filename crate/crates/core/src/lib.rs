//! Dynamical Casimir emission from a spinning, anisotropic dielectric nanoparticle.
//!
//! A prolate spheroid spinning about an axis orthogonal to its symmetry axis
//! modulates its laboratory-frame polarizability at twice the rotation
//! frequency. The resulting sidebands mix positive- and negative-frequency
//! vacuum field components and produce photon pairs whose frequencies add up
//! to `2Ω`. This crate evaluates
//!
//! * the dielectric response and shape-dependent polarizabilities
//!   ([`materials`], [`geometry`]),
//! * the carrier and sideband tensors of the spinning particle ([`rotation`]),
//! * a generic dipole-correlation / channel-spectrum pipeline ([`bogoliubov`]),
//! * the closed-form emission spectrum, total rate and quasi-static limit
//!   ([`emission`]),
//! * burst-speed-constrained size and shape studies ([`optimize`]),
//!
//! and ships a batch front-end in [`cli`].

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bogoliubov;
pub mod cli;
pub mod constants;
pub mod emission;
pub mod error;
pub mod geometry;
pub mod materials;
pub mod optimize;
pub mod quadrature;
pub mod rotation;

pub use constants::{PhysicalConstants, SI};
pub use error::{Error, Result};
pub use geometry::SpheroidGeometry;
pub use materials::{DielectricModel, MaterialCatalog, MaterialSpec};
pub use rotation::SpinConfiguration;
