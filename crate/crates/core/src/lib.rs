//! Exact analysis of space polygons under cross-product duality.
//!
//! A generic closed polygon `P = A₁ … Aₙ` in 3-space with edge vectors
//! `vᵢ = Aᵢ₊₁ − Aᵢ` is *regular* when there are vectors `u₁ … uₙ` with
//! `[uᵢ, uᵢ₊₁] = vᵢ₊₁` (cyclically). The polygon traced by the endpoints of
//! the `uᵢ` is its *derived polygon*. This crate decides regularity,
//! builds the support systems, derives polygons and checks their
//! geometric properties, all in exact arithmetic.

pub mod derived;
pub mod generators;
pub mod geom3;
pub mod oracle;
pub mod pipeline;
pub mod polygon;
pub mod regularity;
pub mod scalar;
pub mod suites;

pub use geom3::Vec3;
pub use polygon::{Deltas, EdgeVectors, Polygon};
pub use regularity::{Parity, RegularityVerdict, SupportBasis, SupportSystem};
pub use scalar::{QuadExt, Rational, Scalar};
