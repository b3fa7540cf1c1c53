//! Spectral extremal computations for edge blow-ups of small graphs.
//!
//! The crate computes decomposition families and the parameter profile
//! (`β`, `q`, `B`, `μ`, `λ`) of a forbidden graph `F`, builds the candidate
//! extremal graphs `H(n, p, q, λ-1, B)`, evaluates spectral radii with a
//! certified residual, and cross-checks all of it against exhaustive search
//! on small orders.
//!
//! Numeric code in [`spectral`] is generic over the floating point type; the
//! aliases below fix the common instantiations.

pub mod blowup;
pub mod canon;
pub mod constructions;
pub mod error;
pub mod family;
pub mod golden;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod oracle;
pub mod params;
pub mod report;
pub mod spectral;
pub mod subgraph;

pub use blowup::BlowupSpec;
pub use constructions::{BlockModel, ConstructionFamily, Realization};
pub use error::{Error, Result};
pub use family::IsoClassSet;
pub use graph::{Graph, VertexSet};
pub use params::ParamProfile;
pub use report::SearchReport;

/// Spectral result in double precision, used throughout the pipeline.
pub type SpectralResult = spectral::SpectralResult<f64>;
/// Single precision variant, for quick estimates.
pub type SpectralResultF32 = spectral::SpectralResult<f32>;
/// Double precision symmetrized quotient matrix.
pub type QuotientMatrix = spectral::QuotientMatrix<f64>;
