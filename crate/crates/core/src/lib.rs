//! Signless Laplacian spectral radius (Q-index) toolkit.
//!
//! The crate covers four layers:
//!
//! * [`graph`]: an immutable simple-graph value type with canonical forms,
//!   edge-list and graph6 I/O.
//! * [`spectral`]: Perron pairs of `Q(G) = D(G) + A(G)` by power iteration,
//!   dense spectra by cyclic Jacobi sweeps, Feng's degree bound and the
//!   Rayleigh lower bound for edge rotations.
//! * [`families`], [`witness`], [`enumerate`], [`optimize`]: extremal graph
//!   constructors, forbidden-subgraph predicates, isomorph-free enumeration
//!   and seeded edge-rotation hill climbing.
//! * [`verify`]: harnesses that turn the numeric checks into serializable
//!   [`Certificate`]s.
//!
//! Numeric kernels are generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix them to `f64`, which is what the
//! verification layer uses.

pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod optimize;
pub mod scalar;
pub mod spectral;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
pub use families::ExtremalParams;
pub use graph::{CanonicalForm, Graph};
pub use scalar::Scalar;
pub use verify::{Certificate, Verdict};

/// Perron pair in double precision.
pub type PerronResultF64 = spectral::PerronResult<f64>;
/// Perron pair in single precision.
pub type PerronResultF32 = spectral::PerronResult<f32>;
/// Descending Q-spectrum in double precision.
pub type SpectrumF64 = spectral::Spectrum<f64>;
/// Equitable quotient matrix in double precision.
pub type QuotientMatrixF64 = families::QuotientMatrix<f64>;
/// Cubic coefficients in double precision.
pub type CubicF64 = families::Cubic<f64>;

/// Version string embedded in every certificate.
pub const TOOL_VERSION: &str = concat!("qindex ", env!("CARGO_PKG_VERSION"));
