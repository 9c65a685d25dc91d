//! Quantum state transfer on double subdivided stars `T(l, m)`.
//!
//! The crate pairs an exact integer-polynomial layer ([`exact`]) with a numeric
//! spectral and quantum-walk layer ([`spectral`], [`transfer`]) and combines
//! them into auditable transfer verdicts ([`classifier`]).
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the scalar to `f64`, which is what the tolerances in the test
//! suites assume.

pub mod classifier;
pub mod exact;
pub mod graph;
pub mod matrix;
pub mod scalar;
pub mod spectral;
pub mod transfer;

pub use graph::{
    build_double_subdivided_star, build_path, build_subdivided_star, from_edge_list, parse_edge_list, AdjacencyMatrix,
    Family, GraphError, GraphSpec, Role, StarLayout,
};
pub use classifier::{classify, verdict_table, Justification, TransferVerdict};
pub use scalar::Real;

pub type Matrix64 = matrix::Matrix<f64>;
pub type Matrix32 = matrix::Matrix<f32>;
pub type SpectralData64 = spectral::SpectralData<f64>;
pub type SpectralData32 = spectral::SpectralData<f32>;
pub type ThetaTriple64 = spectral::ThetaTriple<f64>;
pub type PgstWitness64 = transfer::PgstWitness<f64>;
pub type FidelityTrace64 = transfer::FidelityTrace<f64>;
