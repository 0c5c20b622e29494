//! Spatial graph diagrams for 3D interconnected systems.
//!
//! A system architecture (components with ports, plus port-to-port
//! interconnects) embeds in 3-space in many topologically distinct ways.
//! This crate represents such embeddings as spatial graph diagrams
//! (combinatorial maps with flat vertices and over/under crossings),
//! enumerates all diagrams of an architecture up to a maximum crossing
//! number, computes their Yamada polynomials exactly, and partitions them
//! into topology classes with minimum-crossing representatives.
//!
//! Modules mirror the processing stages:
//!
//! - [`laurent`]: exact integer Laurent polynomials in `A`.
//! - [`absgraph`]: abstract multigraphs and the `H` polynomial
//!   (deletion–contraction).
//! - [`diagram`]: the diagram type, PD codes, planarity, Reidemeister
//!   moves.
//! - [`yamada`]: the Yamada polynomial, its state-sum oracle, and
//!   canonicalization for class comparison.
//! - [`enumerate`]: architecture input, shadow generation, resolution,
//!   classification, condensation, and the full pipeline.

pub mod absgraph;
pub mod diagram;
pub mod enumerate;
pub mod laurent;
pub mod yamada;

pub use absgraph::AbstractGraph;
pub use diagram::{Diagram, MoveSpec};
pub use enumerate::{ClassReport, Shadow, SystemArchitecture};
pub use laurent::LaurentPoly;
pub use yamada::Mode;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree of the zero polynomial is undefined")]
    ZeroPolyDegree,
    #[error("unknown edge id {0}")]
    UnknownEdge(u32),
    #[error("cannot contract loop edge {0}")]
    ContractLoop(u32),
    #[error("unknown site `{0}`")]
    UnknownSite(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("move not applicable: {0}")]
    Move(String),
    #[error("move kind is not legal in {0:?} mode")]
    MoveMode(yamada::Mode),
    #[error("invalid architecture: {0}")]
    Arch(String),
    #[error("state sum guard: {0} crossings exceeds the 3^k enumeration limit")]
    StateSumTooLarge(usize),
    #[error("diagram is not connected")]
    Disconnected,
    #[error("enumeration limit exceeded: {0}")]
    Limit(String),
    #[error("internal invariant violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
