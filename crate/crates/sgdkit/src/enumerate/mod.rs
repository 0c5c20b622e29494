//! Framework stages: architecture input, shadow enumeration, crossing
//! resolution, Yamada classification, sub-graph condensation, and the
//! end-to-end pipeline.

mod arch;
mod circular;
mod classify;
mod condense;
mod pipeline;
mod shadows;

pub use arch::{ArchEdge, ArchNode, SystemArchitecture};
pub use circular::{enumerate_circular, interleaving_pairs};
pub use classify::{classify, ClassEntry, ClassMember, ClassReport, ReportTotals};
pub use condense::condense;
pub use pipeline::{pipeline, Generator, PipelineOptions};
pub use shadows::{enumerate_shadows, resolve, EnumOptions, Shadow};
