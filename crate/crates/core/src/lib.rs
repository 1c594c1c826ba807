//! Exact decision procedures and certificates for equistarable and
//! equistable graphs, matching extendability, and related properties of
//! small graphs.

pub mod cliques;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod matching;
pub mod recognize;
pub mod report;
pub mod transforms;
pub mod verdict;

pub use error::{Error, Result};
pub use graph::{parse_edge_list, Bipartition, Graph};
pub use verdict::{Answer, Verdict, DEFAULT_STEP_BUDGET};
