//! Exact counting of non-degenerate strings (simple paths and simple cycles)
//! in undirected graphs, and the measures built on top of them.
//!
//! * [`graph`] holds the dense [`Graph`] type and the edge-list format.
//! * [`strings`] computes the string-count matrices `R^n` with two
//!   independent engines.
//! * [`metrics`] turns string counts into generalized clustering
//!   coefficients `C(p)`, the Milgram ratio `M_q` and separation numbers.
//! * [`generators`] builds seeded scale-free, Newman–Watts and baseline graphs.
//! * [`experiments`] runs parameter sweeps and least-squares fits.
//!
//! # Example
//!
//! ```
//! use netstrings::{Graph, metrics};
//!
//! let k3 = Graph::from_edge_list("0 1\n1 2\n2 0").unwrap();
//! let c3 = metrics::generalized_clustering(&k3, 3).unwrap();
//! assert_eq!(c3.value, 1.0);
//! ```

pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod matrix;
pub mod metrics;
pub mod strings;

pub use error::{Error, Result};
pub use experiments::{FitModel, FitResult, SweepResult};
pub use generators::{GeneratorConfig, Model};
pub use graph::Graph;
pub use matrix::DenseIntMatrix;
pub use metrics::{Clustering, MilgramProfile};
pub use strings::{
    count_strings, count_strings_direct, string_statistics, Engine, StringCountMatrix,
    StringCounter, StringSpectrum, StringStatistics,
};
