//! Spectral complexity of directed graphs and clustering into almost-cyclic
//! groups from the eigenvectors of the recurrence matrix.
//!
//! The pipeline is: parse a graph ([`ingest`]), strip sources and build the
//! row-stochastic recurrence matrix ([`reduction`]), take its full spectrum
//! ([`spectra`]), then score it ([`complexity`]) or cluster it
//! ([`cycleclust`]). [`baselines`] holds the Fiedler bipartition used for
//! comparison and [`export`] writes CSV, SVG, DOT and JSON artifacts.

pub mod error;
pub mod graph;
pub mod ingest;
pub mod reduction;
pub mod spectra;
pub mod complexity;
pub mod cycleclust;
pub mod baselines;
pub mod export;

pub use error::{Error, Result};
pub use graph::{graph_stats, DirectedGraph, Edge, GraphStats, NodeId};
pub use num_complex::Complex64;
