//! Principal eigenvectors of graph adjacency matrices and bounds on their
//! entries.
//!
//! For a connected graph the spectral radius `ρ` of the adjacency matrix is a
//! simple eigenvalue with a positive eigenvector `x`, normalized here so that
//! `Σ x_i² = 1`. This crate computes `(ρ, x)`, evaluates four classical and
//! recent per-entry bounds on `x`, evaluates the exact identity they derive
//! from, and verifies all of them over graph streams.
//!
//! ```
//! use perron_bounds::{analyze, named_graph, verify_report, Family, SolverConfig};
//!
//! let cfg = SolverConfig::default();
//! let path = named_graph(Family::Path, 4)?;
//! let report = analyze(&path, &cfg)?;
//!
//! let end = &report.rows[0];
//! assert!(end.lower_lwm <= end.actual && end.actual <= end.upper_cg);
//! assert!((end.exact_sq - end.actual * end.actual).abs() < 1e-12);
//! assert!(verify_report(&report, &cfg).is_empty());
//! # Ok::<(), perron_bounds::Error>(())
//! ```
//!
//! The `book/` directory at the repository root walks through the
//! mathematics; its code samples are compiled as doc-tests of this crate.

// `!(a < b)` is deliberate throughout: NaN must fail every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod enumerate;
mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod spectral;
pub mod sweep;
pub mod table_check;

pub use bounds::{
    analyze, check_cg_equality, proof_chain_check, taovu_exact, vertex_bounds, verify_report, BoundsReport, Check,
    LowerBoundWinner, ProofChain, VertexBounds, Violation,
};
pub use enumerate::{enumerate_connected, enumerate_connected_with_cap};
pub use error::{Error, Result};
pub use graph::{named_graph, random_connected, ComponentPartition, Family, Graph};
pub use io::{encode_graph6, parse_edge_list, parse_graph6};
pub use spectral::{
    dense_eigen_oracle, principal_eigenpair, spd_solve, spectral_radius_any, spectral_radius_any_with, EigenMethod,
    SolverConfig, SpectralResult,
};
pub use sweep::{sweep_exhaustive, sweep_graphs, sweep_random, SweepSummary};
pub use table_check::{check_published_table, TableCheck};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/eigenvector.md")]
    mod eigenvector {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/identity.md")]
    mod identity {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
