//! Spectral bounds toolkit for weighted graphs.
//!
//! Computes discrete p-Poincare constants (Neumann, modified, Dirichlet),
//! multi-way Cheeger constants, and subset-family upper bounds on Laplacian
//! eigenvalues, and verifies the chain of inequalities connecting them
//! numerically on generated and user-supplied instances.
//!
//! Start with [`graph::WeightedGraph`] and the generators, then:
//!
//! - [`spectral`]: the random-walk Laplacian, full/partial spectra, Dirichlet
//!   problems on vertex subsets;
//! - [`variational`]: p-Rayleigh quotients, certified upper estimates, and a
//!   quantized brute-force oracle for tiny graphs;
//! - [`bounds`]: the subset-family bound, its Dirichlet transplant, the
//!   Chung-Grigor'yan-Yau and Gozlan-Herry bounds, comparison logic, and
//!   family search;
//! - [`multiway`]: k-way isoperimetric constants and the p = 1
//!   Federer-Fleming identities;
//! - [`generators`]: chain-of-cliques graphs, rectangle-union meshes, domain
//!   meshes with boundary, random instances;
//! - [`verify`]: the batch verification suites behind the CLI.
//!
//! The `examples/` directory has one runnable example per capability; the
//! `spectral-bounds` binary wraps the same entry points as subcommands.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod multiway;
pub mod spectral;
pub mod variational;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{SubsetFamily, VertexSet, WeightedGraph};
pub use spectral::{DirichletProblem, SpectrumKind, SpectrumResult};
pub use variational::{Certification, Flavor, PEstimate};
