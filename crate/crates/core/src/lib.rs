//! Graph and matrix energy: spectra, energy bounds, a certified
//! construction of near-maximal-energy graphs, and a grader for
//! near-maximal-energy nonnegative matrices.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod characterization;
pub mod construction;
mod eigen;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod number_theory;
pub mod report;
pub mod spectrum;

pub use error::{Error, Result};
pub use graph::{paley_graph, Graph, VertexSet};
pub use matrix::{EntrywiseNorms, RealMatrix};
pub use spectrum::{energy, singular_values, symmetric_eigenvalues, EigenSpectrum, SingularSpectrum};
