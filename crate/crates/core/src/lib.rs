//! Kirchhoff polynomials, cographic matroid densities and the convergence
//! thresholds of logarithmic graph integrals.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: multigraphs, bridges, contraction, spanning trees, cycle bases.
//! - [`poly`] and [`kirchhoff`]: exact polynomials and the Kirchhoff polynomial.
//! - [`matroid`] and [`lp`]: cographic rank, density, witness vectors, and the
//!   spanning-tree covering LP.
//! - [`convergence`]: thresholds, optimal contractions, families, search, reports.
//! - [`probe`]: numeric growth checks of the truncated integral.
//! - [`selftest`]: the acceptance checks, runnable from the CLI.

pub mod canon;
pub mod convergence;
pub mod error;
pub mod graph;
pub mod kirchhoff;
pub mod lp;
pub mod matroid;
pub mod poly;
pub mod probe;
pub mod rational;
pub mod selftest;

pub use error::{Error, Result};
pub use graph::{Edge, Multigraph};
pub use poly::IntPolynomial;
