//! Exact first-order curvature for Lie-algebraic noncommutative spacetimes.
//!
//! The crate is organised bottom-up:
//!
//! * [`expr`]: canonical rational-function expressions truncated at first order
//!   in the deformation symbol.
//! * [`algebra`]: commutators, the `D` tensor and the exterior derivative.
//! * [`metric`]: centrality of the line element, solving for the symmetric
//!   constants, inverse metric and the classical Levi-Civita connection.
//! * [`curvature`]: quantum-corrected Christoffel symbols, Riemann, Ricci,
//!   scalar and Einstein tensors.
//! * [`models`]: built-in fixtures and the bicrossproduct verifier.
//! * [`io`]: model files, the pipeline driver and report rendering.

pub mod algebra;
pub mod curvature;
pub mod error;
pub mod expr;
pub mod io;
pub mod metric;
pub mod models;
pub mod tensor;

pub use error::{Error, ParseError};
