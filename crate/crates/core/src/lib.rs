//! Hyperbolic surface geometry for bounding volumes of maximal globally
//! hyperbolic Anti-de Sitter 3-manifolds.

// `!(x > 0.0)` is the NaN-rejecting form used for input checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod curves;
mod dd;
pub mod deform;
pub mod error;
pub mod hypgeom;
mod mp;
pub mod riera;
pub mod surface;

pub use error::{Error, Result};
