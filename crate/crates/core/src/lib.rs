//! Determinantal representations of smooth cubic surfaces.
//!
//! Builds the 27 lines of a cubic surface, enumerates its double-sixes and
//! the 72 classes of determinantal representations, and for real surfaces
//! decides Segre type, self-adjoint representations and definiteness.

pub mod builtin;
pub mod detrep;
pub mod error;
pub mod linalg;
pub mod lineconfig;
pub mod numeric;
pub mod numlines;
pub mod pencil;
pub mod poly;
pub mod projective;
pub mod realgeom;
pub mod scalars;
pub mod surface;

pub use error::{Error, Result};
