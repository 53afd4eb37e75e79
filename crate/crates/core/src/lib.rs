//! Normal surfaces, crushing and prime decomposition for 3-manifold
//! triangulations.

pub mod cell;
pub mod census;
pub mod cli;
pub mod crush;
pub mod decomp;
pub mod error;
pub mod homology;
pub mod normal;
pub mod perm;
pub mod surface;
pub mod tri;
pub mod uf;

pub use error::{Error, ParseError, Result};
pub use perm::Perm4;
pub use tri::Triangulation;
