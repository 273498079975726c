//! Exact computation of first cohomology groups of sheaves of arithmetic
//! differential operators on the blow-up of the projective line at its
//! `F_p`-rational points.
//!
//! The computations reduce to finite abelian p-groups presented as cokernels
//! of integer matrices into skyscraper quotients, see [`local_data`] and
//! [`cohomology`].

pub mod arith;
pub mod cohomology;
pub mod golden;
mod error;
pub mod operators;
pub mod lifting;
pub mod linalg;
pub mod local_data;

pub use error::{Error, Result};
pub use linalg::{AbelianPGroup, IntegerMatrix, ModuliVector};
