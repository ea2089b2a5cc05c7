//! Exact lattice and Coxeter-diagram computations for the cusps of the
//! moduli space of numerically degree 2 polarized Enriques surfaces.

#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::too_many_arguments, clippy::len_without_is_empty)]

pub mod cli;
pub mod cusps;
pub mod diagrams;
pub mod enumerate;
pub mod error;
pub mod folding;
pub mod ias;
pub mod k3;
pub mod lattice;
pub mod linalg;
pub mod polytope;
pub mod roots;
pub mod subdiagram;
pub mod vinberg;

pub use error::{Error, Result};
