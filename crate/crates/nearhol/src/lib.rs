//! Harmonic analysis of homogeneous vector bundles on compact Hermitian
//! symmetric spaces: exact highest-weight spectra and multiplicities, L²
//! membership tests, and numerical Jordan-pair verification kernels for the
//! classical matrix models.
//!
//! The exact side (`rootdata`, `weights`, `decomp`) runs entirely on rational
//! arithmetic; the numerical side (`jordan`, `integrals`, `scan`) corroborates
//! the decided criteria on the matrix models of types I, II and III. The
//! `charring` module holds independent character-ring oracles used by the
//! cross-checks in `verify`.

pub mod charring;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod exact;
pub mod integrals;
pub mod jordan;
pub mod linalg;
pub mod rootdata;
pub mod scan;
pub mod tolerances;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
