//! Numerical Jordan-pair engine for the classical matrix models.

pub mod action;
pub mod model;
pub mod poly;

pub use action::{
    bergman_bundle_action, kahler_potential, potential_pairing_ratio, uc_action,
    verify_qmap_identities, BundleModel, Generator, LElement,
};
pub use model::{JordanPoint, KWitness, MatrixModel, Polar, Side};
pub use poly::{diagonal_degrees, eval_section, minor_poly, PolyMap, Value, DEGREE_BUDGET};
