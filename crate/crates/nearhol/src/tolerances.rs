//! Centralized numerical tolerances used by the verification suites.
//!
//! Exact combinatorics (spectra, multiplicities) never consults these; they
//! bound the floating-point residuals of the matrix-model kernels.

/// Relative error for the determinant and fundamental Jordan identities on
/// random bounded samples.
pub const JORDAN_IDENTITY_REL: f64 = 1e-8;

/// Relative error for Δ(z, −z̄) = ∏(1 + tᵢ²) against the polar parameters.
pub const POLAR_IDENTITY_REL: f64 = 1e-8;

/// Relative reconstruction error ‖k·z_t − z‖ / ‖z‖ of the polar witness.
pub const POLAR_RECONSTRUCT_REL: f64 = 1e-10;

/// Construction-time shape residual (antisymmetry / symmetry) of points.
pub const POINT_SHAPE_ABS: f64 = 1e-12;

/// Central finite-difference step for the q-map and potential checks.
pub const FD_STEP: f64 = 1e-5;

/// Absolute residual accepted for the q-map identities at unit scale.
pub const QMAP_FD_ABS: f64 = 1e-6;

/// Residual for K-equivariance of the q-map and the quasi-inverse relation.
pub const EQUIVARIANCE_ABS: f64 = 1e-8;

/// Hermiticity residual tolerated before an operator square root.
pub const HERMITICITY_REL: f64 = 1e-10;

/// Slack allowed on the two-sided Bergman density bounds.
pub const BERGMAN_BOUND_SLACK: f64 = 1e-10;

/// Relative accuracy of quadrature baselines (total-mass values).
pub const QUADRATURE_REL: f64 = 1e-3;

/// Interpolation coefficient cutoff, relative to the largest coefficient.
pub const DEGREE_COEFF_REL: f64 = 1e-8;

/// Log–log growth slope beyond which a truncation ladder is classified as
/// divergent, together with the minimal fit quality.
pub const DIVERGENCE_SLOPE: f64 = 0.1;
pub const DIVERGENCE_R2: f64 = 0.9;

/// Relative stabilization across the top of the truncation ladder required
/// for a convergent classification.
pub const LADDER_STABLE_REL: f64 = 1e-2;
