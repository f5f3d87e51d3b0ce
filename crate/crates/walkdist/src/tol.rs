//! Tolerance constants used across the library.
//!
//! Exact algebraic identities are checked near machine precision scaled by
//! the matrix norms involved; the finite-parameter limit estimate converges
//! only linearly in `1/rho - t` and gets a much looser bound.

/// Relative eigenvector change at which power iteration stops.
pub const PERRON_ITER_CHANGE: f64 = 1e-13;

/// Accepted residual `‖Ap - rho·p‖∞ / (rho·‖p‖∞)` for a converged Perron pair.
pub const PERRON_RESIDUAL_REL: f64 = 1e-10;

/// Residual `‖𝓛p‖∞ / rho` above which a para-Laplacian rejects its Perron data.
pub const PARA_LAPLACIAN_KERNEL_REL: f64 = 1e-9;

/// Pivot magnitude below `PIVOT_REL · ‖M‖∞` flags an LU factorization singular.
///
/// The para-Laplacian of a connected graph has rank exactly n-1; this
/// threshold separates its one zero pivot from roundoff at desk-scale n.
pub const PIVOT_REL: f64 = 1e-12;

/// g-inverse contract: `‖M·G·M - M‖∞ ≤ GINVERSE_REL · ‖M‖∞`.
pub const GINVERSE_REL: f64 = 1e-9;

/// Agreement of the exact long-walk formulas with each other (relative).
pub const CROSS_FORMULA_REL: f64 = 1e-8;

/// Agreement of the finite-t limit estimate with the exact value (relative).
pub const LIMIT_ESTIMATE_REL: f64 = 1e-2;

/// Pre-symmetrization gap accepted when a distance matrix is assembled.
pub const SYMMETRY_REL: f64 = 1e-8;

/// Triangle-inequality slack allowed by the metric check (relative).
pub const METRIC_SLACK_REL: f64 = 1e-10;

/// Cutpoint additivity: `d(i,j)+d(j,k) = d(i,k)` within this relative tolerance
/// exactly for separating triples.
pub const GEODETIC_REL: f64 = 1e-8;

/// Bordered singular-matrix identity (relative to `‖X‖∞`).
pub const BORDERED_IDENTITY_REL: f64 = 1e-8;

/// Balanced graphs: long walk distance vs. resistance distance (relative).
pub const BALANCED_COINCIDENCE_REL: f64 = 1e-9;

/// Weighted-degree ratio `max/min - 1` below which a graph counts as balanced.
pub const BALANCED_DETECT: f64 = 1e-12;

/// Determinant-route resistance: independence from the denominator vertex.
pub const DENOMINATOR_INVARIANCE_REL: f64 = 1e-10;

/// Submatrix route: independence from the deleted pair (u, v).
pub const UV_INVARIANCE_REL: f64 = 1e-9;

/// Absolute residual accepted for Laplacian row sums.
pub const LAPLACIAN_ROWSUM_ABS: f64 = 1e-12;

/// Kernel residual accepted by the kernel-shift g-inverse constructor,
/// relative to `‖M‖∞`.
pub const KERNEL_SHIFT_INPUT_REL: f64 = 1e-8;
