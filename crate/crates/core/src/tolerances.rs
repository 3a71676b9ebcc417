//! Pinned numeric tolerances and thresholds.
//!
//! Every tolerance used by an assertion — in the library, the verification
//! suite, or the integration tests — is named here once, with its rationale,
//! so a reported verdict is always traceable to a single constant.

/// Relative tolerance for identities that hold exactly in exact arithmetic
/// (finite-family equalities, algebraic rearrangements). Roughly 1e4 ulps:
/// permissive enough for `powf`-weighted sums, far below any modeling error.
pub const EXACT_IDENTITY_REL: f64 = 1e-12;

/// Additive slack for analytic inequalities that are provable for any fixed
/// cube family, scaled by the magnitude of the participating terms. Looser
/// than [`EXACT_IDENTITY_REL`] because both sides are suprema accumulated
/// through independent roundings.
pub const INEQUALITY_SLACK: f64 = 1e-10;

/// Exponent balance `α/n = 1/p − 1/r = 1/q − 1/s` must hold this tightly.
pub const EXPONENT_BALANCE: f64 = 1e-12;

/// A Hölder ratio `∫|fg| / (‖f‖_p ‖g‖_{p′})` may exceed 1 by at most this
/// much (equality cases land on 1 up to a few ulps).
pub const HOLDER_SLACK: f64 = 1e-12;

/// Additive slack (scaled) for the slice-norm triangle inequality on random
/// pairs; wider than the Hölder slack because two full norm evaluations sit
/// on each side.
pub const SLICE_TRIANGLE_SLACK: f64 = 1e-10;

/// Empirical-constant drift allowed across one grid refinement (h → h/2) of
/// the same continuum instance, as evidence of boundedness.
pub const DRIFT_SINGLE_STEP: f64 = 0.10;

/// Drift allowed across a whole refinement ladder (e.g. 64 → 128 → 256) in
/// the acceptance-level boundedness checks.
pub const DRIFT_LADDER: f64 = 0.25;

/// Minimum growth factor per domain doubling for the mean oscillation of a
/// linear ramp — the exact factor is 2, so 1.8 separates genuine growth from
/// drift without being brittle.
pub const GROWTH_OSCILLATION_MIN: f64 = 1.8;

/// Minimum per-step growth factor for a quantity to count as "growing
/// monotonically" under domain growth (unboundedness evidence).
pub const GROWTH_MONOTONE_MIN: f64 = 1.05;

/// Minimum Spearman rank correlation between the two mean-form symbol
/// functionals across the corpus — the equivalence they discretize is
/// qualitative, so only the ordering is asserted.
pub const RANK_CORRELATION_MIN: f64 = 0.75;

/// Maximum spread (max/min) of `slice_norm(χ_Q) / |Q|^{1/p}` across cube
/// sizes on one grid: the two-sided comparability constant.
pub const CHI_RATIO_SPREAD_MAX: f64 = 2.0;

/// A later cube replaces the current supremum argmax only when it exceeds it
/// by this relative margin; keeps reported argmax cubes stable under
/// constant shifts of the symbol.
pub const ARGMAX_TIE_REL: f64 = 1e-12;
