//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Lamé coefficients or auxiliary parameters violate the family's
    /// admissibility constraints.
    #[error("invalid material: {0}")]
    InvalidMaterial(String),

    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Stored-energy evaluation requested for a non-hyperelastic family.
    #[error("material family {0} is not hyperelastic")]
    NotHyperelastic(&'static str),

    /// `∂_δ p_rad ≤ 0`; the equilibrium ODE is no longer solvable for `δ'`.
    #[error("ellipticity loss at r = {r}: d(p_rad)/d(delta) = {dpdd}")]
    EllipticityLoss { r: f64, dpdd: f64 },

    /// The integrator hit `δ ≤ 0` or an ellipticity loss before a pressure
    /// zero was located.
    #[error("singularity guard tripped at r = {r}: {reason}")]
    SingularityGuard { r: f64, reason: String },

    /// Adaptive step size underflowed.
    #[error("step failure at r = {r}: step size underflow (h = {h})")]
    StepFailure { r: f64, h: f64 },

    /// `p_rad(·, η)` has no nonnegative root in `δ`.
    #[error("no zero-pressure root for eta = {eta}")]
    NoZeroPressureRoot { eta: f64 },

    /// Central pressure is not positive; no ball equilibrium exists.
    #[error("no equilibrium: {0}")]
    NoEquilibrium(String),

    /// Integration reached the radius cutoff without a pressure zero.
    #[error("no boundary found before r_stop = {r_stop}")]
    NoBoundaryFound { r_stop: f64 },

    /// Shell inner radius outside the admissible window `[r_min, S)`.
    #[error("inadmissible inner radius r0 = {r0}: admissible window is [{r_min}, {s})")]
    InadmissibleInnerRadius { r0: f64, r_min: f64, s: f64 },

    /// Boundary pressure derivative `F(r0) < 0`; the shell cannot start there.
    #[error("negative boundary pressure derivative F({r0}) = {f}")]
    NegativeBoundaryDerivative { r0: f64, f: f64 },

    /// An existence bound failed on a computed solution, indicating a
    /// corrupted profile.
    #[error("bound violation: {0}")]
    BoundViolation(String),

    /// Calibration function is not monotone on the search bracket.
    #[error("not invertible: {0}")]
    NotInvertible(String),

    /// Requested value lies outside the range of the calibration function.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// No root in the calibration search bracket.
    #[error("no root in bracket [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },

    /// Several roots found; brackets are reported, never silently resolved.
    #[error("multiple roots found in brackets {brackets:?}")]
    MultipleRoots { brackets: Vec<(f64, f64)> },

    /// Newton iteration failed to converge.
    #[error("no convergence after {iterations} iterations (residuals {residuals:?})")]
    NoConvergence {
        iterations: usize,
        residuals: Vec<f64>,
    },

    /// Profile does not extend to the requested probe radius.
    #[error("profile too short: extends to r = {r_end}, requested r = {r_probe}")]
    ProfileTooShort { r_end: f64, r_probe: f64 },

    /// Quadrature grid-halving estimate failed to reach the target.
    #[error("quadrature not converged: estimate {estimate} > target {target}")]
    QuadratureNotConverged { estimate: f64, target: f64 },

    /// Reconstructed reference radius is non-increasing somewhere.
    #[error("monotonicity violation in reference radius at r = {r}")]
    MonotonicityViolation { r: f64 },
}
