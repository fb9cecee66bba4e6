//! Equilibrium ODE systems and the adaptive integrator.
//!
//! The hydrostatic system in the variables `(δ, η, m)` reads
//!
//! ```text
//! ∂_δ p_rad · δ' = -(3/r) ∂_η p_rad (δ-η) - (2/r)(p_rad - p_tan) - K δ m / r²
//! η' = (3/r)(δ - η)
//! m' = 4π K r² δ
//! ```
//!
//! For Seth materials the first equation takes the closed form with the
//! coefficient functions `θ1, θ2, θ3`; two further changes of variables lead
//! to the `(x, y, z)` system and the autonomous `(u, y, z)` system used in
//! the large-radius analysis (see [`crate::seth`]).
//!
//! Integration uses a Dormand-Prince 5(4) embedded pair with cubic Hermite
//! dense output and zero-pressure event detection refined by bracketed root
//! finding on the interpolant.

use std::f64::consts::PI;

use crate::error::Error;
use crate::materials::{zero_pressure_delta_seth, MaterialFamily, MaterialSpec};
use crate::rootfind::{brent, scan_brackets, BrentControls};
use crate::Result;

/// One radial sample of the equilibrium fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumState {
    pub r: f64,
    pub delta: f64,
    pub eta: f64,
    pub m: f64,
}

impl EquilibriumState {
    pub fn new(r: f64, delta: f64, eta: f64, m: f64) -> Self {
        Self { r, delta, eta, m }
    }

    pub fn rho(&self, k: f64) -> f64 {
        k * self.delta
    }
}

/// Seth length scale `ϑ = K √(4π / (3(λ+2μ)))`; `1/ϑ` is the natural radial
/// unit of the problem.
pub fn theta_len(lambda: f64, mu: f64, k: f64) -> f64 {
    k * (4.0 * PI / (3.0 * (lambda + 2.0 * mu))).sqrt()
}

/// Material constants `a = 2(λ+μ)/(λ+2μ)` and `b = 2μ/(λ+2μ)` of the
/// `(x, y, z)` system.
pub fn material_constants_ab(lambda: f64, mu: f64) -> (f64, f64) {
    (
        2.0 * (lambda + mu) / (lambda + 2.0 * mu),
        2.0 * mu / (lambda + 2.0 * mu),
    )
}

/// Generic right-hand side `(δ', η', m')`, with the constitutive partials
/// evaluated in closed form.
pub fn rhs_general(spec: &MaterialSpec, k: f64, state: &EquilibriumState) -> Result<[f64; 3]> {
    let EquilibriumState { r, delta, eta, m } = *state;
    if !(r > 0.0) {
        return Err(Error::Domain(format!("rhs requires r > 0, got {r}")));
    }
    let dpdd = spec.dp_rad_ddelta(delta, eta)?;
    if !(dpdd > 0.0) {
        return Err(Error::EllipticityLoss { r, dpdd });
    }
    let dpde = spec.dp_rad_deta(delta, eta)?;
    let p_rad = spec.p_rad(delta, eta)?;
    let p_tan = spec.p_tan(delta, eta)?;
    let ddelta = (-3.0 / r * dpde * (delta - eta) - 2.0 / r * (p_rad - p_tan)
        - k * delta * m / (r * r))
        / dpdd;
    Ok([
        ddelta,
        3.0 / r * (delta - eta),
        4.0 * PI * k * r * r * delta,
    ])
}

/// Seth coefficient `θ1 = ∂_η p_rad / ∂_δ p_rad` in closed form.
pub fn seth_theta1(lambda: f64, mu: f64, delta: f64, eta: f64) -> f64 {
    2.0 / (3.0 * (lambda + 2.0 * mu))
        * (lambda * eta / delta - (lambda + 2.0 * mu) * delta / eta)
}

/// Seth coefficient `θ2 = (p_rad - p_tan) / ∂_δ p_rad` in closed form.
pub fn seth_theta2(lambda: f64, mu: f64, delta: f64, eta: f64) -> f64 {
    mu / (lambda + 2.0 * mu) * (delta * delta - eta * eta) / delta
}

/// Seth coefficient `θ3 = K / ∂_δ p_rad` in closed form.
pub fn seth_theta3(lambda: f64, mu: f64, k: f64, delta: f64, eta: f64) -> f64 {
    k / (lambda + 2.0 * mu) * eta.powf(4.0 / 3.0) / delta
}

/// Closed-form Seth right-hand side; agrees with [`rhs_general`] for Seth
/// specs.
pub fn rhs_seth(lambda: f64, mu: f64, k: f64, state: &EquilibriumState) -> Result<[f64; 3]> {
    let EquilibriumState { r, delta, eta, m } = *state;
    if !(r > 0.0) || !(delta > 0.0) || !(eta > 0.0) {
        return Err(Error::Domain(format!(
            "rhs_seth requires r, delta, eta > 0, got ({r}, {delta}, {eta})"
        )));
    }
    let ddelta = -3.0 / r * seth_theta1(lambda, mu, delta, eta) * (delta - eta)
        - 2.0 / r * seth_theta2(lambda, mu, delta, eta)
        - seth_theta3(lambda, mu, k, delta, eta) * m / (r * r) * delta;
    Ok([
        ddelta,
        3.0 / r * (delta - eta),
        4.0 * PI * k * r * r * delta,
    ])
}

/// Right-hand side of the `(x, y, z)` system:
///
/// ```text
/// x' = -(2x/r)(1-y)
/// y' = (1/r)(a + by + y²)(1-y)/y - r x² z
/// z' = (3y/r)(1-z)
/// ```
pub fn rhs_xyz(a: f64, b: f64, r: f64, x: f64, y: f64, z: f64) -> Result<[f64; 3]> {
    if !(r > 0.0) || !(y > 0.0) {
        return Err(Error::Domain(format!(
            "rhs_xyz requires r > 0 and y > 0, got r = {r}, y = {y}"
        )));
    }
    Ok([
        -2.0 * x / r * (1.0 - y),
        (a + b * y + y * y) * (1.0 - y) / (r * y) - r * x * x * z,
        3.0 * y / r * (1.0 - z),
    ])
}

/// Right-hand side of the autonomous `(u, y, z)` system in the variable `ξ`
/// with `d/dξ = r y d/dr` and `u = r x`.
pub fn rhs_autonomous(a: f64, b: f64, u: f64, y: f64, z: f64) -> [f64; 3] {
    [
        -u * (1.0 - 2.0 * y) * y,
        (a + b * y + y * y) * (1.0 - y) - u * u * y * z,
        3.0 * y * y * (1.0 - z),
    ]
}

/// Regular-center initial data at a small regularization radius `r_eps`:
/// the flat start `δ = η = δ_c`, `m = (4π/3) K δ_c r_eps³` has local error
/// `O(r_eps²)` in `δ` and `η`.
pub fn center_init(k: f64, delta_c: f64, r_eps: f64) -> EquilibriumState {
    EquilibriumState::new(
        r_eps,
        delta_c,
        delta_c,
        4.0 * PI / 3.0 * k * delta_c * r_eps.powi(3),
    )
}

/// Shell initial data at the inner radius `r0`: `η(r0) = (S/r0)³`,
/// `m(r0) = M_interior` (the gravitating mass enclosed by the shell) and
/// `δ(r0)` solved from `p_rad(δ, η(r0)) = 0`.
pub fn shell_init(
    spec: &MaterialSpec,
    s: f64,
    r0: f64,
    m_interior: f64,
) -> Result<EquilibriumState> {
    if !(r0 > 0.0) || !(s > 0.0) || m_interior < 0.0 {
        return Err(Error::Domain(format!(
            "shell_init requires r0, S > 0 and M_interior >= 0, got ({r0}, {s}, {m_interior})"
        )));
    }
    let eta0 = (s / r0).powi(3);
    let delta0 = match spec.family() {
        MaterialFamily::Seth => {
            // at the admissibility saturation η^{2/3} = (3λ + 2μ)/(2λ) the
            // zero-pressure density vanishes; snap rounding-level residues
            let lame = spec.lame();
            let bound = (3.0 * lame.lambda + 2.0 * lame.mu) / (2.0 * lame.lambda);
            if (bound - eta0.cbrt().powi(2)).abs() <= 1e-12 * bound {
                0.0
            } else {
                zero_pressure_delta_seth(lame, eta0)
                    .map_err(|_| Error::NoZeroPressureRoot { eta: eta0 })?
            }
        }
        _ => {
            let brackets = scan_brackets(|d| spec.p_rad(d, eta0), 1e-8, 1e4, 400)?;
            let mut root = None;
            for (lo, hi) in brackets {
                let d = brent(|d| spec.p_rad(d, eta0), lo, hi, BrentControls::default())?;
                // keep the elliptic branch
                if spec.dp_rad_ddelta(d, eta0)? > 0.0 {
                    root = Some(d);
                }
            }
            root.ok_or(Error::NoZeroPressureRoot { eta: eta0 })?
        }
    };
    Ok(EquilibriumState::new(r0, delta0, eta0, m_interior))
}

/// Why an integration stopped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    /// Radial pressure crossed zero; the crossing was refined to `r_exact`.
    PressureZero { r_exact: f64 },
    /// Reached `r_stop` without a pressure zero.
    RadiusCutoff,
    /// `δ ≤ 0` or ellipticity loss before a pressure zero.
    SingularityGuard,
    /// Adaptive step size underflow.
    StepFailure,
}

/// Integrator controls.
#[derive(Debug, Clone, Copy)]
pub struct IntegrationControls {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub r_stop: f64,
    pub max_steps: usize,
    /// Monitor `p_rad` for a positive-to-nonpositive crossing.
    pub detect_pressure_zero: bool,
    /// Cap on the step size relative to the current radius. Keeps the dense
    /// output derivative accurate enough for downstream residual checks.
    pub max_step_rel: f64,
}

impl Default for IntegrationControls {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            r_stop: f64::INFINITY,
            max_steps: 4_000_000,
            detect_pressure_zero: true,
            max_step_rel: 5e-3,
        }
    }
}

/// Per-step cubic Hermite interpolation data.
#[derive(Debug, Clone, Copy)]
pub struct DenseSegment {
    pub r0: f64,
    pub h: f64,
    pub y0: [f64; 3],
    pub f0: [f64; 3],
    pub y1: [f64; 3],
    pub f1: [f64; 3],
}

impl DenseSegment {
    pub fn eval(&self, r: f64) -> [f64; 3] {
        let t = (r - self.r0) / self.h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = h00 * self.y0[i]
                + h10 * self.h * self.f0[i]
                + h01 * self.y1[i]
                + h11 * self.h * self.f1[i];
        }
        out
    }
}

/// The result of one integration: accepted samples, dense-output segments
/// and the termination cause.
#[derive(Debug, Clone)]
pub struct SolutionProfile {
    pub samples: Vec<EquilibriumState>,
    pub dense: Vec<DenseSegment>,
    pub termination: Termination,
    pub material: MaterialSpec,
    pub k: f64,
    /// Reference inner radius when the profile belongs to a shell.
    pub s_ref: Option<f64>,
}

impl SolutionProfile {
    pub fn r_start(&self) -> f64 {
        self.samples.first().map(|s| s.r).unwrap_or(f64::NAN)
    }

    pub fn r_end(&self) -> f64 {
        self.samples.last().map(|s| s.r).unwrap_or(f64::NAN)
    }

    pub fn last(&self) -> &EquilibriumState {
        self.samples.last().expect("profile has at least one sample")
    }

    /// Interpolate `(δ, η, m)` at `r` from the dense output.
    pub fn eval(&self, r: f64) -> Result<EquilibriumState> {
        if self.dense.is_empty() {
            return Err(Error::ProfileTooShort {
                r_end: self.r_end(),
                r_probe: r,
            });
        }
        let lo = self.dense[0].r0;
        let hi = {
            let seg = self.dense.last().unwrap();
            seg.r0 + seg.h
        };
        // covers the analytic bootstrap gap at a shell's inner edge
        let pad = 1e-8 * hi.abs().max(1.0);
        if r < lo - pad || r > hi + pad {
            return Err(Error::ProfileTooShort {
                r_end: hi,
                r_probe: r,
            });
        }
        let r = r.clamp(lo, hi);
        let idx = self
            .dense
            .partition_point(|seg| seg.r0 + seg.h < r)
            .min(self.dense.len() - 1);
        let y = self.dense[idx].eval(r);
        Ok(EquilibriumState::new(r, y[0], y[1], y[2]))
    }

    pub fn p_rad_at(&self, state: &EquilibriumState) -> Result<f64> {
        self.material.p_rad(state.delta, state.eta)
    }

    pub fn p_tan_at(&self, state: &EquilibriumState) -> Result<f64> {
        self.material.p_tan(state.delta, state.eta)
    }
}

// Dormand-Prince 5(4) coefficients.
const DP_C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const DP_B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrate the equilibrium system from `init` with adaptive steps, dense
/// output and optional zero-pressure event detection.
pub fn integrate(
    spec: &MaterialSpec,
    k: f64,
    init: EquilibriumState,
    controls: &IntegrationControls,
) -> Result<SolutionProfile> {
    if !(controls.rel_tol > 0.0 && controls.abs_tol > 0.0 && controls.r_stop > init.r) {
        return Err(Error::Domain(
            "integration controls must be positive with r_stop beyond the start".into(),
        ));
    }

    let mut samples = Vec::new();
    let mut dense = Vec::new();
    samples.push(init);

    let mut state = init;
    // Seth shells may legitimately start with δ = 0 at r0 = r_min, where the
    // δ-equation is singular with δ ~ sqrt(r - r0). Bootstrap analytically.
    if state.delta < 1e-7 * state.eta {
        if spec.family() != MaterialFamily::Seth {
            return Err(Error::SingularityGuard {
                r: state.r,
                reason: format!("delta = {} too small at the start", state.delta),
            });
        }
        let (a, _) = material_constants_ab(spec.lame().lambda, spec.lame().mu);
        let c = a * state.eta * state.eta / state.r;
        let eps = state.r * 1e-9;
        let delta_eps = (state.delta * state.delta + 2.0 * c * eps).sqrt();
        let eta_eps = state.eta + 3.0 / state.r * (state.delta - state.eta) * eps;
        state = EquilibriumState::new(state.r + eps, delta_eps, eta_eps, state.m);
        samples.push(state);
    }

    let p0 = spec.p0();
    let mut g_prev = spec.p_rad(state.delta, state.eta)?;
    let mut armed = g_prev > 0.0;

    let mut y = [state.delta, state.eta, state.m];
    let mut r = state.r;
    let mut f = match rhs_general(spec, k, &state) {
        Ok(f) => f,
        Err(e @ (Error::EllipticityLoss { .. } | Error::Domain(_))) => {
            return Err(Error::SingularityGuard {
                r,
                reason: e.to_string(),
            })
        }
        Err(e) => return Err(e),
    };
    let mut h = (1e-3 * r).min(0.1 * (controls.r_stop - r));
    let h_floor = 1e2 * f64::EPSILON;

    let mut stages = [[0.0; 3]; 7];
    let mut termination = None;

    for _ in 0..controls.max_steps {
        if r >= controls.r_stop * (1.0 - 1e-14) {
            termination = Some(Termination::RadiusCutoff);
            break;
        }
        h = h.min(controls.r_stop - r).min(controls.max_step_rel * r);

        // one attempted Dormand-Prince step
        stages[0] = f;
        let mut stage_err = None;
        for i in 1..7 {
            let mut yi = y;
            for (j, sj) in stages.iter().enumerate().take(i) {
                for c in 0..3 {
                    yi[c] += h * DP_A[i][j] * sj[c];
                }
            }
            let si = EquilibriumState::new(r + DP_C[i] * h, yi[0], yi[1], yi[2]);
            match rhs_general(spec, k, &si) {
                Ok(fi) => stages[i] = fi,
                Err(e) => {
                    stage_err = Some(e);
                    break;
                }
            }
        }

        let mut accept = false;
        let mut y_new = y;
        let mut err = f64::INFINITY;
        if stage_err.is_none() {
            let mut y4 = y;
            for (j, sj) in stages.iter().enumerate() {
                for c in 0..3 {
                    y_new[c] += h * DP_B5[j] * sj[c];
                    y4[c] += h * DP_B4[j] * sj[c];
                }
            }
            let mut sum = 0.0;
            for c in 0..3 {
                let scale = controls.abs_tol + controls.rel_tol * y[c].abs().max(y_new[c].abs());
                let e = (y_new[c] - y4[c]) / scale;
                sum += e * e;
            }
            err = (sum / 3.0).sqrt();
            accept = err <= 1.0 && y_new.iter().all(|v| v.is_finite());
        }

        if accept {
            let state_new = EquilibriumState::new(r + h, y_new[0], y_new[1], y_new[2]);
            let f_new = match rhs_general(spec, k, &state_new) {
                Ok(f) => Some(f),
                Err(Error::EllipticityLoss { .. } | Error::Domain(_)) => None,
                Err(e) => return Err(e),
            };
            let Some(f_new) = f_new else {
                // accepted state left the constitutive domain: guard
                termination = Some(Termination::SingularityGuard);
                break;
            };
            let seg = DenseSegment {
                r0: r,
                h,
                y0: y,
                f0: f,
                y1: y_new,
                f1: f_new,
            };

            // zero-pressure event detection on the dense interpolant
            let g_new = spec.p_rad(y_new[0], y_new[1])?;
            if controls.detect_pressure_zero && armed && g_prev > 0.0 && g_new <= 0.0 {
                let g_of = |rr: f64| -> Result<f64> {
                    let v = seg.eval(rr);
                    spec.p_rad(v[0], v[1])
                };
                let r_exact = brent(
                    g_of,
                    r,
                    r + h,
                    BrentControls {
                        x_abs_tol: 0.0,
                        x_rel_tol: 1e-13,
                        max_iter: 200,
                    },
                )?;
                let v = seg.eval(r_exact);
                let g_exact = spec.p_rad(v[0], v[1])?;
                if g_exact.abs() > controls.abs_tol.max(1e-12) * p0.abs().max(1.0) * 1e3 {
                    return Err(Error::BoundViolation(format!(
                        "event refinement residual |p_rad| = {} at r = {r_exact}",
                        g_exact.abs()
                    )));
                }
                let mut seg_cut = seg;
                seg_cut.h = r_exact - r;
                seg_cut.y1 = v;
                seg_cut.f1 = rhs_general(
                    spec,
                    k,
                    &EquilibriumState::new(r_exact, v[0], v[1], v[2]),
                )?;
                dense.push(seg_cut);
                samples.push(EquilibriumState::new(r_exact, v[0], v[1], v[2]));
                termination = Some(Termination::PressureZero { r_exact });
                break;
            }
            if g_new > 0.0 {
                armed = true;
            }
            g_prev = g_new;

            dense.push(seg);
            samples.push(state_new);
            if y_new[0] <= 0.0 {
                termination = Some(Termination::SingularityGuard);
                break;
            }
            r += h;
            y = y_new;
            f = f_new;
            let factor = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
            h *= factor;
        } else {
            let factor = if stage_err.is_some() {
                0.5
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.1, 1.0)
            };
            h *= factor;
            if h < h_floor * r.abs().max(1.0) {
                termination = Some(if stage_err.is_some() {
                    Termination::SingularityGuard
                } else {
                    Termination::StepFailure
                });
                break;
            }
        }
    }

    let termination = termination.unwrap_or(Termination::StepFailure);
    match termination {
        Termination::SingularityGuard => Err(Error::SingularityGuard {
            r,
            reason: "delta <= 0 or ellipticity loss before a pressure zero".into(),
        }),
        Termination::StepFailure => Err(Error::StepFailure { r, h }),
        _ => Ok(SolutionProfile {
            samples,
            dense,
            termination,
            material: spec.clone(),
            k,
            s_ref: None,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seth::self_similar;

    #[test]
    fn rhs_general_matches_seth_closed_form() {
        let spec = MaterialSpec::seth(1.0, 1.0).unwrap();
        let state = EquilibriumState::new(0.7, 1.8, 2.2, 0.4);
        let g = rhs_general(&spec, 1.0, &state).unwrap();
        let s = rhs_seth(1.0, 1.0, 1.0, &state).unwrap();
        for c in 0..3 {
            assert!((g[c] - s[c]).abs() <= 1e-12 * s[c].abs().max(1.0));
        }
    }

    #[test]
    fn eta_equation_vanishes_on_diagonal() {
        let spec = MaterialSpec::signorini(1.0, 1.0).unwrap();
        let state = EquilibriumState::new(1.0, 1.3, 1.3, 0.2);
        let g = rhs_general(&spec, 1.0, &state).unwrap();
        assert_eq!(g[1], 0.0);
    }

    #[test]
    fn seth_natural_center_is_stationary() {
        let state = EquilibriumState::new(1.0, 1.0, 1.0, 0.0);
        let g = rhs_seth(1.0, 1.0, 1.0, &state).unwrap();
        assert!(g[0].abs() < 1e-15);
    }

    #[test]
    fn theta_values() {
        // θ1(δ,δ) = -4/9 and θ2(δ,δ) = 0 at λ = μ = 1
        assert!((seth_theta1(1.0, 1.0, 1.7, 1.7) + 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(seth_theta2(1.0, 1.0, 2.4, 2.4), 0.0);
    }

    #[test]
    fn autonomous_fixed_points_vanish() {
        let (a, b) = material_constants_ab(1.0, 1.0);
        let u_p = 0.5 * (1.0 + 4.0 * a + 2.0 * b).sqrt();
        let f = rhs_autonomous(a, b, u_p, 0.5, 1.0);
        for c in f {
            assert!(c.abs() < 1e-14);
        }
        let f = rhs_autonomous(a, b, 0.0, 1.0, 1.0);
        for c in f {
            assert!(c.abs() < 1e-14);
        }
    }

    #[test]
    fn autonomous_y_axis_slope() {
        let (a, b) = material_constants_ab(1.3, 0.6);
        let f = rhs_autonomous(a, b, 0.7, 0.0, 1.0);
        assert!((f[1] - a).abs() < 1e-15);
    }

    #[test]
    fn center_init_mass() {
        let s = center_init(1.0, 2.0, 1e-6);
        assert!((s.m - 8.0 * PI / 3.0 * 1e-18).abs() < 1e-30);
        assert_eq!(s.delta, s.eta);
    }

    #[test]
    fn shell_init_natural_state() {
        let spec = MaterialSpec::seth(1.0, 1.0).unwrap();
        let s = shell_init(&spec, 1.0, 1.0, 0.0).unwrap();
        assert!((s.delta - 1.0).abs() < 1e-14);
        assert!((s.eta - 1.0).abs() < 1e-14);
    }

    #[test]
    fn shell_init_at_minimum_radius() {
        let spec = MaterialSpec::seth(1.0, 1.0).unwrap();
        let r0 = (2.0f64 / 5.0).sqrt();
        let s = shell_init(&spec, 1.0, r0, 0.0).unwrap();
        assert!((s.eta - 2.5f64.powf(1.5)).abs() < 1e-12);
        assert!(s.delta.abs() < 1e-6);
    }

    #[test]
    fn shell_init_rootfind_matches_closed_form() {
        // bracketed root-finding on the Seth constitutive, bypassing the
        // closed form, must agree with it
        let spec = MaterialSpec::seth(1.0, 1.0).unwrap();
        let eta0 = (1.0f64 / 0.8).powi(3);
        let want = zero_pressure_delta_seth(spec.lame(), eta0).unwrap();
        let got = brent(
            |d| spec.p_rad(d, eta0),
            1e-6,
            10.0,
            BrentControls::default(),
        )
        .unwrap();
        assert!((got - want).abs() < 1e-10);
    }

    #[test]
    fn ball_integration_finds_pressure_zero() {
        let spec = MaterialSpec::seth(1.0, 1.0).unwrap();
        let theta = theta_len(1.0, 1.0, 1.0);
        let init = center_init(1.0, 2.0, 1e-6 / theta);
        let controls = IntegrationControls {
            r_stop: 1e3 / theta,
            ..Default::default()
        };
        let profile = integrate(&spec, 1.0, init, &controls).unwrap();
        let Termination::PressureZero { r_exact } = profile.termination else {
            panic!("expected a pressure zero, got {:?}", profile.termination);
        };
        let last = profile.last();
        assert!((last.r - r_exact).abs() < 1e-14 * r_exact);
        // existence bounds: sqrt(2/5) (3M/4π)^{1/3} < r1 < (3M/4π)^{1/3}
        let m_cbrt = (3.0 * last.m / (4.0 * PI)).powf(1.0 / 3.0);
        assert!((2.0f64 / 5.0).sqrt() * m_cbrt < r_exact && r_exact < m_cbrt);
        assert!(last.delta > 0.0);
    }

    #[test]
    fn integration_tracks_self_similar_solution() {
        let (lambda, mu, k) = (1.0, 1.0, 1.0);
        let spec = MaterialSpec::seth(lambda, mu).unwrap();
        let r0 = 0.1;
        let exact0 = self_similar(spec.lame(), k, r0).unwrap();
        let init = EquilibriumState::new(r0, exact0.delta, exact0.eta, exact0.m);
        let controls = IntegrationControls {
            r_stop: 10.0,
            detect_pressure_zero: false,
            ..Default::default()
        };
        let profile = integrate(&spec, k, init, &controls).unwrap();
        for probe in [0.5, 1.0, 3.0, 10.0] {
            let got = profile.eval(probe).unwrap();
            let want = self_similar(spec.lame(), k, probe).unwrap();
            assert!(
                (got.delta - want.delta).abs() < 1e-8 * want.delta,
                "delta at r = {probe}: {} vs {}",
                got.delta,
                want.delta
            );
            assert!((got.eta - want.eta).abs() < 1e-8 * want.eta);
            assert!((got.m - want.m).abs() < 1e-8 * want.m);
        }
    }

    #[test]
    fn mass_eta_consistency_along_profile() {
        // r³η - 3(m - m0)/(4πK) must stay equal to its initial value
        let spec = MaterialSpec::seth(1.0, 1.0).unwrap();
        let theta = theta_len(1.0, 1.0, 1.0);
        let init = center_init(1.0, 2.0, 1e-6 / theta);
        let controls = IntegrationControls {
            r_stop: 1e3 / theta,
            ..Default::default()
        };
        let profile = integrate(&spec, 1.0, init, &controls).unwrap();
        let c0 = init.r.powi(3) * init.eta - 3.0 * init.m / (4.0 * PI);
        for s in &profile.samples {
            let c = s.r.powi(3) * s.eta - 3.0 * s.m / (4.0 * PI);
            let scale = s.r.powi(3) * s.eta;
            assert!((c - c0).abs() < 1e-9 * scale.max(1.0), "at r = {}", s.r);
        }
    }

    #[test]
    fn tolerance_halving_reproduces_boundary() {
        let spec = MaterialSpec::seth(1.0, 1.0).unwrap();
        let theta = theta_len(1.0, 1.0, 1.0);
        let init = center_init(1.0, 2.0, 1e-6 / theta);
        let coarse = IntegrationControls {
            r_stop: 1e3 / theta,
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            ..Default::default()
        };
        let fine = IntegrationControls {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            ..coarse
        };
        let r1a = match integrate(&spec, 1.0, init, &coarse).unwrap().termination {
            Termination::PressureZero { r_exact } => r_exact,
            t => panic!("{t:?}"),
        };
        let r1b = match integrate(&spec, 1.0, init, &fine).unwrap().termination {
            Termination::PressureZero { r_exact } => r_exact,
            t => panic!("{t:?}"),
        };
        assert!((r1a - r1b).abs() < 1e-8 * r1b);
    }
}
