//! Constructors for balls, shells and recursively assembled multi-body
//! matter distributions, plus a verifier for the defining conditions of a
//! static distribution.
//!
//! A Seth ball with central density `ρ_c` exists exactly when `ρ_c > K`;
//! its boundary radius obeys
//!
//! ```text
//! √(2λ/(3λ+2μ)) (3M/4πK)^{1/3} < r1 < (3M/4πK)^{1/3},   M < (4π/3) ρ_c r1³
//! ```
//!
//! A Seth shell with reference parameters `(K, S)` and inner radius `r0`
//! exists exactly when `r_min ≤ r0 < S` with `r_min = √(2λ/(3λ+2μ)) S`, and
//! its outer radius obeys the same bounds with `3M/4πK` replaced by
//! `S³ + 3M/4πK`. Shells can be added around an existing distribution
//! whenever `r_min` clears the current outer radius and the boundary
//! pressure derivative `F(r0)` is nonnegative.

use std::f64::consts::PI;

use crate::equilibrium::{
    center_init, integrate, rhs_general, shell_init, theta_len, EquilibriumState,
    IntegrationControls, SolutionProfile, Termination,
};
use crate::error::Error;
use crate::materials::{zero_pressure_delta_seth, LameCoefficients, MaterialSpec};
use crate::rootfind::{brent, BrentControls};
use crate::seth::boundary_pressure_derivative;
use crate::Result;

/// One connected matter component.
#[derive(Debug, Clone)]
pub struct Body {
    pub material: MaterialSpec,
    pub k: f64,
    /// Reference inner radius; `None` for balls.
    pub s: Option<f64>,
    pub r_start: f64,
    pub r_end: f64,
    pub profile: SolutionProfile,
    pub total_mass: f64,
}

/// Core type of a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreKind {
    /// Innermost body is a ball with positive central pressure.
    NonVacuumCore,
    /// Innermost body is a shell: `r_0 > 0` with `p_rad(r_0) = 0`.
    VacuumCore,
}

/// An ordered collection of non-overlapping bodies.
#[derive(Debug, Clone)]
pub struct MatterDistribution {
    pub bodies: Vec<Body>,
    pub core: CoreKind,
}

impl MatterDistribution {
    pub fn from_ball(ball: Body) -> Self {
        Self {
            bodies: vec![ball],
            core: CoreKind::NonVacuumCore,
        }
    }

    pub fn from_shell(shell: Body) -> Self {
        Self {
            bodies: vec![shell],
            core: CoreKind::VacuumCore,
        }
    }

    /// The interface radii `r_0 < r_1 < … < r_{2n-1}` (body supports are
    /// `[r_{2j-2}, r_{2j-1}]`).
    pub fn interface_radii(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.bodies.len());
        for b in &self.bodies {
            out.push(b.r_start);
            out.push(b.r_end);
        }
        out
    }

    pub fn outer_radius(&self) -> f64 {
        self.bodies.last().map(|b| b.r_end).unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.bodies.iter().map(|b| b.total_mass).sum()
    }
}

/// Minimal admissible shell inner radius `r_min = √(2λ/(3λ+2μ)) S`.
pub fn r_min(lame: LameCoefficients, s: f64) -> Result<f64> {
    if !(lame.lambda > 0.0) {
        return Err(Error::Domain(format!(
            "shell admissibility needs lambda > 0, got {}",
            lame.lambda
        )));
    }
    Ok((2.0 * lame.lambda / (3.0 * lame.lambda + 2.0 * lame.mu)).sqrt() * s)
}

fn default_controls(spec: &MaterialSpec, k: f64, controls: &IntegrationControls) -> IntegrationControls {
    let mut c = *controls;
    if !c.r_stop.is_finite() {
        c.r_stop = 1e3 / theta_len(spec.lame().lambda, spec.lame().mu, k);
    }
    c.detect_pressure_zero = true;
    c
}

fn finish_body(
    spec: &MaterialSpec,
    k: f64,
    s: Option<f64>,
    r_start: f64,
    profile: SolutionProfile,
    controls: &IntegrationControls,
) -> Result<Body> {
    match profile.termination {
        Termination::PressureZero { r_exact } => {
            let last = *profile.last();
            let m_start = profile.samples.first().map(|q| q.m).unwrap_or(0.0);
            let mut profile = profile;
            profile.s_ref = s;
            Ok(Body {
                material: spec.clone(),
                k,
                s,
                r_start,
                r_end: r_exact,
                total_mass: last.m - if s.is_some() { m_start } else { 0.0 },
                profile,
            })
        }
        Termination::RadiusCutoff => Err(Error::NoBoundaryFound {
            r_stop: controls.r_stop,
        }),
        _ => unreachable!("guard terminations are returned as errors"),
    }
}

/// Build a ball with central density `rho_c`. Requires positive central
/// pressure; for Seth matter this is exactly `rho_c > K`.
pub fn build_ball(
    spec: &MaterialSpec,
    k: f64,
    rho_c: f64,
    controls: &IntegrationControls,
) -> Result<Body> {
    if !(rho_c > 0.0) || !(k > 0.0) {
        return Err(Error::Domain(format!(
            "build_ball requires rho_c, K > 0, got ({rho_c}, {k})"
        )));
    }
    let delta_c = rho_c / k;
    let p_c = spec.p_rad(delta_c, delta_c)?;
    if !(p_c > 0.0) {
        return Err(Error::NoEquilibrium(format!(
            "central pressure {p_c} is not positive at rho_c/K = {delta_c}; \
             a ball requires rho_c > K"
        )));
    }
    let controls = default_controls(spec, k, controls);
    let lame = spec.lame();
    let r_eps = 1e-6 / theta_len(lame.lambda, lame.mu, k);
    let init = center_init(k, delta_c, r_eps);
    let profile = integrate(spec, k, init, &controls)?;
    let body = finish_body(spec, k, None, 0.0, profile, &controls)?;
    let last = *body.profile.last();
    if !(last.delta > 0.0) {
        return Err(Error::BoundViolation(format!(
            "boundary density {} is not positive",
            last.delta
        )));
    }
    if spec.family() == crate::materials::MaterialFamily::Seth {
        let m_cbrt = (3.0 * body.total_mass / (4.0 * PI * k)).powf(1.0 / 3.0);
        let lo = (2.0 * lame.lambda / (3.0 * lame.lambda + 2.0 * lame.mu)).sqrt() * m_cbrt;
        let r1 = body.r_end;
        if !(lo < r1 && r1 < m_cbrt && body.total_mass < 4.0 * PI / 3.0 * rho_c * r1.powi(3)) {
            return Err(Error::BoundViolation(format!(
                "ball bounds violated: {lo} < {r1} < {m_cbrt}, M = {}",
                body.total_mass
            )));
        }
    }
    Ok(body)
}

/// Build a vacuum-core shell with reference parameters `(K, S)` and inner
/// radius `r0 ∈ [r_min, S)`.
pub fn build_inner_shell(
    lame: LameCoefficients,
    k: f64,
    s: f64,
    r0: f64,
    controls: &IntegrationControls,
) -> Result<Body> {
    let spec = MaterialSpec::seth(lame.lambda, lame.mu)?;
    build_shell_around(&spec, k, s, r0, 0.0, 0.0, controls)
}

/// Vacuum-core shell for an arbitrary material family.
pub fn build_shell(
    spec: &MaterialSpec,
    k: f64,
    s: f64,
    r0: f64,
    controls: &IntegrationControls,
) -> Result<Body> {
    build_shell_around(spec, k, s, r0, 0.0, 0.0, controls)
}

fn build_shell_around(
    spec: &MaterialSpec,
    k: f64,
    s: f64,
    r0: f64,
    m_interior: f64,
    r_interior: f64,
    controls: &IntegrationControls,
) -> Result<Body> {
    let lame = spec.lame();
    let rmin = r_min(lame, s)?;
    let pad = 1e-12 * s;
    if !(r0 >= rmin - pad && r0 < s) || rmin <= r_interior {
        return Err(Error::InadmissibleInnerRadius { r0, r_min: rmin, s });
    }
    let init = shell_init(spec, s, r0, m_interior)?;
    if m_interior > 0.0 {
        let f = boundary_pressure_derivative(lame, k, &init);
        if f < 0.0 {
            return Err(Error::NegativeBoundaryDerivative { r0, f });
        }
    }
    let controls = default_controls(spec, k, controls);
    let profile = integrate(spec, k, init, &controls)?;
    let body = finish_body(spec, k, Some(s), r0, profile, &controls)?;
    // outer-radius bounds with S³ + 3M/4πK in place of 3M/4πK
    let base = (s.powi(3) + 3.0 * body.total_mass / (4.0 * PI * k)).powf(1.0 / 3.0);
    let lo = (2.0 * lame.lambda / (3.0 * lame.lambda + 2.0 * lame.mu)).sqrt() * base;
    let r1 = body.r_end;
    let upper_ok = m_interior > 0.0 || r1 < base;
    if !(lo < r1 && upper_ok) {
        return Err(Error::BoundViolation(format!(
            "shell bounds violated: {lo} < {r1} (base {base})"
        )));
    }
    Ok(body)
}

/// Add a shell of Seth matter around an existing distribution. The new
/// shell's `r_min` must clear the current outer radius, `r0` must lie in
/// `[r_min, S)` and the boundary pressure derivative must be nonnegative.
pub fn add_shell(
    dist: &MatterDistribution,
    lame: LameCoefficients,
    k: f64,
    s: f64,
    r0: f64,
    controls: &IntegrationControls,
) -> Result<MatterDistribution> {
    let spec = MaterialSpec::seth(lame.lambda, lame.mu)?;
    let body = build_shell_around(
        &spec,
        k,
        s,
        r0,
        dist.total_mass(),
        dist.outer_radius(),
        controls,
    )?;
    let mut out = dist.clone();
    out.bodies.push(body);
    Ok(out)
}

/// Largest admissible inner radius for a shell of parameters `(K, S)`
/// around interior mass `M_interior`: the first zero of `F` on
/// `[r_min, S)`, or `S` when `F` stays positive.
pub fn r_max_scan(
    lame: LameCoefficients,
    k: f64,
    s: f64,
    m_interior: f64,
    grid_n: usize,
) -> Result<f64> {
    let grid_n = grid_n.max(100);
    let rmin = r_min(lame, s)?;
    let f_at = |r: f64| -> Result<f64> {
        let eta = (s / r).powi(3);
        let delta = zero_pressure_delta_seth(lame, eta)?;
        Ok(boundary_pressure_derivative(
            lame,
            k,
            &EquilibriumState::new(r, delta, eta, m_interior),
        ))
    };
    let f_min = f_at(rmin)?;
    if !(f_min > 0.0) {
        return Err(Error::BoundViolation(format!(
            "F(r_min) = {f_min} is not positive at r_min = {rmin}"
        )));
    }
    let hi = s * (1.0 - 1e-12);
    let mut prev_r = rmin;
    let mut prev_f = f_min;
    for i in 1..=grid_n {
        let r = rmin + (hi - rmin) * i as f64 / grid_n as f64;
        let f = f_at(r)?;
        if prev_f > 0.0 && f <= 0.0 {
            return brent(
                f_at,
                prev_r,
                r,
                BrentControls {
                    x_abs_tol: 0.0,
                    x_rel_tol: 1e-12,
                    max_iter: 200,
                },
            );
        }
        prev_r = r;
        prev_f = f;
    }
    Ok(s)
}

/// Outcome of [`verify_distribution`]: one flag and residual per defining
/// condition of a static matter distribution.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// Supports ordered and pairwise disjoint.
    pub support_ordering: bool,
    /// Largest relative hydrostatic residual sampled inside the bodies.
    pub ode_residual_max: f64,
    pub ode_ok: bool,
    /// Both pressures strictly positive inside every support.
    pub pressures_positive: bool,
    /// Largest `|p_rad|/p0` at the required interface radii.
    pub interface_residual_max: f64,
    pub interface_ok: bool,
    /// Center condition: isotropy at the center (non-vacuum core) or
    /// `r_0 > 0` with `p_rad(r_0) = 0` (vacuum core).
    pub center_ok: bool,
    /// Fields vanish outside the support closure (vacuum gaps carry no
    /// profile data).
    pub exterior_ok: bool,
    /// `|Σ M_j - m(r_{2n-1})| / M`.
    pub mass_additivity_rel: f64,
    pub mass_ok: bool,
    pub pass: bool,
}

/// Check the defining conditions of a static matter distribution on a
/// constructed value: support ordering, the hydrostatic equation inside
/// each body, strict interior pressure positivity, interface pressure
/// zeros, the core condition and mass additivity.
pub fn verify_distribution(dist: &MatterDistribution, tol: f64) -> Result<VerificationReport> {
    if dist.bodies.is_empty() {
        return Err(Error::Domain("empty distribution".into()));
    }
    let mut support_ordering = true;
    let mut prev_end = 0.0;
    for (j, b) in dist.bodies.iter().enumerate() {
        if b.r_start >= b.r_end || (j > 0 && b.r_start <= prev_end) {
            support_ordering = false;
        }
        prev_end = b.r_end;
    }

    let mut ode_residual_max: f64 = 0.0;
    let mut pressures_positive = true;
    let mut interface_residual_max: f64 = 0.0;
    for b in &dist.bodies {
        let spec = &b.material;
        let p0 = spec.p0();
        let lo = b.profile.r_start();
        let hi = b.profile.r_end();
        let span = hi - lo;
        let p_rad_at = |r: f64| -> Result<f64> {
            let s = b.profile.eval(r)?;
            spec.p_rad(s.delta, s.eta)
        };
        // momentum balance in integral form between consecutive checkpoints:
        // p_rad(b) - p_rad(a) = ∫ [-(2/r)(p_rad - p_tan) - K δ m / r²] dr.
        // The integral form stays accurate through the sqrt-type inner edge
        // of shells, where the pressure gradient diverges.
        // checkpoints snap to actual accepted samples, where the dense
        // interpolant is nodally exact
        let snap = |target: f64| -> f64 {
            let idx = b.profile.samples.partition_point(|q| q.r < target);
            let lo_s = b.profile.samples[idx.saturating_sub(1)].r;
            let hi_s = b.profile.samples[idx.min(b.profile.samples.len() - 1)].r;
            if (target - lo_s).abs() <= (hi_s - target).abs() { lo_s } else { hi_s }
        };
        let mut prev_r = lo;
        for i in 1..=50 {
            let r = if i == 50 { hi } else { snap(lo + span * i as f64 / 50.0) };
            if r <= prev_r {
                continue;
            }
            let s = b.profile.eval(r)?;
            let p_rad = spec.p_rad(s.delta, s.eta)?;
            let p_tan = spec.p_tan(s.delta, s.eta)?;
            if i > 1 && i < 49 && (p_rad <= 0.0 || p_tan <= 0.0) {
                pressures_positive = false;
            }
            let integral = momentum_flux_integral(b, prev_r, r)?;
            let dp = p_rad_at(r)? - p_rad_at(prev_r)?;
            let scale = p0.max(dp.abs()).max(integral.abs());
            ode_residual_max = ode_residual_max.max((dp - integral).abs() / scale);
            prev_r = r;
        }
        let last = b.profile.last();
        interface_residual_max = interface_residual_max
            .max(spec.p_rad(last.delta, last.eta)?.abs() / p0);
        if b.s.is_some() {
            let first = b.profile.samples[0];
            interface_residual_max = interface_residual_max
                .max(spec.p_rad(first.delta, first.eta)?.abs() / p0);
        }
    }

    let center_ok = match dist.core {
        CoreKind::NonVacuumCore => {
            let b = &dist.bodies[0];
            let first = b.profile.samples[0];
            let iso = (b.material.p_rad(first.delta, first.eta)?
                - b.material.p_tan(first.delta, first.eta)?)
            .abs();
            iso <= tol * b.material.p0()
        }
        CoreKind::VacuumCore => {
            let b = &dist.bodies[0];
            let first = b.profile.samples[0];
            b.r_start > 0.0
                && b.material.p_rad(first.delta, first.eta)?.abs() <= 1e-10 * b.material.p0()
        }
    };

    // vacuum gaps carry no samples; each body's profile must stay inside
    // its own support
    let mut exterior_ok = true;
    for b in &dist.bodies {
        let pad = 1e-9 * b.r_end;
        if b.profile.r_start() < b.r_start - pad || b.profile.r_end() > b.r_end + pad {
            exterior_ok = false;
        }
    }

    let m_outer = dist.bodies.last().map(|b| b.profile.last().m).unwrap_or(0.0);
    let total = dist.total_mass();
    let mass_additivity_rel = (total - m_outer).abs() / total.max(f64::MIN_POSITIVE);

    let ode_ok = ode_residual_max <= tol;
    let interface_ok = interface_residual_max <= 1e-10;
    let mass_ok = mass_additivity_rel <= 1e-12;
    let pass = support_ordering
        && ode_ok
        && pressures_positive
        && interface_ok
        && center_ok
        && exterior_ok
        && mass_ok;
    Ok(VerificationReport {
        support_ordering,
        ode_residual_max,
        ode_ok,
        pressures_positive,
        interface_residual_max,
        interface_ok,
        center_ok,
        exterior_ok,
        mass_additivity_rel,
        mass_ok,
        pass,
    })
}

/// Hydrostatic residual helper used in tests: relative defect of the
/// momentum equation at one interior state.
fn momentum_flux_integral(b: &Body, ra: f64, rb: f64) -> Result<f64> {
    let spec = &b.material;
    let f = |r: f64| -> Result<f64> {
        let s = b.profile.eval(r)?;
        let p_rad = spec.p_rad(s.delta, s.eta)?;
        let p_tan = spec.p_tan(s.delta, s.eta)?;
        Ok(-2.0 / r * (p_rad - p_tan) - b.k * s.delta * s.m / (r * r))
    };
    let mut total = 0.0;
    for seg in &b.profile.dense {
        let s0 = seg.r0.max(ra);
        let s1 = (seg.r0 + seg.h).min(rb);
        if s1 <= s0 {
            continue;
        }
        // composite Simpson per dense segment overlap
        let n = 4;
        let h = (s1 - s0) / n as f64;
        for j in 0..n {
            let a = s0 + j as f64 * h;
            total += h / 6.0 * (f(a)? + 4.0 * f(a + 0.5 * h)? + f(a + h)?);
        }
    }
    Ok(total)
}

pub fn hydrostatic_residual(spec: &MaterialSpec, k: f64, state: &EquilibriumState) -> Result<f64> {
    let f = rhs_general(spec, k, state)?;
    let dpdd = spec.dp_rad_ddelta(state.delta, state.eta)?;
    let dpde = spec.dp_rad_deta(state.delta, state.eta)?;
    let lhs = dpdd * f[0] + dpde * f[1];
    let p_rad = spec.p_rad(state.delta, state.eta)?;
    let p_tan = spec.p_tan(state.delta, state.eta)?;
    let rhs = -2.0 / state.r * (p_rad - p_tan) - k * state.delta * state.m / (state.r * state.r);
    Ok((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1e-300))
}
