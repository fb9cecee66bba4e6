//! Variational and Lagrangian cross-checks for computed profiles.
//!
//! For hyperelastic materials the equilibrium is a stationary point of
//!
//! ```text
//! E[ρ] = ∫ δ w(δ, η) r² dr - (1/8π) ∫ (m/r²)² r² dr
//! ```
//!
//! and the first variation against a density perturbation `φ` is
//!
//! ```text
//! dE/dτ = ∫ [∂_ρ(ρΨ) + Λ₀ + V₀ - μ] φ r² dr
//! ∂_ρ(ρΨ) = (w + p_rad/δ)/K
//! Λ₀(s)   = ∫_s^{r1} 2 (p_tan - p_rad) / (K η) dr/r
//! V₀(s)   = -∫_s^{r1} m/r² dr - M/r1
//! μ       = w(δ₁, η₁)/K - M/r1
//! ```
//!
//! where the exterior tail of the potential is closed in exact form since
//! `m ≡ M` outside the body. The equilibrium is stationary at fixed total
//! mass; along an equilibrium the bracket equals the constant boundary
//! chemical potential `μ`, so the variation reported here is that of the
//! constrained functional `E - μM` and vanishes on equilibria for every
//! perturbation, mass preserving or not. The Lagrangian reconstruction recovers the
//! reference radial coordinate `R(r) = r η^{1/3}`, which must be strictly
//! increasing with `dR/dr = δ r² / R²`.

use crate::equilibrium::SolutionProfile;
use crate::error::Error;
use crate::materials::MaterialSpec;
use crate::Result;

/// Smooth compactly supported density perturbation
/// `φ(r) = amplitude · (1 - s²)⁴` with `s = (r - center)/width`.
#[derive(Debug, Clone, Copy)]
pub struct BumpFunction {
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
}

impl BumpFunction {
    pub fn eval(&self, r: f64) -> f64 {
        let s = (r - self.center) / self.width;
        if s.abs() >= 1.0 {
            return 0.0;
        }
        self.amplitude * (1.0 - s * s).powi(4)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.width, self.center + self.width)
    }
}

/// Energy value with a grid-halving error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Energy {
    pub value: f64,
    /// `|E_n - E_{n/2}| / 15`, the Richardson estimate of the quadrature
    /// error at the finer grid.
    pub error_estimate: f64,
}

/// Composite Simpson on `n` (even) uniform subintervals.
fn simpson<F>(mut f: F, lo: f64, hi: f64, n: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let n = n.max(2) + n % 2;
    let h = (hi - lo) / n as f64;
    let mut sum = f(lo)? + f(hi)?;
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(lo + h * i as f64)?;
    }
    Ok(sum * h / 3.0)
}

/// Energy of the profile's density field, optionally perturbed by `τ φ`.
/// The perturbation shifts `δ` pointwise and consistently rebuilds `η` and
/// `m` from the perturbed density.
fn energy_at(
    spec: &MaterialSpec,
    k: f64,
    profile: &SolutionProfile,
    bump: Option<(&BumpFunction, f64)>,
    n: usize,
) -> Result<f64> {
    let lo = profile.r_start();
    let hi = profile.r_end();
    let n = n.max(2) + n % 2;
    let h = (hi - lo) / n as f64;
    // cumulative ∫ φ s² ds on the quadrature grid (trapezoid), used to
    // shift m and η consistently with the density perturbation
    let mut q = vec![0.0; n + 1];
    if let Some((bump, _)) = bump {
        let mut prev = bump.eval(lo) * lo * lo;
        for (i, qi) in q.iter_mut().enumerate().skip(1) {
            let r = lo + h * i as f64;
            let cur = bump.eval(r) * r * r;
            *qi = (prev + cur) * h / 2.0;
            prev = cur;
        }
        for i in 1..=n {
            q[i] += q[i - 1];
        }
    }
    let mut sum = 0.0;
    for i in 0..=n {
        let r = lo + h * i as f64;
        let s = profile.eval(r)?;
        let (mut delta, mut eta, mut m) = (s.delta, s.eta, s.m);
        if let Some((bump, tau)) = bump {
            delta += tau * bump.eval(r) / k;
            m += 4.0 * std::f64::consts::PI * tau * q[i];
            if r > 0.0 {
                eta += 3.0 * tau * q[i] / (k * r.powi(3));
            }
        }
        let internal = if delta == 0.0 {
            0.0
        } else {
            delta * spec.stored_energy(delta, eta)?
        };
        let grav = if r > 0.0 {
            (m / (r * r)).powi(2) / (8.0 * std::f64::consts::PI)
        } else {
            0.0
        };
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        sum += w * (internal - grav) * r * r;
    }
    // exterior field energy: m ≡ M beyond the boundary, so the tail of the
    // gravitational integral closes to M²/(8π r1)
    let m_end = profile.eval(hi)?.m
        + bump.map_or(0.0, |(_, tau)| 4.0 * std::f64::consts::PI * tau * q[n]);
    Ok(sum * h / 3.0 - m_end * m_end / (8.0 * std::f64::consts::PI * hi))
}

/// Energy functional of a hyperelastic profile with grid-halving error
/// control; `n` is the Simpson subinterval count at the fine grid.
pub fn energy_functional(
    spec: &MaterialSpec,
    k: f64,
    profile: &SolutionProfile,
    n: usize,
) -> Result<Energy> {
    let fine = energy_at(spec, k, profile, None, n)?;
    let coarse = energy_at(spec, k, profile, None, n / 2)?;
    let error_estimate = (fine - coarse).abs() / 15.0;
    if !fine.is_finite() {
        return Err(Error::QuadratureNotConverged {
            estimate: f64::NAN,
            target: 0.0,
        });
    }
    Ok(Energy {
        value: fine,
        error_estimate,
    })
}

/// First variation `dE/dτ` evaluated directly from the stationarity
/// integrand. `n` controls both the tail-integral grid and the product
/// quadrature.
pub fn first_variation(
    spec: &MaterialSpec,
    k: f64,
    profile: &SolutionProfile,
    bump: &BumpFunction,
    n: usize,
) -> Result<f64> {
    let lo = profile.r_start();
    let hi = profile.r_end();
    let total_mass = profile.last().m;
    let (blo, bhi) = bump.support();
    if bhi <= lo || blo >= hi {
        return Ok(0.0);
    }
    let n = n.max(16) + n % 2;
    // tail integrals Λ₀ and V₀ accumulated from the boundary inward on a
    // uniform grid, then sampled by linear interpolation
    let h = (hi - lo) / n as f64;
    let mut lam = vec![0.0; n + 1];
    let mut v0 = vec![0.0; n + 1];
    let lam_integrand = |r: f64| -> Result<f64> {
        let s = profile.eval(r)?;
        let p_rad = spec.p_rad(s.delta, s.eta)?;
        let p_tan = spec.p_tan(s.delta, s.eta)?;
        Ok(2.0 * (p_tan - p_rad) / (k * s.eta * r))
    };
    let mut lam_prev = lam_integrand(hi)?;
    let mut v_prev = {
        let s = profile.eval(hi)?;
        s.m / (hi * hi)
    };
    for i in (0..n).rev() {
        let r = lo + h * i as f64;
        let lam_cur = lam_integrand(r)?;
        lam[i] = lam[i + 1] + (lam_cur + lam_prev) * h / 2.0;
        lam_prev = lam_cur;
        let s = profile.eval(r)?;
        let v_cur = s.m / (r * r);
        v0[i] = v0[i + 1] + (v_cur + v_prev) * h / 2.0;
        v_prev = v_cur;
    }
    let at = |grid: &[f64], r: f64| -> f64 {
        let t = ((r - lo) / h).clamp(0.0, n as f64);
        let i = (t as usize).min(n - 1);
        let f = t - i as f64;
        grid[i] * (1.0 - f) + grid[i + 1] * f
    };
    let mu = chemical_potential(spec, k, profile)?;
    let integrand = |r: f64| -> Result<f64> {
        let s = profile.eval(r)?;
        if s.delta <= 0.0 {
            return Ok(0.0);
        }
        let w = spec.stored_energy(s.delta, s.eta)?;
        let p_rad = spec.p_rad(s.delta, s.eta)?;
        let drho = (w + p_rad / s.delta) / k;
        let val = drho + at(&lam, r) + (-at(&v0, r) - total_mass / hi) - mu;
        Ok(val * bump.eval(r) * r * r)
    };
    simpson(integrand, blo.max(lo), bhi.min(hi), n)
}

/// Boundary chemical potential `μ = w(δ₁, η₁)/K - M/r1`, the constant value
/// of the stationarity bracket along an equilibrium.
pub fn chemical_potential(spec: &MaterialSpec, k: f64, profile: &SolutionProfile) -> Result<f64> {
    let s1 = profile.last();
    Ok(spec.stored_energy(s1.delta, s1.eta)? / k - s1.m / profile.r_end())
}

/// First variation by central finite differences of `E - μM` in `τ`; the
/// independent oracle for [`first_variation`]. The mass shift of the bump
/// is linear in `τ` and subtracted exactly.
pub fn first_variation_fd(
    spec: &MaterialSpec,
    k: f64,
    profile: &SolutionProfile,
    bump: &BumpFunction,
    tau: f64,
    n: usize,
) -> Result<f64> {
    let plus = energy_at(spec, k, profile, Some((bump, tau)), n)?;
    let minus = energy_at(spec, k, profile, Some((bump, -tau)), n)?;
    let mu = chemical_potential(spec, k, profile)?;
    let (blo, bhi) = bump.support();
    let lo = profile.r_start();
    let hi = profile.r_end();
    // mass shift in the same r²dr convention as the energy integral
    let dm_dtau = if bhi <= lo || blo >= hi {
        0.0
    } else {
        simpson(|r: f64| Ok(bump.eval(r) * r * r), blo.max(lo), bhi.min(hi), n)?
    };
    Ok((plus - minus) / (2.0 * tau) - mu * dm_dtau)
}

/// Result of the reference-radius reconstruction.
#[derive(Debug, Clone)]
pub struct ReferenceRadius {
    /// `(r, R)` pairs at the accepted samples.
    pub table: Vec<(f64, f64)>,
    /// Largest relative defect of `dR/dr = δ r²/R²` at interior samples.
    pub max_residual: f64,
}

/// Reconstruct the reference radial coordinate `R(r) = r η^{1/3}` along a
/// profile, checking strict monotonicity and the Lagrangian derivative
/// identity by central differences on the dense output.
pub fn reconstruct_reference_radius(profile: &SolutionProfile) -> Result<ReferenceRadius> {
    let table: Vec<(f64, f64)> = profile
        .samples
        .iter()
        .map(|s| (s.r, s.r * s.eta.powf(1.0 / 3.0)))
        .collect();
    // dR/dr vanishes where the density does, so consecutive samples near a
    // degenerate inner edge may stall within rounding; only a genuine dip fails
    for w in table.windows(2) {
        if w[1].1 < w[0].1 * (1.0 - 1e-13) {
            return Err(Error::MonotonicityViolation { r: w[1].0 });
        }
    }
    if table.len() > 1 && table[table.len() - 1].1 <= table[0].1 {
        return Err(Error::MonotonicityViolation {
            r: table[table.len() - 1].0,
        });
    }
    let lo = profile.r_start();
    let hi = profile.r_end();
    let span = hi - lo;
    let r_of = |r: f64| -> Result<f64> {
        let s = profile.eval(r)?;
        Ok(r * s.eta.powf(1.0 / 3.0))
    };
    let mut max_residual: f64 = 0.0;
    for s in &profile.samples {
        // shrink the step toward the edges: a degenerate inner boundary
        // makes the solution a half power of r - r0 there
        let h = (1e-5 * span).min(0.05 * (s.r - lo)).min(0.05 * (hi - s.r));
        if h < 1e-7 * span {
            continue;
        }
        let fd = (-r_of(s.r + 2.0 * h)? + 8.0 * r_of(s.r + h)? - 8.0 * r_of(s.r - h)?
            + r_of(s.r - 2.0 * h)?)
            / (12.0 * h);
        let big_r = s.r * s.eta.powf(1.0 / 3.0);
        let want = s.delta * s.r * s.r / (big_r * big_r);
        max_residual = max_residual.max((fd - want).abs() / want.abs().max(1.0));
    }
    Ok(ReferenceRadius {
        table,
        max_residual,
    })
}
