//! Closed-form analysis of Seth matter: the self-similar solution, the
//! autonomous system's fixed points and large-radius asymptotics.
//!
//! In the variables `x = ϑ η^{2/3}`, `y = δ/η`, `z = 3m/(4πKr³η)` with
//! `ϑ = K √(4π/(3(λ+2μ)))` the Seth equilibrium system becomes autonomous
//! after setting `u = r x` and rescaling the independent variable by
//! `d/dξ = r y d/dr`:
//!
//! ```text
//! du/dξ = -u (1 - 2y) y
//! dy/dξ = (a + by + y²)(1 - y) - u² y z
//! dz/dξ = 3y² (1 - z)
//! ```
//!
//! with `a = 2(λ+μ)/(λ+2μ)`, `b = 2μ/(λ+2μ)`. Its physical fixed points are
//! a spiral sink `P = (u_P, 1/2, 1)`, `u_P = √(1+4a+2b)/2`, describing the
//! large-radius attractor, and a saddle `Q = (0, 1, 1)` containing the
//! natural state. The sink corresponds to an exact power-law solution
//!
//! ```text
//! δ* = (c/K) r^{-3/2},  η* = 2δ*,  m* = (8πc/3) r^{3/2}
//! c = (3/π)^{3/4} (9λ+14μ)^{3/4} / (16 √K)
//! ```
//!
//! whose radial pressure vanishes at `R* = (9λ+2μ)/(12λ+8μ) · (2c/K)^{2/3}`.

use std::f64::consts::PI;

use crate::equilibrium::{
    material_constants_ab, rhs_autonomous, theta_len, EquilibriumState, SolutionProfile,
};
use crate::error::Error;
use crate::materials::{LameCoefficients, MaterialSpec};
use crate::Result;

/// The exact self-similar state at radius `r`, with both pressures.
#[derive(Debug, Clone, Copy)]
pub struct SelfSimilarState {
    pub r: f64,
    pub delta: f64,
    pub eta: f64,
    pub m: f64,
    pub p_rad: f64,
    pub p_tan: f64,
}

/// Self-similar amplitude `c`.
pub fn self_similar_amplitude(lame: LameCoefficients, k: f64) -> f64 {
    (3.0 / PI).powf(0.75) * (9.0 * lame.lambda + 14.0 * lame.mu).powf(0.75) / (16.0 * k.sqrt())
}

/// Evaluate the self-similar solution at radius `r` as an equilibrium state.
pub fn self_similar(lame: LameCoefficients, k: f64, r: f64) -> Result<EquilibriumState> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("self_similar requires r > 0, got {r}")));
    }
    let c = self_similar_amplitude(lame, k);
    let delta = c / k * r.powf(-1.5);
    Ok(EquilibriumState::new(r, delta, 2.0 * delta, 8.0 * PI * c / 3.0 * r.powf(1.5)))
}

/// Stability type of a hyperbolic fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPointKind {
    SpiralSink,
    Sink,
    Saddle,
}

/// A fixed point of the autonomous system with its eigenvalues
/// (real and imaginary parts).
#[derive(Debug, Clone, Copy)]
pub struct FixedPoint {
    pub u: f64,
    pub y: f64,
    pub z: f64,
    pub eigenvalues: [(f64, f64); 3],
    pub kind: FixedPointKind,
}

/// Closed-form Seth constants and analysis entry points.
#[derive(Debug, Clone)]
pub struct SethAnalysis {
    spec: MaterialSpec,
    pub k: f64,
    pub a: f64,
    pub b: f64,
    pub theta: f64,
    pub c: f64,
}

impl SethAnalysis {
    pub fn new(lambda: f64, mu: f64, k: f64) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::InvalidMaterial(format!("K must be positive, got {k}")));
        }
        let spec = MaterialSpec::seth(lambda, mu)?;
        let (a, b) = material_constants_ab(lambda, mu);
        let theta = theta_len(lambda, mu, k);
        let c = self_similar_amplitude(spec.lame(), k);
        Ok(Self { spec, k, a, b, theta, c })
    }

    pub fn spec(&self) -> &MaterialSpec {
        &self.spec
    }

    fn lame(&self) -> LameCoefficients {
        self.spec.lame()
    }

    /// `u` coordinate of the sink; equals `ϑ (2c/K)^{2/3}` on the
    /// self-similar solution.
    pub fn u_p(&self) -> f64 {
        0.5 * (1.0 + 4.0 * self.a + 2.0 * self.b).sqrt()
    }

    /// Zero-pressure radius of the self-similar solution.
    pub fn r_star(&self) -> f64 {
        let LameCoefficients { lambda, mu } = self.lame();
        (9.0 * lambda + 2.0 * mu) / (12.0 * lambda + 8.0 * mu)
            * (2.0 * self.c / self.k).powf(2.0 / 3.0)
    }

    /// Self-similar state with pressures at radius `r`.
    pub fn self_similar_state(&self, r: f64) -> Result<SelfSimilarState> {
        let s = self_similar(self.lame(), self.k, r)?;
        let LameCoefficients { lambda, mu } = self.lame();
        let p0 = self.spec.p0();
        let scale = (2.0 * self.c / self.k).powf(2.0 / 3.0) / r;
        Ok(SelfSimilarState {
            r,
            delta: s.delta,
            eta: s.eta,
            m: s.m,
            p_rad: (9.0 * lambda + 2.0 * mu) / 8.0 * scale - p0,
            p_tan: (9.0 * lambda + 8.0 * mu) / 8.0 * scale - p0,
        })
    }

    /// Both physical fixed points: the spiral sink `P` and the saddle `Q`.
    pub fn fixed_points(&self) -> (FixedPoint, FixedPoint) {
        fixed_points(self.a, self.b).expect("a, b admissible by construction")
    }
    /// Map an equilibrium state to the `(u, y, z)` coordinates.
    pub fn to_uyz(&self, s: &EquilibriumState) -> [f64; 3] {
        [
            s.r * self.theta * s.eta.powf(2.0 / 3.0),
            s.delta / s.eta,
            3.0 * s.m / (4.0 * PI * self.k * s.r.powi(3) * s.eta),
        ]
    }
}

/// Fixed points of the autonomous system for material constants
/// `a = 2(λ+μ)/(λ+2μ) ≥ 1` and `0 < b = 2μ/(λ+2μ) ≤ 1`, with closed-form
/// eigenvalues.
pub fn fixed_points(a: f64, b: f64) -> Result<(FixedPoint, FixedPoint)> {
    if !(a >= 1.0) || !(b > 0.0 && b <= 1.0) {
        return Err(Error::Domain(format!(
            "fixed_points requires a >= 1 and 0 < b <= 1, got a = {a}, b = {b}"
        )));
    }
    let u_p = 0.5 * (1.0 + 4.0 * a + 2.0 * b).sqrt();
    // planar block at P: [[0, u_P], [-u_P, T]] with T = 1/4 - 2a - b/2
    let t = 0.25 - 2.0 * a - 0.5 * b;
    let disc = t * t - 4.0 * u_p * u_p;
    let (e1, e2) = if disc >= 0.0 {
        let s = disc.sqrt();
        (((t + s) / 2.0, 0.0), ((t - s) / 2.0, 0.0))
    } else {
        let s = (-disc).sqrt();
        ((t / 2.0, s / 2.0), (t / 2.0, -s / 2.0))
    };
    let p = FixedPoint {
        u: u_p,
        y: 0.5,
        z: 1.0,
        eigenvalues: [e1, e2, (-0.75, 0.0)],
        kind: if disc < 0.0 {
            FixedPointKind::SpiralSink
        } else {
            FixedPointKind::Sink
        },
    };
    let q = FixedPoint {
        u: 0.0,
        y: 1.0,
        z: 1.0,
        eigenvalues: [(1.0, 0.0), (-(a + b + 1.0), 0.0), (-3.0, 0.0)],
        kind: FixedPointKind::Saddle,
    };
    Ok((p, q))
}

impl SethAnalysis {
    /// Residuals from the large-radius attractor at `r_probe`:
    /// `dy = |y - 1/2|`, `du = |r x - u_P|`, `dz = |z - 1|` and the relative
    /// pressure residual `dp = |p_rad + p0| / p0`. All four tend to zero as
    /// `r_probe` grows along any regular solution.
    pub fn asymptotics_check(
        &self,
        profile: &SolutionProfile,
        r_probe: f64,
    ) -> Result<AsymptoticsReport> {
        let state = profile.eval(r_probe)?;
        let [u, y, z] = self.to_uyz(&state);
        let p_rad = self.spec.p_rad(state.delta, state.eta)?;
        let p0 = self.spec.p0();
        Ok(AsymptoticsReport {
            r_probe,
            dy: (y - 0.5).abs(),
            du: (u - self.u_p()).abs(),
            dz: (z - 1.0).abs(),
            dp: (p_rad + p0).abs() / p0,
        })
    }
}

/// Outcome of [`SethAnalysis::asymptotics_check`].
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticsReport {
    pub r_probe: f64,
    pub dy: f64,
    pub du: f64,
    pub dz: f64,
    pub dp: f64,
}

/// One sampled point of an autonomous-system orbit.
#[derive(Debug, Clone, Copy)]
pub struct OrbitPoint {
    pub xi: f64,
    pub u: f64,
    pub y: f64,
    pub z: f64,
}

/// Integrate an orbit of the autonomous system from `seed = (u, y, z)` with
/// classical fixed-step Runge-Kutta, sampling `n` points up to `xi_end`.
pub fn integrate_orbit(a: f64, b: f64, seed: [f64; 3], xi_end: f64, n: usize) -> Vec<OrbitPoint> {
    let n = n.max(2);
    let mut out = Vec::with_capacity(n);
    let mut v = seed;
    let mut xi = 0.0;
    out.push(OrbitPoint { xi, u: v[0], y: v[1], z: v[2] });
    // substeps per sample keep the RK4 error well below output precision
    let sub = 32;
    let h = xi_end / ((n - 1) * sub) as f64;
    for _ in 1..n {
        for _ in 0..sub {
            let k1 = rhs_autonomous(a, b, v[0], v[1], v[2]);
            let p = |w: &[f64; 3], k: &[f64; 3], s: f64| {
                [w[0] + s * k[0], w[1] + s * k[1], w[2] + s * k[2]]
            };
            let v2 = p(&v, &k1, h / 2.0);
            let k2 = rhs_autonomous(a, b, v2[0], v2[1], v2[2]);
            let v3 = p(&v, &k2, h / 2.0);
            let k3 = rhs_autonomous(a, b, v3[0], v3[1], v3[2]);
            let v4 = p(&v, &k3, h);
            let k4 = rhs_autonomous(a, b, v4[0], v4[1], v4[2]);
            for c in 0..3 {
                v[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            }
            xi += h;
        }
        out.push(OrbitPoint { xi, u: v[0], y: v[1], z: v[2] });
    }
    out
}

/// Pressure derivative along a zero-pressure Seth state:
///
/// ```text
/// F = (2μ/r) (3λ+2μ)/(λ+2μ) (η^{2/3} - 1) - (K/r²) m δ
/// ```
///
/// `F ≥ 0` at the inner radius is the shell admissibility condition.
pub fn boundary_pressure_derivative(
    lame: LameCoefficients,
    k: f64,
    state: &EquilibriumState,
) -> f64 {
    let LameCoefficients { lambda, mu } = lame;
    2.0 * mu / state.r * (3.0 * lambda + 2.0 * mu) / (lambda + 2.0 * mu)
        * (state.eta.powf(2.0 / 3.0) - 1.0)
        - k / (state.r * state.r) * state.m * state.delta
}
