//! Constitutive catalog for spherically symmetric elastic matter.
//!
//! Every family exposes closed-form constitutive functions `p_rad(δ, η)` and
//! `p_tan(δ, η)` where `δ = ρ/K` is the dimensionless density and `η` the
//! dimensionless local-mass measure. All families satisfy the compatibility
//! conditions with linear elasticity:
//!
//! - natural state: `p_rad(1,1) = p_tan(1,1) = 0`,
//! - Hooke's law: `∂_δ p_rad(1,1) = λ+2μ`, `∂_η p_rad(1,1) = -4μ/3`,
//!   `∂_δ p_tan(1,1) = λ`, `∂_η p_tan(1,1) = 2μ/3`,
//! - diagonal isotropy: `p_rad(δ,δ) = p_tan(δ,δ)` for all `δ > 0`.
//!
//! All families except Seth are hyperelastic with a stored energy `w(δ, η)`
//! such that `p_rad = δ²∂_δw` and `p_tan = p_rad + (3/2)δη∂_ηw`.

use crate::error::Error;
use crate::Result;

/// Lamé coefficients of linear isotropic elasticity; `mu` is the shear
/// modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LameCoefficients {
    pub lambda: f64,
    pub mu: f64,
}

impl LameCoefficients {
    pub fn new(lambda: f64, mu: f64) -> Self {
        Self { lambda, mu }
    }

    /// Poisson ratio `ν = λ / (2(λ+μ))`.
    pub fn poisson_ratio(&self) -> f64 {
        self.lambda / (2.0 * (self.lambda + self.mu))
    }
}

/// The five constitutive families of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaterialFamily {
    Seth,
    SaintVenantKirchhoff,
    SignoriniQuasiLinear,
    Hadamard,
    LinearConstitutive,
}

impl MaterialFamily {
    pub fn name(&self) -> &'static str {
        match self {
            MaterialFamily::Seth => "seth",
            MaterialFamily::SaintVenantKirchhoff => "svk",
            MaterialFamily::SignoriniQuasiLinear => "signorini",
            MaterialFamily::Hadamard => "hadamard",
            MaterialFamily::LinearConstitutive => "linear",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "seth" => Ok(MaterialFamily::Seth),
            "svk" => Ok(MaterialFamily::SaintVenantKirchhoff),
            "signorini" => Ok(MaterialFamily::SignoriniQuasiLinear),
            "hadamard" => Ok(MaterialFamily::Hadamard),
            "linear" => Ok(MaterialFamily::LinearConstitutive),
            other => Err(Error::InvalidMaterial(format!(
                "unknown material family '{other}'"
            ))),
        }
    }

    pub fn is_hyperelastic(&self) -> bool {
        !matches!(self, MaterialFamily::Seth)
    }
}

/// Auxiliary function `h` of the Hadamard model, stored as polynomial
/// coefficients in powers of `(s - 1)`: `h(s) = Σ c_k (s-1)^k`.
///
/// Compatibility with linear elasticity requires `h'(1) = -(α+2β)` and
/// `h''(1) = (λ+2μ)/2`, i.e. `c_1 = -(α+2β)` and `c_2 = (λ+2μ)/4`. The
/// default is the minimal quadratic satisfying both; higher coefficients are
/// a user-declared convention, not fixed by the compatibility conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct HadamardParams {
    pub alpha: f64,
    pub beta: f64,
    /// Coefficients of `h` in powers of `(s-1)`.
    pub h_coeffs: Vec<f64>,
}

impl HadamardParams {
    /// Minimal quadratic `h` for given Lamé coefficients and `α, β`.
    pub fn default_h(lame: LameCoefficients, alpha: f64, beta: f64) -> Self {
        let c1 = -(alpha + 2.0 * beta);
        let c2 = (lame.lambda + 2.0 * lame.mu) / 4.0;
        Self {
            alpha,
            beta,
            h_coeffs: vec![0.0, c1, c2],
        }
    }

    pub fn h(&self, s: f64) -> f64 {
        let t = s - 1.0;
        self.h_coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn h_prime(&self, s: f64) -> f64 {
        let t = s - 1.0;
        let mut acc = 0.0;
        for (k, c) in self.h_coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * t + (k as f64) * c;
        }
        acc
    }

    pub fn h_second(&self, s: f64) -> f64 {
        let t = s - 1.0;
        let mut acc = 0.0;
        for (k, c) in self.h_coeffs.iter().enumerate().skip(2).rev() {
            acc = acc * t + (k as f64) * (k as f64 - 1.0) * c;
        }
        acc
    }
}

/// A validated constitutive family plus its parameters.
///
/// Immutable after construction; all evaluation methods are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialSpec {
    family: MaterialFamily,
    lame: LameCoefficients,
    hadamard: Option<HadamardParams>,
}

impl MaterialSpec {
    /// Build a spec with per-family admissibility checks.
    ///
    /// For Hadamard, `hadamard` defaults to `α = β = μ/2` with the minimal
    /// quadratic `h`; a supplied value is checked against `α+β = μ`,
    /// `h'(1) = -(α+2β)` and `h''(1) = (λ+2μ)/2`.
    pub fn new(
        family: MaterialFamily,
        lame: LameCoefficients,
        hadamard: Option<HadamardParams>,
    ) -> Result<Self> {
        if !(lame.mu > 0.0) {
            return Err(Error::InvalidMaterial(format!("mu = {} must be > 0", lame.mu)));
        }
        match family {
            MaterialFamily::Seth
            | MaterialFamily::SaintVenantKirchhoff
            | MaterialFamily::LinearConstitutive
            | MaterialFamily::Hadamard => {
                if !(3.0 * lame.lambda + 2.0 * lame.mu > 0.0) {
                    return Err(Error::InvalidMaterial(format!(
                        "3λ+2μ = {} must be > 0",
                        3.0 * lame.lambda + 2.0 * lame.mu
                    )));
                }
            }
            MaterialFamily::SignoriniQuasiLinear => {
                if !(9.0 * lame.lambda + 5.0 * lame.mu > 0.0) {
                    return Err(Error::InvalidMaterial(format!(
                        "9λ+5μ = {} must be > 0",
                        9.0 * lame.lambda + 5.0 * lame.mu
                    )));
                }
            }
        }
        let hadamard = match family {
            MaterialFamily::Hadamard => {
                let params = hadamard.unwrap_or_else(|| {
                    HadamardParams::default_h(lame, lame.mu / 2.0, lame.mu / 2.0)
                });
                let scale = lame.mu.abs().max(lame.lambda.abs()).max(1e-300);
                if (params.alpha + params.beta - lame.mu).abs() > 1e-10 * scale {
                    return Err(Error::InvalidMaterial(format!(
                        "Hadamard requires α+β = μ, got α+β = {}",
                        params.alpha + params.beta
                    )));
                }
                let want_h1 = -(params.alpha + 2.0 * params.beta);
                if (params.h_prime(1.0) - want_h1).abs() > 1e-10 * scale {
                    return Err(Error::InvalidMaterial(format!(
                        "Hadamard requires h'(1) = -(α+2β) = {want_h1}, got {}",
                        params.h_prime(1.0)
                    )));
                }
                let want_h2 = (lame.lambda + 2.0 * lame.mu) / 2.0;
                if (params.h_second(1.0) - want_h2).abs() > 1e-10 * scale {
                    return Err(Error::InvalidMaterial(format!(
                        "Hadamard requires h''(1) = (λ+2μ)/2 = {want_h2}, got {}",
                        params.h_second(1.0)
                    )));
                }
                Some(params)
            }
            _ => {
                if hadamard.is_some() {
                    return Err(Error::InvalidMaterial(
                        "hadamard parameters are only valid for the Hadamard family".into(),
                    ));
                }
                None
            }
        };
        Ok(Self {
            family,
            lame,
            hadamard,
        })
    }

    pub fn seth(lambda: f64, mu: f64) -> Result<Self> {
        Self::new(MaterialFamily::Seth, LameCoefficients::new(lambda, mu), None)
    }

    pub fn saint_venant_kirchhoff(lambda: f64, mu: f64) -> Result<Self> {
        Self::new(
            MaterialFamily::SaintVenantKirchhoff,
            LameCoefficients::new(lambda, mu),
            None,
        )
    }

    pub fn signorini(lambda: f64, mu: f64) -> Result<Self> {
        Self::new(
            MaterialFamily::SignoriniQuasiLinear,
            LameCoefficients::new(lambda, mu),
            None,
        )
    }

    pub fn hadamard(lambda: f64, mu: f64, params: Option<HadamardParams>) -> Result<Self> {
        Self::new(
            MaterialFamily::Hadamard,
            LameCoefficients::new(lambda, mu),
            params,
        )
    }

    pub fn linear(lambda: f64, mu: f64) -> Result<Self> {
        Self::new(
            MaterialFamily::LinearConstitutive,
            LameCoefficients::new(lambda, mu),
            None,
        )
    }

    pub fn family(&self) -> MaterialFamily {
        self.family
    }

    pub fn lame(&self) -> LameCoefficients {
        self.lame
    }

    pub fn hadamard_params(&self) -> Option<&HadamardParams> {
        self.hadamard.as_ref()
    }

    /// The family's reference pressure scale `p0` (equal to `-lim p_rad`
    /// as the body is stretched towards vanishing density for Seth).
    pub fn p0(&self) -> f64 {
        let LameCoefficients { lambda, mu } = self.lame;
        match self.family {
            MaterialFamily::Seth => (3.0 * lambda + 2.0 * mu) / 2.0,
            MaterialFamily::SignoriniQuasiLinear => (9.0 * lambda + 5.0 * mu) / 8.0,
            MaterialFamily::LinearConstitutive => (3.0 * lambda + 2.0 * mu) / 3.0,
            // SVK and Hadamard displays carry no explicit p0 constant; the
            // natural pressure scale is the same Hooke combination.
            MaterialFamily::SaintVenantKirchhoff | MaterialFamily::Hadamard => {
                (3.0 * lambda + 2.0 * mu) / 2.0
            }
        }
    }

    fn check_domain(&self, delta: f64, eta: f64) -> Result<()> {
        // Seth and the linear family extend continuously to δ = 0, which is
        // attained at a shell inner boundary with r0 = r_min.
        let delta_ok = match self.family {
            MaterialFamily::Seth | MaterialFamily::LinearConstitutive => delta >= 0.0,
            _ => delta > 0.0,
        };
        if !delta_ok || !(eta > 0.0) || !delta.is_finite() || !eta.is_finite() {
            return Err(Error::Domain(format!(
                "constitutive arguments out of domain: delta = {delta}, eta = {eta}"
            )));
        }
        Ok(())
    }

    /// Radial pressure `p_rad(δ, η)`.
    pub fn p_rad(&self, delta: f64, eta: f64) -> Result<f64> {
        self.check_domain(delta, eta)?;
        let LameCoefficients { lambda, mu } = self.lame;
        let p0 = self.p0();
        Ok(match self.family {
            MaterialFamily::Seth => {
                lambda * eta.powf(2.0 / 3.0)
                    + 0.5 * (lambda + 2.0 * mu) * eta.powf(-4.0 / 3.0) * delta * delta
                    - p0
            }
            MaterialFamily::SaintVenantKirchhoff => {
                let e43 = eta.powf(4.0 / 3.0);
                let e23 = eta.powf(2.0 / 3.0);
                mu * e43 / delta * (1.0 - e43 / (delta * delta))
                    + lambda * e23 / (2.0 * delta)
                        * (3.0 * e23 - eta * eta / (delta * delta) - 2.0)
            }
            MaterialFamily::SignoriniQuasiLinear => {
                let y = delta / eta;
                let y2 = y * y;
                (lambda + mu) / 8.0 * eta.powf(4.0 / 3.0) * (3.0 * y2 * y2 + 4.0 * y2 - 4.0)
                    + (3.0 * lambda + mu) / 4.0 * eta.powf(2.0 / 3.0) * (2.0 - y2)
                    - p0
            }
            MaterialFamily::Hadamard => {
                let h = self.hadamard.as_ref().expect("validated at construction");
                -(h.alpha * eta.powf(4.0 / 3.0)
                    + 2.0 * h.beta * eta.powf(2.0 / 3.0)
                    + h.h_prime(delta.powi(-2)))
                    / delta
            }
            MaterialFamily::LinearConstitutive => {
                (lambda + 2.0 * mu) * delta - 4.0 * mu / 3.0 * eta - p0
            }
        })
    }

    /// Tangential pressure `p_tan(δ, η)`.
    pub fn p_tan(&self, delta: f64, eta: f64) -> Result<f64> {
        self.check_domain(delta, eta)?;
        let LameCoefficients { lambda, mu } = self.lame;
        let p0 = self.p0();
        Ok(match self.family {
            MaterialFamily::Seth => {
                (lambda + mu) * eta.powf(2.0 / 3.0)
                    + 0.5 * lambda * eta.powf(-4.0 / 3.0) * delta * delta
                    - p0
            }
            MaterialFamily::SaintVenantKirchhoff => {
                let e23 = eta.powf(2.0 / 3.0);
                mu * delta / e23 * (1.0 - eta.powf(-2.0 / 3.0))
                    + lambda * delta / (2.0 * e23)
                        * (3.0 - 2.0 * eta.powf(-2.0 / 3.0)
                            - eta.powf(4.0 / 3.0) / (delta * delta))
            }
            MaterialFamily::SignoriniQuasiLinear => {
                let y = delta / eta;
                let y2 = y * y;
                (lambda + mu) / 8.0 * eta.powf(4.0 / 3.0) * (4.0 - y2 * y2)
                    + (3.0 * lambda + mu) / 4.0 * delta * delta * eta.powf(-4.0 / 3.0)
                    - p0
            }
            MaterialFamily::Hadamard => {
                let h = self.hadamard.as_ref().expect("validated at construction");
                let y2 = (delta / eta) * (delta / eta);
                -(h.alpha * eta.powf(4.0 / 3.0) * y2
                    + h.beta * eta.powf(2.0 / 3.0) * (1.0 + y2)
                    + h.h_prime(delta.powi(-2)))
                    / delta
            }
            MaterialFamily::LinearConstitutive => {
                lambda * delta + 2.0 * mu / 3.0 * eta - p0
            }
        })
    }

    /// Closed-form `∂_δ p_rad(δ, η)`, used by the equilibrium ODE system.
    pub fn dp_rad_ddelta(&self, delta: f64, eta: f64) -> Result<f64> {
        self.check_domain(delta, eta)?;
        let LameCoefficients { lambda, mu } = self.lame;
        Ok(match self.family {
            MaterialFamily::Seth => (lambda + 2.0 * mu) * eta.powf(-4.0 / 3.0) * delta,
            MaterialFamily::SaintVenantKirchhoff => {
                let e43 = eta.powf(4.0 / 3.0);
                let e83 = e43 * e43;
                let e23 = eta.powf(2.0 / 3.0);
                let d2 = delta * delta;
                mu * (-e43 / d2 + 3.0 * e83 / (d2 * d2))
                    + 0.5 * lambda * (-3.0 * e43 / d2 + 3.0 * e83 / (d2 * d2) + 2.0 * e23 / d2)
            }
            MaterialFamily::SignoriniQuasiLinear => {
                let em83 = eta.powf(-8.0 / 3.0);
                let em23 = eta.powf(-2.0 / 3.0);
                let em43 = eta.powf(-4.0 / 3.0);
                (lambda + mu) / 8.0 * (12.0 * delta.powi(3) * em83 + 8.0 * delta * em23)
                    - (3.0 * lambda + mu) / 2.0 * delta * em43
            }
            MaterialFamily::Hadamard => {
                let h = self.hadamard.as_ref().expect("validated at construction");
                let s = delta.powi(-2);
                (h.alpha * eta.powf(4.0 / 3.0)
                    + 2.0 * h.beta * eta.powf(2.0 / 3.0)
                    + h.h_prime(s))
                    / (delta * delta)
                    + 2.0 * h.h_second(s) / delta.powi(4)
            }
            MaterialFamily::LinearConstitutive => lambda + 2.0 * mu,
        })
    }

    /// Closed-form `∂_η p_rad(δ, η)`, used by the equilibrium ODE system.
    pub fn dp_rad_deta(&self, delta: f64, eta: f64) -> Result<f64> {
        self.check_domain(delta, eta)?;
        let LameCoefficients { lambda, mu } = self.lame;
        Ok(match self.family {
            MaterialFamily::Seth => {
                2.0 / 3.0 * lambda * eta.powf(-1.0 / 3.0)
                    - 2.0 / 3.0 * (lambda + 2.0 * mu) * eta.powf(-7.0 / 3.0) * delta * delta
            }
            MaterialFamily::SaintVenantKirchhoff => {
                let e13 = eta.powf(1.0 / 3.0);
                let e53 = eta.powf(5.0 / 3.0);
                let em13 = eta.powf(-1.0 / 3.0);
                let d = delta;
                let d3 = d * d * d;
                mu * (4.0 / 3.0 * e13 / d - 8.0 / 3.0 * e53 / d3)
                    + 0.5 * lambda
                        * (4.0 * e13 / d - 8.0 / 3.0 * e53 / d3 - 4.0 / 3.0 * em13 / d)
            }
            MaterialFamily::SignoriniQuasiLinear => {
                let d2 = delta * delta;
                let d4 = d2 * d2;
                (lambda + mu) / 8.0
                    * (-8.0 * d4 * eta.powf(-11.0 / 3.0)
                        - 8.0 / 3.0 * d2 * eta.powf(-5.0 / 3.0)
                        - 16.0 / 3.0 * eta.powf(1.0 / 3.0))
                    + (3.0 * lambda + mu) / 3.0
                        * (eta.powf(-1.0 / 3.0) + d2 * eta.powf(-7.0 / 3.0))
            }
            MaterialFamily::Hadamard => {
                let h = self.hadamard.as_ref().expect("validated at construction");
                -(4.0 / 3.0 * h.alpha * eta.powf(1.0 / 3.0)
                    + 4.0 / 3.0 * h.beta * eta.powf(-1.0 / 3.0))
                    / delta
            }
            MaterialFamily::LinearConstitutive => -4.0 * mu / 3.0,
        })
    }

    /// Stored energy `w(δ, η)` per unit reference mass; hyperelastic
    /// families only.
    pub fn stored_energy(&self, delta: f64, eta: f64) -> Result<f64> {
        if !(delta > 0.0) || !(eta > 0.0) {
            return Err(Error::Domain(format!(
                "stored energy arguments out of domain: delta = {delta}, eta = {eta}"
            )));
        }
        let LameCoefficients { lambda, mu } = self.lame;
        Ok(match self.family {
            MaterialFamily::Seth => return Err(Error::NotHyperelastic("seth")),
            MaterialFamily::SaintVenantKirchhoff => {
                let a = eta.powf(4.0 / 3.0) / (delta * delta) + 2.0 * eta.powf(-2.0 / 3.0) - 3.0;
                let b = 2.0 * eta.powf(2.0 / 3.0) / (delta * delta) + eta.powf(-4.0 / 3.0) - 3.0;
                0.125 * a * a * (lambda + 2.0 * mu) + mu * a - 0.5 * mu * b
            }
            MaterialFamily::SignoriniQuasiLinear => {
                let a = delta * delta * eta.powf(-4.0 / 3.0) + 2.0 * eta.powf(2.0 / 3.0) - 3.0;
                (0.125 * a * a * (lambda + mu) + 0.5 * mu * (a + 2.0)) / delta - mu
            }
            MaterialFamily::Hadamard => {
                let h = self.hadamard.as_ref().expect("validated at construction");
                let a = eta.powf(4.0 / 3.0) / (delta * delta) + 2.0 * eta.powf(-2.0 / 3.0) - 3.0;
                let b = 2.0 * eta.powf(2.0 / 3.0) / (delta * delta) + eta.powf(-4.0 / 3.0) - 3.0;
                0.5 * (h.alpha * a + h.beta * b + h.h(delta.powi(-2)) - h.h(1.0))
            }
            MaterialFamily::LinearConstitutive => {
                (lambda + 2.0 * mu) * delta.ln() - 4.0 * mu / 3.0 * eta.ln()
                    + 4.0 * mu / 3.0 * eta / delta
                    + (3.0 * lambda + 2.0 * mu) / (3.0 * delta)
                    - lambda
                    - 2.0 * mu
            }
        })
    }

    /// `∂_δ w` recovered from the closed-form radial pressure.
    pub fn dw_ddelta(&self, delta: f64, eta: f64) -> Result<f64> {
        if !self.family.is_hyperelastic() {
            return Err(Error::NotHyperelastic(self.family.name()));
        }
        Ok(self.p_rad(delta, eta)? / (delta * delta))
    }

    /// `∂_η w` recovered from the closed-form pressure difference.
    pub fn dw_deta(&self, delta: f64, eta: f64) -> Result<f64> {
        if !self.family.is_hyperelastic() {
            return Err(Error::NotHyperelastic(self.family.name()));
        }
        let diff = self.p_tan(delta, eta)? - self.p_rad(delta, eta)?;
        Ok(2.0 * diff / (3.0 * delta * eta))
    }

    /// Run the compatibility-condition checks with finite differences and
    /// report the residuals; pass/fail thresholds live with the caller.
    pub fn validate(&self, fd_step: f64) -> Result<ValidationReport> {
        if !(fd_step > 0.0 && fd_step <= 1e-3) {
            return Err(Error::Domain(format!(
                "fd_step = {fd_step} must lie in (0, 1e-3]"
            )));
        }
        let h = fd_step;
        let LameCoefficients { lambda, mu } = self.lame;

        let natural = (self.p_rad(1.0, 1.0)?.abs(), self.p_tan(1.0, 1.0)?.abs());

        let fd = |f: &dyn Fn(f64, f64) -> Result<f64>, wrt_delta: bool| -> Result<f64> {
            let (dp, dm) = if wrt_delta {
                (f(1.0 + h, 1.0)?, f(1.0 - h, 1.0)?)
            } else {
                (f(1.0, 1.0 + h)?, f(1.0, 1.0 - h)?)
            };
            Ok((dp - dm) / (2.0 * h))
        };
        let p_rad = |d: f64, e: f64| self.p_rad(d, e);
        let p_tan = |d: f64, e: f64| self.p_tan(d, e);
        let jacobian_fd = [
            [fd(&p_rad, true)?, fd(&p_rad, false)?],
            [fd(&p_tan, true)?, fd(&p_tan, false)?],
        ];
        let expected = [[lambda + 2.0 * mu, -4.0 * mu / 3.0], [lambda, 2.0 * mu / 3.0]];
        let mut jacobian_dev = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let want = expected[i][j];
                jacobian_dev[i][j] = (jacobian_fd[i][j] - want).abs() / want.abs().max(1e-8);
            }
        }

        // fixed δ-grid for the diagonal-isotropy residual
        let mut isotropy_max: f64 = 0.0;
        for &d in &[0.5, 0.8, 1.0, 1.25, 2.0, 4.0] {
            isotropy_max = isotropy_max.max((self.p_rad(d, d)? - self.p_tan(d, d)?).abs());
        }

        let (hyper_rad_max, hyper_tan_max) = if self.family.is_hyperelastic() {
            let mut rad_max: f64 = 0.0;
            let mut tan_max: f64 = 0.0;
            for i in 0..5 {
                for j in 0..5 {
                    let d = 0.5 + 1.5 * i as f64 / 4.0;
                    let e = 0.5 + 1.5 * j as f64 / 4.0;
                    let dw_dd =
                        (self.stored_energy(d + h, e)? - self.stored_energy(d - h, e)?) / (2.0 * h);
                    let dw_de =
                        (self.stored_energy(d, e + h)? - self.stored_energy(d, e - h)?) / (2.0 * h);
                    let p_rad = self.p_rad(d, e)?;
                    let p_tan = self.p_tan(d, e)?;
                    let scale = self.p0().abs().max(p_rad.abs()).max(p_tan.abs());
                    rad_max = rad_max.max((d * d * dw_dd - p_rad).abs() / scale);
                    tan_max = tan_max.max((p_rad + 1.5 * d * e * dw_de - p_tan).abs() / scale);
                }
            }
            (Some(rad_max), Some(tan_max))
        } else {
            (None, None)
        };

        Ok(ValidationReport {
            natural,
            jacobian_fd,
            jacobian_dev,
            isotropy_max,
            hyper_rad_max,
            hyper_tan_max,
        })
    }
}

/// Residuals of the compatibility-condition checks for one material.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    /// `(|p_rad(1,1)|, |p_tan(1,1)|)`.
    pub natural: (f64, f64),
    /// Central finite-difference Jacobian of `(p_rad, p_tan)` at `(1,1)`.
    pub jacobian_fd: [[f64; 2]; 2],
    /// Relative deviations from `[[λ+2μ, -4μ/3], [λ, 2μ/3]]`.
    pub jacobian_dev: [[f64; 2]; 2],
    /// `max |p_rad(δ,δ) - p_tan(δ,δ)|` over the fixed δ-grid.
    pub isotropy_max: f64,
    /// Hyperelastic families: max relative deviation of `δ²FD[∂_δw]` from
    /// the closed-form radial pressure on the 5×5 grid.
    pub hyper_rad_max: Option<f64>,
    /// Same for the tangential relation `p_rad + (3/2)δη FD[∂_ηw]`.
    pub hyper_tan_max: Option<f64>,
}

/// Closed-form `δ` with `p_rad(δ, η) = 0` for the Seth model.
///
/// Valid for `0 < η ≤ ((3λ+2μ)/(2λ))^{3/2}` with `λ > 0`.
pub fn zero_pressure_delta_seth(lame: LameCoefficients, eta: f64) -> Result<f64> {
    let LameCoefficients { lambda, mu } = lame;
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!("lambda = {lambda} must be > 0")));
    }
    let bound = ((3.0 * lambda + 2.0 * mu) / (2.0 * lambda)).powf(1.5);
    if !(eta > 0.0) || eta > bound * (1.0 + 1e-14) {
        return Err(Error::Domain(format!(
            "eta = {eta} outside (0, {bound}]"
        )));
    }
    let e23 = eta.powf(2.0 / 3.0);
    let inner = ((3.0 * lambda + 2.0 * mu) / (2.0 * lambda) - e23).max(0.0);
    Ok(e23 * (2.0 * lambda / (lambda + 2.0 * mu)).sqrt() * inner.sqrt())
}
