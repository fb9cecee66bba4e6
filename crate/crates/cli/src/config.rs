//! Run configuration: a single JSON document with `command`, `materials`,
//! `controls`, `observables` and `output` sections.

use serde::Deserialize;

use gravelast::equilibrium::IntegrationControls;
use gravelast::materials::{HadamardParams, LameCoefficients, MaterialFamily, MaterialSpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub materials: Vec<MaterialConfig>,
    #[serde(default)]
    pub controls: ControlsConfig,
    #[serde(default)]
    pub observables: ObservablesConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Ball,
    Shell,
    Multibody,
    ValidateMaterial,
    Selfsimilar,
    Phase,
    Calibrate,
    Verify,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialConfig {
    pub family: String,
    pub lambda: f64,
    pub mu: f64,
    #[serde(default = "one")]
    pub k: f64,
    /// Hadamard quadratic-invariant weight; defaults to μ/2.
    pub alpha: Option<f64>,
    /// Hadamard cofactor-invariant weight; defaults to μ/2.
    pub beta: Option<f64>,
}

fn one() -> f64 {
    1.0
}

impl MaterialConfig {
    pub fn lame(&self) -> LameCoefficients {
        LameCoefficients::new(self.lambda, self.mu)
    }

    pub fn spec(&self) -> gravelast::Result<MaterialSpec> {
        let family = MaterialFamily::parse(&self.family)?;
        match family {
            MaterialFamily::Hadamard => {
                let params = match (self.alpha, self.beta) {
                    (None, None) => None,
                    (alpha, beta) => {
                        let mu = self.mu;
                        Some(HadamardParams::default_h(
                            self.lame(),
                            alpha.unwrap_or(0.5 * mu),
                            beta.unwrap_or(0.5 * mu),
                        ))
                    }
                };
                MaterialSpec::hadamard(self.lambda, self.mu, params)
            }
            _ => MaterialSpec::new(family, self.lame(), None),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlsConfig {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub r_stop: Option<f64>,
    pub max_steps: Option<usize>,
    pub max_step_rel: Option<f64>,
    /// Tolerance for the `verify` command's report.
    pub verify_tol: Option<f64>,
}

impl ControlsConfig {
    pub fn integration(&self) -> IntegrationControls {
        let d = IntegrationControls::default();
        IntegrationControls {
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
            abs_tol: self.abs_tol.unwrap_or(d.abs_tol),
            r_stop: self.r_stop.unwrap_or(d.r_stop),
            max_steps: self.max_steps.unwrap_or(d.max_steps),
            max_step_rel: self.max_step_rel.unwrap_or(d.max_step_rel),
            ..d
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

impl OneOrMany {
    pub fn values(&self) -> Vec<f64> {
        match self {
            OneOrMany::One(v) => vec![*v],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShellSpec {
    /// Reference (natural) outer radius of the shell.
    pub s: f64,
    /// Inner support radius; defaults to the zero-density minimum.
    pub r0: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiiGrid {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservablesConfig {
    /// Central density; an array sweeps several balls.
    pub rho_c: Option<OneOrMany>,
    pub p_c: Option<f64>,
    pub r0: Option<f64>,
    pub r1: Option<f64>,
    pub rho_r0: Option<f64>,
    pub rho_r1: Option<f64>,
    pub m: Option<f64>,
    /// Shell reference radius (shell command).
    pub s: Option<f64>,
    /// Shells appended outward in order (multibody / verify).
    pub shells: Option<Vec<ShellSpec>>,
    /// Log-spaced radii for the selfsimilar table.
    pub radii: Option<RadiiGrid>,
    /// Phase-portrait seeds `(u, y, z)`.
    pub orbits: Option<Vec<[f64; 3]>>,
    pub xi_end: Option<f64>,
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// File-name prefix for all artifacts.
    pub prefix: Option<String>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { prefix: None }
    }
}

impl OutputConfig {
    pub fn prefix(&self) -> &str {
        self.prefix.as_deref().unwrap_or("run")
    }
}
