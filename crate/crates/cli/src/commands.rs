//! Subcommand dispatch and artifact writers.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;

use gravelast::bodies::{add_shell, build_ball, build_shell, r_min, verify_distribution, Body};
use gravelast::bodies::MatterDistribution;
use gravelast::calibration::{k_from_central, k_from_surface, ks_from_shell, NewtonControls};
use gravelast::equilibrium::material_constants_ab;
use gravelast::export;
use gravelast::materials::MaterialSpec;
use gravelast::seth::{integrate_orbit, SethAnalysis};
use gravelast::Error;

use crate::config::{Command, MaterialConfig, RunConfig};

/// Error carrying the documented exit code.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::InvalidMaterial(_) | Error::NotHyperelastic(_) | Error::Domain(_) => 2,
            Error::NoEquilibrium(_)
            | Error::InadmissibleInnerRadius { .. }
            | Error::NegativeBoundaryDerivative { .. }
            | Error::BoundViolation(_) => 3,
            _ => 4,
        };
        Self { code, message: err.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self { code: 1, message: format!("io error: {err}") }
    }
}

pub fn run(
    config_path: &Path,
    output_dir: Option<PathBuf>,
    jobs: usize,
    _seed: Option<u64>,
) -> Result<(), CliError> {
    let text = fs::read_to_string(config_path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", config_path.display())))?;
    let config: RunConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("config parse error: {e}")))?;
    let dir = output_dir.unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    match config.command {
        Command::Ball => cmd_ball(&config, &dir, jobs),
        Command::Shell => cmd_shell(&config, &dir),
        Command::Multibody => cmd_multibody(&config, &dir, false),
        Command::Verify => cmd_multibody(&config, &dir, true),
        Command::ValidateMaterial => cmd_validate(&config, &dir),
        Command::Selfsimilar => cmd_selfsimilar(&config, &dir),
        Command::Phase => cmd_phase(&config, &dir),
        Command::Calibrate => cmd_calibrate(&config, &dir),
    }
}

fn material(config: &RunConfig) -> Result<&MaterialConfig, CliError> {
    config
        .materials
        .first()
        .ok_or_else(|| CliError::usage("config needs at least one material"))
}

fn write(dir: &Path, name: String, contents: &str) -> Result<(), CliError> {
    fs::write(dir.join(name), contents)?;
    Ok(())
}

fn write_summary(dir: &Path, prefix: &str, value: serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(&value)
        .map_err(|e| CliError::usage(format!("summary serialization: {e}")))?;
    text.push('\n');
    write(dir, format!("{prefix}_summary.json"), &text)
}

fn ball_entry(mat: &MaterialConfig, spec: &MaterialSpec, ball: &Body, rho_c: f64) -> serde_json::Value {
    let lame = mat.lame();
    let upper = (3.0 * ball.total_mass / (4.0 * PI * mat.k)).powf(1.0 / 3.0);
    let lower = (2.0 * lame.lambda / (3.0 * lame.lambda + 2.0 * lame.mu)).sqrt() * upper;
    let mass_bound = 4.0 * PI / 3.0 * rho_c * ball.r_end.powi(3);
    let last = ball.profile.last();
    json!({
        "family": spec.family().name(),
        "rho_c": rho_c,
        "r1": ball.r_end,
        "mass": ball.total_mass,
        "rho_r1": mat.k * last.delta,
        "bounds": {
            "lower": lower,
            "upper": upper,
            "mass_bound": mass_bound,
            "strict": lower < ball.r_end && ball.r_end < upper && ball.total_mass < mass_bound,
        },
    })
}

fn cmd_ball(config: &RunConfig, dir: &Path, jobs: usize) -> Result<(), CliError> {
    let mat = material(config)?;
    let spec = mat.spec()?;
    let rho_cs = config
        .observables
        .rho_c
        .as_ref()
        .ok_or_else(|| CliError::usage("ball needs observables.rho_c"))?
        .values();
    let controls = config.controls.integration();
    let mut results: Vec<Option<gravelast::Result<Body>>> = (0..rho_cs.len()).map(|_| None).collect();
    let jobs = jobs.max(1).min(rho_cs.len().max(1));
    std::thread::scope(|scope| {
        for (chunk_idx, chunk) in results.chunks_mut(rho_cs.len().div_ceil(jobs)).enumerate() {
            let rho_cs = &rho_cs;
            let spec = &spec;
            let controls = &controls;
            let base = chunk_idx * rho_cs.len().div_ceil(jobs);
            scope.spawn(move || {
                for (off, slot) in chunk.iter_mut().enumerate() {
                    *slot = Some(build_ball(spec, mat.k, rho_cs[base + off], controls));
                }
            });
        }
    });
    let prefix = config.output.prefix();
    let single = rho_cs.len() == 1;
    let mut entries = Vec::new();
    for (i, (rho_c, result)) in rho_cs.iter().zip(results).enumerate() {
        let ball = result.expect("worker filled every slot")?;
        let csv = export::profile_csv(&ball.profile)?;
        let name = if single {
            format!("{prefix}_profile.csv")
        } else {
            format!("{prefix}_{i}_profile.csv")
        };
        write(dir, name, &csv)?;
        entries.push(ball_entry(mat, &spec, &ball, *rho_c));
    }
    write_summary(dir, prefix, json!({ "command": "ball", "bodies": entries }))
}

fn cmd_shell(config: &RunConfig, dir: &Path) -> Result<(), CliError> {
    let mat = material(config)?;
    let spec = mat.spec()?;
    let s = config
        .observables
        .s
        .ok_or_else(|| CliError::usage("shell needs observables.s"))?;
    let r0 = config
        .observables
        .r0
        .ok_or_else(|| CliError::usage("shell needs observables.r0"))?;
    let controls = config.controls.integration();
    let shell = build_shell(&spec, mat.k, s, r0, &controls)?;
    let prefix = config.output.prefix();
    write(dir, format!("{prefix}_profile.csv"), &export::profile_csv(&shell.profile)?)?;
    let lame = mat.lame();
    let base = (s.powi(3) + 3.0 * shell.total_mass / (4.0 * PI * mat.k)).powf(1.0 / 3.0);
    let lower = (2.0 * lame.lambda / (3.0 * lame.lambda + 2.0 * lame.mu)).sqrt() * base;
    write_summary(
        dir,
        prefix,
        json!({
            "command": "shell",
            "family": spec.family().name(),
            "s": s,
            "r0": shell.r_start,
            "r1": shell.r_end,
            "mass": shell.total_mass,
            "rho_r0": mat.k * shell.profile.samples[0].delta,
            "rho_r1": mat.k * shell.profile.last().delta,
            "bounds": {
                "lower": lower,
                "upper": base,
                "strict": lower < shell.r_end && shell.r_end < base,
            },
        }),
    )
}

fn build_distribution(config: &RunConfig) -> Result<MatterDistribution, CliError> {
    let mat = material(config)?;
    let lame = mat.lame();
    let controls = config.controls.integration();
    let mut dist = if let Some(rho_c) = &config.observables.rho_c {
        let values = rho_c.values();
        if values.len() != 1 {
            return Err(CliError::usage("multibody takes a single rho_c"));
        }
        let spec = mat.spec()?;
        MatterDistribution::from_ball(build_ball(&spec, mat.k, values[0], &controls)?)
    } else if let Some(first) = config.observables.shells.as_ref().and_then(|v| v.first()) {
        let r0 = match first.r0 {
            Some(r0) => r0,
            None => r_min(lame, first.s)?,
        };
        let spec = mat.spec()?;
        MatterDistribution::from_shell(build_shell(&spec, mat.k, first.s, r0, &controls)?)
    } else {
        return Err(CliError::usage("multibody needs rho_c or shells"));
    };
    let skip = usize::from(config.observables.rho_c.is_none());
    for shell in config.observables.shells.iter().flatten().skip(skip) {
        let r0 = match shell.r0 {
            Some(r0) => r0,
            None => r_min(lame, shell.s)?,
        };
        dist = add_shell(&dist, lame, mat.k, shell.s, r0, &controls)?;
    }
    Ok(dist)
}

fn cmd_multibody(config: &RunConfig, dir: &Path, verify: bool) -> Result<(), CliError> {
    let dist = build_distribution(config)?;
    let prefix = config.output.prefix();
    write(dir, format!("{prefix}_profile.csv"), &export::distribution_csv(&dist)?)?;
    if !verify {
        return write(
            dir,
            format!("{prefix}_summary.json"),
            &export::distribution_summary(&dist),
        );
    }
    let tol = config.controls.verify_tol.unwrap_or(1e-8);
    let report = verify_distribution(&dist, tol)?;
    write_summary(
        dir,
        prefix,
        json!({
            "command": "verify",
            "tol": tol,
            "support_ordering": report.support_ordering,
            "ode_residual_max": report.ode_residual_max,
            "ode_ok": report.ode_ok,
            "pressures_positive": report.pressures_positive,
            "interface_residual_max": report.interface_residual_max,
            "interface_ok": report.interface_ok,
            "center_ok": report.center_ok,
            "exterior_ok": report.exterior_ok,
            "mass_additivity_rel": report.mass_additivity_rel,
            "mass_ok": report.mass_ok,
            "pass": report.pass,
        }),
    )?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError {
            code: 4,
            message: format!("verification failed at tol {tol}"),
        })
    }
}

fn cmd_validate(config: &RunConfig, dir: &Path) -> Result<(), CliError> {
    if config.materials.is_empty() {
        return Err(CliError::usage("validate-material needs materials"));
    }
    let mut entries = Vec::new();
    for mat in &config.materials {
        let spec = mat.spec()?;
        let report = spec.validate(1e-5)?;
        entries.push(json!({
            "family": spec.family().name(),
            "lambda": mat.lambda,
            "mu": mat.mu,
            "poisson_ratio": mat.lame().poisson_ratio(),
            "natural": [report.natural.0, report.natural.1],
            "jacobian_fd": report.jacobian_fd,
            "jacobian_dev": report.jacobian_dev,
            "isotropy_max": report.isotropy_max,
            "hyper_rad_max": report.hyper_rad_max,
            "hyper_tan_max": report.hyper_tan_max,
        }));
    }
    write_summary(
        dir,
        config.output.prefix(),
        json!({ "command": "validate-material", "materials": entries }),
    )
}

fn cmd_selfsimilar(config: &RunConfig, dir: &Path) -> Result<(), CliError> {
    let mat = material(config)?;
    let an = SethAnalysis::new(mat.lambda, mat.mu, mat.k)?;
    let grid = config
        .observables
        .radii
        .ok_or_else(|| CliError::usage("selfsimilar needs observables.radii"))?;
    if !(grid.min > 0.0 && grid.max > grid.min && grid.n >= 2) {
        return Err(CliError::usage("radii grid needs 0 < min < max and n >= 2"));
    }
    let mut csv = String::from(export::PROFILE_HEADER);
    csv.push('\n');
    for i in 0..grid.n {
        let r = grid.min * (grid.max / grid.min).powf(i as f64 / (grid.n - 1) as f64);
        let s = an.self_similar_state(r)?;
        let row = [s.r, s.delta, s.eta, s.m, mat.k * s.delta, s.p_rad, s.p_tan];
        let row: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    let prefix = config.output.prefix();
    write(dir, format!("{prefix}_selfsimilar.csv"), &csv)?;
    let (p, q) = an.fixed_points();
    write_summary(
        dir,
        prefix,
        json!({
            "command": "selfsimilar",
            "a": an.a,
            "b": an.b,
            "theta": an.theta,
            "c": an.c,
            "u_p": an.u_p(),
            "r_star": an.r_star(),
            "fixed_points": {
                "p": { "u": p.u, "y": p.y, "z": p.z, "kind": format!("{:?}", p.kind) },
                "q": { "u": q.u, "y": q.y, "z": q.z, "kind": format!("{:?}", q.kind) },
            },
        }),
    )
}

fn cmd_phase(config: &RunConfig, dir: &Path) -> Result<(), CliError> {
    let mat = material(config)?;
    let (a, b) = material_constants_ab(mat.lambda, mat.mu);
    let seeds = config
        .observables
        .orbits
        .as_ref()
        .ok_or_else(|| CliError::usage("phase needs observables.orbits"))?;
    if seeds.is_empty() {
        return Err(CliError::usage("phase needs at least one orbit seed"));
    }
    let xi_end = config.observables.xi_end.unwrap_or(20.0);
    let samples = config.observables.samples.unwrap_or(1001);
    let prefix = config.output.prefix();
    for (i, seed) in seeds.iter().enumerate() {
        let orbit = integrate_orbit(a, b, *seed, xi_end, samples);
        write(dir, format!("{prefix}_orbit{i}.csv"), &export::orbit_csv(&orbit))?;
    }
    write_summary(
        dir,
        prefix,
        json!({
            "command": "phase",
            "a": a,
            "b": b,
            "xi_end": xi_end,
            "samples": samples,
            "orbits": seeds.len(),
        }),
    )
}

fn cmd_calibrate(config: &RunConfig, dir: &Path) -> Result<(), CliError> {
    let mat = material(config)?;
    let spec = mat.spec()?;
    let obs = &config.observables;
    let rho_c = obs.rho_c.as_ref().and_then(|v| match v.values().as_slice() {
        [one] => Some(*one),
        _ => None,
    });
    let mut modes = Vec::new();
    if let (Some(rho_c), Some(p_c)) = (rho_c, obs.p_c) {
        let k = k_from_central(&spec, rho_c, p_c)?;
        let delta = rho_c / k;
        let residual = spec.p_rad(delta, delta)? - p_c;
        modes.push(json!({ "mode": "central", "k": k, "residual": residual }));
    }
    if let (Some(rho_r1), Some(r1), Some(m)) = (obs.rho_r1, obs.r1, obs.m) {
        if obs.r0.is_none() {
            let k = k_from_surface(&spec, rho_r1, r1, m)?;
            let eta = 3.0 * m / (4.0 * PI * k * r1.powi(3));
            let residual = spec.p_rad(rho_r1 / k, eta)?;
            modes.push(json!({ "mode": "surface", "k": k, "residual": residual }));
        }
    }
    if let (Some(r0), Some(r1), Some(rho_r0), Some(rho_r1), Some(m)) =
        (obs.r0, obs.r1, obs.rho_r0, obs.rho_r1, obs.m)
    {
        let (k, s) = ks_from_shell(&spec, r0, r1, rho_r0, rho_r1, m, &NewtonControls::default())?;
        let inner = spec.p_rad(rho_r0 / k, (s / r0).powi(3))?;
        let eta1 = (s / r1).powi(3) + 3.0 * m / (4.0 * PI * k * r1.powi(3));
        let outer = spec.p_rad(rho_r1 / k, eta1)?;
        modes.push(json!({
            "mode": "shell",
            "k": k,
            "s": s,
            "residuals": [inner, outer],
        }));
    }
    if modes.is_empty() {
        return Err(CliError::usage(
            "calibrate needs (rho_c, p_c), (rho_r1, r1, m) or (r0, r1, rho_r0, rho_r1, m)",
        ));
    }
    write_summary(
        dir,
        config.output.prefix(),
        json!({
            "command": "calibrate",
            "family": spec.family().name(),
            "results": modes,
        }),
    )
}
