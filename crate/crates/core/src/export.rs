//! Deterministic text export of profiles, distributions and orbits.
//!
//! Numbers are printed with 17 significant digits so that profiles round
//! trip through text exactly.

use std::fmt::Write;

use crate::bodies::MatterDistribution;
use crate::equilibrium::SolutionProfile;
use crate::seth::OrbitPoint;
use crate::Result;

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV header of a profile export.
pub const PROFILE_HEADER: &str = "r,delta,eta,m,rho,p_rad,p_tan";

/// Profile CSV: one row per accepted step (including the refined boundary
/// sample when present).
pub fn profile_csv(profile: &SolutionProfile) -> Result<String> {
    let mut out = String::new();
    out.push_str(PROFILE_HEADER);
    out.push('\n');
    for s in &profile.samples {
        let p_rad = profile.material.p_rad(s.delta, s.eta)?;
        let p_tan = profile.material.p_tan(s.delta, s.eta)?;
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt(s.r),
            fmt(s.delta),
            fmt(s.eta),
            fmt(s.m),
            fmt(s.rho(profile.k)),
            fmt(p_rad),
            fmt(p_tan)
        )
        .expect("string write");
    }
    Ok(out)
}

/// Per-body profile CSV for a whole distribution, with a body-index column
/// prepended.
pub fn distribution_csv(dist: &MatterDistribution) -> Result<String> {
    let mut out = String::new();
    out.push_str("body,");
    out.push_str(PROFILE_HEADER);
    out.push('\n');
    for (j, b) in dist.bodies.iter().enumerate() {
        let body_csv = profile_csv(&b.profile)?;
        for line in body_csv.lines().skip(1) {
            writeln!(out, "{j},{line}").expect("string write");
        }
    }
    Ok(out)
}

/// Structured summary of a distribution: per-body parameters and masses,
/// global mass and the interface radii. The notation mirrors the run
/// configuration format.
pub fn distribution_summary(dist: &MatterDistribution) -> String {
    let mut out = String::new();
    out.push_str("{\n  \"bodies\": [\n");
    for (j, b) in dist.bodies.iter().enumerate() {
        let lame = b.material.lame();
        out.push_str("    {\n");
        writeln!(out, "      \"family\": \"{}\",", b.material.family().name()).unwrap();
        writeln!(out, "      \"lambda\": {},", fmt(lame.lambda)).unwrap();
        writeln!(out, "      \"mu\": {},", fmt(lame.mu)).unwrap();
        writeln!(out, "      \"K\": {},", fmt(b.k)).unwrap();
        match b.s {
            Some(s) => writeln!(out, "      \"S\": {},", fmt(s)).unwrap(),
            None => writeln!(out, "      \"S\": null,").unwrap(),
        }
        writeln!(out, "      \"r_start\": {},", fmt(b.r_start)).unwrap();
        writeln!(out, "      \"r_end\": {},", fmt(b.r_end)).unwrap();
        writeln!(out, "      \"mass\": {}", fmt(b.total_mass)).unwrap();
        out.push_str(if j + 1 < dist.bodies.len() {
            "    },\n"
        } else {
            "    }\n"
        });
    }
    out.push_str("  ],\n");
    writeln!(out, "  \"total_mass\": {},", fmt(dist.total_mass())).unwrap();
    let radii: Vec<String> = dist.interface_radii().iter().map(|r| fmt(*r)).collect();
    writeln!(out, "  \"interface_radii\": [{}]", radii.join(", ")).unwrap();
    out.push_str("}\n");
    out
}

/// Orbit table of the autonomous system: `xi,u,y,z` rows.
pub fn orbit_csv(orbit: &[OrbitPoint]) -> String {
    let mut out = String::from("xi,u,y,z\n");
    for p in orbit {
        writeln!(
            out,
            "{},{},{},{}",
            fmt(p.xi),
            fmt(p.u),
            fmt(p.y),
            fmt(p.z)
        )
        .expect("string write");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{build_ball, MatterDistribution};
    use crate::equilibrium::IntegrationControls;
    use crate::materials::MaterialSpec;

    #[test]
    fn profile_csv_round_trips_exactly() {
        let spec = MaterialSpec::seth(1.0, 1.0).unwrap();
        let ball = build_ball(&spec, 1.0, 2.0, &IntegrationControls::default()).unwrap();
        let csv = profile_csv(&ball.profile).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), PROFILE_HEADER);
        for (line, s) in lines.zip(&ball.profile.samples) {
            let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            assert_eq!(cols[0], s.r);
            assert_eq!(cols[1], s.delta);
            assert_eq!(cols[2], s.eta);
            assert_eq!(cols[3], s.m);
        }
    }

    #[test]
    fn summary_is_valid_shape() {
        let spec = MaterialSpec::seth(1.0, 1.0).unwrap();
        let ball = build_ball(&spec, 1.0, 2.0, &IntegrationControls::default()).unwrap();
        let dist = MatterDistribution::from_ball(ball);
        let s = distribution_summary(&dist);
        assert!(s.contains("\"family\": \"seth\""));
        assert!(s.contains("\"total_mass\""));
        assert!(s.contains("\"S\": null"));
        let csv = distribution_csv(&dist).unwrap();
        assert!(csv.starts_with("body,r,delta"));
        assert!(csv.lines().nth(1).unwrap().starts_with("0,"));
    }
}
