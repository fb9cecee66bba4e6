//! Bracketed scalar root finding.

use crate::error::Error;
use crate::Result;

/// Stopping controls for [`brent`].
#[derive(Debug, Clone, Copy)]
pub struct BrentControls {
    /// Absolute tolerance on the bracket width.
    pub x_abs_tol: f64,
    /// Relative tolerance on the bracket width.
    pub x_rel_tol: f64,
    pub max_iter: usize,
}

impl Default for BrentControls {
    fn default() -> Self {
        Self {
            x_abs_tol: 0.0,
            x_rel_tol: 4.0 * f64::EPSILON,
            max_iter: 200,
        }
    }
}

/// Brent's method: bisection with inverse-quadratic / secant acceleration.
///
/// Requires `f(a)` and `f(b)` of opposite sign (either endpoint may be an
/// exact zero).
pub fn brent<F>(mut f: F, a: f64, b: f64, controls: BrentControls) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut a = a;
    let mut b = b;
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Domain(format!(
            "brent: no sign change on [{a}, {b}] (f = {fa}, {fb})"
        )));
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut mflag = true;
    for _ in 0..controls.max_iter {
        let tol = controls.x_abs_tol + controls.x_rel_tol * b.abs();
        if fb == 0.0 || (b - a).abs() <= tol {
            return Ok(b);
        }
        let mut s = if fa != fc && fb != fc {
            // inverse quadratic interpolation
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lo = (3.0 * a + b) / 4.0;
        let within = (s > lo.min(b) && s < lo.max(b)) || (s > b.min(lo) && s < b.max(lo));
        let cond = !within
            || (mflag && (s - b).abs() >= (b - c).abs() / 2.0)
            || (!mflag && (s - b).abs() >= (c - d).abs() / 2.0)
            || (mflag && (b - c).abs() < tol)
            || (!mflag && (c - d).abs() < tol);
        if cond {
            s = 0.5 * (a + b);
            mflag = true;
        } else {
            mflag = false;
        }
        let fs = f(s)?;
        d = c;
        c = b;
        fc = fb;
        if fa.signum() != fs.signum() {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Ok(b)
}

/// Scan `[lo, hi]` on a log-spaced grid and return all sign-change brackets.
pub fn scan_brackets<F>(mut f: F, lo: f64, hi: f64, n: usize) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut out = Vec::new();
    let (llo, lhi) = (lo.ln(), hi.ln());
    let mut prev_x = lo;
    let mut prev_f = f(lo)?;
    if prev_f == 0.0 {
        out.push((lo, lo));
    }
    for i in 1..=n {
        let x = (llo + (lhi - llo) * i as f64 / n as f64).exp();
        let fx = f(x)?;
        if fx == 0.0 {
            // exact zero at a grid node: degenerate bracket, counted once
            out.push((x, x));
        } else if prev_f != 0.0 && prev_f.signum() != fx.signum() {
            out.push((prev_x, x));
        }
        prev_x = x;
        prev_f = fx;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_simple_roots() {
        let r = brent(|x| Ok(x * x - 2.0), 0.0, 2.0, BrentControls::default()).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        let r = brent(|x| Ok(x.cos()), 0.0, 3.0, BrentControls::default()).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn rejects_unbracketed() {
        assert!(brent(|x| Ok(x * x + 1.0), -1.0, 1.0, BrentControls::default()).is_err());
    }

    #[test]
    fn scan_finds_all_brackets() {
        // roots at 1 and 100 in log space
        let brackets = scan_brackets(|x| Ok((x - 1.0) * (x - 100.0)), 0.01, 1e4, 400).unwrap();
        assert_eq!(brackets.len(), 2);
    }
}
