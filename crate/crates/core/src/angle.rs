//! Angle helpers shared by the geometry and verification code.

use std::f64::consts::{PI, TAU};

/// Tolerance used for wrap-aware angle comparisons.
pub const ANGLE_TOL: f64 = 1e-9;

/// Reduces an angle into `(-pi, pi]`.
pub fn wrap(theta: f64) -> f64 {
    let mut r = theta.rem_euclid(TAU);
    if r > PI {
        r -= TAU;
    }
    r
}

/// Signed difference `a - b` reduced into `(-pi, pi]`.
pub fn diff(a: f64, b: f64) -> f64 {
    wrap(a - b)
}

/// Whether `a` and `b` agree modulo `2pi` within `tol`.
pub fn same(a: f64, b: f64, tol: f64) -> bool {
    diff(a, b).abs() <= tol
}

/// Whether two directions agree modulo `pi` (i.e. describe the same line).
pub fn same_line(a: f64, b: f64, tol: f64) -> bool {
    let d = (a - b).rem_euclid(PI);
    d <= tol || PI - d <= tol
}

/// Unwraps a sequence of principal arguments into a continuous sequence.
pub fn unwrap(args: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(args.len());
    let mut offset = 0.0;
    let mut prev: Option<f64> = None;
    for &a in args {
        if let Some(p) = prev {
            offset += diff(a, p) - (a - p);
        }
        out.push(a + offset);
        prev = Some(a);
    }
    out
}
