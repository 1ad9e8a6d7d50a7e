//! Closed forms for feature positions, built on the Gamma-function value
//! of `K_n`. These serve as reference values for the numerically
//! evaluated boundary.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::special_fns::k_n;

fn half_tan(n: u32) -> f64 {
    (PI / (2.0 * f64::from(n))).tan()
}

/// `|f_beta(1)| = K_n sqrt(sec^2(pi/2n) + 2 tan(pi/2n) cos beta)`.
pub fn cusp_magnitude(n: u32, beta: f64) -> f64 {
    let t = half_tan(n);
    k_n(n) * (1.0 + t * t + 2.0 * t * beta.cos()).sqrt()
}

/// `|f_beta(e^{i pi/n})| = K_n sqrt(sec^2(pi/2n) - 2 tan(pi/2n) cos beta)`.
pub fn node_magnitude(n: u32, beta: f64) -> f64 {
    let t = half_tan(n);
    k_n(n) * (1.0 + t * t - 2.0 * t * beta.cos()).sqrt()
}

/// Tangent direction at the removable node `t = (2k - 1) pi/n`.
pub fn node_tangent_arg(n: u32, k: i64) -> f64 {
    FRAC_PI_2 + (2 * k - 1) as f64 * PI / f64::from(n)
}

/// `|f_{pi/2}(1)| = K_n sec(pi/2n)`.
pub fn half_pi_node_magnitude(n: u32) -> f64 {
    k_n(n) / (PI / (2.0 * f64::from(n))).cos()
}

/// `arg f_{pi/2}(1) = pi/4 - pi/2n`.
pub fn half_pi_node_arg(n: u32) -> f64 {
    FRAC_PI_4 - PI / (2.0 * f64::from(n))
}
