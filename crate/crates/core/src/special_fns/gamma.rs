//! Real Gamma function via the Lanczos approximation.
//!
//! Coefficient set: g = 7, nine terms (the Godfrey set also used by the GNU
//! Scientific Library sample code). On `[0.5, 3]` the relative error stays
//! below `2e-15`.

#![allow(clippy::excessive_precision)]
//! Arguments below `1/2` go through the reflection formula.

use std::f64::consts::PI;

use crate::error::{Result, RosetteError};

const LANCZOS_G: f64 = 7.0;

const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for strictly positive real arguments.
pub fn gamma_real(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || !x.is_finite() {
        return Err(RosetteError::Domain {
            value: x,
            reason: "gamma_real requires a finite positive argument",
        });
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * lanczos(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}
