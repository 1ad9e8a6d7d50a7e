//! Adaptive 7/15-point Gauss-Kronrod quadrature for complex integrands and
//! the integral representation of `h_n`, `g_n`.

#![allow(clippy::excessive_precision)]

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, RosetteError};
use crate::mapping::{one_minus_polar, RosetteMap};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let pair = f(c - x) + f(c + x);
        kron += pair * WGK[i];
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

/// Adaptive quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_intervals: usize,
) -> Result<Complex64> {
    let mut pending = vec![(a, b, gk15(&f, a, b))];
    let mut total = Complex64::new(0.0, 0.0);
    let mut accepted = 0usize;
    while let Some((lo, hi, (val, err))) = pending.pop() {
        let width_share = (hi - lo) / (b - a);
        if err <= tol * width_share || hi - lo < 1e-14 * (b - a).abs() {
            total += val;
            accepted += 1;
            continue;
        }
        if accepted + pending.len() + 2 > max_intervals {
            let estimate = err + pending.iter().map(|p| p.2 .1).sum::<f64>();
            return Err(RosetteError::QuadratureFailure {
                estimate,
                intervals: accepted + pending.len() + 1,
            });
        }
        let mid = 0.5 * (lo + hi);
        pending.push((lo, mid, gk15(&f, lo, mid)));
        pending.push((mid, hi, gk15(&f, mid, hi)));
    }
    Ok(total)
}

/// Which integral identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Identity {
    /// `int_0^z d zeta / sqrt(1 - zeta^{2n}) = h_n(z)`.
    Analytic,
    /// `int_0^z zeta^{n-2} d zeta / sqrt(1 - zeta^{2n}) = g_n(z)`.
    CoAnalytic,
}

/// Quadrature and series sides of an integral identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

/// Compares the quadrature of the derivative along `[0, z]` with the series
/// value. The path is parametrised as `zeta = z (1 - u^2)`, which removes the
/// inverse square-root singularity when `z` is a root of unity.
pub fn integral_oracle(map: &RosetteMap, z: Complex64, identity: Identity) -> Result<OracleResult> {
    let n = map.n();
    let two_n = 2.0 * f64::from(n);
    let (r, theta) = z.to_polar();
    if r > 1.0 + crate::special_fns::EPS_DOMAIN {
        return Err(RosetteError::Domain {
            value: r,
            reason: "integration endpoint lies outside the closed unit disk",
        });
    }
    let rhs = match identity {
        Identity::Analytic => map.h(z)?,
        Identity::CoAnalytic => map.g(z)?,
    };
    if r == 0.0 {
        return Ok(OracleResult {
            lhs: Complex64::new(0.0, 0.0),
            rhs,
            residual: rhs.norm(),
        });
    }
    let r = r.min(1.0);
    let nf = f64::from(n);
    let j = (theta * nf / std::f64::consts::PI).round();
    let phi = two_n * (theta - j * std::f64::consts::PI / nf);
    let log_r_2n = two_n * r.ln();
    let w = Complex64::from_polar(log_r_2n.exp(), phi);
    let v = one_minus_polar(r, log_r_2n, phi);
    let integrand = |u: f64| {
        let s = 1.0 - u * u;
        // 1 - (z s)^{2n} = (1 - w) + w (1 - s^{2n})
        let q = -(two_n * (-u * u).ln_1p()).exp_m1();
        let root = (v + w * q).sqrt();
        let weight = z * (2.0 * u);
        match identity {
            Identity::Analytic => weight / root,
            Identity::CoAnalytic => weight * (z * s).powu(n - 2) / root,
        }
    };
    let lhs = integrate(integrand, 0.0, 1.0, 1e-13, 20_000)?;
    Ok(OracleResult {
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
    })
}
