//! The boundary curve `alpha_beta(t) = f_beta(e^{it})` and its geometry.
//!
//! The parameter circle splits into petal intervals
//! `((2k - 2) pi/n, 2k pi/n)`. Inside each one the tangent turns at the
//! constant rate `-(n/2 - 1)`, the curve has a cusp at every `2k pi/n`, and
//! its tangent is continuous through the midpoint `(2k - 1) pi/n`.

mod closed_form;
mod detect;
mod features;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle;
use crate::error::{Result, RosetteError};
use crate::mapping::{RosetteMap, RosetteParams, SINGULAR_TOL};

pub use closed_form::{
    cusp_magnitude, half_pi_node_arg, half_pi_node_magnitude, node_magnitude, node_tangent_arg,
};
pub use detect::{detect_tangent_jumps, hypocycloid_features, TangentJump};
pub use features::{extract_features, tangent_limits, TangentLimits};

/// One sample of the boundary curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub t: f64,
    pub value: Complex64,
    /// `None` at multiples of `pi/n`.
    pub d_value: Option<Complex64>,
    /// `None` at multiples of `pi/n` and where the derivative vanishes.
    pub d_arg: Option<f64>,
    pub d_mag: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeatureKind {
    Cusp,
    RemovableNode,
    Node,
}

/// A cusp or node of the boundary curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryFeature {
    pub kind: FeatureKind,
    /// Parameter, a multiple of `pi/n` in `[0, 2 pi)`.
    pub t: f64,
    pub location: Complex64,
    pub magnitude: f64,
    pub argument: f64,
    /// Direction of the cusp axis (cusps only).
    pub axis_arg: Option<f64>,
    /// Interior angle (nodes of `f_{pi/2}` only).
    pub interior_angle: Option<f64>,
    /// Common tangent direction (removable nodes only).
    pub tangent_arg: Option<f64>,
    /// One-sided tangent limits, estimated numerically.
    pub left_tangent_arg: f64,
    pub right_tangent_arg: f64,
    /// `right - left`, wrapped into `(-pi, pi]`.
    pub exterior_angle: f64,
}

/// All features of one rosette boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureReport {
    pub params: RosetteParams,
    /// Sorted by `t`.
    pub features: Vec<BoundaryFeature>,
    /// Angular gap from each feature to the next, cyclically.
    pub separations: Vec<f64>,
    pub total_curvature_per_petal: f64,
}

/// The exact derivative of the boundary curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryDerivative {
    pub d_value: Complex64,
    pub d_arg: Option<f64>,
    pub d_mag: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeparationSign {
    NodeAfterCusp,
    CuspAfterNode,
}

/// Analytic and sampled total turning of the tangent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Curvature {
    pub analytic: f64,
    pub numerical: f64,
}

/// Outcome of the argument monotonicity scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonMonotonicity {
    pub found: bool,
    pub witness_t: Option<f64>,
}

/// Position of `t` relative to the petal intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Locus {
    /// Nearest multiple of `pi/n`, as an index.
    pub j: i64,
    /// `t - j pi/n`.
    pub tau: f64,
    /// Petal index `k` with `t` in `((2k - 2) pi/n, 2k pi/n]`.
    pub k: i64,
    pub first_half: bool,
}

pub(crate) fn locate(n: u32, t: f64) -> Locus {
    let nf = f64::from(n);
    let q = t * nf / PI;
    let j = q.round();
    let tau = t - j * PI / nf;
    let c = q.ceil() as i64;
    Locus {
        j: j as i64,
        tau,
        k: (c + 1).div_euclid(2),
        first_half: c.rem_euclid(2) == 1,
    }
}

/// `alpha_beta(t) = f_beta(e^{it})`.
pub fn boundary_point(map: &RosetteMap, t: f64) -> Result<Complex64> {
    map.f_polar(1.0, t).map(|v| v.f)
}

/// The tangent argument `k pi - (n/2 - 1) t` on petal `k`, unwrapped.
pub fn compass_arg(n: u32, t: f64) -> f64 {
    let k = locate(n, t).k;
    k as f64 * PI - (0.5 * f64::from(n) - 1.0) * t
}

/// `alpha_beta'(t)` from the closed-form derivatives, with magnitude and
/// argument from the petal formulas.
pub fn boundary_derivative(map: &RosetteMap, t: f64) -> Result<BoundaryDerivative> {
    let params = map.params();
    if !params.is_canonical() {
        return Err(RosetteError::NonCanonicalBeta { beta: params.beta });
    }
    let n = params.n;
    let nf = params.nf();
    let loc = locate(n, t);
    let half = (nf * loc.tau).sin();
    let v = Complex64::new(2.0 * half * half, -(2.0 * nf * loc.tau).sin());
    let v_abs = v.norm();
    if v_abs < SINGULAR_TOL || !t.is_finite() {
        return Err(RosetteError::SingularParameter { t });
    }
    let z = Complex64::from_polar(1.0, t);
    let dh = v.sqrt().inv();
    let dg = Complex64::from_polar(1.0, (nf - 2.0) * t) * dh;
    let rot = Complex64::from_polar(1.0, 0.5 * params.beta);
    let iz = Complex64::i() * z;
    let d_value = rot * iz * dh + (rot * iz * dg).conj();

    let sign = if loc.first_half { 1.0 } else { -1.0 };
    let s = (1.0 + sign * params.beta.sin()).max(0.0);
    let d_mag = std::f64::consts::SQRT_2 * s.sqrt() / v_abs.sqrt();
    let d_arg = if d_mag > 0.0 {
        Some(angle::wrap(compass_arg(n, t)))
    } else {
        None
    };
    Ok(BoundaryDerivative {
        d_value,
        d_arg,
        d_mag,
    })
}

/// Value and derivative at `t`; the derivative fields are empty at
/// multiples of `pi/n`.
pub fn sample(map: &RosetteMap, t: f64) -> Result<CurveSample> {
    let value = boundary_point(map, t)?;
    match boundary_derivative(map, t) {
        Ok(d) => Ok(CurveSample {
            t,
            value,
            d_value: Some(d.d_value),
            d_arg: d.d_arg,
            d_mag: d.d_mag,
        }),
        Err(RosetteError::SingularParameter { .. }) => Ok(CurveSample {
            t,
            value,
            d_value: None,
            d_arg: None,
            d_mag: f64::INFINITY,
        }),
        Err(e) => Err(e),
    }
}

/// Uniform samples at `t_i = 2 pi (i + 1/2) / count`.
pub fn sample_boundary(map: &RosetteMap, count: usize) -> Result<Vec<CurveSample>> {
    (0..count)
        .map(|i| sample(map, 2.0 * PI * (i as f64 + 0.5) / count as f64))
        .collect()
}

/// Angle at the origin between a cusp and its neighbouring node.
pub fn separation_angle(params: &RosetteParams, sign: SeparationSign) -> f64 {
    let nf = params.nf();
    let t = (PI / (2.0 * nf)).tan();
    let offset = (2.0 * t * params.beta.sin() / (1.0 - t * t)).atan();
    match sign {
        SeparationSign::NodeAfterCusp => PI / nf + offset,
        SeparationSign::CuspAfterNode => PI / nf - offset,
    }
}

/// Total turning of the tangent over `[t0, t1]`.
///
/// The tangent turns clockwise; the returned values are the absolute
/// turning angle.
pub fn total_curvature(map: &RosetteMap, t0: f64, t1: f64) -> Result<Curvature> {
    let params = map.params();
    if !params.is_canonical() {
        return Err(RosetteError::NonCanonicalBeta { beta: params.beta });
    }
    let nf = params.nf();
    let crosses = || RosetteError::IntervalCrossesCusp { t0, t1 };
    if t0.is_nan() || t1.is_nan() || t1 <= t0 {
        return Err(crosses());
    }
    let step = 2.0 * PI / nf;
    let k = ((t0 / step) + 1e-12).floor();
    let start = k * step;
    let end = if params.is_half_pi() {
        start + 0.5 * step
    } else {
        start + step
    };
    let slack = 1e-12 * (1.0 + t1.abs());
    if t0 < start - slack || t1 > end + slack {
        return Err(crosses());
    }
    let analytic = (0.5 * nf - 1.0) * (t1 - t0);

    let a = t0 + 1e-9;
    let b = t1 - 1e-9;
    let samples = 4000;
    let mut prev: Option<f64> = None;
    let mut turning = 0.0;
    for i in 0..=samples {
        let t = a + (b - a) * i as f64 / samples as f64;
        let d = match boundary_derivative(map, t) {
            Ok(d) => d.d_value,
            Err(RosetteError::SingularParameter { .. }) => continue,
            Err(e) => return Err(e),
        };
        let arg = d.arg();
        if let Some(p) = prev {
            turning += angle::diff(arg, p);
        }
        prev = Some(arg);
    }
    Ok(Curvature {
        analytic,
        numerical: -turning,
    })
}

/// `alpha_{pi/2}` traversed at half speed over its non-constant halves:
/// `alpha((k - 1) pi/n + t/2)` for `t` in `[(2k - 2) pi/n, 2k pi/n)`.
pub fn halfspeed_reparam(map: &RosetteMap, t: f64) -> Result<Complex64> {
    boundary_point(map, halfspeed_parameter(map, t)?)
}

/// The original parameter behind `halfspeed_reparam(t)`.
pub fn halfspeed_parameter(map: &RosetteMap, t: f64) -> Result<f64> {
    let params = map.params();
    if !params.is_half_pi() {
        return Err(RosetteError::WrongBeta { beta: params.beta });
    }
    let nf = params.nf();
    let step = 2.0 * PI / nf;
    let k = (t / step).floor() + 1.0;
    Ok((k - 1.0) * PI / nf + 0.5 * t)
}

/// Scans the unwrapped argument of `alpha_beta` over one petal period for
/// a strict decrease.
pub fn detect_arg_nonmonotonicity(map: &RosetteMap) -> Result<NonMonotonicity> {
    let nf = map.params().nf();
    let period = 2.0 * PI / nf;
    let mut ts: Vec<f64> = (0..=8192).map(|i| period * i as f64 / 8192.0).collect();
    for e in 0..=120 {
        let d = 10f64.powf(-7.0 + 5.0 * e as f64 / 120.0);
        ts.push(d);
        ts.push(period - d);
        ts.push(0.5 * period - d);
        ts.push(0.5 * period + d);
    }
    ts.sort_by(|a, b| a.total_cmp(b));
    ts.dedup();
    let mut prev_t = ts[0];
    let mut prev = boundary_point(map, prev_t)?.arg();
    for &t in &ts[1..] {
        let a = prev + angle::diff(boundary_point(map, t)?.arg(), prev);
        if a < prev - 1e-10 {
            return Ok(NonMonotonicity {
                found: true,
                witness_t: Some(0.5 * (prev_t + t)),
            });
        }
        prev = a;
        prev_t = t;
    }
    Ok(NonMonotonicity {
        found: false,
        witness_t: None,
    })
}
