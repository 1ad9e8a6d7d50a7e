//! Formula-driven feature extraction with numerical confirmation of the
//! one-sided tangents.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{boundary_derivative, boundary_point, BoundaryFeature, FeatureKind, FeatureReport};
use crate::angle;
use crate::error::{Result, RosetteError};
use crate::mapping::RosetteMap;

const OFFSETS: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// One-sided tangent directions of the boundary curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentLimits {
    pub left: f64,
    pub right: f64,
}

fn extrapolate(map: &RosetteMap, base: f64, side: f64) -> Result<f64> {
    let mut args = [0.0; 3];
    for (a, d) in args.iter_mut().zip(OFFSETS) {
        *a = boundary_derivative(map, base + side * d)?.d_value.arg();
    }
    let anchor = args[2];
    for a in &mut args {
        *a = anchor + angle::diff(*a, anchor);
    }
    let r1 = (10.0 * args[1] - args[0]) / 9.0;
    let r2 = (10.0 * args[2] - args[1]) / 9.0;
    Ok(angle::wrap((100.0 * r2 - r1) / 99.0))
}

/// Tangent direction arriving at `t_left` from below and leaving `t_right`
/// upwards, Richardson-extrapolated from offsets `1e-3, 1e-4, 1e-5`.
pub fn tangent_limits(map: &RosetteMap, t_left: f64, t_right: f64) -> Result<TangentLimits> {
    Ok(TangentLimits {
        left: extrapolate(map, t_left, -1.0)?,
        right: extrapolate(map, t_right, 1.0)?,
    })
}

/// Cusps and nodes of `alpha_beta` for canonical `beta`.
pub fn extract_features(map: &RosetteMap) -> Result<FeatureReport> {
    let params = map.params();
    if !params.is_canonical() {
        return Err(RosetteError::NonCanonicalBeta { beta: params.beta });
    }
    let n = params.n;
    let nf = params.nf();
    let mut features = Vec::new();
    if params.is_half_pi() {
        for k in 0..n {
            let t = f64::from(2 * k) * PI / nf;
            let location = boundary_point(map, t)?;
            let lim = tangent_limits(map, f64::from(2 * k) * PI / nf - PI / nf, t)?;
            let exterior = angle::diff(lim.right, lim.left);
            features.push(BoundaryFeature {
                kind: FeatureKind::Node,
                t,
                location,
                magnitude: location.norm(),
                argument: location.arg(),
                axis_arg: None,
                interior_angle: Some(PI - exterior.abs()),
                tangent_arg: None,
                left_tangent_arg: lim.left,
                right_tangent_arg: lim.right,
                exterior_angle: exterior,
            });
        }
    } else {
        for j in 0..2 * n {
            let t = f64::from(j) * PI / nf;
            let location = boundary_point(map, t)?;
            let lim = tangent_limits(map, t, t)?;
            let exterior = angle::diff(lim.right, lim.left);
            let cusp = j % 2 == 0;
            features.push(BoundaryFeature {
                kind: if cusp {
                    FeatureKind::Cusp
                } else {
                    FeatureKind::RemovableNode
                },
                t,
                location,
                magnitude: location.norm(),
                argument: location.arg(),
                axis_arg: cusp.then(|| angle::wrap(t)),
                interior_angle: None,
                tangent_arg: (!cusp).then(|| angle::wrap(lim.left + 0.5 * exterior)),
                left_tangent_arg: lim.left,
                right_tangent_arg: lim.right,
                exterior_angle: if cusp { exterior.abs() } else { exterior },
            });
        }
    }
    let m = features.len();
    let separations = (0..m)
        .map(|i| (features[(i + 1) % m].argument - features[i].argument).rem_euclid(2.0 * PI))
        .collect();
    let active = if params.is_half_pi() {
        PI / nf
    } else {
        2.0 * PI / nf
    };
    Ok(FeatureReport {
        params,
        features,
        separations,
        total_curvature_per_petal: (0.5 * nf - 1.0) * active,
    })
}
