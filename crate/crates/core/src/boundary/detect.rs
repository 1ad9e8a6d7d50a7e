//! Curve-agnostic detection of tangent discontinuities from samples.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{BoundaryFeature, FeatureKind};
use crate::angle;
use crate::mapping::hypocycloid;

/// A located jump in the direction of a sampled curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentJump {
    pub t: f64,
    pub location: Complex64,
    pub left_arg: f64,
    pub right_arg: f64,
    /// `right_arg - left_arg`, wrapped.
    pub jump: f64,
}

fn chord<F: Fn(f64) -> Complex64>(curve: &F, a: f64, b: f64) -> f64 {
    (curve(b) - curve(a)).arg()
}

fn refine<F: Fn(f64) -> Complex64>(curve: &F, mut a: f64, mut b: f64) -> f64 {
    for _ in 0..200 {
        if b - a <= 1e-14 * (1.0 + a.abs()) {
            break;
        }
        let m = 0.5 * (a + b);
        let q1 = 0.5 * (a + m);
        let q3 = 0.5 * (m + b);
        let d = [
            chord(curve, a, q1),
            chord(curve, q1, m),
            chord(curve, m, q3),
            chord(curve, q3, b),
        ];
        let j = [
            angle::diff(d[1], d[0]).abs(),
            angle::diff(d[2], d[1]).abs(),
            angle::diff(d[3], d[2]).abs(),
        ];
        if j[1] >= j[0] && j[1] >= j[2] {
            (a, b) = (q1, q3);
        } else if j[0] >= j[2] {
            b = m;
        } else {
            a = m;
        }
    }
    0.5 * (a + b)
}

/// Finds parameters in `[t0, t1)` where the direction of the closed curve
/// `curve` (period `t1 - t0`) jumps by more than `threshold` radians.
pub fn detect_tangent_jumps<F: Fn(f64) -> Complex64>(
    curve: F,
    t0: f64,
    t1: f64,
    samples: usize,
    threshold: f64,
) -> Vec<TangentJump> {
    let period = t1 - t0;
    let h = period / samples as f64;
    let ts: Vec<f64> = (0..=samples).map(|i| t0 + h * i as f64).collect();
    let pts: Vec<Complex64> = ts.iter().map(|&t| curve(t)).collect();
    let chords: Vec<f64> = (0..samples).map(|i| (pts[i + 1] - pts[i]).arg()).collect();
    let mut found: Vec<TangentJump> = Vec::new();
    for i in 0..samples {
        let before = chords[(i + samples - 1) % samples];
        if angle::diff(chords[i], before).abs() <= threshold {
            continue;
        }
        let t = refine(&curve, ts[i] - h, ts[i] + h);
        let mut t = t0 + (t - t0).rem_euclid(period);
        if t1 - t < 1e-9 * period {
            t -= period;
        }
        let dup = found.iter().any(|f| {
            let d = (f.t - t).abs();
            d.min(period - d) < 1e-8
        });
        if dup {
            continue;
        }
        let eps = 1e-5 * period;
        let left_arg = chord(&curve, t - eps, t);
        let right_arg = chord(&curve, t, t + eps);
        found.push(TangentJump {
            t,
            location: curve(t),
            left_arg,
            right_arg,
            jump: angle::diff(right_arg, left_arg),
        });
    }
    found.sort_by(|a, b| a.t.total_cmp(&b.t));
    found
}

/// Cusps of the hypocycloid `z + conj(z)^{n-1}/(n-1)` on `|z| = 1`, found
/// by the sampled-tangent detector.
pub fn hypocycloid_features(n: u32) -> Vec<BoundaryFeature> {
    let curve = |t: f64| hypocycloid(n, Complex64::from_polar(1.0, t));
    detect_tangent_jumps(curve, 0.0, 2.0 * PI, 4096, 0.2)
        .into_iter()
        .map(|j| {
            let cusp = (j.jump.abs() - PI).abs() < 0.1;
            BoundaryFeature {
                kind: if cusp {
                    FeatureKind::Cusp
                } else {
                    FeatureKind::Node
                },
                t: j.t,
                location: j.location,
                magnitude: j.location.norm(),
                argument: j.location.arg(),
                axis_arg: cusp.then(|| angle::wrap(j.left_arg)),
                interior_angle: (!cusp).then(|| PI - j.jump.abs()),
                tangent_arg: None,
                left_tangent_arg: j.left_arg,
                right_tangent_arg: j.right_arg,
                exterior_angle: j.jump,
            }
        })
        .collect()
}
