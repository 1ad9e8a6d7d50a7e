//! Winding numbers of closed curves about a point.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::polyline::polyline_distance;
use crate::error::{Result, RosetteError};

/// Winding number of a closed curve about `point`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingResult {
    pub point: Complex64,
    pub winding: i64,
    pub min_distance_to_curve: f64,
}

fn closure_gap(curve: &[Complex64]) -> Result<()> {
    let (first, last) = match (curve.first(), curve.last()) {
        (Some(a), Some(b)) if curve.len() >= 3 => (*a, *b),
        _ => return Err(RosetteError::OpenCurve { gap: f64::INFINITY }),
    };
    let scale = curve.iter().map(|p| p.norm()).fold(1.0, f64::max);
    let gap = (first - last).norm();
    if gap > 1e-9 * scale {
        return Err(RosetteError::OpenCurve { gap });
    }
    Ok(())
}

/// Angle subtended at `w0` by the straight segment `[a, b]`, accumulated
/// over halves until each piece is below `pi/2`.
fn segment_angle(a: Complex64, b: Complex64, w0: Complex64, depth: u32) -> f64 {
    let inc = ((b - w0) / (a - w0)).arg();
    if inc.abs() < FRAC_PI_2 || depth >= 48 {
        return inc;
    }
    let m = (a + b) * 0.5;
    segment_angle(a, m, w0, depth + 1) + segment_angle(m, b, w0, depth + 1)
}

/// Winding number of the closed polyline `curve` (first point repeated at
/// the end) about `w0` by accumulated argument increments.
pub fn winding_number(
    curve: &[Complex64],
    w0: Complex64,
    exclusion_radius: f64,
) -> Result<WindingResult> {
    closure_gap(curve)?;
    let distance = polyline_distance(w0, curve);
    if distance <= exclusion_radius {
        return Err(RosetteError::TooCloseToCurve {
            distance,
            radius: exclusion_radius,
        });
    }
    let total: f64 = curve
        .windows(2)
        .map(|w| segment_angle(w[0], w[1], w0, 0))
        .sum();
    Ok(WindingResult {
        point: w0,
        winding: (total / (2.0 * PI)).round() as i64,
        min_distance_to_curve: distance,
    })
}

/// Winding number of a parametric closed curve on `[t0, t1]`, refining the
/// parameter until every argument increment is below `pi/2`.
pub fn winding_number_parametric<F>(
    curve: F,
    t0: f64,
    t1: f64,
    initial_samples: usize,
    w0: Complex64,
    exclusion_radius: f64,
) -> Result<WindingResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let start = curve(t0)?;
    let end = curve(t1)?;
    let scale = start.norm().max(1.0);
    if (start - end).norm() > 1e-9 * scale {
        return Err(RosetteError::OpenCurve {
            gap: (start - end).norm(),
        });
    }
    let mut min_dist = f64::INFINITY;
    let mut total = 0.0;
    let n = initial_samples.max(3);
    let h = (t1 - t0) / n as f64;
    let mut pa = start;
    for i in 0..n {
        let a = t0 + h * i as f64;
        let b = if i + 1 == n { t1 } else { a + h };
        let pb = if i + 1 == n { start } else { curve(b)? };
        total += param_angle(&curve, a, b, pa, pb, w0, 0, &mut min_dist)?;
        pa = pb;
    }
    if min_dist <= exclusion_radius {
        return Err(RosetteError::TooCloseToCurve {
            distance: min_dist,
            radius: exclusion_radius,
        });
    }
    Ok(WindingResult {
        point: w0,
        winding: (total / (2.0 * PI)).round() as i64,
        min_distance_to_curve: min_dist,
    })
}

#[allow(clippy::too_many_arguments)]
fn param_angle<F>(
    curve: &F,
    a: f64,
    b: f64,
    pa: Complex64,
    pb: Complex64,
    w0: Complex64,
    depth: u32,
    min_dist: &mut f64,
) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    *min_dist = min_dist.min((pa - w0).norm()).min((pb - w0).norm());
    let inc = ((pb - w0) / (pa - w0)).arg();
    if inc.abs() < FRAC_PI_2 || depth >= 48 {
        return Ok(inc);
    }
    let m = 0.5 * (a + b);
    let pm = curve(m)?;
    Ok(param_angle(curve, a, m, pa, pm, w0, depth + 1, min_dist)?
        + param_angle(curve, m, b, pm, pb, w0, depth + 1, min_dist)?)
}

/// Winding number by signed crossings of the ray to the right of `w0`.
/// Exact for points off the polyline; used for bulk membership tests.
pub fn crossing_winding(curve: &[Complex64], w0: Complex64) -> i64 {
    let mut wn = 0i64;
    for w in curve.windows(2) {
        let (a, b) = (w[0] - w0, w[1] - w0);
        if a.im <= 0.0 {
            if b.im > 0.0 && (a.conj() * b).im > 0.0 {
                wn += 1;
            }
        } else if b.im <= 0.0 && (a.conj() * b).im < 0.0 {
            wn -= 1;
        }
    }
    wn
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(samples: usize) -> Vec<Complex64> {
        let mut pts: Vec<Complex64> = (0..samples)
            .map(|i| Complex64::from_polar(1.0, 2.0 * PI * i as f64 / samples as f64))
            .collect();
        pts.push(pts[0]);
        pts
    }

    #[test]
    fn unit_circle() {
        let c = circle(256);
        assert_eq!(
            winding_number(&c, Complex64::new(0.0, 0.0), 1e-6)
                .unwrap()
                .winding,
            1
        );
        assert_eq!(
            winding_number(&c, Complex64::new(2.0, 0.0), 1e-6)
                .unwrap()
                .winding,
            0
        );
        let rev: Vec<Complex64> = c.iter().rev().copied().collect();
        assert_eq!(
            winding_number(&rev, Complex64::new(0.1, 0.2), 1e-6)
                .unwrap()
                .winding,
            -1
        );
    }

    #[test]
    fn coarse_polygon_needs_subdivision() {
        let tri = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(-0.5, 0.9),
            Complex64::new(-0.5, -0.9),
            Complex64::new(1.0, 0.0),
        ];
        assert_eq!(
            winding_number(&tri, Complex64::new(0.0, 0.0), 1e-9)
                .unwrap()
                .winding,
            1
        );
    }

    #[test]
    fn errors() {
        let c = circle(64);
        assert!(matches!(
            winding_number(&c, Complex64::new(1.0, 0.0), 1e-6),
            Err(RosetteError::TooCloseToCurve { .. })
        ));
        let open = &c[..40];
        assert!(matches!(
            winding_number(open, Complex64::new(0.0, 0.0), 1e-6),
            Err(RosetteError::OpenCurve { .. })
        ));
    }

    #[test]
    fn refinement_invariance_and_crossing_agreement() {
        for &p in &[
            Complex64::new(0.3, -0.2),
            Complex64::new(1.5, 0.1),
            Complex64::new(-0.99, 0.0),
        ] {
            let a = winding_number(&circle(64), p, 1e-9).unwrap().winding;
            let b = winding_number(&circle(128), p, 1e-9).unwrap().winding;
            assert_eq!(a, b);
            assert_eq!(a, crossing_winding(&circle(64), p));
        }
    }

    #[test]
    fn parametric_circle() {
        let f = |t: f64| Ok(Complex64::from_polar(1.0, 2.0 * t));
        let r =
            winding_number_parametric(f, 0.0, 2.0 * PI, 3, Complex64::new(0.2, 0.0), 1e-6).unwrap();
        assert_eq!(r.winding, 2);
    }
}
