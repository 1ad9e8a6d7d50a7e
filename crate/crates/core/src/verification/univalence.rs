//! Boundary-based univalence certificate: a simple, positively oriented
//! boundary polyline, and winding numbers of interior and exterior probes.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::polyline::{flatten, self_intersections, signed_area};
use super::winding::winding_number;
use super::{CheckResult, EXCLUSION_FACTOR};
use crate::boundary::{boundary_point, halfspeed_reparam};
use crate::error::{Result, RosetteError};
use crate::mapping::{RosetteMap, RosetteParams};

/// Minimum number of boundary segments.
pub const MIN_SEGMENTS: usize = 4096;

/// Outcome of [`univalence_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct UnivalenceScan {
    pub polyline: Vec<Complex64>,
    pub checks: Vec<CheckResult>,
}

/// Closed boundary polyline of a canonical map, with every multiple of
/// `pi/n` on a vertex. `f_{pi/2}` is traced at half speed so the constant
/// halves do not produce degenerate segments.
pub fn boundary_polyline(map: &RosetteMap) -> Result<Vec<Complex64>> {
    let params = map.params();
    if !params.is_canonical() {
        return Err(RosetteError::NonCanonicalBeta { beta: params.beta });
    }
    let per = 2 * params.n as usize;
    let segments = MIN_SEGMENTS.div_ceil(per) * per;
    let tol = 1e-7 * map.k_n();
    let mut pts = if params.is_half_pi() {
        flatten(|t| halfspeed_reparam(map, t), 0.0, 2.0 * PI, segments, tol)?
    } else {
        flatten(|t| boundary_point(map, t), 0.0, 2.0 * PI, segments, tol)?
    };
    let first = pts[0];
    if let Some(last) = pts.last_mut() {
        *last = first;
    }
    Ok(pts)
}

/// Radius of the smallest origin-centred disk containing the image.
pub fn image_radius(params: &RosetteParams, k_n: f64) -> f64 {
    k_n * (1.0 + (PI / (2.0 * params.nf())).tan())
}

/// Univalence checks on an `grid x grid` lattice clipped to `|z| <= 0.95`.
pub fn univalence_scan(params: RosetteParams, grid: usize) -> Result<UnivalenceScan> {
    let map = RosetteMap::new(params)?;
    let k = map.k_n();
    let poly = boundary_polyline(&map)?;
    let m = poly.len() - 1;
    let mut checks = Vec::new();

    let hits = self_intersections(&poly, 16);
    checks.push(CheckResult::new(
        "boundary_simple",
        hits.is_empty(),
        hits.len() as f64,
        m,
    ));

    let area = signed_area(&poly);
    checks.push(CheckResult::new(
        "boundary_positive_orientation",
        area > 0.0,
        area,
        m,
    ));

    let exclusion = EXCLUSION_FACTOR * k;
    let mut images = Vec::new();
    let mut worst = 0i64;
    let mut too_close = 0usize;
    let g = grid.max(2);
    for i in 0..g {
        for j in 0..g {
            let z = Complex64::new(
                -1.0 + 2.0 * (i as f64 + 0.5) / g as f64,
                -1.0 + 2.0 * (j as f64 + 0.5) / g as f64,
            );
            if z.norm() > 0.95 {
                continue;
            }
            let w = map.f(z)?.f;
            match winding_number(&poly, w, exclusion) {
                Ok(r) => worst = worst.max((r.winding - 1).abs()),
                Err(RosetteError::TooCloseToCurve { .. }) => too_close += 1,
                Err(e) => return Err(e),
            }
            images.push(w);
        }
    }
    checks.push(CheckResult::new(
        "interior_winding_one",
        worst == 0 && too_close == 0,
        worst as f64 + too_close as f64,
        images.len(),
    ));

    let radius = image_radius(&params, k);
    let mut outside = 0i64;
    let mut probes = 0;
    for scale in [1.1, 2.0] {
        for i in 0..32 {
            let w = Complex64::from_polar(scale * radius, 2.0 * PI * (i as f64 + 0.25) / 32.0);
            outside = outside.max(winding_number(&poly, w, exclusion)?.winding.abs());
            probes += 1;
        }
    }
    checks.push(CheckResult::new(
        "exterior_winding_zero",
        outside == 0,
        outside as f64,
        probes,
    ));

    let mut min_sep = f64::INFINITY;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            min_sep = min_sep.min((images[a] - images[b]).norm());
        }
    }
    checks.push(CheckResult::new(
        "grid_images_distinct",
        min_sep > 0.0,
        min_sep,
        images.len(),
    ));

    Ok(UnivalenceScan {
        polyline: poly,
        checks,
    })
}
