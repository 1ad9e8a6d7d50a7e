//! Fundamental sets and the reconstruction of `f(closed disk)` from `n`
//! rotated copies.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::polyline::{flatten, polyline_distance};
use super::winding::crossing_winding;
use super::{CheckResult, IDENTITY_TOL};
use crate::angle;
use crate::error::Result;
use crate::mapping::{RosetteMap, RosetteParams};

/// Membership tolerance at shared boundaries, in units of `K_n`.
pub const BOUNDARY_TOL_FACTOR: f64 = 1e-6;

/// Image of the closed sector `0 <= arg z < 2 pi/n` under a canonical map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FundamentalSet {
    pub params: RosetteParams,
    /// Half-open argument interval of the sector.
    pub sector: (f64, f64),
    /// Image of the sector boundary: ray at 0, arc, ray at `2 pi/n` back to 0.
    pub boundary_polyline: Vec<Complex64>,
    /// Corners of the axis-aligned bounding box.
    pub bounds: (Complex64, Complex64),
}

fn bounds(pts: &[Complex64]) -> (Complex64, Complex64) {
    pts.iter().fold(
        (
            Complex64::new(f64::INFINITY, f64::INFINITY),
            Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        ),
        |(lo, hi), p| {
            (
                Complex64::new(lo.re.min(p.re), lo.im.min(p.im)),
                Complex64::new(hi.re.max(p.re), hi.im.max(p.im)),
            )
        },
    )
}

impl FundamentalSet {
    /// Builds the set for a canonical `beta`.
    pub fn new(map: &RosetteMap) -> Result<Self> {
        Self::with_tolerance(map, 1e-8 * map.k_n())
    }

    /// As [`FundamentalSet::new`] with chord deviation at most `tol`.
    pub fn with_tolerance(map: &RosetteMap, tol: f64) -> Result<Self> {
        let params = map.params();
        let nf = params.nf();
        let top = 2.0 * PI / nf;
        let mut pts = flatten(|r| map.f_polar(r, 0.0).map(|v| v.f), 0.0, 1.0, 128, tol)?;
        let arc = flatten(|t| map.f_polar(1.0, t).map(|v| v.f), 0.0, top, 512, tol)?;
        pts.extend_from_slice(&arc[1..]);
        let back = flatten(
            |r| map.f_polar(1.0 - r, top).map(|v| v.f),
            0.0,
            1.0,
            128,
            tol,
        )?;
        pts.extend_from_slice(&back[1..]);
        let first = pts[0];
        if let Some(last) = pts.last_mut() {
            *last = first;
        }
        Ok(Self {
            params,
            sector: (0.0, top),
            bounds: bounds(&pts),
            boundary_polyline: pts,
        })
    }

    /// `1` strictly inside, `0` strictly outside, `None` within `tol` of the
    /// boundary.
    pub fn classify(&self, w: Complex64, tol: f64) -> Option<bool> {
        let (lo, hi) = self.bounds;
        if w.re < lo.re - tol || w.im < lo.im - tol || w.re > hi.re + tol || w.im > hi.im + tol {
            return Some(false);
        }
        if polyline_distance(w, &self.boundary_polyline) <= tol {
            return None;
        }
        Some(crossing_winding(&self.boundary_polyline, w) != 0)
    }
}

/// One rotated copy `rotation * A_{beta,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotatedCopy {
    pub k: u32,
    pub rotation: Complex64,
}

/// Fundamental set, its rotations and the tiling checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Parameters as given, with any real `beta`.
    pub params: RosetteParams,
    pub reduction: i64,
    pub set: FundamentalSet,
    pub copies: Vec<RotatedCopy>,
    pub checks: Vec<CheckResult>,
}

impl Decomposition {
    /// Boundary of copy `index` in the image plane.
    pub fn copy_polyline(&self, index: usize) -> Vec<Complex64> {
        let rot = self.copies[index].rotation;
        self.set.boundary_polyline.iter().map(|p| rot * p).collect()
    }
}

/// Rotations `i^l e^{i(2k + l) pi/n}` for `k = 1..=n`.
pub fn copy_rotations(n: u32, l: i64) -> Vec<RotatedCopy> {
    let nf = f64::from(n);
    let lf = l as f64;
    (1..=n)
        .map(|k| RotatedCopy {
            k,
            rotation: Complex64::from_polar(
                1.0,
                lf * FRAC_PI_2 + (2.0 * f64::from(k) + lf) * PI / nf,
            ),
        })
        .collect()
}

fn disk_grid(grid: usize) -> Vec<Complex64> {
    let g = grid.max(2);
    let mut out = Vec::with_capacity(g * g);
    for i in 0..g {
        for j in 0..g {
            let z = Complex64::new(
                -1.0 + 2.0 * i as f64 / (g - 1) as f64,
                -1.0 + 2.0 * j as f64 / (g - 1) as f64,
            );
            if z.norm() <= 1.0 {
                out.push(z);
            }
        }
    }
    out
}

/// Builds `A_{beta,n}` for the canonical angle of `params`, its `n`
/// rotations, and checks that they tile the image of the closed disk
/// under `f_{params.beta}`.
pub fn fundamental_decomposition(params: RosetteParams, grid: usize) -> Result<Decomposition> {
    let (canonical, l) = params.canonical();
    let target = RosetteMap::new(params)?;
    let map = target.with_beta(canonical.beta);
    let n = params.n;
    let nf = params.nf();
    let k = map.k_n();
    let tol = BOUNDARY_TOL_FACTOR * k;
    let set = FundamentalSet::new(&map)?;
    let copies = copy_rotations(n, l);
    let mut checks = Vec::new();

    let probes = disk_grid(grid);
    let mut bad = 0usize;
    let mut worst = 0usize;
    for &z in &probes {
        let w = target.f(z)?.f;
        let (mut inside, mut near) = (0usize, 0usize);
        for c in &copies {
            match set.classify(c.rotation.conj() * w, tol) {
                Some(true) => inside += 1,
                Some(false) => {}
                None => near += 1,
            }
        }
        if inside > 1 || (inside == 0 && near == 0) {
            bad += 1;
            worst = worst.max(inside);
        }
    }
    checks.push(CheckResult::new(
        "union_coverage",
        bad == 0,
        bad as f64,
        probes.len(),
    ));

    let mut overlaps = 0usize;
    let mut count = 0usize;
    let top = 2.0 * PI / nf;
    for i in 1..24 {
        for j in 1..24 {
            let r = i as f64 / 24.0;
            let z = Complex64::from_polar(r, top * j as f64 / 24.0);
            let w = map.f(z)?.f;
            for m in 1..n {
                let rot = Complex64::from_polar(1.0, -2.0 * PI * f64::from(m) / nf);
                if set.classify(rot * w, tol) == Some(true) {
                    overlaps += 1;
                }
            }
            count += 1;
        }
    }
    checks.push(CheckResult::new(
        "interior_disjointness",
        overlaps == 0,
        overlaps as f64,
        count,
    ));

    let ray = |theta: f64| -> Result<f64> { Ok(map.f_polar(1e-6, theta)?.f.arg()) };
    let (a0, a1, a2) = (ray(0.0)?, ray(PI / nf)?, ray(top)?);
    let lower = angle::diff(a1, a0);
    let upper = angle::diff(a2, a1);
    let total = lower + upper;
    let residual = (lower - PI / nf)
        .abs()
        .max((upper - PI / nf).abs())
        .max((total - top).abs());
    checks.push(CheckResult::new(
        "origin_angles",
        residual < 1e-5,
        residual,
        3,
    ));

    if canonical.is_half_pi() {
        let r = 1.0 - 1e-12;
        let dir = |theta: f64| -> Result<f64> {
            let u = Complex64::from_polar(1.0, theta);
            Ok(map.directional_derivative(u * r, u)?.arg())
        };
        let bigon = angle::diff(dir(PI / nf)?, dir(top)?).abs();
        let residual = (bigon - (FRAC_PI_2 - PI / nf)).abs();
        checks.push(CheckResult::new(
            "bigon_node_angle",
            residual < 1e-4,
            residual,
            2,
        ));
    }

    if canonical.beta == 0.0 {
        let mirror = Complex64::from_polar(1.0, top);
        let mut worst = 0.0f64;
        let mut count = 0;
        for i in 1..=16 {
            for j in 0..=16 {
                let z = Complex64::from_polar(i as f64 / 16.0, PI / nf * j as f64 / 16.0);
                let lhs = map.f(mirror * z.conj())?.f;
                let rhs = mirror * map.f(z)?.f.conj();
                worst = worst.max((lhs - rhs).norm());
                count += 1;
            }
        }
        checks.push(CheckResult::new(
            "triangle_mirror",
            worst < IDENTITY_TOL,
            worst,
            count,
        ));
    }

    Ok(Decomposition {
        params,
        reduction: l,
        set,
        copies,
        checks,
    })
}
