//! Numerical certification of the global properties of rosette mappings:
//! univalence, symmetry identities, integral representations and the
//! reconstruction from fundamental sets.

mod fundamental;
mod polyline;
mod quadrature;
mod symmetry;
mod univalence;
mod winding;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::mapping::{RosetteMap, RosetteParams};

pub use fundamental::{
    copy_rotations, fundamental_decomposition, Decomposition, FundamentalSet, RotatedCopy,
    BOUNDARY_TOL_FACTOR,
};
pub use polyline::{
    flatten, polyline_distance, segment_distance, segments_intersect, self_intersections,
    signed_area,
};
pub use quadrature::{integral_oracle, integrate, Identity, OracleResult};
pub use symmetry::{disk_samples, symmetry_suite, IDENTITY_TOL};
pub use univalence::{
    boundary_polyline, image_radius, univalence_scan, UnivalenceScan, MIN_SEGMENTS,
};
pub use winding::{crossing_winding, winding_number, winding_number_parametric, WindingResult};

/// Version of the serialized report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Relative exclusion radius for winding probes, in units of `K_n`.
pub const EXCLUSION_FACTOR: f64 = 1e-6;

/// One named check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub max_residual: f64,
    pub samples: usize,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, passed: bool, max_residual: f64, samples: usize) -> Self {
        Self {
            name: name.into(),
            passed,
            max_residual,
            samples,
        }
    }
}

/// A deterministic record of checks for one parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub params: RosetteParams,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(params: RosetteParams, seed: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            params,
            seed,
            checks: Vec::new(),
        }
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckResult>) {
        self.checks.extend(checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Level {
    Quick,
    Full,
}

/// Side of the probe grid for the tiling check; about `10^4` points land
/// in the disk.
pub const COVERAGE_GRID: usize = 115;

/// Residual tolerance of the integral identities.
pub const ORACLE_TOL: f64 = 1e-9;

/// Both integral identities at `count` seeded interior points and at `z = 1`.
pub fn oracle_sweep(params: RosetteParams, count: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let map = RosetteMap::new(params)?;
    let mut points = disk_samples(count, seed);
    points.push(num_complex::Complex64::new(1.0, 0.0));
    let mut out = Vec::new();
    for (identity, name) in [
        (Identity::Analytic, "integral_identity_h"),
        (Identity::CoAnalytic, "integral_identity_g"),
    ] {
        let mut worst = 0.0f64;
        for &z in &points {
            let r = integral_oracle(&map, z, identity)?;
            worst = worst.max(r.residual);
        }
        out.push(CheckResult::new(
            name,
            worst < ORACLE_TOL,
            worst,
            points.len(),
        ));
    }
    Ok(out)
}

/// Runs the verification battery for one parameter set.
///
/// `params.beta` may be any real; checks that need a canonical angle reduce
/// it first.
pub fn run_verification(
    params: RosetteParams,
    level: Level,
    seed: u64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(params, seed);
    let (canonical, _) = params.canonical();
    let (samples, grid, oracle_points) = match level {
        Level::Quick => (200, 24, 10),
        Level::Full => (1000, 50, 100),
    };
    report.extend(symmetry_suite(params, samples, seed)?);
    report.extend(univalence_scan(canonical, grid)?.checks);
    report.extend(oracle_sweep(params, oracle_points, seed)?);
    if level == Level::Full {
        report.extend(fundamental_decomposition(params, COVERAGE_GRID)?.checks);
    }
    Ok(report)
}
