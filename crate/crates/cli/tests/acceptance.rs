//! Acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rosette_cli::render::{render, Overlay, RenderSpec};
use rosette_core::angle;
use rosette_core::boundary::{boundary_point, halfspeed_reparam, hypocycloid_features};
use rosette_core::verification::{
    fundamental_decomposition, oracle_sweep, segment_distance, symmetry_suite, univalence_scan,
    CheckResult, MIN_SEGMENTS,
};
use rosette_core::{
    eval_series, extract_features, gamma_real, separation_angle, total_curvature, FeatureKind,
    RosetteMap, RosetteParams, SeparationSign, SeriesKind, SeriesSpec,
};

const ENDPOINT_REL_TOL: f64 = 1e-9;
const ENDPOINT_RUNTIME: Duration = Duration::from_secs(30);
const BOUND_MARGIN: f64 = 1e-6;
const ORACLE_TOL: f64 = 1e-9;
const DILATATION_REL_TOL: f64 = 1e-12;
const IDENTITY_TOL: f64 = 1e-10;
const SEPARATION_CLOSED_TOL: f64 = 1e-12;
const DEGREE_TOL: f64 = 0.5;
const CURVATURE_EXACT_TOL: f64 = 1e-12;
const CURVATURE_NUMERIC_TOL: f64 = 1e-4;
const MAGNITUDE_TOL: f64 = 1e-9;
const CONSTANCY_TOL: f64 = 1e-7;
const NODE_ANGLE_TOL: f64 = 1e-3;
const MIN_INTERIOR_PROBES: usize = 400;
const UNIVALENCE_GRID: usize = 26;
const UNIVALENCE_RUNTIME: Duration = Duration::from_secs(120);
const MIN_TILING_PROBES: usize = 10_000;
const TILING_GRID: usize = 115;
const HYPOCYCLOID_TOL: f64 = 1e-10;
const OVERLAY_PX_TOL: f64 = 0.5;
const SAMPLES: usize = 1000;
const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn params(n: u32, beta: f64) -> RosetteParams {
    RosetteParams::new(n, beta).expect("valid parameters")
}

fn k_closed(n: u32) -> f64 {
    let x = 1.0 / (2.0 * f64::from(n));
    PI.sqrt() * gamma_real(1.0 + x).unwrap() / gamma_real(0.5 + x).unwrap()
}

fn series_at(kind: SeriesKind, n: u32, w: f64) -> f64 {
    eval_series(&SeriesSpec::new(kind, n).unwrap(), Complex64::new(w, 0.0))
        .unwrap()
        .re
}

fn named<'a>(checks: &'a [CheckResult], name: &str) -> &'a CheckResult {
    checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("missing check {name}"))
}

fn endpoint_identity() -> Outcome {
    let start = Instant::now();
    let mut worst_ratio = 0.0f64;
    let mut worst_k = 0.0f64;
    for n in 3..=12 {
        let h = series_at(SeriesKind::H, n, 1.0);
        let g = series_at(SeriesKind::G, n, 1.0);
        let nf = f64::from(n);
        let ratio = (nf - 1.0) * (PI / (2.0 * nf)).tan();
        worst_ratio = worst_ratio.max(((g / h) - ratio).abs() / ratio);
        worst_k = worst_k.max((h - k_closed(n)).abs());
    }
    let elapsed = start.elapsed();
    let detail = format!("ratio rel {worst_ratio:.2e}, K_n abs {worst_k:.2e}, {elapsed:.2?}");
    if worst_ratio < ENDPOINT_REL_TOL && worst_k < ENDPOINT_REL_TOL && elapsed < ENDPOINT_RUNTIME {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn bounds_chain() -> Outcome {
    let mut margin = f64::INFINITY;
    for n in 3..=50 {
        let chain = [
            5.0 / 6.0,
            series_at(SeriesKind::G, n, -1.0),
            series_at(SeriesKind::H, n, -1.0),
            1.0,
            series_at(SeriesKind::H, n, 1.0),
            series_at(SeriesKind::G, n, 1.0),
            2.0,
        ];
        for w in chain.windows(2) {
            margin = margin.min(w[1] - w[0]);
        }
    }
    let detail = format!("smallest gap {margin:.3e}");
    if margin > BOUND_MARGIN {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn integral_oracle() -> Outcome {
    let mut worst = 0.0f64;
    for n in 3..=8 {
        for c in oracle_sweep(params(n, 0.0), 100, SEED).map_err(|e| e.to_string())? {
            worst = worst.max(c.max_residual);
        }
    }
    let detail = format!("max residual {worst:.2e}");
    if worst < ORACLE_TOL {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn dilatation_jacobian() -> Outcome {
    let mut worst = 0.0f64;
    let mut positive = true;
    for n in 3..=8 {
        let s = symmetry_suite(params(n, 0.3), SAMPLES, SEED).map_err(|e| e.to_string())?;
        worst = worst.max(named(&s, "dilatation_quotient").max_residual);
        let j = named(&s, "jacobian_positive");
        positive &= j.passed && j.samples == SAMPLES;
    }
    let detail = format!("dilatation rel {worst:.2e}, jacobian positive {positive}");
    if worst < DILATATION_REL_TOL && positive {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn symmetry() -> Outcome {
    let identities = [
        "rotational_symmetry",
        "summand_rotation_law",
        "reflection_conjugate_beta",
        "beta_plus_pi_law",
        "beta_reduction_law",
        "half_pi_reflection",
        "beta_zero_reflection",
        "canonical_rotation",
    ];
    let mut worst = 0.0f64;
    for n in [3, 5, 6] {
        for beta in [0.0, 0.3, FRAC_PI_4, FRAC_PI_2] {
            let s = symmetry_suite(params(n, beta), SAMPLES, SEED).map_err(|e| e.to_string())?;
            for name in identities {
                worst = worst.max(named(&s, name).max_residual);
            }
        }
    }
    let detail = format!("max identity residual {worst:.2e}");
    if worst < IDENTITY_TOL {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn separation_example() -> Outcome {
    let sep = separation_angle(&params(5, FRAC_PI_4), SeparationSign::NodeAfterCusp);
    let closed = PI / 5.0 + (2.5 - 5f64.sqrt()).sqrt().atan();
    let sep71 = separation_angle(&params(5, 2.0 * PI / 5.0), SeparationSign::NodeAfterCusp);
    let map = RosetteMap::new(params(5, FRAC_PI_4)).unwrap();
    let curv = total_curvature(&map, 0.0, 2.0 * PI / 5.0).map_err(|e| e.to_string())?;
    let report = extract_features(&map).map_err(|e| e.to_string())?;
    let from_features = report.separations[0];
    let ok = (sep - closed).abs() < SEPARATION_CLOSED_TOL
        && (sep.to_degrees() - 63.0).abs() < DEGREE_TOL
        && (sep71.to_degrees() - 71.0).abs() < DEGREE_TOL
        && (curv.analytic.to_degrees() - 108.0).abs() < CURVATURE_EXACT_TOL
        && (curv.numerical - curv.analytic).abs() < CURVATURE_NUMERIC_TOL
        && (report.total_curvature_per_petal.to_degrees() - 108.0).abs() < CURVATURE_EXACT_TOL
        && (from_features - sep).abs() < 1e-9;
    let detail = format!(
        "{:.4} deg, {:.4} deg, curvature {:.12} deg, numeric diff {:.2e}",
        sep.to_degrees(),
        sep71.to_degrees(),
        curv.analytic.to_degrees(),
        (curv.numerical - curv.analytic).abs()
    );
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn magnitudes() -> Outcome {
    let mut worst = 0.0f64;
    for n in 3..=12 {
        let k = k_closed(n);
        let nf = f64::from(n);
        let t = (PI / (2.0 * nf)).tan();
        let zero = extract_features(&RosetteMap::new(params(n, 0.0)).unwrap())
            .map_err(|e| e.to_string())?;
        for f in &zero.features {
            let expect = match f.kind {
                FeatureKind::Cusp => k * (1.0 + t),
                _ => k * (1.0 - t),
            };
            worst = worst.max((f.magnitude - expect).abs());
        }
        let half = extract_features(&RosetteMap::new(params(n, FRAC_PI_2)).unwrap())
            .map_err(|e| e.to_string())?;
        for f in &half.features {
            worst = worst.max((f.magnitude - k / (PI / (2.0 * nf)).cos()).abs());
        }
        let arg = half.features[0].argument;
        worst = worst.max((arg - (FRAC_PI_4 - PI / (2.0 * nf))).abs());
    }
    let detail = format!("max deviation {worst:.2e}");
    if worst < MAGNITUDE_TOL {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn half_pi_constancy() -> Outcome {
    let mut diameter = 0.0f64;
    let mut angle_err = 0.0f64;
    for n in 3..=8 {
        let map = RosetteMap::new(params(n, FRAC_PI_2)).unwrap();
        let nf = f64::from(n);
        for k in 1..=n {
            let a = f64::from(2 * k - 1) * PI / nf;
            let b = f64::from(2 * k) * PI / nf;
            let pts: Vec<Complex64> = (0..=200)
                .map(|i| boundary_point(&map, a + (b - a) * i as f64 / 200.0).unwrap())
                .collect();
            for p in &pts {
                for q in &pts {
                    diameter = diameter.max((p - q).norm() / map.k_n());
                }
            }
            let eps = 1e-9;
            let curve = |t: f64| halfspeed_reparam(&map, t).unwrap();
            let node = curve(b);
            let left = (node - curve(b - eps)).arg();
            let right = (curve(b + eps) - node).arg();
            let interior = PI - angle::diff(right, left).abs();
            angle_err = angle_err.max((interior - (FRAC_PI_2 - PI / nf)).abs());
        }
    }
    let detail = format!("relative diameter {diameter:.2e}, interior angle error {angle_err:.2e}");
    if diameter < CONSTANCY_TOL && angle_err < NODE_ANGLE_TOL {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn univalence() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut failures = Vec::new();
    let mut min_probes = usize::MAX;
    for n in [3, 5, 6] {
        for beta in [0.0, FRAC_PI_4, FRAC_PI_2] {
            let start = Instant::now();
            let scan =
                univalence_scan(params(n, beta), UNIVALENCE_GRID).map_err(|e| e.to_string())?;
            slowest = slowest.max(start.elapsed());
            let probes = named(&scan.checks, "interior_winding_one").samples;
            min_probes = min_probes.min(probes);
            let ok = scan.checks.iter().all(|c| c.passed)
                && scan.polyline.len() > MIN_SEGMENTS
                && probes >= MIN_INTERIOR_PROBES;
            if !ok {
                failures.push(format!("(n={n}, beta={beta:.4})"));
            }
        }
    }
    let detail =
        format!("min interior probes {min_probes}, slowest {slowest:.2?}, failures {failures:?}");
    if failures.is_empty() && slowest < UNIVALENCE_RUNTIME {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn tiling() -> Outcome {
    let mut failures = Vec::new();
    let mut min_probes = usize::MAX;
    for (n, beta) in [(5, PI / 5.0), (5, FRAC_PI_2), (6, 0.0), (4, 1.9)] {
        let d =
            fundamental_decomposition(params(n, beta), TILING_GRID).map_err(|e| e.to_string())?;
        let cov = named(&d.checks, "union_coverage");
        min_probes = min_probes.min(cov.samples);
        if !d.checks.iter().all(|c| c.passed) || cov.samples < MIN_TILING_PROBES {
            failures.push(format!("(n={n}, beta={beta:.4})"));
        }
    }
    let detail = format!("min probes {min_probes}, failures {failures:?}");
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn hypocycloid() -> Outcome {
    let mut worst = 0.0f64;
    let mut counts_ok = true;
    for n in 3..=12 {
        let feats = hypocycloid_features(n);
        let cusps: Vec<_> = feats
            .iter()
            .filter(|f| f.kind == FeatureKind::Cusp)
            .collect();
        counts_ok &= cusps.len() == n as usize && feats.len() == n as usize;
        let nf = f64::from(n);
        for k in 0..n {
            let target = Complex64::from_polar(nf / (nf - 1.0), 2.0 * PI * f64::from(k) / nf);
            let d = cusps
                .iter()
                .map(|f| (f.location - target).norm())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(d);
        }
    }
    let detail = format!("cusp counts ok {counts_ok}, max location error {worst:.2e}");
    if counts_ok && worst < HYPOCYCLOID_TOL {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn attr(tag: &str, name: &str) -> Option<f64> {
    let key = format!(" {name}=\"");
    let start = tag.find(&key)? + key.len();
    let end = start + tag[start..].find('"')?;
    tag[start..end].parse().ok()
}

fn svg_boundary(svg: &str) -> Vec<(f64, f64)> {
    let line = svg
        .lines()
        .find(|l| l.contains(r#"id="boundary""#))
        .expect("boundary path");
    let d = line.split(" d=\"").nth(1).expect("path data");
    let d = &d[..d.find('"').unwrap()];
    let nums: Vec<f64> = d
        .split([' ', 'M', 'L', 'Z'])
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().unwrap())
        .collect();
    nums.chunks(2).map(|c| (c[0], c[1])).collect()
}

fn overlay_offset(spec: &RenderSpec) -> Result<(f64, usize), String> {
    let out = render(spec).map_err(|e| e.to_string())?;
    let boundary = svg_boundary(&out.svg);
    let dots: Vec<(f64, f64)> = out
        .svg
        .lines()
        .filter(|l| l.contains(r#"class="feature"#))
        .map(|l| (attr(l, "cx").unwrap(), attr(l, "cy").unwrap()))
        .collect();
    let mut worst = 0.0f64;
    for (x, y) in &dots {
        let p = Complex64::new(*x, *y);
        let d = boundary
            .windows(2)
            .map(|w| {
                segment_distance(
                    p,
                    Complex64::new(w[0].0, w[0].1),
                    Complex64::new(w[1].0, w[1].1),
                )
            })
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(d);
    }
    Ok((worst, dots.len()))
}

fn figures() -> Outcome {
    let mut sets = vec![(6, 0.0, (24, 16))];
    for beta in [0.0, PI / 3.0, -PI / 3.0, FRAC_PI_2] {
        sets.push((5, beta, (20, 10)));
    }
    sets.push((5, PI / 5.0, (20, 10)));
    let mut worst = 0.0f64;
    let mut all_dots = true;
    for (i, (n, beta, grid)) in sets.iter().enumerate() {
        let mut spec = RenderSpec::new(params(*n, *beta));
        spec.grid = *grid;
        spec.overlay = BTreeSet::from([Overlay::Features]);
        if i >= 4 {
            spec.overlay.insert(Overlay::FundamentalSet);
        }
        let (offset, dots) = overlay_offset(&spec)?;
        let expect = if (beta - FRAC_PI_2).abs() < 1e-12 {
            *n
        } else {
            2 * n
        } as usize;
        all_dots &= dots == expect;
        worst = worst.max(offset);
    }
    let detail = format!("{} figures, max dot offset {worst:.3} px", sets.len());
    if worst < OVERLAY_PX_TOL && all_dots {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("1  endpoint identity", endpoint_identity),
        ("2  hypergeometric bounds", bounds_chain),
        ("3  integral oracle", integral_oracle),
        ("4  dilatation and jacobian", dilatation_jacobian),
        ("5  symmetry suite", symmetry),
        ("6  separation and curvature example", separation_example),
        ("7  cusp and node magnitudes", magnitudes),
        ("8  beta = pi/2 constancy and node angle", half_pi_constancy),
        ("9  univalence scan", univalence),
        ("10 fundamental-set tiling", tiling),
        ("11 hypocycloid baseline", hypocycloid),
        ("F  figure overlay consistency", figures),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name:42} {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name:42} {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
