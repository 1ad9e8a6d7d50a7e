//! Command implementations returning their output as text.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rosette_core::angle;
use rosette_core::boundary::sample;
use rosette_core::verification::{
    fundamental_decomposition, run_verification, CheckResult, Level, SCHEMA_VERSION,
};
use rosette_core::{extract_features, FeatureKind, FeatureReport, RosetteMap, RosetteParams};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::render::{render, RenderSpec, Rendered};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DumpKind {
    Boundary,
    Radial,
}

/// How the requested `beta` relates to the canonical one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reduction {
    pub beta_input: f64,
    pub beta_canonical: f64,
    pub l: i64,
}

impl Reduction {
    pub fn of(params: &RosetteParams) -> Self {
        let (canonical, l) = params.canonical();
        Self {
            beta_input: params.beta,
            beta_canonical: canonical.beta,
            l,
        }
    }

    /// A one-line notice when the angle was changed.
    pub fn notice(&self) -> Option<String> {
        (self.beta_input != self.beta_canonical).then(|| {
            format!(
                "note: beta {} reduced to {} with l = {}",
                self.beta_input, self.beta_canonical, self.l
            )
        })
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    n: u32,
    reduction: Reduction,
    #[serde(flatten)]
    payload: T,
}

fn envelope<T: Serialize>(command: &str, params: &RosetteParams, payload: T) -> CliResult<String> {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        n: params.n,
        reduction: Reduction::of(params),
        payload,
    };
    let mut s = serde_json::to_string_pretty(&env)?;
    s.push('\n');
    Ok(s)
}

fn csv_string<F>(write: F) -> CliResult<String>
where
    F: FnOnce(&mut csv::Writer<&mut Vec<u8>>) -> CliResult<()>,
{
    let mut buf = Vec::new();
    {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(&mut buf);
        write(&mut w)?;
        w.flush()?;
    }
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Features of the canonical representative of `params`.
pub fn feature_report(params: &RosetteParams) -> CliResult<FeatureReport> {
    let (canonical, _) = params.canonical();
    Ok(extract_features(&RosetteMap::new(canonical)?)?)
}

#[derive(Serialize)]
struct FeatureRow {
    kind: &'static str,
    t: f64,
    re: f64,
    im: f64,
    magnitude: f64,
    argument: f64,
    axis_arg: Option<f64>,
    interior_angle: Option<f64>,
    tangent_arg: Option<f64>,
    left_tangent_arg: f64,
    right_tangent_arg: f64,
    exterior_angle: f64,
    separation_to_next: f64,
}

pub fn kind_name(kind: FeatureKind) -> &'static str {
    match kind {
        FeatureKind::Cusp => "cusp",
        FeatureKind::RemovableNode => "removable_node",
        FeatureKind::Node => "node",
    }
}

pub fn features_cmd(params: &RosetteParams, format: Format) -> CliResult<String> {
    let report = feature_report(params)?;
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Payload {
                report: FeatureReport,
            }
            envelope("features", params, Payload { report })
        }
        Format::Csv => csv_string(|w| {
            for (f, sep) in report.features.iter().zip(&report.separations) {
                w.serialize(FeatureRow {
                    kind: kind_name(f.kind),
                    t: f.t,
                    re: f.location.re,
                    im: f.location.im,
                    magnitude: f.magnitude,
                    argument: f.argument,
                    axis_arg: f.axis_arg,
                    interior_angle: f.interior_angle,
                    tangent_arg: f.tangent_arg,
                    left_tangent_arg: f.left_tangent_arg,
                    right_tangent_arg: f.right_tangent_arg,
                    exterior_angle: f.exterior_angle,
                    separation_to_next: *sep,
                })?;
            }
            Ok(())
        }),
    }
}

/// Report text and whether every check passed.
pub fn verify_cmd(
    params: &RosetteParams,
    level: Level,
    seed: u64,
    format: Format,
) -> CliResult<(String, bool)> {
    let report = run_verification(*params, level, seed)?;
    let ok = report.all_passed();
    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Payload<'a> {
                level: &'a str,
                seed: u64,
                all_passed: bool,
                checks: &'a [CheckResult],
            }
            envelope(
                "verify",
                params,
                Payload {
                    level: match level {
                        Level::Quick => "quick",
                        Level::Full => "full",
                    },
                    seed,
                    all_passed: ok,
                    checks: &report.checks,
                },
            )?
        }
        Format::Csv => csv_string(|w| {
            for c in &report.checks {
                w.serialize(c)?;
            }
            Ok(())
        })?,
    };
    Ok((text, ok))
}

#[derive(Serialize)]
struct BoundaryRow {
    t: f64,
    re: f64,
    im: f64,
    d_arg: Option<f64>,
    d_mag: f64,
}

#[derive(Serialize)]
struct RadialRow {
    theta: f64,
    r: f64,
    re: f64,
    im: f64,
    abs: f64,
    arg: f64,
}

/// CSV samples of the boundary or of the rays `0, pi/n, 2 pi/n`.
pub fn dump_cmd(params: &RosetteParams, what: DumpKind, count: usize) -> CliResult<String> {
    if count < 2 {
        return Err(CliError::Usage("sample count must be at least 2".into()));
    }
    let map = RosetteMap::new(*params)?;
    let (canonical, l) = params.canonical();
    let base = map.with_beta(canonical.beta);
    let nf = params.nf();
    match what {
        DumpKind::Boundary => {
            let lf = l as f64;
            let shift = lf * (PI / nf + FRAC_PI_2);
            csv_string(|w| {
                for i in 0..count {
                    let t = 2.0 * PI * (i as f64 + 0.5) / count as f64;
                    let value = map.f_polar(1.0, t)?.f;
                    let s = sample(&base, t - lf * PI / nf)?;
                    w.serialize(BoundaryRow {
                        t,
                        re: value.re,
                        im: value.im,
                        d_arg: s.d_arg.map(|a| angle::wrap(a + shift)),
                        d_mag: s.d_mag,
                    })?;
                }
                Ok(())
            })
        }
        DumpKind::Radial => csv_string(|w| {
            for theta in [0.0, PI / nf, 2.0 * PI / nf] {
                for i in 0..count {
                    let r = i as f64 / (count - 1) as f64;
                    let v: Complex64 = map.f_polar(r, theta)?.f;
                    w.serialize(RadialRow {
                        theta,
                        r,
                        re: v.re,
                        im: v.im,
                        abs: v.norm(),
                        arg: v.arg(),
                    })?;
                }
            }
            Ok(())
        }),
    }
}

/// Render with the fundamental-set overlay, plus the tiling report.
pub fn decompose_cmd(spec: &RenderSpec, probe_grid: usize) -> CliResult<(Rendered, String, bool)> {
    let mut spec = spec.clone();
    spec.overlay.insert(crate::render::Overlay::FundamentalSet);
    let rendered = render(&spec)?;
    let d = fundamental_decomposition(spec.params, probe_grid)?;
    let ok = d.checks.iter().all(|c| c.passed);
    #[derive(Serialize)]
    struct Payload<'a> {
        probe_grid: usize,
        all_passed: bool,
        rotations: Vec<[f64; 2]>,
        checks: &'a [CheckResult],
    }
    let json = envelope(
        "decompose",
        &spec.params,
        Payload {
            probe_grid,
            all_passed: ok,
            rotations: d
                .copies
                .iter()
                .map(|c| [c.rotation.re, c.rotation.im])
                .collect(),
            checks: &d.checks,
        },
    )?;
    Ok((rendered, json, ok))
}
