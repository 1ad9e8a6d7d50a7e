//! Deterministic SVG rendering of polar-grid images.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use num_complex::Complex64;
use rosette_core::verification::{copy_rotations, flatten, FundamentalSet};
use rosette_core::{extract_features, hypocycloid, FeatureKind, RosetteMap, RosetteParams};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Overlay {
    Features,
    CuspAxes,
    FundamentalSet,
    Hypocycloid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub params: RosetteParams,
    /// `(radial_lines, circles)`.
    pub grid: (usize, usize),
    pub samples_per_curve: usize,
    pub width_px: u32,
    pub margin_frac: f64,
    pub overlay: BTreeSet<Overlay>,
}

impl RenderSpec {
    pub fn new(params: RosetteParams) -> Self {
        Self {
            params,
            grid: (24, 16),
            samples_per_curve: 64,
            width_px: 800,
            margin_frac: 0.05,
            overlay: BTreeSet::new(),
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let (r, c) = self.grid;
        if r < 1 || c < 1 {
            return Err(CliError::Usage(
                "grid needs at least one radial line and one circle".into(),
            ));
        }
        if self.samples_per_curve < 16 {
            return Err(CliError::Usage(
                "samples per curve must be at least 16".into(),
            ));
        }
        if self.width_px == 0 || !(self.margin_frac >= 0.0 && self.margin_frac.is_finite()) {
            return Err(CliError::Usage(
                "width must be positive and margin non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Flattening tolerance in pixels.
pub const FLATTEN_PX: f64 = 0.1;

/// World-to-pixel transform centred on the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub width: f64,
    pub scale: f64,
}

impl Viewport {
    /// Square of side `2 K_n (1 + tan(pi/2n)) (1 + margin)`, the same for
    /// every `beta` at fixed `n`.
    pub fn for_spec(spec: &RenderSpec, k_n: f64) -> Self {
        let nf = spec.params.nf();
        let radius = k_n * (1.0 + (PI / (2.0 * nf)).tan());
        let width = f64::from(spec.width_px);
        Self {
            width,
            scale: width / (2.0 * radius * (1.0 + spec.margin_frac)),
        }
    }

    pub fn to_px(&self, w: Complex64) -> (f64, f64) {
        (
            0.5 * self.width + w.re * self.scale,
            0.5 * self.width - w.im * self.scale,
        )
    }
}

/// Fixed three-decimal formatting with negative zero folded.
pub fn fmt3(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn path_data(view: &Viewport, pts: &[Complex64], close: bool) -> String {
    let mut d = String::with_capacity(pts.len() * 18);
    for (i, p) in pts.iter().enumerate() {
        let (x, y) = view.to_px(*p);
        let _ = write!(
            d,
            "{}{} {}",
            if i == 0 { "M" } else { " L" },
            fmt3(x),
            fmt3(y)
        );
    }
    if close {
        d.push_str(" Z");
    }
    d
}

/// A feature dot in pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dot {
    pub kind: FeatureKind,
    pub x: f64,
    pub y: f64,
}

/// Rendered document plus the geometry it was drawn from.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub svg: String,
    pub boundary_px: Vec<(f64, f64)>,
    pub dots: Vec<Dot>,
}

/// Renders the spec to an SVG document.
pub fn render(spec: &RenderSpec) -> CliResult<Rendered> {
    spec.validate()?;
    let map = RosetteMap::new(spec.params)?;
    let (canonical, l) = spec.params.canonical();
    let base = map.with_beta(canonical.beta);
    let view = Viewport::for_spec(spec, map.k_n());
    let tol = FLATTEN_PX / view.scale;
    let n = spec.params.n;
    let nf = spec.params.nf();
    let min = spec.samples_per_curve;
    let f = |z: Complex64| map.f(z).map(|v| v.f);
    // f_beta~ is a rotation of f_beta applied after a rotation of the disk.
    let shift = l as f64 * (PI / nf + FRAC_PI_2);
    let rho = Complex64::from_polar(1.0, shift);

    let w = spec.width_px;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" viewBox="0 0 {w} {w}">"#
    );
    let _ = writeln!(
        svg,
        r#"<desc>n={} beta={:.17e}</desc>"#,
        n, spec.params.beta
    );
    let _ = writeln!(svg, r#"<rect width="{w}" height="{w}" fill="white"/>"#);

    let (radial, circles) = spec.grid;
    let _ = writeln!(
        svg,
        r##"<g id="grid" fill="none" stroke="#3b6ea5" stroke-width="0.6">"##
    );
    for i in 0..radial {
        let theta = 2.0 * PI * i as f64 / radial as f64;
        let pts = flatten(|r| f(Complex64::from_polar(r, theta)), 0.0, 1.0, min, tol)?;
        let _ = writeln!(svg, r#"<path d="{}"/>"#, path_data(&view, &pts, false));
    }
    for j in 1..circles {
        let r = j as f64 / circles as f64;
        let pts = flatten(|t| f(Complex64::from_polar(r, t)), 0.0, 2.0 * PI, min, tol)?;
        let _ = writeln!(svg, r#"<path d="{}"/>"#, path_data(&view, &pts, true));
    }
    let _ = writeln!(svg, "</g>");

    let per = 2 * n as usize;
    let segments = min.div_ceil(per) * per;
    let boundary = flatten(
        |t| map.f_polar(1.0, t).map(|v| v.f),
        0.0,
        2.0 * PI,
        segments,
        tol,
    )?;
    let _ = writeln!(
        svg,
        r##"<path id="boundary" fill="none" stroke="#102a43" stroke-width="1.2" d="{}"/>"##,
        path_data(&view, &boundary, true)
    );
    let boundary_px = boundary.iter().map(|p| view.to_px(*p)).collect();

    let mut dots = Vec::new();
    let needs_features =
        spec.overlay.contains(&Overlay::Features) || spec.overlay.contains(&Overlay::CuspAxes);
    let report = if needs_features {
        Some(extract_features(&base)?)
    } else {
        None
    };

    for overlay in &spec.overlay {
        match overlay {
            Overlay::Features => {
                let _ = writeln!(svg, r#"<g id="features" stroke="none">"#);
                for feat in &report.as_ref().expect("features computed").features {
                    let (x, y) = view.to_px(rho * feat.location);
                    let (class, fill) = match feat.kind {
                        FeatureKind::Cusp => ("cusp", "#c0392b"),
                        FeatureKind::RemovableNode => ("removable-node", "#27ae60"),
                        FeatureKind::Node => ("node", "#8e44ad"),
                    };
                    let _ = writeln!(
                        svg,
                        r#"<circle class="feature {class}" cx="{}" cy="{}" r="3" fill="{fill}"/>"#,
                        fmt3(x),
                        fmt3(y)
                    );
                    dots.push(Dot {
                        kind: feat.kind,
                        x,
                        y,
                    });
                }
                let _ = writeln!(svg, "</g>");
            }
            Overlay::CuspAxes => {
                let half = 0.25 * map.k_n();
                let _ = writeln!(
                    svg,
                    r##"<g id="cusp-axes" stroke="#c0392b" stroke-width="0.8" stroke-dasharray="4 3">"##
                );
                for feat in &report.as_ref().expect("features computed").features {
                    if let Some(axis) = feat.axis_arg {
                        let c = rho * feat.location;
                        let d = Complex64::from_polar(half, axis + shift);
                        let (x1, y1) = view.to_px(c - d);
                        let (x2, y2) = view.to_px(c + d);
                        let _ = writeln!(
                            svg,
                            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                            fmt3(x1),
                            fmt3(y1),
                            fmt3(x2),
                            fmt3(y2)
                        );
                    }
                }
                let _ = writeln!(svg, "</g>");
            }
            Overlay::FundamentalSet => {
                let set = FundamentalSet::with_tolerance(&base, tol)?;
                let _ = writeln!(
                    svg,
                    r##"<g id="fundamental-set" stroke="#d35400" stroke-width="1" fill="none">"##
                );
                for (i, copy) in copy_rotations(n, l).iter().enumerate() {
                    let pts: Vec<Complex64> = set
                        .boundary_polyline
                        .iter()
                        .map(|p| copy.rotation * p)
                        .collect();
                    let fill = if i + 1 == n as usize {
                        r##" fill="#f5b041" fill-opacity="0.35""##
                    } else {
                        ""
                    };
                    let _ = writeln!(
                        svg,
                        r#"<path class="copy" data-k="{}"{fill} d="{}"/>"#,
                        copy.k,
                        path_data(&view, &pts, true)
                    );
                }
                let _ = writeln!(svg, "</g>");
            }
            Overlay::Hypocycloid => {
                let pts = flatten(
                    |t| Ok(hypocycloid(n, Complex64::from_polar(1.0, t))),
                    0.0,
                    2.0 * PI,
                    segments,
                    tol,
                )?;
                let _ = writeln!(
                    svg,
                    r##"<path id="hypocycloid" fill="none" stroke="#7f8c8d" stroke-width="0.8" stroke-dasharray="2 2" d="{}"/>"##,
                    path_data(&view, &pts, true)
                );
            }
        }
    }
    let _ = writeln!(svg, "</svg>");
    Ok(Rendered {
        svg,
        boundary_px,
        dots,
    })
}
