//! Polyline construction and planar segment predicates.

use num_complex::Complex64;

use crate::error::Result;

/// Adaptive flattening of a parametric curve on `[t0, t1]`.
///
/// Starts from `min_segments` uniform pieces and bisects any piece whose
/// midpoint lies farther than `tol` from its chord.
pub fn flatten<F>(
    curve: F,
    t0: f64,
    t1: f64,
    min_segments: usize,
    tol: f64,
) -> Result<Vec<Complex64>>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let min_segments = min_segments.max(1);
    let h = (t1 - t0) / min_segments as f64;
    let mut out = Vec::with_capacity(min_segments * 2 + 1);
    let mut pa = curve(t0)?;
    out.push(pa);
    for i in 0..min_segments {
        let a = t0 + h * i as f64;
        let b = if i + 1 == min_segments { t1 } else { a + h };
        let pb = curve(b)?;
        refine(&curve, a, b, pa, pb, tol, 0, &mut out)?;
        pa = pb;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(
    curve: &F,
    a: f64,
    b: f64,
    pa: Complex64,
    pb: Complex64,
    tol: f64,
    depth: u32,
    out: &mut Vec<Complex64>,
) -> Result<()>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let m = 0.5 * (a + b);
    if depth < 40 && m > a && m < b {
        let pm = curve(m)?;
        if segment_distance(pm, pa, pb) > tol {
            refine(curve, a, m, pa, pm, tol, depth + 1, out)?;
            return refine(curve, m, b, pm, pb, tol, depth + 1, out);
        }
    }
    out.push(pb);
    Ok(())
}

/// Euclidean distance from `p` to the segment `[a, b]`.
pub fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let s = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * s)).norm()
}

/// Minimum distance from `p` to a polyline.
pub fn polyline_distance(p: Complex64, pts: &[Complex64]) -> f64 {
    pts.windows(2)
        .map(|w| segment_distance(p, w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    ((b - a).conj() * (c - a)).im
}

fn on_segment(a: Complex64, b: Complex64, p: Complex64) -> bool {
    p.re >= a.re.min(b.re)
        && p.re <= a.re.max(b.re)
        && p.im >= a.im.min(b.im)
        && p.im <= a.im.max(b.im)
}

/// Closed-segment intersection test, including touching and collinear
/// overlap.
pub fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

/// Index pairs of intersecting non-adjacent segments of a closed polyline
/// (`pts[0] == pts[last]`). Stops after `limit` hits.
pub fn self_intersections(pts: &[Complex64], limit: usize) -> Vec<(usize, usize)> {
    let m = pts.len().saturating_sub(1);
    let mut order: Vec<usize> = (0..m).collect();
    let min_x = |i: usize| pts[i].re.min(pts[i + 1].re);
    let max_x = |i: usize| pts[i].re.max(pts[i + 1].re);
    order.sort_by(|&a, &b| min_x(a).total_cmp(&min_x(b)));
    let mut hits = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        let xi = max_x(i);
        let (ylo, yhi) = (pts[i].im.min(pts[i + 1].im), pts[i].im.max(pts[i + 1].im));
        for &j in &order[pos + 1..] {
            if min_x(j) > xi {
                break;
            }
            let gap = i.abs_diff(j);
            if gap <= 1 || gap == m - 1 {
                continue;
            }
            if pts[j].im.max(pts[j + 1].im) < ylo || pts[j].im.min(pts[j + 1].im) > yhi {
                continue;
            }
            if segments_intersect(pts[i], pts[i + 1], pts[j], pts[j + 1]) {
                hits.push((i.min(j), i.max(j)));
                if hits.len() >= limit {
                    return hits;
                }
            }
        }
    }
    hits
}

/// Signed area (positive for counter-clockwise orientation).
pub fn signed_area(pts: &[Complex64]) -> f64 {
    0.5 * pts.windows(2).map(|w| (w[0].conj() * w[1]).im).sum::<f64>()
}
