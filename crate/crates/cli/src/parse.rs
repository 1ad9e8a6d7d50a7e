//! Parsers for command-line values.

use std::f64::consts::PI;

/// Parses an angle given in radians (`0.3`, `-1e-2`) or as a rational
/// multiple of pi (`pi`, `-pi/2`, `2pi/5`, `3*pi/4`).
pub fn parse_beta(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if let Ok(x) = s.parse::<f64>() {
        return if x.is_finite() {
            Ok(x)
        } else {
            Err(format!("angle must be finite: {s}"))
        };
    }
    let bad = || format!("expected radians or a multiple of pi like 2pi/5, got {s:?}");
    let lower = s.to_ascii_lowercase().replace('π', "pi");
    let (sign, body) = match lower.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, lower.strip_prefix('+').unwrap_or(&lower)),
    };
    let at = body.find("pi").ok_or_else(bad)?;
    let coeff = body[..at].trim_end_matches('*');
    let coeff = if coeff.is_empty() {
        1.0
    } else {
        coeff.parse::<f64>().map_err(|_| bad())?
    };
    let rest = &body[at + 2..];
    let denom = match rest.strip_prefix('/') {
        Some(d) => d.parse::<f64>().map_err(|_| bad())?,
        None if rest.is_empty() => 1.0,
        None => return Err(bad()),
    };
    if denom == 0.0 || !coeff.is_finite() {
        return Err(bad());
    }
    Ok(sign * coeff * PI / denom)
}

/// Parses `RxC` into `(radial_lines, circles)`.
pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected RxC, got {s:?}"))?;
    let r = a.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let c = b.trim().parse::<usize>().map_err(|e| e.to_string())?;
    if r == 0 || c == 0 {
        return Err("grid dimensions must be positive".into());
    }
    Ok((r, c))
}
