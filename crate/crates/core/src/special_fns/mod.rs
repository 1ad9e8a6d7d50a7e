//! The hypergeometric functions `H_n`, `G_n` on the closed unit disk and
//! their endpoint values.
//!
//! ```text
//! H_n(w) = 2F1(1/2, 1/(2n);       1 + 1/(2n);     w) = sum c_m w^m
//! G_n(w) = 2F1(1/2, 1/2 - 1/(2n); 3/2 - 1/(2n);   w) = sum d_m w^m
//! ```

mod gamma;
mod series;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, RosetteError};

pub use gamma::gamma_real;
#[allow(unused_imports)]
pub(crate) use series::KahanSum;
pub use series::{direct_sum, tail_bound, DirectSum};

/// Slack allowed on `|w| <= 1` for rounded boundary points.
pub const EPS_DOMAIN: f64 = 1e-9;

/// Which of the two hypergeometric families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesKind {
    H,
    G,
}

/// Truncation rule for series summation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Absolute tolerance on the omitted tail.
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_terms: 2_000_000,
        }
    }
}

impl TruncationPolicy {
    pub fn new(abs_tol: f64, max_terms: usize) -> Result<Self> {
        if abs_tol.is_nan() || abs_tol <= 0.0 || max_terms == 0 {
            return Err(RosetteError::InvalidParameter(format!(
                "truncation policy needs abs_tol > 0 and max_terms >= 1 (got {abs_tol}, {max_terms})"
            )));
        }
        Ok(Self { abs_tol, max_terms })
    }
}

/// A fully specified series: family, order and truncation.
///
/// Construction precomputes the value at `w = 1` from the series alone,
/// which the evaluator needs near the singular point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSpec {
    pub kind: SeriesKind,
    pub n: u32,
    pub policy: TruncationPolicy,
    #[serde(skip, default = "f64::default")]
    endpoint: f64,
}

impl SeriesSpec {
    pub fn new(kind: SeriesKind, n: u32) -> Result<Self> {
        Self::with_policy(kind, n, TruncationPolicy::default())
    }

    pub fn with_policy(kind: SeriesKind, n: u32, policy: TruncationPolicy) -> Result<Self> {
        if n < 2 {
            return Err(RosetteError::InvalidParameter(format!(
                "series order must be at least 2, got {n}"
            )));
        }
        TruncationPolicy::new(policy.abs_tol, policy.max_terms)?;
        // G_2 and H_2 coincide; use the H formulas so both share rounding.
        let kind = if n == 2 { SeriesKind::H } else { kind };
        Ok(Self {
            kind,
            n,
            policy,
            endpoint: series::endpoint_constant(kind, n),
        })
    }

    /// The series value at `w = 1`, computed without the Gamma function.
    pub fn value_at_one(&self) -> f64 {
        self.endpoint
    }
}

/// One Maclaurin coefficient together with its binomial factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoeffTriple {
    pub m: usize,
    /// `A_m = (1/2)_m / m!`.
    pub a_m: f64,
    /// `c_m` for `H`, `d_m` for `G`.
    pub value: f64,
}

/// `A_m` by the multiplicative recurrence.
pub fn binomial_a(m: usize) -> f64 {
    (1..=m).fold(1.0, |a, k| a * (2.0 * k as f64 - 1.0) / (2.0 * k as f64))
}

pub fn coeff_triple(spec: &SeriesSpec, m: usize) -> CoeffTriple {
    let a_m = binomial_a(m);
    CoeffTriple {
        m,
        a_m,
        value: series::coeff_from_a(spec.kind, spec.n, m, a_m),
    }
}

/// `c_m` (kind `H`) or `d_m` (kind `G`).
pub fn coeff(spec: &SeriesSpec, m: usize) -> f64 {
    coeff_triple(spec, m).value
}

fn check_domain(w: Complex64) -> Result<Complex64> {
    let r = w.norm();
    if !r.is_finite() {
        return Err(RosetteError::Domain {
            value: r,
            reason: "series argument is not finite",
        });
    }
    if r > 1.0 + EPS_DOMAIN {
        return Err(RosetteError::Domain {
            value: r,
            reason: "series argument lies outside the closed unit disk",
        });
    }
    Ok(if r > 1.0 { w / r } else { w })
}

/// Evaluates `H_n(w)` or `G_n(w)` for `|w| <= 1 + EPS_DOMAIN`.
pub fn eval_series(spec: &SeriesSpec, w: Complex64) -> Result<Complex64> {
    let w = check_domain(w)?;
    series::eval_point(spec, w, Complex64::new(1.0, 0.0) - w)
}

/// Evaluates the series at `w = e^{i phi}`, forming `1 - w` without
/// cancellation.
pub fn eval_on_circle(spec: &SeriesSpec, phi: f64) -> Result<Complex64> {
    let (s, c) = phi.sin_cos();
    let half = (0.5 * phi).sin();
    let v = Complex64::new(2.0 * half * half, -s);
    series::eval_point(spec, Complex64::new(c, s), v)
}

/// Evaluates the series given both `w` and an accurate `v = 1 - w`.
pub fn eval_series_split(spec: &SeriesSpec, w: Complex64, v: Complex64) -> Result<Complex64> {
    let w = check_domain(w)?;
    series::eval_point(spec, w, v)
}

/// Closed-form endpoint values from the Gamma function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndpointValues {
    /// `K_n = H_n(1)`.
    pub k_n: f64,
    /// `G_n(1)`.
    pub g1: f64,
}

/// `K_n = sqrt(pi) Gamma(1 + 1/2n) / Gamma(1/2 + 1/2n)` and
/// `G_n(1) = (n - 1) tan(pi/2n) K_n`.
pub fn endpoint_values(n: u32) -> Result<EndpointValues> {
    if n < 2 {
        return Err(RosetteError::InvalidParameter(format!(
            "endpoint values need n >= 2, got {n}"
        )));
    }
    let nf = f64::from(n);
    let x = 1.0 / (2.0 * nf);
    let k_n = std::f64::consts::PI.sqrt() * gamma_real(1.0 + x)? / gamma_real(0.5 + x)?;
    let g1 = (nf - 1.0) * (std::f64::consts::PI / (2.0 * nf)).tan() * k_n;
    Ok(EndpointValues { k_n, g1 })
}

/// `K_n` alone.
pub fn k_n(n: u32) -> f64 {
    endpoint_values(n).map(|e| e.k_n).unwrap_or(f64::NAN)
}
