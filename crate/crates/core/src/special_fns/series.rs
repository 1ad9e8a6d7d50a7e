//! Summation engines for `H_n` and `G_n`.
//!
//! Both functions solve the first-order equation
//!
//! ```text
//! F(w) + lambda * w * F'(w) = (1 - w)^(-1/2),   F(0) = 1,
//! ```
//!
//! with `lambda = 2n` for `H_n` and `lambda = 2n / (n - 1)` for `G_n`. The
//! Maclaurin coefficients `A_m / (1 + lambda m)` converge like `m^(-3/2)`
//! on the unit circle, far too slowly to be summed directly near `|w| = 1`.
//! The same equation gives two series-only continuations:
//!
//! * around `w = 1`: `F(w) = C w^(-1/lambda) + (1 - w)^(1/2) Q(1 - w)` where
//!   `Q` has an explicit two-term recurrence and `C = F(1)` is fixed by
//!   matching against the Maclaurin sum at `w = 1/2`;
//! * around any other point `w0`: a Taylor recurrence driven by the binomial
//!   expansion of the right-hand side.
//!
//! None of these paths use the Gamma function, so `F(1)` computed here is an
//! independent check on the closed form.

use num_complex::Complex64;

use super::{SeriesKind, SeriesSpec, TruncationPolicy};
use crate::error::{Result, RosetteError};

/// Radius below which the Maclaurin series is summed directly.
const DIRECT_RADIUS: f64 = 0.7;
/// Distance from `w = 1` inside which the singular expansion is used.
const SINGULAR_RADIUS: f64 = 0.5;
/// Modulus of the re-expansion centre used for the remaining boundary arc.
const RECENTRE_RADIUS: f64 = 0.8;

/// Complex Kahan accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, x: Complex64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Result of a direct Maclaurin summation.
#[derive(Debug, Clone, Copy)]
pub struct DirectSum {
    pub value: Complex64,
    /// Number of terms actually added (indices `0..terms`).
    pub terms: usize,
    /// Rigorous bound on the omitted tail.
    pub tail_bound: f64,
}

pub(crate) fn lambda(kind: SeriesKind, n: u32) -> f64 {
    let n = f64::from(n);
    match kind {
        SeriesKind::H => 2.0 * n,
        SeriesKind::G => 2.0 * n / (n - 1.0),
    }
}

/// `value_m` from `A_m`, written exactly as the closed coefficient formulas.
#[inline]
pub(crate) fn coeff_from_a(kind: SeriesKind, n: u32, m: usize, a_m: f64) -> f64 {
    let n = f64::from(n);
    let m = m as f64;
    match kind {
        SeriesKind::H => a_m / (2.0 * m * n + 1.0),
        SeriesKind::G => a_m * (n - 1.0) / (n * (2.0 * m + 1.0) - 1.0),
    }
}

/// Bound on `sum_{k > m} c_k r^k` for `r = |w| <= 1`, valid for both kinds.
///
/// Uses that `c_k` is decreasing (geometric bound when `r < 1`) and that
/// `c_k <= A_k / (lambda k) <= 1 / (lambda sqrt(pi) k^(3/2))`, whose tail sum
/// is dominated by `2 / (lambda sqrt(pi m))`.
pub fn tail_bound(kind: SeriesKind, n: u32, m: usize, c_m: f64, r: f64) -> f64 {
    let power_law = if m == 0 {
        f64::INFINITY
    } else {
        2.0 / (lambda(kind, n) * (std::f64::consts::PI * m as f64).sqrt())
    };
    if r < 1.0 {
        let geometric = c_m * r.powi(m as i32 + 1) / (1.0 - r);
        geometric.min(power_law)
    } else {
        power_law
    }
}

/// Direct Maclaurin summation, stopping once the rigorous tail bound falls
/// below `policy.abs_tol`.
pub fn direct_sum(
    kind: SeriesKind,
    n: u32,
    policy: TruncationPolicy,
    w: Complex64,
) -> Result<DirectSum> {
    let r = w.norm().min(1.0);
    let mut acc = KahanSum::default();
    let mut a_m = 1.0;
    let mut power = Complex64::new(1.0, 0.0);
    let mut bound = f64::INFINITY;
    for m in 0..policy.max_terms {
        if m > 0 {
            a_m *= (2.0 * m as f64 - 1.0) / (2.0 * m as f64);
            power *= w;
        }
        let c_m = coeff_from_a(kind, n, m, a_m);
        acc.add(power * c_m);
        bound = tail_bound(kind, n, m, c_m, r);
        if bound <= policy.abs_tol {
            return Ok(DirectSum {
                value: acc.value(),
                terms: m + 1,
                tail_bound: bound,
            });
        }
    }
    Err(RosetteError::NoConvergence {
        abs_tol: policy.abs_tol,
        max_terms: policy.max_terms,
        tail_bound: bound,
    })
}

/// Value at `w = 1`, obtained by matching the singular expansion about
/// `w = 1` against the Maclaurin series at `w = 1/2`.
pub(crate) fn endpoint_constant(kind: SeriesKind, n: u32) -> f64 {
    let tight = TruncationPolicy {
        abs_tol: 1e-18,
        max_terms: 10_000,
    };
    let half = Complex64::new(0.5, 0.0);
    let regular = direct_sum(kind, n, tight, half)
        .expect("Maclaurin series converges geometrically at w = 1/2")
        .value
        .re;
    let lam = lambda(kind, n);
    let singular = singular_part(lam, half, tight)
        .expect("singular expansion converges geometrically at v = 1/2")
        .re;
    (regular - singular) * 0.5f64.powf(1.0 / lam)
}

/// `(1 - w)^(1/2) Q(1 - w)` evaluated from `v = 1 - w`.
fn singular_part(lam: f64, v: Complex64, policy: TruncationPolicy) -> Result<Complex64> {
    let rv = v.norm();
    let mut q = -2.0 / lam;
    let mut power = Complex64::new(1.0, 0.0);
    let mut acc = KahanSum::default();
    let mut bound = f64::INFINITY;
    let root = v.sqrt();
    for j in 0..policy.max_terms {
        if j > 0 {
            let jf = j as f64;
            q *= (1.0 + lam * (jf - 0.5)) / (lam * (jf + 0.5));
            power *= v;
        }
        acc.add(power * q);
        // |q_j| is non-increasing (lambda > 1), so the tail is geometric.
        bound = if rv < 1.0 {
            q.abs() * rv.powi(j as i32 + 1) / (1.0 - rv) * rv.sqrt()
        } else {
            f64::INFINITY
        };
        if bound <= policy.abs_tol {
            return Ok(root * acc.value());
        }
    }
    Err(RosetteError::NoConvergence {
        abs_tol: policy.abs_tol,
        max_terms: policy.max_terms,
        tail_bound: bound,
    })
}

/// Taylor re-expansion of the differential equation about `w0`.
fn recentred(spec: &SeriesSpec, w: Complex64, w0: Complex64) -> Result<Complex64> {
    let policy = spec.policy;
    let lam = lambda(spec.kind, spec.n);
    let f0 = direct_sum(spec.kind, spec.n, policy, w0)?.value;
    let u = w - w0;
    let one_minus_w0 = Complex64::new(1.0, 0.0) - w0;
    let radius = w0.norm().min(one_minus_w0.norm());
    let ratio = u.norm() / radius;
    if ratio >= 1.0 {
        return Err(RosetteError::NoConvergence {
            abs_tol: policy.abs_tol,
            max_terms: 0,
            tail_bound: f64::INFINITY,
        });
    }
    let step = u / one_minus_w0;
    // s_k = r_k u^k, the Taylor terms of the right-hand side about w0.
    let mut s = one_minus_w0.sqrt().inv();
    let mut t = f0;
    let mut acc = KahanSum::default();
    acc.add(t);
    let denom = w0 * lam;
    let mut estimate = f64::INFINITY;
    for k in 0..policy.max_terms {
        let kf = k as f64;
        if k > 0 {
            s *= step * ((2.0 * kf - 1.0) / (2.0 * kf));
        }
        t = (s - t * (1.0 + lam * kf)) * u / (denom * (kf + 1.0));
        acc.add(t);
        estimate = 4.0 * t.norm() * ratio / (1.0 - ratio);
        if estimate <= policy.abs_tol && k >= 2 {
            return Ok(acc.value());
        }
    }
    Err(RosetteError::NoConvergence {
        abs_tol: policy.abs_tol,
        max_terms: policy.max_terms,
        tail_bound: estimate,
    })
}

/// Evaluates the series at `w`, given an accurate `v = 1 - w`.
pub(crate) fn eval_point(spec: &SeriesSpec, w: Complex64, v: Complex64) -> Result<Complex64> {
    let r = w.norm();
    if r <= DIRECT_RADIUS {
        return direct_sum(spec.kind, spec.n, spec.policy, w).map(|d| d.value);
    }
    if v.norm() <= SINGULAR_RADIUS {
        let lam = lambda(spec.kind, spec.n);
        let regular = w.powf(-1.0 / lam) * spec.endpoint;
        return Ok(regular + singular_part(lam, v, spec.policy)?);
    }
    let w0 = w * (RECENTRE_RADIUS / r);
    recentred(spec, w, w0)
}
