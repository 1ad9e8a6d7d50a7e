//! The rosette mapping `f_beta`, its analytic and co-analytic parts,
//! derivatives, dilatation, Jacobian and the algebra of `beta`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, RosetteError};
use crate::special_fns::{eval_series_split, SeriesKind, SeriesSpec, TruncationPolicy, EPS_DOMAIN};

/// Distance to a 2n-th root of unity (measured as `|1 - z^{2n}|`) below
/// which derivatives are reported as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Tolerance for recognising `beta = pi/2`.
pub const HALF_PI_TOL: f64 = 1e-12;

/// The pair `(n, beta)` selecting one rosette mapping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RosetteParams {
    pub n: u32,
    pub beta: f64,
}

impl RosetteParams {
    pub fn new(n: u32, beta: f64) -> Result<Self> {
        if n < 3 {
            return Err(RosetteError::InvalidParameter(format!(
                "rosette order n must be at least 3, got {n}"
            )));
        }
        if !beta.is_finite() {
            return Err(RosetteError::InvalidParameter(format!(
                "beta must be finite, got {beta}"
            )));
        }
        Ok(Self { n, beta })
    }

    /// Equivalent canonical parameters and the shift `l` with
    /// `beta = beta' + l pi`.
    pub fn canonical(&self) -> (RosetteParams, i64) {
        let (beta, l) = reduce_beta(self.beta);
        (RosetteParams { n: self.n, beta }, l)
    }

    pub fn is_canonical(&self) -> bool {
        self.beta > -FRAC_PI_2 && self.beta <= FRAC_PI_2 + HALF_PI_TOL
    }

    pub fn is_half_pi(&self) -> bool {
        (self.beta - FRAC_PI_2).abs() <= HALF_PI_TOL
    }

    pub fn nf(&self) -> f64 {
        f64::from(self.n)
    }
}

/// One evaluation of `f_beta` split into its two summands.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapValue {
    /// `e^{i beta/2} h_n(z)`.
    pub h: Complex64,
    /// `e^{-i beta/2} conj(g_n(z))`.
    pub gbar: Complex64,
    /// `h + gbar`.
    pub f: Complex64,
}

/// `1 - r^{2n} e^{i phi}` without cancellation near `r = 1`, `phi = 0`.
pub(crate) fn one_minus_polar(r: f64, log_r_2n: f64, phi: f64) -> Complex64 {
    let rho = if r == 0.0 { 0.0 } else { log_r_2n.exp() };
    let radial = if r == 0.0 { 1.0 } else { -log_r_2n.exp_m1() };
    let half = (0.5 * phi).sin();
    Complex64::new(radial + rho * 2.0 * half * half, -rho * phi.sin())
}

/// `f_beta` for one `(n, beta)`, with the series state precomputed.
#[derive(Debug, Clone, Copy)]
pub struct RosetteMap {
    params: RosetteParams,
    h_spec: SeriesSpec,
    g_spec: SeriesSpec,
    rot: Complex64,
}

impl RosetteMap {
    pub fn new(params: RosetteParams) -> Result<Self> {
        Self::with_policy(params, TruncationPolicy::default())
    }

    pub fn with_policy(params: RosetteParams, policy: TruncationPolicy) -> Result<Self> {
        let params = RosetteParams::new(params.n, params.beta)?;
        Ok(Self {
            params,
            h_spec: SeriesSpec::with_policy(SeriesKind::H, params.n, policy)?,
            g_spec: SeriesSpec::with_policy(SeriesKind::G, params.n, policy)?,
            rot: Complex64::from_polar(1.0, 0.5 * params.beta),
        })
    }

    pub fn params(&self) -> RosetteParams {
        self.params
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn beta(&self) -> f64 {
        self.params.beta
    }

    /// `K_n`, obtained from the series.
    pub fn k_n(&self) -> f64 {
        self.h_spec.value_at_one()
    }

    /// The same map with a different `beta`.
    pub fn with_beta(&self, beta: f64) -> Self {
        Self {
            params: RosetteParams {
                n: self.params.n,
                beta,
            },
            rot: Complex64::from_polar(1.0, 0.5 * beta),
            ..*self
        }
    }

    /// `(h_n, g_n)` at `z = r e^{i theta}`.
    pub fn parts_polar(&self, r: f64, theta: f64) -> Result<(Complex64, Complex64)> {
        if !(0.0..=1.0 + EPS_DOMAIN).contains(&r) || !theta.is_finite() {
            return Err(RosetteError::Domain {
                value: r,
                reason: "mapping argument lies outside the closed unit disk",
            });
        }
        if r == 0.0 {
            return Ok((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
        }
        let r = r.min(1.0);
        let n = self.params.nf();
        let two_n = 2.0 * n;
        let log_r_2n = two_n * r.ln();
        // theta = j pi/n + tau, so z^{2n} has argument 2n tau exactly.
        let j = (theta * n / PI).round();
        let mut tau = theta - j * PI / n;
        if tau.abs() <= 8.0 * f64::EPSILON * (1.0 + theta.abs()) {
            tau = 0.0;
        }
        let phi = two_n * tau;
        let w = Complex64::from_polar(log_r_2n.exp(), phi);
        let v = one_minus_polar(r, log_r_2n, phi);
        let hs = eval_series_split(&self.h_spec, w, v)?;
        let gs = eval_series_split(&self.g_spec, w, v)?;
        let h = Complex64::from_polar(r, theta) * hs;
        let g = Complex64::from_polar(r.powf(n - 1.0), (n - 1.0) * theta) * gs / (n - 1.0);
        Ok((h, g))
    }

    fn parts(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let (r, theta) = z.to_polar();
        self.parts_polar(r, theta)
    }

    /// `h_n(z) = z H_n(z^{2n})`.
    pub fn h(&self, z: Complex64) -> Result<Complex64> {
        self.parts(z).map(|p| p.0)
    }

    /// `g_n(z) = z^{n-1} G_n(z^{2n}) / (n - 1)`.
    pub fn g(&self, z: Complex64) -> Result<Complex64> {
        self.parts(z).map(|p| p.1)
    }

    fn combine(&self, h: Complex64, g: Complex64) -> MapValue {
        let h = self.rot * h;
        let gbar = self.rot.conj() * g.conj();
        MapValue {
            h,
            gbar,
            f: h + gbar,
        }
    }

    pub fn f(&self, z: Complex64) -> Result<MapValue> {
        let (h, g) = self.parts(z)?;
        Ok(self.combine(h, g))
    }

    pub fn f_polar(&self, r: f64, theta: f64) -> Result<MapValue> {
        let (h, g) = self.parts_polar(r, theta)?;
        Ok(self.combine(h, g))
    }

    fn one_minus_z2n(&self, z: Complex64) -> Result<Complex64> {
        let (r, theta) = z.to_polar();
        if r > 1.0 + EPS_DOMAIN {
            return Err(RosetteError::Domain {
                value: r,
                reason: "mapping argument lies outside the closed unit disk",
            });
        }
        if r == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let two_n = 2.0 * self.params.nf();
        let v = one_minus_polar(r, two_n * r.ln(), crate::angle::wrap(two_n * theta));
        if v.norm() < SINGULAR_TOL {
            return Err(RosetteError::SingularPoint { tol: SINGULAR_TOL });
        }
        Ok(v)
    }

    /// `h_n'(z) = (1 - z^{2n})^{-1/2}`, principal branch.
    pub fn dh(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.one_minus_z2n(z)?.sqrt().inv())
    }

    /// `g_n'(z) = z^{n-2} (1 - z^{2n})^{-1/2}`, principal branch.
    pub fn dg(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.dilatation(z) * self.dh(z)?)
    }

    /// `omega(z) = z^{n-2}`.
    pub fn dilatation(&self, z: Complex64) -> Complex64 {
        z.powu(self.params.n - 2)
    }

    /// `J = (1 - |z|^{2(n-2)}) / |1 - z^{2n}|`.
    pub fn jacobian(&self, z: Complex64) -> Result<f64> {
        let v = self.one_minus_z2n(z)?;
        let r2 = z.norm_sqr();
        Ok((1.0 - r2.powi(self.params.n as i32 - 2)) / v.norm())
    }

    /// `|h'|^2 - |g'|^2`, the defining form of the Jacobian.
    pub fn jacobian_from_derivatives(&self, z: Complex64) -> Result<f64> {
        Ok(self.dh(z)?.norm_sqr() - self.dg(z)?.norm_sqr())
    }

    /// Wirtinger derivatives `(f_z, f_zbar)`.
    pub fn wirtinger(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        Ok((self.rot * self.dh(z)?, self.rot.conj() * self.dg(z)?.conj()))
    }

    /// Derivative of `f` along the direction `dir`.
    pub fn directional_derivative(&self, z: Complex64, dir: Complex64) -> Result<Complex64> {
        let (fz, fzb) = self.wirtinger(z)?;
        Ok(fz * dir + fzb * dir.conj())
    }
}

/// The hypocycloid mapping `z + conj(z)^{n-1} / (n - 1)`.
pub fn hypocycloid(n: u32, z: Complex64) -> Complex64 {
    z + z.conj().powu(n - 1) / f64::from(n - 1)
}

/// Reduces any `beta_tilde` to `(beta, l)` with `beta` in `(-pi/2, pi/2]`
/// and `beta_tilde = beta + l pi`.
pub fn reduce_beta(beta_tilde: f64) -> (f64, i64) {
    let mut l = (beta_tilde / PI - 0.5).ceil() as i64;
    let mut beta = beta_tilde - l as f64 * PI;
    if beta > FRAC_PI_2 {
        beta -= PI;
        l += 1;
    }
    if beta <= -FRAC_PI_2 {
        beta += PI;
        l -= 1;
    }
    // Rounding of symbolic inputs such as 3pi/2 must not flip the
    // half-open end of the interval.
    let snap = 4.0 * f64::EPSILON * (1.0 + beta_tilde.abs());
    if (beta + FRAC_PI_2).abs() <= snap {
        beta = FRAC_PI_2;
        l -= 1;
    } else if (beta - FRAC_PI_2).abs() <= snap {
        beta = FRAC_PI_2;
    }
    (beta, l)
}

/// For `e^{i theta} h_n + conj(e^{i theta_tilde} g_n)` returns `(gamma, beta)`
/// with the map equal to `e^{i gamma} f_beta`.
///
/// Since `f_beta` carries the half angle `beta/2` on each summand, the
/// matching parameter is the full sum `theta + theta_tilde`.
pub fn canonical_rotation(theta: f64, theta_tilde: f64) -> (f64, f64) {
    (0.5 * (theta - theta_tilde), theta + theta_tilde)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fns::endpoint_values;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn map(n: u32, beta: f64) -> RosetteMap {
        RosetteMap::new(RosetteParams::new(n, beta).unwrap()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_small_n() {
        assert!(RosetteParams::new(2, 0.0).is_err());
        assert!(RosetteParams::new(3, f64::NAN).is_err());
    }

    #[test]
    fn values_at_origin() {
        let m = map(6, 0.0);
        assert_eq!(m.h(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(m.g(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(m.f(c(0.0, 0.0)).unwrap().f, c(0.0, 0.0));
    }

    #[test]
    fn values_at_one() {
        let m = map(6, 0.0);
        let k6 = endpoint_values(6).unwrap().k_n;
        assert!((m.h(c(1.0, 0.0)).unwrap() - k6).norm() < 1e-12);
        let t = (PI / 12.0).tan();
        assert!((m.g(c(1.0, 0.0)).unwrap() - t * k6).norm() < 1e-12);
    }

    #[test]
    fn ray_collinearity_and_g_rotation() {
        let m = map(5, 0.4);
        let n = 5.0;
        for j in 0..10 {
            let e = Complex64::from_polar(1.0, j as f64 * PI / n);
            for &r in &[0.3, 0.8, 0.999] {
                let lhs = m.h(e * r).unwrap();
                let rhs = e * m.h(c(r, 0.0)).unwrap();
                assert!((lhs - rhs).norm() < 1e-12, "j={j} r={r} {lhs} {rhs}");
            }
            let on_circle = m.parts_polar(1.0, j as f64 * PI / n).unwrap().0;
            assert!((on_circle - e * m.k_n()).norm() < 1e-12, "j={j}");
        }
        let e = Complex64::from_polar(1.0, PI / n);
        let lhs = m.g(e).unwrap();
        let rhs = -e.conj() * m.g(c(1.0, 0.0)).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn modulus_at_one() {
        for n in [3u32, 5, 8] {
            for &beta in &[0.0, 0.3, 1.0, FRAC_PI_2] {
                let m = map(n, beta);
                let k = endpoint_values(n).unwrap().k_n;
                let t = (PI / (2.0 * f64::from(n))).tan();
                let sec2 = 1.0 + t * t;
                let expected = k * (sec2 + 2.0 * t * beta.cos()).sqrt();
                assert_relative_eq!(
                    m.f(c(1.0, 0.0)).unwrap().f.norm(),
                    expected,
                    max_relative = 1e-11
                );
            }
        }
    }

    #[test]
    fn derivative_examples() {
        let m = map(5, 0.0);
        assert_eq!(m.dh(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(m.dg(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let z = c(0.3, 0.2);
        let q = m.dg(z).unwrap() / m.dh(z).unwrap();
        assert!((q - z.powu(3)).norm() < 1e-15);
        assert!(matches!(
            m.dh(c(1.0, 0.0)),
            Err(RosetteError::SingularPoint { .. })
        ));
        assert!(matches!(
            m.dh(Complex64::from_polar(1.0, PI / 5.0)),
            Err(RosetteError::SingularPoint { .. })
        ));
    }

    #[test]
    fn jacobian_examples() {
        let m = map(3, 0.2);
        assert_relative_eq!(m.jacobian(c(0.0, 0.0)).unwrap(), 1.0);
        let z = c(0.5, 0.0);
        let direct = m.dh(z).unwrap().norm_sqr() - m.dg(z).unwrap().norm_sqr();
        assert_relative_eq!(m.jacobian(z).unwrap(), direct, max_relative = 1e-13);
        assert!(direct > 0.0);
        let m6 = map(6, 0.0);
        let near = m6.jacobian(Complex64::from_polar(1.0 - 1e-9, 0.1)).unwrap();
        assert!(near < 1e-7);
        assert_eq!(m6.dilatation(c(0.0, 0.0)), c(0.0, 0.0));
        assert_relative_eq!(
            m6.dilatation(Complex64::from_polar(1.0, 0.7)).norm(),
            1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn hypocycloid_examples() {
        assert_eq!(hypocycloid(4, c(0.0, 0.0)), c(0.0, 0.0));
        for n in 3..8u32 {
            for k in 0..n {
                let z = Complex64::from_polar(1.0, 2.0 * PI * f64::from(k) / f64::from(n));
                let expected = z * (f64::from(n) / f64::from(n - 1));
                assert!((hypocycloid(n, z) - expected).norm() < 1e-14);
            }
        }
        assert_eq!(hypocycloid(5, c(0.6, 0.0)).im, 0.0);
    }

    #[test]
    fn reduce_beta_examples() {
        assert_eq!(reduce_beta(FRAC_PI_2), (FRAC_PI_2, 0));
        let (b, l) = reduce_beta(PI);
        assert!(b.abs() < 1e-15 && l == 1);
        let (b, l) = reduce_beta(-3.0 * PI / 4.0);
        assert!((b - PI / 4.0).abs() < 1e-15 && l == -1);
        assert_eq!(reduce_beta(-FRAC_PI_2), (FRAC_PI_2, -1));
        assert_eq!(reduce_beta(3.0 * PI / 2.0), (FRAC_PI_2, 1));
        assert_eq!(reduce_beta(-5.0 * PI / 2.0), (FRAC_PI_2, -3));
    }

    #[test]
    fn canonical_rotation_examples() {
        assert_eq!(canonical_rotation(0.0, 0.0), (0.0, 0.0));
        assert_eq!(canonical_rotation(0.7, 0.7), (0.0, 1.4));
        let (g, b) = canonical_rotation(PI / 3.0, -PI / 6.0);
        assert!((g - PI / 4.0).abs() < 1e-15 && (b - PI / 6.0).abs() < 1e-15);
    }

    #[test]
    fn canonical_rotation_identity() {
        let m = map(5, 0.0);
        let (theta, theta_t) = (0.9, -0.35);
        let (gamma, beta) = canonical_rotation(theta, theta_t);
        let mb = m.with_beta(beta);
        for &z in &[c(0.3, 0.4), c(-0.5, 0.1), Complex64::from_polar(1.0, 0.3)] {
            let (h, g) = (m.h(z).unwrap(), m.g(z).unwrap());
            let lhs = Complex64::from_polar(1.0, theta) * h
                + (Complex64::from_polar(1.0, theta_t) * g).conj();
            let rhs = Complex64::from_polar(1.0, gamma) * mb.f(z).unwrap().f;
            assert!((lhs - rhs).norm() < 1e-13, "{z} {lhs} {rhs}");
        }
    }

    #[test]
    fn finite_difference_matches_wirtinger() {
        let m = map(4, 0.6);
        let d = 1e-5;
        for &z in &[c(0.2, 0.1), c(-0.4, 0.5), c(0.6, -0.6)] {
            for &dir in &[c(1.0, 0.0), c(0.0, 1.0)] {
                let fd = (m.f(z + dir * d).unwrap().f - m.f(z - dir * d).unwrap().f) / (2.0 * d);
                let exact = m.directional_derivative(z, dir).unwrap();
                assert!((fd - exact).norm() < 1e-8, "{z} {dir}");
            }
        }
    }

    #[test]
    fn beta_zero_rays_are_straight() {
        let m = map(5, 0.0);
        for i in 1..20 {
            let r = i as f64 / 20.0;
            assert!(m.f_polar(r, 0.0).unwrap().f.arg().abs() < 1e-13);
            let a = m.f_polar(r, PI / 5.0).unwrap().f.arg();
            assert!((a - PI / 5.0).abs() < 1e-13);
        }
    }

    #[test]
    fn radial_monotonicity() {
        for &beta in &[0.3, 1.0, FRAC_PI_2] {
            let m = map(5, beta);
            let mut prev = [0.0f64; 2];
            let mut prev_arg = [f64::NAN; 2];
            for i in 1..200 {
                let r = i as f64 / 200.0;
                for (j, theta) in [0.0, PI / 5.0].into_iter().enumerate() {
                    let v = m.f_polar(r, theta).unwrap().f.norm();
                    assert!(v > prev[j]);
                    prev[j] = v;
                    let dir = Complex64::from_polar(1.0, theta);
                    let a = m.directional_derivative(dir * r, dir).unwrap().arg();
                    if !prev_arg[j].is_nan() {
                        if j == 0 {
                            assert!(a < prev_arg[j], "beta={beta} r={r}");
                        } else {
                            assert!(a > prev_arg[j], "beta={beta} r={r}");
                        }
                    }
                    prev_arg[j] = a;
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reduce_beta_roundtrip(bt in -50.0f64..50.0) {
            let (b, l) = reduce_beta(bt);
            prop_assert!(b > -FRAC_PI_2 && b <= FRAC_PI_2);
            prop_assert!((b + l as f64 * PI - bt).abs() < 1e-12);
        }

        #[test]
        fn jacobian_forms_agree(n in 3u32..9, r in 0.0f64..0.99, t in -PI..PI) {
            let m = map(n, 0.0);
            let z = Complex64::from_polar(r, t);
            let a = m.jacobian(z).unwrap();
            let b = m.jacobian_from_derivatives(z).unwrap();
            prop_assert!(a > 0.0);
            prop_assert!((a - b).abs() <= 1e-11 * a.abs().max(1.0));
        }

        #[test]
        fn rotational_symmetry(n in 3u32..8, beta in -1.5f64..1.5, r in 0.0f64..1.0, t in -PI..PI, k in 0u32..8) {
            let m = map(n, beta);
            let e = Complex64::from_polar(1.0, 2.0 * PI * f64::from(k) / f64::from(n));
            let z = Complex64::from_polar(r, t);
            let lhs = m.f(e * z).unwrap().f;
            let rhs = e * m.f(z).unwrap().f;
            prop_assert!((lhs - rhs).norm() < 1e-11);
        }
    }
}
