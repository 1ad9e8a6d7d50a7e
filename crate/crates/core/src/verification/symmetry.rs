//! Pointwise identities of `f_beta` at seeded random interior points.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CheckResult;
use crate::error::Result;
use crate::mapping::{canonical_rotation, reduce_beta, RosetteMap, RosetteParams};
use crate::special_fns::k_n;

/// Residual tolerance for the exact identities.
pub const IDENTITY_TOL: f64 = 1e-10;

/// Uniform points in the open unit disk.
pub fn disk_samples(count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = rng.gen::<f64>().sqrt();
            let t = rng.gen_range(-PI..PI);
            Complex64::from_polar(r, t)
        })
        .collect()
}

struct Tracker {
    name: &'static str,
    tol: f64,
    worst: f64,
    count: usize,
}

impl Tracker {
    fn new(name: &'static str, tol: f64) -> Self {
        Self {
            name,
            tol,
            worst: 0.0,
            count: 0,
        }
    }

    fn record(&mut self, residual: f64) {
        self.count += 1;
        if residual.is_nan() || residual > self.worst {
            self.worst = if residual.is_nan() {
                f64::INFINITY
            } else {
                residual
            };
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult::new(self.name, self.worst < self.tol, self.worst, self.count)
    }
}

/// Evaluates every mapping identity at `sample_count` seeded points.
pub fn symmetry_suite(
    params: RosetteParams,
    sample_count: usize,
    seed: u64,
) -> Result<Vec<CheckResult>> {
    let map = RosetteMap::new(params)?;
    let n = params.n;
    let nf = params.nf();
    let beta = params.beta;
    let (beta_c, l) = reduce_beta(beta);
    let canonical = map.with_beta(beta_c);
    let flipped = map.with_beta(-beta);
    let shifted = map.with_beta(beta + PI);
    let half_pi = map.with_beta(FRAC_PI_2);
    let zero = map.with_beta(0.0);
    let points = disk_samples(sample_count, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x005e_ed0f_5eed);

    let mut rot = Tracker::new("rotational_symmetry", IDENTITY_TOL);
    let mut summand = Tracker::new("summand_rotation_law", IDENTITY_TOL);
    let mut refl = Tracker::new("reflection_conjugate_beta", IDENTITY_TOL);
    let mut shift = Tracker::new("beta_plus_pi_law", IDENTITY_TOL);
    let mut trans = Tracker::new("beta_reduction_law", IDENTITY_TOL);
    let mut half = Tracker::new("half_pi_reflection", IDENTITY_TOL);
    let mut zero_refl = Tracker::new("beta_zero_reflection", IDENTITY_TOL);
    let mut canon = Tracker::new("canonical_rotation", IDENTITY_TOL);
    let mut dil = Tracker::new("dilatation_quotient", 1e-12);
    let mut jac = Tracker::new("jacobian_positive", f64::MIN_POSITIVE);
    let mut jac_forms = Tracker::new("jacobian_forms_agree", 1e-9);
    let mut fd = Tracker::new("derivative_finite_difference", 1e-6);

    let e = |a: f64| Complex64::from_polar(1.0, a);
    let eta = PI / (2.0 * nf) - FRAC_PI_4;
    let gamma_half = -PI / (2.0 * nf);

    for &z in &points {
        let fz = map.f(z)?.f;

        let k = rng.gen_range(1..n);
        let rk = e(2.0 * PI * f64::from(k) / nf);
        rot.record((map.f(rk * z)?.f - rk * fz).norm());

        let j = rng.gen_range(1..2 * n);
        let rj = e(f64::from(j) * PI / nf);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let (h, g) = (map.h(z)?, map.g(z)?);
        let (hj, gj) = (map.h(rj * z)?, map.g(rj * z)?);
        summand.record((hj - rj * h).norm().max((gj - rj.conj() * g * sign).norm()));

        refl.record((map.f(z.conj())?.f - flipped.f(z)?.f.conj()).norm());

        let lhs = e(-(FRAC_PI_2 + PI / nf)) * shifted.f(e(PI / nf) * z)?.f;
        shift.record((fz - lhs).norm());

        let lf = l as f64;
        let rhs = e(lf * (PI / nf + FRAC_PI_2)) * canonical.f(e(-lf * PI / nf) * z)?.f;
        trans.record((fz - rhs).norm());

        let a = e(eta) * half_pi.f(e(gamma_half) * z.conj())?.f;
        let b = (e(eta) * half_pi.f(e(gamma_half) * z)?.f).conj();
        half.record((a - b).norm());

        zero_refl.record((zero.f(z.conj())?.f - zero.f(z)?.f.conj()).norm());

        let theta = rng.gen_range(-PI..PI);
        let theta_t = rng.gen_range(-PI..PI);
        let (gamma, b_rot) = canonical_rotation(theta, theta_t);
        let lhs = e(theta) * h + (e(theta_t) * g).conj();
        let rhs = e(gamma) * map.with_beta(b_rot).f(z)?.f;
        canon.record((lhs - rhs).norm());

        if let (Ok(dh), Ok(dg)) = (map.dh(z), map.dg(z)) {
            let omega = map.dilatation(z);
            let q = dg / dh;
            dil.record(if omega == Complex64::new(0.0, 0.0) {
                q.norm()
            } else {
                (q - omega).norm() / omega.norm()
            });
            let jz = map.jacobian(z)?;
            jac.record(if jz > 0.0 { 0.0 } else { 1.0 - jz.min(0.0) });
            let jd = map.jacobian_from_derivatives(z)?;
            jac_forms.record((jz - jd).abs() / jz.abs().max(1.0));
        }

        if z.norm() <= 0.9 {
            let d = 1e-5;
            for dir in [Complex64::new(1.0, 0.0), Complex64::i()] {
                let num = (map.f(z + dir * d)?.f - map.f(z - dir * d)?.f) / (2.0 * d);
                fd.record((num - map.directional_derivative(z, dir)?).norm());
            }
        }
    }

    let mut scaling = Tracker::new("scaling_coherence", 1e-10);
    let one = map.f(Complex64::new(1.0, 0.0))?.f.norm_sqr();
    let node = map.f_polar(1.0, PI / nf)?.f.norm_sqr();
    let kn = k_n(n);
    let sec2 = 1.0 / (PI / (2.0 * nf)).cos().powi(2);
    scaling.record(((one + node) - 2.0 * kn * kn * sec2).abs());

    Ok(vec![
        rot.finish(),
        summand.finish(),
        refl.finish(),
        shift.finish(),
        trans.finish(),
        half.finish(),
        zero_refl.finish(),
        canon.finish(),
        dil.finish(),
        jac.finish(),
        jac_forms.finish(),
        fd.finish(),
        scaling.finish(),
    ])
}
