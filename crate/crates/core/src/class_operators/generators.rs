use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::series_core::{FunctionRep, TruncatedSeries, DEFAULT_SAMPLES};

/// Radius of the circle on which generator inputs are checked.
pub const SCHWARZ_CHECK_RADIUS: f64 = 0.999;

const SCHWARZ_GUARD: f64 = 1e-12;

/// Sampled sup of the stored polynomial on `|z| = SCHWARZ_CHECK_RADIUS`.
fn sampled_sup(w: &TruncatedSeries) -> f64 {
    let poly = TruncatedSeries::exact(w.coeffs().to_vec());
    poly.eval_on_circle(SCHWARZ_CHECK_RADIUS, DEFAULT_SAMPLES)
        .expect("radius and sample count are valid")
        .max_modulus()
}

/// Member of `M(lambda)` with `z/f = 1 - b1 z + lambda sum_{n>=2} w_n z^n/(n-1)^2`,
/// so `f''(0)/2 = b1` and the `M` defect is `lambda w`.
///
/// `w` is read as the polynomial of its stored coefficients; it must vanish
/// to second order and satisfy `|w(z)| <= |z|^2` on the check circle.
pub fn generate_m_member(w: &TruncatedSeries, lambda: f64, b1: Complex64) -> Result<FunctionRep> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::ParamOutOfRange(format!(
            "lambda = {lambda} must be positive"
        )));
    }
    if !(b1.norm() <= 2.0) {
        return Err(Error::ParamOutOfRange(format!(
            "|b1| = {} exceeds 2",
            b1.norm()
        )));
    }
    if w.coeff(0) != Complex64::new(0.0, 0.0) || w.coeff(1) != Complex64::new(0.0, 0.0) {
        return Err(Error::NotSchwarzBounded(
            "w must vanish to second order at 0".into(),
        ));
    }
    let sup = sampled_sup(&w.shift_down(2));
    if sup > 1.0 + SCHWARZ_GUARD {
        return Err(Error::NotSchwarzBounded(format!("sup |w/z^2| = {sup} > 1")));
    }
    let order = w.order().max(1);
    let mut b = vec![Complex64::new(0.0, 0.0); order + 1];
    b[0] = Complex64::new(1.0, 0.0);
    b[1] = -b1;
    for (n, slot) in b.iter_mut().enumerate().skip(2) {
        let m = (n - 1) as f64;
        *slot = w.coeff(n) * (lambda / (m * m));
    }
    FunctionRep::from_z_over_f(TruncatedSeries::exact(b))
}

/// Member of `Omega` given by `f(z) = z + (z^2/2) int_0^1 w(tz) dt`, so
/// `a_n = w_{n-2} / (2(n-1))` and `z f' - f = (z^2/2) w`.
///
/// `w` is read as the polynomial of its stored coefficients and must satisfy
/// `|w| <= 1` on the check circle. The result has order `w.order() + 1`.
pub fn generate_omega_member(w: &TruncatedSeries) -> Result<FunctionRep> {
    let sup = sampled_sup(w);
    if sup > 1.0 + SCHWARZ_GUARD {
        return Err(Error::NotSchwarzBounded(format!("sup |w| = {sup} > 1")));
    }
    let order = w.order() + 1;
    let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
    c[0] = Complex64::new(1.0, 0.0);
    for (m, slot) in c.iter_mut().enumerate().skip(1) {
        *slot = w.coeff(m - 1) / (2.0 * m as f64);
    }
    FunctionRep::from_f_over_z(TruncatedSeries::exact(c))
}

fn random_coeffs(rng: &mut ChaCha8Rng, degree: usize) -> Vec<Complex64> {
    (0..=degree)
        .map(|_| {
            let radius: f64 = rng.random::<f64>().sqrt();
            let theta: f64 = rng.random_range(0.0..2.0 * PI);
            Complex64::from_polar(radius, theta)
        })
        .collect()
}

/// Random polynomial of the given degree with `|p| <= 1` on the closed unit
/// disk: the coefficients are divided by the sampled max on `|z| = 1` plus
/// the Lipschitz slack between samples, then shrunk by a random factor in
/// `[1/2, 1]`.
pub fn random_schwarz_polynomial(rng: &mut ChaCha8Rng, degree: usize) -> TruncatedSeries {
    let c = random_coeffs(rng, degree);
    let samples = 1024;
    let max = (0..samples)
        .map(|k| {
            let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / samples as f64);
            c.iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
                .norm()
        })
        .fold(0.0, f64::max);
    let lipschitz: f64 = c.iter().enumerate().map(|(n, a)| n as f64 * a.norm()).sum();
    let bound = max + lipschitz * PI / samples as f64;
    let shrink: f64 = rng.random_range(0.5..=1.0);
    TruncatedSeries::exact(c.into_iter().map(|a| a * (shrink / bound)).collect())
}

/// Random polynomial with `sum |w_k| = s`, `s` uniform in `[1/2, 1]`.
pub fn random_l1_polynomial(rng: &mut ChaCha8Rng, degree: usize) -> TruncatedSeries {
    let c = random_coeffs(rng, degree);
    let total: f64 = c.iter().map(|a| a.norm()).sum();
    let s: f64 = rng.random_range(0.5..=1.0);
    TruncatedSeries::exact(c.into_iter().map(|a| a * (s / total)).collect())
}

fn member_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// `count` members of `M(lambda)` from `w = z^2 phi` with `phi` a random
/// Schwarz-bounded polynomial of degree `degree`, and a random `|b1| <= 2`.
/// Member `i` depends only on `(seed, i)`.
pub fn seeded_m_members(
    seed: u64,
    count: usize,
    lambda: f64,
    degree: usize,
    exec: Execution,
) -> Result<Vec<FunctionRep>> {
    exec.map_indexed(count, |i| {
        let mut rng = member_rng(seed, i);
        let phi = random_schwarz_polynomial(&mut rng, degree);
        let w = phi.shift_up(2);
        let b1 = Complex64::from_polar(2.0 * rng.random::<f64>(), rng.random_range(0.0..2.0 * PI));
        generate_m_member(&w, lambda, b1)
    })
    .into_iter()
    .collect()
}

/// `count` members of `Omega_A` from `l1`-normalized Schwarz data, so that
/// `sum (n-1)|a_n| = sum |w_k| / 2 <= 1/2`.
pub fn seeded_omega_a_members(
    seed: u64,
    count: usize,
    degree: usize,
    exec: Execution,
) -> Result<Vec<FunctionRep>> {
    exec.map_indexed(count, |i| {
        let mut rng = member_rng(seed, i);
        generate_omega_member(&random_l1_polynomial(&mut rng, degree))
    })
    .into_iter()
    .collect()
}
