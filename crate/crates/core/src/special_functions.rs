//! Polylogarithm on `[0, 1)` with explicit error bounds, and the weights
//! `int_0^1 t^{n-2} log(1/t) dt` of the `M(lambda)` integral representation.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// `Li_k(x)` together with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolylogValue {
    pub k: u32,
    pub x: f64,
    pub value: f64,
    pub abs_error_bound: f64,
}

/// Direct sum `sum_{n>=1} x^n / n^k` until the geometric tail bound of the
/// remainder drops below the rounding floor.
fn direct_series(k: u32, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, 0.0);
    }
    let mut sum = 0.0;
    let mut xn = 1.0;
    let mut n = 1u64;
    loop {
        xn *= x;
        let term = xn / (n as f64).powi(k as i32);
        sum += term;
        // Remainder <= x^{n+1}/(n+1)^k * 1/(1-x).
        let next = xn * x / ((n + 1) as f64).powi(k as i32);
        let tail = next / (1.0 - x);
        if tail <= 0.25 * EPS * sum || n >= 100_000_000 {
            let rounding = 2.0 * n as f64 * EPS * sum;
            return (sum, tail + rounding);
        }
        n += 1;
    }
}

/// Bernoulli numbers `B_0 .. B_m` (convention `B_1 = -1/2`).
fn bernoulli(m: usize) -> Vec<f64> {
    let mut b = vec![0.0; m + 1];
    b[0] = 1.0;
    for n in 1..=m {
        let mut s = 0.0;
        let mut binom = 1.0; // C(n+1, k)
        for (k, bk) in b.iter().enumerate().take(n) {
            s += binom * bk;
            binom *= (n + 1 - k) as f64 / (k + 1) as f64;
        }
        b[n] = -s / (n + 1) as f64;
    }
    b
}

/// Riemann zeta at an integer `s >= 2`, Euler-Maclaurin with cutoff 12.
fn zeta_int(s: u32, bern: &[f64]) -> f64 {
    let s_f = s as f64;
    let j = 12.0f64;
    let mut sum: f64 = (1..12).rev().map(|n| (n as f64).powf(-s_f)).sum();
    sum += j.powf(1.0 - s_f) / (s_f - 1.0) + 0.5 * j.powf(-s_f);
    let mut rising = s_f; // s (s+1) ... (s+2m-2)
    let mut fact = 2.0; // (2m)!
    for m in 1..=8usize {
        sum += bern[2 * m] / fact * rising * j.powf(-s_f - (2 * m) as f64 + 1.0);
        rising *= (s_f + (2 * m - 1) as f64) * (s_f + (2 * m) as f64);
        fact *= ((2 * m + 1) * (2 * m + 2)) as f64;
    }
    sum
}

/// Expansion in `mu = ln x` for `x` close to 1, valid for `|mu| < 2 pi`:
/// `Li_k(e^mu) = sum_{m != k-1} zeta(k-m) mu^m/m! + mu^{k-1}/(k-1)! (H_{k-1} - ln(-mu))`.
///
/// For `m > k` the zeta values at nonpositive integers come from the
/// functional equation, written so no large factorials appear.
fn log_expansion(k: u32, x: f64) -> (f64, f64) {
    let mu = x.ln();
    let bern = bernoulli(16);
    let harmonic: f64 = (1..k).map(|j| 1.0 / j as f64).sum();
    let two_pi = 2.0 * PI;
    let mut sum = 0.0;
    let mut pow_fact = 1.0; // mu^m / m!
    for m in 0..k {
        let term = if m == k - 1 {
            pow_fact * (harmonic - (-mu).ln())
        } else {
            zeta_int(k - m, &bern) * pow_fact
        };
        sum += term;
        pow_fact *= mu / (m + 1) as f64;
    }
    // m = k: zeta(0) = -1/2.
    sum += -0.5 * pow_fact;
    let mu_k1 = mu.powi(k as i32 - 1);
    let mut last = 0.0;
    for j in 1..400u32 {
        // m = k + j, zeta(-j) = 2 (2 pi)^{-(j+1)} cos(pi (j+1)/2) j! zeta(j+1).
        if j % 2 == 0 {
            continue;
        }
        let sign = if ((j + 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let m = k + j;
        // j!/m! = 1/((j+1)...(m))
        let ratio: f64 = (j + 1..=m).map(|i| 1.0 / i as f64).product();
        let term =
            2.0 * sign * zeta_int(j + 1, &bern) * (mu / two_pi).powi(j as i32 + 1) * mu_k1 * ratio;
        sum += term;
        last = term.abs();
        if last < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    // Remaining terms shrink by at least (mu/2pi)^2 <= 0.013 per step.
    (sum, 2.0 * last + 64.0 * EPS * sum.abs().max(1.0))
}

/// `Li_k(x) = sum_{n>=1} x^n / n^k` for `0 <= x < 1`.
///
/// `k = 1` is `-ln(1-x)`; `k = 2` uses the direct series up to `x = 1/2`
/// and the reflection `Li_2(x) = pi^2/6 - ln x ln(1-x) - Li_2(1-x)` above;
/// `k >= 3` switches to the `ln x` expansion above `x = 1/2`.
pub fn polylog(k: u32, x: f64) -> Result<PolylogValue> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::ArgumentOutOfRange {
            value: x,
            range: "[0,1)",
        });
    }
    if k == 0 {
        return Err(Error::ArgumentOutOfRange {
            value: 0.0,
            range: "k >= 1",
        });
    }
    let (value, err) = match k {
        1 => {
            let v = -(-x).ln_1p();
            (v, 2.0 * EPS * v.abs())
        }
        2 if x <= 0.5 => direct_series(2, x),
        2 => {
            let (li, e) = direct_series(2, 1.0 - x);
            let log_term = x.ln() * (-x).ln_1p();
            let v = PI * PI / 6.0 - log_term - li;
            (
                v,
                e + 4.0 * EPS * (PI * PI / 6.0 + log_term.abs() + li.abs()),
            )
        }
        _ if x <= 0.5 => direct_series(k, x),
        _ => log_expansion(k, x),
    };
    Ok(PolylogValue {
        k,
        x,
        value,
        abs_error_bound: err,
    })
}

/// `int_0^1 t^{n-2} log(1/t) dt = 1/(n-1)^2`.
pub fn log_moment(n: u32) -> f64 {
    assert!(n >= 2, "log_moment requires n >= 2");
    let m = (n - 1) as f64;
    1.0 / (m * m)
}

/// Value with a two-sided certified bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketedSum {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

/// `sum_{k >= start} 1/k^2` from a partial sum through `start + terms - 1`
/// plus the integral bracket `1/(M+1) <= sum_{k>M} 1/k^2 <= 1/M` on the tail.
/// The point estimate uses the Euler-Maclaurin tail `1/M - 1/(2M^2) + 1/(6M^3)`.
pub fn inverse_square_sum_from(start: u64, terms: u64) -> BracketedSum {
    assert!(start >= 1 && terms >= 1);
    let last = start + terms - 1;
    // Smallest terms first.
    let partial: f64 = (start..=last)
        .rev()
        .map(|k| 1.0 / (k as f64 * k as f64))
        .sum();
    let m = last as f64;
    let tail = 1.0 / m - 1.0 / (2.0 * m * m) + 1.0 / (6.0 * m * m * m);
    BracketedSum {
        value: partial + tail,
        lower: partial + 1.0 / (m + 1.0),
        upper: partial + 1.0 / m,
    }
}
