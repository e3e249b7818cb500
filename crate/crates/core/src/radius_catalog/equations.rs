//! Evaluators `G(r)` of the catalog. Every `G` is negative on the good side
//! of its radius.

use crate::special_functions::polylog;

use super::{Evaluation, Params};

const EPS: f64 = f64::EPSILON;

fn plain(value: f64, magnitude: f64) -> Evaluation {
    Evaluation {
        value,
        abs_error: 16.0 * EPS * magnitude.abs().max(value.abs()),
        clamped: false,
    }
}

fn poly(coeffs: &[f64], r: f64) -> Evaluation {
    let value = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c);
    let magnitude = coeffs
        .iter()
        .rev()
        .fold(0.0, |acc: f64, c: &f64| acc * r + c.abs());
    plain(value, magnitude)
}

pub fn theo(p: &Params, r: f64) -> Evaluation {
    let r2 = r * r;
    let left = r2 * r2 * (r2 * r2 + 4.0 * r2 + 1.0);
    let right = p.lambda * p.lambda * (1.0 - r2).powi(4);
    plain(left - right, left + right)
}

pub fn theo1(_: &Params, r: f64) -> Evaluation {
    poly(&[-1.0, 0.0, 4.0, 0.0, -5.0, 0.0, 8.0], r)
}

pub fn dilation_m(_: &Params, r: f64) -> Evaluation {
    poly(&[-1.0, 0.0, 1.0, 0.0, 1.0], r)
}

pub fn th8i(_: &Params, r: f64) -> Evaluation {
    let left = r * r * (3.0 + 4.0 * r - r * r);
    let right = (1.0 - r).powi(4);
    plain(left - right, left.abs() + right)
}

pub fn th8ii(_: &Params, r: f64) -> Evaluation {
    poly(&[-1.0, 3.0, -2.0, 2.0], r)
}

pub fn th8iii(_: &Params, r: f64) -> Evaluation {
    poly(&[-1.0, 4.0, -4.0, 6.0, -2.0], r)
}

pub fn th8iv(_: &Params, r: f64) -> Evaluation {
    let l = (-r).ln_1p();
    let q = r * r - 5.0 * r + 4.0;
    let value = 3.0 * r - 2.0 * r * r + q * l;
    plain(value, 3.0 * r + 2.0 * r * r + (q * l).abs())
}

/// `A_1(r) = (-4r^2 + 4r^4 + r^6)/(1-r^2)^2 - 12 log(1-r^2) - 8 Li_2(r^2)`,
/// which equals `r^2 sum_{n>=2} (n-1)^3/(n+1)^2 r^{2n}`.
pub fn a1(r: f64) -> Evaluation {
    let r2 = r * r;
    let li = polylog(2, r2).expect("r^2 in [0,1)");
    let rational = (-4.0 * r2 + 4.0 * r2 * r2 + r2 * r2 * r2) / ((1.0 - r2) * (1.0 - r2));
    let log = (-r2).ln_1p();
    let value = rational - 12.0 * log - 8.0 * li.value;
    let magnitude = rational.abs() + 12.0 * log.abs() + 8.0 * li.value;
    Evaluation {
        value,
        abs_error: 16.0 * EPS * magnitude + 8.0 * li.abs_error_bound,
        clamped: false,
    }
}

/// `A_2(r) = (8r^2 - 20r^4 + 15r^6 - r^8)/(8 - 24r^2 + 24r^4 - 8r^6) + log(1-r^2)`.
pub fn a2(r: f64) -> f64 {
    let r2 = r * r;
    let num = 8.0 * r2 - 20.0 * r2 * r2 + 15.0 * r2.powi(3) - r2.powi(4);
    let den = 8.0 - 24.0 * r2 + 24.0 * r2 * r2 - 8.0 * r2.powi(3);
    num / den + (-r2).ln_1p()
}

/// `A_3(r) = A_1(r)/r^2 - 1`.
pub fn th9i(_: &Params, r: f64) -> Evaluation {
    let r2 = r * r;
    let li = polylog(2, r2).expect("r^2 in [0,1)");
    let rational = (-4.0 + 4.0 * r2 + r2 * r2) / ((1.0 - r2) * (1.0 - r2));
    let log = -12.0 / r2 * (-r2).ln_1p();
    let dilog = -8.0 / r2 * li.value;
    let value = rational + log + dilog - 1.0;
    let magnitude = rational.abs() + log.abs() + dilog.abs() + 1.0;
    Evaluation {
        value,
        abs_error: 16.0 * EPS * magnitude + 8.0 / r2 * li.abs_error_bound,
        clamped: false,
    }
}

pub fn t1(_: &Params, r: f64) -> Evaluation {
    poly(&[-1.0, 0.0, 6.0, 16.0, 9.0], r)
}

pub fn t1_cor_m2(_: &Params, r: f64) -> Evaluation {
    poly(&[-1.0, 0.0, 2.0, 0.0, 9.0], r)
}

/// `3(l^2 + l l' + l'^2) r^4 + (l + l') r^2 - mu`.
pub fn t1_cor2(p: &Params, r: f64) -> Evaluation {
    let (l, m) = (p.lambda, p.lambda2);
    let q = 3.0 * (l * l + l * m + m * m);
    let r2 = r * r;
    let value = q * r2 * r2 + (l + m) * r2 - p.mu;
    plain(value, q * r2 * r2 + (l + m) * r2 + p.mu)
}

/// Pieces shared by the three product-radius bounds.
struct ProductTerms {
    /// `2r^2 sqrt(-8r^10 + 31r^8 - 44r^6 + 27r^4) / (1-r^2)^2`
    root1: f64,
    /// `sum_{n>=4} (n-1)^2 r^n = r^4 (4r^2 - 11r + 9)/(1-r)^3`
    t5: f64,
    /// `sqrt(r^8 (15 - 20r^2 + 15r^4 - 4r^6)/(1-r^2)^4 - r^4 (log(1-r^2) + r^2))`
    root3: f64,
    magnitude: f64,
    clamped: bool,
}

fn product_terms(r: f64) -> ProductTerms {
    let r2 = r * r;
    let r4 = r2 * r2;
    let rad1 = -8.0 * r4 * r4 * r2 + 31.0 * r4 * r4 - 44.0 * r4 * r2 + 27.0 * r4;
    let rad1_mag = 8.0 * r4 * r4 * r2 + 31.0 * r4 * r4 + 44.0 * r4 * r2 + 27.0 * r4;
    let om = 1.0 - r2;
    let first = r4 * r4 * (15.0 - 20.0 * r2 + 15.0 * r4 - 4.0 * r4 * r2) / (om * om * om * om);
    let second = r4 * ((-r2).ln_1p() + r2);
    let rad3 = first - second;
    let clamped = rad1 < 0.0 || rad3 < 0.0;
    let root1 = 2.0 * r2 * rad1.max(0.0).sqrt() / (om * om);
    let t5 = r4 * (4.0 * r2 - 11.0 * r + 9.0) / (1.0 - r).powi(3);
    let root3 = rad3.max(0.0).sqrt();
    // Square roots amplify a radicand error e to about e / (2 sqrt(x)).
    let sqrt_err = |x: f64, mag: f64| {
        let e = 16.0 * EPS * mag;
        if x > e {
            e / (2.0 * x.sqrt())
        } else {
            e.sqrt()
        }
    };
    let err1 = 2.0 * r2 / (om * om) * sqrt_err(rad1, rad1_mag);
    let err3 = sqrt_err(rad3, first.abs() + second.abs());
    ProductTerms {
        root1,
        t5,
        root3,
        magnitude: root1 + t5 + root3 + (err1 + err3) / (16.0 * EPS),
        clamped,
    }
}

fn product_bound(r: f64, quad: f64, cubic: f64, root3_weight: f64) -> Evaluation {
    let t = product_terms(r);
    let head = quad * r * r + cubic * r * r * r;
    let value = head + t.root1 + t.t5 + root3_weight * t.root3 - 1.0;
    Evaluation {
        value,
        abs_error: 16.0 * EPS * (head + t.magnitude * (1.0 + root3_weight) + 1.0),
        clamped: t.clamped,
    }
}

/// `A(r)`: both factors with free second coefficients.
pub fn t4(_: &Params, r: f64) -> Evaluation {
    product_bound(r, 6.0, 4.0 * (2f64.sqrt() + 4.0), 4.0)
}

/// `B(r)`: one factor with vanishing second coefficient.
pub fn t4b(_: &Params, r: f64) -> Evaluation {
    product_bound(r, 2.0, 4.0 * (2f64.sqrt() + 2.0), 2.0)
}

/// `C(r)`: both second coefficients vanish.
pub fn t4c(_: &Params, r: f64) -> Evaluation {
    product_bound(r, 2.0, 4.0 * 2f64.sqrt(), 0.0)
}

pub fn bohr_g1(_: &Params, r: f64) -> Evaluation {
    poly(&[-1.0, 2.0, 2.0], r)
}

pub fn bohr_g2(_: &Params, r: f64) -> Evaluation {
    poly(&[-1.0, 2.0, 1.0], r)
}

pub fn bohr_g3(_: &Params, r: f64) -> Evaluation {
    poly(&[-1.0, 4.0, 4.0], r)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Partial sums of the series the closed-form pieces stand for.
    fn t5_series(r: f64) -> f64 {
        (4..5000)
            .map(|n| ((n - 1) as f64).powi(2) * r.powi(n))
            .sum()
    }

    #[test]
    fn t5_matches_series() {
        for &r in &[0.1, 0.26, 0.35, 0.6] {
            assert!((product_terms(r).t5 - t5_series(r)).abs() < 1e-13);
        }
    }

    #[test]
    fn radicands_never_clamp() {
        for k in 1..1000 {
            let r = k as f64 / 1000.0;
            assert!(!product_terms(r).clamped, "r = {r}");
        }
    }

    #[test]
    fn a1_is_weighted_square_sum() {
        for &r in &[0.2_f64, 0.5, 0.7829, 0.9] {
            let series: f64 = (2..20000)
                .map(|n| {
                    let m = n as f64;
                    (m - 1.0).powi(3) / (m + 1.0).powi(2) * r.powi(2 * n as i32)
                })
                .sum();
            let a = a1(r);
            assert!((a.value / (r * r) - series).abs() < 1e-11, "r = {r}");
        }
    }

    #[test]
    fn theo_reduces_to_theo1_at_unit_lambda() {
        let p = Params::default();
        for k in 1..100 {
            let r = k as f64 / 100.0;
            assert!((theo(&p, r).value - theo1(&p, r).value).abs() < 1e-14);
        }
    }

    #[test]
    fn pointwise_against_high_precision_values() {
        // Values computed with 30-digit arithmetic.
        let p = Params::default();
        let cases: [(fn(&Params, f64) -> Evaluation, f64, f64); 5] = [
            (t4, 0.2, -0.520_944_729_007_139_9),
            (t4b, 0.2, -0.758_239_347_318_349_3),
            (t4c, 0.2, -0.835_533_965_629_558_7),
            (th9i, 0.5, -0.978_367_195_184_181_1),
            (th8iv, 0.5, -0.213_007_565_979_904_3),
        ];
        for (g, r, expect) in cases {
            let e = g(&p, r);
            assert!((e.value - expect).abs() < 1e-14, "{} vs {expect}", e.value);
            assert!(e.abs_error < 1e-12);
        }
    }
}
