use serde::Serialize;

use super::{ClassId, ClassTag, VERDICT_GUARD};
use crate::error::{Error, Result};
use crate::series_core::{FunctionRep, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// Coefficient sum whose smallness implies membership.
    SumSufficient,
    /// Area-type inequality every univalent function satisfies.
    AreaNecessary,
    /// `sum (n-1)^4 |b_n|^2 <= 1`, satisfied by every member of `M`.
    QuarticNecessary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub value: f64,
    pub bound: f64,
    pub holds: bool,
}

impl Certificate {
    fn new(kind: CertificateKind, value: f64, bound: f64) -> Self {
        Self {
            kind,
            value,
            bound,
            holds: value <= bound + VERDICT_GUARD,
        }
    }
}

/// `sum_{n>=from} w(n) |c_n|` over the stored coefficients plus the
/// majorant tail of the weighted series on the unit circle. The tail is
/// infinite when the majorant does not decay there or none is registered.
fn weighted_abs_sum(
    s: &TruncatedSeries,
    from: usize,
    w: impl Fn(f64) -> f64,
    weight_power: f64,
) -> f64 {
    let head: f64 = s
        .coeffs()
        .iter()
        .enumerate()
        .skip(from)
        .map(|(n, c)| w(n as f64) * c.norm())
        .sum();
    let tail = match s.majorant() {
        Some(m) => m.weighted(1.0, weight_power).tail_sum(s.order(), 1.0),
        None => f64::INFINITY,
    };
    head + tail
}

/// Sufficient coefficient condition: for `M(lambda)`,
/// `sum_{n>=2} (n-1)^2 |b_n| <= lambda`; for `Omega_A`,
/// `sum_{n>=2} (n-1) |a_n| <= 1/2`.
pub fn certificate_sufficient(rep: &FunctionRep, class_id: ClassId) -> Result<Certificate> {
    match class_id.tag {
        ClassTag::M => {
            let v = weighted_abs_sum(rep.z_over_f(), 2, |x| (x - 1.0) * (x - 1.0), 2.0);
            Ok(Certificate::new(
                CertificateKind::SumSufficient,
                v,
                class_id.lambda,
            ))
        }
        ClassTag::OmegaA => {
            // (n-1) a_n = m c_m with c = f/z, m = n-1.
            let v = weighted_abs_sum(rep.f_over_z(), 1, |m| m, 1.0);
            Ok(Certificate::new(CertificateKind::SumSufficient, v, 0.5))
        }
        _ => Err(Error::UnsupportedClass(class_id.tag.to_string())),
    }
}

/// `sum_{n>=1} (n - mu) |b_n|^2` over the stored coefficients, against `mu`.
pub fn area_functional(rep: &FunctionRep, mu: f64) -> Result<Certificate> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::ParamOutOfRange(format!(
            "mu = {mu} must be positive"
        )));
    }
    let v: f64 = rep
        .z_over_f()
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, b)| (n as f64 - mu) * b.norm_sqr())
        .sum();
    Ok(Certificate::new(CertificateKind::AreaNecessary, v, mu))
}

/// `sum_{n>=2} (n-1)^4 |b_n|^2` over the stored coefficients, against 1.
/// The partial sum only grows with more terms, so a failure excludes the
/// function from `M`.
pub fn quartic_necessary(rep: &FunctionRep) -> Certificate {
    let v: f64 = rep
        .z_over_f()
        .coeffs()
        .iter()
        .enumerate()
        .skip(2)
        .map(|(n, b)| ((n - 1) as f64).powi(4) * b.norm_sqr())
        .sum();
    Certificate::new(CertificateKind::QuarticNecessary, v, 1.0)
}
