//! Defect series of the classes `M(lambda)`, `U(lambda)`, `P(lambda)`,
//! `Omega` and `Omega_A`, their sampled sup on circles, coefficient
//! certificates, and generators of class members from Schwarz data.
//!
//! Sign convention: `z/f = 1 + b_1 z + b_2 z^2 + ...`, so `b_1 = -f''(0)/2`.

mod certificates;
mod generators;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::series_core::{FunctionRep, TruncatedSeries};

pub use certificates::{
    area_functional, certificate_sufficient, quartic_necessary, Certificate, CertificateKind,
};
pub use generators::{
    generate_m_member, generate_omega_member, random_l1_polynomial, random_schwarz_polynomial,
    seeded_m_members, seeded_omega_a_members, SCHWARZ_CHECK_RADIUS,
};

/// Slack on verdict comparisons.
pub const VERDICT_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassTag {
    M,
    U,
    P,
    Omega,
    OmegaA,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassTag::M => "M",
            ClassTag::U => "U",
            ClassTag::P => "P",
            ClassTag::Omega => "Omega",
            ClassTag::OmegaA => "OmegaA",
        };
        f.write_str(s)
    }
}

impl FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" => Ok(ClassTag::M),
            "U" => Ok(ClassTag::U),
            "P" => Ok(ClassTag::P),
            "Omega" => Ok(ClassTag::Omega),
            "OmegaA" => Ok(ClassTag::OmegaA),
            other => Err(Error::Parse {
                position: 0,
                message: format!("unknown class `{other}` (expected M, U, P, Omega or OmegaA)"),
            }),
        }
    }
}

/// A class together with its parameter. `lambda` is ignored for `Omega`
/// and `OmegaA`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassId {
    pub tag: ClassTag,
    pub lambda: f64,
}

impl ClassId {
    pub fn new(tag: ClassTag, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::ParamOutOfRange(format!(
                "lambda = {lambda} must be positive"
            )));
        }
        Ok(Self { tag, lambda })
    }

    pub fn m(lambda: f64) -> Self {
        Self::new(ClassTag::M, lambda).expect("lambda > 0")
    }

    pub fn u(lambda: f64) -> Self {
        Self::new(ClassTag::U, lambda).expect("lambda > 0")
    }

    pub fn p(lambda: f64) -> Self {
        Self::new(ClassTag::P, lambda).expect("lambda > 0")
    }

    pub fn omega() -> Self {
        Self {
            tag: ClassTag::Omega,
            lambda: 1.0,
        }
    }

    pub fn omega_a() -> Self {
        Self {
            tag: ClassTag::OmegaA,
            lambda: 1.0,
        }
    }

    /// Bound on the modulus of the defect.
    pub fn threshold(&self) -> f64 {
        match self.tag {
            ClassTag::M | ClassTag::U => self.lambda,
            ClassTag::P => 2.0 * self.lambda,
            ClassTag::Omega | ClassTag::OmegaA => 0.5,
        }
    }

    /// `Omega` is defined by a strict inequality.
    pub fn is_strict(&self) -> bool {
        self.tag == ClassTag::Omega
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            ClassTag::Omega | ClassTag::OmegaA => write!(f, "{}", self.tag),
            _ => write!(f, "{}({})", self.tag, self.lambda),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedInside,
    CertifiedOutside,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CertifiedInside => "certified_inside",
            Verdict::CertifiedOutside => "certified_outside",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefectReport {
    pub class_id: ClassId,
    pub defect: TruncatedSeries,
    pub radius: f64,
    /// Largest sampled modulus of the truncated defect on `|z| = radius`.
    pub sup_sampled: f64,
    /// Bound on the discarded defect tail on the circle.
    pub tail_bound: f64,
    /// Bound on how far the truncated defect can exceed `sup_sampled`
    /// between samples.
    pub grid_bound: f64,
    pub verdict: Verdict,
}

impl DefectReport {
    /// Certified upper bound on the sup of the defect over the circle.
    pub fn certified_sup(&self) -> f64 {
        self.sup_sampled + self.tail_bound + self.grid_bound
    }
}

fn weight_tail(n: usize, from: usize, w: impl Fn(f64) -> f64) -> f64 {
    if n < from {
        0.0
    } else {
        w(n as f64)
    }
}

/// The defining expression of the class as a power series:
///
/// * `M`: `z^2 (z/f)'' + f' (z/f)^2 - 1 = sum_{n>=2} (n-1)^2 b_n z^n`
/// * `U`: `f' (z/f)^2 - 1 = -sum_{n>=2} (n-1) b_n z^n`
/// * `P`: `(z/f)'' = sum_{n>=2} n (n-1) b_n z^{n-2}`
/// * `Omega`, `OmegaA`: `z f' - f = sum_{n>=2} (n-1) a_n z^n`
pub fn defect_series(rep: &FunctionRep, class_id: ClassId) -> TruncatedSeries {
    let b = rep.z_over_f();
    match class_id.tag {
        ClassTag::M => b.weighted(|n| weight_tail(n, 2, |x| (x - 1.0) * (x - 1.0)), 1.0, 2.0),
        ClassTag::U => b.weighted(|n| weight_tail(n, 2, |x| 1.0 - x), 1.0, 1.0),
        ClassTag::P => b
            .weighted(|n| weight_tail(n, 2, |x| x * (x - 1.0)), 1.0, 2.0)
            .shift_down(2),
        ClassTag::Omega | ClassTag::OmegaA => {
            // a_n = c_{n-1} with c the coefficients of f/z.
            rep.f_over_z().weighted(|m| m as f64, 1.0, 1.0).shift_up(1)
        }
    }
}

pub fn sup_defect(
    rep: &FunctionRep,
    class_id: ClassId,
    r: f64,
    samples: usize,
) -> Result<DefectReport> {
    sup_defect_with(rep, class_id, r, samples, Execution::default())
}

pub fn sup_defect_with(
    rep: &FunctionRep,
    class_id: ClassId,
    r: f64,
    samples: usize,
    exec: Execution,
) -> Result<DefectReport> {
    let defect = defect_series(rep, class_id);
    let circle = defect.eval_on_circle_with(r, samples, exec)?;
    let sup_sampled = circle.max_modulus();
    let threshold = class_id.threshold();
    let upper = sup_sampled + circle.tail_bound + circle.grid_bound;
    let inside = if class_id.is_strict() {
        upper < threshold - VERDICT_GUARD
    } else {
        upper <= threshold + VERDICT_GUARD
    };
    let verdict = if inside {
        Verdict::CertifiedInside
    } else if sup_sampled - circle.tail_bound > threshold + VERDICT_GUARD {
        Verdict::CertifiedOutside
    } else {
        Verdict::Inconclusive
    };
    Ok(DefectReport {
        class_id,
        defect,
        radius: r,
        sup_sampled,
        tail_bound: circle.tail_bound,
        grid_bound: circle.grid_bound,
        verdict,
    })
}

/// Defect value at a single point, with the truncation error bound.
pub fn defect_at(rep: &FunctionRep, class_id: ClassId, z: Complex64) -> Result<(Complex64, f64)> {
    let d = defect_series(rep, class_id);
    let tail = d.tail_bound(z.norm())?;
    Ok((d.eval(z), tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series_core::Majorant;

    fn zoverf(b: &[f64], order: usize) -> FunctionRep {
        let mut c = vec![0.0; order + 1];
        c[0] = 1.0;
        c[1..=b.len()].copy_from_slice(b);
        FunctionRep::from_z_over_f(TruncatedSeries::exact_real(&c)).unwrap()
    }

    fn koebe(order: usize) -> FunctionRep {
        zoverf(&[-2.0, 1.0], order).with_majorants(Some(Majorant::geometric(1.0, 1.0, 1.0)), None)
    }

    /// Symbolic oracle: for z/f = 1 + b1 z + b2 z^2, the M expression
    /// z^2 (z/f)'' + f' (z/f)^2 - 1 reduces to b2 z^2 (worked out by hand via
    /// f' (z/f)^2 = z/f - z (z/f)').
    #[test]
    fn m_defect_examples() {
        let id = FunctionRep::identity(16);
        assert!(defect_series(&id, ClassId::m(1.0))
            .coeffs()
            .iter()
            .all(|c| c.norm() == 0.0));
        let d = defect_series(&koebe(16), ClassId::m(1.0));
        assert_eq!(d.coeff(2), Complex64::new(1.0, 0.0));
        assert!(d
            .coeffs()
            .iter()
            .enumerate()
            .all(|(n, c)| n == 2 || c.norm() == 0.0));
    }

    #[test]
    fn omega_defect_of_f1() {
        // z f' - f for f = z + z^2/2 is z^2/2.
        let f1 =
            FunctionRep::from_f_over_z(TruncatedSeries::exact_real(&[1.0, 0.5, 0.0, 0.0])).unwrap();
        let d = defect_series(&f1, ClassId::omega());
        assert_eq!(d.order(), 4);
        assert_eq!(d.coeff(2), Complex64::new(0.5, 0.0));
        assert!(d
            .coeffs()
            .iter()
            .enumerate()
            .all(|(n, c)| n == 2 || c.norm() == 0.0));
    }

    #[test]
    fn sup_defect_examples() {
        let rep = sup_defect(&koebe(64), ClassId::m(1.0), 0.9, 4096).unwrap();
        assert!((rep.sup_sampled - 0.81).abs() < 1e-12);
        assert_eq!(rep.tail_bound, 0.0);
        assert_eq!(rep.verdict, Verdict::CertifiedInside);

        let cex_a = zoverf(&[2.0 / 3.0, 0.0, 1.0 / 3.0], 64);
        let rep = sup_defect(&cex_a, ClassId::m(1.0), 0.95, 4096).unwrap();
        let expect = 4.0 / 3.0 * 0.95f64.powi(3);
        assert!((rep.sup_sampled - expect).abs() < 1e-12);
        assert_eq!(rep.verdict, Verdict::CertifiedOutside);

        let z1 = zoverf(&[-1.0], 32);
        for &r in &[0.1, 0.5, 0.999] {
            let rep = sup_defect(&z1, ClassId::u(1.0), r, 256).unwrap();
            assert_eq!(rep.sup_sampled, 0.0);
            assert_eq!(rep.verdict, Verdict::CertifiedInside);
        }
    }

    #[test]
    fn koebe_defect_near_boundary() {
        let r = 1.0 - 1e-6;
        let rep = sup_defect(&koebe(32), ClassId::m(1.0), r, 4096).unwrap();
        assert!((rep.sup_sampled - r * r).abs() < 1e-12);
    }

    #[test]
    fn missing_majorant_is_reported() {
        // Only the a-side is exact; the b-side comes from a reciprocal.
        let f1 = FunctionRep::from_f_over_z(TruncatedSeries::exact_real(&[1.0, 0.5, 0.0])).unwrap();
        assert_eq!(
            sup_defect(&f1, ClassId::m(1.0), 0.5, 64).unwrap_err(),
            Error::TailBoundUnavailable
        );
    }

    #[test]
    fn strict_threshold_for_omega() {
        // z f' - f = z^2/2 reaches 1/2 only on the boundary; at r close to 1
        // the sup is below 1/2 but within the guard band plus grid slack.
        let f1 = FunctionRep::from_f_over_z(TruncatedSeries::exact_real(&[1.0, 0.5, 0.0])).unwrap();
        let near = sup_defect(&f1, ClassId::omega(), 1.0 - 1e-15, 64).unwrap();
        assert_eq!(near.verdict, Verdict::Inconclusive);
        let a = sup_defect(&f1, ClassId::omega_a(), 0.9, 64).unwrap();
        assert_eq!(a.verdict, Verdict::CertifiedInside);
    }

    #[test]
    fn class_ids() {
        assert!(ClassId::new(ClassTag::M, 0.0).is_err());
        assert_eq!(ClassId::p(0.5).threshold(), 1.0);
        assert_eq!("OmegaA".parse::<ClassTag>().unwrap(), ClassTag::OmegaA);
        assert!("Q".parse::<ClassTag>().is_err());
    }
}
