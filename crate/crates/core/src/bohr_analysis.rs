//! Bohr, Bohr-Rogosinski and improved Bohr sums for functions certified by
//! `sum (n-1)|a_n| <= 1/2`, whose image contains the disk of radius 1/2
//! around the origin.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::class_operators::{certificate_sufficient, ClassId};
use crate::error::{Error, Result};
use crate::series_core::FunctionRep;

/// Lower bound on the distance from `f(0) = 0` to the image boundary.
pub const DISTANCE_BOUND: f64 = 0.5;

const GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BohrKind {
    Bohr,
    Rogosinski,
    Improved,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BohrReport {
    pub kind: BohrKind,
    pub r: f64,
    /// Upper bound on the sum: stored terms plus `tail_bound`.
    pub quantity: f64,
    pub tail_bound: f64,
    pub distance_bound: f64,
    pub satisfied: bool,
}

impl BohrReport {
    fn new(kind: BohrKind, r: f64, quantity: f64, tail_bound: f64) -> Self {
        Self {
            kind,
            r,
            quantity,
            tail_bound,
            distance_bound: DISTANCE_BOUND,
            satisfied: quantity <= DISTANCE_BOUND + GUARD,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthBounds {
    pub f_lo: f64,
    pub f_hi: f64,
    pub fp_lo: f64,
    pub fp_hi: f64,
}

/// `r - r^2/2 <= |f(z)| <= r + r^2/2` and `1 - r <= |f'(z)| <= 1 + r` on
/// `|z| = r`, attained by `z + z^2/2`.
pub fn growth_bounds(r: f64) -> Result<GrowthBounds> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::ArgumentOutOfRange {
            value: r,
            range: "[0,1)",
        });
    }
    Ok(GrowthBounds {
        f_lo: r - r * r / 2.0,
        f_hi: r + r * r / 2.0,
        fp_lo: 1.0 - r,
        fp_hi: 1.0 + r,
    })
}

/// Coefficients `c_m = a_{m+1}` and the bounds used for discarded terms.
struct Certified<'a> {
    rep: &'a FunctionRep,
    /// `1/2 - sum_{n<=N+1} (n-1)|a_n|`, which bounds `sum_{n>N+1} (n-1)|a_n|`.
    budget: f64,
}

impl<'a> Certified<'a> {
    fn new(rep: &'a FunctionRep) -> Result<Self> {
        let cert = certificate_sufficient(rep, ClassId::omega_a())?;
        if !cert.holds {
            return Err(Error::NotCertifiedOmegaA { value: cert.value });
        }
        let head: f64 = rep
            .f_over_z()
            .coeffs()
            .iter()
            .enumerate()
            .map(|(m, c)| m as f64 * c.norm())
            .sum();
        Ok(Self {
            rep,
            budget: (0.5 - head).max(0.0),
        })
    }

    fn order(&self) -> usize {
        self.rep.order()
    }

    fn exact(&self) -> bool {
        self.rep.f_over_z().is_exact()
    }

    /// Bound on `sum_{n>N+1} |a_n| r^n`.
    fn tail(&self, r: f64) -> f64 {
        if self.exact() {
            return 0.0;
        }
        let n = self.order();
        let budget = r.powi(n as i32 + 2) * self.budget / (n + 1) as f64;
        let major = self
            .rep
            .f_over_z()
            .tail_bound(r)
            .map(|t| r * t)
            .unwrap_or(f64::INFINITY);
        budget.min(major)
    }

    /// Bound on `sum_{n>N+1} n |a_n| r^{n-1}`.
    fn derivative_tail(&self, r: f64) -> f64 {
        if self.exact() {
            return 0.0;
        }
        let n = self.order();
        let budget = r.powi(n as i32 + 1) * self.budget * (n + 2) as f64 / (n + 1) as f64;
        let major = self
            .rep
            .f_over_z()
            .majorant()
            .map(|m| m.weighted(1.0, 1.0).tail_sum(n, r))
            .unwrap_or(f64::INFINITY);
        budget.min(major)
    }

    /// `sum_{n=from}^{N+1} |a_n| r^n`.
    fn abs_sum_from(&self, from: usize, r: f64) -> f64 {
        let c = self.rep.f_over_z().coeffs();
        let mut acc = 0.0;
        for (m, cm) in c.iter().enumerate() {
            let n = m + 1;
            if n >= from {
                acc += cm.norm() * r.powi(n as i32);
            }
        }
        acc
    }

    fn f_at(&self, z: Complex64) -> Complex64 {
        z * self.rep.f_over_z().eval(z)
    }

    fn fp_at(&self, z: Complex64) -> Complex64 {
        let c = self.rep.f_over_z().coeffs();
        c.iter()
            .enumerate()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (m, cm)| {
                acc * z + cm * (m + 1) as f64
            })
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::ArgumentOutOfRange {
            value: r,
            range: "[0,1)",
        });
    }
    Ok(())
}

/// `r + sum_{n>=2} |a_n| r^n`.
pub fn bohr_quantity(rep: &FunctionRep, r: f64) -> Result<BohrReport> {
    check_radius(r)?;
    let f = Certified::new(rep)?;
    let tail = f.tail(r);
    let q = f.abs_sum_from(1, r) + tail;
    Ok(BohrReport::new(BohrKind::Bohr, r, q, tail))
}

/// `|f(z)| + sum_{n>=n_start} |a_n| r^n` with `r = |z|`.
pub fn rogosinski_quantity(rep: &FunctionRep, z: Complex64, n_start: usize) -> Result<BohrReport> {
    let r = z.norm();
    check_radius(r)?;
    if n_start == 0 {
        return Err(Error::ParamOutOfRange("n_start must be at least 1".into()));
    }
    let f = Certified::new(rep)?;
    let tail = f.tail(r);
    // The tail bounds both the discarded part of f(z) and of the sum.
    let q = f.f_at(z).norm() + f.abs_sum_from(n_start, r) + 2.0 * tail;
    Ok(BohrReport::new(BohrKind::Rogosinski, r, q, 2.0 * tail))
}

/// `|f(z)| + |f'(z)| r + sum_{n>=2} |a_n| r^n` with `r = |z|`.
pub fn improved_quantity(rep: &FunctionRep, z: Complex64) -> Result<BohrReport> {
    let r = z.norm();
    check_radius(r)?;
    let f = Certified::new(rep)?;
    let tail = 2.0 * f.tail(r) + r * f.derivative_tail(r);
    let q = f.f_at(z).norm() + f.fp_at(z).norm() * r + f.abs_sum_from(2, r) + tail;
    Ok(BohrReport::new(BohrKind::Improved, r, q, tail))
}

/// `|e^{i theta} + e^{2 i theta}/2|`, the boundary modulus of `z + z^2/2`.
pub fn f1_boundary_modulus(theta: f64) -> f64 {
    let z = Complex64::from_polar(1.0, theta);
    (z + z * z / 2.0).norm()
}

/// Distance from 0 to the image boundary of `z + z^2/2`, as the minimum of
/// the boundary modulus over `samples` uniform angles.
pub fn distance_for_f1(samples: usize) -> f64 {
    (0..samples)
        .map(|k| f1_boundary_modulus(2.0 * PI * k as f64 / samples as f64))
        .fold(f64::INFINITY, f64::min)
}
