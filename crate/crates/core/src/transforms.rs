//! Function constructions carried out in coefficient space.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::series_core::{linear_combine, FunctionRep, TruncatedSeries};

/// Radius of the outermost ring sampled by [`forbidden_point`].
pub const FORBIDDEN_GRID_RADIUS: f64 = 0.999;
const GRID_RINGS: usize = 64;
const GRID_ANGLES: usize = 512;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `a f / (a - f)`. Since `1/g = 1/f - 1/a`, only `b_1` changes: `b_1 - 1/a`.
pub fn omitted_value(rep: &FunctionRep, a: Complex64) -> Result<FunctionRep> {
    let inv = one() / a;
    if a.norm() == 0.0 || !inv.re.is_finite() || !inv.im.is_finite() {
        return Err(Error::DegenerateTransform(format!(
            "omitted value a = {a} must be nonzero"
        )));
    }
    let b = rep.z_over_f();
    if b.order() == 0 {
        return Err(Error::DegenerateTransform("order 0 representation".into()));
    }
    let mut delta = vec![Complex64::new(0.0, 0.0); b.order() + 1];
    delta[1] = -inv;
    let shifted = linear_combine(one(), b, one(), &TruncatedSeries::exact(delta));
    FunctionRep::from_z_over_f(shifted)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OmissionVerdict {
    /// `|f(z) - w|` exceeds its evaluation error at every grid point.
    OmittedOnGrid,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForbiddenPoint {
    pub point: Complex64,
    /// Smallest `|f(z) - point| - err(z)` over the grid.
    pub min_distance: f64,
    pub verdict: OmissionVerdict,
}

/// The point `-1/(f''(0)/2 + mu)` that a member of `M(lambda)` omits when
/// `|mu| <= 1 - lambda`, with a check over the polar grid of radii
/// `k * 0.999 / 64` and 512 angles.
pub fn forbidden_point(rep: &FunctionRep, mu: Complex64, lambda: f64) -> Result<ForbiddenPoint> {
    forbidden_point_with(rep, mu, lambda, Execution::default())
}

pub fn forbidden_point_with(
    rep: &FunctionRep,
    mu: Complex64,
    lambda: f64,
    exec: Execution,
) -> Result<ForbiddenPoint> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::ParamOutOfRange(format!(
            "lambda = {lambda} outside (0,1]"
        )));
    }
    if mu.norm() > 1.0 - lambda + 1e-12 {
        return Err(Error::ParamOutOfRange(format!(
            "|mu| = {} exceeds 1 - lambda = {}",
            mu.norm(),
            1.0 - lambda
        )));
    }
    let den = rep.second_coefficient() + mu;
    if den.norm() == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    let point = -one() / den;
    let rings: Vec<Result<f64>> = exec.map_indexed(GRID_RINGS + 1, |k| {
        let r = FORBIDDEN_GRID_RADIUS * k as f64 / GRID_RINGS as f64;
        let angles = if k == 0 { 1 } else { GRID_ANGLES };
        let mut best = f64::INFINITY;
        for j in 0..angles {
            let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / GRID_ANGLES as f64);
            let (v, err) = rep.eval_f(z)?;
            best = best.min((v - point).norm() - err);
        }
        Ok(best)
    });
    let mut min_distance = f64::INFINITY;
    for r in rings {
        min_distance = min_distance.min(r?);
    }
    let verdict = if min_distance > 0.0 {
        OmissionVerdict::OmittedOnGrid
    } else {
        OmissionVerdict::Inconclusive
    };
    Ok(ForbiddenPoint {
        point,
        min_distance,
        verdict,
    })
}

/// `F = f g / ((1-t) f + t g)`, i.e. `z/F = (1-t) z/g + t z/f`.
pub fn harmonic_combination(f: &FunctionRep, g: &FunctionRep, t: f64) -> Result<FunctionRep> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParamOutOfRange(format!("t = {t} outside [0,1]")));
    }
    let b = linear_combine(
        Complex64::new(1.0 - t, 0.0),
        g.z_over_f(),
        Complex64::new(t, 0.0),
        f.z_over_f(),
    );
    FunctionRep::from_z_over_f(b)
}

/// `F = g h / z`: both `z/F` and `F/z` are products.
pub fn quotient_product(g: &FunctionRep, h: &FunctionRep) -> FunctionRep {
    FunctionRep::from_parts(
        g.f_over_z().mul(h.f_over_z()),
        g.z_over_f().mul(h.z_over_f()),
    )
}

/// `F = z^2 / f`, which swaps the two sides: `z/F = f/z`.
pub fn square_over(f: &FunctionRep) -> FunctionRep {
    FunctionRep::from_parts(f.z_over_f().clone(), f.f_over_z().clone())
}

/// `F = z^2 / int_0^z t/f(t) dt`, so `z/F = 1 + sum b_n z^n / (n+1)`.
pub fn square_over_integral(f: &FunctionRep) -> Result<FunctionRep> {
    let b = f.z_over_f().weighted(|n| 1.0 / (n + 1) as f64, 1.0, -1.0);
    FunctionRep::from_z_over_f(b)
}
