use serde::Serialize;

use super::{Catalog, Params, RadiusEquation};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Spacing of the sign-change scan.
pub const SCAN_STEP: f64 = 1e-3;

const MAX_BISECTIONS: usize = 200;
const MIN_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusSolution {
    pub eq_id: String,
    pub root: f64,
    /// Final bisection bracket.
    pub bracket: (f64, f64),
    pub iterations: usize,
    /// Half-width of the bracket, widened by the evaluation error of `G`
    /// divided by the local slope.
    pub uncertainty: f64,
    /// Some evaluation along the way clamped a negative radicand.
    pub clamped: bool,
}

fn scan_grid(lo: f64, hi: f64) -> Vec<f64> {
    let n = ((hi - lo) / SCAN_STEP).round() as usize;
    let mut g: Vec<f64> = (0..=n).map(|k| lo + k as f64 * SCAN_STEP).collect();
    if let Some(last) = g.last_mut() {
        *last = hi;
    }
    g
}

/// Locates the first sign change of `G` on the scan grid. Returns the
/// bracket and the values at its ends.
fn first_sign_change(
    eq: &RadiusEquation,
    params: &Params,
    exec: Execution,
) -> Result<((f64, f64), (f64, f64), bool)> {
    let (lo, hi) = eq.bracket;
    let grid = scan_grid(lo, hi);
    let evals = exec.map_slice(&grid, |&r| eq.evaluate(params, r));
    let clamped = evals.iter().any(|e| e.clamped);
    if let Some(bad) = evals.iter().position(|e| !e.value.is_finite()) {
        return Err(Error::NoBracketFound(format!(
            "`{}` is not finite at r = {}",
            eq.id, grid[bad]
        )));
    }
    if evals[0].value >= 0.0 {
        return Err(Error::NoBracketFound(format!(
            "`{}` is nonnegative at the left end r = {lo}",
            eq.id
        )));
    }
    let k = evals
        .windows(2)
        .position(|w| w[1].value >= 0.0)
        .ok_or_else(|| {
            Error::NoBracketFound(format!("`{}` has no sign change on [{lo}, {hi}]", eq.id))
        })?;
    Ok((
        (grid[k], grid[k + 1]),
        (evals[k].value, evals[k + 1].value),
        clamped,
    ))
}

impl Catalog {
    /// Smallest root of `G` in its bracket, to within `tol`.
    pub fn solve_radius(&self, id: &str, params: &Params, tol: f64) -> Result<RadiusSolution> {
        self.solve_radius_with(id, params, tol, Execution::default())
    }

    pub fn solve_radius_with(
        &self,
        id: &str,
        params: &Params,
        tol: f64,
        exec: Execution,
    ) -> Result<RadiusSolution> {
        if !(tol >= MIN_TOL && tol.is_finite()) {
            return Err(Error::ArgumentOutOfRange {
                value: tol,
                range: "[1e-14, inf)",
            });
        }
        let eq = self.get(id)?;
        eq.check_params(params)?;
        let ((mut a, mut b), (ga, gb), mut clamped) = first_sign_change(eq, params, exec)?;
        let slope = (gb - ga) / (b - a);
        let mut iterations = 0;
        let mut err_at_root = 0.0_f64;
        while (b - a) / 2.0 > tol && iterations < MAX_BISECTIONS {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let e = eq.evaluate(params, m);
            clamped |= e.clamped;
            err_at_root = e.abs_error;
            if e.value < 0.0 {
                a = m;
            } else {
                b = m;
            }
            iterations += 1;
        }
        let root = 0.5 * (a + b);
        let uncertainty = (b - a) / 2.0 + err_at_root / slope.abs();
        Ok(RadiusSolution {
            eq_id: id.to_string(),
            root,
            bracket: (a, b),
            iterations,
            uncertainty,
            clamped,
        })
    }
}
