use num_complex::Complex64;
use serde::Serialize;

use super::{Catalog, Params, Side, WitnessSource};
use crate::bohr_analysis::{bohr_quantity, improved_quantity, rogosinski_quantity, BohrKind};
use crate::class_operators::{sup_defect, ClassId};
use crate::error::{Error, Result};
use crate::named::named_function;
use crate::series_core::{FunctionRep, DEFAULT_ORDER, DEFAULT_SAMPLES};
use crate::transforms::{quotient_product, square_over};

/// Offsets of the two probe radii from the root.
pub const BELOW_OFFSET: f64 = 1e-6;
pub const ABOVE_OFFSET: f64 = 1e-3;
/// Slack allowed below the root.
pub const SHARPNESS_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessSample {
    pub r: f64,
    /// Computed quantity (sampled sup for defects, the Bohr sum otherwise).
    pub value: f64,
    pub tail_bound: f64,
    /// Closed form of the quantity at `r`.
    pub formula: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub eq_id: String,
    pub root: f64,
    pub threshold: f64,
    pub below: SharpnessSample,
    pub above: SharpnessSample,
    /// Quantity at the root from its closed form, minus the threshold.
    pub formula_gap_at_root: f64,
    /// `value + tail <= threshold + slack` below and `value - tail >
    /// threshold` above.
    pub sharp: bool,
}

fn witness_rep(source: WitnessSource) -> Result<FunctionRep> {
    match source {
        WitnessSource::SquareOver(f) => Ok(square_over(&named_function(f, DEFAULT_ORDER)?)),
        WitnessSource::QuotientProduct(g, h) => Ok(quotient_product(
            &named_function(g, DEFAULT_ORDER)?,
            &named_function(h, DEFAULT_ORDER)?,
        )),
        WitnessSource::Bohr(_) => named_function("f1", DEFAULT_ORDER),
    }
}

fn sample(rep: &FunctionRep, source: WitnessSource, side: Side, r: f64) -> Result<(f64, f64)> {
    let z = Complex64::new(
        match side {
            Side::Positive => r,
            Side::Negative => -r,
        },
        0.0,
    );
    match source {
        WitnessSource::Bohr(kind) => {
            let rep = match kind {
                BohrKind::Bohr => bohr_quantity(rep, r)?,
                BohrKind::Rogosinski => rogosinski_quantity(rep, z, 2)?,
                BohrKind::Improved => improved_quantity(rep, z)?,
            };
            Ok((rep.quantity - rep.tail_bound, rep.tail_bound))
        }
        _ => {
            let d = sup_defect(rep, ClassId::m(1.0), r, DEFAULT_SAMPLES)?;
            Ok((d.sup_sampled, d.tail_bound))
        }
    }
}

impl Catalog {
    /// Checks that the registered extremal function crosses the threshold
    /// at the computed root.
    pub fn verify_sharpness(&self, id: &str) -> Result<SharpnessReport> {
        let eq = self.get(id)?;
        let w = eq.witness.ok_or_else(|| Error::NoWitness(id.to_string()))?;
        let root = self.solve_radius(id, &Params::default(), 1e-13)?.root;
        let rep = witness_rep(w.source)?;
        let probe = |r: f64| -> Result<SharpnessSample> {
            let (value, tail_bound) = sample(&rep, w.source, w.side, r)?;
            Ok(SharpnessSample {
                r,
                value,
                tail_bound,
                formula: (w.formula)(r),
            })
        };
        let below = probe(root - BELOW_OFFSET)?;
        let above = probe(root + ABOVE_OFFSET)?;
        let sharp = below.value + below.tail_bound <= w.threshold + SHARPNESS_SLACK
            && above.value - above.tail_bound > w.threshold;
        Ok(SharpnessReport {
            eq_id: id.to_string(),
            root,
            threshold: w.threshold,
            below,
            above,
            formula_gap_at_root: (w.formula)(root) - w.threshold,
            sharp,
        })
    }
}
