//! Named test functions with registered coefficient majorants.
//!
//! Each entry stores one side of the dual representation exactly (or with a
//! geometric bound) and a bound for the other side derived by hand, so every
//! named function supports certified tail bounds on both sides.

use crate::error::{Error, Result};
use crate::series_core::{FunctionRep, Majorant, TruncatedSeries};

/// The nine univalent functions with integer coefficients.
pub const SZ_NAMES: [&str; 9] = [
    "identity",
    "koebe",
    "koebe-neg",
    "z/(1-z)",
    "z/(1+z)",
    "z/(1-z^2)",
    "z/(1+z^2)",
    "z/(1-z+z^2)",
    "z/(1+z+z^2)",
];

pub const CATALOG_NAMES: [&str; 13] = [
    "identity",
    "koebe",
    "koebe-neg",
    "z/(1-z)",
    "z/(1+z)",
    "z/(1-z^2)",
    "z/(1+z^2)",
    "z/(1-z+z^2)",
    "z/(1+z+z^2)",
    "f1",
    "convex-half",
    "cexA",
    "cexB",
];

fn z_over_f_poly(b: &[f64], order: usize, a_side: Majorant) -> Result<FunctionRep> {
    let mut c = vec![0.0; order.max(b.len() - 1) + 1];
    c[..b.len()].copy_from_slice(b);
    Ok(FunctionRep::from_z_over_f(TruncatedSeries::exact_real(&c))?
        .with_majorants(Some(a_side), None))
}

/// Representation of a catalog function at truncation order `order`.
pub fn named_function(name: &str, order: usize) -> Result<FunctionRep> {
    // Unit-modulus coefficient sequences (geometric series and the periodic
    // expansions of 1/(1 -+ z + z^2)) are bounded by 1.
    let bounded = Majorant::geometric(1.0, 0.0, 1.0);
    let linear = Majorant::geometric(1.0, 1.0, 1.0);
    match name {
        "identity" => Ok(FunctionRep::identity(order)),
        "koebe" => z_over_f_poly(&[1.0, -2.0, 1.0], order, linear),
        "koebe-neg" => z_over_f_poly(&[1.0, 2.0, 1.0], order, linear),
        "z/(1-z)" => z_over_f_poly(&[1.0, -1.0], order, bounded),
        "z/(1+z)" => z_over_f_poly(&[1.0, 1.0], order, bounded),
        "z/(1-z^2)" => z_over_f_poly(&[1.0, 0.0, -1.0], order, bounded),
        "z/(1+z^2)" => z_over_f_poly(&[1.0, 0.0, 1.0], order, bounded),
        "z/(1-z+z^2)" => z_over_f_poly(&[1.0, -1.0, 1.0], order, bounded),
        "z/(1+z+z^2)" => z_over_f_poly(&[1.0, 1.0, 1.0], order, bounded),
        "f1" => {
            // z/f = 1/(1 + z/2) = sum (-1/2)^n z^n.
            let mut c = vec![0.0; order.max(1) + 1];
            c[0] = 1.0;
            c[1] = 0.5;
            Ok(FunctionRep::from_f_over_z(TruncatedSeries::exact_real(&c))?
                .with_majorants(None, Some(Majorant::geometric(1.0, 0.0, 0.5))))
        }
        "convex-half" => {
            // f/z = (1 - z/2)/(1 - z)^2 has coefficients (n+2)/2 <= n+1;
            // z/f = (1 - z)^2/(1 - z/2) has |b_n| <= 3 (1/2)^n.
            let f_over_z = TruncatedSeries::from_fn(order, |n| ((n + 2) as f64 / 2.0).into())
                .with_majorant(linear);
            Ok(FunctionRep::from_f_over_z(f_over_z)?
                .with_majorants(None, Some(Majorant::geometric(3.0, 0.0, 0.5))))
        }
        // 1/(1 + 2z/3 + z^3/3) and 1/(1 + z/2 + z^3/2) have a simple pole at
        // z = -1 and the remaining poles outside the closed disk; partial
        // fractions bound their coefficients by 1.4 and 1.5.
        "cexA" => z_over_f_poly(
            &[1.0, 2.0 / 3.0, 0.0, 1.0 / 3.0],
            order,
            Majorant::geometric(1.4, 0.0, 1.0),
        ),
        "cexB" => z_over_f_poly(
            &[1.0, 0.5, 0.0, 0.5],
            order,
            Majorant::geometric(1.5, 0.0, 1.0),
        ),
        other => Err(Error::Parse {
            position: 0,
            message: format!("unknown function name `{other}`"),
        }),
    }
}
