//! Text form of a function: a catalog name, `coeffs:a2,a3,...` or
//! `zoverf:b1,b2,...`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::named::{named_function, CATALOG_NAMES};
use crate::series_core::{FunctionRep, TruncatedSeries};

const COEFFS: &str = "coeffs:";
const ZOVERF: &str = "zoverf:";

/// Parses comma-separated reals. `offset` is the position of `body` in the
/// full input, used for error positions.
fn parse_list(body: &str, offset: usize) -> Result<Vec<f64>> {
    if body.trim().is_empty() {
        return Ok(vec![]);
    }
    let mut out = vec![];
    let mut pos = offset;
    for tok in body.split(',') {
        let t = tok.trim();
        let lead = tok.len() - tok.trim_start().len();
        let v: f64 = t.parse().map_err(|_| Error::Parse {
            position: pos + lead,
            message: if t.is_empty() {
                "empty coefficient".to_string()
            } else {
                format!("invalid number `{t}`")
            },
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                position: pos + lead,
                message: format!("non-finite coefficient `{t}`"),
            });
        }
        out.push(v);
        pos += tok.len() + 1;
    }
    Ok(out)
}

/// Series `1 + v_0 z + v_1 z^2 + ...` padded to `order`.
fn unit_series(v: &[f64], order: usize) -> TruncatedSeries {
    let mut c = vec![0.0; order.max(v.len()) + 1];
    c[0] = 1.0;
    c[1..=v.len()].copy_from_slice(v);
    TruncatedSeries::exact_real(&c)
}

pub fn parse_function_spec(text: &str, order: usize) -> Result<FunctionRep> {
    let lead = text.len() - text.trim_start().len();
    let s = text.trim();
    if let Some(body) = s.strip_prefix(COEFFS) {
        let v = parse_list(body, lead + COEFFS.len())?;
        return FunctionRep::from_f_over_z(unit_series(&v, order));
    }
    if let Some(body) = s.strip_prefix(ZOVERF) {
        let v = parse_list(body, lead + ZOVERF.len())?;
        return FunctionRep::from_z_over_f(unit_series(&v, order));
    }
    if CATALOG_NAMES.contains(&s) {
        return named_function(s, order);
    }
    Err(Error::Parse {
        position: lead,
        message: format!(
            "unknown function `{s}`; expected one of {}, or coeffs:..., zoverf:...",
            CATALOG_NAMES.join(", ")
        ),
    })
}

fn format_tail(c: &[Complex64]) -> Result<String> {
    let end = c
        .iter()
        .rposition(|x| *x != Complex64::new(0.0, 0.0))
        .map_or(0, |k| k + 1);
    let mut parts = Vec::with_capacity(end);
    for (n, x) in c[..end].iter().enumerate() {
        if x.im != 0.0 {
            return Err(Error::Parse {
                position: n,
                message: format!("coefficient {x} is not real and has no text form"),
            });
        }
        parts.push(format!("{}", x.re));
    }
    Ok(parts.join(","))
}

/// Text form of `rep`: `zoverf:` when `z/f` is stored exactly, `coeffs:`
/// otherwise. Trailing zeros are dropped.
pub fn format_function_spec(rep: &FunctionRep) -> Result<String> {
    if rep.z_over_f().is_exact() {
        Ok(format!(
            "{ZOVERF}{}",
            format_tail(&rep.z_over_f().coeffs()[1..])?
        ))
    } else {
        Ok(format!(
            "{COEFFS}{}",
            format_tail(&rep.f_over_z().coeffs()[1..])?
        ))
    }
}
