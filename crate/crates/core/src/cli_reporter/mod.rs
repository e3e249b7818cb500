//! Command implementations behind the `radii-lab` binary. Each command
//! returns its exit code and output instead of printing, so tests can drive
//! it directly.

mod spec_text;
pub mod verification;

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use crate::class_operators::{
    certificate_sufficient, quartic_necessary, sup_defect, Certificate, ClassId, ClassTag,
};
use crate::error::Error;
use crate::exec::Execution;
use crate::radius_catalog::{Catalog, Params};
use crate::series_core::DEFAULT_ORDER;

pub use spec_text::{format_function_spec, parse_function_spec};
pub use verification::{run_all, run_all_with, VerificationRecord};

pub const SCHEMA_VERSION: u32 = 1;
pub const ORDER_ENV: &str = "RADII_LAB_ORDER";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownEquation(_)
        | Error::ParamOutOfRange(_)
        | Error::ArgumentOutOfRange { .. }
        | Error::Parse { .. }
        | Error::UnsupportedClass(_)
        | Error::NoClosedForm(_)
        | Error::NoWitness(_) => EXIT_USAGE,
        Error::NearZeroConstantTerm { .. }
        | Error::TailBoundUnavailable
        | Error::NotSchwarzBounded(_)
        | Error::DegenerateTransform(_)
        | Error::ZeroDenominator
        | Error::NoBracketFound(_)
        | Error::NotCertifiedOmegaA { .. } => EXIT_NUMERICAL,
    }
}

fn from_error(e: Error) -> CommandOutput {
    CommandOutput::fail(exit_code(&e), e)
}

/// Truncation order from `RADII_LAB_ORDER`, else the default.
pub fn default_order() -> Result<usize, String> {
    match std::env::var(ORDER_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(format!("{ORDER_ENV}={v:?} is not a positive integer")),
        },
        Err(_) => Ok(DEFAULT_ORDER),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

pub fn cmd_radius(catalog: &Catalog, eq_id: &str, params: &Params, tol: f64) -> CommandOutput {
    let sol = match catalog.solve_radius(eq_id, params, tol) {
        Ok(s) => s,
        Err(e) => return from_error(e),
    };
    let eq = catalog.get(eq_id).expect("solved equation exists");
    let mut out = json!({
        "schema": SCHEMA_VERSION,
        "eq_id": eq_id,
        "root": sol.root,
        "tol": tol,
        "uncertainty": sol.uncertainty,
        "iterations": sol.iterations,
        "bracket": [sol.bracket.0, sol.bracket.1],
        "clamped": sol.clamped,
        "params": params,
        "expected": eq.expected.map(|x| x.value),
    });
    if let Ok(cf) = catalog.closed_form_radius(eq_id, params) {
        out["closed_form"] = json!(cf);
    }
    CommandOutput::ok(to_json(&out))
}

#[derive(Debug, Clone)]
pub struct MembershipArgs<'a> {
    pub spec: &'a str,
    pub class: &'a str,
    pub lambda: f64,
    pub r: f64,
    pub samples: usize,
    pub order: usize,
}

pub fn cmd_membership(args: &MembershipArgs<'_>) -> CommandOutput {
    let run = || -> crate::Result<serde_json::Value> {
        let tag: ClassTag = args.class.parse()?;
        let class = ClassId::new(tag, args.lambda)?;
        if args.samples == 0 {
            return Err(Error::ArgumentOutOfRange {
                value: 0.0,
                range: "samples >= 1",
            });
        }
        let rep = parse_function_spec(args.spec, args.order)?;
        let d = sup_defect(&rep, class, args.r, args.samples)?;
        let mut certs: Vec<Certificate> = vec![];
        if matches!(tag, ClassTag::M | ClassTag::OmegaA) {
            certs.push(certificate_sufficient(&rep, class)?);
        }
        if tag == ClassTag::M {
            certs.push(quartic_necessary(&rep));
        }
        Ok(json!({
            "schema": SCHEMA_VERSION,
            "function": args.spec,
            "class": tag.to_string(),
            "lambda": class.lambda,
            "threshold": class.threshold(),
            "r": args.r,
            "samples": args.samples,
            "order": rep.order(),
            "verdict": d.verdict,
            "sup_sampled": d.sup_sampled,
            "tail_bound": d.tail_bound,
            "grid_bound": d.grid_bound,
            "certified_sup": d.certified_sup(),
            "certificates": certs,
        }))
    };
    match run() {
        Ok(v) => CommandOutput::ok(to_json(&v)),
        Err(e) => from_error(e),
    }
}

fn num(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-4 {
        format!("{x:.6e}")
    } else {
        format!("{x}")
    }
}

fn table(records: &[VerificationRecord]) -> String {
    let w = records.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<w$}  {:>3}  {:>22}  {:>22}  {:>10}  {:>9}  result",
        "id", "crit", "expected", "computed", "abs_diff", "tol"
    );
    for r in records {
        let _ = writeln!(
            s,
            "{:<w$}  {:>3}  {:>22}  {:>22}  {:>10.3e}  {:>9.1e}  {}",
            r.id,
            r.criterion,
            num(r.expected),
            num(r.computed),
            r.abs_diff,
            r.tolerance,
            if r.pass { "PASS" } else { "FAIL" }
        );
        if let Some(e) = &r.error {
            let _ = writeln!(s, "    error: {e}");
        }
    }
    let failed = records.iter().filter(|r| !r.pass).count();
    let _ = writeln!(s, "{} passed, {failed} failed", records.len() - failed);
    s
}

pub fn cmd_verify_all(catalog: &Catalog, json_out: bool, exec: Execution) -> CommandOutput {
    let records = run_all_with(catalog, exec);
    let failed = records.iter().filter(|r| !r.pass).count();
    let stdout = if json_out {
        to_json(&json!({
            "schema": SCHEMA_VERSION,
            "passed": records.len() - failed,
            "failed": failed,
            "records": records,
        }))
    } else {
        table(&records)
    };
    CommandOutput {
        code: if failed == 0 {
            EXIT_OK
        } else {
            EXIT_VERIFICATION
        },
        stdout,
        stderr: String::new(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotRange {
    pub r_min: f64,
    pub r_max: f64,
    pub step: f64,
}

impl Default for PlotRange {
    fn default() -> Self {
        Self {
            r_min: 0.001,
            r_max: 0.999,
            step: 0.001,
        }
    }
}

impl PlotRange {
    /// `r_min + k step` for every `k` with the point at most `r_max`.
    pub fn grid(&self) -> Result<Vec<f64>, String> {
        let PlotRange { r_min, r_max, step } = *self;
        if !(step > 0.0 && step.is_finite()) {
            return Err(format!("step must be positive, got {step}"));
        }
        if !(r_min > 0.0 && r_min <= r_max && r_max < 1.0) {
            return Err(format!(
                "need 0 < r-min <= r-max < 1, got [{r_min}, {r_max}]"
            ));
        }
        let n = ((r_max - r_min) / step * (1.0 + 1e-12)).floor() as usize;
        Ok((0..=n).map(|k| r_min + k as f64 * step).collect())
    }
}

/// CSV `r,value` for the equation on the grid.
pub fn plot_csv(
    catalog: &Catalog,
    eq_id: &str,
    params: &Params,
    range: &PlotRange,
    exec: Execution,
) -> Result<String, CommandOutput> {
    let grid = range
        .grid()
        .map_err(|m| CommandOutput::fail(EXIT_USAGE, m))?;
    // Validates id and parameters once.
    catalog
        .evaluate(eq_id, params, grid[0])
        .map_err(from_error)?;
    let eq = catalog.get(eq_id).map_err(from_error)?;
    let values = exec.map_slice(&grid, |&r| eq.evaluate(params, r).value);
    let mut s = String::with_capacity(grid.len() * 40);
    s.push_str("r,value\n");
    for (r, v) in grid.iter().zip(values) {
        let _ = writeln!(s, "{r},{v}");
    }
    Ok(s)
}

/// Writes the CSV to `out`, or returns it as standard output.
pub fn cmd_plot(
    catalog: &Catalog,
    eq_id: &str,
    params: &Params,
    range: &PlotRange,
    out: Option<&Path>,
    exec: Execution,
) -> CommandOutput {
    let csv = match plot_csv(catalog, eq_id, params, range, exec) {
        Ok(s) => s,
        Err(o) => return o,
    };
    match out {
        None => CommandOutput::ok(csv),
        Some(p) => match std::fs::write(p, csv) {
            Ok(()) => CommandOutput::ok(String::new()),
            Err(e) => CommandOutput::fail(EXIT_IO, format!("cannot write {}: {e}", p.display())),
        },
    }
}
