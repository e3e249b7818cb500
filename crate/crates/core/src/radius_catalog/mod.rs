//! Registry of radius equations `G(r) = 0` on `(0,1)`, a smallest-root
//! solver, closed-form radii and sharpness witnesses.

pub mod equations;
mod sharpness;
mod solver;

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::bohr_analysis::BohrKind;
use crate::error::{Error, Result};

pub use sharpness::{SharpnessReport, SharpnessSample};
pub use solver::{RadiusSolution, SCAN_STEP};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    pub lambda: f64,
    pub lambda2: f64,
    pub mu: f64,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            lambda2: 1.0,
            mu: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    Lambda,
    Lambda2,
    Mu,
}

impl Param {
    fn get(self, p: &Params) -> f64 {
        match self {
            Param::Lambda => p.lambda,
            Param::Lambda2 => p.lambda2,
            Param::Mu => p.mu,
        }
    }
}

/// `G(r)` with a bound on its floating-point error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub value: f64,
    pub abs_error: f64,
    /// A square-root radicand was negative and replaced by 0.
    pub clamped: bool,
}

pub type Evaluator = Arc<dyn Fn(&Params, f64) -> Evaluation + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpectedRoot {
    pub value: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WitnessSource {
    /// `M` defect of `z^2/f` for a named `f`.
    SquareOver(&'static str),
    /// `M` defect of `g h / z` for named `g`, `h`.
    QuotientProduct(&'static str, &'static str),
    /// Bohr-type sum of `z + z^2/2`.
    Bohr(BohrKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Positive,
    Negative,
}

/// Extremal function whose quantity crosses the threshold at the root.
#[derive(Debug, Clone, Copy)]
pub struct SharpnessWitness {
    pub source: WitnessSource,
    /// Evaluation point `z = r` or `z = -r`.
    pub side: Side,
    pub threshold: f64,
    /// Closed form of the quantity at radius `r`.
    pub formula: fn(f64) -> f64,
}

#[derive(Clone)]
pub struct RadiusEquation {
    pub id: &'static str,
    /// Human-readable `G(r)`.
    pub formula: &'static str,
    pub params: &'static [Param],
    evaluator: Evaluator,
    pub bracket: (f64, f64),
    pub expected: Option<ExpectedRoot>,
    pub closed_form: Option<fn(&Params) -> f64>,
    pub witness: Option<SharpnessWitness>,
    /// Has a plotted curve.
    pub plotted: bool,
}

impl std::fmt::Debug for RadiusEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadiusEquation")
            .field("id", &self.id)
            .field("formula", &self.formula)
            .field("bracket", &self.bracket)
            .field("expected", &self.expected)
            .finish_non_exhaustive()
    }
}

impl RadiusEquation {
    pub fn evaluate(&self, params: &Params, r: f64) -> Evaluation {
        (self.evaluator)(params, r)
    }

    fn check_params(&self, params: &Params) -> Result<()> {
        for p in self.params {
            let v = p.get(params);
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::ParamOutOfRange(format!(
                    "{:?} = {v} must be positive for `{}`",
                    p, self.id
                )));
            }
        }
        Ok(())
    }
}

const SIX_DIGITS: f64 = 5e-5;
const FOUR_DIGITS: f64 = 1e-4;

fn expected(value: f64, tolerance: f64) -> Option<ExpectedRoot> {
    Some(ExpectedRoot { value, tolerance })
}

/// Immutable set of radius equations.
#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<RadiusEquation>,
}

fn entry(
    id: &'static str,
    formula: &'static str,
    eval: fn(&Params, f64) -> Evaluation,
) -> RadiusEquation {
    RadiusEquation {
        id,
        formula,
        params: &[],
        evaluator: Arc::new(eval),
        bracket: (0.001, 0.999),
        expected: None,
        closed_form: None,
        witness: None,
        plotted: false,
    }
}

impl Catalog {
    pub fn standard() -> Self {
        use equations as eq;
        let m_witness = |source, side, formula| {
            Some(SharpnessWitness {
                source,
                side,
                threshold: 1.0,
                formula,
            })
        };
        let bohr_witness = |kind, formula| {
            Some(SharpnessWitness {
                source: WitnessSource::Bohr(kind),
                side: Side::Positive,
                threshold: 0.5,
                formula,
            })
        };
        let entries =
            vec![
            RadiusEquation {
                params: &[Param::Lambda],
                ..entry("theo", "r^4 (r^4 + 4r^2 + 1) - lambda^2 (1 - r^2)^4", eq::theo)
            },
            RadiusEquation {
                expected: expected(0.557384, SIX_DIGITS),
                plotted: true,
                ..entry("theo1", "8r^6 - 5r^4 + 4r^2 - 1", eq::theo1)
            },
            RadiusEquation {
                expected: expected(0.786151, SIX_DIGITS),
                closed_form: Some(|_| ((5f64.sqrt() - 1.0) / 2.0).sqrt()),
                plotted: true,
                ..entry("dilationM", "r^4 + r^2 - 1", eq::dilation_m)
            },
            RadiusEquation {
                closed_form: Some(|_| 2.0 - 3f64.sqrt()),
                witness: m_witness(WitnessSource::SquareOver("koebe"), Side::Positive, |r| {
                    (3.0 * r * r + 4.0 * r.powi(3) - r.powi(4)) / (1.0 - r).powi(4)
                }),
                ..entry("th8i", "r^2 (3 + 4r - r^2) - (1 - r)^4", eq::th8i)
            },
            RadiusEquation {
                expected: expected(0.396608, SIX_DIGITS),
                witness: m_witness(WitnessSource::SquareOver("z/(1-z)"), Side::Positive, |r| {
                    r * r * (1.0 + r) / (1.0 - r).powi(3)
                }),
                ..entry("th8ii", "-(1 - 3r + 2r^2 - 2r^3)", eq::th8ii)
            },
            RadiusEquation {
                expected: expected(0.304725, SIX_DIGITS),
                witness: m_witness(WitnessSource::SquareOver("convex-half"), Side::Positive, |r| {
                    (2.0 * r * r + 2.0 * r.powi(3) - r.powi(4)) / (1.0 - r).powi(4)
                }),
                ..entry("th8iii", "-(2r^4 - 6r^3 + 4r^2 - 4r + 1)", eq::th8iii)
            },
            RadiusEquation {
                expected: expected(0.75085, FOUR_DIGITS),
                plotted: true,
                ..entry("th8iv", "3r - 2r^2 + (r^2 - 5r + 4) log(1 - r)", eq::th8iv)
            },
            RadiusEquation {
                expected: expected(0.7829, FOUR_DIGITS),
                plotted: true,
                ..entry(
                    "th9i",
                    "(-4 + 4r^2 + r^4)/(1 - r^2)^2 - 12 log(1 - r^2)/r^2 - 8 Li2(r^2)/r^2 - 1",
                    eq::th9i,
                )
            },
            RadiusEquation {
                expected: expected(0.294876, SIX_DIGITS),
                witness: m_witness(
                    WitnessSource::QuotientProduct("koebe", "koebe"),
                    Side::Negative,
                    |r| 9.0 * r.powi(4) + 16.0 * r.powi(3) + 6.0 * r * r,
                ),
                plotted: true,
                ..entry("t1", "9r^4 + 16r^3 + 6r^2 - 1", eq::t1)
            },
            RadiusEquation {
                closed_form: Some(|_| (10f64.sqrt() - 1.0).sqrt() / 3.0),
                plotted: true,
                ..entry("t1corM2", "9r^4 + 2r^2 - 1", eq::t1_cor_m2)
            },
            RadiusEquation {
                params: &[Param::Lambda, Param::Lambda2, Param::Mu],
                closed_form: Some(|p| {
                    let (l, m) = (p.lambda, p.lambda2);
                    let q = l * l + l * m + m * m;
                    let s = l + m;
                    ((-s + (s * s + 12.0 * p.mu * q).sqrt()) / (6.0 * q)).sqrt()
                }),
                ..entry(
                    "t1cor2",
                    "3(lambda^2 + lambda lambda2 + lambda2^2) r^4 + (lambda + lambda2) r^2 - mu",
                    eq::t1_cor2,
                )
            },
            RadiusEquation {
                expected: expected(0.260985, SIX_DIGITS),
                plotted: true,
                ..entry(
                    "t4",
                    "6r^2 + 4(sqrt2 + 4) r^3 + 2r^2 sqrt(R1)/(1 - r^2)^2 + T5 + 4 sqrt(R3) - 1",
                    eq::t4,
                )
            },
            RadiusEquation {
                expected: expected(0.313967, SIX_DIGITS),
                plotted: true,
                ..entry(
                    "t4B",
                    "2r^2 + 4(sqrt2 + 2) r^3 + 2r^2 sqrt(R1)/(1 - r^2)^2 + T5 + 2 sqrt(R3) - 1",
                    eq::t4b,
                )
            },
            RadiusEquation {
                expected: expected(0.352049, SIX_DIGITS),
                plotted: true,
                ..entry(
                    "t4C",
                    "2r^2 + 4 sqrt2 r^3 + 2r^2 sqrt(R1)/(1 - r^2)^2 + T5 - 1",
                    eq::t4c,
                )
            },
            RadiusEquation {
                closed_form: Some(|_| (3f64.sqrt() - 1.0) / 2.0),
                witness: bohr_witness(BohrKind::Rogosinski, |r| r + r * r),
                ..entry("bohrG1", "2r + 2r^2 - 1", eq::bohr_g1)
            },
            RadiusEquation {
                closed_form: Some(|_| std::f64::consts::SQRT_2 - 1.0),
                witness: bohr_witness(BohrKind::Bohr, |r| r + r * r / 2.0),
                ..entry("bohrG2", "2r + r^2 - 1", eq::bohr_g2)
            },
            RadiusEquation {
                closed_form: Some(|_| (std::f64::consts::SQRT_2 - 1.0) / 2.0),
                witness: bohr_witness(BohrKind::Improved, |r| 2.0 * r + 2.0 * r * r),
                ..entry("bohrG3", "4r + 4r^2 - 1", eq::bohr_g3)
            },
        ];
        Self { entries }
    }

    pub fn entries(&self) -> &[RadiusEquation] {
        &self.entries
    }

    pub fn ids(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|e| e.id)
    }

    pub fn get(&self, id: &str) -> Result<&RadiusEquation> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEquation(id.to_string()))
    }

    /// Replaces the evaluator of `id`.
    pub fn with_override(
        mut self,
        id: &str,
        f: impl Fn(&Params, f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let e = self
            .entries
            .iter_mut()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEquation(id.to_string()))?;
        e.evaluator = Arc::new(move |p, r| {
            let value = f(p, r);
            Evaluation {
                value,
                abs_error: 16.0 * f64::EPSILON * value.abs(),
                clamped: false,
            }
        });
        Ok(self)
    }

    pub fn evaluate(&self, id: &str, params: &Params, r: f64) -> Result<Evaluation> {
        let e = self.get(id)?;
        e.check_params(params)?;
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::ArgumentOutOfRange {
                value: r,
                range: "(0,1)",
            });
        }
        Ok(e.evaluate(params, r))
    }

    pub fn eval_equation(&self, id: &str, params: &Params, r: f64) -> Result<f64> {
        self.evaluate(id, params, r).map(|e| e.value)
    }

    pub fn closed_form_radius(&self, id: &str, params: &Params) -> Result<f64> {
        let e = self.get(id)?;
        e.check_params(params)?;
        let f = e
            .closed_form
            .ok_or_else(|| Error::NoClosedForm(id.to_string()))?;
        Ok(f(params))
    }
}

fn standard_catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(Catalog::standard)
}

/// `G(r)` for a standard catalog entry.
pub fn eval_equation(id: &str, params: &Params, r: f64) -> Result<f64> {
    standard_catalog().eval_equation(id, params, r)
}

/// Smallest root of a standard catalog entry.
pub fn solve_radius(id: &str, params: &Params, tol: f64) -> Result<RadiusSolution> {
    standard_catalog().solve_radius(id, params, tol)
}

pub fn closed_form_radius(id: &str, params: &Params) -> Result<f64> {
    standard_catalog().closed_form_radius(id, params)
}

pub fn verify_sharpness(id: &str) -> Result<SharpnessReport> {
    standard_catalog().verify_sharpness(id)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Params {
        Params::default()
    }

    #[test]
    fn eval_examples() {
        // 0.0625 + 0.25 - 1
        assert!((eval_equation("dilationM", &p(), 0.5).unwrap() + 0.6875).abs() < 1e-16);
        assert!(eval_equation("theo1", &p(), 0.557384).unwrap().abs() <= 1e-5);
        assert!(eval_equation("th9i", &p(), 0.7829).unwrap().abs() <= 1e-3);
    }

    #[test]
    fn eval_errors() {
        assert!(matches!(
            eval_equation("nope", &p(), 0.5),
            Err(Error::UnknownEquation(_))
        ));
        let bad = Params {
            lambda: -1.0,
            ..p()
        };
        assert!(matches!(
            eval_equation("theo", &bad, 0.5),
            Err(Error::ParamOutOfRange(_))
        ));
        // Unused parameters are not checked.
        assert!(eval_equation("theo1", &bad, 0.5).is_ok());
        assert!(eval_equation("t1", &p(), 1.0).is_err());
        assert!(eval_equation("t1", &p(), 0.0).is_err());
    }

    #[test]
    fn brackets_have_sign_change() {
        let c = Catalog::standard();
        for e in c.entries() {
            let (lo, hi) = e.bracket;
            assert!(e.evaluate(&p(), lo).value < 0.0, "{}", e.id);
            assert!(e.evaluate(&p(), hi).value > 0.0, "{}", e.id);
        }
        for lambda in [0.25, 0.5, 2.0] {
            let q = Params { lambda, ..p() };
            let e = c.get("theo").unwrap();
            assert!(e.evaluate(&q, 0.001).value < 0.0);
            assert!(e.evaluate(&q, 0.999).value > 0.0);
        }
    }

    #[test]
    fn closed_forms() {
        let cases = [
            ("dilationM", 0.786_151_377_757_423_3),
            ("th8i", 0.267_949_192_431_122_7),
            ("t1corM2", 0.490_156_172_410_428_9),
            ("bohrG1", 0.366_025_403_784_438_6),
            ("bohrG2", 0.414_213_562_373_095_1),
            ("bohrG3", 0.207_106_781_186_547_5),
        ];
        for (id, v) in cases {
            assert!(
                (closed_form_radius(id, &p()).unwrap() - v).abs() < 1e-15,
                "{id}"
            );
        }
        assert!(matches!(
            closed_form_radius("t4", &p()),
            Err(Error::NoClosedForm(_))
        ));
        // At unit parameters the product equation reduces to 9r^4 + 2r^2 - 1.
        let a = closed_form_radius("t1cor2", &p()).unwrap();
        let b = closed_form_radius("t1corM2", &p()).unwrap();
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn bohr_equations_increase() {
        for id in ["bohrG1", "bohrG2", "bohrG3"] {
            let mut prev = f64::NEG_INFINITY;
            for k in 1..1000 {
                let v = eval_equation(id, &p(), k as f64 / 1000.0).unwrap();
                assert!(v > prev, "{id}");
                prev = v;
            }
        }
    }

    #[test]
    fn dilog_helpers_behave() {
        let mut prev = f64::NEG_INFINITY;
        for k in 0..1000 {
            let r = k as f64 / 1000.0;
            let a1 = equations::a1(r);
            assert!(a1.value >= -a1.abs_error, "A1({r}) = {}", a1.value);
            let a2 = equations::a2(r);
            assert!(a2 >= prev, "A2 decreases at {r}");
            prev = a2;
        }
    }

    #[test]
    fn override_replaces_evaluator() {
        let c = Catalog::standard()
            .with_override("t1", |_, r| {
                9.0 * r.powi(4) + 16.0 * r.powi(3) + 6.0 * r * r - 2.0
            })
            .unwrap();
        assert!(
            (c.eval_equation("t1", &p(), 0.5).unwrap() - (9.0 / 16.0 + 2.0 + 1.5 - 2.0)).abs()
                < 1e-15
        );
        assert!(Catalog::standard().with_override("zzz", |_, r| r).is_err());
    }
}
