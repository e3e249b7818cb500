//! Verification driver: every reported constant, closed form, sharpness
//! crossing and structural property as a pass/fail record.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bohr_analysis::{bohr_quantity, improved_quantity, rogosinski_quantity, BohrKind};
use crate::class_operators::{
    defect_at, defect_series, generate_m_member, quartic_necessary, random_schwarz_polynomial,
    seeded_omega_a_members, sup_defect, ClassId, ClassTag, Verdict,
};
use crate::error::Result;
use crate::exec::Execution;
use crate::named::{named_function, CATALOG_NAMES, SZ_NAMES};
use crate::radius_catalog::{Catalog, Params};
use crate::series_core::{FunctionRep, DEFAULT_ORDER, DEFAULT_SAMPLES};
use crate::special_functions::{inverse_square_sum_from, log_moment, polylog};
use crate::transforms::{harmonic_combination, omitted_value};

/// How `computed` is compared with `expected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|computed - expected| <= tolerance`.
    Within,
    /// `computed <= expected + tolerance`.
    AtMost,
    /// `computed > expected`.
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub id: String,
    pub criterion: u8,
    pub expected: f64,
    pub provenance: &'static str,
    pub comparison: Comparison,
    pub computed: f64,
    /// Distance from the accepted region (`|computed - expected|` for
    /// two-sided checks).
    pub abs_diff: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationRecord {
    fn new(
        id: impl Into<String>,
        criterion: u8,
        expected: f64,
        provenance: &'static str,
        comparison: Comparison,
        computed: f64,
        tolerance: f64,
    ) -> Self {
        let abs_diff = match comparison {
            Comparison::Within => (computed - expected).abs(),
            Comparison::AtMost => (computed - expected).max(0.0),
            // Equality is a miss, so it gets the smallest positive distance.
            Comparison::Above if computed > expected => 0.0,
            Comparison::Above => (expected - computed).max(f64::MIN_POSITIVE),
        };
        // NaN compares false, so a NaN result fails.
        let pass = abs_diff <= tolerance;
        Self {
            id: id.into(),
            criterion,
            expected,
            provenance,
            comparison,
            computed,
            abs_diff,
            tolerance,
            pass,
            error: None,
        }
    }

    fn failed(
        id: impl Into<String>,
        criterion: u8,
        expected: f64,
        provenance: &'static str,
        err: String,
    ) -> Self {
        Self {
            error: Some(err),
            ..Self::new(
                id,
                criterion,
                expected,
                provenance,
                Comparison::Within,
                f64::NAN,
                0.0,
            )
        }
    }
}

pub const SIX_DIGIT_TOL: f64 = 5e-5;
pub const FOUR_DIGIT_TOL: f64 = 1e-4;
pub const CLOSED_FORM_TOL: f64 = 1e-10;
pub const ORACLE_TOL: f64 = 1e-9;
pub const OMITTED_TOL: f64 = 1e-14;
pub const HARMONIC_TOL: f64 = 1e-12;
pub const ROUND_TRIP_TOL: f64 = 1e-12;
pub const SHARPNESS_TOL: f64 = 1e-9;
pub const BOHR_TOL: f64 = 1e-10;

/// Reported radii with their precision.
pub const REPORTED_ROOTS: [(&str, f64, f64); 10] = [
    ("theo1", 0.557384, SIX_DIGIT_TOL),
    ("dilationM", 0.786151, SIX_DIGIT_TOL),
    ("th8ii", 0.396608, SIX_DIGIT_TOL),
    ("th8iii", 0.304725, SIX_DIGIT_TOL),
    ("t1", 0.294876, SIX_DIGIT_TOL),
    ("t4", 0.260985, SIX_DIGIT_TOL),
    ("t4B", 0.313967, SIX_DIGIT_TOL),
    ("t4C", 0.352049, SIX_DIGIT_TOL),
    ("th8iv", 0.75085, FOUR_DIGIT_TOL),
    ("th9i", 0.7829, FOUR_DIGIT_TOL),
];

pub fn closed_form_table() -> [(&'static str, f64); 6] {
    [
        ("th8i", 2.0 - 3f64.sqrt()),
        ("dilationM", ((5f64.sqrt() - 1.0) / 2.0).sqrt()),
        ("t1corM2", (10f64.sqrt() - 1.0).sqrt() / 3.0),
        ("bohrG1", (3f64.sqrt() - 1.0) / 2.0),
        ("bohrG2", SQRT_2 - 1.0),
        ("bohrG3", (SQRT_2 - 1.0) / 2.0),
    ]
}

pub const SHARPNESS_IDS: [&str; 7] = [
    "th8i", "th8ii", "th8iii", "t1", "bohrG1", "bohrG2", "bohrG3",
];

pub const ORACLE_RADIUS: f64 = 0.7;
pub const ORACLE_POINTS: usize = 512;
pub const ORACLE_SEED: u64 = 0x5eed_0001;
pub const BOHR_SEED: u64 = 0x5eed_0002;
pub const BOHR_MEMBERS: usize = 100;
pub const ROUND_TRIP_SEED: u64 = 0x5eed_0003;
pub const SZ_RADIUS: f64 = 0.999;

/// Defect from its defining expression, built only from the Taylor series
/// of `f` and its derivatives.
pub fn direct_defect(rep: &FunctionRep, tag: ClassTag, z: Complex64) -> Complex64 {
    let f = rep.f_coeffs();
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let (f0, f1, f2) = (f.eval(z), d1.eval(z), d2.eval(z));
    let g = z / f0;
    let g2 = -2.0 * f1 / (f0 * f0) - z * f2 / (f0 * f0) + 2.0 * z * f1 * f1 / (f0 * f0 * f0);
    match tag {
        ClassTag::M => z * z * g2 + f1 * g * g - 1.0,
        ClassTag::U => f1 * g * g - 1.0,
        ClassTag::P => g2,
        ClassTag::Omega | ClassTag::OmegaA => z * f1 - f0,
    }
}

/// Uniform random points on `|z| = radius`.
pub fn oracle_points(seed: u64, count: usize, radius: f64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Complex64::from_polar(radius, rng.random_range(0.0..2.0 * PI)))
        .collect()
}

fn roots(c: &Catalog) -> Vec<VerificationRecord> {
    REPORTED_ROOTS
        .iter()
        .map(|&(id, v, tol)| {
            let prov = if tol == SIX_DIGIT_TOL {
                "6-digit constant"
            } else {
                "4-digit constant"
            };
            let rid = format!("root:{id}");
            match c.solve_radius(id, &Params::default(), 1e-12) {
                Ok(s) => VerificationRecord::new(rid, 1, v, prov, Comparison::Within, s.root, tol),
                Err(e) => VerificationRecord::failed(rid, 1, v, prov, e.to_string()),
            }
        })
        .collect()
}

fn closed_forms(c: &Catalog) -> Vec<VerificationRecord> {
    let mut out = vec![];
    for (id, v) in closed_form_table() {
        let p = Params::default();
        let bis = format!("closed:{id}:bisection");
        out.push(match c.solve_radius(id, &p, 1e-13) {
            Ok(s) => VerificationRecord::new(
                bis,
                2,
                v,
                "closed form",
                Comparison::Within,
                s.root,
                CLOSED_FORM_TOL,
            ),
            Err(e) => VerificationRecord::failed(bis, 2, v, "closed form", e.to_string()),
        });
        let reg = format!("closed:{id}:registered");
        out.push(match c.closed_form_radius(id, &p) {
            Ok(r) => VerificationRecord::new(
                reg,
                2,
                v,
                "closed form",
                Comparison::Within,
                r,
                CLOSED_FORM_TOL,
            ),
            Err(e) => VerificationRecord::failed(reg, 2, v, "closed form", e.to_string()),
        });
    }
    out
}

fn oracle_error(tag: ClassTag) -> Result<f64> {
    let class = ClassId::new(tag, 1.0)?;
    let pts = oracle_points(ORACLE_SEED, ORACLE_POINTS, ORACLE_RADIUS);
    let mut worst = 0.0_f64;
    for name in CATALOG_NAMES {
        let rep = named_function(name, DEFAULT_ORDER)?;
        for &z in &pts {
            let (v, _) = defect_at(&rep, class, z)?;
            worst = worst.max((v - direct_defect(&rep, tag, z)).norm());
        }
    }
    Ok(worst)
}

fn oracles(_: &Catalog) -> Vec<VerificationRecord> {
    [ClassTag::M, ClassTag::U, ClassTag::P, ClassTag::Omega]
        .into_iter()
        .map(|tag| {
            let id = format!("oracle:{tag}");
            match oracle_error(tag) {
                Ok(e) => VerificationRecord::new(
                    id,
                    3,
                    0.0,
                    "identity",
                    Comparison::Within,
                    e,
                    ORACLE_TOL,
                ),
                Err(e) => VerificationRecord::failed(id, 3, 0.0, "identity", e.to_string()),
            }
        })
        .collect()
}

fn max_coeff_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

const LINEAR_TAGS: [ClassTag; 3] = [ClassTag::M, ClassTag::U, ClassTag::P];

fn omitted_invariance() -> Result<f64> {
    let mut worst = 0.0_f64;
    for name in CATALOG_NAMES {
        let rep = named_function(name, DEFAULT_ORDER)?;
        for a in [Complex64::new(-4.0, 0.0), Complex64::new(3.0, 2.0)] {
            let t = omitted_value(&rep, a)?;
            for tag in LINEAR_TAGS {
                let class = ClassId::new(tag, 1.0)?;
                let d0 = defect_series(&rep, class);
                let d1 = defect_series(&t, class);
                worst = worst.max(max_coeff_diff(d0.coeffs(), d1.coeffs()));
            }
        }
    }
    Ok(worst)
}

pub const HARMONIC_PAIRS: [(&str, &str); 4] = [
    ("koebe", "z/(1+z)"),
    ("f1", "convex-half"),
    ("cexA", "z/(1-z+z^2)"),
    ("koebe-neg", "cexB"),
];

fn harmonic_linearity() -> Result<f64> {
    let mut worst = 0.0_f64;
    for (fname, gname) in HARMONIC_PAIRS {
        let f = named_function(fname, DEFAULT_ORDER)?;
        let g = named_function(gname, DEFAULT_ORDER)?;
        for k in 0..=10 {
            let t = k as f64 / 10.0;
            let h = harmonic_combination(&f, &g, t)?;
            for tag in LINEAR_TAGS {
                let class = ClassId::new(tag, 1.0)?;
                let (df, dg, dh) = (
                    defect_series(&f, class),
                    defect_series(&g, class),
                    defect_series(&h, class),
                );
                for (n, c) in dh.coeffs().iter().enumerate() {
                    let want = (1.0 - t) * dg.coeff(n) + t * df.coeff(n);
                    worst = worst.max((c - want).norm());
                }
            }
        }
    }
    Ok(worst)
}

fn m_round_trip() -> Result<f64> {
    let mut worst = 0.0_f64;
    let mut rng = ChaCha8Rng::seed_from_u64(ROUND_TRIP_SEED);
    for i in 0..50 {
        let lambda = 0.1 + 0.9 * (i as f64 / 49.0);
        let w = random_schwarz_polynomial(&mut rng, 12).shift_up(2);
        let b1 = Complex64::from_polar(2.0 * rng.random::<f64>(), rng.random_range(0.0..2.0 * PI));
        let rep = generate_m_member(&w, lambda, b1)?;
        let d = defect_series(&rep, ClassId::new(ClassTag::M, lambda)?);
        for (n, c) in d.coeffs().iter().enumerate() {
            worst = worst.max((c - lambda * w.coeff(n)).norm());
        }
    }
    Ok(worst)
}

fn transforms(_: &Catalog) -> Vec<VerificationRecord> {
    let checks: [(&str, fn() -> Result<f64>, f64); 3] = [
        ("transform:omitted_value", omitted_invariance, OMITTED_TOL),
        ("transform:harmonic", harmonic_linearity, HARMONIC_TOL),
        ("transform:m_round_trip", m_round_trip, ROUND_TRIP_TOL),
    ];
    checks
        .into_iter()
        .map(|(id, f, tol)| match f() {
            Ok(e) => VerificationRecord::new(id, 4, 0.0, "identity", Comparison::Within, e, tol),
            Err(e) => VerificationRecord::failed(id, 4, 0.0, "identity", e.to_string()),
        })
        .collect()
}

fn sz_inside(name: &str) -> Result<f64> {
    let rep = named_function(name, DEFAULT_ORDER)?;
    let mut inside = 0.0;
    for class in [ClassId::m(1.0), ClassId::u(1.0)] {
        let d = sup_defect(&rep, class, SZ_RADIUS, DEFAULT_SAMPLES)?;
        if d.verdict == Verdict::CertifiedInside && d.tail_bound.is_finite() {
            inside += 1.0;
        }
    }
    Ok(inside)
}

fn sz_membership(_: &Catalog) -> Vec<VerificationRecord> {
    SZ_NAMES
        .iter()
        .map(|name| {
            let id = format!("membership:{name}");
            let prov = "certified inside M(1) and U(1)";
            match sz_inside(name) {
                Ok(k) => VerificationRecord::new(id, 5, 2.0, prov, Comparison::Within, k, 0.0),
                Err(e) => VerificationRecord::failed(id, 5, 2.0, prov, e.to_string()),
            }
        })
        .collect()
}

fn sharpness(c: &Catalog) -> Vec<VerificationRecord> {
    let mut out = vec![];
    for id in SHARPNESS_IDS {
        match c.verify_sharpness(id) {
            Ok(s) => {
                out.push(VerificationRecord::new(
                    format!("sharpness:{id}:below"),
                    6,
                    s.threshold,
                    "threshold",
                    Comparison::AtMost,
                    s.below.value + s.below.tail_bound,
                    SHARPNESS_TOL,
                ));
                out.push(VerificationRecord::new(
                    format!("sharpness:{id}:above"),
                    6,
                    s.threshold,
                    "threshold",
                    Comparison::Above,
                    s.above.value - s.above.tail_bound,
                    0.0,
                ));
            }
            Err(e) => out.push(VerificationRecord::failed(
                format!("sharpness:{id}"),
                6,
                0.5,
                "threshold",
                e.to_string(),
            )),
        }
    }
    out
}

pub fn bohr_radii() -> [(BohrKind, f64); 3] {
    [
        (BohrKind::Bohr, SQRT_2 - 1.0),
        (BohrKind::Rogosinski, (3f64.sqrt() - 1.0) / 2.0),
        (BohrKind::Improved, (SQRT_2 - 1.0) / 2.0),
    ]
}

/// Certified quantity of the given kind at `z = r`.
pub fn bohr_kind_quantity(rep: &FunctionRep, kind: BohrKind, r: f64) -> Result<f64> {
    let z = Complex64::new(r, 0.0);
    Ok(match kind {
        BohrKind::Bohr => bohr_quantity(rep, r)?,
        BohrKind::Rogosinski => rogosinski_quantity(rep, z, 2)?,
        BohrKind::Improved => improved_quantity(rep, z)?,
    }
    .quantity)
}

fn kind_name(kind: BohrKind) -> &'static str {
    match kind {
        BohrKind::Bohr => "bohr",
        BohrKind::Rogosinski => "rogosinski",
        BohrKind::Improved => "improved",
    }
}

fn bohr_members_max(kind: BohrKind, radius: f64) -> Result<f64> {
    let members = seeded_omega_a_members(BOHR_SEED, BOHR_MEMBERS, 16, Execution::Sequential)?;
    let mut worst = f64::NEG_INFINITY;
    for rep in &members {
        for k in 1..=10 {
            worst = worst.max(bohr_kind_quantity(rep, kind, radius * k as f64 / 10.0)?);
        }
    }
    Ok(worst)
}

fn bohr(_: &Catalog) -> Vec<VerificationRecord> {
    let mut out = vec![];
    for (kind, radius) in bohr_radii() {
        let id = format!("bohr:members:{}", kind_name(kind));
        out.push(match bohr_members_max(kind, radius) {
            Ok(q) => VerificationRecord::new(
                id,
                7,
                0.5,
                "distance bound",
                Comparison::AtMost,
                q,
                BOHR_TOL,
            ),
            Err(e) => VerificationRecord::failed(id, 7, 0.5, "distance bound", e.to_string()),
        });
        let id = format!("bohr:f1:{}", kind_name(kind));
        let q =
            named_function("f1", DEFAULT_ORDER).and_then(|f| bohr_kind_quantity(&f, kind, radius));
        out.push(match q {
            Ok(q) => {
                VerificationRecord::new(id, 7, 0.5, "equality", Comparison::Within, q, BOHR_TOL)
            }
            Err(e) => VerificationRecord::failed(id, 7, 0.5, "equality", e.to_string()),
        });
    }
    out
}

fn li2_reflection() -> Result<f64> {
    let mut worst = 0.0_f64;
    for k in 1..100 {
        let x = k as f64 / 100.0;
        let a = polylog(2, x)?.value;
        let b = polylog(2, 1.0 - x)?.value;
        let rhs = PI * PI / 6.0 - x.ln() * (1.0 - x).ln();
        worst = worst.max((a + b - rhs).abs());
    }
    Ok(worst)
}

fn special(_: &Catalog) -> Vec<VerificationRecord> {
    let s = inverse_square_sum_from(3, 1_000_000);
    let moments = (2..=64u32)
        .map(|n| (log_moment(n) * ((n - 1) as f64).powi(2) - 1.0).abs())
        .fold(0.0, f64::max);
    let mut out = vec![
        VerificationRecord::new(
            "special:inverse_square_tail",
            8,
            PI * PI / 6.0 - 1.25,
            "closed form",
            Comparison::Within,
            s.value,
            1e-9,
        ),
        VerificationRecord::new(
            "special:log_moment",
            8,
            0.0,
            "identity",
            Comparison::Within,
            moments,
            1e-12,
        ),
    ];
    out.push(match li2_reflection() {
        Ok(e) => VerificationRecord::new(
            "special:li2_reflection",
            8,
            0.0,
            "identity",
            Comparison::Within,
            e,
            1e-10,
        ),
        Err(e) => {
            VerificationRecord::failed("special:li2_reflection", 8, 0.0, "identity", e.to_string())
        }
    });
    out
}

/// Radius where the sampled `M`-defect sup of `rep` crosses 1.
pub fn m_defect_crossing(rep: &FunctionRep) -> Result<f64> {
    let excess = |r: f64| -> Result<f64> {
        Ok(sup_defect(rep, ClassId::m(1.0), r, DEFAULT_SAMPLES)?.sup_sampled - 1.0)
    };
    let (mut a, mut b) = (0.5, 0.999);
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if excess(m)? < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

fn counterexamples(_: &Catalog) -> Vec<VerificationRecord> {
    let want = 0.75f64.cbrt();
    let a = named_function("cexA", DEFAULT_ORDER).and_then(|f| m_defect_crossing(&f));
    let b = named_function("cexB", DEFAULT_ORDER).map(|f| quartic_necessary(&f));
    vec![
        match a {
            Ok(r) => VerificationRecord::new(
                "counterexample:cexA:crossing",
                9,
                want,
                "closed form",
                Comparison::Within,
                r,
                1e-5,
            ),
            Err(e) => VerificationRecord::failed(
                "counterexample:cexA:crossing",
                9,
                want,
                "closed form",
                e.to_string(),
            ),
        },
        match &b {
            Ok(c) => VerificationRecord::new(
                "counterexample:cexB:quartic",
                9,
                4.0,
                "closed form",
                Comparison::Within,
                c.value,
                1e-12,
            ),
            Err(e) => VerificationRecord::failed(
                "counterexample:cexB:quartic",
                9,
                4.0,
                "closed form",
                e.to_string(),
            ),
        },
        match &b {
            Ok(c) => VerificationRecord::new(
                "counterexample:cexB:excluded",
                9,
                c.bound,
                "necessary bound",
                Comparison::Above,
                c.value,
                0.0,
            ),
            Err(e) => VerificationRecord::failed(
                "counterexample:cexB:excluded",
                9,
                1.0,
                "necessary bound",
                e.to_string(),
            ),
        },
    ]
}

type Group = fn(&Catalog) -> Vec<VerificationRecord>;

const GROUPS: [Group; 9] = [
    roots,
    closed_forms,
    oracles,
    transforms,
    sz_membership,
    sharpness,
    bohr,
    special,
    counterexamples,
];

/// Runs every check against `catalog`; records are sorted by id.
pub fn run_all(catalog: &Catalog) -> Vec<VerificationRecord> {
    run_all_with(catalog, Execution::default())
}

pub fn run_all_with(catalog: &Catalog, exec: Execution) -> Vec<VerificationRecord> {
    let mut out: Vec<VerificationRecord> = exec
        .map_slice(&GROUPS, |g| g(catalog))
        .into_iter()
        .flatten()
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}
