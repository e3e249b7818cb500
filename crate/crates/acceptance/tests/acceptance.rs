//! One line per acceptance criterion, then supporting catalog checks.
//! Exits nonzero if anything fails.

use std::f64::consts::{PI, SQRT_2};
use std::process::ExitCode;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radii_lab::bohr_analysis::{bohr_quantity, improved_quantity, rogosinski_quantity};
use radii_lab::class_operators::{
    defect_at, defect_series, generate_m_member, quartic_necessary, random_schwarz_polynomial,
    seeded_omega_a_members, sup_defect, ClassId, ClassTag, Verdict,
};
use radii_lab::cli_reporter::cmd_verify_all;
use radii_lab::named::{named_function, CATALOG_NAMES, SZ_NAMES};
use radii_lab::radius_catalog::{closed_form_radius, solve_radius, Catalog, Params};
use radii_lab::series_core::{FunctionRep, DEFAULT_ORDER, DEFAULT_SAMPLES};
use radii_lab::special_functions::{inverse_square_sum_from, log_moment, polylog};
use radii_lab::transforms::{harmonic_combination, omitted_value, quotient_product, square_over};
use radii_lab::Execution;

type Check = Result<String, String>;

fn p() -> Params {
    Params::default()
}

fn rep(name: &str) -> FunctionRep {
    named_function(name, DEFAULT_ORDER).unwrap()
}

/// Collects failures; passes with `summary` if there are none.
fn verdict(failures: Vec<String>, summary: String) -> Check {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(failures.join("; "))
    }
}

fn root_reproduction() -> Check {
    let cases = [
        ("theo1", 0.557384, 5e-5),
        ("dilationM", 0.786151, 5e-5),
        ("th8ii", 0.396608, 5e-5),
        ("th8iii", 0.304725, 5e-5),
        ("t1", 0.294876, 5e-5),
        ("t4", 0.260985, 5e-5),
        ("t4B", 0.313967, 5e-5),
        ("t4C", 0.352049, 5e-5),
        ("th8iv", 0.75085, 1e-4),
        ("th9i", 0.7829, 1e-4),
    ];
    let mut fails = vec![];
    let mut worst = 0.0_f64;
    for (id, want, tol) in cases {
        match solve_radius(id, &p(), 1e-12) {
            Ok(s) => {
                let d = (s.root - want).abs();
                worst = worst.max(d.min(tol));
                if d > tol {
                    fails.push(format!(
                        "{id}: root {:.10} vs {want}, |diff| {d:.3e} > {tol:.0e}",
                        s.root
                    ));
                }
            }
            Err(e) => fails.push(format!("{id}: {e}")),
        }
    }
    verdict(fails, format!("10 roots, max |diff| {worst:.2e}"))
}

fn closed_forms() -> Check {
    let cases = [
        ("th8i", 2.0 - 3f64.sqrt()),
        ("dilationM", ((5f64.sqrt() - 1.0) / 2.0).sqrt()),
        ("t1corM2", (10f64.sqrt() - 1.0).sqrt() / 3.0),
        ("bohrG1", (3f64.sqrt() - 1.0) / 2.0),
        ("bohrG2", SQRT_2 - 1.0),
        ("bohrG3", (SQRT_2 - 1.0) / 2.0),
    ];
    let mut fails = vec![];
    let mut worst = 0.0_f64;
    for (id, want) in cases {
        let cf = closed_form_radius(id, &p()).map_err(|e| e.to_string())?;
        if (cf - want).abs() > 1e-15 {
            fails.push(format!("{id}: closed form {cf} vs {want}"));
        }
        let s = solve_radius(id, &p(), 1e-13).map_err(|e| e.to_string())?;
        let d = (s.root - cf).abs();
        worst = worst.max(d);
        if d > 1e-10 {
            fails.push(format!("{id}: bisection {} vs {cf}", s.root));
        }
    }
    verdict(
        fails,
        format!("6 closed forms, max bisection gap {worst:.2e}"),
    )
}

/// The defining expression evaluated from `f, f', f''` at `z`.
fn defining_expression(f: &FunctionRep, tag: ClassTag, z: Complex64) -> Complex64 {
    let a = f.f_coeffs();
    let (mut v, mut d1, mut d2) = (
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    );
    // Horner for f, f' and f''; each derivative loop stops at its lowest index.
    for (n, c) in a.coeffs().iter().enumerate().rev() {
        let n = n as f64;
        v = v * z + c;
        if n >= 1.0 {
            d1 = d1 * z + c * n;
        }
        if n >= 2.0 {
            d2 = d2 * z + c * n * (n - 1.0);
        }
    }
    let g = z / v;
    // (z/f)'' from the quotient rule.
    let g2 = (-2.0 * d1 * v - z * d2 * v + 2.0 * z * d1 * d1) / (v * v * v);
    match tag {
        ClassTag::M => z * z * g2 + d1 * g * g - 1.0,
        ClassTag::U => d1 * g * g - 1.0,
        ClassTag::P => g2,
        ClassTag::Omega | ClassTag::OmegaA => z * d1 - v,
    }
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pts: Vec<Complex64> = (0..512)
        .map(|_| Complex64::from_polar(0.7, rng.random_range(0.0..2.0 * PI)))
        .collect();
    let mut worst = 0.0_f64;
    let mut fails = vec![];
    for name in CATALOG_NAMES {
        let f = rep(name);
        for tag in [ClassTag::M, ClassTag::U, ClassTag::P, ClassTag::Omega] {
            let class = ClassId::new(tag, 1.0).unwrap();
            let e = pts
                .iter()
                .map(|&z| {
                    (defect_at(&f, class, z).unwrap().0 - defining_expression(&f, tag, z)).norm()
                })
                .fold(0.0, f64::max);
            worst = worst.max(e);
            if !(e <= 1e-9) {
                fails.push(format!("{name} {tag}: {e:.3e}"));
            }
        }
    }
    verdict(
        fails,
        format!("13 functions x 4 classes x 512 points, max err {worst:.2e}"),
    )
}

fn max_coeff_gap(
    a: &radii_lab::series_core::TruncatedSeries,
    b: &radii_lab::series_core::TruncatedSeries,
) -> f64 {
    (0..=a.order().max(b.order()))
        .map(|n| (a.coeff(n) - b.coeff(n)).norm())
        .fold(0.0, f64::max)
}

fn transform_invariants() -> Check {
    let mut fails = vec![];
    let linear = [ClassTag::M, ClassTag::U, ClassTag::P];

    let mut omitted = 0.0_f64;
    for name in CATALOG_NAMES {
        let f = rep(name);
        let g = omitted_value(&f, Complex64::new(-5.0, 1.0)).unwrap();
        for tag in linear {
            let cl = ClassId::new(tag, 1.0).unwrap();
            omitted = omitted.max(max_coeff_gap(
                &defect_series(&f, cl),
                &defect_series(&g, cl),
            ));
        }
    }
    if omitted > 1e-14 {
        fails.push(format!("omitted value {omitted:.3e}"));
    }

    let mut harmonic = 0.0_f64;
    for (a, b) in [
        ("koebe", "f1"),
        ("convex-half", "cexB"),
        ("z/(1+z^2)", "cexA"),
    ] {
        let (f, g) = (rep(a), rep(b));
        for k in 0..=10 {
            let t = k as f64 / 10.0;
            let h = harmonic_combination(&f, &g, t).unwrap();
            for tag in linear {
                let cl = ClassId::new(tag, 1.0).unwrap();
                let (df, dg, dh) = (
                    defect_series(&f, cl),
                    defect_series(&g, cl),
                    defect_series(&h, cl),
                );
                for n in 0..=dh.order() {
                    harmonic = harmonic
                        .max((dh.coeff(n) - (1.0 - t) * dg.coeff(n) - t * df.coeff(n)).norm());
                }
            }
        }
    }
    if harmonic > 1e-12 {
        fails.push(format!("harmonic {harmonic:.3e}"));
    }

    let mut round = 0.0_f64;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..40 {
        let lambda = 0.05 + 0.05 * i as f64;
        let w = random_schwarz_polynomial(&mut rng, 1 + i % 15).shift_up(2);
        let b1 = Complex64::from_polar(2.0 * rng.random::<f64>(), rng.random_range(0.0..2.0 * PI));
        let f = generate_m_member(&w, lambda, b1).unwrap();
        let d = defect_series(&f, ClassId::m(lambda));
        for n in 0..=d.order() {
            round = round.max((d.coeff(n) - lambda * w.coeff(n)).norm());
        }
    }
    if round > 1e-12 {
        fails.push(format!("M round trip {round:.3e}"));
    }
    verdict(
        fails,
        format!("omitted {omitted:.1e}, harmonic {harmonic:.1e}, round trip {round:.1e}"),
    )
}

fn sz_membership() -> Check {
    let mut fails = vec![];
    let mut worst = 0.0_f64;
    for name in SZ_NAMES {
        let f = rep(name);
        for class in [ClassId::m(1.0), ClassId::u(1.0)] {
            let d = sup_defect(&f, class, 0.999, DEFAULT_SAMPLES).map_err(|e| e.to_string())?;
            worst = worst.max(d.certified_sup());
            if d.verdict != Verdict::CertifiedInside || !d.tail_bound.is_finite() {
                fails.push(format!(
                    "{name} {}: {:?}, bound {}",
                    class.tag,
                    d.verdict,
                    d.certified_sup()
                ));
            }
        }
    }
    verdict(
        fails,
        format!("9 functions in M(1) and U(1) at r=0.999, max bound {worst:.4}"),
    )
}

fn sharpness_crossings() -> Check {
    let m1 = ClassId::m(1.0);
    let defect = |f: FunctionRep| {
        move |r: f64| {
            let d = sup_defect(&f, m1, r, DEFAULT_SAMPLES).unwrap();
            (d.sup_sampled, d.tail_bound, 1.0)
        }
    };
    let f1 = rep("f1");
    let f1b = f1.clone();
    let f1c = f1.clone();
    let witnesses: Vec<(&str, Box<dyn Fn(f64) -> (f64, f64, f64)>)> = vec![
        ("th8i", Box::new(defect(square_over(&rep("koebe"))))),
        ("th8ii", Box::new(defect(square_over(&rep("z/(1-z)"))))),
        ("th8iii", Box::new(defect(square_over(&rep("convex-half"))))),
        (
            "t1",
            Box::new(defect(quotient_product(&rep("koebe"), &rep("koebe")))),
        ),
        (
            "bohrG1",
            Box::new(move |r| {
                let q = rogosinski_quantity(&f1, Complex64::new(r, 0.0), 2).unwrap();
                (q.quantity - q.tail_bound, q.tail_bound, 0.5)
            }),
        ),
        (
            "bohrG2",
            Box::new(move |r| {
                let q = bohr_quantity(&f1b, r).unwrap();
                (q.quantity - q.tail_bound, q.tail_bound, 0.5)
            }),
        ),
        (
            "bohrG3",
            Box::new(move |r| {
                let q = improved_quantity(&f1c, Complex64::new(r, 0.0)).unwrap();
                (q.quantity - q.tail_bound, q.tail_bound, 0.5)
            }),
        ),
    ];
    let mut fails = vec![];
    for (id, w) in &witnesses {
        let root = solve_radius(id, &p(), 1e-13)
            .map_err(|e| e.to_string())?
            .root;
        let (v, t, thr) = w(root - 1e-6);
        if v + t > thr + 1e-9 {
            fails.push(format!("{id}: {} at root-1e-6", v + t));
        }
        let (v, t, thr) = w(root + 1e-3);
        if !(v - t > thr) {
            fails.push(format!("{id}: {} at root+1e-3", v - t));
        }
    }
    verdict(fails, "7 witnesses cross at their roots".into())
}

fn bohr_suite() -> Check {
    let members =
        seeded_omega_a_members(2024, 100, 16, Execution::default()).map_err(|e| e.to_string())?;
    let f1 = rep("f1");
    let kinds: [(&str, f64, fn(&FunctionRep, f64) -> f64); 3] = [
        ("bohr", SQRT_2 - 1.0, |f, r| {
            bohr_quantity(f, r).unwrap().quantity
        }),
        ("rogosinski", (3f64.sqrt() - 1.0) / 2.0, |f, r| {
            rogosinski_quantity(f, Complex64::new(r, 0.0), 2)
                .unwrap()
                .quantity
        }),
        ("improved", (SQRT_2 - 1.0) / 2.0, |f, r| {
            improved_quantity(f, Complex64::new(r, 0.0))
                .unwrap()
                .quantity
        }),
    ];
    let mut fails = vec![];
    let mut gap = 0.0_f64;
    for (name, radius, q) in kinds {
        for (i, f) in members.iter().enumerate() {
            for k in 1..=10 {
                let v = q(f, radius * k as f64 / 10.0);
                if v > 0.5 + 1e-10 {
                    fails.push(format!("{name} member {i}: {v}"));
                }
            }
        }
        let e = (q(&f1, radius) - 0.5).abs();
        gap = gap.max(e);
        if e > 1e-10 {
            fails.push(format!("{name}: f1 off equality by {e:.3e}"));
        }
    }
    verdict(
        fails,
        format!("100 members x 3 kinds hold, f1 equality within {gap:.1e}"),
    )
}

fn special_functions() -> Check {
    let mut fails = vec![];
    let s = inverse_square_sum_from(3, 1_000_000);
    let d = (s.value - (PI * PI / 6.0 - 1.25)).abs();
    if d > 1e-9 {
        fails.push(format!("inverse square tail off by {d:.3e}"));
    }
    for n in 2..=64u32 {
        let e = (log_moment(n) * ((n - 1) as f64).powi(2) - 1.0).abs();
        if e > 1e-12 {
            fails.push(format!("log_moment({n}) off by {e:.3e}"));
        }
    }
    let mut refl = 0.0_f64;
    for k in 1..200 {
        let x = k as f64 / 200.0;
        let lhs = polylog(2, x).unwrap().value + polylog(2, 1.0 - x).unwrap().value;
        refl = refl.max((lhs - (PI * PI / 6.0 - x.ln() * (1.0 - x).ln())).abs());
    }
    if refl > 1e-10 {
        fails.push(format!("Li2 reflection off by {refl:.3e}"));
    }
    verdict(fails, format!("sum gap {d:.1e}, reflection {refl:.1e}"))
}

fn counterexamples() -> Check {
    let mut fails = vec![];
    let a = rep("cexA");
    let sup = |r: f64| {
        sup_defect(&a, ClassId::m(1.0), r, DEFAULT_SAMPLES)
            .unwrap()
            .sup_sampled
    };
    for r in [0.5, 0.8, 0.95] {
        if (sup(r) - 4.0 / 3.0 * r * r * r).abs() > 1e-12 {
            fails.push(format!("cexA sup at {r} is {}", sup(r)));
        }
    }
    let (mut lo, mut hi) = (0.5, 0.99);
    while hi - lo > 1e-12 {
        let m = 0.5 * (lo + hi);
        if sup(m) < 1.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    let want = 0.75f64.cbrt();
    if (lo - want).abs() > 1e-5 {
        fails.push(format!("cexA crossing {lo} vs {want}"));
    }
    let q = quartic_necessary(&rep("cexB"));
    if (q.value - 4.0).abs() > 1e-12 || q.holds || !(q.value > 1.0) {
        fails.push(format!("cexB quartic value {} holds={}", q.value, q.holds));
    }
    verdict(
        fails,
        format!("cexA crosses at {lo:.8}, cexB quartic {}", q.value),
    )
}

fn expected_roots_near_zero() -> Check {
    let c = Catalog::standard();
    let mut fails = vec![];
    for e in c.entries() {
        if let Some(x) = e.expected {
            let g = c
                .eval_equation(e.id, &p(), x.value)
                .map_err(|e| e.to_string())?;
            if g.abs() > 1e-3 {
                fails.push(format!(
                    "{}: |G({})| = {:.4e} > 1e-3",
                    e.id,
                    x.value,
                    g.abs()
                ));
            }
        }
    }
    verdict(fails, "|G| <= 1e-3 at every registered constant".into())
}

fn verify_all_exit() -> Check {
    let out = cmd_verify_all(&Catalog::standard(), true, Execution::default());
    if out.code == 0 {
        Ok("exit 0".into())
    } else {
        let v: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
        let failing: Vec<&str> = v["records"]
            .as_array()
            .into_iter()
            .flatten()
            .filter(|r| r["pass"] == false)
            .filter_map(|r| r["id"].as_str())
            .collect();
        Err(format!(
            "exit {}, failing: {}",
            out.code,
            failing.join(", ")
        ))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Check); 11] = [
        ("1", "root reproduction", root_reproduction),
        ("2", "closed forms", closed_forms),
        ("3", "defect oracle equivalence", oracle_equivalence),
        ("4", "transform invariants", transform_invariants),
        ("5", "integer-coefficient membership", sz_membership),
        ("6", "sharpness crossings", sharpness_crossings),
        ("7", "Bohr suite", bohr_suite),
        ("8", "special functions", special_functions),
        ("9", "counterexamples", counterexamples),
        (
            "-",
            "catalog constants are near zeros",
            expected_roots_near_zero,
        ),
        ("-", "verify-all on a fresh catalog", verify_all_exit),
    ];
    let mut failed = 0;
    println!();
    for (n, name, f) in criteria {
        let (tag, detail) = match f() {
            Ok(s) => ("PASS", s),
            Err(s) => {
                failed += 1;
                ("FAIL", s)
            }
        };
        let label = if n == "-" {
            "supporting  ".to_string()
        } else {
            format!("criterion {n} ")
        };
        println!("{label}{name:<34} {tag}  {detail}");
    }
    println!("\nacceptance: {} passed, {failed} failed\n", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
