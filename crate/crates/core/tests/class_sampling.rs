use num_complex::Complex64;

use radii_lab::class_operators::{seeded_m_members, sup_defect, ClassId, Verdict};
use radii_lab::named::{named_function, CATALOG_NAMES, SZ_NAMES};
use radii_lab::series_core::{DEFAULT_ORDER, DEFAULT_SAMPLES};
use radii_lab::transforms::{
    forbidden_point, quotient_product, square_over_integral, OmissionVerdict,
};
use radii_lab::Execution;

const SEED: u64 = 20_240_601;

#[test]
fn integer_coefficient_functions_inside_m_and_u() {
    for name in SZ_NAMES {
        let f = named_function(name, DEFAULT_ORDER).unwrap();
        for class in [ClassId::m(1.0), ClassId::u(1.0)] {
            let d = sup_defect(&f, class, 0.999, DEFAULT_SAMPLES).unwrap();
            assert!(d.tail_bound.is_finite());
            assert_eq!(
                d.verdict,
                Verdict::CertifiedInside,
                "{name} {:?}: {}",
                class.tag,
                d.certified_sup()
            );
        }
    }
}

#[test]
fn m_members_inside_p_and_u() {
    let members = seeded_m_members(SEED, 100, 1.0, 12, Execution::default()).unwrap();
    for (i, f) in members.iter().enumerate() {
        for class in [ClassId::p(1.0), ClassId::u(1.0)] {
            let d = sup_defect(f, class, 0.99, DEFAULT_SAMPLES).unwrap();
            assert_eq!(
                d.verdict,
                Verdict::CertifiedInside,
                "member {i} {:?}: {}",
                class.tag,
                d.certified_sup()
            );
        }
    }
}

#[test]
fn defect_sup_grows_with_radius() {
    let members = seeded_m_members(SEED + 1, 5, 0.7, 8, Execution::default()).unwrap();
    let mut reps: Vec<_> = CATALOG_NAMES
        .iter()
        .map(|n| named_function(n, DEFAULT_ORDER).unwrap())
        .collect();
    reps.extend(members);
    let radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    for (k, f) in reps.iter().enumerate() {
        let mut classes = vec![ClassId::m(1.0), ClassId::u(1.0), ClassId::p(1.0)];
        // Generated members carry no f/z majorant.
        if k < CATALOG_NAMES.len() {
            classes.push(ClassId::omega());
        }
        for class in classes {
            let sups: Vec<f64> = radii
                .iter()
                .map(|&r| sup_defect(f, class, r, 1024).unwrap().sup_sampled)
                .collect();
            for w in sups.windows(2) {
                assert!(w[1] >= w[0] * (1.0 - 1e-12), "{sups:?}");
            }
        }
    }
}

#[test]
fn quotient_products_of_m_members() {
    let members = seeded_m_members(SEED + 2, 20, 1.0, 10, Execution::default()).unwrap();
    for pair in members.chunks(2) {
        let q = quotient_product(&pair[0], &pair[1]);
        let d = sup_defect(&q, ClassId::m(1.0), 0.29, DEFAULT_SAMPLES).unwrap();
        assert!(d.sup_sampled <= 1.0 + d.tail_bound, "{}", d.sup_sampled);
    }
    let k = named_function("koebe", DEFAULT_ORDER).unwrap();
    let kk = quotient_product(&k, &k);
    assert!(
        sup_defect(&kk, ClassId::m(1.0), 0.29, DEFAULT_SAMPLES)
            .unwrap()
            .sup_sampled
            < 1.0
    );
    let d = sup_defect(&kk, ClassId::m(1.0), 0.32, DEFAULT_SAMPLES).unwrap();
    assert!(d.sup_sampled - d.tail_bound > 1.0);
    assert_eq!(d.verdict, Verdict::CertifiedOutside);
}

#[test]
fn square_over_integral_of_m_members() {
    let members = seeded_m_members(SEED + 3, 30, 1.0, 10, Execution::default()).unwrap();
    for f in &members {
        let g = square_over_integral(f).unwrap();
        let d = sup_defect(&g, ClassId::m(1.0), 0.999, DEFAULT_SAMPLES).unwrap();
        assert_eq!(d.verdict, Verdict::CertifiedInside, "{}", d.certified_sup());
    }
}

#[test]
fn forbidden_points_are_omitted() {
    for lambda in [0.5, 0.8, 1.0] {
        let members = seeded_m_members(SEED + 4, 6, lambda, 8, Execution::default()).unwrap();
        let radius = 1.0 - lambda;
        for (i, f) in members.iter().enumerate() {
            for mu in [
                Complex64::new(0.0, 0.0),
                Complex64::new(radius, 0.0),
                Complex64::from_polar(radius, 2.0),
            ] {
                if (f.b(1) + mu).norm() < 1e-9 {
                    continue;
                }
                let fp = forbidden_point(f, mu, lambda).unwrap();
                assert_eq!(
                    fp.verdict,
                    OmissionVerdict::OmittedOnGrid,
                    "lambda={lambda} member {i} mu={mu}: {}",
                    fp.min_distance
                );
            }
        }
    }
}
