use std::f64::consts::PI;

use proptest::prelude::*;
use spectral_lb::bounds::{
    cheng_wei_sum, lambda_k_lower, levine_protter_sum, li_yau_sum, planar_four_term_sum, two_term_onset, LambdaSource,
};
use spectral_lb::{evaluate, BandChoice, BandPolicy, Direction, Domain, Family, Operator, Params, Variant};

fn params_for(family: Family) -> Params {
    let mut p = Params::default();
    match family {
        Family::Melas => p.c_n = Some(0.02),
        Family::Kvw => {
            p.a0 = Some(0.5);
            p.kvw_c = Some(0.3);
        }
        Family::BandGmt | Family::LambdaKGmt | Family::BandClamped | Family::GammaK => p.m = Some(2),
        Family::ChengWeiUpper => {
            p.r0 = Some(2.0);
            p.v_shell = Some(0.1);
        }
        _ => {}
    }
    p
}

fn domain_for(family: Family) -> Domain {
    match family {
        Family::BandGmt | Family::LambdaKGmt => Domain::cuboid(vec![1.0, 1.3, 0.8]).unwrap(),
        _ => Domain::cuboid(vec![1.0, 1.5]).unwrap(),
    }
}

/// Parameters that carry units move with the domain: C(a₀) and 1/r₀ are lengths, v_shell a volume.
fn dilate_params(p: &Params, c: f64, n: usize) -> Params {
    let mut q = p.clone();
    q.kvw_c = p.kvw_c.map(|v| v * c);
    q.r0 = p.r0.map(|v| v / c);
    q.v_shell = p.v_shell.map(|v| v * c.powi(n as i32));
    q
}

#[test]
fn every_family_scales_with_dilation() {
    for family in Family::ALL {
        let d = domain_for(family);
        let p = params_for(family);
        let base = d.constants().unwrap();
        let expected_power = match family.operator() {
            Operator::Laplace => -2,
            Operator::Bilaplace => -4,
        };
        for c in [0.5, 2.0] {
            let scaled = d.dilate(c).constants().unwrap();
            let q = dilate_params(&p, c, d.dimension);
            for k in [20, 37, 100] {
                let a = evaluate(family, &base, k, &p).unwrap().value;
                let b = evaluate(family, &scaled, k, &q).unwrap().value;
                let want = a * c.powi(expected_power);
                assert!(((b - want) / want).abs() < 1e-10, "{family} c={c} k={k}: {b} vs {want}");
            }
        }
    }
}

#[test]
fn dominance_identity_holds_exactly() {
    for v in [0.25, 1.0, 3.0] {
        let c = Domain::abstract_domain(2, v, None).unwrap().constants().unwrap();
        for k in (1..=10_000u64).step_by(97) {
            let diff = planar_four_term_sum(&c, k).unwrap().value - li_yau_sum(&c, k).unwrap().value;
            let kf = k as f64;
            let want = PI / v * (kf.powf(1.5) - 5.0 * kf / 8.0 + kf.sqrt() / 8.0);
            assert!((diff - want).abs() <= 1e-12 * want.abs().max(1.0) * kf, "k={k}");
            assert!(diff > 0.0);
        }
    }
}

#[test]
fn n2_coefficients_at_unit_volume() {
    let c = Domain::unit_box(2).constants().unwrap();
    let e = planar_four_term_sum(&c, 1).unwrap();
    let want = [2.0 * PI, PI, -5.0 * PI / 8.0, PI / 8.0];
    let got: Vec<f64> = e.terms.iter().map(|(_, v)| *v).collect();
    for (g, w) in got.iter().zip(want) {
        assert!(((g - w) / w).abs() < 1e-12);
    }
}

#[test]
fn lambda_k_mt_unit_square_k4() {
    // a = (−3+√573)/6 from the band equation at target 16, then the printed formula.
    let c = Domain::unit_box(2).constants().unwrap();
    let e = lambda_k_lower(&c, 4, LambdaSource::Mt, BandChoice::Policy(BandPolicy::Isoperimetric), Variant::Printed)
        .unwrap();
    assert!((e.value - 43.0).abs() < 0.1, "{}", e.value);
    assert!(e.value < 8.0 * PI * PI);
}

#[test]
fn cheng_wei_2_unit_square_k1() {
    let c = Domain::unit_box(2).constants().unwrap();
    let e = cheng_wei_sum(&c, 1, 2).unwrap();
    assert!((e.term("inertia").unwrap() - PI / 3.0).abs() < 1e-12);
    assert!((e.value - 53.69).abs() < 5e-3, "{}", e.value);
}

#[test]
fn upper_family_reports_direction() {
    let c = Domain::unit_box(2).constants().unwrap();
    let p = params_for(Family::ChengWeiUpper);
    assert_eq!(evaluate(Family::ChengWeiUpper, &c, 10, &p).unwrap().direction, Direction::Upper);
    assert!(evaluate(Family::ChengWeiUpper, &c, 3, &p).is_err());
    let lp = levine_protter_sum(&c, 10).unwrap().value;
    assert!(evaluate(Family::ChengWeiUpper, &c, 10, &p).unwrap().value > lp);
}

#[test]
fn two_term_onset_is_sharp() {
    for eps in [0.05, 0.2, 1.0] {
        let k0 = two_term_onset(eps, 1_000_000).unwrap();
        let gap = |k: u64| eps * k as f64 - 5.0 * PI * (k as f64).sqrt() / 8.0 + PI / 8.0;
        assert!(gap(k0) >= 0.0);
        if k0 > 1 {
            assert!(gap(k0 - 1) < 0.0);
        }
    }
}

proptest! {
    #[test]
    fn li_yau_below_n2_on_any_volume(v in 0.01f64..100.0, k in 1u64..5000) {
        let c = Domain::abstract_domain(2, v, None).unwrap().constants().unwrap();
        prop_assert!(planar_four_term_sum(&c, k).unwrap().value > li_yau_sum(&c, k).unwrap().value);
    }

    #[test]
    fn positive_term_bounds_increase_in_k(idx in 0usize..6, k in 1u64..300) {
        let family = [
            Family::LiYau,
            Family::Melas,
            Family::LevineProtter,
            Family::ChengWei1,
            Family::ChengWei2,
            Family::YyTse,
        ][idx];
        let c = domain_for(family).constants().unwrap();
        let p = params_for(family);
        let a = evaluate(family, &c, k, &p).unwrap().value;
        let b = evaluate(family, &c, k + 1, &p).unwrap().value;
        prop_assert!(b > a, "{family}: {a} then {b}");
    }
}
