use std::f64::consts::PI;

use proptest::prelude::*;
use spectral_lb::geometry::{inertia_floor, unit_ball_volume};
use spectral_lb::{Domain, Error};

#[test]
fn unit_ball_volumes() {
    let want = [2.0, PI, 4.0 * PI / 3.0, PI * PI / 2.0, 8.0 * PI * PI / 15.0];
    for (n, w) in (1..=5).zip(want) {
        let v: f64 = unit_ball_volume(n).unwrap();
        assert!((v - w).abs() < 1e-14 * w);
    }
}

#[test]
fn missing_inertia_is_typed() {
    let c = Domain::abstract_domain(2, 1.0, None).unwrap().constants().unwrap();
    assert!(matches!(c.require_inertia("melas"), Err(Error::MissingInertia { .. })));
    let floored = c.with_inertia_floor().unwrap();
    let floor: f64 = inertia_floor(2, 1.0).unwrap();
    assert_eq!(floored.inertia, Some(floor));
}

#[test]
fn invalid_domains_are_rejected() {
    assert!(Domain::cuboid(vec![]).is_err());
    assert!(Domain::ball(0, 1.0).is_err());
    assert!(Domain::ball(2, -1.0).is_err());
    assert!(Domain::abstract_domain(3, 1.0, Some(0.0)).is_err());
    assert!(Domain::abstract_domain(2, f64::NAN, None).is_err());
}

#[test]
fn domain_json_round_trip() {
    for d in [
        Domain::cuboid(vec![1.0, 2.0]).unwrap(),
        Domain::ball(3, 0.5).unwrap(),
        Domain::abstract_domain(4, 2.0, Some(1.5)).unwrap(),
        Domain::abstract_domain(2, 2.0, None).unwrap(),
    ] {
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<Domain>(&text).unwrap(), d);
    }
}

proptest! {
    #[test]
    fn dilation_scales_volume_and_inertia(c in 0.1f64..10.0, l1 in 0.1f64..5.0, l2 in 0.1f64..5.0, r in 0.1f64..3.0) {
        for d in [Domain::cuboid(vec![l1, l2, l1]).unwrap(), Domain::ball(3, r).unwrap()] {
            let s = d.dilate(c);
            let (v, i) = (d.volume().unwrap(), d.inertia().unwrap().unwrap());
            prop_assert!((s.volume().unwrap() / v / c.powi(3) - 1.0).abs() < 1e-12);
            prop_assert!((s.inertia().unwrap().unwrap() / i / c.powi(5) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ball_minimizes_inertia(n in 1usize..=6, lengths in proptest::collection::vec(0.1f64..4.0, 6)) {
        // Among sets of equal volume the centered ball has the least second moment.
        let d = Domain::cuboid(lengths[..n].to_vec()).unwrap();
        let v = d.volume().unwrap();
        let floor: f64 = inertia_floor(n, v).unwrap();
        prop_assert!(d.inertia().unwrap().unwrap() >= floor * (1.0 - 1e-12));
        let omega: f64 = unit_ball_volume(n as i64).unwrap();
        let ball = Domain::ball(n, (v / omega).powf(1.0 / n as f64)).unwrap();
        prop_assert!((ball.inertia().unwrap().unwrap() / floor - 1.0).abs() < 1e-12);
    }
}
