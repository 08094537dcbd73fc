use proptest::prelude::*;
use spectral_lb::rearrangement::{
    band_threshold, kernel_residual, kernel_scan, lemma_chain_check, power_difference, run_fuzz,
    sample_admissible_profile, solve_band_parameter, trial_seed, FuzzConfig, KernelKind, LemmaKind,
};
use spectral_lb::{Error, Profile};

#[test]
fn unit_band_equation_is_closed_form() {
    for target in [0.5, 0.75, 1.0, 3.25, 1e6] {
        let band = solve_band_parameter(1, target).unwrap();
        assert_eq!(band.a, target - 0.5);
    }
}

#[test]
fn infeasible_targets_are_rejected() {
    for n_eff in 1..=8 {
        let t: f64 = band_threshold(n_eff);
        assert!(matches!(solve_band_parameter(n_eff, t * (1.0 - 1e-9)), Err(Error::BandInfeasible { .. })));
        assert_eq!(solve_band_parameter(n_eff, t).unwrap().a, 0.0);
    }
}

#[test]
fn kernels_vanish_and_are_flat_at_one() {
    for (kind, table) in [
        (KernelKind::Laplace2, KernelKind::Laplace2.table(2..=10)),
        (KernelKind::General, KernelKind::General.table(3..=10)),
        (KernelKind::Clamped, KernelKind::Clamped.table(1..=10)),
    ] {
        for (n, m) in table {
            let f = |t: f64| kernel_residual(kind, n, m, t).unwrap();
            assert!(f(1.0).abs() <= 1e-12);
            let h = 1e-6;
            assert!(((f(1.0 + h) - f(1.0 - h)) / (2.0 * h)).abs() <= 1e-6, "{kind:?} n={n} m={m}");
        }
    }
}

#[test]
fn kernel_scan_respects_validity() {
    assert!(kernel_scan(KernelKind::General, 3, 3, 10.0, 0.01).is_err());
    assert!(kernel_scan(KernelKind::Clamped, 2, 0, 10.0, 0.01).is_err());
    let s = kernel_scan(KernelKind::Clamped, 4, 4, 10.0, 0.01).unwrap();
    assert!(s.min >= -1e-9);
    assert_eq!(s.points, 1001);
}

#[test]
fn fuzz_is_reproducible() {
    let cfg = FuzzConfig { seed: 42, trials: 150, dimensions: vec![2, 3], ..FuzzConfig::default() };
    let a = run_fuzz(&cfg).unwrap();
    let b = run_fuzz(&cfg).unwrap();
    assert_eq!(a, b);
    let corrected: Vec<_> = a.iter().filter(|s| s.lemma == "KL_corrected").collect();
    assert_eq!(corrected.len(), 2);
    assert!(corrected.iter().all(|s| s.violations == 0 && s.worst_margin >= -1e-10));
    assert!(run_fuzz(&FuzzConfig { dimensions: vec![1], ..cfg }).is_err());
}

proptest! {
    #[test]
    fn band_solution_satisfies_its_equation(n_eff in 1u32..=8, scale in 0.0f64..12.0) {
        let t0: f64 = band_threshold(n_eff);
        let target = t0 * (1.0 + scale.exp2() - 1.0);
        let band = solve_band_parameter(n_eff, target).unwrap();
        let lhs = power_difference(band.a, n_eff + 1) / f64::from(n_eff + 1);
        prop_assert!((lhs - target).abs() <= 1e-12 * target.max(1.0));
        // The band mean of s^n_eff lies strictly between the endpoint powers.
        let root = target.powf(1.0 / f64::from(n_eff));
        prop_assert!(band.a <= root && root <= band.a + 1.0);
    }

    #[test]
    fn band_parameter_increases_with_target(n_eff in 2u32..=8, t in 1.0f64..1e4, dt in 1e-3f64..10.0) {
        let a = solve_band_parameter(n_eff, t).unwrap().a;
        let b = solve_band_parameter(n_eff, t + dt).unwrap().a;
        prop_assert!(b > a);
    }

    #[test]
    fn power_differences_grow_with_l(a in 1e-6f64..50.0, l in 1u32..12) {
        prop_assert!(power_difference(a, l + 1) > power_difference(a, l));
        prop_assert_eq!(power_difference(0.0, l), 1.0);
    }

    #[test]
    fn triangle_moments_are_exact(h in 0.01f64..10.0, slope in 0.01f64..10.0, e in 0u32..12) {
        let p = Profile::triangle(h, slope).unwrap();
        let x = h / slope;
        let want = h * x.powi(e as i32 + 1) / f64::from((e + 1) * (e + 2));
        prop_assert!(((p.moment(e) - want) / want).abs() < 1e-14);
    }

    #[test]
    fn corrected_lemma_holds_on_sampled_profiles(seed in any::<u64>(), n in 2u32..=4, pieces in 1u32..=8) {
        let p = sample_admissible_profile(trial_seed(seed, 0), 1.0, 1.0, pieces).unwrap();
        let margin: f64 = lemma_chain_check(&p, n, LemmaKind::KlCorrected).unwrap();
        prop_assert!(margin >= -1e-10);
    }

    #[test]
    fn sampler_is_admissible(seed in any::<u64>(), pieces in 1u32..=8) {
        let p = sample_admissible_profile::<f64>(seed, 2.0, 3.0, pieces).unwrap();
        prop_assert!(p.validate().is_ok());
        prop_assert!(p.height() <= 2.0 && p.height() > 0.0);
        prop_assert_eq!(*p.values.last().unwrap(), 0.0);
    }
}
