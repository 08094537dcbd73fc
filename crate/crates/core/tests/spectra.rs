use std::f64::consts::PI;

use proptest::prelude::*;
use spectral_lb::spectra::{
    ball_spectrum, beam_frequency, beam_residual, beam_spectrum, bessel_j, bessel_zero, box_counting, box_spectrum,
    fd_clamped_square, weyl_reference, FdOptions,
};
use spectral_lb::{Domain, Operator, Provenance};

/// Brute-force lattice enumeration: every π²Σ(mᵢ/Lᵢ)² with mᵢ ≤ cap, sorted.
fn brute_box(lengths: &[f64], cap: u32) -> Vec<f64> {
    let mut out = vec![0.0];
    for &l in lengths {
        let mut next = Vec::new();
        for base in &out {
            for m in 1..=cap {
                next.push(base + (PI * m as f64 / l).powi(2));
            }
        }
        out = next;
    }
    out.sort_by(f64::total_cmp);
    out
}

/// J_ν(x) for integer ν from (1/π)∫₀^π cos(ντ − x sin τ) dτ by composite Simpson.
fn bessel_integral(nu: u32, x: f64) -> f64 {
    let steps = 4000;
    let h = PI / steps as f64;
    let f = |t: f64| (nu as f64 * t - x * t.sin()).cos();
    let mut s = f(0.0) + f(PI);
    for i in 1..steps {
        s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0 / PI
}

#[test]
fn box_spectrum_matches_enumeration() {
    for lengths in [vec![1.0, 1.0], vec![1.0, 2.5], vec![0.7, 1.0, 1.3]] {
        let count = 200;
        let s = box_spectrum(&lengths, count).unwrap();
        let brute = brute_box(&lengths, 60);
        assert_eq!(s.provenance, Provenance::Exact);
        for (i, (a, b)) in s.eigenvalues.iter().zip(&brute).enumerate() {
            assert!(((a - b) / b).abs() < 1e-13, "{lengths:?} #{i}: {a} vs {b}");
        }
        let t = s.eigenvalues[count - 1];
        let below = brute.iter().filter(|&&x| x <= t).count() as u64;
        assert_eq!(box_counting(&lengths, t).unwrap(), below);
    }
}

#[test]
fn prefix_sums_are_running_totals() {
    let s = box_spectrum(&[1.0, 1.0], 500).unwrap();
    let mut acc = 0.0_f64;
    for k in 1..=500u64 {
        acc += s.eigenvalue(k).unwrap();
        assert!((s.partial_sum(k).unwrap() - acc).abs() <= 1e-12 * acc);
    }
    assert!(s.eigenvalue(501).is_none());
}

#[test]
fn bessel_j_matches_integral_form() {
    for nu in 0..6 {
        for x in [0.3, 1.0, 2.5, 7.0, 15.0, 31.0] {
            let want = bessel_integral(nu, x);
            let got: f64 = bessel_j(2 * nu, x);
            assert!((got - want).abs() < 1e-11, "J_{nu}({x}) = {got}, integral {want}");
        }
    }
}

#[test]
fn half_integer_bessel_closed_forms() {
    for x in [0.1, 1.0, 3.3, 12.0, 40.0] {
        let pre = (2.0 / (PI * x)).sqrt();
        let j_half: f64 = bessel_j(1, x);
        let j_3half: f64 = bessel_j(3, x);
        assert!((j_half - pre * x.sin()).abs() < 1e-13);
        assert!((j_3half - pre * (x.sin() / x - x.cos())).abs() < 1e-12);
    }
    for s in 1..=20 {
        let z: f64 = bessel_zero(1, s).unwrap();
        assert!((z - s as f64 * PI).abs() < 1e-11);
    }
}

#[test]
fn first_zero_of_j0() {
    let z: f64 = bessel_zero(0, 1).unwrap();
    assert!((z - 2.4048256).abs() < 1e-6);
    let j: f64 = bessel_j(0, z);
    assert!(j.abs() < 1e-14);
}

#[test]
fn ball_multiplicities() {
    let disk = ball_spectrum(2, 1.0, 6).unwrap();
    let j01: f64 = bessel_zero(0, 1).unwrap();
    let j11: f64 = bessel_zero(2, 1).unwrap();
    assert!((disk.eigenvalues[0] - j01 * j01).abs() < 1e-11);
    assert_eq!(disk.eigenvalues[1], disk.eigenvalues[2]);
    assert!((disk.eigenvalues[1] - j11 * j11).abs() < 1e-10);

    let ball = ball_spectrum(3, 1.0, 4).unwrap();
    assert!((ball.eigenvalues[0] - PI * PI).abs() < 1e-10);
    let j32: f64 = bessel_zero(3, 1).unwrap();
    for i in 1..4 {
        assert!((ball.eigenvalues[i] - j32 * j32).abs() < 1e-10);
    }
}

#[test]
fn beam_frequencies() {
    let mu1: f64 = beam_frequency(1).unwrap();
    assert!((mu1 - 4.7300407).abs() < 1e-6);
    for s in 1..=40u32 {
        let mu: f64 = beam_frequency(s).unwrap();
        assert!(beam_residual(mu).abs() < 1e-12 * mu.cosh().max(1.0));
        assert!((mu - (s as f64 + 0.5) * PI).abs() < 0.02);
    }
    let beam = beam_spectrum(2.0, 5).unwrap();
    assert!((beam.eigenvalues[0] - (mu1 / 2.0).powi(4)).abs() < 1e-9);
}

#[test]
fn fd_square_converges_and_keeps_symmetry() {
    let coarse = fd_clamped_square::<f64>(FdOptions { grid: 24, extrapolate: true }, 6).unwrap();
    let fine = fd_clamped_square::<f64>(FdOptions { grid: 32, extrapolate: true }, 6).unwrap();
    for k in 1..=6 {
        let (a, b) = (coarse.eigenvalue(k).unwrap(), fine.eigenvalue(k).unwrap());
        assert!(((a - b) / b).abs() < 0.02, "Γ_{k}: {a} vs {b}");
    }
    assert!(((fine.eigenvalues[1] - fine.eigenvalues[2]) / fine.eigenvalues[1]).abs() < 1e-10);
    assert!(matches!(fine.provenance, Provenance::Discretized { extrapolated: true, .. }));
    assert!(fd_clamped_square::<f64>(FdOptions { grid: 80, extrapolate: false }, 1).is_err());
}

#[test]
fn f32_spectra_agree_with_f64() {
    let a = box_spectrum(&[1.0f32, 1.0], 50).unwrap();
    let b = box_spectrum(&[1.0f64, 1.0], 50).unwrap();
    for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
        assert!(((*x as f64 - y) / y).abs() < 1e-6);
    }
}

proptest! {
    #[test]
    fn weyl_counting_envelope(l1 in 0.5f64..2.0, l2 in 0.5f64..2.0, t in 50.0f64..3000.0) {
        // Each counted lattice point owns a unit cell inside the quarter ellipse, and the shifted
        // ellipse loses at most two unit-width strips: main − perimeter·√t/2π ≤ N ≤ main.
        let n = box_counting(&[l1, l2], t).unwrap() as f64;
        let area = l1 * l2;
        let perim = 2.0 * (l1 + l2);
        let main = area * t / (4.0 * PI);
        let edge = perim * t.sqrt() / (4.0 * PI);
        prop_assert!(n <= main);
        prop_assert!(n >= main - 2.0 * edge, "n={n} main={main} edge={edge}");
    }

    #[test]
    fn lattice_sums_exceed_weyl(l1 in 0.5f64..2.0, l2 in 0.5f64..2.0, k in 1u64..400) {
        let s = box_spectrum(&[l1, l2], k as usize).unwrap();
        let c = Domain::cuboid(vec![l1, l2]).unwrap().constants().unwrap();
        let weyl = weyl_reference(Operator::Laplace, &c, k);
        prop_assert!(s.partial_sum(k).unwrap() >= weyl * (1.0 - 1e-12));
    }
}
