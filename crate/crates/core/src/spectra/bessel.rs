//! Bessel functions J_ν of integer and half-integer order, and their positive zeros.
//!
//! Orders are passed doubled (`two_nu = 2ν`) so half-integers stay exact.

use crate::error::{Error, Result};
use crate::geometry::gamma_half;
use crate::roots::{bisect, newton_polish};
use crate::scalar::{from_u64, lit, to_f64, Scalar};

/// Scan step for zero bracketing; consecutive zeros are more than π apart.
const SCAN_STEP: f64 = 0.5;

fn ascending_series<T: Scalar>(two_nu: u32, x: T) -> T {
    let nu = from_u64::<T>(u64::from(two_nu)) / lit(2.0);
    let half = x / lit(2.0);
    let q = half * half;
    let mut term = half.powf(nu) / gamma_half::<T>(two_nu + 2);
    let mut sum = term;
    for k in 1..500u64 {
        let kf = from_u64::<T>(k);
        term = -term * q / (kf * (kf + nu));
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() {
            break;
        }
    }
    sum
}

/// Miller's backward recurrence for integer order, normalized by J₀ + 2ΣJ₂ₖ = 1.
fn miller_integer<T: Scalar>(n: u32, x: T) -> T {
    let top = (n as f64).max(to_f64(x).ceil());
    let start = 2 * ((top + 20.0 + (50.0 * top).sqrt()) as u32 / 2) + 2;
    let big = T::max_value().sqrt();
    let two_over_x = lit::<T>(2.0) / x;
    let (mut above, mut current) = (T::zero(), T::min_positive_value().sqrt());
    let mut even_sum = T::zero();
    let mut wanted = T::zero();
    for j in (1..=start).rev() {
        let below = from_u64::<T>(u64::from(j)) * two_over_x * current - above;
        above = current;
        current = below;
        let order = j - 1;
        if current.abs() > big {
            let s = T::one() / big;
            current = current * s;
            above = above * s;
            even_sum = even_sum * s;
            wanted = wanted * s;
        }
        if order == n {
            wanted = current;
        }
        if order >= 2 && order % 2 == 0 {
            even_sum = even_sum + current;
        }
    }
    wanted / (current + even_sum + even_sum)
}

/// Spherical Bessel j_l(x).
fn spherical<T: Scalar>(l: u32, x: T) -> T {
    let (s, c) = (x.sin(), x.cos());
    let j0 = s / x;
    let j1 = s / (x * x) - c / x;
    if l == 0 {
        return j0;
    }
    if x > from_u64::<T>(u64::from(l)) {
        let (mut prev, mut cur) = (j0, j1);
        for k in 1..l {
            let next = from_u64::<T>(u64::from(2 * k + 1)) / x * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    let top = f64::from(l).max(to_f64(x).ceil());
    let start = (top + 20.0 + (50.0 * top).sqrt()) as u32;
    let big = T::max_value().sqrt();
    let (mut above, mut current) = (T::zero(), T::min_positive_value().sqrt());
    let mut wanted = T::zero();
    for k in (1..=start).rev() {
        let below = from_u64::<T>(u64::from(2 * k + 1)) / x * current - above;
        above = current;
        current = below;
        if current.abs() > big {
            let sc = T::one() / big;
            current = current * sc;
            above = above * sc;
            wanted = wanted * sc;
        }
        if k - 1 == l {
            wanted = current;
        }
    }
    // `current` is now the unnormalized j₀, `above` the unnormalized j₁.
    if j0.abs() >= j1.abs() {
        wanted * j0 / current
    } else {
        wanted * j1 / above
    }
}

/// J_ν(x) for ν = two_nu/2 and x ≥ 0.
pub fn bessel_j<T: Scalar>(two_nu: u32, x: T) -> T {
    if x < T::zero() || x.is_nan() {
        return T::nan();
    }
    let nu = f64::from(two_nu) / 2.0;
    if x == T::zero() {
        return if two_nu == 0 { T::one() } else { T::zero() };
    }
    let xf = to_f64(x);
    if xf <= 2.0 || xf * xf <= nu + 1.0 {
        return ascending_series(two_nu, x);
    }
    if two_nu.is_multiple_of(2) {
        miller_integer(two_nu / 2, x)
    } else {
        let l = (two_nu - 1) / 2;
        (lit::<T>(2.0) * x / T::PI()).sqrt() * spherical(l, x)
    }
}

fn refine<T: Scalar>(two_nu: u32, lo: T, hi: T) -> Result<T> {
    let f = |t: T| bessel_j(two_nu, t);
    let root = bisect(f, lo, hi, |mid| lit::<T>(4.0) * T::epsilon() * mid, "bessel zero")?;
    // J_ν' = J_{ν−1} − (ν/x)J_ν; only meaningful for ν ≥ 1
    if two_nu >= 2 {
        let nu = from_u64::<T>(u64::from(two_nu)) / lit(2.0);
        return Ok(newton_polish(|t| (f(t), bessel_j(two_nu - 2, t) - nu / t * f(t)), root, lo, hi, 2));
    }
    Ok(root)
}

/// Walks sign changes of J_ν from just below its first zero; `stop` ends the scan.
fn scan_zeros<T: Scalar>(two_nu: u32, mut stop: impl FnMut(&[T], T) -> bool) -> Result<Vec<T>> {
    let step = lit::<T>(SCAN_STEP);
    let nu = f64::from(two_nu) / 2.0;
    let mut x = lit::<T>(nu.max(SCAN_STEP));
    let mut fx = bessel_j(two_nu, x);
    let mut zeros = Vec::new();
    loop {
        if stop(&zeros, x) {
            return Ok(zeros);
        }
        let next = x + step;
        let fn_ = bessel_j(two_nu, next);
        if !fn_.is_finite() {
            return Err(Error::BracketFailure { what: "bessel zero", detail: format!("J non-finite at x = {next}") });
        }
        if fn_ == T::zero() {
            zeros.push(next);
            x = next + lit(1e-9);
            fx = bessel_j(two_nu, x);
            continue;
        }
        if fx.signum() != fn_.signum() {
            zeros.push(refine(two_nu, x, next)?);
        }
        x = next;
        fx = fn_;
    }
}

/// The s-th positive zero j_{ν,s}.
pub fn bessel_zero<T: Scalar>(two_nu: u32, s: u32) -> Result<T> {
    if s == 0 {
        return Err(Error::InvalidParameter { name: "s", reason: "zeros are numbered from 1".into() });
    }
    let zeros = scan_zeros::<T>(two_nu, |z, _| z.len() >= s as usize)?;
    Ok(zeros[s as usize - 1])
}

/// Every positive zero of J_ν not exceeding `x_max`, increasing.
pub fn bessel_zeros_below<T: Scalar>(two_nu: u32, x_max: T) -> Result<Vec<T>> {
    let mut zeros = scan_zeros::<T>(two_nu, |_, x| x > x_max)?;
    zeros.retain(|&z| z <= x_max);
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn closed_forms() {
        assert_eq!(bessel_j(0, 0.0_f64), 1.0);
        for x in [0.3_f64, 1.0, 2.5, 7.0, 19.0, 60.0] {
            let j_half = (2.0 / (PI * x)).sqrt() * x.sin();
            assert!((bessel_j(1, x) - j_half).abs() < 1e-14, "x={x}");
            let j_3half = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
            assert!((bessel_j(3, x) - j_3half).abs() < 1e-14, "x={x}");
        }
        assert!(bessel_j(1, PI).abs() < 1e-15);
    }

    #[test]
    fn series_and_recurrence_agree() {
        for two_nu in [0u32, 2, 4, 10, 1, 5, 9] {
            for x in [2.5_f64, 4.0, 6.0, 9.0] {
                let miller = if two_nu % 2 == 0 {
                    miller_integer(two_nu / 2, x)
                } else {
                    (2.0 * x / PI).sqrt() * spherical((two_nu - 1) / 2, x)
                };
                let series = ascending_series(two_nu, x);
                assert!((miller - series).abs() < 1e-12, "2ν={two_nu} x={x}: {miller} vs {series}");
            }
        }
    }

    #[test]
    fn large_order_small_argument() {
        // J_20(5) and j_15(3) computed by the ascending series with no cancellation
        let j20 = bessel_j(40, 5.0_f64);
        assert!((j20 - ascending_series(40, 5.0)).abs() < 1e-12 * j20.abs());
        let via_spherical = (2.0 * 3.0 / PI).sqrt() * spherical(15, 3.0_f64);
        let series = ascending_series(31, 3.0_f64);
        assert!((via_spherical - series).abs() < 1e-11 * series.abs());
    }

    #[test]
    fn known_zeros() {
        let j01: f64 = bessel_zero(0, 1).unwrap();
        assert!((j01 - 2.404825557695773).abs() < 1e-12);
        assert!(bessel_j(0, 2.404825557695773_f64).abs() < 1e-12);
        let j11: f64 = bessel_zero(2, 1).unwrap();
        assert!((j11 - 3.831705970207512).abs() < 1e-12);
        let j02: f64 = bessel_zero(0, 2).unwrap();
        assert!((j02 - 5.520078110286311).abs() < 1e-12);
        assert!(j01 < j11 && j11 < j02);
        let half: f64 = bessel_zero(1, 3).unwrap();
        assert!((half - 3.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn zeros_interlace() {
        for two_nu in [0u32, 2, 4, 8, 1, 3, 7] {
            let a = bessel_zeros_below::<f64>(two_nu, 60.0).unwrap();
            let b = bessel_zeros_below::<f64>(two_nu + 2, 60.0).unwrap();
            for s in 0..b.len() {
                assert!(a[s] < b[s]);
                if s + 1 < a.len() {
                    assert!(b[s] < a[s + 1]);
                }
            }
            for w in a.windows(2) {
                assert!(w[1] - w[0] > 3.0);
            }
        }
    }
}
