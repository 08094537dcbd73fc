//! Dirichlet spectra of disks and 3-balls from Bessel zeros.

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{lit, to_f64, Scalar};
use crate::spectra::bessel::bessel_zeros_below;
use crate::spectra::{require_count, Provenance, Spectrum};

/// The `count` smallest eigenvalues (j/R)² of the ball of radius `radius` in dimension 2 or 3.
///
/// n = 2 uses integer orders (multiplicity 1 for ν = 0, else 2); n = 3 uses ν = l + 1/2 with
/// multiplicity 2l + 1. The scan radius grows until `count` eigenvalues lie below it, and every
/// order with a zero below it is included, so the result is complete.
pub fn ball_spectrum<T: Scalar>(n: usize, radius: T, count: usize) -> Result<Spectrum<T>> {
    if !(n == 2 || n == 3) {
        return Err(Error::UnsupportedDimension { family: "ball_spectrum", dimension: n, expected: "2 or 3".into() });
    }
    require_count(count)?;
    if !(radius > T::zero() && radius.is_finite()) {
        return Err(Error::InvalidDomain(format!("radius {} is not positive", to_f64(radius))));
    }
    let mut x_max = 2.0 * (count as f64).sqrt() + 4.0;
    loop {
        let mut values = Vec::new();
        for order in 0u32.. {
            let (two_nu, mult) =
                if n == 2 { (2 * order, if order == 0 { 1 } else { 2 }) } else { (2 * order + 1, 2 * order + 1) };
            let zeros = bessel_zeros_below::<T>(two_nu, lit(x_max))?;
            if zeros.is_empty() {
                break;
            }
            for z in zeros {
                let lambda = (z / radius) * (z / radius);
                values.extend(std::iter::repeat_n(lambda, mult as usize));
            }
        }
        if values.len() >= count {
            let mut s = Spectrum::new(Operator::Laplace, values, Provenance::RootFound { tol: 1e-12 });
            s.eigenvalues.truncate(count);
            s.prefix_sums.truncate(count);
            return Ok(s);
        }
        x_max *= 1.3;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_disk_head() {
        let s = ball_spectrum(2, 1.0_f64, 6).unwrap();
        assert!((s.eigenvalues[0] - 5.783185962946784).abs() < 1e-11);
        assert!((s.eigenvalues[1] - 14.681970642123893).abs() < 1e-10);
        assert_eq!(s.eigenvalues[1], s.eigenvalues[2]);
    }

    #[test]
    fn unit_ball_ground_state() {
        let s = ball_spectrum(3, 1.0_f64, 4).unwrap();
        assert!((s.eigenvalues[0] - PI * PI).abs() < 1e-10);
        // l = 1 triple
        assert_eq!(s.eigenvalues[1], s.eigenvalues[3]);
    }

    #[test]
    fn radius_scaling_and_errors() {
        let a = ball_spectrum(2, 1.0_f64, 30).unwrap();
        let b = ball_spectrum(2, 2.0_f64, 30).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            assert!((x / 4.0 - y).abs() < 1e-12 * x);
        }
        assert!(ball_spectrum(4, 1.0_f64, 3).is_err());
        assert!(ball_spectrum(2, -1.0_f64, 3).is_err());
    }
}
