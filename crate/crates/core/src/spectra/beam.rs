//! Clamped beam: Γ = (μ/L)⁴ with cos μ·cosh μ = 1.

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::roots::{bisect, newton_polish};
use crate::scalar::{from_u64, lit, to_f64, Scalar};
use crate::spectra::{require_count, Provenance, Spectrum};

fn sech<T: Scalar>(x: T) -> T {
    let e = (-x).exp();
    lit::<T>(2.0) * e / (T::one() + e * e)
}

/// The s-th positive root of cos μ − sech μ = 0, bracketed in [(s+¼)π, (s+¾)π].
pub fn beam_frequency<T: Scalar>(s: u32) -> Result<T> {
    if s == 0 {
        return Err(Error::InvalidParameter { name: "s", reason: "beam modes are numbered from 1".into() });
    }
    let sf = from_u64::<T>(u64::from(s));
    let lo = (sf + lit(0.25)) * T::PI();
    let hi = (sf + lit(0.75)) * T::PI();
    let f = |mu: T| mu.cos() - sech(mu);
    let mu = bisect(f, lo, hi, |mid| lit::<T>(4.0) * T::epsilon() * mid, "beam frequency")?;
    Ok(newton_polish(|mu| (f(mu), -mu.sin() + sech(mu) * mu.tanh()), mu, lo, hi, 2))
}

/// |cos μ·cosh μ − 1|, the residual of the unscaled frequency equation.
pub fn beam_residual<T: Scalar>(mu: T) -> T {
    (mu.cos() * mu.cosh() - T::one()).abs()
}

pub fn beam_spectrum<T: Scalar>(length: T, count: usize) -> Result<Spectrum<T>> {
    require_count(count)?;
    if !(length > T::zero() && length.is_finite()) {
        return Err(Error::InvalidDomain(format!("beam length {} is not positive", to_f64(length))));
    }
    let values = (1..=count as u32)
        .map(|s| beam_frequency::<T>(s).map(|mu| (mu / length).powi(4)))
        .collect::<Result<Vec<T>>>()?;
    Ok(Spectrum::new(Operator::Bilaplace, values, Provenance::RootFound { tol: 1e-12 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn first_modes() {
        let mu1: f64 = beam_frequency(1).unwrap();
        assert!((mu1 - 4.730040744862704).abs() < 1e-12);
        let mu2: f64 = beam_frequency(2).unwrap();
        assert!((mu2 - 7.853204624095838).abs() < 1e-12);
        let s = beam_spectrum(1.0_f64, 2).unwrap();
        assert!((s.eigenvalues[0] - 500.5639).abs() < 1e-3);
        assert!((s.eigenvalues[1] - 3803.54).abs() < 0.01);
    }

    #[test]
    fn residuals_and_asymptotics() {
        for s in 1..=150u32 {
            let mu: f64 = beam_frequency(s).unwrap();
            assert!(beam_residual(mu) <= 1e-9 * mu.cosh(), "s={s}");
            if s >= 2 {
                assert!((mu - (2.0 * f64::from(s) + 1.0) * PI / 2.0).abs() <= 0.04);
            }
        }
    }

    #[test]
    fn length_scaling() {
        let a = beam_spectrum(1.0_f64, 5).unwrap();
        let b = beam_spectrum(2.0_f64, 5).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            assert!((x / 16.0 - y).abs() < 1e-12 * x);
        }
    }
}
