//! Dirichlet spectrum of a box, λ = π²Σ(mᵢ/Lᵢ)², by threshold-growing lattice enumeration.

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{lit, to_f64, Scalar};
use crate::spectra::{require_count, Provenance, Spectrum};

fn validate<T: Scalar>(lengths: &[T]) -> Result<Vec<T>> {
    if lengths.is_empty() {
        return Err(Error::InvalidDimension(0));
    }
    if let Some(bad) = lengths.iter().find(|l| !(**l > T::zero() && l.is_finite())) {
        return Err(Error::InvalidDomain(format!("edge length {} is not positive", to_f64(*bad))));
    }
    Ok(lengths.iter().map(|&l| T::one() / (l * l)).collect())
}

/// Visits Σ mᵢ²wᵢ ≤ bound over mᵢ ≥ 1. `floor` holds the cheapest completion of the remaining axes.
fn walk<T: Scalar>(weights: &[T], floor: &[T], axis: usize, partial: T, bound: T, visit: &mut impl FnMut(T)) {
    if axis == weights.len() {
        visit(partial);
        return;
    }
    let w = weights[axis];
    let rest = floor[axis + 1];
    let mut m = 1u64;
    loop {
        let mf = lit::<T>(m as f64);
        let value = partial + mf * mf * w;
        if value + rest > bound {
            break;
        }
        walk(weights, floor, axis + 1, value, bound, visit);
        m += 1;
    }
}

fn floors<T: Scalar>(weights: &[T]) -> Vec<T> {
    let mut floor = vec![T::zero(); weights.len() + 1];
    for i in (0..weights.len()).rev() {
        floor[i] = floor[i + 1] + weights[i];
    }
    floor
}

/// The `count` smallest Dirichlet eigenvalues of the box with the given edge lengths.
///
/// All lattice points below a threshold are collected; the threshold doubles until at least
/// `count` are found, so no mode is skipped however anisotropic the box is.
pub fn box_spectrum<T: Scalar>(lengths: &[T], count: usize) -> Result<Spectrum<T>> {
    require_count(count)?;
    let weights = validate(lengths)?;
    let floor = floors(&weights);
    let pi2 = T::PI() * T::PI();
    // Σ m²/L² for the ground state, doubled until enough modes fit.
    let mut bound = floor[0] + floor[0];
    loop {
        let mut found = Vec::new();
        walk(&weights, &floor, 0, T::zero(), bound, &mut |s| found.push(s));
        if found.len() >= count {
            found.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
            found.truncate(count);
            let eigenvalues = found.into_iter().map(|s| pi2 * s).collect();
            return Ok(Spectrum::new(Operator::Laplace, eigenvalues, Provenance::Exact));
        }
        bound = bound + bound;
    }
}

/// #{λ ≤ threshold} for the box.
pub fn box_counting<T: Scalar>(lengths: &[T], threshold: T) -> Result<u64> {
    let weights = validate(lengths)?;
    let floor = floors(&weights);
    let pi2 = T::PI() * T::PI();
    let mut n = 0u64;
    walk(&weights, &floor, 0, T::zero(), threshold / pi2, &mut |_| n += 1);
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_square_first_five() {
        let s = box_spectrum(&[1.0_f64, 1.0], 5).unwrap();
        let expected = [2.0, 5.0, 5.0, 8.0, 10.0].map(|x| x * PI * PI);
        for (a, b) in s.eigenvalues.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12 * b);
        }
    }

    #[test]
    fn interval_and_cube() {
        let s = box_spectrum(&[1.0_f64], 30).unwrap();
        for (i, v) in s.eigenvalues.iter().enumerate() {
            let k = (i + 1) as f64;
            assert!((v - PI * PI * k * k).abs() < 1e-12 * v);
        }
        let c = box_spectrum(&[1.0_f64, 1.0, 1.0], 1).unwrap();
        assert!((c.eigenvalues[0] - 3.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn anisotropic_box_matches_brute_force() {
        let lengths = [3.0_f64, 0.4];
        let s = box_spectrum(&lengths, 40).unwrap();
        let mut brute: Vec<f64> = (1..200)
            .flat_map(|a| (1..60).map(move |b| PI * PI * ((a as f64 / 3.0).powi(2) + (b as f64 / 0.4).powi(2))))
            .collect();
        brute.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in s.eigenvalues.iter().zip(&brute) {
            assert!((a - b).abs() < 1e-12 * b);
        }
    }

    #[test]
    fn counting_agrees_with_spectrum() {
        let s = box_spectrum(&[1.0_f64, 2.0], 200).unwrap();
        let t = s.eigenvalues[120];
        let n = box_counting(&[1.0, 2.0], t).unwrap();
        let direct = s.eigenvalues.iter().filter(|&&x| x <= t).count() as u64;
        assert_eq!(n, direct);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(box_spectrum(&[1.0_f64, -1.0], 3).is_err());
        assert!(box_spectrum::<f64>(&[], 3).is_err());
        assert!(box_spectrum(&[1.0_f64], 0).is_err());
    }
}
