//! Reference spectra used as oracles for the bounds.

pub mod ball;
pub mod beam;
pub mod bessel;
pub mod fd;
pub mod jacobi;
pub mod lattice;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::SpectralConstants;
use crate::operator::Operator;
use crate::scalar::{from_u64, lit, Scalar};

pub use ball::ball_spectrum;
pub use beam::{beam_frequency, beam_residual, beam_spectrum};
pub use bessel::{bessel_j, bessel_zero, bessel_zeros_below};
pub use fd::{fd_clamped_square, FdOptions, MAX_FD_GRID};
pub use jacobi::jacobi_eigenvalues;
pub use lattice::{box_counting, box_spectrum};

/// How the eigenvalues were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Exact,
    RootFound { tol: f64 },
    Discretized { h: f64, extrapolated: bool },
}

impl Provenance {
    /// Relative tolerance a bound comparison should allow against this oracle.
    pub fn rel_tol(&self) -> f64 {
        match self {
            Provenance::Exact | Provenance::RootFound { .. } => 1e-12,
            Provenance::Discretized { .. } => 0.02,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Provenance::Discretized { .. })
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Exact => f.write_str("exact"),
            Provenance::RootFound { tol } => write!(f, "root-found({tol:e})"),
            Provenance::Discretized { h, extrapolated: false } => write!(f, "discretized(h={h})"),
            Provenance::Discretized { h, extrapolated: true } => write!(f, "discretized(h={h};extrapolated)"),
        }
    }
}

/// Nondecreasing eigenvalues with multiplicity, and their running sums.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum<T> {
    pub operator: Operator,
    pub eigenvalues: Vec<T>,
    pub prefix_sums: Vec<T>,
    pub provenance: Provenance,
}

impl<T: Scalar> Spectrum<T> {
    pub fn new(operator: Operator, mut eigenvalues: Vec<T>, provenance: Provenance) -> Self {
        eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
        let prefix_sums = running_sums(&eigenvalues);
        Spectrum { operator, eigenvalues, prefix_sums, provenance }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// λ_k, 1-based.
    pub fn eigenvalue(&self, k: u64) -> Option<T> {
        k.checked_sub(1).and_then(|i| self.eigenvalues.get(i as usize).copied())
    }

    /// Σ_{i≤k} λ_i, 1-based.
    pub fn partial_sum(&self, k: u64) -> Option<T> {
        k.checked_sub(1).and_then(|i| self.prefix_sums.get(i as usize).copied())
    }

    /// Every eigenvalue multiplied by `factor` (a dilation rescales by a power of the factor).
    pub fn scaled(&self, factor: T) -> Self {
        Spectrum::new(self.operator, self.eigenvalues.iter().map(|&x| x * factor).collect(), self.provenance)
    }
}

/// Neumaier-compensated running sums.
fn running_sums<T: Scalar>(values: &[T]) -> Vec<T> {
    let mut sum = T::zero();
    let mut comp = T::zero();
    values
        .iter()
        .map(|&x| {
            let t = sum + x;
            if sum.abs() >= x.abs() {
                comp = comp + ((sum - t) + x);
            } else {
                comp = comp + ((x - t) + sum);
            }
            sum = t;
            sum + comp
        })
        .collect()
}

pub(crate) fn require_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::InvalidParameter { name: "count", reason: "must be >= 1".into() });
    }
    Ok(())
}

/// Weyl mean times k: the asymptotic value of Σ_{i≤k} λ_i (or Γ_i).
pub fn weyl_reference<T: Scalar>(operator: Operator, c: &SpectralConstants<T>, k: u64) -> T {
    let nf = from_u64::<T>(c.n as u64);
    let kf = from_u64::<T>(k);
    let pi2 = T::PI() * T::PI();
    let base = kf / (c.omega_n * c.volume);
    match operator {
        Operator::Laplace => kf * nf / (nf + lit(2.0)) * lit::<T>(4.0) * pi2 * base.powf(lit::<T>(2.0) / nf),
        Operator::Bilaplace => kf * nf / (nf + lit(4.0)) * lit::<T>(16.0) * pi2 * pi2 * base.powf(lit::<T>(4.0) / nf),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::li_yau_sum;
    use crate::geometry::DomainSpec;
    use std::f64::consts::PI;

    #[test]
    fn weyl_examples() {
        let sq = DomainSpec::<f64>::unit_box(2).constants().unwrap();
        assert!((weyl_reference(Operator::Laplace, &sq, 100) - 2.0 * PI * 1e4).abs() < 1e-9);
        for k in [1u64, 7, 300] {
            let ly = li_yau_sum(&sq, k).unwrap().value;
            assert!((weyl_reference(Operator::Laplace, &sq, k) - ly).abs() <= 1e-12 * ly);
        }
        let seg = DomainSpec::<f64>::interval(1.0).unwrap().constants().unwrap();
        assert!((weyl_reference(Operator::Bilaplace, &seg, 1) - PI.powi(4) / 5.0).abs() < 1e-12);
    }

    #[test]
    fn prefix_sums_and_accessors() {
        let s = Spectrum::new(Operator::Laplace, vec![3.0, 1.0, 2.0], Provenance::Exact);
        assert_eq!(s.eigenvalues, vec![1.0, 2.0, 3.0]);
        assert_eq!(s.prefix_sums, vec![1.0, 3.0, 6.0]);
        assert_eq!(s.eigenvalue(2), Some(2.0));
        assert_eq!(s.partial_sum(3), Some(6.0));
        assert_eq!(s.partial_sum(0), None);
        assert_eq!(Provenance::RootFound { tol: 1e-12 }.to_string(), "root-found(1e-12)");
    }
}
