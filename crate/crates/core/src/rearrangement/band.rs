use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::SpectralConstants;
use crate::roots::{bisect, newton_polish};
use crate::scalar::{from_u64, lit, to_f64, Scalar};

/// Which slope bound normalizes the rearranged profile before the band equation is solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum BandPolicy {
    /// ρ from the volume alone; the mass reduces to k(2π)ⁿ/ω_n² and is V-independent.
    #[default]
    Isoperimetric,
    /// ρ = 2(2π)⁻ⁿ√(V·I); needs the moment of inertia.
    Inertia,
}

impl BandPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            BandPolicy::Isoperimetric => "isoperimetric",
            BandPolicy::Inertia => "inertia",
        }
    }
}

impl fmt::Display for BandPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BandPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "isoperimetric" => Ok(BandPolicy::Isoperimetric),
            "inertia" => Ok(BandPolicy::Inertia),
            other => Err(Error::InvalidParameter {
                name: "band_policy",
                reason: format!("unknown policy `{other}` (expected isoperimetric or inertia)"),
            }),
        }
    }
}

/// How a bound family obtains its band parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BandChoice<T> {
    Policy(BandPolicy),
    /// Explicit band parameter a ≥ 0.
    Fixed(T),
}

impl<T> Default for BandChoice<T> {
    fn default() -> Self {
        BandChoice::Policy(BandPolicy::Isoperimetric)
    }
}

impl<T: Scalar> BandChoice<T> {
    pub fn label(&self) -> String {
        match self {
            BandChoice::Policy(p) => p.as_str().to_string(),
            BandChoice::Fixed(a) => format!("a={}", to_f64(*a)),
        }
    }
}

/// Normalized mass nÃ fed to the band equation for the k-th partial sum.
///
/// After rescaling the rearranged profile to unit height and unit slope bound, the
/// mass k/ω_n becomes (k/ω_n)·ρⁿ/α^{n+1}.
pub fn normalized_mass<T: Scalar>(c: &SpectralConstants<T>, k: u64, policy: BandPolicy) -> Result<T> {
    let n = c.n as i32;
    let kf = from_u64::<T>(k);
    match policy {
        BandPolicy::Isoperimetric => {
            let two_pi = T::PI() + T::PI();
            Ok(kf * two_pi.powi(n) / (c.omega_n * c.omega_n))
        }
        BandPolicy::Inertia => {
            let rho = c.rho_inertia.ok_or(Error::MissingInertia { family: "band-policy-inertia" })?;
            Ok(kf / c.omega_n * rho.powi(n) / c.alpha.powi(n + 1))
        }
    }
}

/// (a+1)^l − a^l as the all-positive binomial polynomial Σ_{j<l} C(l,j) a^j.
pub fn power_difference<T: Scalar>(a: T, l: u32) -> T {
    let mut coeffs = Vec::with_capacity(l as usize);
    let mut binom = 1.0_f64;
    for j in 0..l {
        coeffs.push(binom);
        binom = binom * f64::from(l - j) / f64::from(j + 1);
    }
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * a + lit::<T>(c))
}

/// Solution of the band equation ∫_a^{a+1} s^{n_eff} ds = target with its power differences.
#[derive(Debug, Clone, PartialEq)]
pub struct BandData<T> {
    pub n_eff: u32,
    pub target: T,
    pub a: T,
    powers: Vec<T>,
}

impl<T: Scalar> BandData<T> {
    /// Band with a prescribed parameter; the target is whatever that band integrates to.
    pub fn from_parameter(n_eff: u32, a: T) -> Result<Self> {
        if n_eff == 0 {
            return Err(Error::Constraint { what: "band", constraint: "n_eff >= 1".into() });
        }
        if !(a >= T::zero()) || !a.is_finite() {
            return Err(Error::InvalidParameter {
                name: "band_a",
                reason: format!("{} is not a finite a >= 0", to_f64(a)),
            });
        }
        let target = power_difference(a, n_eff + 1) / from_u64::<T>(u64::from(n_eff) + 1);
        Ok(Self::with_powers(n_eff, target, a))
    }

    fn with_powers(n_eff: u32, target: T, a: T) -> Self {
        let powers = (1..=n_eff + 4).map(|l| power_difference(a, l)).collect();
        BandData { n_eff, target, a, powers }
    }

    /// S_l = (a+1)^l − a^l.
    pub fn power(&self, l: u32) -> Result<T> {
        if l == 0 {
            return Err(Error::Constraint { what: "band_power", constraint: "l >= 1".into() });
        }
        Ok(self.powers.get(l as usize - 1).copied().unwrap_or_else(|| power_difference(self.a, l)))
    }

    /// |S_{n_eff+1}/(n_eff+1) − target|.
    pub fn residual(&self) -> T {
        let lhs = power_difference(self.a, self.n_eff + 1) / from_u64::<T>(u64::from(self.n_eff) + 1);
        (lhs - self.target).abs()
    }
}

/// Smallest admissible target: the band sitting at a = 0.
pub fn band_threshold<T: Scalar>(n_eff: u32) -> T {
    T::one() / from_u64::<T>(u64::from(n_eff) + 1)
}

/// Solves ((a+1)^{n+1} − a^{n+1})/(n+1) = target for a ≥ 0 by bisection plus two Newton steps.
pub fn solve_band_parameter<T: Scalar>(n_eff: u32, target: T) -> Result<BandData<T>> {
    if n_eff == 0 {
        return Err(Error::Constraint { what: "band", constraint: "n_eff >= 1".into() });
    }
    let threshold = band_threshold::<T>(n_eff);
    if !(target >= threshold) || !target.is_finite() {
        return Err(Error::BandInfeasible { n_eff, target: to_f64(target), threshold: to_f64(threshold) });
    }
    if n_eff == 1 {
        // (2a + 1)/2 = target
        return Ok(BandData::with_powers(1, target, target - lit(0.5)));
    }
    let degree = n_eff + 1;
    let denom = from_u64::<T>(u64::from(degree));
    let g = |a: T| power_difference(a, degree) / denom - target;

    // g(a) > a^{n_eff} - target, so the root lies below target^{1/n_eff}.
    let mut hi = target.powf(T::one() / from_u64::<T>(u64::from(n_eff))).max(T::one());
    while g(hi) < T::zero() {
        hi = hi + hi;
    }
    let rel = lit::<T>(1e-15).max(lit::<T>(4.0) * T::epsilon());
    let a = bisect(g, T::zero(), hi, |mid| rel * (T::one() + mid), "band parameter")?;
    let a = newton_polish(|x| (g(x), power_difference(x, n_eff)), a, T::zero(), hi, 2);
    Ok(BandData::with_powers(n_eff, target, a))
}
