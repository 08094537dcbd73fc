//! Domain descriptions and the derived geometric constants every bound family uses.
//!
//! A domain is described by its dimension and one of three shapes. Boxes and balls carry
//! closed-form volume and moment of inertia; abstract domains carry the volume and, when
//! known, the inertia about the centroid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Scalar};

/// Γ(m/2) on the integer / half-integer lattice, by exact recursion from Γ(1) = 1 and Γ(1/2) = √π.
pub fn gamma_half<T: Scalar>(two_x: u32) -> T {
    assert!(two_x >= 1, "gamma_half needs a positive argument");
    let (mut value, mut x) =
        if two_x.is_multiple_of(2) { (T::one(), T::one()) } else { (T::PI().sqrt(), lit::<T>(0.5)) };
    let target = lit::<T>(f64::from(two_x) * 0.5);
    while x < target {
        value = value * x;
        x = x + T::one();
    }
    value
}

/// Volume ω_n of the unit ball in dimension `n`.
pub fn unit_ball_volume<T: Scalar>(n: i64) -> Result<T> {
    if n < 1 {
        return Err(Error::InvalidDimension(n));
    }
    let nf = from_usize::<T>(n as usize);
    let two = lit::<T>(2.0);
    Ok(two * T::PI().powf(nf / two) / (nf * gamma_half::<T>(n as u32)))
}

/// Shape of a domain. Serialized as `{"box": [..]}`, `{"ball": R}` or `{"abstract": {..}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", bound(deserialize = "T: Deserialize<'de>"))]
pub enum Shape<T> {
    /// Axis-aligned box with the given edge lengths; a 1-D box is an interval.
    Box(Vec<T>),
    /// Ball of the given radius.
    Ball(T),
    /// Domain known only through its volume and (optionally) centered moment of inertia.
    Abstract {
        volume: T,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inertia: Option<T>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec<T> {
    pub dimension: usize,
    pub shape: Shape<T>,
}

impl<T: Scalar> DomainSpec<T> {
    pub fn new(dimension: usize, shape: Shape<T>) -> Result<Self> {
        let domain = DomainSpec { dimension, shape };
        domain.validate()?;
        Ok(domain)
    }

    pub fn unit_box(dimension: usize) -> Self {
        DomainSpec { dimension, shape: Shape::Box(vec![T::one(); dimension]) }
    }

    pub fn cuboid(lengths: Vec<T>) -> Result<Self> {
        Self::new(lengths.len(), Shape::Box(lengths))
    }

    pub fn interval(length: T) -> Result<Self> {
        Self::new(1, Shape::Box(vec![length]))
    }

    pub fn ball(dimension: usize, radius: T) -> Result<Self> {
        Self::new(dimension, Shape::Ball(radius))
    }

    pub fn abstract_domain(dimension: usize, volume: T, inertia: Option<T>) -> Result<Self> {
        Self::new(dimension, Shape::Abstract { volume, inertia })
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dimension;
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let positive = |x: T| x.is_finite() && x > T::zero();
        match &self.shape {
            Shape::Box(lengths) => {
                if lengths.len() != n {
                    return Err(Error::InvalidDomain(format!(
                        "box has {} edge lengths but dimension {}",
                        lengths.len(),
                        n
                    )));
                }
                if let Some(bad) = lengths.iter().find(|l| !positive(**l)) {
                    return Err(Error::InvalidDomain(format!("box edge length {bad} is not positive")));
                }
            }
            Shape::Ball(r) => {
                if !positive(*r) {
                    return Err(Error::InvalidDomain(format!("ball radius {r} is not positive")));
                }
            }
            Shape::Abstract { volume, inertia } => {
                if !positive(*volume) {
                    return Err(Error::InvalidDomain(format!("volume {volume} is not positive")));
                }
                if let Some(i) = inertia {
                    if !positive(*i) {
                        return Err(Error::InvalidDomain(format!("inertia {i} is not positive")));
                    }
                    let floor = inertia_floor(n, *volume)?;
                    if *i < floor * (T::one() - lit(1e-12)) {
                        return Err(Error::InvalidDomain(format!(
                            "inertia {i} is below the ball floor {floor} for volume {volume}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn volume(&self) -> Result<T> {
        Ok(match &self.shape {
            Shape::Box(lengths) => lengths.iter().fold(T::one(), |acc, &l| acc * l),
            Shape::Ball(r) => unit_ball_volume::<T>(self.dimension as i64)? * r.powi(self.dimension as i32),
            Shape::Abstract { volume, .. } => *volume,
        })
    }

    /// Centered moment of inertia, when it is known.
    pub fn inertia(&self) -> Result<Option<T>> {
        let n = self.dimension;
        Ok(match &self.shape {
            Shape::Box(lengths) => {
                let sum_sq = lengths.iter().fold(T::zero(), |acc, &l| acc + l * l);
                Some(self.volume()? * sum_sq / lit(12.0))
            }
            Shape::Ball(r) => {
                let nf = from_usize::<T>(n);
                let omega = unit_ball_volume::<T>(n as i64)?;
                Some(nf * omega * r.powi(n as i32 + 2) / (nf + lit(2.0)))
            }
            Shape::Abstract { inertia, .. } => *inertia,
        })
    }

    /// The same shape dilated by `factor`.
    pub fn dilate(&self, factor: T) -> Self {
        let n = self.dimension as i32;
        let shape = match &self.shape {
            Shape::Box(lengths) => Shape::Box(lengths.iter().map(|&l| l * factor).collect()),
            Shape::Ball(r) => Shape::Ball(*r * factor),
            Shape::Abstract { volume, inertia } => {
                Shape::Abstract { volume: *volume * factor.powi(n), inertia: inertia.map(|i| i * factor.powi(n + 2)) }
            }
        };
        DomainSpec { dimension: self.dimension, shape }
    }

    pub fn constants(&self) -> Result<SpectralConstants<T>> {
        domain_constants(self)
    }
}

/// Scalars derived from one domain: ω_n, V, I, α = V/(2π)ⁿ, ρ and the inertia-based slope bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConstants<T> {
    pub n: usize,
    pub omega_n: T,
    pub volume: T,
    pub inertia: Option<T>,
    pub alpha: T,
    pub rho: T,
    /// 2(2π)⁻ⁿ√(V·I), present iff `inertia` is.
    pub rho_inertia: Option<T>,
    /// V/I, present iff `inertia` is.
    pub v_over_i: Option<T>,
}

impl<T: Scalar> SpectralConstants<T> {
    pub fn from_parts(n: usize, volume: T, inertia: Option<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let omega_n = unit_ball_volume::<T>(n as i64)?;
        let nf = from_usize::<T>(n);
        let two_pi_n = (T::PI() + T::PI()).powi(n as i32);
        let alpha = volume / two_pi_n;
        let rho = volume.powf((nf + T::one()) / nf) / (two_pi_n * omega_n.powf(T::one() / nf));
        let rho_inertia = inertia.map(|i| lit::<T>(2.0) * (volume * i).sqrt() / two_pi_n);
        let v_over_i = inertia.map(|i| volume / i);
        Ok(SpectralConstants { n, omega_n, volume, inertia, alpha, rho, rho_inertia, v_over_i })
    }

    /// Moment of inertia, or a typed error naming the family that needed it.
    pub fn require_inertia(&self, family: &'static str) -> Result<T> {
        self.inertia.ok_or(Error::MissingInertia { family })
    }

    pub fn require_v_over_i(&self, family: &'static str) -> Result<T> {
        self.v_over_i.ok_or(Error::MissingInertia { family })
    }

    /// Fills a missing inertia with the ball floor. Explicit opt-in only: the floor is a
    /// lower bound on I, so it can move an inertia-dependent bound in either direction.
    pub fn with_inertia_floor(self) -> Result<Self> {
        if self.inertia.is_some() {
            return Ok(self);
        }
        let floor = inertia_floor(self.n, self.volume)?;
        Self::from_parts(self.n, self.volume, Some(floor))
    }
}

pub fn domain_constants<T: Scalar>(domain: &DomainSpec<T>) -> Result<SpectralConstants<T>> {
    domain.validate()?;
    SpectralConstants::from_parts(domain.dimension, domain.volume()?, domain.inertia()?)
}

/// Moment of inertia of the ball with volume `volume`; every domain of that volume has I at least this.
pub fn inertia_floor<T: Scalar>(n: usize, volume: T) -> Result<T> {
    if !(volume > T::zero()) {
        return Err(Error::InvalidParameter { name: "volume", reason: format!("{} is not positive", to_f64(volume)) });
    }
    let nf = from_usize::<T>(n);
    let omega = unit_ball_volume::<T>(n as i64)?;
    Ok(nf / (nf + lit(2.0)) * volume * (volume / omega).powf(lit::<T>(2.0) / nf))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoKind {
    Laplace,
    Clamped,
}

/// Lower bound on the rearranged slope bound, from the isoperimetric inertia floor.
pub fn rho_floor<T: Scalar>(n: usize, volume: T, kind: RhoKind) -> Result<T> {
    if !(volume > T::zero()) {
        return Err(Error::InvalidParameter { name: "volume", reason: format!("{} is not positive", to_f64(volume)) });
    }
    let nf = from_usize::<T>(n);
    let omega = unit_ball_volume::<T>(n as i64)?;
    let base = volume.powf((nf + T::one()) / nf) / ((T::PI() + T::PI()).powi(n as i32) * omega.powf(T::one() / nf));
    Ok(match kind {
        RhoKind::Laplace => base,
        RhoKind::Clamped => lit::<T>(2.0) * (nf / (nf + lit(2.0))).sqrt() * base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn unit_ball_volumes() {
        assert!(close(unit_ball_volume::<f64>(1).unwrap(), 2.0, 1e-15));
        assert!(close(unit_ball_volume::<f64>(2).unwrap(), PI, 1e-15));
        assert!(close(unit_ball_volume::<f64>(3).unwrap(), 4.0 * PI / 3.0, 1e-15));
        assert!(close(unit_ball_volume::<f64>(4).unwrap(), PI * PI / 2.0, 1e-15));
        assert!(close(unit_ball_volume::<f64>(5).unwrap(), 8.0 * PI * PI / 15.0, 1e-15));
        assert_eq!(unit_ball_volume::<f64>(0), Err(Error::InvalidDimension(0)));
        assert_eq!(unit_ball_volume::<f64>(-3), Err(Error::InvalidDimension(-3)));
    }

    #[test]
    fn gamma_lattice() {
        assert_eq!(gamma_half::<f64>(2), 1.0);
        assert_eq!(gamma_half::<f64>(8), 6.0);
        assert!(close(gamma_half::<f64>(1), PI.sqrt(), 1e-15));
        assert!(close(gamma_half::<f64>(5), 0.75 * PI.sqrt(), 1e-15));
    }

    #[test]
    fn square_disk_interval_constants() {
        let sq = DomainSpec::<f64>::unit_box(2).constants().unwrap();
        assert!(close(sq.volume, 1.0, 1e-15));
        assert!(close(sq.inertia.unwrap(), 1.0 / 6.0, 1e-15));
        assert!(close(sq.alpha, 1.0 / (4.0 * PI * PI), 1e-14));
        assert!(close(sq.rho, 1.0 / (4.0 * PI.powf(2.5)), 1e-14));
        assert!(close(sq.rho, 0.0142923, 1e-5));

        let disk = DomainSpec::<f64>::ball(2, 1.0).unwrap().constants().unwrap();
        assert!(close(disk.volume, PI, 1e-15));
        assert!(close(disk.inertia.unwrap(), PI / 2.0, 1e-15));
        assert!(close(disk.alpha, 1.0 / (4.0 * PI), 1e-14));
        assert!(close(disk.rho, 1.0 / (4.0 * PI), 1e-14));

        let seg = DomainSpec::<f64>::interval(1.0).unwrap().constants().unwrap();
        assert!(close(seg.inertia.unwrap(), 1.0 / 12.0, 1e-15));
        assert!(close(seg.alpha, 1.0 / (2.0 * PI), 1e-15));
        assert!(close(seg.rho, 1.0 / (4.0 * PI), 1e-15));
    }

    #[test]
    fn inertia_floor_values() {
        assert!(close(inertia_floor(2, PI).unwrap(), PI / 2.0, 1e-14));
        assert!(close(inertia_floor(2, 1.0).unwrap(), 1.0 / (2.0 * PI), 1e-14));
        assert!(inertia_floor(2, 1.0).unwrap() < 1.0 / 6.0);
        assert!(close(inertia_floor(1, 1.0).unwrap(), 1.0 / 12.0, 1e-14));
    }

    #[test]
    fn rho_floor_values() {
        let lap = rho_floor(2, 1.0, RhoKind::Laplace).unwrap();
        assert!(close(lap, 1.0 / (4.0 * PI.powf(2.5)), 1e-14));
        let cl = rho_floor(2, 1.0, RhoKind::Clamped).unwrap();
        assert!(close(cl, 2.0 * 0.5_f64.sqrt() / (4.0 * PI.powf(2.5)), 1e-14));
        assert!(close(cl, 0.0202124, 1e-5));
        assert!(close(rho_floor(1, 1.0, RhoKind::Laplace).unwrap(), 1.0 / (4.0 * PI), 1e-14));
    }

    #[test]
    fn box_inertia_matches_midpoint_quadrature() {
        // ∫ |x - c|² over a 3x1.5 rectangle by a 400x400 midpoint rule.
        let (a, b) = (3.0_f64, 1.5_f64);
        let m = 400;
        let (hx, hy) = (a / m as f64, b / m as f64);
        let mut acc = 0.0;
        for i in 0..m {
            for j in 0..m {
                let x = (i as f64 + 0.5) * hx - a / 2.0;
                let y = (j as f64 + 0.5) * hy - b / 2.0;
                acc += (x * x + y * y) * hx * hy;
            }
        }
        let domain = DomainSpec::cuboid(vec![a, b]).unwrap();
        assert!(close(domain.inertia().unwrap().unwrap(), acc, 1e-5));
    }

    #[test]
    fn abstract_domain_rules() {
        assert!(DomainSpec::<f64>::abstract_domain(2, 1.0, Some(0.1)).is_err());
        assert!(DomainSpec::<f64>::abstract_domain(2, -1.0, None).is_err());
        let ok = DomainSpec::<f64>::abstract_domain(2, 1.0, Some(0.2)).unwrap();
        let c = ok.constants().unwrap();
        assert!(close(c.v_over_i.unwrap(), 5.0, 1e-15));
        let bare = DomainSpec::<f64>::abstract_domain(3, 2.0, None).unwrap().constants().unwrap();
        assert!(matches!(bare.require_inertia("melas"), Err(Error::MissingInertia { family: "melas" })));
        let filled = bare.with_inertia_floor().unwrap();
        assert!(close(filled.inertia.unwrap(), inertia_floor(3, 2.0).unwrap(), 1e-15));
    }

    #[test]
    fn box_dimension_mismatch_rejected() {
        assert!(DomainSpec::<f64>::new(3, Shape::Box(vec![1.0, 1.0])).is_err());
        assert!(DomainSpec::<f64>::new(0, Shape::Ball(1.0)).is_err());
    }

    #[test]
    fn json_schema_round_trip() {
        let s: DomainSpec<f64> = serde_json::from_str(r#"{"dimension":2,"shape":{"box":[1,2]}}"#).unwrap();
        assert_eq!(s.shape, Shape::Box(vec![1.0, 2.0]));
        let b: DomainSpec<f64> = serde_json::from_str(r#"{"dimension":3,"shape":{"ball":0.5}}"#).unwrap();
        assert_eq!(b.shape, Shape::Ball(0.5));
        let a: DomainSpec<f64> =
            serde_json::from_str(r#"{"dimension":2,"shape":{"abstract":{"volume":1.5}}}"#).unwrap();
        assert_eq!(a.shape, Shape::Abstract { volume: 1.5, inertia: None });
        let missing = serde_json::from_str::<DomainSpec<f64>>(r#"{"dimension":2,"shape":{"abstract":{"inertia":1}}}"#);
        assert!(missing.is_err());
    }

    #[test]
    fn f32_constants_track_f64() {
        let c32 = DomainSpec::<f32>::unit_box(2).constants().unwrap();
        let c64 = DomainSpec::<f64>::unit_box(2).constants().unwrap();
        assert!((c32.rho as f64 - c64.rho).abs() / c64.rho < 1e-6);
    }
}
