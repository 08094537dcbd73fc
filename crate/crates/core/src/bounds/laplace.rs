//! Dirichlet Laplacian families.

use crate::bounds::{require_dimension, require_k, resolve_band, rpow, BoundEvaluation, Family, Variant};
use crate::error::{Error, Result};
use crate::geometry::SpectralConstants;
use crate::rearrangement::{cap_coefficient, kvw_epsilon, BandChoice, CapKind};
use crate::scalar::{from_u64, lit, to_f64, Scalar};

/// 4π²k^{2/n}/(ω_nV)^{2/n}: the Weyl value of λ_k.
fn weyl_lambda<T: Scalar>(c: &SpectralConstants<T>, k: u64) -> T {
    let n = c.n as i64;
    let four_pi2 = lit::<T>(4.0) * T::PI() * T::PI();
    four_pi2 * rpow(from_u64::<T>(k), 2, n) / rpow(c.omega_n * c.volume, 2, n)
}

pub fn li_yau_sum<T: Scalar>(c: &SpectralConstants<T>, k: u64) -> Result<BoundEvaluation<T>> {
    require_k(k, Family::LiYau)?;
    let nf = from_u64::<T>(c.n as u64);
    let value = from_u64::<T>(k) * nf / (nf + lit(2.0)) * weyl_lambda(c, k);
    Ok(BoundEvaluation::new(Family::LiYau, k, vec![("leading", value)]))
}

/// λ_k ≥ 4π²k^{2/n}/(ω_nV)^{2/n}; conjectural unless the domain tiles (n ≤ 2).
pub fn polya_reference<T: Scalar>(c: &SpectralConstants<T>, k: u64, tiling: bool) -> Result<BoundEvaluation<T>> {
    require_k(k, Family::PolyaRef)?;
    let mut eval = BoundEvaluation::new(Family::PolyaRef, k, vec![("leading", weyl_lambda(c, k))]);
    eval.flags.conjectural = !(tiling && c.n <= 2);
    Ok(eval)
}

pub fn melas_sum<T: Scalar>(c: &SpectralConstants<T>, k: u64, c_n: T) -> Result<BoundEvaluation<T>> {
    require_k(k, Family::Melas)?;
    if !(c_n >= T::zero()) {
        return Err(Error::InvalidParameter { name: "c_n", reason: format!("{} is negative", to_f64(c_n)) });
    }
    let v_over_i = c.require_v_over_i("melas")?;
    let ly = li_yau_sum(c, k)?.value;
    Ok(BoundEvaluation::new(Family::Melas, k, vec![("leading", ly), ("inertia", from_u64::<T>(k) * c_n * v_over_i)]))
}

/// n = 2 only. `big_c` stands for C(a₀), which depends on the boundary; it scales like a length.
pub fn kvw_sum<T: Scalar>(c: &SpectralConstants<T>, k: u64, a0: T, big_c: T) -> Result<BoundEvaluation<T>> {
    require_k(k, Family::Kvw)?;
    require_dimension(c, Family::Kvw, c.n == 2, "2")?;
    if !(a0 >= T::zero() && a0 <= T::one()) {
        return Err(Error::InvalidParameter { name: "a0", reason: format!("{} is outside [0, 1]", to_f64(a0)) });
    }
    if !(big_c >= T::zero()) {
        return Err(Error::InvalidParameter { name: "c", reason: format!("{} is negative", to_f64(big_c)) });
    }
    let inertia = c.require_inertia("kvw")?;
    let v = c.volume;
    let kf = from_u64::<T>(k);
    let eps = kvw_epsilon::<T>(k)?;
    let leading = (T::PI() + T::PI()) * kf * kf / v;
    let boundary = big_c * v.powf(lit(-1.5)) * kf.powf(lit::<T>(1.5) - eps);
    let inertia_term = (T::one() - a0) * v * kf / (lit::<T>(32.0) * inertia);
    Ok(BoundEvaluation::new(
        Family::Kvw,
        k,
        vec![("leading", leading), ("boundary", boundary), ("inertia", inertia_term)],
    ))
}

/// Four-term n = 2 bound; at V = 1 the terms are 2πk², πk^{3/2}, −5πk/8, πk^{1/2}/8.
pub fn planar_four_term_sum<T: Scalar>(c: &SpectralConstants<T>, k: u64) -> Result<BoundEvaluation<T>> {
    require_k(k, Family::PlanarFourTerm)?;
    require_dimension(c, Family::PlanarFourTerm, c.n == 2, "2")?;
    let n = c.n as i64;
    let nf = from_u64::<T>(c.n as u64);
    let (w, a, r) = (c.omega_n, c.alpha, c.rho);
    let kf = from_u64::<T>(k);
    let d = nf + lit(2.0);
    let terms = vec![
        ("leading", nf / d * rpow(w, -2, n) * rpow(a, -2, n) * rpow(kf, n + 2, n)),
        ("second", lit::<T>(2.0) * rpow(w, -1, n) * rpow(a, n - 1, n) * rpow(kf, n + 1, n) / (d * r)),
        ("third", -lit::<T>(5.0) * a * a * kf / (lit::<T>(2.0) * d * r * r)),
        ("fourth", rpow(w, 1, n) * rpow(a, 3 * n + 1, n) * rpow(kf, n - 1, n) / (d * r * r * r)),
    ];
    Ok(BoundEvaluation::new(Family::PlanarFourTerm, k, terms))
}

/// 2πk²/V + (π − ε)k^{3/2}/V, the two-term consequence of the n = 2 bound for large k.
pub fn planar_two_term_sum<T: Scalar>(c: &SpectralConstants<T>, k: u64, eps: T) -> Result<BoundEvaluation<T>> {
    require_k(k, Family::PlanarFourTerm)?;
    require_dimension(c, Family::PlanarFourTerm, c.n == 2, "2")?;
    if !(eps > T::zero() && eps < T::PI()) {
        return Err(Error::InvalidParameter { name: "epsilon", reason: format!("{} is outside (0, π)", to_f64(eps)) });
    }
    let kf = from_u64::<T>(k);
    let v = c.volume;
    let mut eval = BoundEvaluation::new(
        Family::PlanarFourTerm,
        k,
        vec![("leading", (T::PI() + T::PI()) * kf * kf / v), ("second", (T::PI() - eps) * kf.powf(lit(1.5)) / v)],
    );
    eval.flags.band = None;
    Ok(eval)
}

/// (5/(8ε))², the onset stated alongside the two-term bound.
pub fn two_term_threshold(eps: f64) -> f64 {
    (5.0 / (8.0 * eps)).powi(2)
}

/// Smallest k₀ ≤ k_max such that the four-term bound dominates the two-term bound for every
/// k in k₀..=k_max, or `None` if it fails at k_max. The comparison is V-independent.
pub fn two_term_onset(eps: f64, k_max: u64) -> Option<u64> {
    use std::f64::consts::PI;
    // (four − two)·V/√k = εk − 5π√k/8 + π/8
    let holds = |k: u64| {
        let kf = k as f64;
        eps * kf - 5.0 * PI * kf.sqrt() / 8.0 + PI / 8.0 >= 0.0
    };
    if k_max == 0 || !holds(k_max) {
        return None;
    }
    let last_fail = (1..k_max).rev().find(|&k| !holds(k));
    Some(last_fail.map_or(1, |k| k + 1))
}

fn require_band_dimension<T>(c: &SpectralConstants<T>, family: Family) -> Result<()> {
    require_dimension(c, family, c.n >= 2, ">= 2")
}

pub fn band_mt_sum<T: Scalar>(
    c: &SpectralConstants<T>,
    k: u64,
    band: BandChoice<T>,
    variant: Variant,
) -> Result<BoundEvaluation<T>> {
    require_k(k, Family::BandMt)?;
    require_band_dimension(c, Family::BandMt)?;
    let n = c.n as i64;
    let nf = from_u64::<T>(c.n as u64);
    let (w, a, r) = (c.omega_n, c.alpha, c.rho);
    let kf = from_u64::<T>(k);
    let d = nf + lit(2.0);
    let data = resolve_band(c, k, band, false)?;
    let s3 = data.power(3)?;
    let s4 = data.power(4)?;
    let c1 = cap_coefficient(CapKind::C1, c.n as u32, 0, k, &data)?;
    let s3_coef = match variant {
        Variant::Printed => T::one(),
        Variant::Corrected => lit(2.0),
    };
    let terms = vec![
        ("leading", rpow(w, -2, n) * rpow(a, -2, n) * rpow(kf, n + 2, n)),
        ("band", -s3_coef * s3 * a * a * kf / (d * r * r)),
        ("cap", c1 * rpow(w, 1, n) * s4 * rpow(a, 3 * n + 1, n) * rpow(kf, n - 1, n) / (d * r * r * r)),
    ];
    let mut eval = BoundEvaluation::new(Family::BandMt, k, terms);
    eval.flags.variant = Some(variant);
    eval.flags.band = Some(band.label());
    Ok(eval)
}

pub fn band_gmt_sum<T: Scalar>(
    c: &SpectralConstants<T>,
    k: u64,
    m: u32,
    band: BandChoice<T>,
    variant: Variant,
) -> Result<BoundEvaluation<T>> {
    require_k(k, Family::BandGmt)?;
    let n_u = c.n as u32;
    if !(m >= 2 && n_u > m) {
        return Err(Error::Constraint {
            what: "band-gmt",
            constraint: format!("n >= m+1 >= 3 (got n = {n_u}, m = {m})"),
        });
    }
    let n = c.n as i64;
    let mi = i64::from(m);
    let nf = from_u64::<T>(c.n as u64);
    let mf = from_u64::<T>(u64::from(m));
    let (w, a, r) = (c.omega_n, c.alpha, c.rho);
    let kf = from_u64::<T>(k);
    let d = nf + lit(2.0);
    let two = lit::<T>(2.0);
    let data = resolve_band(c, k, band, false)?;
    let s_m2 = data.power(m + 2)?;
    let s_m3 = data.power(m + 3)?;
    let c2 = cap_coefficient(CapKind::C2, n_u, m, k, &data)?;
    let scale = match variant {
        Variant::Printed => T::one(),
        Variant::Corrected => nf / d,
    };
    let terms = vec![
        ("leading", scale * rpow(w, -2, n) * rpow(a, -2, n) * rpow(kf, n + 2, n)),
        (
            "band",
            -two * rpow(w, mi - 1, n) * s_m2 * rpow(a, (mi + 1) * n + mi - 1, n) * rpow(kf, n - mi + 1, n)
                / (d * r.powi(m as i32 + 1)),
        ),
        (
            "cap",
            c2 * two * rpow(w, mi, n) * (mf + T::one()) * s_m3 * rpow(a, (mi + 2) * n + mi, n) * rpow(kf, n - mi, n)
                / (d * (mf + lit(3.0)) * r.powi(m as i32 + 2)),
        ),
    ];
    let mut eval = BoundEvaluation::new(Family::BandGmt, k, terms);
    eval.reference_terms = vec![
        ("leading".into(), nf / d * rpow(w, -2, n) * rpow(a, -2, n) * rpow(kf, n + 2, n)),
        ("second".into(), two * rpow(w, -1, n) * rpow(a, n - 1, n) * rpow(kf, n + 1, n) / (d * r)),
    ];
    eval.flags.variant = Some(variant);
    eval.flags.band = Some(band.label());
    Ok(eval)
}

/// Which sum bound the per-eigenvalue bound is read off from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaSource {
    Mt,
    Gmt(u32),
}

/// λ_k ≥ (sum bound at k)/k, since λ_k is at least the mean of the first k.
pub fn lambda_k_lower<T: Scalar>(
    c: &SpectralConstants<T>,
    k: u64,
    source: LambdaSource,
    band: BandChoice<T>,
    variant: Variant,
) -> Result<BoundEvaluation<T>> {
    Ok(match source {
        LambdaSource::Mt => band_mt_sum(c, k, band, variant)?.per_eigenvalue_of(Family::LambdaKMt),
        LambdaSource::Gmt(m) => band_gmt_sum(c, k, m, band, variant)?.per_eigenvalue_of(Family::LambdaKGmt),
    })
}
