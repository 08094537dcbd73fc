//! Clamped plate families.

use crate::bounds::{require_k, resolve_band, rpow, BoundEvaluation, Family, Variant};
use crate::error::{Error, Result};
use crate::geometry::SpectralConstants;
use crate::operator::Direction;
use crate::rearrangement::{cap_coefficient, BandChoice, CapKind};
use crate::scalar::{from_u64, lit, to_f64, Scalar};

/// Mean Weyl value (n/(n+4))·16π⁴k^{4/n}/(ω_nV)^{4/n}.
fn levine_protter_mean<T: Scalar>(c: &SpectralConstants<T>, k: u64) -> T {
    let n = c.n as i64;
    let nf = from_u64::<T>(c.n as u64);
    let pi2 = T::PI() * T::PI();
    nf / (nf + lit(4.0)) * lit::<T>(16.0) * pi2 * pi2 * rpow(from_u64::<T>(k), 4, n) / rpow(c.omega_n * c.volume, 4, n)
}

pub fn levine_protter_sum<T: Scalar>(c: &SpectralConstants<T>, k: u64) -> Result<BoundEvaluation<T>> {
    require_k(k, Family::LevineProtter)?;
    let value = from_u64::<T>(k) * levine_protter_mean(c, k);
    Ok(BoundEvaluation::new(Family::LevineProtter, k, vec![("leading", value)]))
}

/// The two inertia-corrected bounds; version 2 is stated for n ≥ 2 and is flagged below that.
pub fn cheng_wei_sum<T: Scalar>(c: &SpectralConstants<T>, k: u64, version: u8) -> Result<BoundEvaluation<T>> {
    let family = match version {
        1 => Family::ChengWei1,
        2 => Family::ChengWei2,
        v => return Err(Error::InvalidParameter { name: "version", reason: format!("{v} is not 1 or 2") }),
    };
    require_k(k, family)?;
    let q = c.require_v_over_i(if version == 2 { "cheng-wei-2" } else { "cheng-wei-1" })?;
    let nf = from_u64::<T>(c.n as u64);
    let (n2, n4) = (nf + lit(2.0), nf + lit(4.0));
    let (coef1, coef2) = if version == 2 {
        (n2 / (lit::<T>(12.0) * nf * n4), n2 * n2 / (lit::<T>(1152.0) * nf * n4 * n4))
    } else {
        (
            n2 / (lit::<T>(12.0) * nf * n4) - T::one() / (lit::<T>(1152.0) * nf * nf * n4),
            T::one() / (lit::<T>(576.0) * nf * n4) - T::one() / (lit::<T>(27648.0) * nf * nf * n2 * n4),
        )
    };
    let kf = from_u64::<T>(k);
    let n = c.n as i64;
    let four_pi2 = lit::<T>(4.0) * T::PI() * T::PI();
    let ly_mean = nf / n2 * four_pi2 * rpow(kf, 2, n) / rpow(c.omega_n * c.volume, 2, n);
    let terms = vec![
        ("leading", kf * levine_protter_mean(c, k)),
        ("inertia", kf * coef1 * q * ly_mean),
        ("inertia-squared", kf * coef2 * q * q),
    ];
    let mut eval = BoundEvaluation::new(family, k, terms);
    eval.flags.out_of_hypothesis = version == 2 && c.n < 2;
    Ok(eval)
}

/// Upper bound valid for k ≥ V·r₀ⁿ, where `v_shell` is the volume of the boundary layer of
/// width 1/r₀.
pub fn cheng_wei_upper<T: Scalar>(c: &SpectralConstants<T>, k: u64, r0: T, v_shell: T) -> Result<BoundEvaluation<T>> {
    require_k(k, Family::ChengWeiUpper)?;
    if !(r0 > T::zero()) {
        return Err(Error::InvalidParameter { name: "r0", reason: format!("{} is not positive", to_f64(r0)) });
    }
    let v = c.volume;
    if !(v_shell >= T::zero() && v_shell < v) {
        return Err(Error::InvalidParameter {
            name: "v_shell",
            reason: format!("{} is outside [0, V) with V = {}", to_f64(v_shell), to_f64(v)),
        });
    }
    let threshold = v * r0.powi(c.n as i32);
    if from_u64::<T>(k) < threshold {
        return Err(Error::BelowThreshold { family: "cheng-wei-upper", k, threshold: to_f64(threshold) });
    }
    let nf = from_u64::<T>(c.n as u64);
    let ratio = v_shell / v;
    let numerator = T::one()
        + lit::<T>(4.0) * (nf + lit(4.0)) * (nf * nf + lit::<T>(2.0) * nf + lit(6.0)) / (nf + lit(2.0)) * ratio;
    let factor = numerator / (T::one() - ratio).powf((nf + lit(4.0)) / nf);
    let lp = from_u64::<T>(k) * levine_protter_mean(c, k);
    let mut eval =
        BoundEvaluation::new(Family::ChengWeiUpper, k, vec![("leading", lp), ("shell", (factor - T::one()) * lp)]);
    eval.direction = Direction::Upper;
    Ok(eval)
}

/// Stated for n ≥ 2; n = 1 is evaluated and flagged.
pub fn yy_tse_sum<T: Scalar>(c: &SpectralConstants<T>, k: u64) -> Result<BoundEvaluation<T>> {
    require_k(k, Family::YyTse)?;
    let n = c.n as i64;
    let nf = from_u64::<T>(c.n as u64);
    let n4 = nf + lit(4.0);
    let (w, a, r) = (c.omega_n, c.alpha, c.rho);
    let kf = from_u64::<T>(k);
    let terms = vec![
        ("leading", nf / n4 * rpow(w, -4, n) * rpow(a, -4, n) * rpow(kf, n + 4, n)),
        ("second", rpow(w, -2, n) * rpow(a, 2 * n - 2, n) * rpow(kf, n + 2, n) / (lit::<T>(3.0) * n4 * r * r)),
        (
            "third",
            lit::<T>(2.0) * rpow(w, -1, n) * rpow(a, 3 * n - 1, n) * rpow(kf, n + 1, n)
                / (lit::<T>(9.0) * n4 * r * r * r),
        ),
    ];
    let mut eval = BoundEvaluation::new(Family::YyTse, k, terms);
    eval.flags.out_of_hypothesis = c.n < 2;
    Ok(eval)
}

/// Three-term bound from the clamped kernel with m subtracted terms.
///
/// m = 1 is only stated for n = 1 and additionally needs k ≥ 2√2·S₃/5; m ≥ 2 uses the cap c₃.
/// The band solves the n+3 equation with target (normalized mass)^{(n+3)/n} unless fixed.
pub fn band_clamped_sum<T: Scalar>(
    c: &SpectralConstants<T>,
    k: u64,
    m: u32,
    band: BandChoice<T>,
    variant: Variant,
) -> Result<BoundEvaluation<T>> {
    require_k(k, Family::BandClamped)?;
    let n_u = c.n as u32;
    if !(m >= 1 && n_u >= m) {
        return Err(Error::Constraint {
            what: "band-clamped",
            constraint: format!("n >= m >= 1 (got n = {n_u}, m = {m})"),
        });
    }
    if m == 1 && n_u != 1 {
        return Err(Error::Constraint {
            what: "band-clamped",
            constraint: format!("n = 1 when m = 1 (got n = {n_u}); use m >= 2"),
        });
    }
    let data = resolve_band(c, k, band, true)?;
    let gamma = if m == 1 {
        let threshold = lit::<T>(2.0) * T::SQRT_2() * data.power(3)? / lit(5.0);
        if from_u64::<T>(k) < threshold {
            return Err(Error::BelowThreshold {
                family: "band-clamped (2√2·S₃/5)", k, threshold: to_f64(threshold)
            });
        }
        T::one()
    } else {
        cap_coefficient(CapKind::C3, n_u, m, k, &data)?
    };
    let n = c.n as i64;
    let mi = i64::from(m);
    let nf = from_u64::<T>(c.n as u64);
    let mf = from_u64::<T>(u64::from(m));
    let n4 = nf + lit(4.0);
    let (w, a, r) = (c.omega_n, c.alpha, c.rho);
    let kf = from_u64::<T>(k);
    let s = data.power(m + 2)?;
    let four = lit::<T>(4.0);
    let scale = match variant {
        Variant::Printed => T::one(),
        Variant::Corrected => nf / n4,
    };
    let leading = rpow(w, -4, n) * rpow(a, -4, n) * rpow(kf, n + 4, n);
    let terms = vec![
        ("leading", scale * leading),
        (
            "band",
            -rpow(w, mi - 4, n) * four * s * rpow(a, mi * n + mi - 4, n) * rpow(kf, n - mi + 4, n)
                / (n4 * r.powi(m as i32)),
        ),
        (
            "cap",
            gamma * rpow(w, mi - 3, n) * four * mf * s * rpow(a, (mi + 1) * n + mi - 3, n) * rpow(kf, n - mi + 3, n)
                / (n4 * (mf + lit(2.0)) * r.powi(m as i32 + 1)),
        ),
    ];
    let mut eval = BoundEvaluation::new(Family::BandClamped, k, terms);
    eval.reference_terms = vec![("leading".into(), nf / n4 * leading)];
    eval.flags.variant = Some(variant);
    eval.flags.band = Some(band.label());
    Ok(eval)
}

/// Γ_k ≥ (clamped sum bound at k)/k.
pub fn gamma_k_lower<T: Scalar>(
    c: &SpectralConstants<T>,
    k: u64,
    m: u32,
    band: BandChoice<T>,
    variant: Variant,
) -> Result<BoundEvaluation<T>> {
    Ok(band_clamped_sum(c, k, m, band, variant)?.per_eigenvalue_of(Family::GammaK))
}
