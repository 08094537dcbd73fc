use crate::error::{Error, Result};
use crate::rearrangement::band::BandData;
use crate::scalar::{from_u64, lit, Scalar};

/// The three monotonicity caps c₁ (n ≥ 2), c₂ (n ≥ m+1 ≥ 3) and c₃ (n ≥ m ≥ 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    C1,
    C2,
    C3,
}

/// Largest admissible cap coefficient, always in (0, 1].
pub fn cap_coefficient<T: Scalar>(kind: CapKind, n: u32, m: u32, k: u64, band: &BandData<T>) -> Result<T> {
    let nf = from_u64::<T>(u64::from(n));
    let mf = from_u64::<T>(u64::from(m));
    let kf = from_u64::<T>(k);
    let one = T::one();
    let sqrt2 = T::SQRT_2();
    if k == 0 {
        return Err(Error::Constraint { what: "cap_coefficient", constraint: "k >= 1".into() });
    }
    let raw = match kind {
        CapKind::C1 => {
            if n < 2 {
                return Err(Error::Constraint { what: "c1", constraint: format!("n >= 2 (got n = {n})") });
            }
            let s3 = band.power(3)?;
            let s4 = band.power(4)?;
            let denom = (lit::<T>(3.0) * nf + one) * s4;
            let first = lit::<T>(4.0) * sqrt2 * nf * s3 * kf.powf(one / nf) / denom;
            let second = lit::<T>(4.0) * sqrt2 * (nf + lit(2.0)) * kf.powf(lit::<T>(3.0) / nf) / denom;
            first.max(second)
        }
        CapKind::C2 => {
            if !(m + 1 >= 3 && n > m) {
                return Err(Error::Constraint {
                    what: "c2",
                    constraint: format!("n >= m+1 >= 3 (got n = {n}, m = {m})"),
                });
            }
            let sm2 = band.power(m + 2)?;
            let sm3 = band.power(m + 3)?;
            ((mf + one) * nf + mf - one) / ((mf + lit(2.0)) * nf + mf) * sqrt2 * sm2 / sm3 * (mf + lit(3.0))
                / (mf + one)
                * kf.powf(one / nf)
        }
        CapKind::C3 => {
            if !(m >= 2 && n >= m) {
                return Err(Error::Constraint {
                    what: "c3",
                    constraint: format!("n >= m >= 2 (got n = {n}, m = {m})"),
                });
            }
            let sm2 = band.power(m + 2)?;
            lit::<T>(2.0).powf((mf + one) / lit(2.0)) * (nf + lit(2.0)) * (mf + lit(2.0)) * kf.powf((mf + one) / nf)
                / (sm2 * ((mf + one) * nf + mf - lit(3.0)))
        }
    };
    Ok(raw.min(one))
}

/// c = √(3π/14)·10⁻¹¹ in the sub-leading exponent of the n = 2 boundary-corrected bound.
pub fn kvw_constant<T: Scalar>() -> T {
    (lit::<T>(3.0) * T::PI() / lit(14.0)).sqrt() * lit(1e-11)
}

/// ε(k) = 2/√(log₂(2πk/c)).
pub fn kvw_epsilon<T: Scalar>(k: u64) -> Result<T> {
    if k == 0 {
        return Err(Error::Constraint { what: "kvw_epsilon", constraint: "k >= 1".into() });
    }
    let arg = (T::PI() + T::PI()) * from_u64::<T>(k) / kvw_constant::<T>();
    Ok(lit::<T>(2.0) / arg.log2().sqrt())
}
