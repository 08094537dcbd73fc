//! Bracketed root finding used by the band solver, the Bessel zeros and the beam frequencies.

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

const MAX_BISECTIONS: usize = 400;

/// Bisection on `[lo, hi]` until the bracket is narrower than `width(mid)`.
///
/// `f(lo)` and `f(hi)` must have opposite signs (or one of them vanish). Returns the midpoint
/// of the final bracket.
pub fn bisect<T, F, W>(mut f: F, mut lo: T, mut hi: T, width: W, what: &'static str) -> Result<T>
where
    T: Scalar,
    F: FnMut(T) -> T,
    W: Fn(T) -> T,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == T::zero() {
        return Ok(lo);
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::BracketFailure {
            what,
            detail: format!("no sign change on [{lo}, {hi}]: f = ({f_lo}, {f_hi})"),
        });
    }
    let half = lit::<T>(0.5);
    for _ in 0..MAX_BISECTIONS {
        let mid = lo + (hi - lo) * half;
        if hi - lo <= width(mid) || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == T::zero() {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) * half)
}

/// Newton steps from `x`, each kept only if it stays inside `[lo, hi]` and does not
/// increase the residual.
pub fn newton_polish<T, F>(mut fdf: F, mut x: T, lo: T, hi: T, steps: usize) -> T
where
    T: Scalar,
    F: FnMut(T) -> (T, T),
{
    for _ in 0..steps {
        let (fx, dfx) = fdf(x);
        if fx == T::zero() || dfx == T::zero() || !dfx.is_finite() {
            break;
        }
        let next = x - fx / dfx;
        if !(next >= lo && next <= hi) {
            break;
        }
        let (f_next, _) = fdf(next);
        if f_next.abs() > fx.abs() {
            break;
        }
        x = next;
    }
    x
}
