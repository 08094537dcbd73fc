//! One-variable polynomial kernels f(t) ≥ 0 with a double root at t = 1.
//!
//! Each kernel is built with exact integer coefficients, the factor (t − 1)² is divided out
//! exactly, and evaluation is (t − 1)²·q(t) with q by Horner. This keeps f(1) = 0 exact and
//! avoids the cancellation of the expanded form near the minimum.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{from_usize, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    /// nt^{n+2} − (n+2)tⁿ + 2 − 2(t−1)² − 4t(t−1)², n ≥ 2.
    Laplace2,
    /// nt^{n+2} − (n+2)tⁿ + 2 − Σ_{k=1}^{m+1} 2k t^{k−1}(t−1)², n ≥ m+1.
    General,
    /// nt^{n+4} − (n+4)tⁿ + 4 − Σ_{k=1}^{m} 4k t^{k−1}(t−1)², n ≥ m ≥ 1.
    Clamped,
}

impl KernelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelKind::Laplace2 => "laplace2",
            KernelKind::General => "general",
            KernelKind::Clamped => "clamped",
        }
    }

    pub fn validate(self, n: u32, m: u32) -> Result<()> {
        let ok = match self {
            KernelKind::Laplace2 => n >= 2,
            KernelKind::General => n >= 1 && n > m,
            KernelKind::Clamped => m >= 1 && n >= m,
        };
        if ok {
            Ok(())
        } else {
            let constraint = match self {
                KernelKind::Laplace2 => "n >= 2",
                KernelKind::General => "n >= m + 1",
                KernelKind::Clamped => "n >= m >= 1",
            };
            Err(Error::Constraint { what: self.as_str(), constraint: format!("{constraint} (got n = {n}, m = {m})") })
        }
    }

    /// Every (n, m) pair of the certification table for dimensions up to `n_max`.
    pub fn table(self, n_range: std::ops::RangeInclusive<u32>) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for n in n_range {
            match self {
                KernelKind::Laplace2 if n >= 2 => out.push((n, 1)),
                KernelKind::General => out.extend((1..n).filter(|m| m + 1 >= 2).map(|m| (n, m))),
                KernelKind::Clamped => out.extend((1..=n).map(|m| (n, m))),
                _ => {}
            }
        }
        out
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KernelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laplace2" => Ok(KernelKind::Laplace2),
            "general" => Ok(KernelKind::General),
            "clamped" => Ok(KernelKind::Clamped),
            other => Err(Error::InvalidParameter {
                name: "kind",
                reason: format!("unknown kernel `{other}` (expected laplace2, general or clamped)"),
            }),
        }
    }
}

/// Exact integer form of one kernel, with the (t − 1)² factor removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPolynomial {
    pub kind: KernelKind,
    pub n: u32,
    pub m: u32,
    /// Coefficients of f, lowest degree first.
    pub coeffs: Vec<i128>,
    /// Coefficients of q with f = (t − 1)²·q.
    pub quotient: Vec<i128>,
}

fn add_term(poly: &mut Vec<i128>, degree: usize, c: i128) {
    if poly.len() <= degree {
        poly.resize(degree + 1, 0);
    }
    poly[degree] += c;
}

/// Subtracts c·t^{j}(t−1)².
fn sub_shifted_square(poly: &mut Vec<i128>, j: usize, c: i128) {
    add_term(poly, j, -c);
    add_term(poly, j + 1, 2 * c);
    add_term(poly, j + 2, -c);
}

/// Divides by (t − 1), returning the quotient and the remainder.
fn divide_by_t_minus_one(poly: &[i128]) -> (Vec<i128>, i128) {
    let d = poly.len() - 1;
    let mut q = vec![0i128; d];
    let mut carry = 0i128;
    for i in (1..=d).rev() {
        carry += poly[i];
        q[i - 1] = carry;
    }
    (q, carry + poly[0])
}

impl KernelPolynomial {
    pub fn new(kind: KernelKind, n: u32, m: u32) -> Result<Self> {
        kind.validate(n, m)?;
        let (lead, shift, weight, terms) = match kind {
            KernelKind::Laplace2 => (2usize, 2i128, 2i128, 2u32),
            KernelKind::General => (2, 2, 2, m + 1),
            KernelKind::Clamped => (4, 4, 4, m),
        };
        let nn = n as usize;
        let ni = i128::from(n);
        let mut coeffs = Vec::new();
        add_term(&mut coeffs, nn + lead, ni);
        add_term(&mut coeffs, nn, -(ni + lead as i128));
        add_term(&mut coeffs, 0, shift);
        for k in 1..=terms {
            sub_shifted_square(&mut coeffs, k as usize - 1, weight * i128::from(k));
        }
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        let (q1, r1) = divide_by_t_minus_one(&coeffs);
        let (quotient, r2) = divide_by_t_minus_one(&q1);
        debug_assert!(r1 == 0 && r2 == 0, "kernel must have a double root at t = 1");
        if r1 != 0 || r2 != 0 {
            return Err(Error::Constraint { what: kind.as_str(), constraint: "double root at t = 1".into() });
        }
        Ok(KernelPolynomial { kind, n, m, coeffs, quotient })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// f(t) = (t − 1)²·q(t).
    pub fn eval<T: Scalar>(&self, t: T) -> T {
        let q = self
            .quotient
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * t + T::from_i128(c).expect("small integer coefficient"));
        let d = t - T::one();
        d * d * q
    }

    /// Expanded-form evaluation, kept only as a cross-check of the factorized form.
    pub fn eval_expanded<T: Scalar>(&self, t: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * t + T::from_i128(c).expect("small integer coefficient"))
    }

    /// True when the leading term dominates the sum of all lower terms for every t ≥ t0 ≥ 1,
    /// i.e. f > 0 beyond t0.
    pub fn tail_dominated(&self, t0: f64) -> bool {
        assert!(t0 >= 1.0);
        let d = self.degree();
        let lead = self.coeffs[d] as f64;
        let rest: f64 = self.coeffs[..d].iter().map(|c| (*c as f64).abs()).sum();
        lead > 0.0 && lead * t0 > rest
    }
}

pub fn kernel_residual<T: Scalar>(kind: KernelKind, n: u32, m: u32, t: T) -> Result<T> {
    if !(t >= T::zero()) {
        return Err(Error::InvalidParameter { name: "t", reason: "must be >= 0".into() });
    }
    Ok(KernelPolynomial::new(kind, n, m)?.eval(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelScan<T> {
    pub min: T,
    pub argmin: T,
    pub points: usize,
}

/// Grid minimum of the kernel over [0, t_max] with spacing `step`; the endpoint t_max is always included.
pub fn kernel_scan<T: Scalar>(kind: KernelKind, n: u32, m: u32, t_max: T, step: T) -> Result<KernelScan<T>> {
    kernel_scan_range(kind, n, m, T::zero(), t_max, step)
}

/// Grid minimum over [lo, hi] at lo + i·step, plus the endpoint hi.
pub fn kernel_scan_range<T: Scalar>(kind: KernelKind, n: u32, m: u32, lo: T, hi: T, step: T) -> Result<KernelScan<T>> {
    if !(lo >= T::zero()) || !(hi > lo) || !(step > T::zero()) {
        return Err(Error::InvalidParameter { name: "grid", reason: "need 0 <= lo < hi and step > 0".into() });
    }
    let poly = KernelPolynomial::new(kind, n, m)?;
    let count = ((hi - lo) / step).floor().to_usize().unwrap_or(0);
    let mut best = KernelScan { min: T::infinity(), argmin: lo, points: 0 };
    let mut visit = |t: T| {
        let v = poly.eval(t);
        if v < best.min {
            best.min = v;
            best.argmin = t;
        }
        best.points += 1;
    };
    for i in 0..=count {
        visit(lo + from_usize::<T>(i) * step);
    }
    if lo + from_usize::<T>(count) * step < hi {
        visit(hi);
    }
    Ok(best)
}
