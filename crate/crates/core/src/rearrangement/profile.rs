//! Decreasing piecewise-linear profiles and the moment inequalities they must satisfy.

use std::collections::BTreeMap;
use std::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rearrangement::band::{band_threshold, solve_band_parameter, BandData};
use crate::scalar::{from_u64, lit, to_f64, Scalar};

/// Decreasing, compactly supported, piecewise-linear ψ with slopes in [−slope_bound, 0].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile<T> {
    /// Increasing abscissas starting at 0; ψ vanishes beyond the last one.
    pub knots: Vec<T>,
    /// ψ at each knot; nonincreasing, ending at 0.
    pub values: Vec<T>,
    pub slope_bound: T,
}

impl<T: Scalar> Profile<T> {
    pub fn new(knots: Vec<T>, values: Vec<T>, slope_bound: T) -> Result<Self> {
        let p = Profile { knots, values, slope_bound };
        p.validate()?;
        Ok(p)
    }

    /// ψ(x) = max(0, height − slope·x).
    pub fn triangle(height: T, slope: T) -> Result<Self> {
        Self::new(vec![T::zero(), height / slope], vec![height, T::zero()], slope)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidParameter { name: "profile", reason });
        if self.knots.len() < 2 || self.knots.len() != self.values.len() {
            return bad("needs at least two knots and one value per knot".into());
        }
        if self.knots[0] != T::zero() {
            return bad("first knot must be 0".into());
        }
        if *self.values.last().unwrap() != T::zero() {
            return bad("terminal value must be 0".into());
        }
        if !(self.slope_bound > T::zero()) {
            return bad("slope bound must be positive".into());
        }
        if !(self.values[0] > T::zero()) {
            return bad("ψ(0) must be positive".into());
        }
        let tol = T::one() + lit(1e-12);
        for w in 0..self.knots.len() - 1 {
            let (x0, x1) = (self.knots[w], self.knots[w + 1]);
            let (v0, v1) = (self.values[w], self.values[w + 1]);
            if !(x1 > x0) {
                return bad(format!("knots not increasing at segment {w}"));
            }
            if v1 > v0 || v1 < T::zero() {
                return bad(format!("values not decreasing and nonnegative at segment {w}"));
            }
            if (v0 - v1) > self.slope_bound * tol * (x1 - x0) {
                return bad(format!("segment {w} is steeper than the slope bound"));
            }
        }
        Ok(())
    }

    pub fn height(&self) -> T {
        self.values[0]
    }

    pub fn support_end(&self) -> T {
        *self.knots.last().unwrap()
    }

    pub fn value_at(&self, x: T) -> T {
        if x <= T::zero() {
            return self.values[0];
        }
        for w in 0..self.knots.len() - 1 {
            let (x0, x1) = (self.knots[w], self.knots[w + 1]);
            if x <= x1 {
                let (v0, v1) = (self.values[w], self.values[w + 1]);
                return v0 + (v1 - v0) * (x - x0) / (x1 - x0);
            }
        }
        T::zero()
    }

    /// ∫₀^∞ s^e ψ(s) ds, exact up to rounding.
    ///
    /// On each segment ψ = v₁ + σ(x₁ − s) with σ ≥ 0; substituting s = x₀ + uL turns both
    /// pieces into binomial sums of positive terms.
    pub fn moment(&self, e: u32) -> T {
        let mut total = T::zero();
        for w in 0..self.knots.len() - 1 {
            let (x0, x1) = (self.knots[w], self.knots[w + 1]);
            let (v0, v1) = (self.values[w], self.values[w + 1]);
            let len = x1 - x0;
            let slope = (v0 - v1) / len;
            // Σ_j C(e,j) x0^{e−j} L^j / (j+1) and the same with 1/((j+1)(j+2)).
            let mut flat = T::zero();
            let mut ramp = T::zero();
            let mut binom = 1.0_f64;
            for j in 0..=e {
                let term = lit::<T>(binom) * x0.powi((e - j) as i32) * len.powi(j as i32);
                let jf = f64::from(j);
                flat = flat + term / lit(jf + 1.0);
                ramp = ramp + term / lit((jf + 1.0) * (jf + 2.0));
                binom = binom * f64::from(e - j) / (jf + 1.0);
            }
            total = total + v1 * len * flat + slope * len * len * ramp;
        }
        total
    }

    pub fn moments(&self, exponents: &[i64]) -> Result<BTreeMap<i64, T>> {
        exponents
            .iter()
            .map(|&e| {
                if e < 0 {
                    Err(Error::InvalidParameter { name: "exponent", reason: format!("{e} is negative") })
                } else {
                    Ok((e, self.moment(e as u32)))
                }
            })
            .collect()
    }
}

/// Uniform draw in [0, 1) from the top 53 bits.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Deterministic admissible profile for `seed`.
///
/// ψ(0) is drawn in (0, cap]; every decreasing piece has slope in [0.2, 1)·slope_bound. A
/// multi-piece profile opens with a plateau half the time (up to 4·ψ(0)/slope_bound long) and
/// places shorter interior plateaus between drops. The last piece always descends to 0.
pub fn sample_admissible_profile<T: Scalar>(seed: u64, cap: T, slope_bound: T, pieces: u32) -> Result<Profile<T>> {
    if pieces == 0 {
        return Err(Error::InvalidParameter { name: "pieces", reason: "must be >= 1".into() });
    }
    if !(cap > T::zero()) || !(slope_bound > T::zero()) {
        return Err(Error::InvalidParameter { name: "profile", reason: "cap and slope bound must be positive".into() });
    }
    let cap = to_f64(cap);
    let rho = to_f64(slope_bound);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let height = cap * (1.0 - 0.95 * unit(&mut rng));

    let mut plateau = vec![false; pieces as usize];
    if pieces > 1 {
        plateau[0] = unit(&mut rng) < 0.5;
        for p in plateau.iter_mut().take(pieces as usize - 1).skip(1) {
            *p = unit(&mut rng) < 0.25;
        }
    }
    let weights: Vec<f64> = plateau.iter().map(|&flat| if flat { 0.0 } else { 0.1 + unit(&mut rng) }).collect();
    let total_weight: f64 = weights.iter().sum();

    let scale = height / rho;
    let mut knots = vec![0.0_f64];
    let mut values = vec![height];
    let mut level = height;
    let last_drop = plateau.iter().rposition(|&f| !f).expect("last piece descends");
    for (i, &flat) in plateau.iter().enumerate() {
        let x = *knots.last().unwrap();
        if flat {
            let max_len = if i == 0 { 4.0 } else { 1.5 };
            knots.push(x + scale * (0.05 + (max_len - 0.05) * unit(&mut rng)));
            values.push(level);
        } else {
            let drop = if i == last_drop { level } else { height * weights[i] / total_weight };
            let slope = rho * (0.2 + 0.8 * unit(&mut rng));
            level = if i == last_drop { 0.0 } else { (level - drop).max(0.0) };
            knots.push(x + drop / slope);
            values.push(level);
        }
    }
    Profile::new(knots.into_iter().map(lit::<T>).collect(), values.into_iter().map(lit::<T>).collect(), slope_bound)
}

/// Moment inequalities checked on a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaKind {
    /// Three-term lower bound on ∫s^{n+1}ψ with the coefficient 1 on S₃ as printed.
    KlPrinted,
    /// The same bound with the coefficient 2 on S₃ that its derivation produces.
    KlCorrected,
    /// Four-term n = 2 refinement.
    ReN2,
    /// Three-term bound on ∫s^{n+1}ψ from the degree-(m+1) kernel, n ≥ m+1.
    GmtIntegral(u32),
    /// Three-term bound on ∫s^{n+3}ψ from the clamped kernel, n ≥ m ≥ 1.
    TltIntegral(u32),
}

impl fmt::Display for LemmaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaKind::KlPrinted => f.write_str("KL_printed"),
            LemmaKind::KlCorrected => f.write_str("KL_corrected"),
            LemmaKind::ReN2 => f.write_str("RE_n2"),
            LemmaKind::GmtIntegral(m) => write!(f, "GMT_integral({m})"),
            LemmaKind::TltIntegral(m) => write!(f, "TLT_integral({m})"),
        }
    }
}

impl LemmaKind {
    /// Every lemma that applies in dimension `n`.
    pub fn applicable(n: u32) -> Vec<LemmaKind> {
        let mut out = vec![LemmaKind::KlCorrected, LemmaKind::KlPrinted];
        if n == 2 {
            out.push(LemmaKind::ReN2);
        }
        out.extend((2..n).map(LemmaKind::GmtIntegral));
        out.extend((1..=n).map(LemmaKind::TltIntegral));
        out
    }

    fn validate(self, n: u32) -> Result<()> {
        let ok = match self {
            LemmaKind::KlPrinted | LemmaKind::KlCorrected => n >= 2,
            LemmaKind::ReN2 => n == 2,
            LemmaKind::GmtIntegral(m) => m >= 1 && n > m,
            LemmaKind::TltIntegral(m) => m >= 1 && n >= m,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Constraint {
                what: "lemma_chain_check",
                constraint: format!("{self} is not defined for n = {n}"),
            })
        }
    }

    /// Exponent of the higher moment bounded from below.
    fn upper_exponent(self, n: u32) -> u32 {
        match self {
            LemmaKind::TltIntegral(_) => n + 3,
            _ => n + 1,
        }
    }

    /// Lower bound on the higher moment of a profile with ψ(0) = 1 and slope bound 1, as a
    /// function of τ = (nA)^{1/n} and the band solved from nA.
    fn normalized_bound<T: Scalar>(self, n: u32, tau: T, band: &BandData<T>) -> Result<T> {
        let nf = from_u64::<T>(u64::from(n));
        let two = lit::<T>(2.0);
        let p = |e: i64| tau.powi(e as i32);
        let ni = i64::from(n);
        Ok(match self {
            LemmaKind::KlPrinted | LemmaKind::KlCorrected => {
                let s3_coef = if self == LemmaKind::KlCorrected { two } else { T::one() };
                let d = nf * (nf + two);
                p(ni + 2) / nf - s3_coef * band.power(3)? * p(ni) / d + band.power(4)? * p(ni - 1) / d
            }
            LemmaKind::ReN2 => {
                let d = nf * (nf + two);
                p(ni + 2) / (nf + two) + two * p(ni + 1) / d - lit::<T>(5.0) * p(ni) / (two * d) + p(ni - 1) / d
            }
            LemmaKind::GmtIntegral(m) => {
                let mf = from_u64::<T>(u64::from(m));
                let mi = i64::from(m);
                let d = nf * (nf + two);
                p(ni + 2) / nf - two * band.power(m + 2)? * p(ni - mi + 1) / d
                    + two * (mf + T::one()) * band.power(m + 3)? * p(ni - mi) / (d * (mf + lit(3.0)))
            }
            LemmaKind::TltIntegral(m) => {
                let mf = from_u64::<T>(u64::from(m));
                let mi = i64::from(m);
                let four = lit::<T>(4.0);
                let d = nf * (nf + four);
                let s = band.power(m + 2)?;
                p(ni + 4) / nf - four * s * p(ni - mi + 4) / d + four * mf * s * p(ni - mi + 3) / (d * (mf + two))
            }
        })
    }
}

/// Margin LHS − RHS of one moment inequality on `profile` in dimension `n`.
///
/// The profile is rescaled to ψ(0) = 1 and slope bound 1, the band is solved from its own
/// normalized mass nÃ, and the normalized bound is mapped back to the profile's scale.
pub fn lemma_chain_check<T: Scalar>(profile: &Profile<T>, n: u32, lemma: LemmaKind) -> Result<T> {
    lemma.validate(n)?;
    profile.validate()?;
    let nf = from_u64::<T>(u64::from(n));
    let psi0 = profile.height();
    let width = psi0 / profile.slope_bound;
    let mass = nf * profile.moment(n - 1) / (psi0 * width.powi(n as i32));
    // Rounding can put the tightest profiles an ulp below the bathtub floor.
    let floor = band_threshold::<T>(n);
    let mass = if mass < floor && mass >= floor * (T::one() - lit(1e-12)) { floor } else { mass };
    let band = solve_band_parameter(n, mass)?;
    let tau = mass.powf(T::one() / nf);
    let e = lemma.upper_exponent(n);
    let rhs = psi0 * width.powi(e as i32 + 1) * lemma.normalized_bound(n, tau, &band)?;
    Ok(profile.moment(e) - rhs)
}
