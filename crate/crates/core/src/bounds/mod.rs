//! Lower (and one upper) bounds on eigenvalue sums, each with a labeled term breakdown.

pub mod clamped;
pub mod laplace;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::SpectralConstants;
use crate::operator::{Direction, Operator};
use crate::rearrangement::{normalized_mass, solve_band_parameter, BandChoice, BandData};
use crate::scalar::{compensated_sum, from_u64, lit, Scalar};

pub use clamped::{band_clamped_sum, cheng_wei_sum, cheng_wei_upper, gamma_k_lower, levine_protter_sum, yy_tse_sum};
pub use laplace::{
    band_gmt_sum, band_mt_sum, kvw_sum, lambda_k_lower, li_yau_sum, melas_sum, planar_four_term_sum,
    planar_two_term_sum, polya_reference, two_term_onset, two_term_threshold, LambdaSource,
};

/// Printed lemma coefficients, or the coefficients their derivations and theorems support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Printed,
    Corrected,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Printed => "printed",
            Variant::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(Variant::Printed),
            "corrected" => Ok(Variant::Corrected),
            other => Err(Error::InvalidParameter {
                name: "variant",
                reason: format!("unknown variant `{other}` (expected printed or corrected)"),
            }),
        }
    }
}

/// Every bound family, by its report identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    LiYau,
    PolyaRef,
    Melas,
    Kvw,
    PlanarFourTerm,
    BandMt,
    BandGmt,
    LambdaKMt,
    LambdaKGmt,
    LevineProtter,
    ChengWei1,
    ChengWei2,
    ChengWeiUpper,
    YyTse,
    BandClamped,
    GammaK,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::LiYau,
        Family::PolyaRef,
        Family::Melas,
        Family::Kvw,
        Family::PlanarFourTerm,
        Family::BandMt,
        Family::BandGmt,
        Family::LambdaKMt,
        Family::LambdaKGmt,
        Family::LevineProtter,
        Family::ChengWei1,
        Family::ChengWei2,
        Family::ChengWeiUpper,
        Family::YyTse,
        Family::BandClamped,
        Family::GammaK,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::LiYau => "li-yau",
            Family::PolyaRef => "polya-ref",
            Family::Melas => "melas",
            Family::Kvw => "kvw",
            Family::PlanarFourTerm => "planar-four-term",
            Family::BandMt => "band-mt",
            Family::BandGmt => "band-gmt",
            Family::LambdaKMt => "lambda-k-mt",
            Family::LambdaKGmt => "lambda-k-gmt",
            Family::LevineProtter => "levine-protter",
            Family::ChengWei1 => "cheng-wei-1",
            Family::ChengWei2 => "cheng-wei-2",
            Family::ChengWeiUpper => "cheng-wei-upper",
            Family::YyTse => "yy-tse",
            Family::BandClamped => "band-clamped",
            Family::GammaK => "gamma-k",
        }
    }

    pub fn operator(self) -> Operator {
        match self {
            Family::LiYau
            | Family::PolyaRef
            | Family::Melas
            | Family::Kvw
            | Family::PlanarFourTerm
            | Family::BandMt
            | Family::BandGmt
            | Family::LambdaKMt
            | Family::LambdaKGmt => Operator::Laplace,
            _ => Operator::Bilaplace,
        }
    }

    /// Families whose violation against an exact oracle fails a campaign.
    pub fn must_hold(self) -> bool {
        matches!(
            self,
            Family::LiYau | Family::PlanarFourTerm | Family::LevineProtter | Family::ChengWei2 | Family::YyTse
        )
    }

    /// Per-eigenvalue families are compared with λ_k (Γ_k) rather than the partial sum.
    pub fn per_eigenvalue(self) -> bool {
        matches!(self, Family::PolyaRef | Family::LambdaKMt | Family::LambdaKGmt | Family::GammaK)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter { name: "family", reason: format!("unknown family id `{s}`") })
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct BoundFlags {
    pub per_eigenvalue: bool,
    pub conjectural: bool,
    /// Evaluated outside the dimensions the source inequality is stated for.
    pub out_of_hypothesis: bool,
    pub variant: Option<Variant>,
    /// Band policy label, or `a=<value>` for a fixed band.
    pub band: Option<String>,
}

/// A bound on Σ_{i≤k} of the eigenvalues (or on the k-th one when `flags.per_eigenvalue`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEvaluation<T> {
    pub family: Family,
    pub operator: Operator,
    pub direction: Direction,
    pub k: u64,
    /// Compensated sum of `terms`.
    pub value: T,
    pub terms: Vec<(String, T)>,
    /// Leading terms of the asymptotic theorem the family refines; informational, not summed.
    pub reference_terms: Vec<(String, T)>,
    pub flags: BoundFlags,
}

/// Same shape for clamped-plate bounds; `direction` distinguishes the upper family.
pub type ClampedBoundEvaluation<T> = BoundEvaluation<T>;

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<T: Scalar> BoundEvaluation<T> {
    pub(crate) fn new(family: Family, k: u64, terms: Vec<(&str, T)>) -> Self {
        let terms: Vec<(String, T)> = terms.into_iter().map(|(l, v)| (l.to_string(), v)).collect();
        BoundEvaluation {
            family,
            operator: family.operator(),
            direction: Direction::Lower,
            k,
            value: compensated_sum(terms.iter().map(|t| t.1)),
            terms,
            reference_terms: Vec::new(),
            flags: BoundFlags { per_eigenvalue: family.per_eigenvalue(), ..BoundFlags::default() },
        }
    }

    pub fn term(&self, label: &str) -> Option<T> {
        self.terms.iter().find(|t| t.0 == label).map(|t| t.1)
    }

    /// The same bound with every term divided by k: the per-eigenvalue form.
    pub(crate) fn per_eigenvalue_of(mut self, family: Family) -> Self {
        let kf = from_u64::<T>(self.k);
        for t in self.terms.iter_mut().chain(self.reference_terms.iter_mut()) {
            t.1 = t.1 / kf;
        }
        self.value = compensated_sum(self.terms.iter().map(|t| t.1));
        self.family = family;
        self.flags.per_eigenvalue = true;
        self
    }
}

/// User constants and options shared by the family dispatcher.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams<T> {
    pub c_n: Option<T>,
    pub a0: Option<T>,
    pub kvw_c: Option<T>,
    pub m: Option<u32>,
    pub r0: Option<T>,
    pub v_shell: Option<T>,
    pub band: BandChoice<T>,
    pub variant: Variant,
    pub tiling: bool,
}

impl<T> Default for FamilyParams<T> {
    fn default() -> Self {
        FamilyParams {
            c_n: None,
            a0: None,
            kvw_c: None,
            m: None,
            r0: None,
            v_shell: None,
            band: BandChoice::default(),
            variant: Variant::default(),
            tiling: false,
        }
    }
}

fn require<T: Copy>(value: Option<T>, name: &'static str, family: Family) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameter { name, reason: format!("required by `{family}`") })
}

/// Names of the parameters `family` cannot be evaluated without.
pub fn required_params(family: Family) -> &'static [&'static str] {
    match family {
        Family::Melas => &["c_n"],
        Family::Kvw => &["a0", "c"],
        Family::BandGmt | Family::LambdaKGmt | Family::BandClamped | Family::GammaK => &["m"],
        Family::ChengWeiUpper => &["r0", "v_shell"],
        _ => &[],
    }
}

/// Evaluates any family by id.
pub fn evaluate<T: Scalar>(
    family: Family,
    c: &SpectralConstants<T>,
    k: u64,
    p: &FamilyParams<T>,
) -> Result<BoundEvaluation<T>> {
    match family {
        Family::LiYau => li_yau_sum(c, k),
        Family::PolyaRef => polya_reference(c, k, p.tiling),
        Family::Melas => melas_sum(c, k, require(p.c_n, "c_n", family)?),
        Family::Kvw => kvw_sum(c, k, require(p.a0, "a0", family)?, require(p.kvw_c, "c", family)?),
        Family::PlanarFourTerm => planar_four_term_sum(c, k),
        Family::BandMt => band_mt_sum(c, k, p.band, p.variant),
        Family::BandGmt => band_gmt_sum(c, k, require(p.m, "m", family)?, p.band, p.variant),
        Family::LambdaKMt => lambda_k_lower(c, k, LambdaSource::Mt, p.band, p.variant),
        Family::LambdaKGmt => lambda_k_lower(c, k, LambdaSource::Gmt(require(p.m, "m", family)?), p.band, p.variant),
        Family::LevineProtter => levine_protter_sum(c, k),
        Family::ChengWei1 => cheng_wei_sum(c, k, 1),
        Family::ChengWei2 => cheng_wei_sum(c, k, 2),
        Family::ChengWeiUpper => {
            cheng_wei_upper(c, k, require(p.r0, "r0", family)?, require(p.v_shell, "v_shell", family)?)
        }
        Family::YyTse => yy_tse_sum(c, k),
        Family::BandClamped => band_clamped_sum(c, k, require(p.m, "m", family)?, p.band, p.variant),
        Family::GammaK => gamma_k_lower(c, k, require(p.m, "m", family)?, p.band, p.variant),
    }
}

pub(crate) fn require_k(k: u64, family: Family) -> Result<()> {
    if k == 0 {
        return Err(Error::Constraint { what: family.as_str(), constraint: "k >= 1".into() });
    }
    Ok(())
}

pub(crate) fn require_dimension<T>(c: &SpectralConstants<T>, family: Family, ok: bool, expected: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension { family: family.as_str(), dimension: c.n, expected: expected.into() })
    }
}

/// Band for the Laplace lemmas (n_eff = n) or the clamped lemma (n_eff = n + 3).
pub(crate) fn resolve_band<T: Scalar>(
    c: &SpectralConstants<T>,
    k: u64,
    choice: BandChoice<T>,
    clamped: bool,
) -> Result<BandData<T>> {
    let n = c.n as u32;
    let n_eff = if clamped { n + 3 } else { n };
    match choice {
        BandChoice::Fixed(a) => BandData::from_parameter(n_eff, a),
        BandChoice::Policy(policy) => {
            let mass = normalized_mass(c, k, policy)?;
            let target =
                if clamped { mass.powf(from_u64::<T>(u64::from(n + 3)) / from_u64::<T>(u64::from(n))) } else { mass };
            solve_band_parameter(n_eff, target)
        }
    }
}

/// x^{num/den} for the rational exponents that appear in every family.
pub(crate) fn rpow<T: Scalar>(x: T, num: i64, den: i64) -> T {
    if num % den == 0 {
        x.powi((num / den) as i32)
    } else {
        x.powf(lit::<T>(num as f64) / lit(den as f64))
    }
}
