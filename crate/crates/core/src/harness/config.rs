use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bounds::{required_params, Family, FamilyParams, Variant};
use crate::geometry::DomainSpec;
use crate::harness::HarnessError;
use crate::operator::Operator;
use crate::rearrangement::{BandChoice, BandPolicy, FuzzConfig};
use crate::spectra::FdOptions;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainEntry {
    pub label: String,
    pub domain: DomainSpec<f64>,
    /// Marks a planar tiling domain, where the per-eigenvalue Weyl bound is a theorem.
    #[serde(default)]
    pub tiling: bool,
    /// Enables the finite-difference plate oracle (unit-aspect squares only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fd: Option<FdOptions>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_n: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a0: Option<f64>,
    /// KVW boundary constant C(a₀).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_shell: Option<f64>,
    /// Fixed band parameter; overrides the band policy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band_policy: Option<BandPolicy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_range: Option<[u64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default = "default_dimensions")]
    pub dimensions: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

fn default_trials() -> u64 {
    1000
}

fn default_dimensions() -> Vec<u32> {
    vec![2, 3, 4]
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub domains: Vec<DomainEntry>,
    /// When present, every family must target one of these operators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operators: Option<Vec<Operator>>,
    pub families: Vec<FamilyEntry>,
    #[serde(default = "default_k_range")]
    pub k_range: [u64; 2],
    #[serde(default)]
    pub band_policy: BandPolicy,
    #[serde(default)]
    pub variant: Variant,
    #[serde(default)]
    pub assume_inertia_floor: bool,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuzz: Option<FuzzEntry>,
    #[serde(default)]
    pub outputs: Outputs,
}

fn default_k_range() -> [u64; 2] {
    [1, 100]
}

/// A family entry resolved against the campaign defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct PlannedFamily {
    pub family: Family,
    pub params: FamilyParams<f64>,
    pub k_range: [u64; 2],
    /// `key=value` pairs separated by `;`, echoed into every record.
    pub params_label: String,
}

fn config_error(field: impl Into<String>, reason: impl Into<String>) -> HarnessError {
    HarnessError::Config { field: field.into(), reason: reason.into() }
}

fn check_range(field: String, [lo, hi]: [u64; 2]) -> Result<(), HarnessError> {
    if lo == 0 || hi < lo {
        return Err(config_error(field, format!("[{lo}, {hi}] must satisfy 1 <= lo <= hi")));
    }
    Ok(())
}

impl CampaignConfig {
    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let cfg: CampaignConfig = serde_json::from_str(text).map_err(|e| config_error("config", e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.domains.is_empty() {
            return Err(config_error("domains", "at least one domain is required"));
        }
        let mut labels = BTreeSet::new();
        for (i, d) in self.domains.iter().enumerate() {
            if !labels.insert(d.label.as_str()) {
                return Err(config_error(format!("domains[{i}].label"), format!("duplicate label `{}`", d.label)));
            }
            d.domain.validate().map_err(|e| config_error(format!("domains[{i}].domain"), e.to_string()))?;
        }
        check_range("k_range".into(), self.k_range)?;
        if self.families.is_empty() {
            return Err(config_error("families", "at least one family is required"));
        }
        self.plan().map(|_| ())
    }

    /// Families with defaults applied, in config order.
    pub fn plan(&self) -> Result<Vec<PlannedFamily>, HarnessError> {
        self.families.iter().enumerate().map(|(i, f)| self.plan_one(i, f)).collect()
    }

    fn plan_one(&self, i: usize, f: &FamilyEntry) -> Result<PlannedFamily, HarnessError> {
        let field = |name: &str| format!("families[{i}].{name}");
        let family: Family =
            f.id.parse().map_err(|_| config_error(field("id"), format!("unknown family id `{}`", f.id)))?;
        if let Some(ops) = &self.operators {
            if !ops.contains(&family.operator()) {
                return Err(config_error(
                    field("id"),
                    format!("`{family}` targets {} which is not listed in operators", family.operator()),
                ));
            }
        }
        for &name in required_params(family) {
            let present = match name {
                "c_n" => f.c_n.is_some(),
                "a0" => f.a0.is_some(),
                "c" => f.c.is_some(),
                "m" => f.m.is_some(),
                "r0" => f.r0.is_some(),
                "v_shell" => f.v_shell.is_some(),
                _ => true,
            };
            if !present {
                return Err(config_error(field(name), format!("family `{family}` requires `{name}`")));
            }
        }
        let k_range = f.k_range.unwrap_or(self.k_range);
        check_range(field("k_range"), k_range)?;
        let variant = f.variant.unwrap_or(self.variant);
        let band = match f.band_a {
            Some(a) if !(a >= 0.0 && a.is_finite()) => {
                return Err(config_error(field("band_a"), format!("{a} is not a finite a >= 0")))
            }
            Some(a) => BandChoice::Fixed(a),
            None => BandChoice::Policy(f.band_policy.unwrap_or(self.band_policy)),
        };
        let params = FamilyParams {
            c_n: f.c_n,
            a0: f.a0,
            kvw_c: f.c,
            m: f.m,
            r0: f.r0,
            v_shell: f.v_shell,
            band,
            variant,
            tiling: false,
        };
        let mut parts: Vec<String> = Vec::new();
        let uses_band = matches!(
            family,
            Family::BandMt
                | Family::BandGmt
                | Family::LambdaKMt
                | Family::LambdaKGmt
                | Family::BandClamped
                | Family::GammaK
        );
        if uses_band {
            parts.push(format!("variant={variant}"));
            parts.push(format!("band={}", band.label()));
        }
        for (name, value) in [("c_n", f.c_n), ("a0", f.a0), ("c", f.c), ("r0", f.r0), ("v_shell", f.v_shell)] {
            if let Some(v) = value {
                parts.push(format!("{name}={v}"));
            }
        }
        if let Some(m) = f.m {
            parts.push(format!("m={m}"));
        }
        Ok(PlannedFamily { family, params, k_range, params_label: parts.join(";") })
    }

    pub fn fuzz_config(&self) -> Option<FuzzConfig> {
        self.fuzz.as_ref().map(|f| FuzzConfig {
            seed: f.seed.unwrap_or(self.seed),
            trials: f.trials,
            dimensions: f.dimensions.clone(),
            ..FuzzConfig::default()
        })
    }

    /// Number of records a campaign produces.
    pub fn planned_records(&self) -> Result<u64, HarnessError> {
        let per_domain: u64 = self.plan()?.iter().map(|p| p.k_range[1] - p.k_range[0] + 1).sum();
        Ok(per_domain * self.domains.len() as u64)
    }
}

pub fn load_config(path: impl AsRef<Path>) -> Result<CampaignConfig, HarnessError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io { path: path.to_path_buf(), source })?;
    CampaignConfig::from_json(&text)
}
