use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bounds::{evaluate, BoundEvaluation, Family};
use crate::error::Error;
use crate::geometry::{Shape, SpectralConstants};
use crate::harness::config::{CampaignConfig, DomainEntry, PlannedFamily};
use crate::harness::HarnessError;
use crate::operator::{Direction, Operator};
use crate::spectra::{ball_spectrum, beam_spectrum, box_spectrum, fd_clamped_square, Spectrum};

/// Absolute slack added to every margin test.
pub const ABS_TOLERANCE: f64 = 1e-9;

/// Environment variable capping the worker threads of a campaign; unset or 0 means all cores.
pub const THREADS_ENV: &str = "SPECTRAL_LB_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Holds,
    Violated,
    NoOracle,
    OutOfHypothesis,
    /// Evaluation failed; carries the error label.
    Error(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Holds => f.write_str("HOLDS"),
            Status::Violated => f.write_str("VIOLATED"),
            Status::NoOracle => f.write_str("NO_ORACLE"),
            Status::OutOfHypothesis => f.write_str("OUT_OF_HYPOTHESIS"),
            Status::Error(label) => write!(f, "ERROR:{label}"),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One (domain, family, k) row of a verification campaign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub domain: String,
    pub operator: Operator,
    pub family: Family,
    pub k: u64,
    pub bound: Option<f64>,
    pub oracle: Option<f64>,
    /// Positive when the bound is respected: oracle − bound for lower bounds, bound − oracle for upper.
    pub margin: Option<f64>,
    pub ratio: Option<f64>,
    pub status: Status,
    pub params: String,
    /// Whether the oracle is exact or root-found (as opposed to discretized).
    #[serde(skip)]
    pub exact_oracle: bool,
}

impl VerificationRecord {
    fn sort_key(&self) -> (&str, &str, &str, &str, u64) {
        (&self.domain, self.operator.as_str(), self.family.as_str(), &self.params, self.k)
    }
}

/// 0 when no must-hold family is violated against an exact oracle, 1 otherwise.
pub fn exit_code(records: &[VerificationRecord]) -> i32 {
    let failed = records.iter().any(|r| r.status == Status::Violated && r.exact_oracle && r.family.must_hold());
    i32::from(failed)
}

/// Reference spectrum for a domain, if one of the oracles covers it.
pub fn oracle_spectrum(entry: &DomainEntry, operator: Operator, count: usize) -> Option<Result<Spectrum<f64>, Error>> {
    let d = &entry.domain;
    match (operator, &d.shape, d.dimension) {
        (Operator::Laplace, Shape::Box(lengths), _) => Some(box_spectrum(lengths, count)),
        (Operator::Laplace, Shape::Ball(r), 1) => Some(box_spectrum(&[2.0 * r], count)),
        (Operator::Laplace, Shape::Ball(r), n @ (2 | 3)) => Some(ball_spectrum(n, *r, count)),
        (Operator::Bilaplace, Shape::Box(lengths), 1) => Some(beam_spectrum(lengths[0], count)),
        (Operator::Bilaplace, Shape::Ball(r), 1) => Some(beam_spectrum(2.0 * r, count)),
        (Operator::Bilaplace, Shape::Box(lengths), 2) if lengths[0] == lengths[1] => {
            let opts = entry.fd?;
            let side = lengths[0];
            let resolved = if opts.extrapolate {
                (opts.grid / 2).saturating_sub(1).pow(2)
            } else {
                opts.grid.saturating_sub(1).pow(2)
            };
            let count = count.min(resolved.max(1));
            Some(fd_clamped_square::<f64>(opts, count).map(|s| s.scaled(side.powi(-4))))
        }
        _ => None,
    }
}

fn classify(
    eval: &BoundEvaluation<f64>,
    oracle: Option<&Spectrum<f64>>,
) -> (Option<f64>, Option<f64>, Option<f64>, Status, bool) {
    let value = eval.value;
    let Some(spectrum) = oracle else {
        let status = if eval.flags.out_of_hypothesis { Status::OutOfHypothesis } else { Status::NoOracle };
        return (None, None, None, status, false);
    };
    let reference = if eval.flags.per_eigenvalue { spectrum.eigenvalue(eval.k) } else { spectrum.partial_sum(eval.k) };
    let Some(reference) = reference else {
        let status = if eval.flags.out_of_hypothesis { Status::OutOfHypothesis } else { Status::NoOracle };
        return (None, None, None, status, false);
    };
    let margin = match eval.direction {
        Direction::Lower => reference - value,
        Direction::Upper => value - reference,
    };
    let ratio = value / reference;
    let allowed = ABS_TOLERANCE + spectrum.provenance.rel_tol() * reference.abs();
    let status = if eval.flags.out_of_hypothesis {
        Status::OutOfHypothesis
    } else if margin < -allowed {
        Status::Violated
    } else {
        Status::Holds
    };
    (Some(reference), Some(margin), Some(ratio), status, spectrum.provenance.is_exact())
}

struct DomainPlan<'a> {
    entry: &'a DomainEntry,
    constants: Result<SpectralConstants<f64>, Error>,
    laplace: Option<Result<Spectrum<f64>, Error>>,
    bilaplace: Option<Result<Spectrum<f64>, Error>>,
}

impl DomainPlan<'_> {
    fn oracle(&self, operator: Operator) -> Option<&Result<Spectrum<f64>, Error>> {
        match operator {
            Operator::Laplace => self.laplace.as_ref(),
            Operator::Bilaplace => self.bilaplace.as_ref(),
        }
    }
}

fn evaluate_row(plan: &DomainPlan<'_>, fam: &PlannedFamily, k: u64) -> VerificationRecord {
    let operator = fam.family.operator();
    let mut record = VerificationRecord {
        domain: plan.entry.label.clone(),
        operator,
        family: fam.family,
        k,
        bound: None,
        oracle: None,
        margin: None,
        ratio: None,
        status: Status::NoOracle,
        params: fam.params_label.clone(),
        exact_oracle: false,
    };
    let constants = match &plan.constants {
        Ok(c) => c,
        Err(e) => {
            record.status = Status::Error(e.label().to_string());
            return record;
        }
    };
    let mut params = fam.params.clone();
    params.tiling = plan.entry.tiling;
    let eval = match evaluate(fam.family, constants, k, &params) {
        Ok(e) => e,
        Err(e) => {
            record.status = Status::Error(e.label().to_string());
            return record;
        }
    };
    record.bound = Some(eval.value);
    let oracle = match plan.oracle(operator) {
        Some(Ok(s)) => Some(s),
        Some(Err(e)) => {
            record.status = Status::Error(format!("oracle-{}", e.label()));
            return record;
        }
        None => None,
    };
    let (reference, margin, ratio, status, exact) = classify(&eval, oracle);
    record.oracle = reference;
    record.margin = margin;
    record.ratio = ratio;
    record.status = status;
    record.exact_oracle = exact;
    record
}

fn thread_pool() -> Result<rayon::ThreadPool, HarnessError> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| HarnessError::Config {
            field: THREADS_ENV.into(),
            reason: format!("`{v}` is not a thread count"),
        })?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| HarnessError::Config { field: THREADS_ENV.into(), reason: e.to_string() })
}

/// Evaluates every (domain, family, k) of the campaign against the available oracles.
///
/// Records come back sorted by domain, operator, family, parameters and k, so the output
/// does not depend on thread scheduling.
pub fn run_verification(cfg: &CampaignConfig) -> Result<Vec<VerificationRecord>, HarnessError> {
    cfg.validate()?;
    let families = cfg.plan()?;
    let pool = thread_pool()?;
    let max_k = |op: Operator| families.iter().filter(|f| f.family.operator() == op).map(|f| f.k_range[1]).max();
    let (lap_k, bil_k) = (max_k(Operator::Laplace), max_k(Operator::Bilaplace));
    let mut records = pool.install(|| {
        let plans: Vec<DomainPlan<'_>> = cfg
            .domains
            .par_iter()
            .map(|entry| {
                let constants = entry.domain.constants().and_then(|c| {
                    if cfg.assume_inertia_floor && c.inertia.is_none() {
                        c.with_inertia_floor()
                    } else {
                        Ok(c)
                    }
                });
                let oracle = |op, k: Option<u64>| k.and_then(|k| oracle_spectrum(entry, op, k as usize));
                DomainPlan {
                    entry,
                    constants,
                    laplace: oracle(Operator::Laplace, lap_k),
                    bilaplace: oracle(Operator::Bilaplace, bil_k),
                }
            })
            .collect();
        let jobs: Vec<(&DomainPlan<'_>, &PlannedFamily, u64)> = plans
            .iter()
            .flat_map(|p| families.iter().flat_map(move |f| (f.k_range[0]..=f.k_range[1]).map(move |k| (p, f, k))))
            .collect();
        jobs.into_par_iter().map(|(p, f, k)| evaluate_row(p, f, k)).collect::<Vec<_>>()
    });
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(records)
}
