mod args;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use spectral_lb::bounds::{two_term_onset, two_term_threshold, BoundEvaluation};
use spectral_lb::harness::{
    compare_by_operator, emit_report, exit_code, load_config, oracle_spectrum, run_verification, DomainEntry,
    ReportFormat,
};
use spectral_lb::rearrangement::{kernel_scan_range, run_fuzz, FuzzConfig, KernelKind, KernelPolynomial};
use spectral_lb::spectra::FdOptions;
use spectral_lb::{BandChoice, BandPolicy, Family, Operator, Params, Variant};

#[derive(Parser)]
#[command(name = "spectral-lb", version, about = "Eigenvalue lower bounds and their verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification campaign from a JSON config.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Report path; defaults to the config's outputs.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Defaults to the extension of --out.
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Write per-operator tightness tables as JSON.
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Evaluate one bound family over a range of k.
    Bounds {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        shape: String,
        #[arg(long, default_value = "1..10")]
        k: String,
        #[arg(long)]
        c_n: Option<f64>,
        #[arg(long)]
        a0: Option<f64>,
        /// KVW boundary constant C(a₀).
        #[arg(long = "c")]
        kvw_c: Option<f64>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        r0: Option<f64>,
        #[arg(long)]
        v_shell: Option<f64>,
        #[arg(long)]
        band_a: Option<f64>,
        #[arg(long, default_value = "isoperimetric")]
        band_policy: BandPolicy,
        #[arg(long, default_value = "printed")]
        variant: Variant,
        #[arg(long)]
        tiling: bool,
        #[arg(long)]
        assume_inertia_floor: bool,
        /// Also report where the two-term estimate with this ε takes over (planar-four-term only).
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Print a reference spectrum.
    Spectrum {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value = "laplace")]
        operator: Operator,
        /// Finite-difference grid for the clamped square.
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long)]
        extrapolate: bool,
    },
    /// Grid-certify the one-variable kernels.
    Kernels {
        #[arg(long)]
        kind: KernelKind,
        #[arg(long)]
        n: String,
        /// Defaults to every m valid for each n.
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        m: Vec<u32>,
        #[arg(long, default_value = "0:10:0.001")]
        grid: String,
    },
    /// Fuzz the rearrangement lemmas on random admissible profiles.
    Profiles {
        #[arg(long, default_value = "2..4")]
        n: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_pieces: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_json(path: &PathBuf, value: &impl serde::Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn verify(config: PathBuf, out: Option<PathBuf>, format: Option<Format>, compare: Option<PathBuf>) -> Result<i32> {
    let cfg = load_config(&config)?;
    let records = run_verification(&cfg)?;
    let mut targets = Vec::new();
    match out {
        Some(path) => {
            let fmt = match format {
                Some(Format::Csv) => ReportFormat::Csv,
                Some(Format::Json) => ReportFormat::Json,
                None => ReportFormat::from_path(&path),
            };
            targets.push((path, fmt));
        }
        None => {
            targets.extend(cfg.outputs.csv.clone().map(|p| (p, ReportFormat::Csv)));
            targets.extend(cfg.outputs.json.clone().map(|p| (p, ReportFormat::Json)));
        }
    }
    if targets.is_empty() {
        bail!("no report path: pass --out or set outputs in the config");
    }
    for (path, fmt) in &targets {
        emit_report(&records, *fmt, path)?;
    }
    if let Some(path) = compare {
        write_json(&path, &compare_by_operator(&records)?)?;
    }
    if let Some(fuzz) = cfg.fuzz_config() {
        let summaries = run_fuzz(&fuzz)?;
        match cfg.fuzz.as_ref().and_then(|f| f.out.clone()) {
            Some(path) => write_json(&path, &summaries)?,
            None => println!("{}", serde_json::to_string_pretty(&summaries)?),
        }
    }
    let code = exit_code(&records);
    let violated = records.iter().filter(|r| r.status == spectral_lb::harness::Status::Violated).count();
    eprintln!("{} records, {} violated, exit {}", records.len(), violated, code);
    Ok(code)
}

fn joined(pairs: &[(String, f64)]) -> String {
    pairs.iter().map(|(l, v)| format!("{l}={v}")).collect::<Vec<_>>().join(";")
}

fn flag_list(e: &BoundEvaluation<f64>) -> String {
    let f = &e.flags;
    let mut out = Vec::new();
    if f.per_eigenvalue {
        out.push("per-eigenvalue".to_string());
    }
    if f.conjectural {
        out.push("conjectural".to_string());
    }
    if f.out_of_hypothesis {
        out.push("out-of-hypothesis".to_string());
    }
    if let Some(v) = f.variant {
        out.push(format!("variant={v}"));
    }
    if let Some(b) = &f.band {
        out.push(format!("band={b}"));
    }
    out.join(";")
}

#[allow(clippy::too_many_arguments)]
fn bounds(
    family: Family,
    shape: &str,
    k: &str,
    params: Params,
    assume_inertia_floor: bool,
    epsilon: Option<f64>,
) -> Result<()> {
    let domain = args::parse_shape(shape)?;
    let range = args::parse_range(k)?;
    let mut constants = domain.constants()?;
    if assume_inertia_floor && constants.inertia.is_none() {
        constants = constants.with_inertia_floor()?;
    }
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    writeln!(w, "family,operator,direction,k,value,terms,flags")?;
    for k in range.clone() {
        let e = spectral_lb::evaluate(family, &constants, k, &params)?;
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            e.family,
            e.operator,
            e.direction,
            e.k,
            e.value,
            joined(&e.terms),
            flag_list(&e)
        )?;
    }
    if let Some(eps) = epsilon {
        if family != Family::PlanarFourTerm {
            bail!("--epsilon applies to planar-four-term only");
        }
        let onset = two_term_onset(eps, *range.end());
        eprintln!(
            "two-term onset for eps={eps}: {} (stated threshold {})",
            onset.map_or("not reached".to_string(), |k0| format!("k0={k0}")),
            two_term_threshold(eps)
        );
    }
    Ok(())
}

fn spectrum(shape: &str, count: usize, operator: Operator, grid: usize, extrapolate: bool) -> Result<()> {
    let domain = args::parse_shape(shape)?;
    let entry =
        DomainEntry { label: shape.to_string(), domain, tiling: false, fd: Some(FdOptions { grid, extrapolate }) };
    let spectrum = match oracle_spectrum(&entry, operator, count) {
        Some(s) => s?,
        None => bail!("no {operator} oracle for `{shape}`"),
    };
    if spectrum.len() < count {
        eprintln!("only {} eigenvalues resolved", spectrum.len());
    }
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    writeln!(w, "index,eigenvalue,prefix_sum,provenance")?;
    for (i, (ev, sum)) in spectrum.eigenvalues.iter().zip(&spectrum.prefix_sums).enumerate() {
        writeln!(w, "{},{},{},{}", i + 1, ev, sum, spectrum.provenance)?;
    }
    Ok(())
}

fn kernels(kind: KernelKind, n: &str, ms: &[u32], grid: &str) -> Result<()> {
    let (lo, hi, step) = args::parse_grid(grid)?;
    let ns = args::parse_range(n)?;
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    writeln!(w, "kind,n,m,min,argmin,points,f_at_1")?;
    for n in ns {
        let n = u32::try_from(n).context("n out of range")?;
        let pairs: Vec<(u32, u32)> =
            if ms.is_empty() { kind.table(n..=n) } else { ms.iter().map(|&m| (n, m)).collect() };
        if pairs.is_empty() {
            eprintln!("{kind}: no valid m for n={n}");
        }
        for (n, m) in pairs {
            let scan = kernel_scan_range(kind, n, m, lo, hi, step)?;
            let at_one: f64 = KernelPolynomial::new(kind, n, m)?.eval(1.0);
            writeln!(w, "{kind},{n},{m},{},{},{},{}", scan.min, scan.argmin, scan.points, at_one)?;
        }
    }
    Ok(())
}

fn profiles(n: &str, trials: u64, seed: u64, max_pieces: u32, out: Option<PathBuf>) -> Result<()> {
    let dimensions = args::parse_range(n)?
        .map(|d| u32::try_from(d).context("dimension out of range"))
        .collect::<Result<Vec<_>>>()?;
    let summaries = run_fuzz(&FuzzConfig { seed, trials, dimensions, max_pieces })?;
    match out {
        Some(path) => write_json(&path, &summaries),
        None => {
            println!("{}", serde_json::to_string_pretty(&summaries)?);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify { config, out, format, compare } => verify(config, out, format, compare),
        Command::Bounds {
            family,
            shape,
            k,
            c_n,
            a0,
            kvw_c,
            m,
            r0,
            v_shell,
            band_a,
            band_policy,
            variant,
            tiling,
            assume_inertia_floor,
            epsilon,
        } => {
            let band = band_a.map_or(BandChoice::Policy(band_policy), BandChoice::Fixed);
            let params = Params { c_n, a0, kvw_c, m, r0, v_shell, band, variant, tiling };
            bounds(family, &shape, &k, params, assume_inertia_floor, epsilon).map(|()| 0)
        }
        Command::Spectrum { shape, count, operator, grid, extrapolate } => {
            spectrum(&shape, count, operator, grid, extrapolate).map(|()| 0)
        }
        Command::Kernels { kind, n, m, grid } => kernels(kind, &n, &m, &grid).map(|()| 0),
        Command::Profiles { n, trials, seed, max_pieces, out } => {
            profiles(&n, trials, seed, max_pieces, out).map(|()| 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        // Exit status 1 is reserved for must-hold violations, so every failure maps to 2.
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
