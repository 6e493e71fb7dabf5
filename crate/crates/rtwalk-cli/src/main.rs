//! Command-line runner: spectra, verification suites, theorem bounds and
//! simulations, exported as CSV or JSON with embedded manifests.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error, 3 resource cap.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rtwalk::cutoff::{cutoff_times, zone_references};
use rtwalk::mixing::ChainKind;
use rtwalk::montecarlo::{run_statistics, SimulationConfig, StepRule};
use rtwalk::report::{
    curves_csv, curves_json, spectrum_csv, spectrum_json, stats_csv, stats_json,
    write_csv_with_manifest, write_text, Manifest,
};
use rtwalk::spectrum::full_spectrum_capped;
use rtwalk::sweep::{curve_to_f64, sweep, CurveKind, SweepConfig};
use rtwalk::{DoubleDouble, Error, RestrictionVector, TwoStepParams};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rtwalk",
    about = "Spectra and mixing analysis of restricted random transposition walks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (default: hardware concurrency).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full eigenvalue multiset of one restriction vector.
    Spectrum(SpectrumArgs),
    /// Run the built-in verification suite.
    Verify(VerifyArgs),
    /// Evaluate theorem times and bound curves for a two-step instance.
    Bounds(BoundsArgs),
    /// Simulate trajectories and report walk statistics.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct InstanceArgs {
    /// Board size of a two-step instance.
    #[arg(long, requires = "f", requires = "g", conflicts_with = "b")]
    n: Option<u64>,
    /// Number of unrestricted rows.
    #[arg(long, requires = "n")]
    f: Option<u64>,
    /// Restriction level of the remaining rows (their bound is g+1).
    #[arg(long, requires = "n")]
    g: Option<u64>,
    /// Explicit restriction vector, comma separated (e.g. 1,1,1,3,3).
    #[arg(long, value_delimiter = ',')]
    b: Option<Vec<u32>>,
}

impl InstanceArgs {
    fn vector(&self) -> Result<RestrictionVector, Error> {
        match (&self.b, self.n, self.f, self.g) {
            (Some(bounds), None, _, _) => RestrictionVector::new(bounds.clone()),
            (None, Some(n), Some(f), Some(g)) => Ok(TwoStepParams::new(n, f, g)?.vector()),
            _ => Err(Error::InvalidInput(
                "give either --b or all of --n --f --g".into(),
            )),
        }
    }

    fn params_json(&self) -> serde_json::Value {
        match (&self.b, self.n, self.f, self.g) {
            (Some(bounds), ..) => json!({ "b": bounds }),
            (None, Some(n), Some(f), Some(g)) => json!({ "n": n, "f": f, "g": g }),
            _ => json!({}),
        }
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Chain enumeration cap (default from RTWALK_CAP or 10^7).
    #[arg(long)]
    cap: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// quick: printed-example reproduction and small-size completeness;
    /// full: every documented check at its stated size.
    #[arg(long, default_value = "quick")]
    level: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    f: u64,
    #[arg(long)]
    g: u64,
    /// Window constants for the theorem times, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "4,12")]
    c: Vec<f64>,
    /// Step grid lo:hi:step; default spans the cutoff window.
    #[arg(long)]
    t_grid: Option<String>,
    /// Curve kinds to evaluate, comma separated.
    #[arg(long, value_delimiter = ',')]
    kinds: Option<Vec<String>>,
    /// Transition chain used by the exact curve kinds.
    #[arg(long, default_value = "lazy")]
    kind: String,
    /// State/chain cap for the exact curve kinds (default from RTWALK_CAP).
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct SimulateArgs {
    /// JSON config file mirroring the simulate flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    instance: InstanceArgs,
    /// Horizon (steps).
    #[arg(long)]
    t: Option<u64>,
    /// Recording times lo:hi:step; default records only the horizon.
    #[arg(long)]
    t_grid: Option<String>,
    #[arg(long)]
    reps: Option<u64>,
    #[arg(long, default_value = "1")]
    seed: u64,
    /// Step rule realizing the lazy chain.
    #[arg(long, default_value = "direct")]
    rule: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

fn parse_grid(spec: &str) -> Result<Vec<u64>, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = |s: &str| Error::InvalidInput(format!("bad t-grid: {s}"));
    match parts.as_slice() {
        [single] => Ok(vec![single.parse().map_err(|_| bad(spec))?]),
        [lo, hi] | [lo, hi, _] => {
            let lo: u64 = lo.parse().map_err(|_| bad(spec))?;
            let hi: u64 = hi.parse().map_err(|_| bad(spec))?;
            let step: u64 = if parts.len() == 3 {
                parts[2].parse().map_err(|_| bad(spec))?
            } else {
                1
            };
            if step == 0 || hi < lo {
                return Err(bad(spec));
            }
            Ok((lo..=hi).step_by(step as usize).collect())
        }
        _ => Err(bad(spec)),
    }
}

fn env_cap() -> Option<u64> {
    std::env::var("RTWALK_CAP").ok().and_then(|s| s.parse().ok())
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<(), Error> {
    let vector = args.instance.vector()?;
    let cap = args
        .cap
        .or_else(env_cap)
        .unwrap_or(rtwalk::spectrum::DEFAULT_CHAIN_CAP);
    let spec = full_spectrum_capped(&vector, cap)?;
    let manifest = Manifest::new("spectrum", args.instance.params_json());
    let second = spec
        .second_eig()
        .map(|e| e.to_string())
        .unwrap_or_else(|| "-".into());
    eprintln!(
        "|S_M| = {}, delta = {}, max eig = {}, second = {}",
        spec.total_dim,
        spec.delta,
        spec.max_eig(),
        second
    );
    match args.format {
        Format::Csv => write_csv_with_manifest(args.out.as_deref(), &spectrum_csv(&spec), &manifest),
        Format::Json => {
            let v = spectrum_json(&spec, &manifest);
            write_text(
                args.out.as_deref(),
                &(serde_json::to_string_pretty(&v).expect("serializable") + "\n"),
            )
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, Error> {
    let outcomes = match args.level.as_str() {
        "quick" => rtwalk::checks::quick_suite(),
        "full" => rtwalk::checks::full_suite(),
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown level {other}; use quick or full"
            )));
        }
    };
    let all_passed = outcomes.iter().all(|o| o.passed);
    match args.format {
        Format::Json => {
            let v = json!({
                "manifest": Manifest::new("verify", json!({"level": args.level})),
                "passed": all_passed,
                "checks": outcomes.iter().map(|o| json!({
                    "name": o.name,
                    "passed": o.passed,
                    "details": o.details,
                    "elapsed_ms": o.elapsed.as_millis() as u64,
                })).collect::<Vec<_>>(),
            });
            write_text(
                args.out.as_deref(),
                &(serde_json::to_string_pretty(&v).expect("serializable") + "\n"),
            )?;
        }
        Format::Csv => {
            let mut out = String::from("check,passed,elapsed_ms,details\n");
            for o in &outcomes {
                out.push_str(&format!(
                    "{},{},{},\"{}\"\n",
                    o.name,
                    o.passed,
                    o.elapsed.as_millis(),
                    o.details.replace('"', "'")
                ));
            }
            write_text(args.out.as_deref(), &out)?;
        }
    }
    for o in &outcomes {
        eprintln!(
            "[{}] {} ({} ms): {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.elapsed.as_millis(),
            o.details
        );
    }
    Ok(all_passed)
}

fn cmd_bounds(args: &BoundsArgs) -> Result<(), Error> {
    let params = TwoStepParams::new(args.n, args.f, args.g)?;
    let times: Vec<_> = args
        .c
        .iter()
        .map(|&c| cutoff_times(&params, c))
        .collect::<Result<_, _>>()?;
    let window = params.n_plus_two_delta() as f64 / (4.0 * params.f as f64);
    let center = window * ((params.f as f64).ln() + (params.g as f64).ln());
    let t_grid = match &args.t_grid {
        Some(s) => parse_grid(s)?,
        None => {
            // span the cutoff window from c = -5 to c = 15
            (-5..=15)
                .map(|c| (center + c as f64 * window).max(0.0).ceil() as u64)
                .collect()
        }
    };
    let kinds = match &args.kinds {
        Some(list) => list
            .iter()
            .map(|s| CurveKind::parse(s))
            .collect::<Result<Vec<_>, _>>()?,
        None => vec![
            CurveKind::ChiUpperBound,
            CurveKind::ChiLowerTerm,
            CurveKind::TvLowerBound,
        ],
    };
    let mut cfg = SweepConfig::new(params.vector(), kinds, t_grid);
    if let Some(cap) = args.cap.or_else(env_cap) {
        cfg.state_cap = cap;
        cfg.chain_cap = cap;
    }
    cfg.chain_kind = match args.kind.as_str() {
        "lazy" => ChainKind::Lazy,
        "uniform" => ChainKind::UniformNeighbor,
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown chain kind {other}; use lazy or uniform"
            )));
        }
    };
    let mut curves = Vec::new();
    for (kind, result) in sweep::<DoubleDouble>(&cfg) {
        match result {
            Ok(c) => curves.push(curve_to_f64(&c)),
            Err(e) => eprintln!("curve {} skipped: {e}", kind.name()),
        }
    }
    for t in &times {
        eprintln!(
            "c = {}: t_chi_upper = {:.1}, t_chi_lower = {:.1}, t_tv_lower = {:.1}, t_fast_mix = {:.1}",
            t.c, t.t_chi_upper, t.t_chi_lower, t.t_tv_lower, t.t_fast_mix
        );
    }
    // asymptotic zone forms, reported for comparison with the summed bound
    let zones: Vec<_> = args
        .c
        .iter()
        .map(|&c| zone_references(&params, c))
        .collect();
    let manifest = Manifest::new(
        "bounds",
        json!({"n": args.n, "f": args.f, "g": args.g, "c": args.c}),
    );
    match args.format {
        Format::Csv => {
            let mut csv = String::from("quantity,c,value\n");
            for (t, z) in times.iter().zip(&zones) {
                csv.push_str(&format!("t_chi_upper,{},{}\n", t.c, t.t_chi_upper));
                csv.push_str(&format!("t_chi_lower,{},{}\n", t.c, t.t_chi_lower));
                csv.push_str(&format!("t_tv_lower,{},{}\n", t.c, t.t_tv_lower));
                csv.push_str(&format!("t_fast_mix,{},{}\n", t.c, t.t_fast_mix));
                csv.push_str(&format!("zone_ln_large_k,{},{}\n", t.c, z.ln_large_k));
                csv.push_str(&format!("zone_zero_i,{},{}\n", t.c, z.zero_i));
                csv.push_str(&format!("zone_positive_i,{},{}\n", t.c, z.positive_i));
            }
            csv.push('\n');
            csv.push_str(&curves_csv(&curves));
            write_csv_with_manifest(args.out.as_deref(), &csv, &manifest)
        }
        Format::Json => {
            let mut v = curves_json(&curves, &manifest);
            v["times"] = serde_json::to_value(&times).expect("serializable");
            v["zone_references"] = serde_json::to_value(&zones).expect("serializable");
            write_text(
                args.out.as_deref(),
                &(serde_json::to_string_pretty(&v).expect("serializable") + "\n"),
            )
        }
    }
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), Error> {
    let cfg: SimulationConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("bad config file: {e}")))?
        }
        None => {
            let vector = args.instance.vector()?;
            let horizon = args
                .t
                .ok_or_else(|| Error::InvalidInput("--t is required without --config".into()))?;
            let reps = args
                .reps
                .ok_or_else(|| Error::InvalidInput("--reps is required without --config".into()))?;
            let record_at = match &args.t_grid {
                Some(s) => parse_grid(s)?,
                None => vec![horizon],
            };
            let step_rule = match args.rule.as_str() {
                "direct" => StepRule::Direct,
                "rejection" => StepRule::Rejection,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown rule {other}; use direct or rejection"
                    )));
                }
            };
            SimulationConfig {
                vector,
                horizon,
                record_at,
                reps,
                seed: args.seed,
                step_rule,
            }
        }
    };
    let series = run_statistics(&cfg)?;
    let manifest = Manifest::new(
        "simulate",
        serde_json::to_value(&cfg).expect("config serializes"),
    )
    .with_seed(cfg.seed);
    match args.format {
        Format::Csv => write_csv_with_manifest(args.out.as_deref(), &stats_csv(&series), &manifest),
        Format::Json => write_text(
            args.out.as_deref(),
            &(serde_json::to_string_pretty(&stats_json(&series, &manifest)).expect("serializable")
                + "\n"),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    let result = match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Verify(args) => match cmd_verify(args) {
            Ok(true) => Ok(()),
            Ok(false) => return ExitCode::from(1),
            Err(e) => Err(e),
        },
        Command::Bounds(args) => cmd_bounds(args),
        Command::Simulate(args) => cmd_simulate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
