use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};
use hcconfl_core::{
    benchmark_name, merge_instances, parse_stp, parse_tiny, parse_uflp, report_csv, report_markdown, run_repeats,
    Algorithm, Instance, SolverConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Hs,
    Ghs,
    Hybrid,
    Oracle,
}

impl From<Algo> for Algorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Hs => Algorithm::Hs,
            Algo::Ghs => Algorithm::Ghs,
            Algo::Hybrid => Algorithm::Hybrid,
            Algo::Oracle => Algorithm::Oracle,
        }
    }
}

/// Solve hop-constrained connected facility location instances and report
/// one CSV row per run.
#[derive(Debug, Parser)]
#[command(name = "hcconfl", version)]
struct Args {
    /// Steiner graph file (OR-Library layout).
    #[arg(long, requires = "uflp", conflicts_with = "tiny", required_unless_present = "tiny")]
    stp: Option<PathBuf>,

    /// Facility location file (OR-Library or UflLib layout).
    #[arg(long, requires = "stp")]
    uflp: Option<PathBuf>,

    /// Self-contained instance in the tiny text format.
    #[arg(long)]
    tiny: Option<PathBuf>,

    /// Hop limit; required with --stp/--uflp, overrides the tiny header.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), required_unless_present = "tiny")]
    hop: Option<u32>,

    #[arg(long, value_enum, default_value_t = Algo::Ghs)]
    algo: Algo,

    /// Master seed; repeat `i` uses `seed + i`.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    repeats: u64,

    /// Harmony memory size (hs; ghs uses 150 unless set).
    #[arg(long)]
    hms: Option<usize>,

    /// Initial memory consideration rate.
    #[arg(long)]
    hmcr: Option<f64>,

    #[arg(long)]
    max_no_improve: Option<usize>,

    /// Open-facility cap for greedy closing (ghs).
    #[arg(long)]
    max_open: Option<usize>,

    /// Facilities searched exhaustively by the hybrid, root included.
    #[arg(long)]
    top_k: Option<usize>,

    /// Random vectors sampled by the hybrid.
    #[arg(long)]
    samples: Option<usize>,

    /// Open-facility cap applied to the hybrid's samples.
    #[arg(long)]
    greedy_limit: Option<usize>,

    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Also write a markdown summary table here.
    #[arg(long)]
    markdown: Option<PathBuf>,

    /// Check every solution against the model constraints (default).
    #[arg(long, overrides_with = "no_validate")]
    validate: bool,

    #[arg(long, overrides_with = "validate")]
    no_validate: bool,

    /// Write NA instead of CPU seconds, making output reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_instance(args: &Args) -> Result<Instance> {
    if let Some(path) = &args.tiny {
        let inst = parse_tiny(&read(path)?).with_context(|| format!("{}", path.display()))?;
        let inst = match args.hop {
            Some(h) => inst.with_hop_limit(h as usize)?,
            None => inst,
        };
        return Ok(inst.with_name(file_stem(path)));
    }
    let (Some(stp), Some(uflp), Some(hop)) = (&args.stp, &args.uflp, args.hop) else {
        bail!("--stp, --uflp and --hop are required together");
    };
    let graph = parse_stp(&read(stp)?).with_context(|| format!("{}", stp.display()))?;
    let data = parse_uflp(&read(uflp)?).with_context(|| format!("{}", uflp.display()))?;
    let name = benchmark_name(&file_stem(stp), &file_stem(uflp));
    Ok(merge_instances(&name, &graph, &data, hop as usize)?)
}

fn config(args: &Args) -> SolverConfig {
    let mut c = SolverConfig::new(args.algo.into());
    if let Some(hms) = args.hms {
        c.harmony.hms = hms;
        c.greedy.hms = hms;
    }
    if let Some(hmcr) = args.hmcr {
        c.harmony.hmcr_start = hmcr;
    }
    if let Some(n) = args.max_no_improve {
        c.harmony.max_no_improve = n;
    }
    if let Some(n) = args.max_open {
        c.greedy.max_open = n;
    }
    if let Some(n) = args.top_k {
        c.greedy.top_k = n;
    }
    if let Some(n) = args.samples {
        c.greedy.sample_count = n;
    }
    if let Some(n) = args.greedy_limit {
        c.greedy.greedy_limit = n;
    }
    c.validate = !args.no_validate;
    c.timing = !args.no_timing;
    c
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("cannot write to stdout"),
    }
}

fn run(args: &Args) -> Result<()> {
    let instance = load_instance(args)?;
    log::info!(
        "{}: {} nodes, {} edges, {} facilities, {} customers, hop limit {}",
        instance.name(),
        instance.node_count(),
        instance.edges().len(),
        instance.facility_count(),
        instance.customer_count(),
        instance.hop_limit()
    );
    let config = config(args);
    let outcomes = run_repeats(&instance, &config, args.seed, args.repeats as usize)
        .with_context(|| format!("{} failed on {}", config.algorithm, instance.name()))?;
    let records: Vec<_> = outcomes.into_iter().map(|o| o.record).collect();
    write_output(args.out.as_deref(), &report_csv(&records))?;
    if let Some(md) = &args.markdown {
        write_output(Some(md), &report_markdown(&records))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
