mod checks;
mod commands;
mod config;
mod output;

use anyhow::{Context as _, Result};
use clap::{Args, Parser, Subcommand};
use commands::Context;
use config::*;
use output::Artifacts;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "primeavg", version, about = "Numerical experiments on prime averages along arithmetic progressions")]
struct Cli {
    /// TOML file with a section per subcommand; flags win over it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the exponential-sum identities and the fixture constants.
    Verify(VerifyArgs),
    /// Error of the major-arc approximant on the frequency grid.
    Approx(ApproxArgs),
    /// High/Low decomposition ratios over a list of heights.
    Highlow(HighLowArgs),
    /// Improving-inequality ratio scan.
    Improving(ImprovingArgs),
    /// Weak-type maximal-function scan.
    Maximal(MaximalArgs),
    /// Averaged Ramanujan-sum moments.
    #[command(name = "ramanujan-avg")]
    RamanujanAvg(RamanujanAvgArgs),
    /// Prime counts in progressions against the main term.
    Sw(SwArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    qmax: Option<u64>,
    #[arg(long)]
    ymax: Option<u64>,
    /// Skip recomputing the fixture constants.
    #[arg(long)]
    skip_fixtures: bool,
}

#[derive(Args)]
#[allow(non_snake_case)]
struct ApproxArgs {
    #[arg(long = "N")]
    N: Option<u64>,
    #[arg(long)]
    y: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    qcut: Option<u64>,
    #[arg(long = "M")]
    M: Option<usize>,
    /// Window exponent for the near-zero check.
    #[arg(long = "J")]
    J: Option<f64>,
    /// `smooth` or `unit`.
    #[arg(long)]
    cutoff: Option<String>,
}

#[derive(Args)]
#[allow(non_snake_case)]
struct HighLowArgs {
    #[arg(long = "N")]
    N: Option<u64>,
    #[arg(long)]
    y: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long = "Q", value_delimiter = ',')]
    Q: Vec<u64>,
    #[arg(long = "M")]
    M: Option<usize>,
    #[arg(long)]
    qcut: Option<u64>,
    #[arg(long)]
    r: Option<f64>,
}

#[derive(Args)]
#[allow(non_snake_case)]
struct ImprovingArgs {
    #[arg(long = "N", value_delimiter = ',')]
    N: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    y: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    b: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    r: Vec<f64>,
    /// Add the greedy Λ-weighted sets.
    #[arg(long)]
    adversarial: bool,
}

#[derive(Args)]
#[allow(non_snake_case)]
struct MaximalArgs {
    #[arg(long = "N", value_delimiter = ',')]
    N: Vec<u64>,
    #[arg(long)]
    y: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    b: Vec<u64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    lambdas: Vec<f64>,
    /// Also split each level set into Low, High and remainder at this cut.
    #[arg(long)]
    qcut: Option<u64>,
}

#[derive(Args)]
#[allow(non_snake_case)]
struct RamanujanAvgArgs {
    #[arg(long = "Q", value_delimiter = ',')]
    Q: Vec<u64>,
    #[arg(long = "M")]
    M: Option<u64>,
    #[arg(long)]
    y: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    t: Option<u32>,
}

#[derive(Args)]
#[allow(non_snake_case)]
struct SwArgs {
    #[arg(long, value_delimiter = ',')]
    x: Vec<u64>,
    #[arg(long)]
    y: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long = "J")]
    J: Option<u32>,
}

fn run(cli: Cli) -> Result<bool> {
    let file = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let seed = pick(cli.seed, file.seed).unwrap_or(0);
    let out_dir = pick(cli.out, file.out).unwrap_or_else(|| PathBuf::from("out"));
    if let Some(n) = pick(cli.workers, file.workers) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot configure the worker pool")?;
    }
    let ctx = Context::from_env(seed)?;
    let mut out = Artifacts::new(&out_dir)?;
    let passed = match cli.command {
        Command::Verify(a) => {
            let f = file.verify.unwrap_or_default();
            let p = VerifyParams {
                qmax: pick(a.qmax, f.qmax),
                ymax: pick(a.ymax, f.ymax),
                skip_fixtures: if a.skip_fixtures { Some(true) } else { f.skip_fixtures },
            };
            commands::verify(&ctx, &p, &mut out)?
        }
        Command::Approx(a) => {
            let f = file.approx.unwrap_or_default();
            let p = ApproxParams {
                N: pick(a.N, f.N),
                y: pick(a.y, f.y),
                b: pick(a.b, f.b),
                qcut: pick(a.qcut, f.qcut),
                M: pick(a.M, f.M),
                J: pick(a.J, f.J),
                cutoff: pick(a.cutoff, f.cutoff),
            };
            commands::approx(&ctx, &p, &mut out)?
        }
        Command::Highlow(a) => {
            let f = file.highlow.unwrap_or_default();
            let p = HighLowParams {
                N: pick(a.N, f.N),
                y: pick(a.y, f.y),
                b: pick(a.b, f.b),
                Q: pick_list(a.Q, f.Q),
                M: pick(a.M, f.M),
                qcut: pick(a.qcut, f.qcut),
                r: pick(a.r, f.r),
                families: f.families,
            };
            commands::highlow(&ctx, &p, &mut out)?
        }
        Command::Improving(a) => {
            let f = file.improving.unwrap_or_default();
            let p = ImprovingParams {
                N: pick_list(a.N, f.N),
                y: pick_list(a.y, f.y),
                b: pick_list(a.b, f.b),
                r: pick_list(a.r, f.r),
                families: f.families,
                adversarial: if a.adversarial { Some(true) } else { f.adversarial },
                floor_per_y: f.floor_per_y,
                stability_factor: f.stability_factor,
            };
            commands::improving(&ctx, &p, &mut out)?
        }
        Command::Maximal(a) => {
            let f = file.maximal.unwrap_or_default();
            let p = MaximalParams {
                N: pick_list(a.N, f.N),
                y: pick(a.y, f.y),
                b: pick_list(a.b, f.b),
                r: pick(a.r, f.r),
                lambdas: pick_list(a.lambdas, f.lambdas),
                families: f.families,
                floor_per_y: f.floor_per_y,
                qcut: pick(a.qcut, f.qcut),
                max_b_variation: f.max_b_variation,
            };
            commands::maximal(&ctx, &p, &mut out)?
        }
        Command::RamanujanAvg(a) => {
            let f = file.ramanujan_avg.unwrap_or_default();
            let p = RamanujanAvgParams {
                Q: pick_list(a.Q, f.Q),
                M: pick(a.M, f.M),
                y: pick(a.y, f.y),
                b: pick(a.b, f.b),
                t: pick(a.t, f.t),
                max_exponent: f.max_exponent,
            };
            commands::ramanujan_avg(&ctx, &p, &mut out)?
        }
        Command::Sw(a) => {
            let f = file.sw.unwrap_or_default();
            let p = SwParams { x: pick_list(a.x, f.x), y: pick(a.y, f.y), b: pick(a.b, f.b), J: pick(a.J, f.J) };
            commands::sw(&ctx, &p, &mut out)?
        }
    };
    for path in out.written() {
        println!("wrote {}", path.display());
    }
    println!("{}", if passed { "PASS" } else { "FAIL" });
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
