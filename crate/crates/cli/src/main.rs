mod commands;
mod config;
mod error;
mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{parse_config, Overrides, RunConfig};
use error::{io_err, CliError};

#[derive(Parser, Debug)]
#[command(name = "dstar", version, about = "Quantum state transfer on double subdivided stars T(l, m)")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Output file (stdout when omitted); written atomically.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// json or csv; defaults from the output extension, then per command.
    #[arg(long, global = true)]
    format: Option<String>,
    /// key=value file; flags given on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (0: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for randomized check times.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Sequence length for PGST witnesses.
    #[arg(long, global = true)]
    k_max: Option<u64>,
    /// Step of dense time grids.
    #[arg(long, global = true)]
    grid_step: Option<f64>,
    /// Horizon of dense time grids.
    #[arg(long, global = true)]
    t_max: Option<f64>,
    #[arg(long, global = true)]
    support_tol: Option<f64>,
    #[arg(long, global = true)]
    cospec_tol: Option<f64>,
    #[arg(long, global = true)]
    group_tol: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// T (double subdivided star), SK (subdivided star) or P (path).
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge-list file: vertex count on the first line, then one `u v` pair per line.
    #[arg(long, conflicts_with = "family")]
    pub edge_list: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum, eigenvalue supports, strong cospectrality and an optional fidelity trace.
    Analyze {
        #[command(flatten)]
        graph: GraphArgs,
        /// Vertex pair `u,v`: role names or 0-based indices (1-based positions for paths).
        #[arg(long)]
        pair: Option<String>,
        /// Time range start:end:step.
        #[arg(long)]
        trace: Option<String>,
        /// Include the spectral idempotents in the JSON report.
        #[arg(long)]
        idempotents: bool,
    },
    /// PST/PGST verdicts for one T(l, m).
    Classify {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        /// Attach numeric witnesses.
        #[arg(long)]
        witness: bool,
    },
    /// Verdict table over 1..=lmax x 1..=mmax; resumes from an existing --out file.
    Sweep {
        #[arg(long)]
        lmax: usize,
        #[arg(long)]
        mmax: usize,
        #[arg(long)]
        witness: bool,
    },
    /// Fidelity trace for one pair.
    Trace {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        pair: String,
        /// Time range start:end:step.
        #[arg(long)]
        range: String,
    },
}

fn flag_overrides(g: &GlobalArgs) -> Result<Overrides, CliError> {
    Ok(Overrides {
        support_tol: g.support_tol,
        cospec_tol: g.cospec_tol,
        group_tol: g.group_tol,
        k_max: g.k_max,
        grid_step: g.grid_step,
        t_max: g.t_max,
        format: g.format.as_deref().map(str::parse).transpose()?,
        out: g.out.clone(),
        seed: g.seed,
        workers: g.workers,
    })
}

fn load_config(g: &GlobalArgs) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &g.config {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        cfg = cfg.apply(&parse_config(&text)?);
    }
    let cfg = cfg.apply(&flag_overrides(g)?);
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = load_config(&cli.global)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", cfg.workers)))?;
    pool.install(|| match cli.command {
        Command::Analyze {
            graph,
            pair,
            trace,
            idempotents,
        } => commands::analyze(&cfg, &graph, pair.as_deref(), trace.as_deref(), idempotents),
        Command::Classify { l, m, witness } => commands::classify(&cfg, l, m, witness),
        Command::Sweep { lmax, mmax, witness } => sweep::sweep(&cfg, lmax, mmax, witness),
        Command::Trace { graph, pair, range } => commands::trace(&cfg, &graph, &pair, &range),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dstar: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
