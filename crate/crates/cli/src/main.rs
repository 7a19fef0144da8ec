mod commands;
mod config;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::CmdError;
use config::{RunConfig, OUT_DIR_ENV};

/// Exact checks for vertex algebra correlation functions, their cochain
/// bicomplex and the algebras built on it.
#[derive(Debug, Parser)]
#[command(name = "vabc", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Plain-text `key=value` configuration; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Weight cutoff of the Heisenberg instance.
    #[arg(long, global = true)]
    nmax: Option<u32>,
    /// Largest input weight on the probe grid; defaults to nmax - 1.
    #[arg(long, global = true)]
    probe: Option<u32>,
    /// Series order of the duality expansions.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Seed of the randomized dual basis.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Scenario for `algebra`: shortseq or c2half.
    #[arg(long, global = true)]
    scenario: Option<String>,
    /// Directory for `<command>.txt` and `<command>.checks`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also show a sample bracket with the sewing parameter set to 1.
    #[arg(long, global = true)]
    eps_eval: bool,
    /// Print the machine-readable check lines instead of the text report.
    #[arg(long, global = true)]
    machine: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertex algebra axioms of the instance.
    Axioms {
        /// Instance descriptor file.
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Correlation function of the inputs against an anchor vector.
    Correlate {
        /// Input vectors, e.g. `a` or `a(-2)|0> + 1/2 * a(-1)a(-1)|0>`.
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Anchor vector.
        #[arg(long, default_value = "1")]
        w: String,
    },
    /// Complex conditions over a cochain family.
    Complex {
        /// File with one cochain expression per line; defaults to the
        /// generator family.
        #[arg(long)]
        family: Option<PathBuf>,
    },
    /// Product laws and the algebra scenario.
    Algebra,
}

fn read(path: &PathBuf) -> Result<String, CmdError> {
    fs::read_to_string(path).map_err(|e| CmdError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn resolve(g: &GlobalArgs) -> Result<RunConfig, CmdError> {
    let mut cfg = RunConfig::default();
    let usage = |e: config::ConfigError| CmdError::Usage(e.to_string());
    if let Some(p) = &g.config {
        cfg.apply_text(&read(p)?).map_err(usage)?;
    }
    cfg.n_max = g.nmax.unwrap_or(cfg.n_max);
    cfg.probe = g.probe.or(cfg.probe);
    cfg.order = g.order.unwrap_or(cfg.order);
    cfg.seed = g.seed.unwrap_or(cfg.seed);
    if let Some(s) = &g.scenario {
        cfg.scenario = s.clone();
    }
    if g.out.is_some() {
        cfg.out = g.out.clone();
    }
    cfg.eps_eval |= g.eps_eval;
    cfg.validate().map_err(usage)?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool, CmdError> {
    let cfg = resolve(&cli.global)?;
    let rep = match &cli.command {
        Command::Axioms { instance } => {
            let text = instance.as_ref().map(read).transpose()?;
            commands::axioms(&cfg, text.as_deref())?
        }
        Command::Correlate { inputs, w } => commands::correlate(&cfg, inputs, w)?,
        Command::Complex { family } => {
            let text = family.as_ref().map(read).transpose()?;
            commands::complex(&cfg, text.as_deref())?
        }
        Command::Algebra => commands::algebra(&cfg)?,
    };
    if cli.global.machine {
        print!("{}", rep.machine());
    } else {
        print!("{}", rep.human());
    }
    if let Some(dir) = cfg.out_dir(std::env::var(OUT_DIR_ENV).ok()) {
        rep.write_to(&dir).map_err(|e| CmdError::Usage(format!("cannot write to {}: {e}", dir.display())))?;
    }
    Ok(rep.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                CmdError::Usage(_) => 2,
                CmdError::Internal(_) => 3,
            })
        }
    }
}
