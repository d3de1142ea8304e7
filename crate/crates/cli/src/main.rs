//! `fishsim`: batch experiments and the interactive session server.

use std::net::IpAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fishery_harness::{
    run_experiment, write_outputs, ExperimentConfig, ExperimentResult, HarnessError, OutputFormat,
};
use fishery_session::ServeOptions;

#[derive(Debug, Parser)]
#[command(name = "fishsim", version, about = "Evolving-fishery simulator")]
struct Cli {
    /// Only print errors.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a batch experiment described by a JSON config.
    Run {
        config: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Check a config without running it.
    Validate { config: PathBuf },
    /// Run the built-in size-selective harvest scenario.
    Demo {
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Serve interactive sessions over HTTP.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Persist sessions here so they survive a restart.
        #[arg(long)]
        data_dir: Option<PathBuf>,
        /// JSON file of named presets replacing the built-in ones.
        #[arg(long)]
        presets: Option<PathBuf>,
        /// Static files (the browser client) served for non-API paths.
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct RunOpts {
    /// Run only this seed instead of the config's list.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (overrides the config).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Output format; repeat for both (overrides the config).
    #[arg(long = "format", value_enum)]
    formats: Vec<Format>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

enum Failure {
    Config(String),
    Runtime(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        if e.is_config() {
            Failure::Config(e.to_string())
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { tracing::Level::WARN } else { tracing::Level::INFO };
    tracing_subscriber::fmt().with_max_level(level).with_writer(std::io::stderr).init();
    match dispatch(cli.command, cli.quiet) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command, quiet: bool) -> Result<(), Failure> {
    match command {
        Command::Run { config, opts } => {
            let cfg = ExperimentConfig::load(&config)?;
            execute(cfg, &opts, Path::new("out"), quiet)
        }
        Command::Validate { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            if !quiet {
                println!(
                    "{}: ok ({} species, {} seeds, {} days)",
                    config.display(),
                    cfg.specs.len(),
                    cfg.seeds.len(),
                    cfg.days
                );
            }
            Ok(())
        }
        Command::Demo { opts } => {
            execute(fishery_harness::demo_config(), &opts, Path::new("out/demo"), quiet)
        }
        Command::Serve { host, port, data_dir, presets, static_dir } => {
            let options = ServeOptions { host, port, data_dir, presets, static_dir };
            // surface bad presets or data dirs as config errors before binding
            options.build_store().map_err(|e| Failure::Config(e.to_string()))?;
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Runtime(e.to_string()))?;
            runtime.block_on(fishery_session::serve(options)).map_err(|e| Failure::Runtime(e.to_string()))
        }
    }
}

fn execute(
    mut cfg: ExperimentConfig,
    opts: &RunOpts,
    default_dir: &Path,
    quiet: bool,
) -> Result<(), Failure> {
    if let Some(seed) = opts.seed {
        cfg.seeds = vec![seed];
    }
    if !opts.formats.is_empty() {
        cfg.outputs.formats = opts.formats.iter().map(|&f| f.into()).collect();
        cfg.outputs.formats.dedup();
    }
    if let Some(dir) = &opts.out_dir {
        cfg.outputs.dir = Some(dir.clone());
    }
    cfg.validate()?;
    let dir = cfg.outputs.dir.clone().unwrap_or_else(|| default_dir.to_path_buf());
    let result = run_experiment(&cfg)?;
    let written = write_outputs(&result, &dir, &cfg.outputs.formats)?;
    if !quiet {
        report(&result);
        println!("wrote {} file(s) to {}", written.len(), dir.display());
    }
    Ok(())
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.3}")).unwrap_or_else(|| "-".into())
}

fn report(result: &ExperimentResult) {
    let agg = &result.summary.aggregate;
    println!(
        "{} seed(s): kept {} of {} bites (rate {}), earned {}",
        agg.seeds,
        agg.fish_kept,
        agg.bites,
        fmt_opt(agg.keep_rate),
        agg.money_total
    );
    for s in &agg.species {
        println!(
            "  {}: mean length {} -> {}, declined in {}/{} seeds, median decline {}, extinct in {}, slope p {}",
            s.species_id,
            fmt_opt(s.mean_initial),
            fmt_opt(s.mean_final),
            s.seeds_declined,
            s.seeds_compared,
            fmt_opt(s.median_decline),
            s.extinctions,
            s.slope_test.map(|t| format!("{:.4}", t.p_value)).unwrap_or_else(|| "-".into())
        );
    }
}
