mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Sparse regression codes: dictionaries, encoding, decoding and BLER runs.
#[derive(Parser)]
#[command(name = "gsparc", version, about)]
struct Cli {
    /// Worker threads for Monte-Carlo runs (defaults to all cores).
    #[arg(long, env = "GSPARC_THREADS", global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a dictionary and print its size, coherence and correlation census.
    Dict(commands::DictArgs),
    /// Map hex message bits to a sparse codeword.
    Encode(commands::EncodeArgs),
    /// Map a support and symbol indices back to hex message bits.
    DecodeBits(commands::DecodeBitsArgs),
    /// Decode an observation vector.
    Decode(commands::DecodeArgs),
    /// Single-user block error rate sweep.
    Bler(SimArgs),
    /// Multiple-access channel sweep.
    Mac(SimArgs),
    /// Interference or broadcast channel sweep.
    Interference(SimArgs),
    /// Evaluate the noiseless recovery condition.
    Guarantee(commands::GuaranteeArgs),
}

#[derive(Args)]
pub struct SimArgs {
    /// Experiment spec: a JSON file, or inline JSON.
    spec: String,
    /// Override the experiment's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for results.csv, results.json, manifest.json and plot files.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Validate the experiment and build the code without simulating.
    #[arg(long)]
    dry_run: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    let result = match cli.command {
        Command::Dict(a) => commands::dict(a),
        Command::Encode(a) => commands::encode(a),
        Command::DecodeBits(a) => commands::decode_bits(a),
        Command::Decode(a) => commands::decode(a),
        Command::Bler(a) => commands::simulate(a, commands::SimKind::Bler),
        Command::Mac(a) => commands::simulate(a, commands::SimKind::Mac),
        Command::Interference(a) => commands::simulate(a, commands::SimKind::Interference),
        Command::Guarantee(a) => commands::guarantee(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 2 } else { 3 })
        }
    }
}
