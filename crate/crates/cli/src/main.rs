use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trienv_cli::commands::{
    cmd_cone, cmd_contract, cmd_functor_table, cmd_hom, cmd_local_global, cmd_member, cmd_oracle,
    cmd_verify,
};
use trienv_cli::{CommandOutput, Inputs, RunConfig, EXIT_INPUT};

const DEFAULT_CERTIFICATE: &str = "certificate.trienv";

#[derive(Parser)]
#[command(
    name = "trienv",
    version,
    about = "Envelope membership in triangulated categories of complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homotopy classes of chain maps from --source to --target.
    Hom(Files),
    /// Mapping cone of the single map in --map.
    Cone(Files),
    /// Contracting homotopy of --target, when one exists.
    Contract(Files),
    /// Run the envelope tower for --target against the --gen objects.
    Member(Run),
    /// Brute-force closure search within --max-depth and --max-total-rank.
    Oracle(Run),
    /// Re-check a certificate produced by `member`.
    Verify(Files),
    /// Compare the global tower with p-local towers.
    LocalGlobal(Run),
    /// Tabulate Hom(probe, Y_n) along the tower.
    FunctorTable(Run),
}

#[derive(Args)]
struct Files {
    /// Category manifest.
    manifest: PathBuf,
    /// Generator complex (repeatable).
    #[arg(long = "gen")]
    generators: Vec<PathBuf>,
    #[arg(long)]
    target: Option<PathBuf>,
    #[arg(long)]
    source: Option<PathBuf>,
    /// File with source, target and one map section.
    #[arg(long)]
    map: Option<PathBuf>,
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Probe complex for functor-table (repeatable).
    #[arg(long)]
    probe: Vec<PathBuf>,
}

#[derive(Args)]
struct Run {
    #[command(flatten)]
    files: Files,
    #[arg(long, default_value_t = 6)]
    max_stages: usize,
    /// Localize `member` at this prime (integer mode).
    #[arg(long)]
    prime: Option<u64>,
    /// Primes for local-global, comma separated.
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Add the relevant primes of the instance.
    #[arg(long)]
    auto_primes: bool,
    #[arg(long, default_value_t = 3)]
    max_depth: usize,
    #[arg(long, default_value_t = 6)]
    max_total_rank: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Certificate path for `member`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("error: cannot read {}: {e}", path.display()))
}

fn read_opt(path: &Option<PathBuf>) -> Result<Option<String>, String> {
    path.as_deref().map(read).transpose()
}

fn load(files: &Files) -> Result<Inputs, String> {
    Ok(Inputs {
        manifest: read(&files.manifest)?,
        generators: files
            .generators
            .iter()
            .map(|p| read(p))
            .collect::<Result<_, _>>()?,
        target: read_opt(&files.target)?,
        source: read_opt(&files.source)?,
        map: read_opt(&files.map)?,
        certificate: read_opt(&files.certificate)?,
        probes: files
            .probe
            .iter()
            .map(|p| read(p))
            .collect::<Result<_, _>>()?,
    })
}

fn config(run: &Run, default_out: bool) -> RunConfig {
    RunConfig {
        max_stages: run.max_stages,
        max_depth: run.max_depth,
        max_total_rank: run.max_total_rank,
        prime: run.prime,
        primes: run.primes.clone(),
        auto_primes: run.auto_primes,
        seed: run.seed,
        out: run
            .out
            .clone()
            .or_else(|| default_out.then(|| PathBuf::from(DEFAULT_CERTIFICATE))),
    }
}

fn execute(command: &Command) -> Result<CommandOutput, String> {
    Ok(match command {
        Command::Hom(f) => cmd_hom(&load(f)?),
        Command::Cone(f) => cmd_cone(&load(f)?),
        Command::Contract(f) => cmd_contract(&load(f)?),
        Command::Verify(f) => cmd_verify(&load(f)?),
        Command::Member(r) => cmd_member(&config(r, true), &load(&r.files)?),
        Command::Oracle(r) => cmd_oracle(&config(r, false), &load(&r.files)?),
        Command::LocalGlobal(r) => cmd_local_global(&config(r, false), &load(&r.files)?),
        Command::FunctorTable(r) => cmd_functor_table(&config(r, false), &load(&r.files)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match execute(&cli.command) {
        Ok(o) => o,
        Err(message) => {
            eprintln!("{message}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    for (path, contents) in &output.files {
        if let Err(e) = fs::write(path, contents) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    print!("{}", output.stdout);
    eprint!("{}", output.stderr);
    ExitCode::from(output.code as u8)
}
