use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hamcube::analysis::SearchMode;
use hamcube_cli::{commands, exit, Outcome};

#[derive(Parser)]
#[command(
    name = "hamcube",
    version,
    about = "Hamiltonian embeddings of hypercubes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the decomposition and rotation system for Q_n.
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long = "out-decomposition", default_value = "decomposition.txt")]
        out_decomposition: PathBuf,
        #[arg(long = "out-rotation", default_value = "rotation.txt")]
        out_rotation: PathBuf,
    },
    /// Trace faces and check the embedding is Hamiltonian.
    Verify {
        #[arg(long)]
        rotation: PathBuf,
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Pairwise face intersections and the intersection graph.
    Analyze {
        #[arg(long)]
        rotation: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Counting conditions for a d-regular graph on n vertices.
    Necessary {
        #[arg(long)]
        order: u64,
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        json: bool,
    },
    /// Search rotation systems for Hamiltonian embeddings.
    Search {
        /// `hypercube:N`, `complete:N` or a path to an adjacency file.
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(exit::BAD_PARAMETERS)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Construct {
            n,
            out_decomposition,
            out_rotation,
        } => commands::construct(n, &out_decomposition, &out_rotation),
        Command::Verify {
            rotation,
            decomposition,
            json,
        } => commands::verify(&rotation, decomposition.as_deref(), json),
        Command::Analyze { rotation, json } => commands::analyze(&rotation, json),
        Command::Necessary {
            order,
            degree,
            json,
        } => commands::necessary(order, degree, json),
        Command::Search {
            graph,
            mode,
            budget,
            seed,
            json,
        } => {
            let mode = match mode {
                Mode::Exhaustive => SearchMode::Exhaustive,
                Mode::Random => SearchMode::Random,
            };
            commands::search(&graph, mode, budget, seed, json)
        }
    };
    emit(&outcome)
}

fn emit(outcome: &Outcome) -> ExitCode {
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code)
}
