use clap::{Parser, Subcommand};
use hybrid_cli::commands::{self, exit_code, load, Output};
use hybrid_cli::corpus;
use hybrid_core::error::Result;
use std::path::PathBuf;
use std::process::ExitCode;

/// Hybrid algebras of biserial quivers.
///
/// Exit status: 0 success, 1 validation or check failure, 2 computational
/// cap exceeded, 3 input error.
#[derive(Parser)]
#[command(name = "hybrid", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a presentation against the structural and exclusion rules.
    Validate {
        file: PathBuf,
        /// Skip the exclusion and symmetry rules.
        #[arg(long)]
        structural: bool,
    },
    /// Arrow and vertex classification, f and g cycles, weights.
    Describe {
        file: PathBuf,
        /// Also list the generating relations.
        #[arg(long)]
        relations: bool,
    },
    /// Basis monomials of each projective e_i H.
    Basis { file: PathBuf },
    /// Cartan matrix, entry (i, j) = dim e_i H e_j.
    Cartan { file: PathBuf },
    /// Block decomposition.
    Blocks { file: PathBuf },
    /// Decide whether the algebra is symmetric, with a certificate.
    SymmetricCheck { file: PathBuf },
    /// The presentation with every f-orbit split into triangles.
    Star { file: PathBuf },
    /// The presentation of e H e for the vertex set given by --keep.
    Idempotent {
        file: PathBuf,
        /// Comma-separated vertex names.
        #[arg(long)]
        keep: String,
    },
    /// Compare H with the idempotent algebra of its star at the original vertices.
    Roundtrip { file: PathBuf },
    /// Iterated syzygies of a module.
    Omega {
        file: PathBuf,
        /// simple:i, projective:i, arrow:a, middle:i, or "i: x, y" for a submodule of e_i H.
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = hybrid_core::modrep::DEFAULT_PERIOD_BOUND)]
        steps: usize,
    },
    /// The detecting pair of a separated-quiver component.
    Detect {
        file: PathBuf,
        /// Component number, starting at 1.
        #[arg(long)]
        component: usize,
        /// Nonzero rational parameter p/q.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Also test exactness on this module.
        #[arg(long)]
        module: Option<String>,
    },
    /// rad P / soc P at a vertex and its decomposition.
    Middle {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
    },
    /// Dimension of the stable Hom space between two modules.
    Stablehom {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Bundled example corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Recompute every entry and compare with its expected-results file.
    Run {
        /// Corpus directory; defaults to the bundled one.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn dispatch(command: Command) -> Result<Output> {
    match command {
        Command::Validate { file, structural } => commands::validate_cmd(&load(&file)?, structural),
        Command::Describe { file, relations } => commands::describe(&load(&file)?, relations),
        Command::Basis { file } => commands::basis(&load(&file)?),
        Command::Cartan { file } => commands::cartan(&load(&file)?),
        Command::Blocks { file } => commands::blocks(&load(&file)?),
        Command::SymmetricCheck { file } => commands::symmetric_check(&load(&file)?),
        Command::Star { file } => commands::star_cmd(&load(&file)?),
        Command::Idempotent { file, keep } => commands::idempotent(&load(&file)?, &keep),
        Command::Roundtrip { file } => commands::roundtrip_cmd(&load(&file)?),
        Command::Omega { file, module, steps } => commands::omega_cmd(&load(&file)?, &module, steps),
        Command::Detect { file, component, x, module } => {
            commands::detect(&load(&file)?, component, &x, module.as_deref())
        }
        Command::Middle { file, vertex } => commands::middle(&load(&file)?, &vertex),
        Command::Stablehom { file, from, to } => commands::stablehom(&load(&file)?, &from, &to),
        Command::Corpus { action: CorpusAction::Run { dir } } => {
            commands::corpus_run(&dir.unwrap_or_else(corpus::default_dir))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { commands::EXIT_INPUT } else { commands::EXIT_OK };
            return ExitCode::from(code as u8);
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialize"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
