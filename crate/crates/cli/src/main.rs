use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lazard_cli::commands::{self, CliError, Direction, EnumerateInput};
use lazard_core::liering::DEFAULT_MAX_ORDER;

#[derive(Parser)]
#[command(name = "lazard", version, about = "Check and convert post-Lie rings and skew braces of prime-power order")]
struct Cli {
    /// Largest carrier size to build tables for.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Ignore the size cap.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Brace,
    Postlie,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a structure file and print its invariants.
    Check { path: PathBuf },
    /// Apply construction S (to a brace) or L (to a post-Lie ring).
    Convert {
        path: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Print the BCH series and the inverse words P and Q up to a class.
    BchWords {
        #[arg(long, default_value_t = 4)]
        class: usize,
        /// Re-check that P and Q invert the BCH product.
        #[arg(long)]
        check: bool,
    },
    /// Enumerate skew braces on a group, optionally pairing them with pre-Lie rings.
    Enumerate {
        /// Abelian group as `p:e1,e2,…`.
        #[arg(long, conflicts_with = "group")]
        shape: Option<String>,
        /// Group file.
        #[arg(long)]
        group: Option<PathBuf>,
        /// Also enumerate pre-Lie rings on the shape and pair both catalogs.
        #[arg(long)]
        pre_lie: bool,
        /// Report counts up to isomorphism as well.
        #[arg(long)]
        iso_dedup: bool,
    },
    /// Recover ▷ from λ by averaging over roots of unity.
    RootDiff { path: PathBuf },
    /// Check that the two constructions are mutually inverse on a file.
    Roundtrip { path: PathBuf },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String, CliError> {
    let cap = if cli.force { usize::MAX } else { cli.max_order };
    match cli.command {
        Command::Check { path } => commands::check(&read(&path)?, cap),
        Command::Convert { path, to } => {
            let to = match to {
                Target::Brace => Direction::Brace,
                Target::Postlie => Direction::PostLie,
            };
            commands::convert(&read(&path)?, to, cap)
        }
        Command::BchWords { class, check } => commands::bch_words(class, check),
        Command::Enumerate { shape, group, pre_lie, iso_dedup } => {
            let input = match (shape, group) {
                (Some(s), None) => EnumerateInput::Shape(commands::parse_shape(&s)?),
                (None, Some(g)) => EnumerateInput::Group(read(&g)?),
                _ => return Err(CliError::Parse("give exactly one of --shape and --group".into())),
            };
            commands::enumerate(input, iso_dedup, pre_lie, cap)
        }
        Command::RootDiff { path } => commands::root_diff(&read(&path)?, cap),
        Command::Roundtrip { path } => commands::roundtrip(&read(&path)?, cap),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("lazard: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
