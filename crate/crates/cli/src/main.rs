use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod dot;

use commands::{Ctx, Outcome};

#[derive(Parser, Debug)]
#[command(
    name = "glw",
    version,
    about = "Ideal lattices, Gabriel filters, torsion and localization for modules over finitely presented linear categories"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Upper bound on enumerated fibers and Hom sets.
    #[arg(long, global = true, env = "GLW_CAP", default_value_t = glw_core::filters::DEFAULT_CAP)]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Reading {
    /// Use the file's `complete` directive, or the literal sets without one.
    File,
    Literal,
    Upclose,
    #[value(name = "upclose+meet")]
    UpcloseMeet,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hom dimensions and normal-form bases.
    Homs { cat: PathBuf },
    /// The lattice of left ideals of one representable.
    Ideals {
        cat: PathBuf,
        #[arg(long)]
        object: String,
        /// Same as `--format dot`.
        #[arg(long)]
        dot: bool,
    },
    /// T1 to T4 verdicts with witnesses. Exits 1 unless the filter is Gabriel.
    CheckFilter {
        cat: PathBuf,
        fil: PathBuf,
        #[arg(long, value_enum, default_value_t = Reading::File)]
        reading: Reading,
    },
    /// Every Gabriel filter, and the linear filters rejected by T4.
    Filters {
        cat: PathBuf,
        /// Backtracking node budget.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Torsion radical and torsion verdict of a module.
    Torsion {
        cat: PathBuf,
        fil: PathBuf,
        module: PathBuf,
        #[arg(long, value_enum, default_value_t = Reading::File)]
        reading: Reading,
    },
    /// Prelocalization and Gabriel localization of a module.
    Localize {
        cat: PathBuf,
        fil: PathBuf,
        module: PathBuf,
        #[arg(long, value_enum, default_value_t = Reading::File)]
        reading: Reading,
    },
    /// Closedness of a module. Exits 1 when it is not closed.
    Closed {
        cat: PathBuf,
        fil: PathBuf,
        module: PathBuf,
        #[arg(long, value_enum, default_value_t = Reading::File)]
        reading: Reading,
    },
    /// Property checks on seeded random modules. Without a filter file,
    /// runs every Gabriel filter of the census. Exits 1 on any failure.
    Verify {
        cat: PathBuf,
        fil: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Reading::File)]
        reading: Reading,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Largest fiber dimension of a sampled module.
        #[arg(long, default_value_t = 3)]
        dmax: usize,
        /// Include wall-clock milliseconds per check.
        #[arg(long)]
        timings: bool,
    },
    /// The bundled five-vertex window: lattice at v2, the printed filter and
    /// its completions, and the localization of P_v2.
    Example,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut format = cli.format;
    if let Command::Ideals { dot: true, .. } = cli.command {
        format = Format::Dot;
    }
    let ctx = Ctx { format, cap: cli.cap };
    let result = match cli.command {
        Command::Homs { cat } => commands::homs(&ctx, &cat),
        Command::Ideals { cat, object, .. } => commands::ideals(&ctx, &cat, &object),
        Command::CheckFilter { cat, fil, reading } => commands::check_filter(&ctx, &cat, &fil, reading),
        Command::Filters { cat, budget } => commands::filters(&ctx, &cat, budget),
        Command::Torsion { cat, fil, module, reading } => commands::torsion(&ctx, &cat, &fil, &module, reading),
        Command::Localize { cat, fil, module, reading } => commands::localize(&ctx, &cat, &fil, &module, reading),
        Command::Closed { cat, fil, module, reading } => commands::closed(&ctx, &cat, &fil, &module, reading),
        Command::Verify { cat, fil, reading, seed, samples, dmax, timings } => {
            let options = commands::VerifyOptions { seed, samples, dmax, timings };
            commands::verify(&ctx, &cat, fil.as_deref(), reading, &options)
        }
        Command::Example => commands::example(&ctx),
    };
    match result {
        Ok((text, outcome)) => {
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().write_all(text.as_bytes());
            match outcome {
                Outcome::Success => ExitCode::SUCCESS,
                Outcome::Failure => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
