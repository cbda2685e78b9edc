use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use twistfloer::{run_batch, run_file, Command, Outcome, EXIT_INPUT};

/// Dehn-twist actions, pseudo-Anosov certificates and Floer ranks.
#[derive(Parser)]
#[command(name = "twistfloer", version)]
struct Cli {
    /// Emit one JSON document instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Input {
    /// Instance file.
    #[arg(required_unless_present = "batch", conflicts_with = "batch")]
    file: Option<PathBuf>,
    /// Run on every *.json file in a directory.
    #[arg(long, value_name = "DIR")]
    batch: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the acceptable or strongly acceptable hypotheses.
    Validate(Input),
    /// Matrix of the twist word on H1.
    Act(Input),
    /// Casson-Bleiler certificate for the word or the raw matrix.
    Certify(Input),
    /// Floer cohomology ranks over F2.
    Floer(Input),
    /// Conjugator between the file order and a reordering of the curves.
    Conjugate {
        #[command(flatten)]
        input: Input,
        /// Target order: comma-separated curve names or 1-based indices.
        #[arg(long)]
        perm: String,
    },
    /// Cut the map along the curves and report Euler characteristics.
    Cut(Input),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let (cmd, input) = match cli.command {
        Cmd::Validate(i) => (Command::Validate, i),
        Cmd::Act(i) => (Command::Act, i),
        Cmd::Certify(i) => (Command::Certify, i),
        Cmd::Floer(i) => (Command::Floer, i),
        Cmd::Conjugate { input, perm } => (Command::Conjugate { perm }, input),
        Cmd::Cut(i) => (Command::Cut, i),
    };
    // reports go to stdout; keep panic noise off stderr, it is reported
    std::panic::set_hook(Box::new(|_| {}));
    let outcome: Outcome = match (&input.batch, &input.file) {
        (Some(dir), _) => run_batch(&cmd, dir),
        (None, Some(file)) => run_file(&cmd, file),
        (None, None) => unreachable!("clap enforces an input"),
    };
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&outcome.json).expect("json values serialize")
        );
    } else {
        print!("{}", outcome.human);
    }
    if outcome.code == EXIT_INPUT && !cli.json {
        eprintln!("twistfloer: input error (exit {EXIT_INPUT})");
    }
    ExitCode::from(outcome.code as u8)
}
