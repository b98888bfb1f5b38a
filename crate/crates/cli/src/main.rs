use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use equichain::catalog::{check_catalog, check_entry, entry, parse_document, run, Command, Format, Options, Report};
use equichain::filtered::ConeShift;
use equichain::Error;

/// Equivariant mod 2 chain checks on simplicial models.
///
/// TARGET is a document file, the name of a built-in catalog entry, or
/// `catalog` for every entry (check-all only).
#[derive(Parser, Debug)]
#[command(name = "equichain", version)]
struct Cli {
    /// validate, homology, ss, smith, decompose, split, quotient or check-all
    command: String,
    target: String,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<i32>,
    #[arg(long)]
    chain: Option<String>,
    #[arg(long)]
    filtration: Option<String>,
    /// Let split fall back to enumerating representatives.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value = "text", value_parser = ["text", "machine"])]
    format: String,
    #[arg(long, default_value = "0", value_parser = ["0", "1"])]
    cone_shift: String,
}

fn execute(cli: &Cli) -> Result<Report, Error> {
    let command: Command = cli.command.parse()?;
    let opts = Options {
        alpha: cli.alpha,
        chain: cli.chain.clone(),
        filtration: cli.filtration.clone(),
        exhaustive: cli.exhaustive,
        cone_shift: if cli.cone_shift == "1" { ConeShift::One } else { ConeShift::Zero },
    };
    let path = Path::new(&cli.target);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", cli.target)))?;
        return run(command, &parse_document(&text)?, &opts);
    }
    if cli.target == "catalog" {
        return match command {
            Command::CheckAll => check_catalog(&opts),
            _ => Err(Error::Input("only check-all runs over the whole catalog".into())),
        };
    }
    let e = entry(&cli.target).map_err(|_| Error::Input(format!("no file or catalog entry named `{}`", cli.target)))?;
    match command {
        Command::CheckAll => check_entry(e, &opts),
        _ => run(command, &e.document()?, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format: Format = cli.format.parse().expect("restricted by clap");
    match execute(&cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
