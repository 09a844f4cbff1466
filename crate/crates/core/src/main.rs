use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sigma_product::cli::{run_file, Format};

#[derive(Parser)]
#[command(
    name = "sigma-product",
    version,
    about = "Exact product measures and Fubini-Tonelli checks"
)]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the command of a spec file.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let Cmd::Run { file, format } = args.command;
    let format = match format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    let out = run_file(&file, format);
    if out.is_error() {
        eprint!("{}", out.output);
    } else {
        print!("{}", out.output);
    }
    ExitCode::from(out.code as u8)
}
