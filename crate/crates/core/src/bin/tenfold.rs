use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tenfold::cli::{self, CliError, Format, Suite, Which};

#[derive(Parser)]
#[command(name = "tenfold", version, about = "Symmetry-class K-theory calculator")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the phases described by a spec file.
    Classify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: FormatArg,
    },
    /// Print one of the classification tables.
    Table {
        #[arg(long, value_enum)]
        which: WhichArg,
        #[arg(long, default_value_t = 3)]
        dmax: usize,
    },
    /// Run a numerical verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
    /// Winding number of a sampled grading family.
    Winding {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    Tenfold,
    ZeroD,
    Periodic,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Repr,
    Wedderburn,
    PackerRaeburn,
    Homotopy,
    All,
}

fn run(args: Args) -> Result<String, CliError> {
    match args.command {
        Command::Classify { spec, format } => {
            let format = match format {
                FormatArg::Human => Format::Human,
                FormatArg::Machine => Format::Machine,
            };
            cli::cmd_classify(&spec, format)
        }
        Command::Table { which, dmax } => {
            let which = match which {
                WhichArg::Tenfold => Which::Tenfold,
                WhichArg::ZeroD => Which::ZeroD,
                WhichArg::Periodic => Which::Periodic,
            };
            cli::cmd_table(which, dmax).map(|t| t.trim_end().to_string())
        }
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::Repr => Suite::Repr,
                SuiteArg::Wedderburn => Suite::Wedderburn,
                SuiteArg::PackerRaeburn => Suite::PackerRaeburn,
                SuiteArg::Homotopy => Suite::Homotopy,
                SuiteArg::All => Suite::All,
            };
            let report = cli::cmd_verify(suite);
            if report.passed() {
                Ok(report.to_string())
            } else {
                Err(CliError::Failed(report.to_string()))
            }
        }
        Command::Winding { input } => cli::cmd_winding(&input).map(|w| w.to_string()),
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(args) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Failed(report) = &e {
                println!("{report}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
