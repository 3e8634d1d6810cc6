use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nbar::Mode;
use nbar_cli::{execute, execute_repro, CliError, Format, Overrides};

#[derive(Parser)]
#[command(
    name = "nbar",
    version,
    about = "Weighted-mean sequence spaces, their duals and matrix maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the task described by a JSON problem spec.
    Run {
        /// Spec file, or `-` for stdin.
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce the rank-one worked example.
    Repro {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<Mode>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    output: Format,
    /// Evaluate matrix rows on all cores. Reported values are unchanged.
    #[arg(long)]
    parallel: bool,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            depth: self.depth,
            window: self.window,
            tol: self.tol.clone(),
            mode: self.mode,
        }
    }
}

fn read_spec(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Io(format!("cannot read stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))?;
    }
    Ok(text)
}

fn in_pool<R: Send>(parallel: bool, f: impl FnOnce() -> R + Send) -> R {
    let threads = if parallel { 0 } else { 1 };
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run { spec, common } => read_spec(spec).and_then(|text| {
            let ov = common.overrides();
            in_pool(common.parallel, || execute(&text, &ov, common.output))
        }),
        Command::Repro { common } => {
            let ov = common.overrides();
            in_pool(common.parallel, || execute_repro(&ov, common.output))
        }
    };
    match outcome {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
