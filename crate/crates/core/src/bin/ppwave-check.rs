use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ppwave_check::metrics::{parse_metric_config, RunConfig};
use ppwave_check::suite::{emit_report, families_listing, run, theorem_suite, Format};
use ppwave_check::{Error, Result};

#[derive(Parser)]
#[command(name = "ppwave-check", version, about = "Verify curvature identities on pp-wave metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Text => Format::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured checks at every sampled point.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run a theorem bundle (thm_3_8, thm_3_13, prop_2_10).
    Theorems {
        #[arg(long)]
        name: String,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Describe the built-in metric families.
    Families {
        #[arg(long)]
        list: bool,
    },
}

fn load(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    Ok(parse_metric_config(&text)?.1)
}

fn main_inner(cli: Cli) -> Result<ExitCode> {
    let (report, out, format) = match cli.command {
        Command::Families { .. } => {
            print!("{}", families_listing());
            return Ok(ExitCode::SUCCESS);
        }
        Command::Run { config, out, format, threads } => (run(&load(&config)?, threads)?, out, format),
        Command::Theorems { name, config, out, format, threads } => {
            (theorem_suite(&name, &load(&config)?, threads)?, out, format)
        }
    };
    emit_report(&report, out.as_deref(), format.into())?;
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match main_inner(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
