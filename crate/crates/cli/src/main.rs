use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mhx_cli::commands::{self, Report};
use mhx_cli::{Backend, CliError, Document};
use mhx_core::{Complex64, Gauss, Scalar};

#[derive(Parser)]
#[command(name = "mhx", version, about = "Mixed Hodge structures, biextension heights and nilpotent orbits")]
struct Cli {
    /// Override the backend named in the document.
    #[arg(long, global = true, value_enum)]
    backend: Option<Backend>,
    /// Rank tolerance of the float backend and pass threshold of `genus3 --verify`.
    #[arg(long, global = true, env = "MHX_TOL", default_value_t = 1e-9)]
    tol: f64,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report here instead of stdout; a scan also writes its
    /// sidecar next to it with a .json extension.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the document describes a mixed Hodge structure.
    Validate { file: PathBuf },
    /// Print the Deligne splitting.
    Split { file: PathBuf },
    /// Print the operator δ.
    Delta { file: PathBuf },
    /// Height of a biextension with given generators.
    Height { file: PathBuf },
    /// Weight filtration of N.
    Wfilt {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        center: i32,
    },
    /// Relative weight filtration M(N, W).
    Relwfilt { file: PathBuf },
    #[command(subcommand)]
    Orbit(OrbitCommand),
    /// Genus-3 degeneration model.
    Genus3 {
        file: PathBuf,
        /// Run the main-theorem check.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Subcommand)]
enum OrbitCommand {
    /// Heights along a ray towards t = 0.
    Scan {
        file: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        angle: f64,
        #[arg(long, default_value_t = 8)]
        decades: u32,
    },
}

impl Command {
    fn file(&self) -> &Path {
        match self {
            Command::Validate { file }
            | Command::Split { file }
            | Command::Delta { file }
            | Command::Height { file }
            | Command::Wfilt { file, .. }
            | Command::Relwfilt { file }
            | Command::Orbit(OrbitCommand::Scan { file, .. })
            | Command::Genus3 { file, .. } => file,
        }
    }
}

fn execute<S: Scalar>(command: &Command, doc: &Document, eps: f64) -> Result<Report, CliError> {
    match command {
        Command::Validate { .. } => commands::validate::<S>(doc, eps),
        Command::Split { .. } => commands::split::<S>(doc, eps),
        Command::Delta { .. } => commands::delta::<S>(doc, eps),
        Command::Height { .. } => commands::height::<S>(doc, eps),
        Command::Wfilt { center, .. } => commands::wfilt::<S>(doc, *center, eps),
        Command::Relwfilt { .. } => commands::relwfilt::<S>(doc, eps),
        Command::Orbit(OrbitCommand::Scan { angle, decades, .. }) => commands::scan::<S>(doc, *angle, *decades, eps),
        Command::Genus3 { verify, .. } => commands::genus3::<S>(doc, *verify, eps),
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn run(cli: &Cli) -> Result<Option<CliError>, CliError> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .map_err(|e| CliError::Parse(format!("--threads: {e}")))?;
    }
    let path = cli.command.file();
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let doc = Document::parse(&text)?;
    let report = match cli.backend.unwrap_or(doc.backend) {
        Backend::Exact => execute::<Gauss>(&cli.command, &doc, cli.tol)?,
        Backend::Float => execute::<Complex64>(&cli.command, &doc, cli.tol)?,
    };
    match &cli.out {
        Some(out) => {
            write(out, &report.text)?;
            if let Some(sidecar) = &report.sidecar {
                write(&out.with_extension("json"), sidecar)?;
            }
        }
        None => {
            print!("{}", report.text);
            if let Some(sidecar) = &report.sidecar {
                eprint!("{sidecar}");
            }
        }
    }
    Ok(report.verdict)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(e)) | Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
