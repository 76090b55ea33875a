use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use graver_core::{
    build_certificate, check_certificate, enumerate_circuits, example_4_4, graver_basis_oracle_with,
    graver_basis_with, graver_complexity, matrix_to_walk, seed_3x4, theorem_bound, BipartiteShape, Error,
    IntMatrix, Limits, LowerBoundCertificate,
};

const EXIT_INVALID: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Graver bases and lower-bound certificates for bipartite Graver complexity.
#[derive(Parser)]
#[command(name = "graver", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed-form lower bound for K_{t,r}.
    Bound {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        r: usize,
    },
    /// Write the constructed certificate for K_{t,r} as JSON.
    Certificate {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        r: usize,
        /// Output file, `-` for standard output.
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Check a certificate file (`-` for standard input).
    Verify { path: PathBuf },
    /// Print the Graver basis of a matrix file, one vector per line.
    Graver {
        #[arg(long)]
        matrix: PathBuf,
        /// Enumerate the box [-B, B]^n instead of running the completion.
        #[arg(long, value_name = "B")]
        oracle: Option<u32>,
    },
    /// Print the Graver complexity of a matrix file.
    Complexity {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_name = "N")]
        max_elems: Option<usize>,
    },
    /// Print every signed circuit of K_{t,r} as a walk and a matrix.
    Circuits {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        r: usize,
    },
    /// Emit a built-in certificate.
    Example {
        #[arg(long)]
        name: ExampleName,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    #[value(name = "seed3x4")]
    Seed3x4,
    #[value(name = "example4x4")]
    Example4x4,
}

enum Failure {
    Usage(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit(m) => Failure::Resource(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| io_failure(path, e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| io_failure(path, e))
    }
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    if path == Path::new("-") {
        io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| io_failure(path, e))
    } else {
        fs::write(path, text).map_err(|e| io_failure(path, e))
    }
}

fn read_matrix(path: &Path) -> Result<IntMatrix, Failure> {
    read_input(path)?
        .parse::<IntMatrix>()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<u8, Failure> {
    let mut out = String::new();
    let mut code = 0;
    match command {
        Command::Bound { t, r } => {
            out = format!("{}\n", theorem_bound(t, r)?);
        }
        Command::Certificate { t, r, out: path } => {
            let cert = LowerBoundCertificate::from_family(&build_certificate(t, r)?);
            write_output(&path, &cert.to_json())?;
        }
        Command::Verify { path } => {
            let cert = LowerBoundCertificate::from_json(&read_input(&path)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let report = check_certificate(&cert);
            if !report.is_valid() {
                code = EXIT_INVALID;
            }
            out = report.to_string();
        }
        Command::Graver { matrix, oracle } => {
            let a = read_matrix(&matrix)?;
            let limits = Limits::default();
            let basis = match oracle {
                Some(b) => graver_basis_oracle_with(&a, b, &limits)?,
                None => graver_basis_with(&a, &limits)?,
            };
            for v in basis.elements() {
                out.push_str(&format!("{v}\n"));
            }
        }
        Command::Complexity { matrix, max_elems } => {
            let a = read_matrix(&matrix)?;
            let mut limits = Limits::default();
            if let Some(n) = max_elems {
                limits.max_elements = n;
            }
            out = format!("{}\n", graver_complexity(&a, &limits)?);
        }
        Command::Circuits { t, r } => {
            for c in enumerate_circuits(BipartiteShape::new(t, r)?)? {
                out.push_str(&format!("{}\n{c}\n", matrix_to_walk(&c)));
            }
        }
        Command::Example { name } => {
            let family = match name {
                ExampleName::Seed3x4 => seed_3x4(),
                ExampleName::Example4x4 => example_4_4(),
            };
            out = LowerBoundCertificate::from_family(&family).to_json();
        }
    }
    write_output(Path::new("-"), &out)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("resource limit: {m}");
            ExitCode::from(EXIT_RESOURCE)
        }
    }
}
