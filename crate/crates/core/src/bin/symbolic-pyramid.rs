use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use symbolic_pyramid::engine::default_max_iterations;
use symbolic_pyramid::{check_pyramid, io as docs, run_caps, run_capso, Error, RowId};

#[derive(Parser)]
#[command(version, about = "Symbolic pyramidal clustering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a pyramid from a table document. CAPSO runs when --order is given, CAPS otherwise.
    Build {
        /// Table document, or `-` for standard input.
        #[arg(long)]
        input: String,
        /// Fixed row order, e.g. `3,1,2`.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<RowId>>,
        /// Iteration budget; defaults to N(N-1)/2 + N.
        #[arg(long = "max-iter")]
        max_iter: Option<usize>,
        /// Also report, per node, the rows matching its object to at least this degree.
        #[arg(long)]
        alpha: Option<f64>,
        /// Pyramid document, or `-` for standard output.
        #[arg(long)]
        output: String,
        /// Write a Graphviz rendering here.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Check the pyramid axioms and fail when any is violated.
        #[arg(long)]
        validate: bool,
    },
}

enum Failure {
    Input(Error),
    Algorithm(Error),
    Invalid,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_algorithm_failure() {
            Failure::Algorithm(e)
        } else {
            Failure::Input(e)
        }
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn write_output(path: &str, text: &str) -> Result<(), Error> {
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.write_all(b"\n")?;
    } else {
        fs::write(path, format!("{text}\n"))?;
    }
    Ok(())
}

fn build(command: Command) -> Result<(), Failure> {
    let Command::Build {
        input,
        order,
        max_iter,
        alpha,
        output,
        dot,
        validate,
    } = command;

    let table = docs::parse_table(&read_input(&input)?)?;
    let max_iter = max_iter.unwrap_or_else(|| default_max_iterations(table.len()));
    if let Some(a) = alpha {
        if !(0.0..=1.0).contains(&a) {
            return Err(Failure::Input(Error::Usage(format!(
                "alpha {a} is outside [0, 1]"
            ))));
        }
    }
    let pyramid = match &order {
        Some(order) => run_capso(&table, order, max_iter)?,
        None => run_caps(&table, max_iter)?,
    };

    let mut doc = docs::emit_pyramid(&pyramid, &table, alpha)?;
    let mut valid = true;
    if validate {
        let report = check_pyramid(&pyramid.structure, &table);
        eprintln!("{report}");
        valid = report.passed();
        doc.validation = Some(report);
    }
    write_output(&output, &doc.to_json())?;
    if let Some(path) = dot {
        fs::write(path, docs::emit_dot(&pyramid.structure)).map_err(Error::from)?;
    }
    if valid {
        Ok(())
    } else {
        Err(Failure::Invalid)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match build(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Algorithm(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid) => {
            eprintln!("error: the result is not a valid symbolic pyramid");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
