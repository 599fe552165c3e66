use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qdesign_cli::commands::{self, CliError, CliResult};

/// Construct, verify and transform quantum measurement designs.
#[derive(Parser)]
#[command(name = "qdesign", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named design and write it as JSON.
    ///
    /// Known names: standard-mub-d4, iso-mub, sic-d3, platonic-{tetra,octa,
    /// cube,icosa,dodeca}, interval-{L,HS}-t{T}-m{M}, binary-tetrahedral,
    /// binary-icosahedral, and `product` (with --simplex and --unitaries).
    Construct {
        name: String,
        /// Simplicial factor for `product`: registry name or file path.
        #[arg(long)]
        simplex: Option<String>,
        /// Unitary factor for `product`: registry name or file path.
        #[arg(long)]
        unitaries: Option<String>,
        /// Design order tag for `product` (defaults to the simplex order).
        #[arg(long)]
        order: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an ensemble, unitary family or simplex design file.
    Verify {
        /// Input path; stdin when omitted or `-`.
        input: Option<PathBuf>,
        #[arg(long = "type")]
        kind: String,
        /// Orders to test, comma separated (default 2; simplicial designs
        /// default to the order stored in the file).
        #[arg(long, value_delimiter = ',')]
        t: Vec<usize>,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Partial-trace every member over the named subsystem.
    Reduce {
        input: Option<PathBuf>,
        /// Subsystem to trace out: A or B.
        #[arg(long)]
        side: String,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Coarse-grain a pure ensemble to simplex points.
    Decohere {
        input: Option<PathBuf>,
        /// Order tag for the produced design (default 1).
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Outcome probabilities of a verified 2-design measurement.
    Probabilities {
        design: PathBuf,
        state: PathBuf,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reconstruct a state from outcome probabilities by linear inversion.
    Reconstruct {
        design: PathBuf,
        probs: PathBuf,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a residual table (2: reduced projective designs, 3: Platonic).
    Table {
        which: u8,
        /// Extra table-2 rows: `KEY=PATH` with a pure d=4 ensemble file
        /// (known keys: iso-sic, witting, hoggar).
        #[arg(long = "file")]
        files: Vec<String>,
    },
    /// Export the Bloch-ball geometry of a qubit ensemble.
    ExportBloch {
        input: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw flat-measure random density matrices.
    SampleHs {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        count: usize,
        /// Defaults to QDESIGN_SEED, then 1.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Monte-Carlo estimate of the t-fold moment operator.
    EstimateOmega {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_input(path: &Option<PathBuf>) -> CliResult<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(std::fs::read_to_string(p)?),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn read_path(p: &Path) -> CliResult<String> {
    Ok(std::fs::read_to_string(p)?)
}

fn emit(text: &str, output: &Option<PathBuf>) -> CliResult<()> {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

/// A source argument that is either a registry name or a file path.
fn name_or_file(spec: &str) -> CliResult<(&str, Option<String>)> {
    if Path::new(spec).exists() {
        Ok((spec, Some(std::fs::read_to_string(spec)?)))
    } else {
        Ok((spec, None))
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Construct {
            name,
            simplex,
            unitaries,
            order,
            output,
        } => {
            let simplex_src = match &simplex {
                Some(s) => Some(name_or_file(s)?),
                None => None,
            };
            let unitary_src = match &unitaries {
                Some(s) => Some(name_or_file(s)?),
                None => None,
            };
            let text = commands::construct(&name, simplex_src, unitary_src, order)?;
            emit(&text, &output)
        }
        Command::Verify {
            input,
            kind,
            t,
            tolerance,
            output,
        } => {
            let content = read_input(&input)?;
            let text = commands::verify(&content, &kind, &t, tolerance)?;
            emit(&text, &output)
        }
        Command::Reduce {
            input,
            side,
            tolerance,
            output,
        } => {
            let content = read_input(&input)?;
            let text = commands::reduce(&content, &side, tolerance)?;
            emit(&text, &output)
        }
        Command::Decohere {
            input,
            t,
            tolerance,
            output,
        } => {
            let content = read_input(&input)?;
            let text = commands::decohere(&content, t, tolerance)?;
            emit(&text, &output)
        }
        Command::Probabilities {
            design,
            state,
            tolerance,
            output,
        } => {
            let text = commands::probabilities(
                &read_path(&design)?,
                &read_path(&state)?,
                tolerance,
            )?;
            emit(&text, &output)
        }
        Command::Reconstruct {
            design,
            probs,
            tolerance,
            output,
        } => {
            let text = commands::reconstruct(
                &read_path(&design)?,
                &read_path(&probs)?,
                tolerance,
            )?;
            emit(&text, &output)
        }
        Command::Table { which, files } => {
            let mut ingested = Vec::new();
            for spec in &files {
                let (key, path) = spec.split_once('=').ok_or_else(|| {
                    CliError::Usage(format!("--file takes KEY=PATH, got '{spec}'"))
                })?;
                ingested.push((key.to_string(), read_path(Path::new(path))?));
            }
            let (text, mismatches) = commands::table(which, &ingested)?;
            print!("{text}");
            if mismatches > 0 {
                return Err(CliError::TableMismatch(mismatches));
            }
            Ok(())
        }
        Command::ExportBloch {
            input,
            format,
            tolerance,
            output,
        } => {
            let content = read_input(&input)?;
            let text = commands::export_bloch(&content, &format, tolerance)?;
            emit(&text, &output)
        }
        Command::SampleHs {
            dim,
            count,
            seed,
            output,
        } => {
            let text = commands::sample_hs_cmd(dim, count, seed)?;
            emit(&text, &output)
        }
        Command::EstimateOmega {
            dim,
            t,
            count,
            seed,
            output,
        } => {
            let text = commands::estimate_omega_cmd(dim, t, count, seed)?;
            emit(&text, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
