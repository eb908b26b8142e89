//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when the input cannot be read or fails
//! validation, 2 on usage errors (unknown flags, out-of-range values).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bonds::BondSystem;
use crate::error::Error;
use crate::format::GraphFile;
use crate::graph::{build_example, MagneticGraph};
use crate::reference::{dihedral_density, lasso_reference_density};
use crate::sampling::random_lengths;
use crate::spectrum::{band_intervals, density, BandSettings};
use crate::torus::mc_volume;

#[derive(Debug, Parser)]
#[command(name = "band-density", version, about = "Band structure and band density of periodic quantum graphs")]
pub struct Cli {
    /// Worker threads (default: available parallelism). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write output to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct LengthArgs {
    /// Override edge lengths, comma separated, in file edge order.
    #[arg(long, value_delimiter = ',', conflicts_with = "random_lengths")]
    pub lengths: Option<Vec<f64>>,
    /// Draw every edge length uniformly from [1, 2) using --seed.
    #[arg(long)]
    pub random_lengths: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Clone)]
pub struct ScanArgs {
    #[arg(long, value_parser = parse_positive)]
    pub kmax: f64,
    /// Default: pi / (8 L_tot).
    #[arg(long, value_parser = parse_positive)]
    pub grid_step: Option<f64>,
    /// Default: 1e-10 max(1, kmax).
    #[arg(long, value_parser = parse_positive)]
    pub bisect_tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a graph file; prints OK when valid.
    Validate { file: String },
    /// Dump S, bond lengths and bond flux rows as CSV.
    Scattering {
        file: String,
        #[command(flatten)]
        lengths: LengthArgs,
    },
    /// Band intervals in [0, kmax] as "k_lo,k_hi" lines.
    Bands {
        file: String,
        #[command(flatten)]
        scan: ScanArgs,
        #[command(flatten)]
        lengths: LengthArgs,
    },
    /// Band density p(K) at geometrically spaced K as "K,p_sigma" lines.
    Density {
        file: String,
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long, value_parser = parse_count)]
        checkpoints: u64,
        #[command(flatten)]
        lengths: LengthArgs,
    },
    /// Monte Carlo volume of Sigma on the edge torus: "estimate,stderr,samples,seed".
    Torus {
        file: String,
        #[arg(long, value_parser = parse_count)]
        samples: u64,
        #[command(flatten)]
        lengths: LengthArgs,
    },
    /// Reference values: lasso quadrature or dihedral Monte Carlo.
    Reference {
        model: ReferenceModel,
        #[arg(long, value_parser = parse_count, default_value = "10000000")]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReferenceModel {
    Lasso,
    Dihedral,
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be positive and finite"))
    }
}

/// Positive integer count; accepts scientific notation such as `1e6`.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return if n >= 1 { Ok(n) } else { Err("count must be at least 1".into()) };
    }
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a count"))?;
    if v >= 1.0 && v.fract() == 0.0 && v <= u64::MAX as f64 {
        Ok(v as u64)
    } else {
        Err(format!("`{s}` is not a positive integer"))
    }
}

/// Seventeen significant digits, locale independent.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

enum Failure {
    Input(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => Failure::Usage(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

const BUILTIN: &str = "builtin:";

fn lengths_for(args: &LengthArgs, count: usize) -> Option<Vec<f64>> {
    if let Some(l) = &args.lengths {
        Some(l.clone())
    } else if args.random_lengths {
        Some(random_lengths(count, args.seed))
    } else {
        None
    }
}

/// Loads `source` (a path, or `builtin:<example>`) as a magnetic graph.
fn load_graph(source: &str, args: &LengthArgs) -> Result<MagneticGraph, Failure> {
    if let Some(name) = source.strip_prefix(BUILTIN) {
        let template = build_example(name)?;
        let lengths = lengths_for(args, template.slot_count())
            .ok_or_else(|| Error::UnboundLengths(name.to_string()))?;
        return Ok(template.bind(&lengths)?);
    }
    let mut input = read_file(source)?;
    if let Some(lengths) = lengths_for(args, input.edge_count()) {
        input.set_lengths(&lengths)?;
    }
    input
        .into_magnetic()
        .map_err(|e| Failure::Input(format!("{source}: {e}")))
}

fn read_file(path: &str) -> Result<crate::format::GraphInput, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?;
    GraphFile::parse(&text)
        .and_then(GraphFile::into_input)
        .map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn settings(bs: &BondSystem, scan: &ScanArgs) -> BandSettings {
    let d = BandSettings::for_system(bs, scan.kmax);
    BandSettings {
        grid_step: scan.grid_step.unwrap_or(d.grid_step),
        bisect_tol: scan.bisect_tol.unwrap_or(d.bisect_tol),
    }
}

fn dispatch(command: &Command) -> Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::Validate { file } => {
            let report = if let Some(name) = file.strip_prefix(BUILTIN) {
                build_example(name)?;
                Default::default()
            } else {
                read_file(file)?.validate()
            };
            if !report.is_valid() {
                let lines: Vec<String> =
                    report.violations.iter().map(|v| format!("{file}: {v}")).collect();
                return Err(Failure::Input(lines.join("\n")));
            }
            out.push_str("OK\n");
        }
        Command::Scattering { file, lengths } => {
            let bs = BondSystem::from_graph(&load_graph(file, lengths)?)?;
            let n = bs.bond_count();
            out.push_str("# S: row b holds the amplitudes scattered into bond b\n");
            for r in 0..n {
                let row: Vec<String> = (0..n).map(|c| fmt_num(bs.scattering()[(r, c)])).collect();
                writeln!(out, "{}", row.join(",")).unwrap();
            }
            out.push_str("# bond lengths\n");
            let row: Vec<String> = bs.bond_lengths().iter().map(|&l| fmt_num(l)).collect();
            writeln!(out, "{}", row.join(",")).unwrap();
            out.push_str("# bond flux, one row per bond\n");
            for b in 0..n {
                let row: Vec<String> = bs.bond_flux(b).iter().map(i32::to_string).collect();
                writeln!(out, "{}", row.join(",")).unwrap();
            }
        }
        Command::Bands { file, scan, lengths } => {
            let bs = BondSystem::from_graph(&load_graph(file, lengths)?)?;
            let bands = band_intervals(&bs, scan.kmax, settings(&bs, scan))?;
            for b in &bands.intervals {
                writeln!(out, "{},{}", fmt_num(b.lo), fmt_num(b.hi)).unwrap();
            }
        }
        Command::Density {
            file,
            scan,
            checkpoints,
            lengths,
        } => {
            let bs = BondSystem::from_graph(&load_graph(file, lengths)?)?;
            let series = density(&bs, scan.kmax, *checkpoints as usize, settings(&bs, scan))?;
            for (k, p) in &series.points {
                writeln!(out, "{},{}", fmt_num(*k), fmt_num(*p)).unwrap();
            }
        }
        Command::Torus {
            file,
            samples,
            lengths,
        } => {
            let bs = BondSystem::from_graph(&load_graph(file, lengths)?)?;
            let v = mc_volume(&bs, *samples, lengths.seed)?;
            writeln!(
                out,
                "{},{},{},{}",
                fmt_num(v.estimate),
                fmt_num(v.standard_error),
                v.samples,
                v.seed
            )
            .unwrap();
        }
        Command::Reference {
            model,
            samples,
            seed,
        } => {
            let r = match model {
                ReferenceModel::Lasso => lasso_reference_density(),
                ReferenceModel::Dihedral => dihedral_density(*samples, *seed)?,
            };
            writeln!(out, "{},{}", fmt_num(r.value), fmt_num(r.error_bound)).unwrap();
        }
    }
    Ok(out)
}

/// Runs the CLI on `args` (including the program name), writing results to
/// `stdout` and diagnostics to `stderr`. Returns the process exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    if cli.threads == Some(0) {
        let _ = writeln!(stderr, "error: --threads must be at least 1");
        return 2;
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start worker pool: {e}");
            return 1;
        }
    };
    let result = pool.install(|| dispatch(&cli.command));
    match result {
        Ok(text) => {
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, text) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return 1;
                }
            } else if stdout.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
