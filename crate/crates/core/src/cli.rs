//! The `nbspectra` command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or I/O error, 3 a size
//! cap was hit. Floats are printed with 12 significant digits and exact
//! rationals as `"p/q"` strings.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{gap_report, independence_numbers, inertia_bounds_check_for, summary_csv, summary_row};
use crate::cospectral::{cospectral_scan_with, Operator};
use crate::counting::nb_fraction;
use crate::enumerate::enumerate_graphs;
use crate::error::{Error, Result};
use crate::graph::{Family, SimpleGraph};
use crate::linalg::{char_poly, q, Spectrum};
use crate::nb::NbGraph;
use crate::partite::circular_partite_analysis;
use crate::plot::spectrum_svg;
use crate::report::{rational, rounded};
use crate::spectral::NbLaplacian;
use crate::verify::{verify, Status};
use crate::DEFAULT_TOL;

/// Environment variable capping the worker pool size.
pub const THREADS_VAR: &str = "NBSPECTRA_THREADS";

#[derive(Debug, Parser)]
#[command(name = "nbspectra", version, about = "Non-backtracking graphs and Laplacians: spectra, bounds and checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the NB graph; writes JSON and, with --out, `B` as Matrix Market
    Build {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigenvalues of one operator
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "nb_laplacian")]
        operator: Operator,
        /// Also print the exact characteristic polynomial
        #[arg(long)]
        char_poly: bool,
    },
    /// Spectral gap against its bounds; --max-n sweeps the enumeration
    Gap {
        #[command(flatten)]
        input: OptionalInput,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Feasible circular k-partitions and a witness labeling
    Partite {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Independence numbers of the NB graph and the inertia-type bounds
    Independence {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Run the named check suite
    Verify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Count cospectral graphs per order and operator
    Scan {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long)]
        allow_n8: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fraction of digraphs on N vertices that are NB graphs
    Fraction {
        #[arg(value_name = "N")]
        order: usize,
    },
    /// SVG of the spectrum inside the disc D(1, 1)
    Plot {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "nb_laplacian")]
        operator: Operator,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Graph file: `.g6`/`.graph6`, `.json`, otherwise an edge list
    #[arg(long = "in", value_name = "PATH")]
    pub path: Option<PathBuf>,
    /// Named family, e.g. `petal:2,3`, `complete:4`, `wheel:6`
    #[arg(long = "gen", value_name = "FAMILY")]
    pub family: Option<Family>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
pub struct OptionalInput {
    #[arg(long = "in", value_name = "PATH")]
    pub path: Option<PathBuf>,
    #[arg(long = "gen", value_name = "FAMILY")]
    pub family: Option<Family>,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Eigenvalue tolerance, in (0, 1e-2]
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Common {
    fn tol(&self) -> Result<f64> {
        if self.tol > 0.0 && self.tol <= 1e-2 {
            Ok(self.tol)
        } else {
            Err(Error::Argument(format!("--tol must lie in (0, 1e-2], got {}", self.tol)))
        }
    }
}

impl Input {
    pub fn load(&self) -> Result<SimpleGraph> {
        load(self.path.as_deref(), self.family)
    }
}

fn load(path: Option<&Path>, family: Option<Family>) -> Result<SimpleGraph> {
    match (path, family) {
        (Some(p), None) => read_graph(p),
        (None, Some(f)) => f.build(),
        _ => Err(Error::Argument("exactly one of --in and --gen is required".into())),
    }
}

/// Reads a graph, choosing the format by extension.
pub fn read_graph(path: &Path) -> Result<SimpleGraph> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6" | "graph6") => {
            let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
            let first = lines.next().ok_or_else(|| Error::parse(0, "empty graph6 file"))?;
            if lines.next().is_some() {
                return Err(Error::Argument(format!("{}: expected a single graph", path.display())));
            }
            crate::graph6::parse(first)
        }
        Some("json") => SimpleGraph::from_json(&serde_json::from_str(&text)?),
        _ => SimpleGraph::parse_edge_list(&text),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(&rounded(value))? + "\n")
}

fn spectrum_of(g: &SimpleGraph, op: Operator, tol: f64) -> Result<Spectrum> {
    match op {
        Operator::NbLaplacian => NbLaplacian::new(g)?.spectrum(tol),
        _ => Spectrum::from_char_poly(op.name(), &char_poly(&op.matrix(g)?), tol),
    }
}

/// Sizes the global worker pool from [`THREADS_VAR`].
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Argument(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")))?;
    // a pool configured earlier in this process wins
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Runs one command and returns its exit code.
pub fn run(cli: Cli) -> Result<i32> {
    configure_threads()?;
    match cli.command {
        Command::Build { input, out } => build(&input.load()?, out.as_deref()),
        Command::Spectrum { input, common, operator, char_poly: with_poly } => {
            let g = input.load()?;
            let spec = spectrum_of(&g, operator, common.tol()?)?;
            let mut value = rounded(&spec.to_json());
            if with_poly {
                let cp = char_poly(&operator.matrix(&g)?);
                value["char_poly"] = cp.coeffs().iter().map(rational).collect();
            }
            emit(common.out.as_deref(), &(serde_json::to_string_pretty(&value)? + "\n"))?;
            Ok(0)
        }
        Command::Gap { input, common, max_n, format } => {
            let tol = common.tol()?;
            let graphs = match (max_n, input.path.as_deref(), input.family) {
                (Some(n), None, None) => enumerate_graphs(n, 2)?.into_iter().filter(|g| !g.has_cycle_component()).collect(),
                (None, path, family) => vec![load(path, family)?],
                _ => return Err(Error::Argument("--max-n cannot be combined with --in or --gen".into())),
            };
            match format {
                Format::Csv => {
                    let rows = graphs.iter().map(|g| summary_row(g, tol)).collect::<Result<Vec<_>>>()?;
                    emit(common.out.as_deref(), &summary_csv(&rows)?)?;
                    Ok(exit(rows.iter().all(|r| r.gap_bounds == "pass")))
                }
                Format::Json => {
                    let reports = graphs.iter().map(|g| gap_report(g, tol)).collect::<Result<Vec<_>>>()?;
                    let ok = reports.iter().all(|r| r.holds());
                    let text = if max_n.is_some() { json(&reports)? } else { json(&reports[0])? };
                    emit(common.out.as_deref(), &text)?;
                    Ok(exit(ok))
                }
            }
        }
        Command::Partite { input, out } => {
            emit(out.as_deref(), &json(&circular_partite_analysis(&input.load()?)?)?)?;
            Ok(0)
        }
        Command::Independence { input, common } => {
            let g = input.load()?;
            let tol = common.tol()?;
            let nb = NbGraph::new(&g)?;
            let independence = independence_numbers(&nb)?;
            let mut value = serde_json::json!({ "independence": independence });
            let mut ok = true;
            if g.min_degree() >= 2 {
                let lap = NbLaplacian::new(&g)?;
                let reports = [q(0, 1), q(1, 1)]
                    .iter()
                    .map(|a| inertia_bounds_check_for(&lap, a, tol))
                    .collect::<Result<Vec<_>>>()?;
                ok = reports.iter().all(|r| r.holds());
                value["inertia"] = serde_json::to_value(&reports)?;
            }
            emit(common.out.as_deref(), &json(&value)?)?;
            Ok(exit(ok))
        }
        Command::Verify { input, common } => {
            let report = verify(&input.load()?, common.tol()?)?;
            emit(common.out.as_deref(), &json(&report)?)?;
            for c in report.checks.iter().filter(|c| c.status == Status::Fail) {
                eprintln!("FAIL {}: {}", c.name, c.witnesses.join("; "));
            }
            Ok(exit(report.passed()))
        }
        Command::Scan { max_n, allow_n8, format, out } => {
            let progress = |n: usize, done: usize| {
                if done.is_multiple_of(1000) {
                    eprintln!("n = {n}: {done} graphs keyed");
                }
            };
            let result = cospectral_scan_with(max_n, allow_n8, &progress)?;
            let text = match format {
                Format::Csv => result.to_csv(),
                Format::Json => json(&result)?,
            };
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Fraction { order } => {
            if order == 0 {
                return Err(Error::Argument("N must be at least 1".into()));
            }
            let f = nb_fraction(order);
            emit(None, &json(&serde_json::json!({ "order": order, "fraction": f.to_string() }))?)?;
            Ok(0)
        }
        Command::Plot { input, common, operator } => {
            let g = input.load()?;
            let spec = spectrum_of(&g, operator, common.tol()?)?;
            let title = format!("{} of {}", operator, crate::graph6::encode(&g));
            emit(common.out.as_deref(), &spectrum_svg(&spec, &title))?;
            Ok(0)
        }
    }
}

fn exit(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn build(g: &SimpleGraph, out: Option<&Path>) -> Result<i32> {
    let nb = NbGraph::new(g)?;
    let text = serde_json::to_string_pretty(&nb.to_json())? + "\n";
    match out {
        Some(path) => {
            fs::write(path, text)?;
            let mtx = path.with_extension("mtx");
            fs::write(&mtx, nb.matrix_market())?;
            println!("{} vertices, {} arcs -> {}, {}", nb.len(), nb.arc_count(), path.display(), mtx.display());
        }
        None => emit(None, &text)?,
    }
    Ok(0)
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
