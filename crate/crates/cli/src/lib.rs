//! Argument parsing and dispatch for the `icolor` binary.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use icolor_core::construct::{complete_bipartite_coloring_of, even_cycle_coloring_of};
use icolor_core::generators::{complete, complete_bipartite};
use icolor_core::{
    bounds, chromatic_index_small, compose, compose_coloring, find_continuous_use,
    find_interval_t, generate, knn_prescribed_lse, lower_spectral_edge, regular_delta_color,
    search_k2n_max, spectra, tree_continuous_use, upper_spectral_edge, verify_interval,
    ColorSequence, EdgeColoring, Error, Family, Graph, SearchBudget, SearchOutcome,
};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "icolor", version, about = "Interval edge-colorings of graphs and their compositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a graph from a named family.
    Gen {
        #[arg(long)]
        family: Family,
        /// Comma-separated parameters, e.g. "3,4".
        #[arg(long)]
        params: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the lexicographic product G[H].
    Compose {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Color a graph with a named construction.
    Color {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        strategy: ColorStrategy,
        /// Prescribed lower spectral edge for knn-lse, e.g. "1,2,2".
        #[arg(long)]
        lse: Option<String>,
        /// Number of colors for the search strategy.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Color G[H] from colorings of G and H.
    ComposeColor {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        gcol: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        hcol: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check that a coloring is an interval coloring.
    Verify {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print vertex spectra and the spectral edges.
    Spectra {
        #[arg(long)]
        coloring: PathBuf,
        /// Comma-separated vertex ids; defaults to all vertices.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Every achievable number of colors, by exhaustive search.
    Bounds {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search for a single coloring.
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: Option<usize>,
        /// Require a continuous upper spectral edge.
        #[arg(long, conflicts_with_all = ["t", "chromatic_index"])]
        continuous_use: bool,
        /// Compute the chromatic index instead.
        #[arg(long, conflicts_with = "t")]
        chromatic_index: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a coloring in Graphviz DOT format.
    ExportDot {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum ColorStrategy {
    Tree,
    Kmn,
    EvenCycle,
    Regular,
    KnnLse,
    K2nMax,
    Search,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    #[arg(long)]
    max_edges: Option<usize>,
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long)]
    time_limit_ms: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> anyhow::Result<SearchBudget> {
        let mut b = SearchBudget::from_env()?;
        if let Some(e) = self.max_edges {
            b.max_edges = e;
        }
        if let Some(n) = self.max_nodes {
            b.max_nodes = n;
        }
        if let Some(ms) = self.time_limit_ms {
            b.time_limit = Some(Duration::from_millis(ms));
        }
        b.validate()?;
        Ok(b)
    }
}

/// Failure that maps to a specific exit code.
#[derive(Debug)]
struct ExitError {
    code: i32,
    message: String,
}

fn exit(code: i32, message: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(ExitError {
        code,
        message: message.into(),
    })
}

impl std::fmt::Display for ExitError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for ExitError {}

/// Runs the CLI on `argv` (including the program name), writing reports to
/// `stdout` and diagnostics to `stderr`. Returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let code = exit_code(&e);
            let _ = writeln!(stderr, "error: {e:#}");
            code
        }
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    if let Some(x) = e.downcast_ref::<ExitError>() {
        return x.code;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::BudgetExhausted(_) | Error::NotFound(_)) => EXIT_NOT_FOUND,
        _ => EXIT_INVALID,
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> anyhow::Result<()> {
    match cmd {
        Command::Gen {
            family,
            params,
            seed,
            out: path,
        } => {
            let params = parse_list::<usize>(&params, "params")?;
            let g = generate(family, &params, seed)?;
            write_file(&path, &g.to_json()?)
        }
        Command::Compose { g, h, out: path } => {
            let p = compose(&read_graph(&g)?, &read_graph(&h)?)?;
            write_file(&path, &p.to_json()?)
        }
        Command::Color {
            graph,
            strategy,
            lse,
            t,
            out: path,
            budget,
        } => {
            let g = read_graph(&graph)?;
            let c = color(&g, strategy, lse.as_deref(), t, &budget)?;
            write_file(&path, &c.to_json()?)
        }
        Command::ComposeColor {
            g,
            gcol,
            h,
            hcol,
            out: path,
            report,
        } => {
            let c = compose_coloring(
                &read_graph(&g)?,
                &read_coloring(&gcol)?,
                &read_graph(&h)?,
                &read_coloring(&hcol)?,
            )?;
            write_file(&path, &c.to_json()?)?;
            let cert = verify_interval(&c);
            emit(out, report.as_deref(), &cert.to_json()?)?;
            if !cert.valid {
                return Err(exit(EXIT_VERIFY_FAILED, "product coloring failed verification"));
            }
            Ok(())
        }
        Command::Verify { coloring, report } => {
            let cert = verify_interval(&read_coloring(&coloring)?);
            emit(out, report.as_deref(), &cert.to_json()?)?;
            if !cert.valid {
                return Err(exit(
                    EXIT_VERIFY_FAILED,
                    format!("not an interval coloring ({} violations)", cert.violations.len()),
                ));
            }
            Ok(())
        }
        Command::Spectra { coloring, subset } => {
            let c = read_coloring(&coloring)?;
            let vs = match subset {
                Some(s) => parse_list::<usize>(&s, "subset")?,
                None => (0..c.graph().num_vertices()).collect(),
            };
            let table = spectra(&c)?;
            let mut per_vertex = Map::new();
            for &v in &vs {
                if v >= table.len() {
                    bail!("vertex {v} out of range");
                }
                per_vertex.insert(v.to_string(), json!(table.spectrum(v)));
            }
            let report = json!({
                "spectra": per_vertex,
                "lse": lower_spectral_edge(&c, &vs)?.as_slice(),
                "use": upper_spectral_edge(&c, &vs)?.as_slice(),
            });
            emit(out, None, &pretty(&report)?)
        }
        Command::Bounds { graph, budget } => {
            let g = read_graph(&graph)?;
            match bounds(&g, &budget.budget()?)? {
                SearchOutcome::Found(b) => {
                    let report = json!({
                        "graph": g.name(),
                        "colorable": b.is_colorable(),
                        "achievable": b.achievable,
                        "w": b.min(),
                        "W": b.max(),
                    });
                    emit(out, None, &pretty(&report)?)
                }
                SearchOutcome::ProvenNone => unreachable!("bounds reports an empty set instead"),
                SearchOutcome::BudgetExhausted => Err(exit(EXIT_NOT_FOUND, "search budget exhausted")),
            }
        }
        Command::Search {
            graph,
            t,
            continuous_use,
            chromatic_index,
            budget,
            out: path,
        } => {
            let g = read_graph(&graph)?;
            let budget = budget.budget()?;
            if chromatic_index {
                return match chromatic_index_small(&g, &budget)? {
                    SearchOutcome::Found(k) => {
                        emit(out, None, &pretty(&json!({ "graph": g.name(), "chromatic_index": k }))?)
                    }
                    _ => Err(exit(EXIT_NOT_FOUND, "search budget exhausted")),
                };
            }
            let outcome = if continuous_use {
                find_continuous_use(&g, &budget)?
            } else {
                match t {
                    Some(t) => find_interval_t(&g, t, &budget)?,
                    None => minimal(&g, &budget)?,
                }
            };
            match outcome {
                SearchOutcome::Found(c) => {
                    if let Some(path) = path {
                        write_file(&path, &c.to_json()?)?;
                    }
                    emit(out, None, &verify_interval(&c).to_json()?)
                }
                SearchOutcome::ProvenNone if continuous_use => {
                    writeln!(out, "no continuous USE")?;
                    Err(exit(EXIT_NOT_FOUND, format!("no continuous USE coloring of {}", g.name())))
                }
                SearchOutcome::ProvenNone => {
                    writeln!(out, "no interval coloring")?;
                    Err(exit(EXIT_NOT_FOUND, format!("no interval coloring of {}", g.name())))
                }
                SearchOutcome::BudgetExhausted => Err(exit(EXIT_NOT_FOUND, "search budget exhausted")),
            }
        }
        Command::ExportDot { coloring, out: path } => {
            write_file(&path, &icolor_core::dot::to_dot(&read_coloring(&coloring)?))
        }
    }
}

fn color(
    g: &Graph,
    strategy: ColorStrategy,
    lse: Option<&str>,
    t: Option<usize>,
    budget: &BudgetArgs,
) -> anyhow::Result<EdgeColoring> {
    Ok(match strategy {
        ColorStrategy::Tree => tree_continuous_use(g)?,
        ColorStrategy::Kmn => complete_bipartite_coloring_of(g)?,
        ColorStrategy::EvenCycle => even_cycle_coloring_of(g)?,
        ColorStrategy::Regular => regular_delta_color(g)?,
        ColorStrategy::KnnLse => {
            let raw = lse.ok_or_else(|| anyhow!("--lse is required for knn-lse"))?;
            let mut values = parse_list::<i64>(raw, "lse")?;
            values.sort_unstable();
            let seq = ColorSequence::new(values)?;
            if !seq.is_continuous() {
                bail!("--lse must be continuous, got {seq}");
            }
            let n = g.num_vertices() / 2;
            if n == 0 || !same_shape(g, &complete_bipartite(n, n)?) {
                bail!("knn-lse needs the generated complete_bipartite n,n graph");
            }
            knn_prescribed_lse(n, &seq)?
        }
        ColorStrategy::K2nMax => {
            let n = g.num_vertices() / 2;
            if n == 0 || !same_shape(g, &complete(2 * n)?) {
                bail!("k2n-max needs the generated complete graph on an even number of vertices");
            }
            search_k2n_max(n)?
        }
        ColorStrategy::Search => {
            let budget = budget.budget()?;
            let outcome = match t {
                Some(t) => find_interval_t(g, t, &budget)?,
                None => minimal(g, &budget)?,
            };
            match outcome {
                SearchOutcome::Found(c) => c,
                SearchOutcome::ProvenNone => {
                    return Err(exit(EXIT_NOT_FOUND, format!("no interval coloring of {}", g.name())))
                }
                SearchOutcome::BudgetExhausted => {
                    return Err(exit(EXIT_NOT_FOUND, "search budget exhausted"))
                }
            }
        }
    })
}

/// Coloring with the fewest colors, if any exists.
fn minimal(g: &Graph, budget: &SearchBudget) -> anyhow::Result<SearchOutcome<EdgeColoring>> {
    if g.is_edgeless() {
        bail!("{} has no edges", g.name());
    }
    for t in g.max_degree()..=g.num_edges() {
        match find_interval_t(g, t, budget)? {
            SearchOutcome::ProvenNone => continue,
            other => return Ok(other),
        }
    }
    Ok(SearchOutcome::ProvenNone)
}

fn same_shape(a: &Graph, b: &Graph) -> bool {
    a.num_vertices() == b.num_vertices() && a.edges() == b.edges()
}

fn parse_list<T: std::str::FromStr>(raw: &str, what: &str) -> anyhow::Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    raw.trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| anyhow!("bad --{what} entry '{s}': {e}")))
        .collect()
}

fn pretty(v: &Value) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::from_json(&text).with_context(|| format!("parsing graph {}", path.display()))
}

fn read_coloring(path: &Path) -> anyhow::Result<EdgeColoring> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    EdgeColoring::from_json(&text).with_context(|| format!("parsing coloring {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: &mut dyn Write, report: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match report {
        Some(path) => write_file(path, text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("icolor").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        let (code, out, err) = run_str(&["verify", "--bogus"]);
        assert_eq!(code, EXIT_INVALID);
        assert!(out.is_empty());
        assert!(err.contains("Usage"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("export-dot"));
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list::<i64>("(1, 2,3)", "lse").unwrap(), vec![1, 2, 3]);
        assert!(parse_list::<usize>("1,x", "params").is_err());
    }

    #[test]
    fn missing_file_is_invalid_input() {
        let (code, _, err) = run_str(&["verify", "--coloring", "/nonexistent/c.json"]);
        assert_eq!(code, EXIT_INVALID);
        assert!(err.contains("reading"));
    }
}
