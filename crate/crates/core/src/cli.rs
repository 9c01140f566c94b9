//! Command-line interface: generation, spectra, Poincare estimates, bounds,
//! Cheeger constants, verification suites, and bound comparison, with JSON or
//! aligned-table reports.
//!
//! Exit codes: 0 success, 1 verification checks failed, 2 input or usage
//! error, 3 resource or convergence error, 4 inequality check inconclusive
//! (heuristic left-hand side).

use crate::bounds::{
    compare_bounds, main_bound, main_bound_dirichlet, search_best_family, FamilySearchMode,
};
use crate::error::Error;
use crate::generators::{
    chain_of_cliques, mesh_domain_with_boundary, mesh_ma, random_weighted_graph,
    BoundaryHandling, MeshShape, MeshSpec, WeightDist,
};
use crate::graph::{SubsetFamily, VertexSet, WeightedGraph};
use crate::io::{read_family_json, read_graph_tsv, write_graph_tsv, FamilySpec};
use crate::multiway::{self, SearchMode};
use crate::spectral::{
    dirichlet_spectrum_for, full_spectrum, partial_spectrum, DirichletProblem, SpectrumResult,
};
use crate::variational::{brute_force_nu, nu_upper, Certification, Flavor, OptimizerOptions};
use crate::verify::{run_suite, VerifyConfig};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "spectral-bounds",
    version,
    about = "Poincare constants, Cheeger constants, and subset-family eigenvalue bounds on weighted graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate instance graphs and families.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Eigenvalues of the weighted graph Laplacian (or a Dirichlet problem).
    Spectrum(SpectrumArgs),
    /// p-Poincare constant estimates.
    Poincare(PoincareArgs),
    /// Subset-family bounds: evaluate, search, verify.
    Bound {
        #[command(subcommand)]
        what: BoundCommand,
    },
    /// Multi-way Cheeger constants.
    Cheeger(CheegerArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Compare the bound formulas on one family.
    Compare(CompareArgs),
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Chain of complete graphs joined by paths, normalized weights.
    Chain {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        clique: usize,
        #[arg(long)]
        path: usize,
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        family: Option<PathBuf>,
    },
    /// Comb-shaped rectangle-union mesh with its test families.
    Ma {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        h: f64,
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        family: Option<PathBuf>,
        /// Write the covering blocks instead of the disjoint test sets.
        #[arg(long)]
        blocks: bool,
    },
    /// Mesh of a Euclidean domain with a designated boundary.
    Mesh {
        #[arg(long, value_enum)]
        shape: ShapeArg,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 1.0)]
        width: f64,
        #[arg(long, default_value_t = 1.0)]
        height: f64,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long)]
        graph_out: Option<PathBuf>,
        /// Write the boundary set as a family file.
        #[arg(long)]
        family: Option<PathBuf>,
    },
    /// Seeded connected random weighted graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.4)]
        edge_prob: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Uniform weight range lower end (1.0 with --w-hi 1.0 gives unit weights).
        #[arg(long, default_value_t = 1.0)]
        w_lo: f64,
        #[arg(long, default_value_t = 1.0)]
        w_hi: f64,
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShapeArg {
    Square,
    Rect,
    Disk,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Compute only the smallest k+1 eigenvalues iteratively.
    #[arg(long)]
    k: Option<usize>,
    /// Dirichlet problem from this family file (boundary preferred, else the
    /// first set as the domain).
    #[arg(long)]
    family: Option<PathBuf>,
    /// Include eigenvectors in the report.
    #[arg(long)]
    eigenvectors: bool,
}

#[derive(Args, Debug)]
struct PoincareArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, value_enum, default_value_t = FlavorArg::Neumann)]
    flavor: FlavorArg,
    /// Use the quantized brute-force oracle with this many grid levels.
    #[arg(long)]
    grid_levels: Option<usize>,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[arg(long, default_value_t = 0xC0FFEE)]
    seed: u64,
    /// Family file for the dirichlet flavor (boundary or first set as domain).
    #[arg(long)]
    family: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FlavorArg {
    Neumann,
    Modified,
    Dirichlet,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Neumann => Flavor::Neumann,
            FlavorArg::Modified => Flavor::Modified,
            FlavorArg::Dirichlet => Flavor::Dirichlet,
        }
    }
}

#[derive(Subcommand, Debug)]
enum BoundCommand {
    /// Evaluate the bound formulas on a family.
    Eval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Also estimate the left-hand side and report a verdict.
        #[arg(long)]
        check: bool,
    },
    /// Search for the family minimizing the main bound.
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = SearchModeArg::Anneal)]
        mode: SearchModeArg,
        #[arg(long, default_value_t = 1e6)]
        budget: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Exhaustive soundness sweep (alias for `verify --suite main`).
    Verify {
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 9)]
        max_v: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 300)]
        trials: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchModeArg {
    Exhaustive,
    Greedy,
    Anneal,
}

impl From<SearchModeArg> for FamilySearchMode {
    fn from(m: SearchModeArg) -> FamilySearchMode {
        match m {
            SearchModeArg::Exhaustive => FamilySearchMode::Exhaustive,
            SearchModeArg::Greedy => FamilySearchMode::Greedy,
            SearchModeArg::Anneal => FamilySearchMode::Anneal,
        }
    }
}

#[derive(Args, Debug)]
struct CheegerArgs {
    #[command(subcommand)]
    action: Option<CheegerAction>,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, value_enum, default_value_t = CheegerModeArg::Exhaustive)]
    mode: CheegerModeArg,
    /// Constrain the family to a full partition.
    #[arg(long)]
    partition: bool,
}

#[derive(Subcommand, Debug)]
enum CheegerAction {
    /// Federer-Fleming and multiway sweeps.
    Verify {
        #[arg(long, default_value_t = 8)]
        sweep: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheegerModeArg {
    Exhaustive,
    Heuristic,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 9)]
    max_v: usize,
    #[arg(long, default_value_t = 300)]
    trials: usize,
    /// Reduced sizes for a smoke run.
    #[arg(long)]
    quick: bool,
    /// Force full exhaustive sweeps (the default; overrides --quick).
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    family: PathBuf,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> crate::Result<i32> {
    match &cli.command {
        Command::Gen { what } => run_gen(cli, what),
        Command::Spectrum(args) => run_spectrum(cli, args),
        Command::Poincare(args) => run_poincare(cli, args),
        Command::Bound { what } => run_bound(cli, what),
        Command::Cheeger(args) => run_cheeger(cli, args),
        Command::Verify(args) => run_verify(cli, args),
        Command::Compare(args) => run_compare(cli, args),
    }
}

fn emit(cli: &Cli, json: serde_json::Value, table: Option<String>) -> crate::Result<()> {
    let body = match (cli.format, table) {
        (OutputFormat::Table, Some(t)) => t,
        _ => serde_json::to_string_pretty(&json)?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body + "\n")?,
        None => print_ignoring_closed_pipe(&body),
    }
    Ok(())
}

/// Writes a line to stdout, treating a closed pipe as a normal end of output.
fn print_ignoring_closed_pipe(body: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{body}");
}

fn load_graph(path: &PathBuf) -> crate::Result<WeightedGraph> {
    read_graph_tsv(path)
}

/// Builds a Dirichlet problem from a family file: a designated boundary when
/// present, otherwise the first set as the intrinsic domain.
fn dirichlet_problem_from_family(
    graph: &WeightedGraph,
    family: Option<&SubsetFamily>,
    boundary: Option<&VertexSet>,
) -> crate::Result<DirichletProblem> {
    if let Some(boundary) = boundary {
        return DirichletProblem::designated(graph, boundary.clone());
    }
    if let Some(family) = family {
        return DirichletProblem::intrinsic(graph, family.set(0).clone());
    }
    Err(Error::InvalidParameter {
        name: "family",
        reason: "dirichlet problems need a family file with a boundary or a first set".into(),
    })
}

fn run_gen(cli: &Cli, what: &GenCommand) -> crate::Result<i32> {
    #[derive(Serialize)]
    struct GenSummary {
        vertices: usize,
        edges: usize,
        total_weight: f64,
        families_written: usize,
    }
    let (graph, family_spec, graph_out, family_out) = match what {
        GenCommand::Chain {
            k,
            clique,
            path,
            graph_out,
            family,
        } => {
            let (g, fam) = chain_of_cliques(*k, *clique, *path)?;
            let spec = FamilySpec::from_family(&fam, None);
            (g, Some(spec), graph_out.clone(), family.clone())
        }
        GenCommand::Ma {
            k,
            a,
            h,
            graph_out,
            family,
            blocks,
        } => {
            let (mesh, a_fam, b_fam) = mesh_ma(*k, *a, *h)?;
            let fam = if *blocks { b_fam } else { a_fam };
            let spec = FamilySpec::from_family(&fam, None);
            (mesh.graph, Some(spec), graph_out.clone(), family.clone())
        }
        GenCommand::Mesh {
            shape,
            h,
            width,
            height,
            radius,
            graph_out,
            family,
        } => {
            let shape = match shape {
                ShapeArg::Square => MeshShape::Rectangle {
                    width: 1.0,
                    height: 1.0,
                },
                ShapeArg::Rect => MeshShape::Rectangle {
                    width: *width,
                    height: *height,
                },
                ShapeArg::Disk => MeshShape::Disk { radius: *radius },
            };
            let (mesh, boundary) = mesh_domain_with_boundary(&MeshSpec {
                shape,
                spacing: *h,
                boundary: BoundaryHandling::DesignatedBoundarySet,
            })?;
            let spec = FamilySpec {
                sets: Vec::new(),
                boundary: Some(boundary.iter().collect()),
            };
            (mesh.graph, Some(spec), graph_out.clone(), family.clone())
        }
        GenCommand::Random {
            n,
            edge_prob,
            seed,
            w_lo,
            w_hi,
            graph_out,
        } => {
            let dist = if w_lo == w_hi {
                WeightDist::Unit
            } else {
                WeightDist::Uniform(*w_lo, *w_hi)
            };
            let g = random_weighted_graph(*n, *edge_prob, dist, *seed)?;
            (g, None, graph_out.clone(), None)
        }
    };
    let mut families_written = 0;
    if let (Some(spec), Some(path)) = (&family_spec, &family_out) {
        std::fs::write(path, serde_json::to_string_pretty(spec)?)?;
        families_written = 1;
    }
    // For gen, a bare --out names the graph file.
    let graph_out = graph_out.or_else(|| cli.out.clone());
    match &graph_out {
        Some(path) => {
            write_graph_tsv(&graph, path)?;
            let summary = GenSummary {
                vertices: graph.vertex_count(),
                edges: graph.edge_count(),
                total_weight: graph.total_weight(),
                families_written,
            };
            print_ignoring_closed_pipe(&serde_json::to_string_pretty(&summary)?);
        }
        None => {
            // No output path: print the TSV itself so the command is usable
            // in pipelines.
            print_ignoring_closed_pipe(crate::io::graph_to_tsv(&graph).trim_end());
        }
    }
    Ok(0)
}

fn spectrum_table(s: &SpectrumResult) -> String {
    let mut rows = vec![vec!["index".to_string(), "eigenvalue".to_string()]];
    for (i, l) in s.eigenvalues.iter().enumerate() {
        rows.push(vec![i.to_string(), format!("{l:.12}")]);
    }
    format_table(&rows)
}

fn run_spectrum(cli: &Cli, args: &SpectrumArgs) -> crate::Result<i32> {
    let graph = load_graph(&args.graph)?;
    let spectrum = if let Some(path) = &args.family {
        let (family, boundary) = read_family_json(path, &graph)?;
        let problem = dirichlet_problem_from_family(&graph, family.as_ref(), boundary.as_ref())?;
        match args.k {
            Some(k) => crate::spectral::dirichlet_smallest(&graph, &problem, k + 1)?,
            None => dirichlet_spectrum_for(&graph, &problem)?,
        }
    } else {
        match args.k {
            Some(k) => partial_spectrum(&graph, k)?,
            None => full_spectrum(&graph)?,
        }
    };
    let table = spectrum_table(&spectrum);
    emit(cli, spectrum.to_json(args.eigenvectors), Some(table))?;
    Ok(0)
}

fn run_poincare(cli: &Cli, args: &PoincareArgs) -> crate::Result<i32> {
    let graph = load_graph(&args.graph)?;
    let flavor: Flavor = args.flavor.into();
    let loaded = match &args.family {
        Some(path) => {
            let (f, b) = read_family_json(path, &graph)?;
            Some((f, b))
        }
        None => None,
    };
    let problem = if flavor == Flavor::Dirichlet {
        let (family, boundary) = loaded.as_ref().ok_or(Error::InvalidParameter {
            name: "family",
            reason: "dirichlet flavor needs --family".into(),
        })?;
        Some(dirichlet_problem_from_family(
            &graph,
            family.as_ref(),
            boundary.as_ref(),
        )?)
    } else {
        None
    };
    let estimate = match args.grid_levels {
        Some(levels) => brute_force_nu(&graph, args.k, args.p, flavor, levels, problem.as_ref())?,
        None => {
            let opts = OptimizerOptions {
                restarts: args.restarts,
                seed: args.seed,
                ..OptimizerOptions::default()
            };
            nu_upper(&graph, args.k, args.p, flavor, problem.as_ref(), &opts)?
        }
    };
    emit(cli, serde_json::to_value(&estimate)?, None)?;
    Ok(0)
}

#[derive(Serialize)]
struct BoundEvalReport {
    schema_version: String,
    toolkit_version: String,
    p: f64,
    k: usize,
    separation: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary_separation: Option<usize>,
    total_weight: f64,
    volumes: Vec<f64>,
    main_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    dirichlet_bound: Option<f64>,
    comparison: crate::bounds::BoundComparison,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationOutcome>,
}

#[derive(Serialize)]
struct VerificationOutcome {
    lhs_value: f64,
    lhs_certification: Certification,
    verdict: String,
    margin: f64,
}

fn run_bound(cli: &Cli, what: &BoundCommand) -> crate::Result<i32> {
    match what {
        BoundCommand::Eval {
            graph,
            family,
            p,
            check,
        } => {
            let g = load_graph(graph)?;
            let (fam, boundary) = read_family_json(family, &g)?;
            let fam = fam.ok_or(Error::InvalidParameter {
                name: "family",
                reason: "bound eval needs at least one set".into(),
            })?;
            let k = fam.len() - 1;
            let spectrum = full_spectrum(&g).ok();
            let comparison = compare_bounds(&g, &fam, spectrum.as_ref())?;
            let main = main_bound(&g, &fam, *p)?;
            let (dirichlet_bound, boundary_separation) = match &boundary {
                Some(b) => (
                    Some(main_bound_dirichlet(&g, &fam, b, *p)?),
                    Some(fam.boundary_separation(&g, b)?),
                ),
                None => (None, None),
            };
            let mut exit = 0;
            let verification = if *check {
                let opts = OptimizerOptions::default();
                let estimate = nu_upper(&g, k.max(1), *p, Flavor::Neumann, None, &opts)?;
                let lhs = estimate.value.powf(1.0 / p);
                let margin = main - lhs;
                let verdict = if matches!(estimate.certification, Certification::Heuristic) {
                    exit = 4;
                    "inconclusive (heuristic LHS)"
                } else if lhs <= main + 1e-9 {
                    "confirmed"
                } else if estimate.certification.is_exact() {
                    "violated"
                } else {
                    exit = 4;
                    "inconclusive (certified-upper LHS exceeds bound)"
                };
                Some(VerificationOutcome {
                    lhs_value: lhs,
                    lhs_certification: estimate.certification,
                    verdict: verdict.into(),
                    margin,
                })
            } else {
                None
            };
            let report = BoundEvalReport {
                schema_version: "1".into(),
                toolkit_version: env!("CARGO_PKG_VERSION").into(),
                p: *p,
                k,
                separation: fam.separation(&g)?,
                boundary_separation,
                total_weight: g.total_weight(),
                volumes: fam.volumes().to_vec(),
                main_bound: main,
                dirichlet_bound,
                comparison,
                verification,
            };
            let table = bound_table(&report);
            emit(cli, serde_json::to_value(&report)?, Some(table))?;
            Ok(exit)
        }
        BoundCommand::Search {
            graph,
            k,
            mode,
            budget,
            seed,
        } => {
            let g = load_graph(graph)?;
            let result = search_best_family(&g, *k, (*mode).into(), *budget as u64, *seed)?;
            emit(cli, serde_json::to_value(&result)?, None)?;
            Ok(0)
        }
        BoundCommand::Verify {
            exhaustive: _,
            max_v,
            seed,
            trials,
        } => {
            let cfg = VerifyConfig {
                seed: *seed,
                max_v: *max_v,
                trials: *trials,
                quick: false,
            };
            let report = run_suite("main", &cfg)?;
            let passed = report.passed;
            emit(cli, serde_json::to_value(&report)?, Some(verify_table(&report)))?;
            Ok(if passed { 0 } else { 1 })
        }
    }
}

fn run_cheeger(cli: &Cli, args: &CheegerArgs) -> crate::Result<i32> {
    match &args.action {
        Some(CheegerAction::Verify { sweep, seed }) => {
            let cfg = VerifyConfig {
                seed: *seed,
                max_v: *sweep,
                trials: 40,
                quick: false,
            };
            let mut report = run_suite("federer-fleming", &cfg)?;
            let multiway_suite = crate::verify::run_multiway_sweep(&cfg);
            report.suites.push(multiway_suite);
            report.passed = report.suites.iter().all(|s| s.passed);
            let passed = report.passed;
            emit(cli, serde_json::to_value(&report)?, Some(verify_table(&report)))?;
            Ok(if passed { 0 } else { 1 })
        }
        None => {
            let path = args.graph.as_ref().ok_or(Error::InvalidParameter {
                name: "graph",
                reason: "cheeger needs --graph (or the `verify` subcommand)".into(),
            })?;
            let g = load_graph(path)?;
            let mode = match args.mode {
                CheegerModeArg::Exhaustive => SearchMode::Exhaustive,
                CheegerModeArg::Heuristic => SearchMode::Heuristic,
            };
            let profile = multiway::multiway_constant(&g, args.k, mode, args.partition)?;
            let table = {
                let mut rows = vec![vec!["set".to_string(), "size".to_string(), "expansion".to_string()]];
                for (i, (s, e)) in profile.sets.iter().zip(&profile.expansions).enumerate() {
                    rows.push(vec![i.to_string(), s.len().to_string(), format!("{e:.9}")]);
                }
                rows.push(vec!["max".to_string(), String::new(), format!("{:.9}", profile.value)]);
                format_table(&rows)
            };
            emit(cli, serde_json::to_value(&profile)?, Some(table))?;
            Ok(0)
        }
    }
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> crate::Result<i32> {
    let cfg = VerifyConfig {
        seed: args.seed,
        max_v: args.max_v,
        trials: args.trials,
        quick: args.quick && !args.exhaustive,
    };
    let report = run_suite(&args.suite, &cfg)?;
    let passed = report.passed;
    emit(cli, serde_json::to_value(&report)?, Some(verify_table(&report)))?;
    Ok(if passed { 0 } else { 1 })
}

fn run_compare(cli: &Cli, args: &CompareArgs) -> crate::Result<i32> {
    let g = load_graph(&args.graph)?;
    let (fam, _) = read_family_json(&args.family, &g)?;
    let fam = fam.ok_or(Error::InvalidParameter {
        name: "family",
        reason: "compare needs at least two sets".into(),
    })?;
    if args.p != 2.0 {
        // The discrete CGY row needs exact eigenvalues; other rows are p-free.
        let comparison = compare_bounds(&g, &fam, None)?;
        let table = comparison_table(&comparison);
        emit(cli, serde_json::to_value(&comparison)?, Some(table))?;
        return Ok(0);
    }
    let spectrum = full_spectrum(&g)?;
    let comparison = compare_bounds(&g, &fam, Some(&spectrum))?;
    let table = comparison_table(&comparison);
    emit(cli, serde_json::to_value(&comparison)?, Some(table))?;
    Ok(0)
}

// --- table rendering ---------------------------------------------------------

fn format_table(rows: &[Vec<String>]) -> String {
    if rows.is_empty() {
        return String::new();
    }
    let cols = rows.iter().map(Vec::len).max().unwrap();
    let mut widths = vec![0usize; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, cell)| format!("{cell:<width$}", width = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn comparison_table(cmp: &crate::bounds::BoundComparison) -> String {
    let mut rows = vec![vec![
        "bound".to_string(),
        "quantity".to_string(),
        "applicable".to_string(),
        "value".to_string(),
    ]];
    for e in &cmp.entries {
        rows.push(vec![
            e.name.clone(),
            e.bounds_quantity.clone(),
            e.applicable.to_string(),
            e.value.map_or("-".into(), |v| format!("{v:.9}")),
        ]);
    }
    rows.push(vec![
        "predicted winner".into(),
        cmp.predicted_winner.clone(),
        "matches".into(),
        cmp.prediction_matches.to_string(),
    ]);
    format_table(&rows)
}

fn bound_table(report: &BoundEvalReport) -> String {
    let mut rows = vec![
        vec!["field".to_string(), "value".to_string()],
        vec!["separation".into(), report.separation.to_string()],
        vec!["main bound".into(), format!("{:.9}", report.main_bound)],
    ];
    if let Some(d) = report.dirichlet_bound {
        rows.push(vec!["dirichlet bound".into(), format!("{d:.9}")]);
    }
    if let Some(v) = &report.verification {
        rows.push(vec!["verdict".into(), v.verdict.clone()]);
    }
    format_table(&rows)
}

fn verify_table(report: &crate::verify::VerifyReport) -> String {
    let mut rows = vec![vec![
        "suite".to_string(),
        "check".to_string(),
        "status".to_string(),
        "detail".to_string(),
    ]];
    for suite in &report.suites {
        for c in &suite.checks {
            rows.push(vec![
                suite.suite.clone(),
                c.name.clone(),
                if c.passed { "PASS".into() } else { "FAIL".into() },
                c.detail.clone(),
            ]);
        }
    }
    rows.push(vec![
        "overall".into(),
        String::new(),
        if report.passed { "PASS".into() } else { "FAIL".into() },
        String::new(),
    ]);
    format_table(&rows)
}
