//! Command-line driver for the solver library: solve induced subgraph
//! problems over width-1 layouts, verify width bounds and chain-order dumps,
//! build graphs and layouts from structured models, generate hardness
//! instances, and query the brute-force oracles.
//!
//! Exit codes are fixed for scripting: 0 success, 2 parse error, 3 width
//! validation failure, 4 precondition violation, 5 size guard exceeded, and
//! 1 for anything else.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mimsolve_core::io::{
    parse_cotree, parse_interval_file, parse_order_file, parse_permutation_file,
};
use mimsolve_core::{
    certify_parts, compute_chain_orders, cotree_graph, cotree_layout, interval_graph,
    interval_layout, layout_from_order, parse_chain_orders, parse_dimacs, parse_newick_layout,
    permutation_graph, permutation_layout, solve, validate_width, verify_chain_orders,
    write_chain_orders, write_dimacs, write_newick_layout, Error as CoreError, Graph, ProblemKind,
    RootedLayout, TotalOrder, VertexSet,
};
use mimsolve_hardness::{build_reduction, Preset};
use mimsolve_oracles::{max_induced, mimwidth_at_most, min_deletion, vertex_cover_number};

type Result<T> = anyhow::Result<T>;

#[derive(Parser)]
#[command(
    name = "mimsolve",
    version,
    about = "Induced subgraph problems on graphs of mim-width 1",
    propagate_version = true
)]
struct Cli {
    /// Cap on worker threads; MIMSOLVE_THREADS is the fallback, then all cores.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a maximum induced subgraph problem over a width-1 layout.
    Solve(SolveArgs),
    /// Check a layout against a width bound, or check a chain-order dump.
    Verify(VerifyArgs),
    /// Build a graph and layout from an interval, permutation, cotree, or order model.
    Build(BuildArgs),
    /// Dump the chain orders computed for a width-1 layout.
    ChainOrders(ChainOrdersArgs),
    /// Generate a hardness instance from a vertex cover input graph.
    GenHardness(GenHardnessArgs),
    /// Query the brute-force oracles for ground truth on small graphs.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Problem name: cluster, clique, polar, split, p3bar-free, k3bar-free, bipartite.
    #[arg(long)]
    problem: String,
    /// Graph in DIMACS format.
    #[arg(long)]
    graph: PathBuf,
    /// Rooted layout in Newick format.
    #[arg(long)]
    layout: PathBuf,
    /// Restrict to solutions that induce a connected subgraph.
    #[arg(long)]
    connected: bool,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph in DIMACS format.
    #[arg(long)]
    graph: PathBuf,
    /// Rooted layout in Newick format.
    #[arg(long)]
    layout: PathBuf,
    /// Width bound to check the layout against.
    #[arg(long, default_value_t = 1)]
    width: usize,
    /// Verify this chain-order dump instead of the width bound.
    #[arg(long, value_name = "FILE")]
    chain_orders: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Interval,
    Permutation,
    Cotree,
    Order,
}

#[derive(Args)]
struct BuildArgs {
    /// Kind of structured model in the input file.
    #[arg(long, value_enum)]
    kind: ModelKind,
    /// Model file: intervals, a permutation, a cotree, or a vertex order.
    #[arg(long)]
    input: PathBuf,
    /// Graph in DIMACS format; required by --kind order, which derives no graph.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Write the derived graph here in DIMACS format.
    #[arg(long)]
    graph_out: Option<PathBuf>,
    /// Write the layout here in Newick format.
    #[arg(long)]
    layout_out: PathBuf,
}

#[derive(Args)]
struct ChainOrdersArgs {
    /// Graph in DIMACS format.
    #[arg(long)]
    graph: PathBuf,
    /// Rooted layout in Newick format; must pass width-1 validation.
    #[arg(long)]
    layout: PathBuf,
    /// Write the dump here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenHardnessArgs {
    /// Vertex cover input graph (DIMACS); needs girth at least 7.
    #[arg(long)]
    vc_graph: PathBuf,
    /// Gadget preset: clique, cluster, or polar.
    #[arg(long)]
    preset: String,
    /// Directory that receives graph.col, layout.nwk, and manifest.json.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    query: OracleQuery,
    /// Write the JSON answer here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OracleQuery {
    /// Size of a maximum induced subgraph with the property, plus a witness.
    MaxInduced {
        /// Problem name, as for solve.
        #[arg(long)]
        problem: String,
        /// Graph in DIMACS format.
        #[arg(long)]
        graph: PathBuf,
        /// Restrict to connected solutions.
        #[arg(long)]
        connected: bool,
    },
    /// Size of a minimum vertex deletion set that leaves the property.
    MinDeletion {
        /// Problem name, as for solve.
        #[arg(long)]
        problem: String,
        /// Graph in DIMACS format.
        #[arg(long)]
        graph: PathBuf,
    },
    /// Vertex cover number of the graph.
    VertexCover {
        /// Graph in DIMACS format.
        #[arg(long)]
        graph: PathBuf,
    },
    /// Whether the graph has mim-width at most the bound.
    MimwidthLe {
        /// Graph in DIMACS format.
        #[arg(long)]
        graph: PathBuf,
        /// Width bound to test.
        #[arg(long)]
        width: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// Map the first library error in the chain onto the fixed exit taxonomy.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(core) = cause.downcast_ref::<CoreError>() {
            return match core {
                CoreError::Parse(_) => 2,
                CoreError::WidthValidation(_) => 3,
                CoreError::Precondition(_) => 4,
                CoreError::Guard(_) => 5,
                CoreError::Contract(_) | CoreError::Invariant(_) | CoreError::Io(_) => 1,
            };
        }
    }
    1
}

fn run(cli: Cli) -> Result<()> {
    let threads = resolve_threads(cli.threads)?;
    with_thread_cap(threads, || dispatch(cli.command))
}

/// The --threads flag wins; otherwise MIMSOLVE_THREADS must hold a positive
/// integer; otherwise the library picks its own default.
fn resolve_threads(flag: Option<usize>) -> Result<Option<usize>> {
    if let Some(n) = flag {
        if n == 0 {
            return Err(CoreError::parse("--threads must be a positive integer").into());
        }
        return Ok(Some(n));
    }
    match std::env::var("MIMSOLVE_THREADS") {
        Ok(raw) => {
            let n: usize = raw.trim().parse().map_err(|_| {
                CoreError::parse(format!(
                    "MIMSOLVE_THREADS must be a positive integer, got {raw:?}"
                ))
            })?;
            if n == 0 {
                return Err(
                    CoreError::parse("MIMSOLVE_THREADS must be a positive integer").into(),
                );
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

#[cfg(feature = "parallel")]
fn with_thread_cap<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> Result<T> + Send,
) -> Result<T> {
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .context("building the worker pool")?;
            pool.install(f)
        }
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_thread_cap<T>(_threads: Option<usize>, f: impl FnOnce() -> Result<T>) -> Result<T> {
    f()
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Build(args) => cmd_build(args),
        Command::ChainOrders(args) => cmd_chain_orders(args),
        Command::GenHardness(args) => cmd_gen_hardness(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = read_text(path)?;
    parse_dimacs(&text).with_context(|| format!("parsing graph {}", path.display()))
}

fn load_layout(path: &Path, g: &Graph) -> Result<RootedLayout> {
    let text = read_text(path)?;
    parse_newick_layout(&text, g).with_context(|| format!("parsing layout {}", path.display()))
}

fn emit_json<T: Serialize>(value: &T, output: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).context("serializing result")?;
    text.push('\n');
    match output {
        Some(path) => write_text(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct StatsJson {
    nodes: usize,
    states: u64,
    runtime_ms: u64,
}

#[derive(Serialize)]
struct SolveJson {
    problem: &'static str,
    connected: bool,
    size: usize,
    vertices: Vec<String>,
    certified: bool,
    stats: StatsJson,
}

fn cmd_solve(args: SolveArgs) -> Result<()> {
    let kind = ProblemKind::parse(&args.problem)?;
    let g = load_graph(&args.graph)?;
    let layout = load_layout(&args.layout, &g)?;
    let result = solve(&g, &layout, kind, args.connected)?;

    // The solver certifies internally, but re-check the emitted witness here
    // so the run is sound end to end even if the library changes.
    let parts: Vec<VertexSet> = result
        .part_sets
        .iter()
        .map(|part| VertexSet::from_iter(g.n(), part.iter().copied()))
        .collect();
    let recheck = certify_parts(&g, kind, args.connected, &parts)?;
    if !recheck {
        return Err(
            CoreError::invariant("witness failed the final certification pass").into(),
        );
    }

    let mut vertices = result.vertices.clone();
    vertices.sort_unstable();
    let json = SolveJson {
        problem: kind.name(),
        connected: result.connected,
        size: result.size,
        vertices: vertices.into_iter().map(|v| g.label(v)).collect(),
        certified: result.certified && recheck,
        stats: StatsJson {
            nodes: result.stats.nodes,
            states: result.stats.states,
            runtime_ms: result.stats.runtime_ms,
        },
    };
    emit_json(&json, args.output.as_deref())
}

fn cmd_verify(args: VerifyArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let layout = load_layout(&args.layout, &g)?;

    if let Some(dump_path) = &args.chain_orders {
        let text = read_text(dump_path)?;
        let orders = parse_chain_orders(&text, &g, &layout)
            .with_context(|| format!("parsing chain orders {}", dump_path.display()))?;
        let report = verify_chain_orders(&g, &layout, &orders);
        if let Some(v) = report.violation {
            return Err(CoreError::width(format!(
                "chain-order condition {} fails at tree node {}",
                v.condition, v.node
            ))
            .into());
        }
        println!("chain orders: ok ({} tree nodes)", layout.node_count());
        return Ok(());
    }

    let report = validate_width(&g, &layout, args.width)?;
    if !report.ok {
        return Err(CoreError::width(format!(
            "cut at tree node {} exceeds width {}",
            report.first_violation().unwrap_or(0),
            args.width
        ))
        .into());
    }
    println!(
        "width <= {}: ok ({} cuts checked)",
        args.width, report.cuts_checked
    );
    Ok(())
}

fn cmd_build(args: BuildArgs) -> Result<()> {
    let text = read_text(&args.input)?;
    let (g, layout) = match args.kind {
        ModelKind::Interval => {
            let (intervals, labels) =
                parse_interval_file(&text).context("parsing interval model")?;
            let mut g = interval_graph(&intervals);
            g.set_labels(labels)?;
            let layout = interval_layout(&intervals).to_rooted(g.n())?;
            (g, layout)
        }
        ModelKind::Permutation => {
            let perm = parse_permutation_file(&text).context("parsing permutation model")?;
            let g = permutation_graph(&perm)?;
            let layout = permutation_layout(&perm)?.to_rooted(g.n())?;
            (g, layout)
        }
        ModelKind::Cotree => {
            let (tree, names) = parse_cotree(&text).context("parsing cotree model")?;
            let mut g = cotree_graph(&tree)?;
            g.set_labels(names)?;
            let layout = cotree_layout(&tree)?;
            (g, layout)
        }
        ModelKind::Order => {
            let graph_path = args.graph.as_deref().ok_or_else(|| {
                CoreError::parse("--kind order derives no graph; pass one with --graph")
            })?;
            let g = load_graph(graph_path)?;
            let order = parse_order_file(&text).context("parsing order model")?;
            let layout = layout_from_order(&order)?.to_rooted(g.n())?;
            (g, layout)
        }
    };

    if let Some(path) = &args.graph_out {
        write_text(path, &write_dimacs(&g))?;
    }
    write_text(&args.layout_out, &write_newick_layout(&layout, &g))?;
    println!(
        "built graph with {} vertices and {} edges; layout with {} tree nodes",
        g.n(),
        g.m(),
        layout.node_count()
    );
    Ok(())
}

fn cmd_chain_orders(args: ChainOrdersArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let layout = load_layout(&args.layout, &g)?;

    let report = validate_width(&g, &layout, 1)?;
    if !report.ok {
        return Err(CoreError::width(format!(
            "cut at tree node {} exceeds width 1; chain orders exist only at width 1",
            report.first_violation().unwrap_or(0)
        ))
        .into());
    }

    let orders = compute_chain_orders(&g, &layout, &TotalOrder::identity(g.n()))?;
    let check = verify_chain_orders(&g, &layout, &orders);
    if let Some(v) = check.violation {
        return Err(CoreError::invariant(format!(
            "computed orders violate condition {} at tree node {}",
            v.condition, v.node
        ))
        .into());
    }

    let text = write_chain_orders(&g, &layout, &orders);
    match &args.output {
        Some(path) => write_text(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ThresholdMapJson {
    /// Deletion threshold paired with cover budget k is k * multiplier.
    multiplier: usize,
    formula: &'static str,
}

#[derive(Serialize)]
struct ManifestJson {
    preset: &'static str,
    n: usize,
    ell: usize,
    threshold_map: ThresholdMapJson,
    certified_width: usize,
}

fn cmd_gen_hardness(args: GenHardnessArgs) -> Result<()> {
    let preset = Preset::parse(&args.preset)?;
    let h = load_graph(&args.vc_graph)?;
    let reduction = build_reduction(&h, &preset.base())?;

    let rooted = reduction.layout.to_rooted(reduction.g.n())?;
    let width = 2;
    let report = validate_width(&reduction.g, &rooted, width)?;
    if !report.ok {
        return Err(CoreError::invariant(format!(
            "generated layout fails width-{} validation at tree node {}",
            width,
            report.first_violation().unwrap_or(0)
        ))
        .into());
    }

    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    let graph_path = args.out_dir.join("graph.col");
    let layout_path = args.out_dir.join("layout.nwk");
    let manifest_path = args.out_dir.join("manifest.json");

    write_text(&graph_path, &write_dimacs(&reduction.g))?;
    write_text(&layout_path, &write_newick_layout(&rooted, &reduction.g))?;
    let manifest = ManifestJson {
        preset: preset.name(),
        n: reduction.vc_n,
        ell: reduction.ell,
        threshold_map: ThresholdMapJson {
            multiplier: reduction.ell * reduction.vc_n,
            formula: "k * multiplier",
        },
        certified_width: width,
    };
    emit_json(&manifest, Some(&manifest_path))?;
    println!(
        "wrote {} ({} vertices), {}, {}",
        graph_path.display(),
        reduction.g.n(),
        layout_path.display(),
        manifest_path.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct OracleSizeJson {
    query: &'static str,
    problem: &'static str,
    connected: bool,
    size: usize,
    vertices: Vec<String>,
}

#[derive(Serialize)]
struct OracleNumberJson {
    query: &'static str,
    problem: Option<&'static str>,
    size: usize,
}

#[derive(Serialize)]
struct OracleBoolJson {
    query: &'static str,
    width: usize,
    answer: bool,
}

fn cmd_oracle(args: OracleArgs) -> Result<()> {
    let output = args.output.as_deref();
    match args.query {
        OracleQuery::MaxInduced {
            problem,
            graph,
            connected,
        } => {
            let kind = ProblemKind::parse(&problem)?;
            let g = load_graph(&graph)?;
            let (size, witness) = max_induced(&g, kind, connected)?;
            let json = OracleSizeJson {
                query: "max-induced",
                problem: kind.name(),
                connected,
                size,
                vertices: witness.into_iter().map(|v| g.label(v)).collect(),
            };
            emit_json(&json, output)
        }
        OracleQuery::MinDeletion { problem, graph } => {
            let kind = ProblemKind::parse(&problem)?;
            let g = load_graph(&graph)?;
            let size = min_deletion(&g, kind)?;
            let json = OracleNumberJson {
                query: "min-deletion",
                problem: Some(kind.name()),
                size,
            };
            emit_json(&json, output)
        }
        OracleQuery::VertexCover { graph } => {
            let g = load_graph(&graph)?;
            let size = vertex_cover_number(&g)?;
            let json = OracleNumberJson {
                query: "vertex-cover",
                problem: None,
                size,
            };
            emit_json(&json, output)
        }
        OracleQuery::MimwidthLe { graph, width } => {
            let g = load_graph(&graph)?;
            let answer = mimwidth_at_most(&g, width)?.is_some();
            let json = OracleBoolJson {
                query: "mimwidth-le",
                width,
                answer,
            };
            emit_json(&json, output)
        }
    }
}
