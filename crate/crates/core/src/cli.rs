//! The `ggi` command-line tool.
//!
//! Exit codes: 0 on success, 2 for usage and input errors, 3 when an internal
//! invariant check fails. `GGI_THREADS` caps worker threads (0 or unset = auto).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::baselines::{self, BaselineIndex, BaselineOptions, Metric, NeighborParams};
use crate::embedding::EmbeddingMatrix;
use crate::ensemble::{validate_ensemble, ConfigurationEnsemble};
use crate::error::{Error, Result};
use crate::ggi::{dispersion, GgiAccumulator, GgiOptions, StdConvention};
use crate::io::{
    load_embeddings_with_digest, write_csv, write_gge1, ConfigScore, EnsembleManifest, InputDigest,
    ReportDocument, ResolvedManifest,
};
use crate::transforms::{
    apply_isometry, perturb_gaussian, permute_graph, permute_rows, random_gaussian_matrix,
    random_graph, random_orthogonal, random_translation, rng, NodePermutation, RNG_ALGORITHM,
};

pub const THREADS_ENV: &str = "GGI_THREADS";

#[derive(Debug, Parser)]
#[command(name = "ggi", version, about = "Geometric stability indices for node-embedding ensembles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the Graph Gram Index of an ensemble.
    Ggi(GgiArgs),
    /// Compute one of the pairwise baseline indices.
    Baseline(BaselineArgs),
    /// Write a seeded synthetic graph and embedding ensemble.
    Synth(SynthArgs),
    /// Check that a manifest's files load and agree in shape.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct GgiArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip centering and row normalization.
    #[arg(long)]
    no_preprocess: bool,
    #[arg(long, value_enum, default_value_t = StdArg::Population)]
    std: StdArg,
    /// Include wall-clock timings (makes output run-dependent).
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, Args)]
struct BaselineArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, value_enum)]
    index: IndexArg,
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long, value_enum, default_value_t = MetricArg::Cosine)]
    metric: MetricArg,
    /// Apply the GGI centering and row normalization first.
    #[arg(long)]
    preprocess: bool,
    #[arg(long, default_value_t = baselines::DEFAULT_WASSERSTEIN_CAP)]
    wasserstein_cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    avg_degree: f64,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 10)]
    configs: usize,
    /// Standard deviation of the per-configuration Gaussian perturbation.
    #[arg(long, default_value_t = 0.1)]
    noise: f64,
    #[arg(long, value_enum, default_value_t = TransformArg::None)]
    transform: TransformArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Gge1)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StdArg {
    Population,
    Sample,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum IndexArg {
    AlignedCosine,
    KnnJaccard,
    SecondOrderCosine,
    Hausdorff,
    Wasserstein,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MetricArg {
    Cosine,
    Euclidean,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TransformArg {
    None,
    Orthogonal,
    Permutation,
    Translation,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Gge1,
    Csv,
}

impl From<StdArg> for StdConvention {
    fn from(a: StdArg) -> Self {
        match a {
            StdArg::Population => StdConvention::Population,
            StdArg::Sample => StdConvention::Sample,
        }
    }
}

impl From<IndexArg> for BaselineIndex {
    fn from(a: IndexArg) -> Self {
        match a {
            IndexArg::AlignedCosine => BaselineIndex::AlignedCosine,
            IndexArg::KnnJaccard => BaselineIndex::KnnJaccard,
            IndexArg::SecondOrderCosine => BaselineIndex::SecondOrderCosine,
            IndexArg::Hausdorff => BaselineIndex::Hausdorff,
            IndexArg::Wasserstein => BaselineIndex::Wasserstein,
        }
    }
}

impl From<MetricArg> for Metric {
    fn from(a: MetricArg) -> Self {
        match a {
            MetricArg::Cosine => Metric::Cosine,
            MetricArg::Euclidean => Metric::Euclidean,
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code. Output goes to stdout/stderr.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = thread_pool().and_then(|pool| pool.install(|| dispatch(cli.command)));
    match result {
        Ok(Output { text, path }) => match path {
            Some(p) => match std::fs::write(&p, text) {
                Ok(()) => 0,
                Err(e) => report_error(err, &Error::io(p, e)),
            },
            None => match out.write_all(text.as_bytes()) {
                Ok(()) => 0,
                Err(e) => report_error(err, &Error::io("<stdout>", e)),
            },
        },
        Err(e) => report_error(err, &e),
    }
}

fn report_error(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "ggi: error: {e}");
    e.exit_code()
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse::<usize>().map_err(|_| {
            Error::InvalidInput(format!("{THREADS_ENV}={v:?} is not a non-negative integer"))
        })?,
        _ => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Invariant(format!("cannot start thread pool: {e}")))
}

struct Output {
    text: String,
    path: Option<PathBuf>,
}

fn dispatch(command: Command) -> Result<Output> {
    match command {
        Command::Ggi(args) => {
            let doc = run_ggi(&args)?;
            Ok(Output { text: doc.to_json(), path: args.out })
        }
        Command::Baseline(args) => {
            let doc = run_baseline(&args)?;
            Ok(Output { text: doc.to_json(), path: args.out })
        }
        Command::Synth(args) => Ok(Output { text: run_synth(&args)?, path: None }),
        Command::Validate(args) => {
            let text = run_validate(&args)?;
            Ok(Output { text, path: args.out })
        }
    }
}

fn digest(role: &str, path: &Path, sha256: String) -> InputDigest {
    InputDigest {
        role: role.to_string(),
        path: path.display().to_string(),
        sha256,
    }
}

fn ms_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn run_ggi(args: &GgiArgs) -> Result<ReportDocument> {
    let start = Instant::now();
    let resolved = ResolvedManifest::load(&args.manifest)?;
    let manifest = &resolved.manifest;
    let (loaded, graph_digests) = resolved.load_graph()?;
    let mut inputs: Vec<InputDigest> = graph_digests
        .into_iter()
        .map(|(role, p, d)| digest(&role, &p, d))
        .collect();
    let t_graph = ms_since(start);

    let opts = GgiOptions {
        preprocess: !args.no_preprocess,
        std: args.std.into(),
    };
    let mut acc = GgiAccumulator::new(&loaded.graph, opts);
    for (l, rel) in manifest.embedding_paths.iter().enumerate() {
        let (z, sha) = load_embeddings_with_digest(resolved.embedding_path(l))?;
        if z.rows() != loaded.graph.node_count() {
            return Err(Error::ShapeMismatch {
                config: l,
                detail: format!(
                    "{} has {} rows but the graph has {} nodes",
                    rel.display(),
                    z.rows(),
                    loaded.graph.node_count()
                ),
            });
        }
        inputs.push(digest("embedding", rel, sha));
        acc.push(z)?;
    }
    let report = acc.finish()?;

    let scores = report.scores();
    let recomputed = dispersion(&scores, opts.std);
    if recomputed.to_bits() != report.index_value.to_bits() {
        return Err(Error::Invariant(format!(
            "index {} does not match its per-configuration scores ({recomputed})",
            report.index_value
        )));
    }

    let timings_ms = args.timings.then(|| {
        BTreeMap::from([
            ("load_graph".to_string(), t_graph),
            ("total".to_string(), ms_since(start)),
        ])
    });
    Ok(ReportDocument {
        tool: "ggi".into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        command: "ggi".into(),
        index_name: report.index_name.clone(),
        index_value: report.index_value,
        index_percent: report.index_percent,
        per_config: Some(
            report
                .per_config
                .iter()
                .map(|s| ConfigScore {
                    config_index: s.config_index,
                    label: manifest.label(s.config_index).map(str::to_string),
                    score: s.score,
                })
                .collect(),
        ),
        per_pair: None,
        options: json!({
            "preprocess": opts.preprocess,
            "std": opts.std,
        }),
        metadata: json!({
            "n_configs": report.n_configs,
            "node_count": report.metadata.node_count,
            "edge_count": report.metadata.edge_count,
            "embedding_dims": report.metadata.embedding_dims,
            "degenerate_rows": report.metadata.degenerate_rows,
            "self_loops_dropped": loaded.cleanup.self_loops_dropped,
            "duplicate_edges_dropped": loaded.cleanup.duplicates_dropped,
            "percent_scale": "index_percent = 100 * index_value",
        }),
        inputs,
        timings_ms,
    })
}

/// Loads every configuration of a manifest into memory, checked against the graph.
fn load_ensemble(
    resolved: &ResolvedManifest,
) -> Result<(ConfigurationEnsemble, crate::io::LoadedGraph, Vec<InputDigest>)> {
    let (loaded, graph_digests) = resolved.load_graph()?;
    let mut inputs: Vec<InputDigest> = graph_digests
        .into_iter()
        .map(|(role, p, d)| digest(&role, &p, d))
        .collect();
    let mut configs: Vec<EmbeddingMatrix> = Vec::new();
    for (l, rel) in resolved.manifest.embedding_paths.iter().enumerate() {
        let (z, sha) = load_embeddings_with_digest(resolved.embedding_path(l))?;
        inputs.push(digest("embedding", rel, sha));
        configs.push(z);
    }
    let ensemble = ConfigurationEnsemble::new(configs)?;
    validate_ensemble(&ensemble, &loaded.graph)?;
    Ok((ensemble, loaded, inputs))
}

fn run_baseline(args: &BaselineArgs) -> Result<ReportDocument> {
    let start = Instant::now();
    let resolved = ResolvedManifest::load(&args.manifest)?;
    let (ensemble, _graph, inputs) = load_ensemble(&resolved)?;
    let t_load = ms_since(start);
    let index: BaselineIndex = args.index.into();
    let opts = BaselineOptions {
        neighbors: NeighborParams::new(args.k, args.metric.into()),
        preprocess: args.preprocess,
        wasserstein_cap: args.wasserstein_cap,
    };
    let report = baselines::baseline_index(&ensemble, index, &opts)?;
    let recomputed = baselines::PairwiseIndexReport::from_pairs(index, report.per_pair.clone());
    if recomputed.aggregate.to_bits() != report.aggregate.to_bits() || !report.aggregate.is_finite() {
        return Err(Error::Invariant(format!(
            "aggregate {} does not match its per-pair scores",
            report.aggregate
        )));
    }
    let uses_neighbors = matches!(index, BaselineIndex::KnnJaccard | BaselineIndex::SecondOrderCosine);
    let timings_ms = args.timings.then(|| {
        BTreeMap::from([
            ("load".to_string(), t_load),
            ("total".to_string(), ms_since(start)),
        ])
    });
    Ok(ReportDocument {
        tool: "ggi".into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        command: "baseline".into(),
        index_name: report.index_name.clone(),
        index_value: report.aggregate,
        index_percent: report.aggregate * 100.0,
        per_config: None,
        per_pair: Some(report.per_pair.clone()),
        options: json!({
            "index": index,
            "k": uses_neighbors.then_some(args.k),
            "metric": uses_neighbors.then_some(Metric::from(args.metric)),
            "preprocess": args.preprocess,
            "wasserstein_cap": matches!(index, BaselineIndex::Wasserstein).then_some(args.wasserstein_cap),
        }),
        metadata: json!({
            "n_configs": ensemble.len(),
            "node_count": ensemble.node_count(),
            "embedding_dims": ensemble.dims(),
            "pair_convention": report.pair_convention,
            "zero_vectors": report.zero_vectors,
            "degenerate_alignments": report.degenerate_alignments,
        }),
        inputs,
        timings_ms,
    })
}

fn run_validate(args: &ValidateArgs) -> Result<String> {
    let resolved = ResolvedManifest::load(&args.manifest)?;
    let (ensemble, loaded, inputs) = load_ensemble(&resolved)?;
    let summary = validate_ensemble(&ensemble, &loaded.graph)?;
    let doc = json!({
        "tool": "ggi",
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": "validate",
        "summary": summary,
        "graph": loaded,
        "inputs": inputs,
    });
    Ok(serde_json::to_string_pretty(&doc).expect("serializes") + "\n")
}

fn run_synth(args: &SynthArgs) -> Result<String> {
    if args.configs < 2 {
        return Err(Error::TooFewConfigs(args.configs));
    }
    if args.dim == 0 {
        return Err(Error::InvalidInput("--dim must be positive".into()));
    }
    std::fs::create_dir_all(&args.out_dir).map_err(|e| Error::io(&args.out_dir, e))?;

    // Sub-seeds are drawn from one master stream in a fixed order.
    let mut master = rng(args.seed);
    let mut next = || rand::Rng::random::<u64>(&mut master);
    let graph_seed = next();
    let base_seed = next();
    let perm_seed = next();
    let config_seeds: Vec<(u64, u64)> = (0..args.configs).map(|_| (next(), next())).collect();

    let mut graph = random_graph(args.nodes, args.avg_degree, graph_seed)?;
    let base = random_gaussian_matrix(args.nodes, args.dim, base_seed)?;
    let sigma = matches!(args.transform, TransformArg::Permutation)
        .then(|| NodePermutation::random(args.nodes, perm_seed));
    if let Some(sigma) = &sigma {
        graph = permute_graph(&graph, sigma)?;
    }

    let graph_name = "graph.edges";
    let mut edge_text = format!(
        "# synthetic graph: {} nodes, {} edges, seed {}\n",
        graph.node_count(),
        graph.edge_count(),
        args.seed
    );
    for &(i, j) in graph.edges() {
        edge_text.push_str(&format!("{i} {j}\n"));
    }
    let graph_path = args.out_dir.join(graph_name);
    std::fs::write(&graph_path, edge_text).map_err(|e| Error::io(&graph_path, e))?;

    let ext = match args.format {
        FormatArg::Gge1 => "gge",
        FormatArg::Csv => "csv",
    };
    let mut embedding_paths = Vec::new();
    let mut labels = Vec::new();
    for (l, &(noise_seed, transform_seed)) in config_seeds.iter().enumerate() {
        let mut z = perturb_gaussian(&base, args.noise, noise_seed)?;
        z = match args.transform {
            TransformArg::None => z,
            TransformArg::Orthogonal => apply_isometry(&z, &random_orthogonal(args.dim, transform_seed))?,
            TransformArg::Translation => {
                apply_isometry(&z, &random_translation(args.dim, 5.0, transform_seed))?
            }
            TransformArg::Permutation => permute_rows(&z, sigma.as_ref().expect("drawn above"))?,
        };
        let label = format!("config_{l:03}");
        let name = format!("{label}.{ext}");
        let path = args.out_dir.join(&name);
        match args.format {
            FormatArg::Gge1 => write_gge1(&path, &z)?,
            FormatArg::Csv => write_csv(&path, &z)?,
        }
        embedding_paths.push(PathBuf::from(name));
        labels.push(label);
    }

    let manifest = EnsembleManifest {
        graph_path: graph_name.into(),
        embedding_paths,
        labels: Some(labels),
        node_id_map: None,
        node_count: Some(args.nodes),
    };
    let manifest_path = args.out_dir.join("manifest.json");
    let manifest_text = serde_json::to_string_pretty(&manifest).expect("serializes") + "\n";
    std::fs::write(&manifest_path, manifest_text).map_err(|e| Error::io(&manifest_path, e))?;

    let doc = json!({
        "tool": "ggi",
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": "synth",
        "manifest": manifest_path.display().to_string(),
        "nodes": graph.node_count(),
        "edges": graph.edge_count(),
        "dim": args.dim,
        "configs": args.configs,
        "noise": args.noise,
        "transform": args.transform,
        "seed": args.seed,
        "rng": RNG_ALGORITHM,
    });
    Ok(serde_json::to_string_pretty(&doc).expect("serializes") + "\n")
}
