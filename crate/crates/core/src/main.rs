use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use vqseg::harness::{self, Algorithm, SweepConfig};
use vqseg::solve::DEFAULT_SHOTS;
use vqseg::{
    brute_force_min_cut, solve, BitVector, GridGraph, Method, OptimizerConfig, OptimizerKind,
    SolveConfig,
};

#[derive(Parser)]
#[command(name = "vqseg", version, about = "Variational min-cut image segmentation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded random grid graph as an edge list
    Gen {
        /// Pixel count (a perfect square)
        #[arg(long, default_value_t = 16)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a graph file variationally and print the solution as JSON
    Solve {
        graph: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Segment a PGM image into a PBM mask plus a JSON summary
    Segment {
        image: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Mask output path
        #[arg(long)]
        out: PathBuf,
        /// Summary path (default: mask path with a .json extension)
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Run a benchmark sweep against the exact optimum
    Bench(BenchArgs),
    /// Print circuit resource estimates
    Resources {
        #[arg(long, value_delimiter = ',', default_values = ["qaoa", "pge", "abe", "ace"])]
        method: Vec<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [4u64, 16, 1024, 1 << 20])]
        sizes: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_values_t = [1u64, 5])]
        layers: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively solve a graph file
    Oracle {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value = "ace")]
    method: Method,
    #[arg(long, default_value_t = 1)]
    layers: usize,
    #[arg(long, default_value_t = DEFAULT_SHOTS)]
    shots: u64,
    #[arg(long, default_value = "de")]
    optimizer: OptimizerKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct BudgetArgs {
    /// Cost-evaluation budget
    #[arg(long)]
    max_evaluations: Option<usize>,
}

impl BudgetArgs {
    fn apply(&self, cfg: &mut OptimizerConfig) {
        if let Some(m) = self.max_evaluations {
            cfg.max_evaluations = m;
        }
    }
}

impl SolverArgs {
    fn config(&self) -> SolveConfig {
        let mut cfg = SolveConfig::new(self.method, self.optimizer, self.seed);
        cfg.layers = self.layers;
        cfg.shots = self.shots;
        self.budget.apply(&mut cfg.optimizer_config);
        cfg
    }
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = harness::DEFAULT_SIZES)]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = harness::DEFAULT_SEEDS)]
    seeds: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_values = ["ace"])]
    method: Vec<Method>,
    #[arg(long, value_delimiter = ',', default_values = ["de"])]
    optimizer: Vec<OptimizerKind>,
    #[arg(long, value_delimiter = ',', default_values_t = [1usize])]
    layers: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_SHOTS)]
    shots: u64,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Serialize)]
struct SolveReport {
    method: Method,
    optimizer: OptimizerKind,
    layers: usize,
    shots: u64,
    seed: u64,
    bits: BitVector,
    cost: f64,
    optimizer_cost: f64,
    evaluations: usize,
    converged: bool,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Gen { size, seed, out } => {
            let g = GridGraph::random(harness::grid_side(size)?, seed);
            emit(out.as_deref(), g.to_edge_list().as_bytes())
        }
        Command::Solve { graph, solver, out } => {
            let g = read_graph(&graph)?;
            let cfg = solver.config();
            let s = solve(&g, &cfg)?;
            let report = SolveReport {
                method: cfg.method,
                optimizer: cfg.optimizer,
                layers: cfg.layers,
                shots: cfg.shots,
                seed: cfg.seed,
                bits: s.bits,
                cost: s.cost,
                optimizer_cost: s.optimizer.best_cost,
                evaluations: s.optimizer.evaluations,
                converged: s.optimizer.converged,
            };
            emit(out.as_deref(), json(&report)?.as_bytes())
        }
        Command::Segment { image, solver, out, summary } => {
            let summary = summary.unwrap_or_else(|| out.with_extension("json"));
            let s = harness::segment_image(&image, &solver.config(), &out, &summary)?;
            eprintln!(
                "cost {} after {} evaluations; mask {}, summary {}",
                s.cost,
                s.evaluations,
                out.display(),
                summary.display()
            );
            Ok(())
        }
        Command::Bench(args) => {
            let mut cfg = SweepConfig {
                sizes: args.sizes,
                methods: args.method,
                optimizers: args.optimizer,
                layers: args.layers,
                seeds: args.seeds,
                shots: args.shots,
                optimizer_config: OptimizerConfig::default(),
            };
            args.budget.apply(&mut cfg.optimizer_config);
            let records = harness::run_sweep(&cfg)?;
            let mut buf = Vec::new();
            match args.format {
                Format::Csv => harness::emit_csv(&records, &mut buf)?,
                Format::Json => {
                    harness::emit_json(&records, &mut buf)?;
                    buf.push(b'\n');
                }
            }
            emit(args.out.as_deref(), &buf)
        }
        Command::Resources { method, sizes, layers, format, out } => {
            let methods = method.iter().map(|m| m.parse::<Algorithm>()).collect::<vqseg::Result<Vec<_>>>()?;
            let mut rows = Vec::new();
            for &m in &methods {
                for &n in &sizes {
                    for &l in &layers {
                        rows.push(harness::resource_estimate(m, n, l)?);
                    }
                }
            }
            let mut buf = Vec::new();
            match format {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut buf);
                    for r in &rows {
                        w.serialize(r)?;
                    }
                    w.flush()?;
                }
                Format::Json => buf = (json(&rows)?).into_bytes(),
            }
            emit(out.as_deref(), &buf)
        }
        Command::Oracle { graph, out } => {
            let g = read_graph(&graph)?;
            emit(out.as_deref(), json(&brute_force_min_cut(&g)?)?.as_bytes())
        }
    }
}

fn read_graph(path: &Path) -> Result<GridGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    GridGraph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}
