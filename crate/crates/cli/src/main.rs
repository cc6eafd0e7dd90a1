//! `tetris`: experiment driver for random-walk triangle estimators.
//!
//! Exit codes: 0 success, 2 bad input (parse error or invalid flags),
//! 3 every trial failed, 4 I/O error, 1 anything else.

mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use tetris_core::experiment::{
    derive_seed, emit_csv, emit_summary_csv, resolve_seed, run_experiment, seed_bucket_experiment,
    summarize, summarize_by, ExperimentPlan, Grouping, RunRecord, SeedPolicy, Summary,
};
use tetris_core::graph::write_binary;
use tetris_core::oracle::SessionRng;
use tetris_core::{
    generate, random_walk, Algorithm, Error, Graph, OracleSession, RunOptions, RNG_ALGORITHM,
};

#[derive(Parser)]
#[command(
    name = "tetris",
    version,
    about = "Random-walk triangle counting experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print exact structural statistics as JSON.
    Stats {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Print the exact triangle count.
    Exact {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Repeated trials of one estimator.
    Run {
        #[command(flatten)]
        exp: ExperimentArgs,
        #[arg(long, default_value = "tetris")]
        algo: Algorithm,
        /// Write the edge sequence of the first trial's walk, one edge per line.
        #[arg(long, value_name = "PATH")]
        dump_trace: Option<PathBuf>,
    },
    /// Repeated trials of several estimators.
    Sweep {
        #[command(flatten)]
        exp: ExperimentArgs,
        /// Comma-separated estimator names; all by default.
        #[arg(long, value_delimiter = ',', default_values_t = Algorithm::ALL.to_vec())]
        algo: Vec<Algorithm>,
    },
    /// Repeated trials from four seeds per degree bucket `floor(log10 d)`.
    Buckets {
        #[command(flatten)]
        exp: ExperimentArgs,
        #[arg(long, value_delimiter = ',', default_value = "tetris")]
        algo: Vec<Algorithm>,
    },
    /// Write a synthetic graph as an edge list.
    Gen {
        #[command(subcommand)]
        model: Model,
        #[arg(long, default_value_t = 1, global = true)]
        seed: u64,
        /// Keep only the largest connected component.
        #[arg(long, global = true)]
        largest_component: bool,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Convert an edge list to the binary CSR format.
    Convert {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum Model {
    /// Preferential attachment with triad formation.
    HolmeKim {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        links: usize,
        #[arg(long, default_value_t = 0.5)]
        triad_p: f64,
    },
    /// Random geometric graph on the unit torus.
    Geometric {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        radius: f64,
    },
    /// Dense communities joined by uniform cross edges.
    Planted {
        #[arg(long)]
        communities: usize,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        p_in: f64,
        #[arg(long, default_value_t = 0)]
        inter: usize,
    },
    /// Uniform graph with exactly `m` edges.
    Gnm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Walk lengths, comma-separated.
    #[arg(long = "r", value_delimiter = ',', required = true)]
    r: Vec<usize>,
    /// Subsample count as a fraction of r.
    #[arg(long, default_value_t = 0.05)]
    ell_frac: f64,
    #[arg(long, default_value_t = 25)]
    tmix: usize,
    #[arg(long, default_value_t = 100)]
    repeats: usize,
    /// Seed vertex label, or `random` for one uniform non-isolated vertex.
    #[arg(long, default_value = "random")]
    seed_vertex: String,
    #[arg(long, default_value_t = 0)]
    master_seed: u64,
    /// Reject queries on vertices the walk has not revealed.
    #[arg(long)]
    strict_oracle: bool,
    /// Lazy walk: stay put with probability 1/2.
    #[arg(long)]
    lazy: bool,
    /// RWS counts triangles with walk-edge multiplicities.
    #[arg(long)]
    rws_multiplicity: bool,
    /// Skip the exact count; error columns stay empty.
    #[arg(long)]
    no_exact: bool,
    /// Diagnostic: give estimators the true edge count.
    #[arg(long)]
    exact_m: bool,
    /// Diagnostic: give VertexMCMC the true wedge count.
    #[arg(long)]
    exact_w: bool,
    /// Per-run CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a summary CSV here.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 4,
        Error::Csv(c) if c.is_io_error() => 4,
        Error::Parse { .. }
        | Error::Format(_)
        | Error::EmptyGraph
        | Error::InvalidConfig(_)
        | Error::VertexOutOfRange { .. } => 2,
        _ => 1,
    }
}

fn parse_seed_policy(s: &str) -> Result<SeedPolicy, Error> {
    if s == "random" {
        return Ok(SeedPolicy::UniformRandom);
    }
    s.parse().map(SeedPolicy::Fixed).map_err(|_| {
        Error::InvalidConfig(format!(
            "seed vertex must be a label or `random`, got {s:?}"
        ))
    })
}

fn open_sink(path: Option<&Path>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

struct Prepared {
    loaded: input::LoadedGraph,
    plan: ExperimentPlan,
    truth: Option<u64>,
}

fn prepare(exp: &ExperimentArgs, algorithms: Vec<Algorithm>) -> Result<Prepared, Error> {
    let loaded = input::load(&exp.graph)?;
    let g = &loaded.graph;
    let stats = if exp.no_exact && !exp.exact_w {
        None
    } else {
        Some(input::exact_stats(&loaded)?.0)
    };
    if let Some(s) = &stats {
        if s.components > 1 {
            eprintln!(
                "warning: graph has {} components; walks see only the seed's",
                s.components
            );
        }
    }
    let mut plan = ExperimentPlan::new(loaded.name.clone(), algorithms, exp.r.clone());
    plan.ell_frac = exp.ell_frac;
    plan.t_hat_mix = exp.tmix;
    plan.repeats = exp.repeats;
    plan.seed_policy = parse_seed_policy(&exp.seed_vertex)?;
    plan.master_seed = exp.master_seed;
    plan.jobs = exp.jobs;
    plan.options = RunOptions {
        strict: exp.strict_oracle,
        lazy: exp.lazy,
        rws_multiplicity: exp.rws_multiplicity,
        exact_edges: exp.exact_m.then_some(g.edge_count() as f64),
        exact_wedges: if exp.exact_w {
            stats.as_ref().map(|s| s.wedges as f64)
        } else {
            None
        },
    };
    let truth = if exp.no_exact {
        None
    } else {
        stats.map(|s| s.triangles)
    };
    eprintln!(
        "graph={} n={} m={} sha256={} rng={} master_seed={}",
        loaded.name,
        g.vertex_count(),
        g.edge_count(),
        loaded.digest,
        RNG_ALGORITHM,
        exp.master_seed
    );
    Ok(Prepared {
        loaded,
        plan,
        truth,
    })
}

fn report_summary(summary: &Summary) {
    for w in &summary.warnings {
        eprintln!("warning: {w}");
    }
    for row in &summary.rows {
        let seed = row
            .seed_vertex
            .map(|s| format!(" seed={s}"))
            .unwrap_or_default();
        let bucket = row
            .bucket
            .map(|b| format!(" bucket={b}"))
            .unwrap_or_default();
        eprintln!(
            "{} r={}{bucket}{seed}: median {:.3}% max {:.3}% over {} runs ({} failed), {:.3}% of 2m",
            row.algo, row.r, row.median, row.max, row.runs, row.failures, row.mean_query_frac_pct
        );
    }
}

fn finish(
    records: &[RunRecord],
    summary: Summary,
    exp: &ExperimentArgs,
) -> Result<ExitCode, Error> {
    let mut sink = open_sink(exp.out.as_deref())?;
    emit_csv(records, &mut sink)?;
    sink.flush()?;
    report_summary(&summary);
    if let Some(path) = &exp.summary {
        let mut w = BufWriter::new(File::create(path)?);
        emit_summary_csv(&summary, &mut w)?;
        w.flush()?;
    }
    let failed = records.iter().filter(|r| !r.is_success()).count();
    if failed > 0 {
        eprintln!("{failed} of {} trials failed", records.len());
    }
    if !records.is_empty() && failed == records.len() {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn dump_first_walk(prepared: &Prepared, path: &Path) -> Result<(), Error> {
    let g = &prepared.loaded.graph;
    let plan = &prepared.plan;
    let seed = resolve_seed(g, plan.seed_policy, plan.master_seed)?;
    let r = plan.r_values[0];
    let mut session = OracleSession::open(g, seed, derive_seed(plan.master_seed, r, 0), false)?;
    let trace = random_walk(&mut session, r, plan.options.lazy)?;
    let mut w = BufWriter::new(File::create(path)?);
    trace.dump(g, &mut w)?;
    w.flush()?;
    Ok(())
}

fn write_edge_list(g: &Graph, path: Option<&Path>) -> Result<(), Error> {
    let mut sink = open_sink(path)?;
    writeln!(sink, "# n={} m={}", g.vertex_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(sink, "{} {}", g.label(u), g.label(v))?;
    }
    sink.flush()?;
    Ok(())
}

fn execute(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Stats { graph } => {
            let loaded = input::load(&graph)?;
            if let Some(rep) = &loaded.report {
                eprintln!(
                    "{} lines, {} edge lines, dropped {} self-loops and {} duplicates",
                    rep.lines, rep.edge_lines, rep.self_loops, rep.duplicates
                );
            }
            let (stats, cached) = input::exact_stats(&loaded)?;
            if cached {
                eprintln!("using cached {}", input::sidecar_path(&graph).display());
            }
            let json =
                serde_json::to_string_pretty(&stats).map_err(|e| Error::Format(e.to_string()))?;
            println!("{json}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Exact { graph } => {
            let loaded = input::load(&graph)?;
            println!("{}", input::exact_stats(&loaded)?.0.triangles);
            Ok(ExitCode::SUCCESS)
        }
        Command::Run {
            exp,
            algo,
            dump_trace,
        } => {
            let prepared = prepare(&exp, vec![algo])?;
            if let Some(path) = &dump_trace {
                dump_first_walk(&prepared, path)?;
            }
            let records = run_experiment(&prepared.loaded.graph, &prepared.plan, prepared.truth)?;
            finish(&records, summarize(&records), &exp)
        }
        Command::Sweep { exp, algo } => {
            let prepared = prepare(&exp, algo)?;
            let records = run_experiment(&prepared.loaded.graph, &prepared.plan, prepared.truth)?;
            finish(&records, summarize(&records), &exp)
        }
        Command::Buckets { exp, algo } => {
            let prepared = prepare(&exp, algo)?;
            let (records, selections) =
                seed_bucket_experiment(&prepared.loaded.graph, &prepared.plan, prepared.truth)?;
            for s in &selections {
                eprintln!(
                    "bucket {}: {} vertices, seeds {:?}{}",
                    s.bucket,
                    s.population,
                    s.seeds,
                    if s.short {
                        " (fewer than 4 available)"
                    } else {
                        ""
                    }
                );
            }
            finish(&records, summarize_by(&records, Grouping::SeedVertex), &exp)
        }
        Command::Gen {
            model,
            seed,
            largest_component,
            out,
        } => {
            let mut rng = SessionRng::seed_from_u64(seed);
            let mut g = match model {
                Model::HolmeKim { n, links, triad_p } => {
                    if links == 0 || n <= links {
                        return Err(Error::InvalidConfig(
                            "holme-kim needs 1 <= links < n".into(),
                        ));
                    }
                    generate::holme_kim(n, links, triad_p, &mut rng)
                }
                Model::Geometric { n, radius } => generate::random_geometric(n, radius, &mut rng),
                Model::Planted {
                    communities,
                    size,
                    p_in,
                    inter,
                } => generate::planted_partition(communities, size, p_in, inter, &mut rng),
                Model::Gnm { n, m } => generate::gnm(n, m, &mut rng),
            };
            if largest_component {
                g = generate::largest_component(&g);
            }
            if g.edge_count() == 0 {
                return Err(Error::EmptyGraph);
            }
            write_edge_list(&g, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Convert { graph, out } => {
            let loaded = input::load(&graph)?;
            let mut w = BufWriter::new(File::create(&out)?);
            write_binary(&loaded.graph, &mut w)?;
            w.flush()?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
