use std::fs::{File, OpenOptions};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use clique_chromatic::cert::ParameterProfile;
use clique_chromatic::coloring::{chi_c_exact, greedy_clique_coloring, verify_coloring, Coloring, ExactLimits};
use clique_chromatic::experiments::{
    self, exit, run_bounds, run_certify, run_sweep, summarize, write_rows, CertifyConfig, ExperimentRecord, Format,
    SweepConfig, SweepMode,
};
use clique_chromatic::io::{read_graph_file, write_graph, write_graph_file, GraphFormat};
use clique_chromatic::{gen_gnp, Error, Result, RngHandle};

#[derive(Parser)]
#[command(
    name = "cliquechrom",
    version,
    about = "Clique chromatic number experiments on random graphs"
)]
struct Cli {
    /// Append one JSON record per result to this file.
    #[arg(long, global = true)]
    log: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample G(n, p) and write it as an edge list or DIMACS file.
    Gen(GenArgs),
    /// Compute a clique coloring: exact (default) or heuristic.
    Solve(SolveArgs),
    /// Check a coloring; exit code 4 and a witness if it is invalid.
    Verify(VerifyArgs),
    /// Run the certificate checks on sampled graphs.
    Certify(CertifyArgs),
    /// Evaluate the probability estimates at given L = log2 n.
    Bounds(BoundsArgs),
    /// Chromatic values over a grid of n and seeds, with a log n fit.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct OutArgs {
    /// Output file (default: stdout).
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// csv or jsonl.
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct GenArgs {
    #[arg(short)]
    n: usize,
    #[arg(short, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// edge-list or dimacs (default: from the file extension).
    #[arg(long)]
    graph_format: Option<GraphFormat>,
}

#[derive(Args)]
struct SolveArgs {
    graph: PathBuf,
    #[arg(long, conflicts_with = "heuristic")]
    exact: bool,
    #[arg(long)]
    heuristic: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = clique_chromatic::cliques::DEFAULT_CLIQUE_CAP)]
    clique_cap: u64,
    #[arg(long, default_value_t = 5_000_000)]
    node_budget: u64,
    /// Greedy runs in heuristic mode; the best is kept.
    #[arg(long, default_value_t = 1)]
    restarts: u32,
    /// Coloring output (default: <graph>.coloring).
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long)]
    graph_format: Option<GraphFormat>,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    coloring: PathBuf,
    #[arg(long)]
    graph_format: Option<GraphFormat>,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(short, default_value_t = 512)]
    n: usize,
    #[arg(short, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 20)]
    seeds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// paper, desk, or a key=value profile file.
    #[arg(long, default_value = "desk")]
    profile: String,
    #[arg(long, default_value_t = 200)]
    lemma21_trials: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct BoundsArgs {
    /// Values of L = log2 n.
    #[arg(long = "L", value_delimiter = ',', default_value = "50,100,150,200,300")]
    l: Vec<f64>,
    /// Edge probabilities for the lower-bound coefficient.
    #[arg(short, value_delimiter = ',', default_value = "0.5,0.25,0.1")]
    p: Vec<f64>,
    #[arg(long, default_value = "paper")]
    profile: String,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "32,64,128,256")]
    ns: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    seeds: usize,
    #[arg(short, default_value_t = 0.5)]
    p: f64,
    /// heuristic, exact or brute.
    #[arg(long, default_value = "heuristic")]
    mode: SweepMode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = clique_chromatic::cliques::DEFAULT_CLIQUE_CAP)]
    clique_cap: u64,
    #[arg(long, default_value_t = 5_000_000)]
    node_budget: u64,
    #[arg(long, default_value_t = 1)]
    restarts: u32,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the summary as JSON here.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Write a gnuplot script for the CSV output here.
    #[arg(long)]
    gnuplot: Option<PathBuf>,
    #[command(flatten)]
    out: OutArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(experiments::exit_code(&e) as u8)
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let start = Instant::now();
    let (mut records, code) = match cli.cmd {
        Cmd::Gen(a) => gen(a)?,
        Cmd::Solve(a) => solve(a)?,
        Cmd::Verify(a) => verify(a)?,
        Cmd::Certify(a) => certify(a)?,
        Cmd::Bounds(a) => bounds(a)?,
        Cmd::Sweep(a) => sweep(a)?,
    };
    if let Some(path) = cli.log {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        for r in &mut records {
            r.wall_ms = ms;
            writeln!(f, "{}", r.to_line()?)?;
        }
    }
    Ok(code)
}

type Outcome = Result<(Vec<ExperimentRecord>, i32)>;

/// Data goes to `--out` with the summary on stdout, or to stdout with the summary on stderr.
fn emit(out: &Option<PathBuf>, summary: &str, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match out {
        Some(path) => {
            let mut f = io::BufWriter::new(File::create(path)?);
            write(&mut f)?;
            f.flush()?;
            print!("{summary}");
        }
        None => {
            write(&mut io::stdout().lock())?;
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn gen(a: GenArgs) -> Outcome {
    let g = gen_gnp(a.n, a.p, &mut RngHandle::new(a.seed))?;
    match &a.out {
        Some(path) => write_graph_file(&g, path, a.graph_format)?,
        None => write_graph(&g, a.graph_format.unwrap_or(GraphFormat::EdgeList), io::stdout().lock())?,
    }
    let payload = serde_json::json!({ "n": a.n, "edges": g.edge_count() });
    let rerun = format!("gen -n {} -p {} --seed {}", a.n, a.p, a.seed);
    let rec = ExperimentRecord::new("gen", rerun, &payload)?.graph(a.n, a.p, a.seed);
    eprintln!("n={} edges={} seed={}", a.n, g.edge_count(), a.seed);
    Ok((vec![rec], exit::OK))
}

fn solve(a: SolveArgs) -> Outcome {
    let (g, stats) = read_graph_file(&a.graph, a.graph_format)?;
    if stats.warnings() > 0 {
        eprintln!(
            "warning: dropped {} self-loops and {} duplicate edges",
            stats.self_loops, stats.duplicates
        );
    }
    let out = a.out.clone().unwrap_or_else(|| with_suffix(&a.graph, "coloring"));
    let (coloring, payload, code) = if a.heuristic {
        let mut rng = RngHandle::new(a.seed);
        let mut best = greedy_clique_coloring(&g, &mut rng)?;
        for _ in 1..a.restarts.max(1) {
            let c = greedy_clique_coloring(&g, &mut rng)?;
            if c.k() < best.k() {
                best = c;
            }
        }
        println!("k={} (heuristic upper bound)", best.k());
        let payload = serde_json::json!({ "mode": "heuristic", "k": best.k(), "colors": best.colors() });
        (best, payload, exit::OK)
    } else {
        let limits = ExactLimits {
            clique_cap: a.clique_cap,
            node_budget: a.node_budget,
            seed: a.seed,
        };
        let r = chi_c_exact(&g, limits)?;
        let code = if r.proved() {
            println!("k={} (proved)", r.k);
            exit::OK
        } else {
            println!("k<={} (budget exhausted: {:?})", r.k, r.status);
            exit::BUDGET
        };
        let payload = serde_json::json!({
            "mode": "exact", "k": r.k, "status": r.status, "hyperedges": r.hyperedges,
            "truncated": r.truncated, "nodes": r.nodes, "colors": r.coloring.colors(),
        });
        (r.coloring, payload, code)
    };
    std::fs::write(&out, coloring.to_text())?;
    let rerun = format!(
        "solve {} {} --seed {} --clique-cap {} --node-budget {} --restarts {}",
        a.graph.display(),
        if a.heuristic { "--heuristic" } else { "--exact" },
        a.seed,
        a.clique_cap,
        a.node_budget,
        a.restarts
    );
    let mut rec = ExperimentRecord::new("solve", rerun, &payload)?;
    rec.n = Some(g.n());
    rec.seed = Some(a.seed);
    Ok((vec![rec], code))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn verify(a: VerifyArgs) -> Outcome {
    let (g, _) = read_graph_file(&a.graph, a.graph_format)?;
    let c = Coloring::read_text(BufReader::new(File::open(&a.coloring)?))?;
    let v = verify_coloring(&g, &c)?;
    let code = match (&v.witness, v.color) {
        (Some(w), Some(color)) => {
            println!("invalid: maximal clique {w} is monochromatic in color {color}");
            exit::INVALID
        }
        _ => {
            println!("valid");
            exit::OK
        }
    };
    let rerun = format!("verify {} {}", a.graph.display(), a.coloring.display());
    let mut rec = ExperimentRecord::new("verify", rerun, &v)?;
    rec.n = Some(g.n());
    Ok((vec![rec], code))
}

fn certify(a: CertifyArgs) -> Outcome {
    let profile = ParameterProfile::load(&a.profile)?;
    let mut cfg = CertifyConfig::new(a.n, a.p, a.seeds, a.seed, profile);
    cfg.lemma21_trials = a.lemma21_trials;
    let (results, summary) = run_certify(&cfg, a.jobs)?;
    let thr = cfg.thresholds();
    let rerun = cfg.rerun(&a.profile);
    let mut records = results
        .iter()
        .map(|r| {
            Ok(ExperimentRecord::new("certify", rerun.clone(), r)?
                .graph(a.n, a.p, r.row.seed)
                .thresholds(&thr))
        })
        .collect::<Result<Vec<_>>>()?;
    records.push(ExperimentRecord::new("certify-summary", rerun, &summary)?.thresholds(&thr));
    let rows: Vec<_> = results.iter().map(|r| r.row.clone()).collect();
    emit(&a.out.out, &summary.to_text(), |w| {
        write_rows(&rows, &records, a.out.format, w)
    })?;
    Ok((records, exit::OK))
}

fn bounds(a: BoundsArgs) -> Outcome {
    let profile = ParameterProfile::load(&a.profile)?;
    let out = run_bounds(&a.l, &a.p, &profile)?;
    let ls: Vec<String> = a.l.iter().map(|l| l.to_string()).collect();
    let ps: Vec<String> = a.p.iter().map(|p| p.to_string()).collect();
    let rerun = format!(
        "bounds --L {} -p {} --profile {}",
        ls.join(","),
        ps.join(","),
        a.profile
    );
    let mut records = Vec::new();
    for rep in &out.reports {
        records.push(ExperimentRecord::new("bounds", rerun.clone(), rep)?);
    }
    for j in &out.janson {
        records.push(ExperimentRecord::new("bounds-janson", rerun.clone(), j)?);
    }
    records.push(ExperimentRecord::new("bounds-coefficients", rerun, &out.coefficients)?);
    let rows = out.rows();
    emit(&a.out.out, &out.to_text(), |w| {
        write_rows(&rows, &records, a.out.format, w)
    })?;
    Ok((records, exit::OK))
}

fn sweep(a: SweepArgs) -> Outcome {
    let cfg = SweepConfig {
        ns: a.ns,
        seeds: a.seeds,
        p: a.p,
        mode: a.mode,
        base_seed: a.seed,
        clique_cap: a.clique_cap,
        node_budget: a.node_budget,
        restarts: a.restarts,
    };
    let cells = run_sweep(&cfg, a.jobs)?;
    let summary = summarize(&cells);
    let rerun = cfg.rerun();
    let mut records = cells
        .iter()
        .map(|c| Ok(ExperimentRecord::new("sweep", rerun.clone(), c)?.graph(c.n, c.p, c.seed)))
        .collect::<Result<Vec<_>>>()?;
    records.push(ExperimentRecord::new("sweep-summary", rerun, &summary)?);
    emit(&a.out.out, &summary.to_text(), |w| {
        write_rows(&cells, &records, a.out.format, w)
    })?;
    if let Some(path) = &a.summary {
        let text = serde_json::to_string_pretty(&summary).map_err(|e| Error::Domain(e.to_string()))?;
        std::fs::write(path, text + "\n")?;
    }
    if let Some(path) = &a.gnuplot {
        let csv = a
            .out
            .out
            .as_ref()
            .map_or("sweep.csv".into(), |p| p.display().to_string());
        std::fs::write(path, summary.gnuplot_script(&csv))?;
    }
    Ok((records, exit::OK))
}
