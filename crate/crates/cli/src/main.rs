//! `submax`: generate information DAGs, run the greedy engine over them,
//! compute bound reports, replay invariant suites, and drive the stock
//! experiments. All randomness is seeded; the same invocation produces the
//! same bytes.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use submax::bounds::{compute_bound_report, SpecialTopology};
use submax::gen::{
    gen_ba_dag, gen_bipartite_gap, gen_complete_dag, gen_empty, gen_er_dag,
    gen_interconnected_cliques, gen_ws_dag,
};
use submax::graph::chromatic_number;
use submax::greedy::{run_sequential, run_synchronous, TieBreak};
use submax::objectives::{
    adversarial_a, make_adversarial, make_coverage, make_universal, CoverageGrid,
};
use submax::rng::Seed;

use submax_cli::experiment::{self, ExperimentConfig};
use submax_cli::formats::{bounds_csv, parse_config, read_disks, read_graph, trace_csv, write_graph};
use submax_cli::verify::{run_suite, SUITES};

#[derive(Parser)]
#[command(
    name = "submax",
    version,
    about = "greedy submodular maximization over information DAGs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph file
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Run the greedy engine on a graph and objective, tracing each decision
    Run(RunArgs),
    /// Compute performance bounds and certificates for a graph
    Bounds {
        /// graph file
        graph: PathBuf,
        /// also write the one-row CSV here
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Replay named invariant suites on seeded random instances
    Verify {
        /// suite name, or "all"
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 25)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run an experiment described by a key=value config file
    Experiment {
        /// config file (kind=correlation|ba-sweep|ws-sweep, ...)
        config: PathBuf,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Uniform random DAG: each pair linked with probability p
    Er {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Preferential attachment, 5 links per added vertex
    Ba {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewired ring lattice (small world)
    Ws {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chain of cliques joined through single broadcast vertices
    Cliques {
        /// comma-separated block sizes, e.g. 3,2,4
        #[arg(long)]
        sizes: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The two-layer family with a large greedy/chromatic gap
    Gap {
        /// pairs per layer
        #[arg(long)]
        m: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every pair connected
    Complete {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// No edges at all
    Empty {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// graph file
    #[arg(long)]
    graph: PathBuf,
    /// universal | adversarial | coverage
    #[arg(long)]
    objective: String,
    /// universal only: ground set size (default: one per agent)
    #[arg(long)]
    m: Option<u32>,
    /// coverage only: disk file
    #[arg(long)]
    disks: Option<PathBuf>,
    /// coverage only: evaluation grid resolution
    #[arg(long, default_value_t = 100)]
    grid: u32,
    /// lowest | highest | seeded:<n> | prefer-a
    #[arg(long, default_value = "lowest")]
    tiebreak: String,
    /// run synchronous rounds instead of one sequential pass
    #[arg(long)]
    rounds: Option<u32>,
    /// trace CSV destination (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    if let Err(e) = real_main() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn real_main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Gen { family } => cmd_gen(family),
        Cmd::Run(args) => cmd_run(args),
        Cmd::Bounds { graph, csv } => cmd_bounds(&graph, csv.as_deref()),
        Cmd::Verify {
            suite,
            trials,
            seed,
        } => cmd_verify(&suite, trials, seed),
        Cmd::Experiment { config } => cmd_experiment(&config),
    }
}

fn cmd_gen(family: Family) -> Result<()> {
    let (graph, out) = match family {
        Family::Er { n, p, seed, out } => (gen_er_dag(n, p, Seed(seed))?, out),
        Family::Ba { n, seed, out } => (gen_ba_dag(n, Seed(seed))?, out),
        Family::Ws {
            n,
            k,
            beta,
            seed,
            out,
        } => (gen_ws_dag(n, k, beta, Seed(seed))?, out),
        Family::Cliques { sizes, out } => {
            let sizes: Vec<u32> = sizes
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|e| anyhow!("bad block size '{s}': {e}"))
                })
                .collect::<Result<_>>()?;
            (gen_interconnected_cliques(&sizes)?.0, out)
        }
        Family::Gap { m, out } => (gen_bipartite_gap(m)?, out),
        Family::Complete { n, out } => (gen_complete_dag(n)?, out),
        Family::Empty { n, out } => (gen_empty(n)?, out),
    };
    emit(out.as_deref(), &write_graph(&graph))
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let graph = read_graph(&args.graph)?;
    let n = graph.n();
    let mut adversarial = false;
    let inst = match args.objective.as_str() {
        "universal" => make_universal(n, args.m.unwrap_or(n))?,
        "adversarial" => {
            adversarial = true;
            let (_, coloring) = chromatic_number(&graph)?;
            make_adversarial(&graph, &coloring)?
        }
        "coverage" => {
            let path = args
                .disks
                .as_ref()
                .ok_or_else(|| anyhow!("coverage objective needs --disks"))?;
            let disks = read_disks(path)?;
            if disks.len() != n as usize {
                bail!("disk file covers {} agents, graph has {n}", disks.len());
            }
            make_coverage(&disks, CoverageGrid::new(args.grid)?)?
        }
        other => bail!("unknown objective '{other}' (universal, adversarial, coverage)"),
    };
    let tiebreak = parse_tiebreak(&args.tiebreak, adversarial, n)?;
    match args.rounds {
        None => {
            let sol = run_sequential(&inst, &graph, &tiebreak)?;
            emit(args.out.as_deref(), &trace_csv(&sol, inst.oracle().ground()))?;
            eprintln!("value: {}", sol.value);
        }
        Some(rounds) => {
            let states = run_synchronous(&inst, &graph, rounds, &tiebreak)?;
            for (round, s) in states.iter().enumerate() {
                eprintln!("round {round}: value {}", s.value);
            }
            let last = states.last().expect("one state per round plus the start");
            emit(args.out.as_deref(), &trace_csv(last, inst.oracle().ground()))?;
        }
    }
    Ok(())
}

fn parse_tiebreak(s: &str, adversarial: bool, n: u32) -> Result<TieBreak> {
    Ok(match s {
        "lowest" => TieBreak::LowestIndex,
        "highest" => TieBreak::HighestIndex,
        "prefer-a" => {
            if !adversarial {
                bail!("prefer-a only makes sense for the adversarial objective");
            }
            TieBreak::prefer((0..n).map(adversarial_a).collect())
        }
        other => match other.strip_prefix("seeded:") {
            Some(num) => {
                let seed: u64 = num
                    .parse()
                    .map_err(|e| anyhow!("bad tiebreak seed '{num}': {e}"))?;
                TieBreak::SeededRandom(Seed(seed))
            }
            None => bail!("unknown tiebreak '{other}' (lowest, highest, seeded:<n>, prefer-a)"),
        },
    })
}

fn cmd_bounds(path: &std::path::Path, csv: Option<&std::path::Path>) -> Result<()> {
    let graph = read_graph(path)?;
    let report = compute_bound_report(&graph)?;
    let special = match &report.lower_special {
        None => "-".to_string(),
        Some((topo, v)) => format!("{v} ({})", special_name(topo)),
    };
    println!("n               {}", report.n);
    println!("edges           {}", report.edge_count);
    println!("omega           {}", report.omega);
    println!("chi             {}", report.chi);
    println!("greedy colors   {}", report.greedy_colors);
    println!("lower (clique)  {}", report.lower_clique);
    println!("lower (special) {special}");
    println!("best lower      {}", report.best_lower());
    println!("upper (chi)     {}", report.upper_chi);
    println!("upper (greedy)  {}", report.upper_greedy);
    println!(
        "certificates    {}",
        if report.verify(&graph) { "ok" } else { "FAILED" }
    );
    if let Some(csv_path) = csv {
        std::fs::write(csv_path, bounds_csv(&report))
            .with_context(|| format!("writing {}", csv_path.display()))?;
    }
    Ok(())
}

fn special_name(topo: &SpecialTopology) -> String {
    match topo {
        SpecialTopology::Empty => "no communication".to_string(),
        SpecialTopology::Complete => "complete".to_string(),
        SpecialTopology::Cliques(p) => format!("clique chain {:?}", p.sizes()),
    }
}

fn cmd_verify(suite: &str, trials: u32, seed: u64) -> Result<()> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else {
        vec![suite]
    };
    let mut failed = 0;
    for name in names {
        let outcome = run_suite(name, trials, Seed(seed))?;
        println!("{}", outcome.summary());
        for f in outcome.failures.iter().take(5) {
            println!("  {f}");
        }
        if !outcome.passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        bail!("{failed} suite(s) failed");
    }
    Ok(())
}

fn cmd_experiment(path: &std::path::Path) -> Result<()> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cfg = ExperimentConfig::from_map(&parse_config(&text)?)?;
    for line in experiment::run(&cfg)? {
        println!("{line}");
    }
    Ok(())
}

fn emit(out: Option<&std::path::Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}
