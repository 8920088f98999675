//! The three stock experiments: the bound-versus-performance correlation
//! study on random coverage instances, and the two bound sweeps over graph
//! families (preferential attachment by size, small-world by neighborhood
//! radius).
//!
//! Everything is driven by one master seed. Per-trial seeds are derived, so
//! any single trial can be replayed without running the ones before it, and
//! the emitted CSV is byte-identical across runs and machines.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use submax::bounds::{compute_bound_report, upper_bound_greedy};
use submax::gen::{gen_ba_dag, gen_er_dag, gen_ws_dag};
use submax::greedy::{run_sequential, TieBreak};
use submax::objectives::{make_coverage, CoverageGrid};
use submax::rng::{derive, rng, unit, Seed};
use submax::submodular::{brute_force_opt_with_guard, DEFAULT_BRUTE_FORCE_GUARD};
use submax::Error;

use crate::randinst::random_disks;
use crate::stats::spearman;

// rng stream tags, one per independent random choice
const SEED_DISKS: u64 = 1;
const SEED_P: u64 = 2;
const SEED_GRAPH: u64 = 3;
const SEED_BA: u64 = 4;
const SEED_WS: u64 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Correlation,
    BaSweep,
    WsSweep,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub n_agents: u32,
    pub disks_per_agent: u32,
    pub disk_radius: f64,
    pub grid_resolution: u32,
    pub n_graphs: u32,
    pub sweep: Vec<u32>,
    pub trials_per_point: u32,
    pub beta: f64,
    pub master_seed: u64,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn correlation(master_seed: u64) -> Self {
        ExperimentConfig {
            kind: ExperimentKind::Correlation,
            n_agents: 50,
            disks_per_agent: 3,
            disk_radius: 0.07,
            grid_resolution: 100,
            n_graphs: 100,
            sweep: Vec::new(),
            trials_per_point: 1,
            beta: 0.0,
            master_seed,
            output_dir: PathBuf::from("."),
        }
    }

    pub fn ba_sweep(master_seed: u64) -> Self {
        ExperimentConfig {
            kind: ExperimentKind::BaSweep,
            n_agents: 0,
            disks_per_agent: 0,
            disk_radius: 0.0,
            grid_resolution: 0,
            n_graphs: 0,
            sweep: vec![5, 10, 15, 20, 25, 30],
            trials_per_point: 20,
            beta: 0.0,
            master_seed,
            output_dir: PathBuf::from("."),
        }
    }

    pub fn ws_sweep(master_seed: u64) -> Self {
        ExperimentConfig {
            kind: ExperimentKind::WsSweep,
            n_agents: 25,
            disks_per_agent: 0,
            disk_radius: 0.0,
            grid_resolution: 0,
            n_graphs: 0,
            sweep: (1..=12).collect(),
            trials_per_point: 20,
            beta: 0.25,
            master_seed,
            output_dir: PathBuf::from("."),
        }
    }

    /// Builds a config from `key=value` pairs. `kind` picks the defaults;
    /// every other key overrides one field.
    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let kind = map
            .get("kind")
            .ok_or_else(|| anyhow!("config needs kind=correlation|ba-sweep|ws-sweep"))?;
        let seed: u64 = match map.get("seed") {
            Some(s) => s.parse().with_context(|| format!("bad seed '{s}'"))?,
            None => 0,
        };
        let mut cfg = match kind.as_str() {
            "correlation" => ExperimentConfig::correlation(seed),
            "ba-sweep" => ExperimentConfig::ba_sweep(seed),
            "ws-sweep" => ExperimentConfig::ws_sweep(seed),
            other => bail!("unknown kind '{other}'"),
        };
        for (key, value) in map {
            match key.as_str() {
                "kind" | "seed" => {}
                "agents" => cfg.n_agents = parse(key, value)?,
                "disks_per_agent" => cfg.disks_per_agent = parse(key, value)?,
                "radius" => cfg.disk_radius = parse(key, value)?,
                "grid" => cfg.grid_resolution = parse(key, value)?,
                "graphs" => cfg.n_graphs = parse(key, value)?,
                "trials" => cfg.trials_per_point = parse(key, value)?,
                "beta" => cfg.beta = parse(key, value)?,
                "out_dir" => cfg.output_dir = PathBuf::from(value),
                "sweep" => {
                    cfg.sweep = value
                        .split(',')
                        .map(|s| parse("sweep", s.trim()))
                        .collect::<Result<_>>()?;
                }
                other => bail!("unknown config key '{other}'"),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            ExperimentKind::Correlation => {
                if self.n_agents == 0 || self.disks_per_agent == 0 || self.n_graphs == 0 {
                    bail!("correlation needs agents, disks_per_agent, graphs all >= 1");
                }
                if !(self.disk_radius > 0.0 && self.disk_radius <= 1.0) {
                    bail!("radius must be in (0, 1], got {}", self.disk_radius);
                }
                if self.grid_resolution == 0 {
                    bail!("grid must be >= 1");
                }
            }
            ExperimentKind::BaSweep => {
                if self.sweep.is_empty() || self.trials_per_point == 0 {
                    bail!("ba-sweep needs a nonempty sweep and trials >= 1");
                }
                if let Some(&n) = self.sweep.iter().find(|&&n| n < 5) {
                    bail!("ba-sweep sizes must be >= 5, got {n}");
                }
            }
            ExperimentKind::WsSweep => {
                if self.sweep.is_empty() || self.trials_per_point == 0 {
                    bail!("ws-sweep needs a nonempty sweep and trials >= 1");
                }
                if !(0.0..=1.0).contains(&self.beta) {
                    bail!("beta must be in [0, 1], got {}", self.beta);
                }
                for &k in &self.sweep {
                    if k == 0 || 2 * k > self.n_agents.saturating_sub(1) {
                        bail!(
                            "ws-sweep k = {k} does not fit n = {} (need 1 <= k and 2k <= n - 1)",
                            self.n_agents
                        );
                    }
                }
            }
        }
        Ok(())
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| anyhow!("bad value '{value}' for {key}: {e}"))
}

/// One graph of the correlation study.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRecord {
    pub trial: u32,
    pub p: f64,
    pub edges: usize,
    pub covered: f64,
    pub upper_greedy: f64,
    /// None when the strategy space is too large to brute-force.
    pub optimum: Option<f64>,
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CorrelationResult {
    pub records: Vec<CorrelationRecord>,
    /// Rank correlation between realized coverage and the cheap upper
    /// bound across the sampled graphs.
    pub spearman: f64,
}

/// Fixed disks, many ER graphs of varying density: does the cheap upper
/// bound sort the graphs the same way realized performance does?
pub fn run_correlation(cfg: &ExperimentConfig) -> Result<CorrelationResult> {
    cfg.validate()?;
    let master = Seed(cfg.master_seed);
    let disks = random_disks(
        cfg.n_agents,
        cfg.disks_per_agent,
        cfg.disk_radius,
        derive(master, SEED_DISKS, 0),
    );
    let inst = make_coverage(&disks, CoverageGrid::new(cfg.grid_resolution)?)?;
    let mut records = Vec::with_capacity(cfg.n_graphs as usize);
    for i in 0..cfg.n_graphs {
        let p = unit(&mut rng(derive(master, SEED_P, i as u64), 0));
        let graph = gen_er_dag(cfg.n_agents, p, derive(master, SEED_GRAPH, i as u64))?;
        let sol = run_sequential(&inst, &graph, &TieBreak::LowestIndex)?;
        let upper = upper_bound_greedy(&graph);
        let optimum = match brute_force_opt_with_guard(&inst, DEFAULT_BRUTE_FORCE_GUARD) {
            Ok((_, opt)) => Some(opt),
            Err(Error::SizeGuard { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let ratio = optimum.map(|opt| if opt > 0.0 { sol.value / opt } else { 1.0 });
        records.push(CorrelationRecord {
            trial: i,
            p,
            edges: graph.edges().len(),
            covered: sol.value,
            upper_greedy: upper,
            optimum,
            ratio,
        });
    }
    let covered: Vec<f64> = records.iter().map(|r| r.covered).collect();
    let uppers: Vec<f64> = records.iter().map(|r| r.upper_greedy).collect();
    let spearman = spearman(&covered, &uppers)?;
    Ok(CorrelationResult { records, spearman })
}

pub fn correlation_csv(result: &CorrelationResult) -> String {
    let mut out = String::from("trial,p,edges,covered_fraction,upper_greedy,optimum,ratio\n");
    for r in &result.records {
        let optimum = r.optimum.map(|v| v.to_string()).unwrap_or_default();
        let ratio = r.ratio.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.trial, r.p, r.edges, r.covered, r.upper_greedy, optimum, ratio
        )
        .expect("writing to String");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSd {
    pub mean: f64,
    pub sd: f64,
}

/// Sample mean and standard deviation (n - 1 denominator, 0 for a single
/// observation).
pub fn mean_sd(xs: &[f64]) -> MeanSd {
    if xs.is_empty() {
        return MeanSd { mean: 0.0, sd: 0.0 };
    }
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    if xs.len() < 2 {
        return MeanSd { mean, sd: 0.0 };
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (xs.len() - 1) as f64;
    MeanSd {
        mean,
        sd: var.sqrt(),
    }
}

/// Aggregated bound statistics at one sweep position.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub x: u32,
    pub trials: u32,
    /// trials whose exact bound computation fit under the size guards
    pub ok: u32,
    pub missing: u32,
    pub lower: MeanSd,
    pub upper_chi: MeanSd,
    pub upper_greedy: MeanSd,
    /// upper/lower gap factors; how loose the sandwich is
    pub ratio_chi: MeanSd,
    pub ratio_greedy: MeanSd,
}

fn sweep_point<G>(x: u32, trials: u32, point_seed: Seed, gen_graph: G) -> Result<SweepPoint>
where
    G: Fn(Seed) -> submax::Result<submax::graph::InfoDag>,
{
    let mut lows = Vec::new();
    let mut upper_chis = Vec::new();
    let mut upper_vals = Vec::new();
    let mut ratio_chis = Vec::new();
    let mut ratio_vals = Vec::new();
    let mut missing = 0u32;
    for t in 0..trials {
        let graph = gen_graph(derive(point_seed, 1, t as u64))?;
        let report = match compute_bound_report(&graph) {
            Ok(r) => r,
            Err(Error::SizeGuard { .. }) => {
                missing += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        lows.push(report.best_lower());
        upper_chis.push(report.upper_chi);
        upper_vals.push(report.upper_greedy);
        ratio_chis.push(report.upper_chi / report.lower_clique);
        ratio_vals.push(report.upper_greedy / report.lower_clique);
    }
    Ok(SweepPoint {
        x,
        trials,
        ok: trials - missing,
        missing,
        lower: mean_sd(&lows),
        upper_chi: mean_sd(&upper_chis),
        upper_greedy: mean_sd(&upper_vals),
        ratio_chi: mean_sd(&ratio_chis),
        ratio_greedy: mean_sd(&ratio_vals),
    })
}

/// Bound statistics across preferential-attachment graphs of growing size.
pub fn run_ba_sweep(cfg: &ExperimentConfig) -> Result<Vec<SweepPoint>> {
    cfg.validate()?;
    let master = Seed(cfg.master_seed);
    cfg.sweep
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            sweep_point(
                n,
                cfg.trials_per_point,
                derive(master, SEED_BA, i as u64),
                |seed| gen_ba_dag(n, seed),
            )
        })
        .collect()
}

/// Bound statistics across small-world graphs of growing neighborhood
/// radius at fixed size.
pub fn run_ws_sweep(cfg: &ExperimentConfig) -> Result<Vec<SweepPoint>> {
    cfg.validate()?;
    let master = Seed(cfg.master_seed);
    cfg.sweep
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            sweep_point(
                k,
                cfg.trials_per_point,
                derive(master, SEED_WS, i as u64),
                |seed| gen_ws_dag(cfg.n_agents, k, cfg.beta, seed),
            )
        })
        .collect()
}

pub fn sweep_csv(points: &[SweepPoint], x_name: &str) -> String {
    let mut out = format!(
        "{x_name},trials,ok,missing,lower_mean,lower_sd,upper_chi_mean,upper_chi_sd,\
         upper_greedy_mean,upper_greedy_sd,ratio_chi_mean,ratio_chi_sd,ratio_greedy_mean,ratio_greedy_sd\n"
    );
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            p.x,
            p.trials,
            p.ok,
            p.missing,
            p.lower.mean,
            p.lower.sd,
            p.upper_chi.mean,
            p.upper_chi.sd,
            p.upper_greedy.mean,
            p.upper_greedy.sd,
            p.ratio_chi.mean,
            p.ratio_chi.sd,
            p.ratio_greedy.mean,
            p.ratio_greedy.sd
        )
        .expect("writing to String");
    }
    out
}

/// Runs the configured experiment, writes its CSV into `output_dir`, and
/// returns human-readable summary lines.
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<String>> {
    cfg.validate()?;
    std::fs::create_dir_all(&cfg.output_dir)
        .with_context(|| format!("creating {}", cfg.output_dir.display()))?;
    let mut lines = Vec::new();
    match cfg.kind {
        ExperimentKind::Correlation => {
            let result = run_correlation(cfg)?;
            let path = cfg.output_dir.join("correlation.csv");
            std::fs::write(&path, correlation_csv(&result))
                .with_context(|| format!("writing {}", path.display()))?;
            lines.push(format!(
                "correlation: {} graphs, spearman(covered, upper_greedy) = {:.4}",
                result.records.len(),
                result.spearman
            ));
            lines.push(format!("wrote {}", path.display()));
        }
        ExperimentKind::BaSweep => {
            let points = run_ba_sweep(cfg)?;
            let path = cfg.output_dir.join("ba_sweep.csv");
            std::fs::write(&path, sweep_csv(&points, "n"))
                .with_context(|| format!("writing {}", path.display()))?;
            for p in &points {
                lines.push(format!(
                    "n = {:>3}: lower {:.4} (sd {:.4}), upper_chi {:.4}, upper_greedy {:.4} [{} ok, {} missing]",
                    p.x, p.lower.mean, p.lower.sd, p.upper_chi.mean, p.upper_greedy.mean, p.ok, p.missing
                ));
            }
            lines.push(format!("wrote {}", path.display()));
        }
        ExperimentKind::WsSweep => {
            let points = run_ws_sweep(cfg)?;
            let path = cfg.output_dir.join("ws_sweep.csv");
            std::fs::write(&path, sweep_csv(&points, "k"))
                .with_context(|| format!("writing {}", path.display()))?;
            for p in &points {
                lines.push(format!(
                    "k = {:>3}: lower {:.4} (sd {:.4}), upper_chi {:.4}, upper_greedy {:.4} [{} ok, {} missing]",
                    p.x, p.lower.mean, p.lower.sd, p.upper_chi.mean, p.upper_greedy.mean, p.ok, p.missing
                ));
            }
            lines.push(format!("wrote {}", path.display()));
        }
    }
    Ok(lines)
}
