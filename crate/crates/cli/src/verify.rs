//! Named invariant suites over randomly generated instances. Each suite
//! replays its guarantee on freshly drawn graphs and objectives; a failure
//! message pins the trial index and the numbers involved, so a red run is
//! directly reproducible from the same seed.
//!
//! Objective values in these suites are integers (weighted covers with
//! integer weights), so every comparison marked exact really is exact: no
//! epsilon hides a violation.

use anyhow::{bail, Result};
use submax::bounds::{
    check_color_count, compute_bound_report, verify_disconnected_cliques, verify_broadcaster_bound,
    CliquePartition,
};
use submax::gen::{gen_ba_dag, gen_complete_dag, gen_er_dag, gen_ws_dag};
use submax::graph::{chromatic_number, clique_number, InfoDag};
use submax::greedy::{run_sequential, run_synchronous, TieBreak};
use submax::objectives::{
    adversarial_a, make_adversarial, make_coverage, reduce_to_disjoint, CoverageGrid,
};
use submax::rng::{below, derive, rng, Seed};
use submax::submodular::{
    brute_force_opt, check_monotone, check_normalized, check_submodular, ElementId, Instance,
};

use crate::randinst::{
    random_cover_instance, random_disks, random_intersecting_instance, CoverShape,
};

/// Result of one suite run.
#[derive(Debug)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub trials: u32,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("suite {}: PASS ({} trials)", self.name, self.trials)
        } else {
            format!(
                "suite {}: FAIL ({}/{} trials): {}",
                self.name,
                self.failures.len(),
                self.trials,
                self.failures[0]
            )
        }
    }
}

pub const SUITES: &[&str] = &[
    "objective-laws",
    "complete-half",
    "prefix",
    "clique-bound",
    "clique-chain",
    "adversarial",
    "synchronous",
    "reduction",
    "sanity",
];

// derivation tags; complete-half and prefix share one so they exercise the
// same instances
const TAG_LAWS: u64 = 10;
const TAG_HALF: u64 = 11;
const TAG_CLIQUE: u64 = 12;
const TAG_CHAIN: u64 = 13;
const TAG_ADVERSARIAL: u64 = 14;
const TAG_SYNC: u64 = 15;
const TAG_REDUCTION: u64 = 16;
const TAG_SANITY: u64 = 17;

pub fn run_suite(name: &str, trials: u32, seed: Seed) -> Result<SuiteOutcome> {
    let run = match name {
        "objective-laws" => objective_laws,
        "complete-half" => complete_half,
        "prefix" => prefix,
        "clique-bound" => clique_bound,
        "clique-chain" => clique_chain,
        "adversarial" => adversarial,
        "synchronous" => synchronous,
        "reduction" => reduction,
        "sanity" => sanity,
        other => bail!("unknown suite '{other}' (available: {})", SUITES.join(", ")),
    };
    let mut failures = Vec::new();
    for t in 0..trials {
        if let Err(e) = run(seed, t) {
            failures.push(format!("trial {t}: {e:#}"));
        }
    }
    Ok(SuiteOutcome {
        name: SUITES
            .iter()
            .find(|s| **s == name)
            .expect("name validated above"),
        trials,
        failures,
    })
}

/// The weighted-cover instances shared by the complete-half and prefix
/// suites: 2..=6 agents, up to 3 elements each.
pub fn shared_half_instance(seed: Seed, trial: u32) -> Result<Instance> {
    let shape = CoverShape {
        n_agents: 2 + trial % 5,
        max_set_size: 3,
        n_items: 10,
        max_weight: 9,
    };
    random_cover_instance(&shape, derive(seed, TAG_HALF, trial as u64))
}

/// Every clique-chain shape with at most 3 blocks of size at most 3, in
/// lexicographic order (39 shapes).
pub fn small_partitions() -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(39);
    for a in 1..=3u32 {
        out.push(vec![a]);
    }
    for a in 1..=3u32 {
        for b in 1..=3u32 {
            out.push(vec![a, b]);
        }
    }
    for a in 1..=3u32 {
        for b in 1..=3u32 {
            for c in 1..=3u32 {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

/// Structural laws of random integer covers, plus the telescoping identity
/// on both an integer oracle (exact) and a float coverage oracle (1e-12).
fn objective_laws(seed: Seed, t: u32) -> Result<()> {
    let shape = CoverShape {
        n_agents: 2 + t % 3,
        max_set_size: 2,
        n_items: 8 + t % 3,
        max_weight: 9,
    };
    let inst = random_cover_instance(&shape, derive(seed, TAG_LAWS, t as u64))?;
    let oracle = inst.oracle();
    if let Some(v) = check_submodular(oracle)? {
        bail!("submodularity violated at {v:?}");
    }
    if let Some(v) = check_monotone(oracle)? {
        bail!("monotonicity violated at {v:?}");
    }
    if !check_normalized(oracle) {
        bail!("oracle is not normalized");
    }
    let mut r = rng(derive(seed, TAG_LAWS, t as u64), 1);
    let ground = oracle.ground().len() as u64;
    let sequence: Vec<ElementId> = (0..2 * ground)
        .map(|_| ElementId(below(&mut r, ground) as u32))
        .collect();
    let telescoped = oracle.telescoping_value(&sequence)?;
    let direct = oracle.evaluate(&sequence)?;
    if telescoped != direct {
        bail!("integer telescoping mismatch: {telescoped} vs {direct}");
    }
    // float route: a small random disk layout
    let disks = random_disks(2, 2, 0.2, derive(seed, TAG_LAWS, 1_000_000 + t as u64));
    let cover = make_coverage(&disks, CoverageGrid::new(20)?)?;
    let seq: Vec<ElementId> = (0..4).map(|_| ElementId(below(&mut r, 4) as u32)).collect();
    let telescoped = cover.oracle().telescoping_value(&seq)?;
    let direct = cover.oracle().evaluate(&seq)?;
    if (telescoped - direct).abs() > 1e-12 {
        bail!("float telescoping drifted: {telescoped} vs {direct}");
    }
    Ok(())
}

/// Complete DAG: twice the greedy value covers the optimum.
fn complete_half(seed: Seed, t: u32) -> Result<()> {
    let inst = shared_half_instance(seed, t)?;
    let n = inst.n_agents() as u32;
    let graph = gen_complete_dag(n)?;
    let sol = run_sequential(&inst, &graph, &TieBreak::LowestIndex)?;
    let (_, opt) = brute_force_opt(&inst)?;
    if 2.0 * sol.value < opt {
        bail!("2 x greedy {} < optimum {opt}", sol.value);
    }
    Ok(())
}

/// Complete DAG prefix chain: every greedy prefix is worth at least the
/// optimal prefix minus the previous greedy prefix.
fn prefix(seed: Seed, t: u32) -> Result<()> {
    let inst = shared_half_instance(seed, t)?;
    let n = inst.n_agents();
    let graph = gen_complete_dag(n as u32)?;
    let sol = run_sequential(&inst, &graph, &TieBreak::LowestIndex)?;
    let (opt, _) = brute_force_opt(&inst)?;
    let oracle = inst.oracle();
    for k in 1..=n {
        let greedy_k = oracle.evaluate(&sol.assignment.choices()[..k])?;
        let greedy_prev = oracle.evaluate(&sol.assignment.choices()[..k - 1])?;
        let opt_k = oracle.evaluate(&opt.choices()[..k])?;
        if greedy_k + greedy_prev < opt_k {
            bail!(
                "prefix {k}: greedy {greedy_k} + previous {greedy_prev} < optimal prefix {opt_k}"
            );
        }
    }
    Ok(())
}

/// ER graphs at p in {0.2, 0.5, 0.8}: greedy times (n - omega + 2) covers
/// the optimum.
fn clique_bound(seed: Seed, t: u32) -> Result<()> {
    let p = [0.2, 0.5, 0.8][t as usize % 3];
    let n = 8u32;
    let graph = gen_er_dag(n, p, derive(seed, TAG_CLIQUE, 2 * t as u64))?;
    let shape = CoverShape {
        n_agents: n,
        max_set_size: 3,
        n_items: 10,
        max_weight: 9,
    };
    let inst = random_cover_instance(&shape, derive(seed, TAG_CLIQUE, 2 * t as u64 + 1))?;
    let (omega, _) = clique_number(&graph)?;
    let sol = run_sequential(&inst, &graph, &TieBreak::LowestIndex)?;
    let (_, opt) = brute_force_opt(&inst)?;
    let factor = (n - omega + 2) as f64;
    if sol.value * factor < opt {
        bail!(
            "greedy {} x {factor} < optimum {opt} (omega {omega})",
            sol.value
        );
    }
    Ok(())
}

/// Clique chains with at most 3 blocks of size at most 3: the broadcaster
/// inequality, and the weak 1/(2 kappa) bound without inter-block edges.
fn clique_chain(seed: Seed, t: u32) -> Result<()> {
    let partitions = small_partitions();
    let sizes = &partitions[t as usize % partitions.len()];
    let partition = CliquePartition::new(sizes.clone())?;
    let shape = CoverShape {
        n_agents: partition.n(),
        max_set_size: 2,
        n_items: 8,
        max_weight: 9,
    };
    let inst = random_cover_instance(&shape, derive(seed, TAG_CHAIN, t as u64))?;
    if !verify_broadcaster_bound(&inst, &partition)? {
        bail!("broadcaster inequality failed for blocks {sizes:?}");
    }
    if !verify_disconnected_cliques(&inst, &partition)? {
        bail!("weak disconnected bound failed for blocks {sizes:?}");
    }
    Ok(())
}

/// ER graphs up to n=10: the coloring-adversarial objective steers greedy
/// to exactly chi while the optimum stays exactly n.
fn adversarial(seed: Seed, t: u32) -> Result<()> {
    let n = 3 + t % 8;
    let p = [0.25, 0.5, 0.75][t as usize % 3];
    let graph = gen_er_dag(n, p, derive(seed, TAG_ADVERSARIAL, t as u64))?;
    let (chi, coloring) = chromatic_number(&graph)?;
    let inst = make_adversarial(&graph, &coloring)?;
    let prefer_a = TieBreak::prefer((0..n).map(adversarial_a).collect());
    let sol = run_sequential(&inst, &graph, &prefer_a)?;
    if sol.value != chi as f64 {
        bail!("steered greedy scored {} instead of chi = {chi}", sol.value);
    }
    let (_, opt) = brute_force_opt(&inst)?;
    if opt != n as f64 {
        bail!("optimum {opt} differs from n = {n}");
    }
    Ok(())
}

/// Synchronous updates settle to the sequential run within n rounds.
fn synchronous(seed: Seed, t: u32) -> Result<()> {
    let n = 2 + t % 7;
    let p = [0.2, 0.45, 0.7, 0.95][t as usize % 4];
    let graph = gen_er_dag(n, p, derive(seed, TAG_SYNC, 2 * t as u64))?;
    let shape = CoverShape {
        n_agents: n,
        max_set_size: 3,
        n_items: 10,
        max_weight: 9,
    };
    let inst = random_cover_instance(&shape, derive(seed, TAG_SYNC, 2 * t as u64 + 1))?;
    let seq = run_sequential(&inst, &graph, &TieBreak::LowestIndex)?;
    let states = run_synchronous(&inst, &graph, n, &TieBreak::LowestIndex)?;
    let last = states.last().expect("rounds + 1 states");
    if last.assignment.choices() != seq.assignment.choices() {
        bail!(
            "after {n} rounds: {:?} vs sequential {:?}",
            last.assignment.choices(),
            seq.assignment.choices()
        );
    }
    Ok(())
}

/// Splitting shared strategy sets into per-agent copies changes nothing
/// about the greedy run.
fn reduction(seed: Seed, t: u32) -> Result<()> {
    let n_agents = 2 + t % 5;
    let pool = n_agents + 2 + t % 3;
    let set_size = 2 + t % 2;
    let inst = random_intersecting_instance(
        n_agents,
        pool,
        set_size,
        10,
        9,
        derive(seed, TAG_REDUCTION, 2 * t as u64),
    )?;
    let graph = gen_er_dag(
        n_agents,
        [0.3, 0.6, 0.9][t as usize % 3],
        derive(seed, TAG_REDUCTION, 2 * t as u64 + 1),
    )?;
    let red = reduce_to_disjoint(&inst);
    let orig = run_sequential(&inst, &graph, &TieBreak::LowestIndex)?;
    let reduced = run_sequential(red.reduced(), &graph, &TieBreak::LowestIndex)?;
    if orig.value != reduced.value {
        bail!("values differ: {} vs {}", orig.value, reduced.value);
    }
    let mapped: Vec<ElementId> = reduced
        .assignment
        .choices()
        .iter()
        .map(|&c| red.back_map(c))
        .collect();
    if orig.assignment.choices() != mapped.as_slice() {
        bail!("assignments differ after back-mapping");
    }
    Ok(())
}

/// Graph-number sanity on mixed families up to n=20: certificates verify,
/// the sandwich holds, and the greedy color count passes its necessary
/// conditions.
fn sanity(seed: Seed, t: u32) -> Result<()> {
    let graph: InfoDag = match t % 3 {
        0 => {
            let n = 6 + t % 15;
            gen_er_dag(n, [0.2, 0.5, 0.8][(t / 3) as usize % 3], derive(seed, TAG_SANITY, t as u64))?
        }
        1 => gen_ba_dag(5 + t % 16, derive(seed, TAG_SANITY, t as u64))?,
        _ => {
            let n = 7 + t % 14;
            gen_ws_dag(n, 1 + t % 3, 0.25, derive(seed, TAG_SANITY, t as u64))?
        }
    };
    let report = compute_bound_report(&graph)?;
    if !(report.omega <= report.chi && report.chi <= report.greedy_colors) {
        bail!(
            "ordering broken: omega {} chi {} greedy {}",
            report.omega,
            report.chi,
            report.greedy_colors
        );
    }
    if !report.verify(&graph) {
        bail!("bound report failed witness verification");
    }
    // recover the achieved color count from the published bound
    let k_float = graph.n() as f64 * report.upper_greedy;
    let k = k_float.round() as u32;
    if (k_float - k as f64).abs() > 1e-9 || k != report.greedy_colors {
        bail!(
            "n * upper_greedy = {k_float} does not reproduce the color count {}",
            report.greedy_colors
        );
    }
    let check = check_color_count(&graph, k);
    if !check.all() {
        bail!("necessary conditions rejected achieved color count {k}: {check:?}");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_a_smoke_run() {
        for name in SUITES {
            let outcome = run_suite(name, 6, Seed(99)).unwrap();
            assert!(outcome.passed(), "{}", outcome.summary());
        }
    }

    #[test]
    fn unknown_suites_are_rejected() {
        assert!(run_suite("nope", 1, Seed(0)).is_err());
    }

    #[test]
    fn partition_enumeration_has_39_shapes() {
        let parts = small_partitions();
        assert_eq!(parts.len(), 39);
        assert_eq!(parts[0], vec![1]);
        assert_eq!(parts[38], vec![3, 3, 3]);
        // all distinct
        let mut sorted = parts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 39);
    }
}
