//! Sequential and synchronous greedy over an information DAG.
//!
//! Agents act in topological order. Each agent evaluates the marginal gain
//! of every strategy against the choices of its in-neighbors only, takes a
//! maximizer, and never revises (the synchronous variant revises once per
//! round instead, converging to the sequential run).

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{invalid_input, Result};
use crate::graph::InfoDag;
use crate::rng::{below, rng, Seed};
use crate::submodular::{Assignment, ElementId, Instance};

/// How an agent resolves ties among maximizing strategies. Marginals within
/// the oracle's tolerance of the best count as tied.
pub enum TieBreak {
    /// Smallest element id wins. The default everywhere determinism matters.
    LowestIndex,
    /// Largest element id wins.
    HighestIndex,
    /// Uniform pick from the tied set. The draw depends only on the seed,
    /// the agent id, and the size of the tied set, so runs are reproducible
    /// and independent of processing order.
    SeededRandom(Seed),
    /// Caller-supplied policy. Receives the agent id and the tied set in
    /// ascending order; must return one of the tied elements.
    Custom(Box<dyn Fn(u32, &[ElementId]) -> ElementId + Send + Sync>),
}

impl TieBreak {
    /// Policy that picks the first tied element appearing in `preferred`,
    /// falling back to lowest index. Useful for steering runs toward known
    /// worst cases.
    pub fn prefer(preferred: Vec<ElementId>) -> Self {
        TieBreak::Custom(Box::new(move |_, tied: &[ElementId]| {
            tied.iter()
                .copied()
                .find(|e| preferred.contains(e))
                .unwrap_or(tied[0])
        }))
    }

    fn pick(&self, agent: u32, tied: &[ElementId]) -> Result<ElementId> {
        debug_assert!(!tied.is_empty());
        match self {
            TieBreak::LowestIndex => Ok(tied[0]),
            TieBreak::HighestIndex => Ok(tied[tied.len() - 1]),
            TieBreak::SeededRandom(seed) => {
                let mut r = rng(*seed, agent as u64);
                Ok(tied[below(&mut r, tied.len() as u64) as usize])
            }
            TieBreak::Custom(f) => {
                let choice = f(agent, tied);
                if tied.binary_search(&choice).is_err() {
                    return Err(invalid_input(alloc::format!(
                        "custom tie-break returned element {} outside the tied set for agent {agent}",
                        choice.0
                    )));
                }
                Ok(choice)
            }
        }
    }
}

impl core::fmt::Debug for TieBreak {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TieBreak::LowestIndex => f.write_str("LowestIndex"),
            TieBreak::HighestIndex => f.write_str("HighestIndex"),
            TieBreak::SeededRandom(s) => f.debug_tuple("SeededRandom").field(s).finish(),
            TieBreak::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// One agent's decision, as recorded during a run.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub agent: u32,
    /// Choices the agent could see (in-neighbor picks), ascending, deduped.
    pub observed: Vec<ElementId>,
    /// All strategies whose marginal ties the best, ascending.
    pub argmax: Vec<ElementId>,
    pub chosen: ElementId,
    /// Marginal gain of `chosen` against `observed`.
    pub local_marginal: f64,
    /// Marginal gain of `chosen` against everything chosen earlier in the
    /// run's topological order. Sums to the solution value.
    pub global_marginal: f64,
}

/// A completed greedy run.
#[derive(Debug, Clone)]
pub struct Solution {
    pub assignment: Assignment,
    pub value: f64,
    pub trace: Vec<TraceStep>,
}

fn check_shapes(instance: &Instance, graph: &InfoDag) -> Result<()> {
    if graph.n() as usize != instance.n_agents() {
        return Err(invalid_input(alloc::format!(
            "graph has {} vertices, instance has {} agents",
            graph.n(),
            instance.n_agents()
        )));
    }
    Ok(())
}

/// Evaluates agent `agent` against `observed` (sorted): the tied argmax set
/// and the best marginal.
fn agent_step(
    instance: &Instance,
    agent: u32,
    observed: &[ElementId],
) -> Result<(Vec<ElementId>, f64)> {
    let oracle = instance.oracle();
    let strategies = instance.strategy_set(agent as usize);
    let mut marginals = Vec::with_capacity(strategies.len());
    let mut best = f64::NEG_INFINITY;
    for &x in strategies {
        let m = oracle.marginal(x, observed)?;
        if m > best {
            best = m;
        }
        marginals.push((x, m));
    }
    let tol = oracle.tolerance();
    let mut tied: Vec<ElementId> = marginals
        .into_iter()
        .filter(|&(_, m)| m >= best - tol)
        .map(|(x, _)| x)
        .collect();
    tied.sort_unstable();
    Ok((tied, best))
}

/// Turns per-agent decisions (indexed by agent id, in the graph's
/// topological order) into a Solution, computing global marginals by
/// telescoping along that order.
fn assemble(
    instance: &Instance,
    graph: &InfoDag,
    decisions: &[(Vec<ElementId>, Vec<ElementId>, ElementId, f64)],
) -> Result<Solution> {
    let oracle = instance.oracle();
    let mut running: Vec<ElementId> = Vec::with_capacity(decisions.len());
    let mut value = oracle.evaluate(&[])?;
    let mut trace = Vec::with_capacity(decisions.len());
    let mut choices = alloc::vec![ElementId(0); decisions.len()];
    for &v in graph.topo_order() {
        let (observed, argmax, chosen, local) = &decisions[v as usize];
        if let Err(pos) = running.binary_search(chosen) {
            running.insert(pos, *chosen);
        }
        let new_value = oracle.evaluate(&running)?;
        let global = new_value - value;
        value = new_value;
        trace.push(TraceStep {
            agent: v,
            observed: observed.clone(),
            argmax: argmax.clone(),
            chosen: *chosen,
            local_marginal: *local,
            global_marginal: global,
        });
        choices[v as usize] = *chosen;
    }
    let assignment = Assignment::new(choices);
    assignment.validate(instance)?;
    Ok(Solution {
        assignment,
        value,
        trace,
    })
}

/// One pass in topological order: each agent maximizes its marginal against
/// the fixed choices of its in-neighbors.
pub fn run_sequential(
    instance: &Instance,
    graph: &InfoDag,
    tiebreak: &TieBreak,
) -> Result<Solution> {
    check_shapes(instance, graph)?;
    let n = graph.n() as usize;
    let mut chosen: Vec<Option<ElementId>> = alloc::vec![None; n];
    let mut decisions: Vec<(Vec<ElementId>, Vec<ElementId>, ElementId, f64)> =
        alloc::vec![(Vec::new(), Vec::new(), ElementId(0), 0.0); n];
    for &v in graph.topo_order() {
        let mut observed: Vec<ElementId> = graph
            .in_neighbors(v)
            .iter()
            .map(|&u| chosen[u as usize].expect("in-neighbors precede v in topological order"))
            .collect();
        observed.sort_unstable();
        observed.dedup();
        let (argmax, best) = agent_step(instance, v, &observed)?;
        let pick = tiebreak.pick(v, &argmax)?;
        chosen[v as usize] = Some(pick);
        decisions[v as usize] = (observed, argmax, pick, best);
    }
    assemble(instance, graph, &decisions)
}

/// Repeated simultaneous best responses: in round t every agent re-decides
/// against its in-neighbors' round t-1 choices. Round 0 is the initial
/// state, every agent's greedy pick against the empty set.
///
/// Returns rounds+1 solutions; index t is the state after t rounds. Once t
/// reaches the depth of the DAG the state is fixed and equals
/// [`run_sequential`] under the same tie-breaking, so n rounds always
/// suffice.
pub fn run_synchronous(
    instance: &Instance,
    graph: &InfoDag,
    rounds: u32,
    tiebreak: &TieBreak,
) -> Result<Vec<Solution>> {
    check_shapes(instance, graph)?;
    if rounds == 0 {
        return Err(invalid_input("synchronous run needs at least one round"));
    }
    let n = graph.n() as usize;
    let mut states = Vec::with_capacity(rounds as usize + 1);
    let mut current: Vec<(Vec<ElementId>, Vec<ElementId>, ElementId, f64)> =
        alloc::vec![(Vec::new(), Vec::new(), ElementId(0), 0.0); n];
    for v in 0..n as u32 {
        let (argmax, best) = agent_step(instance, v, &[])?;
        let pick = tiebreak.pick(v, &argmax)?;
        current[v as usize] = (Vec::new(), argmax, pick, best);
    }
    states.push(assemble(instance, graph, &current)?);
    for _ in 0..rounds {
        let prev: Vec<ElementId> = current.iter().map(|d| d.2).collect();
        let mut next: Vec<(Vec<ElementId>, Vec<ElementId>, ElementId, f64)> =
            alloc::vec![(Vec::new(), Vec::new(), ElementId(0), 0.0); n];
        for v in 0..n as u32 {
            let mut observed: Vec<ElementId> = graph
                .in_neighbors(v)
                .iter()
                .map(|&u| prev[u as usize])
                .collect();
            observed.sort_unstable();
            observed.dedup();
            let (argmax, best) = agent_step(instance, v, &observed)?;
            let pick = tiebreak.pick(v, &argmax)?;
            next[v as usize] = (observed, argmax, pick, best);
        }
        current = next;
        states.push(assemble(instance, graph, &current)?);
    }
    Ok(states)
}

/// Ratio of a solution's value to the brute-force optimum. An optimum of
/// zero means the objective is identically zero on feasible assignments, in
/// which case any solution is trivially optimal and the ratio is 1.
pub fn approximation_ratio(solution: &Solution, instance: &Instance) -> Result<f64> {
    approximation_ratio_with_guard(solution, instance, crate::submodular::DEFAULT_BRUTE_FORCE_GUARD)
}

/// As [`approximation_ratio`] with an explicit cap on the assignment count.
pub fn approximation_ratio_with_guard(
    solution: &Solution,
    instance: &Instance,
    guard: u64,
) -> Result<f64> {
    let (_, opt) = crate::submodular::brute_force_opt_with_guard(instance, guard)?;
    if opt == 0.0 {
        return Ok(1.0);
    }
    Ok(solution.value / opt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::graph::InfoDag;
    use crate::objectives::{
        adversarial_a, adversarial_b, make_adversarial, make_coverage, make_universal,
        reduce_to_disjoint, CoverageGrid, Disk,
    };
    use crate::rng::Seed;
    use crate::submodular::{GroundSet, Instance, SubmodularOracle};
    use alloc::sync::Arc;
    use alloc::vec::Vec;

    fn chain(n: u32) -> InfoDag {
        let edges: Vec<(u32, u32)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        InfoDag::new(n, &edges).unwrap()
    }

    fn empty(n: u32) -> InfoDag {
        InfoDag::new(n, &[]).unwrap()
    }

    fn complete(n: u32) -> InfoDag {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        InfoDag::new(n, &edges).unwrap()
    }

    fn e(ids: &[u32]) -> Vec<ElementId> {
        ids.iter().copied().map(ElementId).collect()
    }

    #[test]
    fn no_communication_agents_pile_onto_one_element() {
        let inst = make_universal(4, 4).unwrap();
        let sol = run_sequential(&inst, &empty(4), &TieBreak::LowestIndex).unwrap();
        assert_eq!(sol.assignment.choices(), e(&[0, 0, 0, 0]).as_slice());
        assert_eq!(sol.value, 1.0);
        let ratio = approximation_ratio(&sol, &inst).unwrap();
        assert_eq!(ratio, 0.25);
    }

    #[test]
    fn full_communication_is_optimal_on_the_universal_objective() {
        let inst = make_universal(4, 4).unwrap();
        let sol = run_sequential(&inst, &complete(4), &TieBreak::LowestIndex).unwrap();
        assert_eq!(sol.assignment.choices(), e(&[0, 1, 2, 3]).as_slice());
        assert_eq!(sol.value, 4.0);
        assert_eq!(approximation_ratio(&sol, &inst).unwrap(), 1.0);
    }

    #[test]
    fn trace_rows_carry_the_argmax_and_marginals() {
        let inst = make_universal(3, 3).unwrap();
        let sol = run_sequential(&inst, &chain(3), &TieBreak::LowestIndex).unwrap();
        // agent 0 saw nothing, all three elements tie at gain 1
        assert_eq!(sol.trace[0].agent, 0);
        assert_eq!(sol.trace[0].observed, e(&[]));
        assert_eq!(sol.trace[0].argmax, e(&[0, 1, 2]));
        assert_eq!(sol.trace[0].local_marginal, 1.0);
        // agent 1 saw e1, so e2 and e3 tie
        assert_eq!(sol.trace[1].observed, e(&[0]));
        assert_eq!(sol.trace[1].argmax, e(&[1, 2]));
        // agent 2 saw only agent 1's pick, so it re-takes e1
        assert_eq!(sol.trace[2].observed, e(&[1]));
        assert_eq!(sol.trace[2].chosen, ElementId(0));
        assert_eq!(sol.trace[2].global_marginal, 0.0);
        assert_eq!(sol.value, 2.0);
    }

    #[test]
    fn value_equals_the_sum_of_global_marginals() {
        let g = gen::gen_er_dag(9, 0.4, Seed(11)).unwrap();
        let inst = make_universal(9, 9).unwrap();
        let sol = run_sequential(&inst, &g, &TieBreak::LowestIndex).unwrap();
        let sum: f64 = sol.trace.iter().map(|s| s.global_marginal).sum();
        assert_eq!(sum, sol.value);
        assert_eq!(sol.value, inst.value_of(&sol.assignment).unwrap());
    }

    #[test]
    fn highest_index_tiebreak_flips_the_empty_graph_run() {
        let inst = make_universal(3, 5).unwrap();
        let sol = run_sequential(&inst, &empty(3), &TieBreak::HighestIndex).unwrap();
        assert_eq!(sol.assignment.choices(), e(&[4, 4, 4]).as_slice());
    }

    #[test]
    fn seeded_tiebreak_is_reproducible_and_stays_in_the_tied_set() {
        let inst = make_universal(6, 9).unwrap();
        let tb = TieBreak::SeededRandom(Seed(77));
        let a = run_sequential(&inst, &empty(6), &tb).unwrap();
        let b = run_sequential(&inst, &empty(6), &tb).unwrap();
        assert_eq!(a.assignment.choices(), b.assignment.choices());
        for step in &a.trace {
            assert!(step.argmax.binary_search(&step.chosen).is_ok());
        }
        // with everything tied, different agents should not all agree
        let distinct: alloc::collections::BTreeSet<ElementId> =
            a.assignment.choices().iter().copied().collect();
        assert!(distinct.len() > 1);
    }

    #[test]
    fn custom_tiebreak_outside_the_tied_set_is_an_error() {
        let inst = make_universal(2, 3).unwrap();
        let tb = TieBreak::Custom(Box::new(|_, _| ElementId(999)));
        assert!(run_sequential(&inst, &empty(2), &tb).is_err());
    }

    #[test]
    fn preferring_a_elements_realizes_the_chromatic_value() {
        let g = chain(5);
        let (chi, coloring) = crate::graph::chromatic_number(&g).unwrap();
        let inst = make_adversarial(&g, &coloring).unwrap();
        let prefer_a = TieBreak::prefer((0..5).map(adversarial_a).collect());
        let sol = run_sequential(&inst, &g, &prefer_a).unwrap();
        assert_eq!(sol.value, chi as f64);
        // every agent's argmax contains its a-element (ties are genuine)
        for step in &sol.trace {
            assert_eq!(step.chosen, adversarial_a(step.agent));
        }
        // the b-side optimum is n
        let all_b = Assignment::new((0..5).map(adversarial_b).collect());
        assert_eq!(inst.value_of(&all_b).unwrap(), 5.0);
    }

    #[test]
    fn near_ties_within_tolerance_join_the_argmax() {
        let ground = GroundSet::new(alloc::vec![
            alloc::string::String::from("x"),
            alloc::string::String::from("y"),
        ])
        .unwrap();
        // y's gain is 1 + 1e-12, inside the default 1e-9 tolerance of x's 1
        let oracle = Arc::new(SubmodularOracle::new(ground, |set: &[ElementId]| {
            let mut v = set.len() as f64;
            if set.contains(&ElementId(1)) {
                v += 1e-12;
            }
            v
        }));
        let inst = Instance::new(oracle, alloc::vec![e(&[0, 1])], false).unwrap();
        let sol = run_sequential(&inst, &empty(1), &TieBreak::LowestIndex).unwrap();
        assert_eq!(sol.trace[0].argmax, e(&[0, 1]));
        assert_eq!(sol.trace[0].chosen, ElementId(0));
    }

    #[test]
    fn agent_count_mismatch_is_rejected() {
        let inst = make_universal(3, 3).unwrap();
        assert!(run_sequential(&inst, &empty(4), &TieBreak::LowestIndex).is_err());
        assert!(run_synchronous(&inst, &empty(4), 2, &TieBreak::LowestIndex).is_err());
    }

    #[test]
    fn synchronous_rounds_on_a_chain_settle_to_the_sequential_run() {
        let inst = make_universal(3, 3).unwrap();
        let g = chain(3);
        let states = run_synchronous(&inst, &g, 3, &TieBreak::LowestIndex).unwrap();
        assert_eq!(states.len(), 4);
        // round 0: everyone greedy against nothing
        assert_eq!(states[0].assignment.choices(), e(&[0, 0, 0]).as_slice());
        // round 1: agents 1 and 2 react to their in-neighbor's e1
        assert_eq!(states[1].assignment.choices(), e(&[0, 1, 1]).as_slice());
        // round 2: agent 2 reacts to agent 1's new pick and re-takes e1
        assert_eq!(states[2].assignment.choices(), e(&[0, 1, 0]).as_slice());
        // converged: round 3 equals round 2 equals the sequential run
        assert_eq!(
            states[3].assignment.choices(),
            states[2].assignment.choices()
        );
        let seq = run_sequential(&inst, &g, &TieBreak::LowestIndex).unwrap();
        assert_eq!(states[3].assignment.choices(), seq.assignment.choices());
        assert_eq!(states[3].value, seq.value);
    }

    #[test]
    fn synchronous_agrees_with_sequential_after_n_rounds_on_random_dags() {
        for seed in 0..30u64 {
            let n = 3 + (seed % 6) as u32;
            let g = gen::gen_er_dag(n, 0.5, Seed(1000 + seed)).unwrap();
            let inst = make_universal(n, n + 2).unwrap();
            let seq = run_sequential(&inst, &g, &TieBreak::LowestIndex).unwrap();
            let states = run_synchronous(&inst, &g, n, &TieBreak::LowestIndex).unwrap();
            let last = states.last().unwrap();
            assert_eq!(
                last.assignment.choices(),
                seq.assignment.choices(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn zero_rounds_is_rejected() {
        let inst = make_universal(2, 2).unwrap();
        assert!(run_synchronous(&inst, &empty(2), 0, &TieBreak::LowestIndex).is_err());
    }

    #[test]
    fn greedy_is_independent_of_the_particular_topological_order() {
        let g = gen::gen_er_dag(8, 0.45, Seed(5)).unwrap();
        // build the same DAG with a different valid topological order:
        // highest-ready-first instead of lowest-ready-first
        let alt = {
            let n = g.n();
            let mut indeg = alloc::vec![0u32; n as usize];
            for &(_, v) in g.edges() {
                indeg[v as usize] += 1;
            }
            let mut ready: Vec<u32> = (0..n).filter(|&v| indeg[v as usize] == 0).collect();
            let mut order = Vec::with_capacity(n as usize);
            while let Some(pos) = ready.iter().enumerate().max_by_key(|(_, &v)| v).map(|(i, _)| i)
            {
                let v = ready.swap_remove(pos);
                order.push(v);
                for &w in g.out_neighbors(v) {
                    indeg[w as usize] -= 1;
                    if indeg[w as usize] == 0 {
                        ready.push(w);
                    }
                }
            }
            InfoDag::with_topo_order(n, g.edges(), order).unwrap()
        };
        assert_ne!(g.topo_order(), alt.topo_order());
        let inst = make_universal(8, 10).unwrap();
        let a = run_sequential(&inst, &g, &TieBreak::LowestIndex).unwrap();
        let b = run_sequential(&inst, &alt, &TieBreak::LowestIndex).unwrap();
        assert_eq!(a.assignment.choices(), b.assignment.choices());
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn reduction_preserves_the_greedy_run() {
        for seed in 0..20u64 {
            let n = 2 + (seed % 5) as u32;
            let g = gen::gen_er_dag(n, 0.4, Seed(300 + seed)).unwrap();
            let inst = make_universal(n, n + 3).unwrap();
            let red = reduce_to_disjoint(&inst);
            let orig = run_sequential(&inst, &g, &TieBreak::LowestIndex).unwrap();
            let reduced = run_sequential(red.reduced(), &g, &TieBreak::LowestIndex).unwrap();
            assert_eq!(orig.value, reduced.value, "seed {seed}");
            let mapped: Vec<ElementId> = reduced
                .assignment
                .choices()
                .iter()
                .map(|&c| red.back_map(c))
                .collect();
            assert_eq!(orig.assignment.choices(), mapped.as_slice());
        }
    }

    #[test]
    fn coverage_run_on_a_complete_graph_hits_at_least_half_of_optimum() {
        let sets = [
            alloc::vec![
                Disk { cx: 0.25, cy: 0.25, r: 0.2 },
                Disk { cx: 0.3, cy: 0.3, r: 0.05 },
            ],
            alloc::vec![
                Disk { cx: 0.75, cy: 0.25, r: 0.2 },
                Disk { cx: 0.26, cy: 0.26, r: 0.21 },
            ],
            alloc::vec![
                Disk { cx: 0.5, cy: 0.75, r: 0.25 },
                Disk { cx: 0.74, cy: 0.26, r: 0.19 },
            ],
        ];
        let inst = make_coverage(&sets, CoverageGrid::new(40).unwrap()).unwrap();
        let sol = run_sequential(&inst, &complete(3), &TieBreak::LowestIndex).unwrap();
        let ratio = approximation_ratio(&sol, &inst).unwrap();
        assert!(ratio >= 0.5 && ratio <= 1.0, "ratio {ratio}");
    }

    #[test]
    fn zero_objective_counts_as_fully_approximated() {
        let ground = GroundSet::new(alloc::vec![alloc::string::String::from("z")]).unwrap();
        let oracle = Arc::new(SubmodularOracle::exact(ground, |_: &[ElementId]| 0.0));
        let inst = Instance::new(oracle, alloc::vec![e(&[0])], true).unwrap();
        let sol = run_sequential(&inst, &empty(1), &TieBreak::LowestIndex).unwrap();
        assert_eq!(approximation_ratio(&sol, &inst).unwrap(), 1.0);
    }
}
