//! Approximation-ratio bounds computed from the communication graph alone.
//!
//! Lower bounds are guarantees: greedy on this graph achieves at least the
//! stated fraction of optimum for every monotone normalized submodular
//! objective. Upper bounds are worst cases: some objective caps greedy at
//! the stated fraction. Where a bound has a finite witness (a clique, a
//! coloring) the report carries it so callers can re-check the claim
//! without re-running the search.

use alloc::vec::Vec;

use crate::error::{invalid_input, Result};
use crate::graph::{
    chromatic_number_with_guard, clique_number_with_guard, greedy_topological_coloring,
    BoundCertificate, Coloring, InfoDag, DEFAULT_CHROMATIC_GUARD, DEFAULT_CLIQUE_GUARD,
};
use crate::greedy::{run_sequential, TieBreak};
use crate::submodular::{brute_force_opt, Instance};

/// Consecutive blocks of a clique-chain topology: block i is internally
/// complete and its last vertex broadcasts to all of block i+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliquePartition {
    sizes: Vec<u32>,
}

impl CliquePartition {
    pub fn new(sizes: Vec<u32>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(invalid_input("clique partition needs at least one block"));
        }
        if sizes.iter().any(|&s| s == 0) {
            return Err(invalid_input("clique partition blocks must be nonempty"));
        }
        Ok(CliquePartition { sizes })
    }

    /// Number of blocks.
    pub fn kappa(&self) -> u32 {
        self.sizes.len() as u32
    }

    /// Total vertex count.
    pub fn n(&self) -> u32 {
        self.sizes.iter().sum()
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// Vertex range of block b under the consecutive numbering.
    pub fn block_range(&self, b: usize) -> core::ops::Range<u32> {
        let start: u32 = self.sizes[..b].iter().sum();
        start..start + self.sizes[b]
    }

    /// The broadcasting vertices m_1, …, m_{kappa-1}: the last vertex of
    /// every block except the final one.
    pub fn broadcasters(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.sizes.len().saturating_sub(1));
        let mut start = 0u32;
        for &s in &self.sizes[..self.sizes.len() - 1] {
            out.push(start + s - 1);
            start += s;
        }
        out
    }
}

/// A topology with a sharper guarantee than the clique-size formula gives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialTopology {
    /// No edges: every agent decides blind.
    Empty,
    /// Every pair connected: full information.
    Complete,
    /// Chain of broadcasting cliques.
    Cliques(CliquePartition),
}

/// Guarantee from the clique number: greedy achieves at least
/// 1 / ((n - omega) + 2) of optimum. Rises to 1/2 on a complete graph and
/// degrades by one harmonic step per vertex outside the largest clique
/// (removing a single edge from a complete graph already drops it to 1/3).
pub fn lower_bound_clique(graph: &InfoDag) -> Result<f64> {
    lower_bound_clique_with_guard(graph, DEFAULT_CLIQUE_GUARD)
}

/// As [`lower_bound_clique`] with an explicit cap on the exact clique
/// search.
pub fn lower_bound_clique_with_guard(graph: &InfoDag, guard: u32) -> Result<f64> {
    let (omega, _) = clique_number_with_guard(graph, guard)?;
    Ok(clique_bound_value(graph.n(), omega))
}

fn clique_bound_value(n: u32, omega: u32) -> f64 {
    1.0 / ((n - omega) as f64 + 2.0)
}

/// Recognizes topologies with dedicated guarantees: no edges gives 1/n,
/// complete gives 1/2, and a chain of kappa broadcasting cliques gives
/// 1/(2 kappa). Checked in that order, so a single vertex reports Empty and
/// a complete graph reports Complete rather than the equivalent one-block
/// chain.
pub fn lower_bound_special(graph: &InfoDag) -> Option<(SpecialTopology, f64)> {
    if graph.is_edgeless() {
        return Some((SpecialTopology::Empty, 1.0 / graph.n() as f64));
    }
    if graph.is_complete() {
        return Some((SpecialTopology::Complete, 0.5));
    }
    let partition = detect_clique_chain(graph)?;
    let kappa = partition.kappa() as f64;
    Some((SpecialTopology::Cliques(partition), 1.0 / (2.0 * kappa)))
}

/// Finds the fewest-block clique-chain structure of the graph, if it has
/// one. A clique chain's topological order is unique (each block is totally
/// ordered by its internal edges and ends at its broadcaster), so it
/// suffices to scan the stored order and ask where block boundaries can
/// fall: a vertex at position j inside a block starting at position s must
/// see exactly the broadcaster at s-1 (when s > 0) plus every block-mate at
/// positions s..j. Minimality comes from a right-to-left DP over start
/// positions.
pub fn detect_clique_chain(graph: &InfoDag) -> Option<CliquePartition> {
    let n = graph.n() as usize;
    let order = graph.topo_order();
    let in_pos: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let mut ps: Vec<u32> = graph
                .in_neighbors(order[j])
                .iter()
                .map(|&u| graph.position(u))
                .collect();
            ps.sort_unstable();
            ps
        })
        .collect();
    let valid_block = |s: usize, e: usize| -> bool {
        for j in s..e {
            let ps = &in_pos[j];
            let broadcast = usize::from(s > 0);
            if ps.len() != (j - s) + broadcast {
                return false;
            }
            if s > 0 && ps[0] as usize != s - 1 {
                return false;
            }
            for (off, &p) in ps[broadcast..].iter().enumerate() {
                if p as usize != s + off {
                    return false;
                }
            }
        }
        true
    };
    // min_blocks[s]: fewest blocks covering positions s.. together with the
    // end of the first such block; None when no tiling exists
    let mut min_blocks: Vec<Option<(u32, usize)>> = alloc::vec![None; n + 1];
    min_blocks[n] = Some((0, n));
    for s in (0..n).rev() {
        let mut best: Option<(u32, usize)> = None;
        for e in s + 1..=n {
            if !valid_block(s, e) {
                // a longer block needs strictly more in-edges, but elements
                // of s..e can also fail for having too many, so keep
                // scanning
                continue;
            }
            if let Some((rest, _)) = min_blocks[e] {
                let k = rest + 1;
                let better = match best {
                    None => true,
                    // prefer the larger first block on equal counts
                    Some((bk, be)) => k < bk || (k == bk && e > be),
                };
                if better {
                    best = Some((k, e));
                }
            }
        }
        min_blocks[s] = best;
    }
    min_blocks[0]?;
    let mut sizes = Vec::new();
    let mut s = 0usize;
    while s < n {
        let (_, e) = min_blocks[s].expect("tiling exists from position 0");
        sizes.push((e - s) as u32);
        s = e;
    }
    Some(CliquePartition { sizes })
}

/// Worst case from the chromatic number: some objective holds greedy to
/// exactly chi/n of optimum on this graph.
pub fn upper_bound_chromatic(graph: &InfoDag) -> Result<f64> {
    upper_bound_chromatic_with_guard(graph, DEFAULT_CHROMATIC_GUARD)
}

/// As [`upper_bound_chromatic`] with an explicit cap on the exact coloring
/// search.
pub fn upper_bound_chromatic_with_guard(graph: &InfoDag, guard: u32) -> Result<f64> {
    let (chi, _) = chromatic_number_with_guard(graph, guard)?;
    Ok(chi as f64 / graph.n() as f64)
}

/// Worst case from the cheap side: the number of colors the linear-time
/// topological greedy coloring uses, over n. Always at least
/// [`upper_bound_chromatic`], often much easier to compute, and attainable
/// by the same style of objective built from the greedy coloring.
pub fn upper_bound_greedy(graph: &InfoDag) -> f64 {
    greedy_topological_coloring(graph).max_color as f64 / graph.n() as f64
}

/// Necessary conditions for the topological greedy coloring to be forced
/// up to k colors on some ordering of this graph. All three hold whenever k
/// colors are reachable; any failure certifies they are not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorCountCheck {
    /// Some vertex has in-degree at least k-1.
    pub has_deep_vertex: bool,
    /// For every l in 1..=k there are at least l vertices of in-degree at
    /// least k-l.
    pub has_indegree_ladder: bool,
    /// The graph has at least k(k-1)/2 edges.
    pub has_enough_edges: bool,
}

impl ColorCountCheck {
    pub fn all(&self) -> bool {
        self.has_deep_vertex && self.has_indegree_ladder && self.has_enough_edges
    }
}

pub fn check_color_count(graph: &InfoDag, k: u32) -> ColorCountCheck {
    let indegrees: Vec<u32> = (0..graph.n())
        .map(|v| graph.in_neighbors(v).len() as u32)
        .collect();
    let has_deep_vertex = indegrees.iter().any(|&d| d + 1 >= k);
    let has_indegree_ladder = (1..=k).all(|l| {
        let threshold = k - l;
        let count = indegrees.iter().filter(|&&d| d >= threshold).count();
        count as u64 >= l as u64
    });
    let needed_edges = k as u64 * (k as u64 - if k == 0 { 0 } else { 1 }) / 2;
    let has_enough_edges = graph.edges().len() as u64 >= needed_edges;
    ColorCountCheck {
        has_deep_vertex,
        has_indegree_ladder,
        has_enough_edges,
    }
}

const VERIFY_SLACK: f64 = 1e-9;

/// Checks the clique-chain guarantee on a concrete instance: with kappa
/// blocks and broadcasters m_1, …, m_{kappa-1},
///
///   2 kappa f(greedy) >= f(x*) + sum_i f({x*_{m_i}})
///
/// where x* is the brute-force optimum. With one block this is exactly the
/// complete-graph guarantee 2 f(greedy) >= f(x*). Greedy runs with
/// lowest-index tie-breaking; the bound holds for any tie-breaking, so a
/// failure here is a genuine counterexample.
pub fn verify_broadcaster_bound(instance: &Instance, partition: &CliquePartition) -> Result<bool> {
    if instance.n_agents() != partition.n() as usize {
        return Err(invalid_input(alloc::format!(
            "instance has {} agents, partition covers {}",
            instance.n_agents(),
            partition.n()
        )));
    }
    let (graph, _) = crate::gen::gen_interconnected_cliques(partition.sizes())?;
    let greedy = run_sequential(instance, &graph, &TieBreak::LowestIndex)?;
    let (opt, opt_value) = brute_force_opt(instance)?;
    let oracle = instance.oracle();
    let mut singles = 0.0;
    for m in partition.broadcasters() {
        singles += oracle.evaluate(&[opt.choices()[m as usize]])?;
    }
    let kappa = partition.kappa() as f64;
    Ok(2.0 * kappa * greedy.value >= opt_value + singles - VERIFY_SLACK)
}

/// Checks the weaker guarantee for fully disconnected blocks: with the broadcast
/// edges removed (kappa isolated cliques), greedy still achieves at least
/// 1/(2 kappa) of optimum.
pub fn verify_disconnected_cliques(
    instance: &Instance,
    partition: &CliquePartition,
) -> Result<bool> {
    if instance.n_agents() != partition.n() as usize {
        return Err(invalid_input(alloc::format!(
            "instance has {} agents, partition covers {}",
            instance.n_agents(),
            partition.n()
        )));
    }
    let mut edges = Vec::new();
    for b in 0..partition.kappa() as usize {
        let range = partition.block_range(b);
        for u in range.clone() {
            for v in u + 1..range.end {
                edges.push((u, v));
            }
        }
    }
    let graph = InfoDag::new(partition.n(), &edges)?;
    let greedy = run_sequential(instance, &graph, &TieBreak::LowestIndex)?;
    let (_, opt_value) = brute_force_opt(instance)?;
    let kappa = partition.kappa() as f64;
    Ok(greedy.value >= opt_value / (2.0 * kappa) - VERIFY_SLACK)
}

/// Everything the graph alone says about greedy's approximation ratio,
/// with the witnesses that back the numbers.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub n: u32,
    pub edge_count: u64,
    pub omega: u32,
    pub chi: u32,
    pub greedy_colors: u32,
    pub lower_clique: f64,
    pub lower_special: Option<(SpecialTopology, f64)>,
    pub upper_chi: f64,
    pub upper_greedy: f64,
    pub clique_witness: Vec<u32>,
    pub optimal_coloring: Coloring,
    pub greedy_coloring: Coloring,
}

impl BoundReport {
    /// The strongest available guarantee.
    pub fn best_lower(&self) -> f64 {
        match &self.lower_special {
            Some((_, v)) if *v > self.lower_clique => *v,
            _ => self.lower_clique,
        }
    }

    /// Re-checks every finite witness against the graph and the ordering
    /// between the numbers (omega <= chi <= greedy colors, guarantee below
    /// worst case).
    pub fn verify(&self, graph: &InfoDag) -> bool {
        let certs_ok = BoundCertificate::Clique(self.clique_witness.clone()).verifies(graph)
            && self.clique_witness.len() == self.omega as usize
            && BoundCertificate::OptimalColoring(self.optimal_coloring.clone()).verifies(graph)
            && self.optimal_coloring.color_count() == self.chi
            && BoundCertificate::GreedyColoring(self.greedy_coloring.clone()).verifies(graph)
            && self.greedy_coloring.color_count() == self.greedy_colors;
        certs_ok
            && self.omega <= self.chi
            && self.chi <= self.greedy_colors
            && self.best_lower() <= self.upper_chi + VERIFY_SLACK
            && self.upper_chi <= self.upper_greedy + VERIFY_SLACK
    }
}

/// Computes all bounds for a graph under the default search guards.
pub fn compute_bound_report(graph: &InfoDag) -> Result<BoundReport> {
    compute_bound_report_with_guards(graph, DEFAULT_CLIQUE_GUARD, DEFAULT_CHROMATIC_GUARD)
}

/// As [`compute_bound_report`] with explicit caps on the exact clique and
/// coloring searches.
pub fn compute_bound_report_with_guards(
    graph: &InfoDag,
    clique_guard: u32,
    chromatic_guard: u32,
) -> Result<BoundReport> {
    let (omega, clique_witness) = clique_number_with_guard(graph, clique_guard)?;
    let (chi, optimal_coloring) = chromatic_number_with_guard(graph, chromatic_guard)?;
    let greedy = greedy_topological_coloring(graph);
    let n = graph.n();
    Ok(BoundReport {
        n,
        edge_count: graph.edges().len() as u64,
        omega,
        chi,
        greedy_colors: greedy.max_color,
        lower_clique: clique_bound_value(n, omega),
        lower_special: lower_bound_special(graph),
        upper_chi: chi as f64 / n as f64,
        upper_greedy: greedy.max_color as f64 / n as f64,
        clique_witness,
        optimal_coloring,
        greedy_coloring: greedy.coloring,
    })
}
