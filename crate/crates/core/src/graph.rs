//! Information DAGs and the graph machinery behind the bounds: validated
//! construction, in-neighborhoods, exact max clique, exact chromatic number,
//! and the linear-time greedy topological coloring.
//!
//! Cliques and colorings act on the underlying undirected graph. That
//! coincides with "complete sub-DAG" cliques because any pairwise-adjacent
//! vertex set of a DAG is itself acyclically oriented. Exact solvers are
//! branch-and-bound with size guards and a node budget; there is no external
//! solver behind them.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::error::{invalid_graph, Error, Result};

/// Exact clique search refuses graphs larger than this unless the caller
/// raises the guard.
pub const DEFAULT_CLIQUE_GUARD: u32 = 64;

/// Exact chromatic search refuses graphs larger than this unless the caller
/// raises the guard.
pub const DEFAULT_CHROMATIC_GUARD: u32 = 40;

// Branch-and-bound node budgets. Desk-scale inputs stay far below these;
// they bound worst-case adversarial inputs instead of hanging.
const CLIQUE_NODE_BUDGET: u64 = 50_000_000;
const CHROMATIC_NODE_BUDGET: u64 = 50_000_000;

/// Directed acyclic information graph. Vertices are 0-indexed. A fixed
/// topological order is stored at construction: every edge goes from earlier
/// to later in it, and the greedy engine processes agents in exactly this
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfoDag {
    n: u32,
    edges: Vec<(u32, u32)>,
    topo: Vec<u32>,
    pos: Vec<u32>,
    in_adj: Vec<Vec<u32>>,
    out_adj: Vec<Vec<u32>>,
    und: Vec<(u32, u32)>, // normalized (min,max), sorted, for adjacency tests
}

impl InfoDag {
    /// Builds a DAG and computes a canonical topological order (Kahn's
    /// algorithm, lowest vertex first among the ready ones).
    pub fn new(n: u32, edges: &[(u32, u32)]) -> Result<Self> {
        let (sorted, in_adj, out_adj) = Self::check_edges(n, edges)?;
        // Kahn, deterministic: smallest ready vertex first.
        let mut indeg: Vec<u32> = in_adj.iter().map(|v| v.len() as u32).collect();
        let mut ready: BinaryHeap<Reverse<u32>> = (0..n)
            .filter(|&v| indeg[v as usize] == 0)
            .map(Reverse)
            .collect();
        let mut topo = Vec::with_capacity(n as usize);
        while let Some(Reverse(v)) = ready.pop() {
            topo.push(v);
            for &w in &out_adj[v as usize] {
                indeg[w as usize] -= 1;
                if indeg[w as usize] == 0 {
                    ready.push(Reverse(w));
                }
            }
        }
        if topo.len() != n as usize {
            return Err(invalid_graph("edge set contains a cycle"));
        }
        Ok(Self::assemble(n, sorted, topo, in_adj, out_adj))
    }

    /// Builds a DAG with a caller-chosen topological order (e.g. the drawn
    /// vertex ordering of a random generator). The order must be a
    /// permutation of 0..n with every edge going forward.
    pub fn with_topo_order(n: u32, edges: &[(u32, u32)], topo: Vec<u32>) -> Result<Self> {
        let (sorted, in_adj, out_adj) = Self::check_edges(n, edges)?;
        if topo.len() != n as usize {
            return Err(invalid_graph("topological order has wrong length"));
        }
        let mut pos = alloc::vec![u32::MAX; n as usize];
        for (i, &v) in topo.iter().enumerate() {
            if v >= n || pos[v as usize] != u32::MAX {
                return Err(invalid_graph("topological order is not a permutation"));
            }
            pos[v as usize] = i as u32;
        }
        for &(u, v) in &sorted {
            if pos[u as usize] >= pos[v as usize] {
                return Err(invalid_graph(alloc::format!(
                    "edge ({u},{v}) goes backwards in the given order"
                )));
            }
        }
        Ok(Self::assemble(n, sorted, topo, in_adj, out_adj))
    }

    #[allow(clippy::type_complexity)]
    fn check_edges(
        n: u32,
        edges: &[(u32, u32)],
    ) -> Result<(Vec<(u32, u32)>, Vec<Vec<u32>>, Vec<Vec<u32>>)> {
        if n == 0 {
            return Err(invalid_graph("graph needs at least one vertex"));
        }
        let mut sorted: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid_graph(alloc::format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(invalid_graph(alloc::format!("self-loop at vertex {u}")));
            }
            sorted.push((u, v));
        }
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid_graph("duplicate edge"));
        }
        let mut in_adj = alloc::vec![Vec::new(); n as usize];
        let mut out_adj = alloc::vec![Vec::new(); n as usize];
        for &(u, v) in &sorted {
            out_adj[u as usize].push(v);
            in_adj[v as usize].push(u);
        }
        for a in in_adj.iter_mut().chain(out_adj.iter_mut()) {
            a.sort_unstable();
        }
        Ok((sorted, in_adj, out_adj))
    }

    fn assemble(
        n: u32,
        edges: Vec<(u32, u32)>,
        topo: Vec<u32>,
        in_adj: Vec<Vec<u32>>,
        out_adj: Vec<Vec<u32>>,
    ) -> Self {
        let mut pos = alloc::vec![0u32; n as usize];
        for (i, &v) in topo.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let mut und: Vec<(u32, u32)> = edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        und.sort_unstable();
        InfoDag {
            n,
            edges,
            topo,
            pos,
            in_adj,
            out_adj,
            und,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by (source, target).
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// The stored topological order.
    pub fn topo_order(&self) -> &[u32] {
        &self.topo
    }

    /// Position of `v` in the stored topological order.
    pub fn position(&self, v: u32) -> u32 {
        self.pos[v as usize]
    }

    /// Vertices whose choices `v` observes, ascending.
    pub fn in_neighbors(&self, v: u32) -> &[u32] {
        &self.in_adj[v as usize]
    }

    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        &self.out_adj[v as usize]
    }

    pub fn in_degree(&self, v: u32) -> usize {
        self.in_adj[v as usize].len()
    }

    /// True when u and v are joined by an edge in either direction.
    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        if u == v {
            return false;
        }
        self.und.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Complete DAG: no edge can be added without breaking acyclicity.
    pub fn is_complete(&self) -> bool {
        self.edges.len() as u64 == (self.n as u64) * (self.n as u64 - 1) / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    fn undirected_bits(&self) -> Vec<Bits> {
        let mut adj = alloc::vec![Bits::new(self.n as usize); self.n as usize];
        for &(u, v) in &self.edges {
            adj[u as usize].set(v as usize);
            adj[v as usize].set(u as usize);
        }
        adj
    }
}

/// Proper vertex coloring with colors 1..=k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Result<Self> {
        if colors.is_empty() || colors.iter().any(|&c| c == 0) {
            return Err(crate::error::invalid_input(
                "colors are 1-based and at least one vertex is required",
            ));
        }
        Ok(Coloring { colors })
    }

    pub fn color(&self, v: u32) -> u32 {
        self.colors[v as usize]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Highest color in use.
    pub fn color_count(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// True when endpoints of every edge differ in color.
    pub fn is_proper(&self, g: &InfoDag) -> bool {
        self.colors.len() == g.n() as usize
            && g.edges()
                .iter()
                .all(|&(u, v)| self.colors[u as usize] != self.colors[v as usize])
    }
}

/// Self-checkable witness for a reported bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundCertificate {
    /// Pairwise-adjacent vertex set backing a clique-number claim.
    Clique(Vec<u32>),
    /// Proper coloring backing a chromatic-number claim (propriety is
    /// checkable; minimality is the solver's claim).
    OptimalColoring(Coloring),
    /// Proper coloring produced by the greedy topological pass.
    GreedyColoring(Coloring),
}

impl BoundCertificate {
    pub fn verifies(&self, g: &InfoDag) -> bool {
        match self {
            BoundCertificate::Clique(vs) => {
                vs.iter().all(|&v| v < g.n())
                    && vs
                        .iter()
                        .enumerate()
                        .all(|(i, &u)| vs[..i].iter().all(|&w| g.adjacent(u, w)))
                    && {
                        let mut s = vs.clone();
                        s.sort_unstable();
                        s.dedup();
                        s.len() == vs.len()
                    }
            }
            BoundCertificate::OptimalColoring(c) | BoundCertificate::GreedyColoring(c) => {
                c.is_proper(g)
            }
        }
    }
}

/// Result of the greedy topological coloring pass, with the operation count
/// used by the linearity tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyColoring {
    pub coloring: Coloring,
    pub max_color: u32,
    /// Edge touches plus per-vertex scan steps; linear in |V|+|E|.
    pub ops: u64,
}

/// Colors vertices in the stored topological order, giving each the smallest
/// positive integer unused among its in-neighbors.
///
/// A shared boolean array is marked along each in-neighborhood, scanned for
/// the first free color, then unmarked by a second sweep, so each edge is
/// touched exactly twice and no per-vertex allocation happens.
pub fn greedy_topological_coloring(g: &InfoDag) -> GreedyColoring {
    let n = g.n() as usize;
    let mut colors = alloc::vec![0u32; n];
    let mut used = alloc::vec![false; n + 2];
    let mut max_color = 0u32;
    let mut ops = 0u64;
    for &v in g.topo_order() {
        let nbrs = g.in_neighbors(v);
        for &u in nbrs {
            used[colors[u as usize] as usize] = true;
            ops += 1;
        }
        let mut c = 1u32;
        while used[c as usize] {
            c += 1;
            ops += 1;
        }
        for &u in nbrs {
            used[colors[u as usize] as usize] = false;
            ops += 1;
        }
        colors[v as usize] = c;
        max_color = max_color.max(c);
        ops += 1;
    }
    GreedyColoring {
        coloring: Coloring::new(colors).expect("greedy colors are 1-based"),
        max_color,
        ops,
    }
}

/// Exact clique number with a verifying witness.
pub fn clique_number(g: &InfoDag) -> Result<(u32, Vec<u32>)> {
    clique_number_with_guard(g, DEFAULT_CLIQUE_GUARD)
}

pub fn clique_number_with_guard(g: &InfoDag, guard: u32) -> Result<(u32, Vec<u32>)> {
    if g.n() > guard {
        return Err(Error::SizeGuard {
            what: "clique_number vertex count",
            size: g.n() as u64,
            limit: guard as u64,
        });
    }
    let adj = g.undirected_bits();
    let mut search = CliqueSearch {
        adj: &adj,
        best: Vec::new(),
        nodes: 0,
    };
    let mut all = Bits::new(g.n() as usize);
    for v in 0..g.n() as usize {
        all.set(v);
    }
    search.expand(&mut Vec::new(), all)?;
    let mut witness = search.best;
    witness.sort_unstable();
    Ok((witness.len() as u32, witness))
}

/// Branch-and-bound max clique with greedy-coloring upper bounds
/// (Tomita-style). Candidates are grouped into color classes; a partial
/// clique R with candidate colored c cannot grow past |R| + c.
struct CliqueSearch<'a> {
    adj: &'a [Bits],
    best: Vec<u32>,
    nodes: u64,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, r: &mut Vec<u32>, p: Bits) -> Result<()> {
        self.nodes += 1;
        if self.nodes > CLIQUE_NODE_BUDGET {
            return Err(Error::SizeGuard {
                what: "clique search nodes",
                size: self.nodes,
                limit: CLIQUE_NODE_BUDGET,
            });
        }
        if p.is_zero() {
            if r.len() > self.best.len() {
                self.best = r.clone();
            }
            return Ok(());
        }
        // Greedy color classes over the candidates, ascending color.
        let mut order: Vec<(u32, u32)> = Vec::new();
        let mut rem = p.clone();
        let mut color = 0u32;
        while !rem.is_zero() {
            color += 1;
            let mut avail = rem.clone();
            while let Some(v) = avail.first_one() {
                order.push((v as u32, color));
                rem.clear(v);
                avail.clear(v);
                avail.and_not_assign(&self.adj[v]);
            }
        }
        let mut p = p;
        for &(v, c) in order.iter().rev() {
            if r.len() as u32 + c <= self.best.len() as u32 {
                return Ok(());
            }
            r.push(v);
            let mut next = p.clone();
            next.and_assign(&self.adj[v as usize]);
            self.expand(r, next)?;
            r.pop();
            p.clear(v as usize);
        }
        Ok(())
    }
}

/// Exact chromatic number with an optimal proper coloring.
///
/// Search plan: exact clique for the lower bound (its vertices are
/// pre-colored 1..ω as symmetry breaking), largest-degree-first greedy for
/// the upper bound, then DSATUR-ordered backtracking for each k in between.
pub fn chromatic_number(g: &InfoDag) -> Result<(u32, Coloring)> {
    chromatic_number_with_guard(g, DEFAULT_CHROMATIC_GUARD)
}

pub fn chromatic_number_with_guard(g: &InfoDag, guard: u32) -> Result<(u32, Coloring)> {
    if g.n() > guard {
        return Err(Error::SizeGuard {
            what: "chromatic_number vertex count",
            size: g.n() as u64,
            limit: guard as u64,
        });
    }
    let n = g.n() as usize;
    let adj = g.undirected_bits();
    let degree: Vec<usize> = adj.iter().map(Bits::count).collect();

    let (omega, clique) = clique_number_with_guard(g, guard.max(DEFAULT_CLIQUE_GUARD))?;

    // Greedy upper bound: largest degree first, smallest free color.
    let mut by_degree: Vec<u32> = (0..g.n()).collect();
    by_degree.sort_unstable_by_key(|&v| (Reverse(degree[v as usize]), v));
    let mut greedy = alloc::vec![0u32; n];
    for &v in &by_degree {
        let mut taken = 0u64;
        for u in adj[v as usize].ones() {
            let c = greedy[u];
            if c > 0 && c <= 64 {
                taken |= 1 << (c - 1);
            }
        }
        greedy[v as usize] = (taken.trailing_ones() + 1) as u32;
    }
    let ub = *greedy.iter().max().expect("n >= 1");
    let greedy_coloring = Coloring::new(greedy)?;
    if omega == ub {
        return Ok((ub, greedy_coloring));
    }

    let mut solver = ColorSearch {
        adj: &adj,
        degree: &degree,
        colors: alloc::vec![0u32; n],
        nodes: 0,
    };
    for k in omega..ub {
        for c in solver.colors.iter_mut() {
            *c = 0;
        }
        for (i, &v) in clique.iter().enumerate() {
            solver.colors[v as usize] = i as u32 + 1;
        }
        if solver.solve(k, clique.len(), omega)? {
            return Ok((k, Coloring::new(solver.colors.clone())?));
        }
    }
    Ok((ub, greedy_coloring))
}

struct ColorSearch<'a> {
    adj: &'a [Bits],
    degree: &'a [usize],
    colors: Vec<u32>,
    nodes: u64,
}

impl ColorSearch<'_> {
    /// Tries to finish a proper k-coloring. `colored` counts assigned
    /// vertices; `max_used` is the highest color already in use (new colors
    /// are tried at most one past it, which cuts color permutations).
    fn solve(&mut self, k: u32, colored: usize, max_used: u32) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > CHROMATIC_NODE_BUDGET {
            return Err(Error::SizeGuard {
                what: "chromatic search nodes",
                size: self.nodes,
                limit: CHROMATIC_NODE_BUDGET,
            });
        }
        if colored == self.colors.len() {
            return Ok(true);
        }
        // DSATUR pick: most saturated, then highest degree, then lowest id.
        let mut pick = usize::MAX;
        let mut pick_key = (0usize, 0usize);
        let mut pick_taken = 0u64;
        for v in 0..self.colors.len() {
            if self.colors[v] != 0 {
                continue;
            }
            let mut taken = 0u64;
            for u in self.adj[v].ones() {
                let c = self.colors[u];
                if c > 0 {
                    taken |= 1 << (c - 1);
                }
            }
            let key = (taken.count_ones() as usize, self.degree[v]);
            if pick == usize::MAX || key > pick_key {
                pick = v;
                pick_key = key;
                pick_taken = taken;
            }
        }
        let limit = k.min(max_used + 1);
        for c in 1..=limit {
            if pick_taken & (1 << (c - 1)) != 0 {
                continue;
            }
            self.colors[pick] = c;
            if self.solve(k, colored + 1, max_used.max(c))? {
                return Ok(true);
            }
            self.colors[pick] = 0;
        }
        Ok(false)
    }
}

/// Growable bitset over vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits {
    w: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        Bits {
            w: alloc::vec![0u64; n.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.w[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.w[i / 64] &= !(1 << (i % 64));
    }

    fn is_zero(&self) -> bool {
        self.w.iter().all(|&x| x == 0)
    }

    fn count(&self) -> usize {
        self.w.iter().map(|x| x.count_ones() as usize).sum()
    }

    fn first_one(&self) -> Option<usize> {
        for (i, &x) in self.w.iter().enumerate() {
            if x != 0 {
                return Some(i * 64 + x.trailing_zeros() as usize);
            }
        }
        None
    }

    fn and_assign(&mut self, o: &Bits) {
        for (a, b) in self.w.iter_mut().zip(&o.w) {
            *a &= b;
        }
    }

    fn and_not_assign(&mut self, o: &Bits) {
        for (a, b) in self.w.iter_mut().zip(&o.w) {
            *a &= !b;
        }
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.w.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: u32) -> InfoDag {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        InfoDag::new(n, &edges).unwrap()
    }

    fn edgeless(n: u32) -> InfoDag {
        InfoDag::new(n, &[]).unwrap()
    }

    #[test]
    fn complete_dag_gets_natural_topo_order() {
        let g = InfoDag::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.topo_order(), &[0, 1, 2]);
        assert!(g.is_complete());
    }

    #[test]
    fn cycles_self_loops_and_duplicates_are_rejected() {
        assert!(matches!(
            InfoDag::new(2, &[(0, 1), (1, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(InfoDag::new(2, &[(0, 0)]).is_err());
        assert!(InfoDag::new(2, &[(0, 1), (0, 1)]).is_err());
        assert!(InfoDag::new(2, &[(0, 2)]).is_err());
        assert!(InfoDag::new(0, &[]).is_err());
    }

    #[test]
    fn custom_topo_order_is_validated() {
        let g = InfoDag::with_topo_order(3, &[(2, 0)], alloc::vec![1, 2, 0]).unwrap();
        assert_eq!(g.topo_order(), &[1, 2, 0]);
        assert_eq!(g.position(0), 2);
        assert!(InfoDag::with_topo_order(3, &[(2, 0)], alloc::vec![0, 1, 2]).is_err());
        assert!(InfoDag::with_topo_order(3, &[(2, 0)], alloc::vec![1, 1, 0]).is_err());
        assert!(InfoDag::with_topo_order(3, &[(2, 0)], alloc::vec![1, 0]).is_err());
    }

    #[test]
    fn in_neighbors_of_complete_and_empty() {
        let g = complete(4);
        assert_eq!(g.in_neighbors(3), &[0, 1, 2]);
        assert_eq!(g.in_neighbors(0), &[] as &[u32]);
        let e = edgeless(5);
        for v in 0..5 {
            assert!(e.in_neighbors(v).is_empty());
        }
    }

    #[test]
    fn clique_number_on_stock_graphs() {
        let (w, cert) = clique_number(&complete(6)).unwrap();
        assert_eq!(w, 6);
        assert!(BoundCertificate::Clique(cert).verifies(&complete(6)));

        let (w, _) = clique_number(&edgeless(5)).unwrap();
        assert_eq!(w, 1);

        // complete DAG on 5 vertices plus 3 isolated vertices
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        let g = InfoDag::new(8, &edges).unwrap();
        let (w, cert) = clique_number(&g).unwrap();
        assert_eq!(w, 5);
        assert_eq!(cert, alloc::vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn clique_guard_is_enforced() {
        let g = edgeless(65);
        assert!(matches!(clique_number(&g), Err(Error::SizeGuard { .. })));
        assert!(clique_number_with_guard(&g, 65).is_ok());
    }

    #[test]
    fn chromatic_number_on_stock_graphs() {
        assert_eq!(chromatic_number(&complete(5)).unwrap().0, 5);
        assert_eq!(chromatic_number(&edgeless(7)).unwrap().0, 1);

        // odd cycle needs three colors
        let c5 = InfoDag::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let (chi, coloring) = chromatic_number(&c5).unwrap();
        assert_eq!(chi, 3);
        assert!(coloring.is_proper(&c5));

        // Petersen graph: omega 2, chi 3
        let outer = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
        let spokes = [(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)];
        let inner = [(5, 7), (7, 9), (6, 9), (6, 8), (5, 8)];
        let mut edges = Vec::new();
        edges.extend(outer);
        edges.extend(spokes);
        edges.extend(inner);
        let petersen = InfoDag::new(10, &edges).unwrap();
        assert_eq!(clique_number(&petersen).unwrap().0, 2);
        let (chi, coloring) = chromatic_number(&petersen).unwrap();
        assert_eq!(chi, 3);
        assert!(coloring.is_proper(&petersen));
    }

    #[test]
    fn complete_minus_one_edge_drops_both_numbers_to_n_minus_1() {
        for n in [4u32, 6, 10] {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if (u, v) != (0, 1) {
                        edges.push((u, v));
                    }
                }
            }
            let g = InfoDag::new(n, &edges).unwrap();
            assert_eq!(clique_number(&g).unwrap().0, n - 1);
            let (chi, coloring) = chromatic_number(&g).unwrap();
            assert_eq!(chi, n - 1);
            assert!(coloring.is_proper(&g));
        }
    }

    #[test]
    fn greedy_topological_coloring_on_stock_graphs() {
        let gc = greedy_topological_coloring(&complete(4));
        assert_eq!(gc.coloring.colors(), &[1, 2, 3, 4]);
        assert_eq!(gc.max_color, 4);

        let gc = greedy_topological_coloring(&edgeless(5));
        assert_eq!(gc.coloring.colors(), &[1, 1, 1, 1, 1]);
        assert_eq!(gc.max_color, 1);
        assert!(gc.coloring.is_proper(&edgeless(5)));
    }

    #[test]
    fn greedy_coloring_is_proper_and_sandwiched() {
        // deterministic pseudo-random graphs via a fixed seed
        for seed in 0..20u64 {
            let g = crate::gen::gen_er_dag(12, 0.4, crate::rng::Seed(seed)).unwrap();
            let (omega, _) = clique_number(&g).unwrap();
            let (chi, opt) = chromatic_number(&g).unwrap();
            let gc = greedy_topological_coloring(&g);
            assert!(gc.coloring.is_proper(&g));
            assert!(opt.is_proper(&g));
            assert!(omega <= chi);
            assert!(chi <= gc.max_color);
            assert!(gc.max_color <= g.n());
        }
    }

    #[test]
    fn exact_solvers_match_exhaustive_search_on_tiny_graphs() {
        for seed in 0..30u64 {
            let g = crate::gen::gen_er_dag(6, 0.5, crate::rng::Seed(1000 + seed)).unwrap();
            let n = g.n();
            // exhaustive clique
            let mut best = 0u32;
            for mask in 0u32..(1 << n) {
                let vs: Vec<u32> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
                let is_clique = vs
                    .iter()
                    .enumerate()
                    .all(|(i, &u)| vs[..i].iter().all(|&w| g.adjacent(u, w)));
                if is_clique {
                    best = best.max(vs.len() as u32);
                }
            }
            assert_eq!(clique_number(&g).unwrap().0, best);
            // exhaustive chromatic: smallest k admitting a proper assignment
            let chi = chromatic_number(&g).unwrap().0;
            let mut brute = n;
            'k: for k in 1..=n {
                let mut assign = alloc::vec![0u32; n as usize];
                loop {
                    let proper = g
                        .edges()
                        .iter()
                        .all(|&(u, v)| assign[u as usize] != assign[v as usize]);
                    if proper {
                        brute = k;
                        break 'k;
                    }
                    let mut i = 0;
                    loop {
                        if i == n as usize {
                            break;
                        }
                        assign[i] += 1;
                        if assign[i] < k {
                            break;
                        }
                        assign[i] = 0;
                        i += 1;
                    }
                    if i == n as usize {
                        break;
                    }
                }
            }
            assert_eq!(chi, brute);
        }
    }

    #[test]
    fn certificates_fail_on_wrong_witnesses() {
        let g = complete(4);
        assert!(!BoundCertificate::Clique(alloc::vec![0, 0]).verifies(&g));
        assert!(!BoundCertificate::Clique(alloc::vec![0, 9]).verifies(&g));
        let e = edgeless(2);
        assert!(!BoundCertificate::Clique(alloc::vec![0, 1]).verifies(&e));
        let bad = Coloring::new(alloc::vec![1, 1, 2, 2]).unwrap();
        assert!(!BoundCertificate::OptimalColoring(bad).verifies(&g));
    }
}
