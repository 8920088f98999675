//! Random and structured DAG generators.
//!
//! Random families follow the usual recipe: draw an undirected graph, then
//! draw a uniform vertex permutation and orient every edge from the earlier
//! endpoint to the later one. The permutation is stored as the DAG's
//! topological order, so acyclicity holds by construction.
//!
//! Draw orders are part of each generator's contract and are spelled out on
//! the functions; together with the fixed-stream generator in [`crate::rng`]
//! this makes every graph a pure function of (parameters, seed).

use alloc::vec::Vec;

use crate::bounds::CliquePartition;
use crate::error::{invalid_input, Result};
use crate::graph::InfoDag;
use crate::rng::{below, permutation, rng, unit, weighted, Seed};

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(invalid_input(alloc::format!(
            "{name} must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

/// Orients `und` (normalized u < v pairs, in draw order) by a fresh uniform
/// permutation from `r`, producing the edge list and the matching
/// topological order.
fn orient(n: u32, und: &[(u32, u32)], r: &mut rand_chacha::ChaCha8Rng) -> Result<InfoDag> {
    let order = permutation(r, n);
    let mut pos = alloc::vec![0u32; n as usize];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i as u32;
    }
    let edges: Vec<(u32, u32)> = und
        .iter()
        .map(|&(a, b)| {
            if pos[a as usize] < pos[b as usize] {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    InfoDag::with_topo_order(n, &edges, order)
}

/// Erdős–Rényi G(n, p), acyclically oriented.
///
/// Draw order: one uniform unit per unordered pair, u-major ((0,1), (0,2),
/// …, (1,2), …), then the orientation permutation.
pub fn gen_er_dag(n: u32, p: f64, seed: Seed) -> Result<InfoDag> {
    if n == 0 {
        return Err(invalid_input("graph needs at least one vertex"));
    }
    check_probability("edge probability", p)?;
    let mut r = rng(seed, 0);
    let mut und = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if unit(&mut r) < p {
                und.push((u, v));
            }
        }
    }
    orient(n, &und, &mut r)
}

/// Barabási–Albert preferential attachment with a complete 5-vertex seed
/// and 5 attachments per new vertex, acyclically oriented.
///
/// Draw order: for each new vertex in turn, 5 degree-weighted picks without
/// replacement (a picked target's weight drops to zero until the vertex is
/// done); degrees update only after the vertex's 5 edges land. The
/// orientation permutation is drawn last.
pub fn gen_ba_dag(n: u32, seed: Seed) -> Result<InfoDag> {
    const M: usize = 5;
    if (n as usize) < M {
        return Err(invalid_input(alloc::format!(
            "preferential attachment needs at least {M} vertices, got {n}"
        )));
    }
    let mut r = rng(seed, 0);
    let mut und: Vec<(u32, u32)> = Vec::new();
    let mut degree = alloc::vec![0u64; n as usize];
    for u in 0..M as u32 {
        for v in u + 1..M as u32 {
            und.push((u, v));
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
    }
    for v in M as u32..n {
        let mut weights: Vec<u64> = degree[..v as usize].to_vec();
        let mut picks = [0u32; M];
        for slot in &mut picks {
            let t = weighted(&mut r, &weights);
            *slot = t as u32;
            weights[t] = 0;
        }
        picks.sort_unstable();
        for &t in &picks {
            und.push((t, v));
            degree[t as usize] += 1;
            degree[v as usize] += 1;
        }
    }
    orient(n, &und, &mut r)
}

/// Watts–Strogatz small world on a ring lattice, acyclically oriented.
/// Each vertex starts adjacent to its k nearest neighbors per side
/// (requires 2k <= n-1), then every lattice edge {i, i+d} is rewired with
/// probability beta to {i, t} for a uniform non-neighbor t.
///
/// Draw order: edges are visited distance-major ({i, i+1} for all i, then
/// {i, i+2}, …); each visit draws one uniform unit, and a rewire that has
/// candidates draws one index into the ascending candidate list. When no
/// candidate exists (i is adjacent to everyone) the edge stays, so a
/// complete lattice stays complete. The orientation permutation is drawn
/// last.
pub fn gen_ws_dag(n: u32, k: u32, beta: f64, seed: Seed) -> Result<InfoDag> {
    if n == 0 {
        return Err(invalid_input("graph needs at least one vertex"));
    }
    if k == 0 || 2 * k > n - 1 {
        return Err(invalid_input(alloc::format!(
            "ring lattice needs 1 <= k and 2k <= n-1, got n={n}, k={k}"
        )));
    }
    check_probability("rewiring probability", beta)?;
    let mut r = rng(seed, 0);
    let mut adj: Vec<alloc::collections::BTreeSet<u32>> =
        alloc::vec![alloc::collections::BTreeSet::new(); n as usize];
    for d in 1..=k {
        for i in 0..n {
            let j = (i + d) % n;
            adj[i as usize].insert(j);
            adj[j as usize].insert(i);
        }
    }
    for d in 1..=k {
        for i in 0..n {
            let j = (i + d) % n;
            if !(unit(&mut r) < beta) {
                continue;
            }
            if !adj[i as usize].contains(&j) {
                // this lattice slot was already replaced by an earlier rewire
                continue;
            }
            let candidates: Vec<u32> = (0..n)
                .filter(|&t| t != i && !adj[i as usize].contains(&t))
                .collect();
            if candidates.is_empty() {
                continue;
            }
            let t = candidates[below(&mut r, candidates.len() as u64) as usize];
            adj[i as usize].remove(&j);
            adj[j as usize].remove(&i);
            adj[i as usize].insert(t);
            adj[t as usize].insert(i);
        }
    }
    let mut und = Vec::new();
    for i in 0..n {
        for &j in adj[i as usize].range(i + 1..) {
            und.push((i, j));
        }
    }
    orient(n, &und, &mut r)
}

/// Complete DAG on n vertices in natural orientation (u -> v for u < v).
pub fn gen_complete_dag(n: u32) -> Result<InfoDag> {
    if n == 0 {
        return Err(invalid_input("graph needs at least one vertex"));
    }
    let mut edges = Vec::with_capacity((n as usize * (n as usize - 1)) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    InfoDag::new(n, &edges)
}

/// Edgeless graph on n vertices.
pub fn gen_empty(n: u32) -> Result<InfoDag> {
    if n == 0 {
        return Err(invalid_input("graph needs at least one vertex"));
    }
    InfoDag::new(n, &[])
}

/// Chain of complete blocks: block vertices are numbered consecutively,
/// each block is internally complete in natural orientation, and the last
/// vertex of each block broadcasts to every vertex of the next block.
///
/// sizes (2, 2) gives vertices {0,1 | 2,3} and edges (0,1), (1,2), (1,3),
/// (2,3).
pub fn gen_interconnected_cliques(sizes: &[u32]) -> Result<(InfoDag, CliquePartition)> {
    let partition = CliquePartition::new(sizes.to_vec())?;
    let mut edges = Vec::new();
    let mut start = 0u32;
    for (b, &size) in sizes.iter().enumerate() {
        for u in start..start + size {
            for v in u + 1..start + size {
                edges.push((u, v));
            }
        }
        if b + 1 < sizes.len() {
            let broadcaster = start + size - 1;
            let next = sizes[b + 1];
            for w in start + size..start + size + next {
                edges.push((broadcaster, w));
            }
        }
        start += size;
    }
    let graph = InfoDag::new(partition.n(), &edges)?;
    Ok((graph, partition))
}

/// The bipartite family whose greedy coloring wastes colors: vertices come
/// in pairs (u_i = 2i, w_i = 2i+1 for i in 0..m), u_i points at every later
/// w_j and w_i at every later u_j, and the final pair is joined directly.
/// The stored topological order is u_0, w_0, u_1, w_1, …, which forces a
/// greedy coloring to spend m+1 colors on this 2-chromatic graph.
pub fn gen_bipartite_gap(m: u32) -> Result<InfoDag> {
    if m == 0 {
        return Err(invalid_input("gap family needs at least one pair"));
    }
    let n = 2 * m;
    let mut edges = Vec::with_capacity((m as usize) * (m as usize - 1) + 1);
    for i in 0..m {
        for j in i + 1..m {
            edges.push((2 * i, 2 * j + 1));
            edges.push((2 * i + 1, 2 * j));
        }
    }
    edges.push((2 * m - 2, 2 * m - 1));
    InfoDag::with_topo_order(n, &edges, (0..n).collect())
}
