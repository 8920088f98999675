//! Plain-text file formats: graphs, disk sets, key=value configs, and the
//! CSV shapes for traces and bound reports.
//!
//! Floats are written with Rust's shortest-roundtrip formatting, so equal
//! values always serialize to equal bytes and re-runs diff clean.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use submax::bounds::BoundReport;
use submax::graph::InfoDag;
use submax::greedy::Solution;
use submax::objectives::Disk;
use submax::submodular::GroundSet;

/// Graph text: first payload line is the vertex count, every further line
/// one "u v" edge, 0-indexed. '#' starts a comment, blank lines are
/// skipped.
pub fn parse_graph(text: &str) -> Result<InfoDag> {
    let mut n: Option<u32> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        match n {
            None => {
                let count: u32 = fields
                    .next()
                    .expect("non-empty line has a first field")
                    .parse()
                    .with_context(|| format!("line {}: bad vertex count", lineno + 1))?;
                if fields.next().is_some() {
                    bail!("line {}: expected the vertex count alone", lineno + 1);
                }
                n = Some(count);
            }
            Some(_) => {
                let u: u32 = fields
                    .next()
                    .expect("non-empty line has a first field")
                    .parse()
                    .with_context(|| format!("line {}: bad edge endpoint", lineno + 1))?;
                let v: u32 = fields
                    .next()
                    .with_context(|| format!("line {}: edge needs two endpoints", lineno + 1))?
                    .parse()
                    .with_context(|| format!("line {}: bad edge endpoint", lineno + 1))?;
                if fields.next().is_some() {
                    bail!("line {}: expected exactly two endpoints", lineno + 1);
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.context("graph file has no vertex count line")?;
    Ok(InfoDag::new(n, &edges)?)
}

pub fn read_graph(path: &Path) -> Result<InfoDag> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading graph file {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing graph file {}", path.display()))
}

/// Serializes a graph with edges sorted by the positions of their
/// endpoints in the stored topological order. Parsing the output rebuilds
/// the same vertex and edge sets (the stored order itself is recomputed).
pub fn write_graph(graph: &InfoDag) -> String {
    let mut edges: Vec<(u32, u32)> = graph.edges().to_vec();
    edges.sort_unstable_by_key(|&(u, v)| (graph.position(u), graph.position(v)));
    let mut out = String::new();
    let _ = writeln!(out, "{}", graph.n());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_graph_file(path: &Path, graph: &InfoDag) -> Result<()> {
    std::fs::write(path, write_graph(graph))
        .with_context(|| format!("writing graph file {}", path.display()))
}

/// Disk text: first payload line "n k" (agents, disks per agent), then n*k
/// lines "cx cy r", agent-major. Comments and blank lines as in graph
/// files.
pub fn parse_disks(text: &str) -> Result<Vec<Vec<Disk>>> {
    let mut header: Option<(u32, u32)> = None;
    let mut disks: Vec<Disk> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 2 {
                    bail!("line {}: expected \"n k\" header", lineno + 1);
                }
                let n: u32 = fields[0]
                    .parse()
                    .with_context(|| format!("line {}: bad agent count", lineno + 1))?;
                let k: u32 = fields[1]
                    .parse()
                    .with_context(|| format!("line {}: bad disk count", lineno + 1))?;
                header = Some((n, k));
            }
            Some(_) => {
                if fields.len() != 3 {
                    bail!("line {}: expected \"cx cy r\"", lineno + 1);
                }
                let nums: Vec<f64> = fields
                    .iter()
                    .map(|f| {
                        f.parse::<f64>()
                            .with_context(|| format!("line {}: bad number", lineno + 1))
                    })
                    .collect::<Result<_>>()?;
                disks.push(Disk {
                    cx: nums[0],
                    cy: nums[1],
                    r: nums[2],
                });
            }
        }
    }
    let (n, k) = header.context("disk file has no \"n k\" header")?;
    let expected = n as usize * k as usize;
    if disks.len() != expected {
        bail!(
            "disk file promises {n} agents x {k} disks = {expected} lines, found {}",
            disks.len()
        );
    }
    Ok(disks.chunks(k as usize).map(<[Disk]>::to_vec).collect())
}

pub fn read_disks(path: &Path) -> Result<Vec<Vec<Disk>>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading disk file {}", path.display()))?;
    parse_disks(&text).with_context(|| format!("parsing disk file {}", path.display()))
}

pub fn write_disks(disk_sets: &[Vec<Disk>]) -> String {
    let k = disk_sets.first().map_or(0, Vec::len);
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", disk_sets.len(), k);
    for set in disk_sets {
        for d in set {
            let _ = writeln!(out, "{} {} {}", d.cx, d.cy, d.r);
        }
    }
    out
}

/// Config text: one "key=value" per line, '#' comments, blank lines
/// skipped, later keys override earlier ones.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {}: expected key=value", lineno + 1);
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Trace CSV: one row per decision in run order.
pub fn trace_csv(solution: &Solution, ground: &GroundSet) -> String {
    let mut out = String::from("agent,chosen,local_marginal,global_marginal,argmax_size\n");
    for step in &solution.trace {
        let label = ground
            .label(step.chosen)
            .expect("trace elements are in the ground set");
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            step.agent,
            label,
            step.local_marginal,
            step.global_marginal,
            step.argmax.len()
        );
    }
    out
}

/// One-row bound report CSV. lower_special is empty when no special
/// topology applies.
pub fn bounds_csv(report: &BoundReport) -> String {
    let special = report
        .lower_special
        .as_ref()
        .map_or(String::new(), |(_, v)| v.to_string());
    format!(
        "n,edges,omega,chi,greedy_colors,lower_clique,lower_special,upper_chi,upper_greedy\n\
         {},{},{},{},{},{},{},{},{}\n",
        report.n,
        report.edge_count,
        report.omega,
        report.chi,
        report.greedy_colors,
        report.lower_clique,
        special,
        report.upper_chi,
        report.upper_greedy
    )
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use submax::gen::{gen_bipartite_gap, gen_er_dag};
    use submax::rng::Seed;

    #[test]
    fn graph_round_trip_preserves_structure() {
        let g = gen_er_dag(12, 0.4, Seed(5)).unwrap();
        let text = write_graph(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back.n(), g.n());
        let mut a: Vec<_> = g.edges().to_vec();
        let mut b: Vec<_> = back.edges().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn writer_emits_edges_in_topological_position_order() {
        let g = gen_bipartite_gap(3).unwrap();
        let text = write_graph(&g);
        let mut last = (0u32, 0u32);
        for line in text.lines().skip(1) {
            let mut it = line.split_whitespace();
            let u: u32 = it.next().unwrap().parse().unwrap();
            let v: u32 = it.next().unwrap().parse().unwrap();
            let key = (g.position(u), g.position(v));
            assert!(key >= last, "edge ({u},{v}) out of order");
            last = key;
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# a triangle\n3\n\n0 1  # first\n0 2\n1 2\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().len(), 3);
    }

    #[test]
    fn malformed_graphs_are_rejected() {
        assert!(parse_graph("").is_err());
        assert!(parse_graph("3\n0\n").is_err());
        assert!(parse_graph("3\n0 1 2\n").is_err());
        assert!(parse_graph("two\n").is_err());
        // cycles are caught by graph validation
        assert!(parse_graph("2\n0 1\n1 0\n").is_err());
    }

    #[test]
    fn disk_round_trip() {
        let sets = vec![
            vec![
                Disk { cx: 0.25, cy: 0.5, r: 0.07 },
                Disk { cx: 0.75, cy: 0.5, r: 0.1 },
            ],
            vec![
                Disk { cx: 0.1, cy: 0.9, r: 0.07 },
                Disk { cx: 0.5, cy: 0.5, r: 0.3 },
            ],
        ];
        let text = write_disks(&sets);
        assert!(text.starts_with("2 2\n"));
        let back = parse_disks(&text).unwrap();
        assert_eq!(back, sets);
    }

    #[test]
    fn disk_count_mismatch_is_rejected() {
        assert!(parse_disks("2 2\n0.5 0.5 0.1\n").is_err());
        assert!(parse_disks("1 1\n0.5 0.5\n").is_err());
        assert!(parse_disks("").is_err());
    }

    #[test]
    fn config_parsing_trims_and_overrides() {
        let map = parse_config("# run\n a = 1 \nb=two\na=3\n").unwrap();
        assert_eq!(map.get("a").map(String::as_str), Some("3"));
        assert_eq!(map.get("b").map(String::as_str), Some("two"));
        assert!(parse_config("just a line\n").is_err());
    }
}
