//! Cross-module invariants: the cheap coloring bound against realized
//! worst-case runs, adversarial instances against the chromatic bound,
//! convergence structure of the synchronous engine, and the linear-work
//! contract of the greedy coloring.

use submax::bounds::{upper_bound_greedy, upper_bound_chromatic};
use submax::gen::{gen_ba_dag, gen_er_dag, gen_ws_dag};
use submax::graph::{chromatic_number, greedy_topological_coloring, InfoDag};
use submax::greedy::{run_sequential, run_synchronous, TieBreak};
use submax::objectives::{adversarial_a, adversarial_b, make_adversarial, make_universal};
use submax::rng::Seed;
use submax::submodular::Assignment;

fn test_graphs() -> Vec<InfoDag> {
    let mut graphs = Vec::new();
    for seed in 0..12u64 {
        let n = 4 + (seed % 9) as u32;
        graphs.push(gen_er_dag(n, 0.15 + 0.07 * seed as f64, Seed(100 + seed)).unwrap());
    }
    for seed in 0..6u64 {
        graphs.push(gen_ba_dag(7 + seed as u32, Seed(200 + seed)).unwrap());
    }
    for seed in 0..6u64 {
        let n = 9 + 2 * seed as u32;
        graphs.push(gen_ws_dag(n, 2 + (seed % 2) as u32, 0.3, Seed(300 + seed)).unwrap());
    }
    graphs
}

/// The linear-time coloring bound is not just an upper bound: the
/// distinct-count objective with m = n realizes it exactly under
/// lowest-index tie-breaking, because picking the smallest element unseen
/// among in-neighbors is the greedy coloring rule itself.
#[test]
fn cheap_upper_bound_equals_the_universal_worst_case_ratio() {
    for (i, g) in test_graphs().iter().enumerate() {
        let n = g.n();
        let inst = make_universal(n, n).unwrap();
        let sol = run_sequential(&inst, g, &TieBreak::LowestIndex).unwrap();
        // optimum is n: all elements distinct
        let realized = sol.value / n as f64;
        assert_eq!(realized, upper_bound_greedy(g), "graph {i}");
        // and the chosen elements are literally the greedy coloring
        let coloring = greedy_topological_coloring(g).coloring;
        for v in 0..n {
            assert_eq!(
                sol.assignment.choices()[v as usize].0 + 1,
                coloring.colors()[v as usize],
                "graph {i}, vertex {v}"
            );
        }
    }
}

/// The coloring-adversarial objective holds greedy to exactly chi/n when
/// ties break toward a-elements, while the all-b assignment scores n.
#[test]
fn adversarial_objective_realizes_the_chromatic_ratio() {
    for (i, g) in test_graphs().iter().enumerate() {
        let n = g.n();
        let (chi, coloring) = chromatic_number(g).unwrap();
        let inst = make_adversarial(g, &coloring).unwrap();
        let prefer_a = TieBreak::prefer((0..n).map(adversarial_a).collect());
        let sol = run_sequential(&inst, g, &prefer_a).unwrap();
        assert_eq!(sol.value, chi as f64, "graph {i}");
        let all_b = Assignment::new((0..n).map(adversarial_b).collect());
        assert_eq!(inst.value_of(&all_b).unwrap(), n as f64, "graph {i}");
        assert_eq!(
            sol.value / n as f64,
            upper_bound_chromatic(g).unwrap(),
            "graph {i}"
        );
    }
}

/// Every agent's choice is final once the round index reaches its depth
/// (longest chain of in-neighbors back to a source), which is why n rounds
/// always reproduce the sequential run.
#[test]
fn synchronous_choices_freeze_at_their_depth() {
    for (i, g) in test_graphs().iter().enumerate() {
        let n = g.n();
        let inst = make_universal(n, n + 1).unwrap();
        let states = run_synchronous(&inst, g, n, &TieBreak::LowestIndex).unwrap();
        let mut depth = vec![0u32; n as usize];
        for &v in g.topo_order() {
            depth[v as usize] = g
                .in_neighbors(v)
                .iter()
                .map(|&u| depth[u as usize] + 1)
                .max()
                .unwrap_or(0);
        }
        let last = states.last().unwrap();
        for v in 0..n as usize {
            for t in depth[v] as usize..states.len() {
                assert_eq!(
                    states[t].assignment.choices()[v],
                    last.assignment.choices()[v],
                    "graph {i}, vertex {v}, round {t}"
                );
            }
        }
    }
}

/// Work counter of the greedy coloring stays within its linear budget on
/// graphs six orders denser than the unit-test fixtures.
#[test]
fn greedy_coloring_work_is_linear_in_the_graph_size() {
    let cases = [
        gen_ws_dag(2_000, 25, 0.0, Seed(1)).unwrap(),
        gen_ws_dag(4_000, 25, 0.0, Seed(1)).unwrap(),
        gen_er_dag(500, 0.8, Seed(2)).unwrap(),
    ];
    let mut per_unit = Vec::new();
    for g in &cases {
        let size = g.n() as u64 + g.edges().len() as u64;
        let result = greedy_topological_coloring(g);
        assert!(result.coloring.is_proper(g));
        assert!(
            result.ops <= 4 * size,
            "ops {} exceeds linear budget for size {size}",
            result.ops
        );
        per_unit.push(result.ops as f64 / size as f64);
    }
    // doubling the lattice leaves the per-unit cost flat
    assert!((per_unit[0] - per_unit[1]).abs() < 0.1);
}
