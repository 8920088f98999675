//! The stock objectives: grid disk coverage, the coloring-adversarial
//! function, the universal (distinct-count) function, and the reduction from
//! intersecting to disjoint strategy sets.
//!
//! All three shipped objectives count integers internally (covered grid
//! points, chosen b-elements plus represented colors, distinct elements), so
//! their oracles compare exactly and no bound check inherits float noise.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{invalid_input, Result};
use crate::graph::{Coloring, InfoDag};
use crate::submodular::{ElementId, GroundSet, Instance, SubmodularOracle};

/// Closed disk in unit-square coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

impl Disk {
    /// Boundary inclusive: distance exactly r counts as covered.
    pub fn covers(&self, px: f64, py: f64) -> bool {
        let dx = px - self.cx;
        let dy = py - self.cy;
        dx * dx + dy * dy <= self.r * self.r
    }
}

/// g×g evaluation points placed at cell centers of the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverageGrid {
    pub resolution: u32,
}

impl CoverageGrid {
    pub const DEFAULT_RESOLUTION: u32 = 100;

    pub fn new(resolution: u32) -> Result<Self> {
        if resolution == 0 {
            return Err(invalid_input("grid resolution must be at least 1"));
        }
        Ok(CoverageGrid { resolution })
    }

    pub fn point(&self, ix: u32, iy: u32) -> (f64, f64) {
        let g = self.resolution as f64;
        ((ix as f64 + 0.5) / g, (iy as f64 + 0.5) / g)
    }

    pub fn point_count(&self) -> u64 {
        self.resolution as u64 * self.resolution as u64
    }
}

impl Default for CoverageGrid {
    fn default() -> Self {
        CoverageGrid {
            resolution: Self::DEFAULT_RESOLUTION,
        }
    }
}

/// Tolerance for coverage oracles. Values are integer counts divided by
/// g², and the two divisions in a comparison each round independently, so
/// equal counts can land a couple of ulps apart. Distinct counts differ by
/// at least 1/g² >= 1e-8 at the largest accepted resolution, leaving four
/// orders of magnitude between noise and signal.
pub const COVERAGE_TOLERANCE: f64 = 1e-12;

const MAX_GRID_RESOLUTION: u32 = 10_000;

/// Disk-coverage instance: one element per (agent, disk), value = fraction
/// of grid points covered by the union of the chosen disks.
pub fn make_coverage(disk_sets: &[Vec<Disk>], grid: CoverageGrid) -> Result<Instance> {
    if disk_sets.is_empty() {
        return Err(invalid_input("coverage instance needs at least one agent"));
    }
    if grid.resolution > MAX_GRID_RESOLUTION {
        return Err(invalid_input(alloc::format!(
            "grid resolution {} exceeds the maximum of {MAX_GRID_RESOLUTION}",
            grid.resolution
        )));
    }
    let g = grid.resolution;
    let mut labels: Vec<String> = Vec::new();
    let mut masks: Vec<Vec<u64>> = Vec::new();
    let words = (grid.point_count() as usize).div_ceil(64);
    for (i, disks) in disk_sets.iter().enumerate() {
        if disks.is_empty() {
            return Err(invalid_input(format!("agent {i} has no disks")));
        }
        for (k, d) in disks.iter().enumerate() {
            if !(d.r > 0.0) || !d.r.is_finite() || !d.cx.is_finite() || !d.cy.is_finite() {
                return Err(invalid_input(format!(
                    "agent {i} disk {k} has invalid geometry (cx={}, cy={}, r={})",
                    d.cx, d.cy, d.r
                )));
            }
            labels.push(format!("a{i}_d{k}"));
            let mut mask = alloc::vec![0u64; words];
            for iy in 0..g {
                for ix in 0..g {
                    let (px, py) = grid.point(ix, iy);
                    if d.covers(px, py) {
                        let bit = (iy as usize) * g as usize + ix as usize;
                        mask[bit / 64] |= 1 << (bit % 64);
                    }
                }
            }
            masks.push(mask);
        }
    }
    let total = grid.point_count() as f64;
    let value = move |set: &[ElementId]| -> f64 {
        let mut union = alloc::vec![0u64; words];
        for e in set {
            for (acc, w) in union.iter_mut().zip(&masks[e.index()]) {
                *acc |= w;
            }
        }
        let covered: u64 = union.iter().map(|w| w.count_ones() as u64).sum();
        covered as f64 / total
    };
    let oracle = Arc::new(SubmodularOracle::with_tolerance(
        GroundSet::new(labels)?,
        value,
        COVERAGE_TOLERANCE,
    ));
    let mut sets = Vec::with_capacity(disk_sets.len());
    let mut next = 0u32;
    for disks in disk_sets {
        let ids: Vec<ElementId> = (next..next + disks.len() as u32).map(ElementId).collect();
        next += disks.len() as u32;
        sets.push(ids);
    }
    Instance::new(oracle, sets, true)
}

/// The worst-case objective built from a proper coloring: each agent i holds
/// {a_i, b_i}; b-elements are always worth 1, an a-element is worth 1 only
/// as the first chosen a of its color. Stored in closed form
///
///   f(S) = |{i : b_i ∈ S}| + |{ colors among { c(i) : a_i ∈ S } }|
///
/// which the tests confirm is exactly the order-independent telescoping of
/// the marginal definition.
pub fn make_adversarial(graph: &InfoDag, coloring: &Coloring) -> Result<Instance> {
    if coloring.len() != graph.n() as usize {
        return Err(invalid_input(format!(
            "coloring covers {} vertices, graph has {}",
            coloring.len(),
            graph.n()
        )));
    }
    if !coloring.is_proper(graph) {
        return Err(invalid_input(
            "coloring assigns some edge's endpoints the same color",
        ));
    }
    let n = graph.n();
    let mut labels = Vec::with_capacity(2 * n as usize);
    for i in 0..n {
        labels.push(format!("a{i}"));
        labels.push(format!("b{i}"));
    }
    let colors: Vec<u32> = coloring.colors().to_vec();
    let max_color = coloring.color_count() as usize;
    let value = move |set: &[ElementId]| -> f64 {
        let mut b_count = 0u64;
        let mut seen = alloc::vec![false; max_color + 1];
        let mut color_count = 0u64;
        for e in set {
            let idx = e.index();
            if idx % 2 == 1 {
                b_count += 1;
            } else {
                let c = colors[idx / 2] as usize;
                if !seen[c] {
                    seen[c] = true;
                    color_count += 1;
                }
            }
        }
        (b_count + color_count) as f64
    };
    let oracle = Arc::new(SubmodularOracle::exact(GroundSet::new(labels)?, value));
    let sets: Vec<Vec<ElementId>> = (0..n)
        .map(|i| alloc::vec![ElementId(2 * i), ElementId(2 * i + 1)])
        .collect();
    Instance::new(oracle, sets, true)
}

/// Agent i's a-element in an adversarial instance.
pub fn adversarial_a(agent: u32) -> ElementId {
    ElementId(2 * agent)
}

/// Agent i's b-element in an adversarial instance.
pub fn adversarial_b(agent: u32) -> ElementId {
    ElementId(2 * agent + 1)
}

/// Distinct-count objective over ground {e_1,…,e_m} with every agent free to
/// choose any element. Strategy sets are intersecting by design; pair with
/// [`reduce_to_disjoint`] when a disjoint instance is required.
pub fn make_universal(n_agents: u32, m: u32) -> Result<Instance> {
    if n_agents == 0 {
        return Err(invalid_input("universal instance needs at least one agent"));
    }
    if m < n_agents {
        return Err(invalid_input(format!(
            "universal instance needs at least as many elements as agents (m={m}, n={n_agents})"
        )));
    }
    let labels: Vec<String> = (1..=m).map(|j| format!("e{j}")).collect();
    let oracle = Arc::new(SubmodularOracle::exact(
        GroundSet::new(labels)?,
        |set: &[ElementId]| set.len() as f64,
    ));
    let all: Vec<ElementId> = (0..m).map(ElementId).collect();
    let sets = alloc::vec![all; n_agents as usize];
    Instance::new(oracle, sets, false)
}

/// An intersecting instance rewritten over per-agent copies, plus the map
/// back to original elements. The reduced oracle is f' = f ∘ g, so values,
/// marginals, and greedy runs carry over exactly.
#[derive(Debug, Clone)]
pub struct DisjointReduction {
    reduced: Instance,
    back: Vec<ElementId>,
}

impl DisjointReduction {
    pub fn reduced(&self) -> &Instance {
        &self.reduced
    }

    /// Original element behind a reduced element.
    pub fn back_map(&self, reduced: ElementId) -> ElementId {
        self.back[reduced.index()]
    }

    /// g(A): the set of original elements behind a reduced set.
    pub fn map_elements(&self, reduced: &[ElementId]) -> Vec<ElementId> {
        let mut out: Vec<ElementId> = reduced.iter().map(|&e| self.back_map(e)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Splits shared elements into per-agent copies. A disjoint input comes back
/// unchanged with the identity back-map. Copy labels are "label@agent", and
/// each agent's copies keep the original index order, so lowest-index
/// tie-breaking picks corresponding elements on both sides.
pub fn reduce_to_disjoint(instance: &Instance) -> DisjointReduction {
    if instance.is_disjoint() {
        let back = instance.oracle().ground().ids().collect();
        return DisjointReduction {
            reduced: instance.clone(),
            back,
        };
    }
    let original = instance.oracle_arc();
    let mut labels: Vec<String> = Vec::new();
    let mut back: Vec<ElementId> = Vec::new();
    let mut sets: Vec<Vec<ElementId>> = Vec::new();
    for (agent, set) in instance.strategy_sets().iter().enumerate() {
        let mut copies = Vec::with_capacity(set.len());
        for &e in set {
            let label = original
                .ground()
                .label(e)
                .expect("strategy elements are in the ground set");
            labels.push(format!("{label}@{agent}"));
            copies.push(ElementId(back.len() as u32));
            back.push(e);
        }
        sets.push(copies);
    }
    let back_for_oracle = back.clone();
    let inner = Arc::clone(&original);
    let value = move |set: &[ElementId]| -> f64 {
        let mapped: Vec<ElementId> = set.iter().map(|&e| back_for_oracle[e.index()]).collect();
        inner
            .evaluate(&mapped)
            .expect("back-mapped elements are valid for the original oracle")
    };
    let ground = GroundSet::new(labels).expect("copy labels are unique per (label, agent)");
    let oracle = Arc::new(SubmodularOracle::with_tolerance(
        ground,
        value,
        original.tolerance(),
    ));
    let reduced = Instance::new(oracle, sets, true)
        .expect("per-agent copies partition the reduced ground set");
    DisjointReduction { reduced, back }
}
