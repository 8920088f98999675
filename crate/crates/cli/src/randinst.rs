//! Random test instances: integer weighted-cover objectives over disjoint
//! or shared strategy sets, and random disk layouts. Integer weights keep
//! every oracle value exactly representable, so verification suites can
//! compare without epsilons.

use std::sync::Arc;

use anyhow::{ensure, Result};
use submax::objectives::Disk;
use submax::rng::{below, rng, unit, ChaCha8Rng, Seed};
use submax::submodular::{ElementId, GroundSet, Instance, SubmodularOracle};

/// Shape of a random weighted-cover instance with per-agent elements.
#[derive(Debug, Clone, Copy)]
pub struct CoverShape {
    pub n_agents: u32,
    /// Per-agent element counts are drawn from 1..=max_set_size.
    pub max_set_size: u32,
    /// Universe of coverable items; at most 64.
    pub n_items: u32,
    /// Item weights are drawn from 0..=max_weight.
    pub max_weight: u32,
}

fn cover_oracle(
    labels: Vec<String>,
    masks: Vec<u64>,
    weights: Vec<u32>,
) -> Result<SubmodularOracle> {
    let oracle = SubmodularOracle::exact(GroundSet::new(labels)?, move |set: &[ElementId]| {
        let union = set.iter().fold(0u64, |acc, e| acc | masks[e.index()]);
        weights
            .iter()
            .enumerate()
            .filter(|(i, _)| union & (1 << i) != 0)
            .map(|(_, &w)| w as u64)
            .sum::<u64>() as f64
    });
    Ok(oracle)
}

/// Disjoint instance: each agent owns its own elements, each element covers
/// a random half-density subset of the items.
///
/// Draw order: one size per agent, then per element its item mask bit by
/// bit, then one weight per item.
pub fn random_cover_instance(shape: &CoverShape, seed: Seed) -> Result<Instance> {
    ensure!(shape.n_agents > 0, "instance needs at least one agent");
    ensure!(shape.max_set_size > 0, "agents need at least one element");
    ensure!(
        (1..=64).contains(&shape.n_items),
        "item universe must have 1..=64 items"
    );
    let mut r = rng(seed, 0);
    let sizes: Vec<u32> = (0..shape.n_agents)
        .map(|_| below(&mut r, shape.max_set_size as u64) as u32 + 1)
        .collect();
    let total: u32 = sizes.iter().sum();
    let mut labels = Vec::with_capacity(total as usize);
    for (agent, &size) in sizes.iter().enumerate() {
        for k in 0..size {
            labels.push(format!("a{agent}_e{k}"));
        }
    }
    let masks: Vec<u64> = (0..total).map(|_| random_mask(&mut r, shape.n_items)).collect();
    let weights: Vec<u32> = (0..shape.n_items)
        .map(|_| below(&mut r, shape.max_weight as u64 + 1) as u32)
        .collect();
    let oracle = Arc::new(cover_oracle(labels, masks, weights)?);
    let mut sets = Vec::with_capacity(sizes.len());
    let mut next = 0u32;
    for &size in &sizes {
        sets.push((next..next + size).map(ElementId).collect::<Vec<_>>());
        next += size;
    }
    Ok(Instance::new(oracle, sets, true)?)
}

/// Intersecting instance: one shared pool of covering elements, each agent
/// holding a random subset of it, so the same element can appear in many
/// strategy sets.
///
/// Draw order: per pool element its mask, then one weight per item, then
/// per agent a partial shuffle selecting its subset.
pub fn random_intersecting_instance(
    n_agents: u32,
    pool_size: u32,
    set_size: u32,
    n_items: u32,
    max_weight: u32,
    seed: Seed,
) -> Result<Instance> {
    ensure!(n_agents > 0, "instance needs at least one agent");
    ensure!(
        (1..=pool_size).contains(&set_size),
        "agent sets must fit the pool (pool {pool_size}, set {set_size})"
    );
    ensure!(
        (1..=64).contains(&n_items),
        "item universe must have 1..=64 items"
    );
    let mut r = rng(seed, 0);
    let labels: Vec<String> = (0..pool_size).map(|i| format!("s{i}")).collect();
    let masks: Vec<u64> = (0..pool_size).map(|_| random_mask(&mut r, n_items)).collect();
    let weights: Vec<u32> = (0..n_items)
        .map(|_| below(&mut r, max_weight as u64 + 1) as u32)
        .collect();
    let mut sets = Vec::with_capacity(n_agents as usize);
    for _ in 0..n_agents {
        // partial Fisher-Yates: first set_size slots become the sample
        let mut pool: Vec<u32> = (0..pool_size).collect();
        for i in 0..set_size as usize {
            let j = i + below(&mut r, (pool_size as usize - i) as u64) as usize;
            pool.swap(i, j);
        }
        let mut chosen: Vec<ElementId> =
            pool[..set_size as usize].iter().map(|&i| ElementId(i)).collect();
        chosen.sort_unstable();
        sets.push(chosen);
    }
    let oracle = Arc::new(cover_oracle(labels, masks, weights)?);
    Ok(Instance::new(oracle, sets, false)?)
}

fn random_mask(r: &mut ChaCha8Rng, n_items: u32) -> u64 {
    let mut mask = 0u64;
    for bit in 0..n_items {
        if below(r, 2) == 1 {
            mask |= 1 << bit;
        }
    }
    mask
}

/// Uniform disk centers in the unit square at a fixed radius, agent-major
/// (cx then cy per disk).
pub fn random_disks(n_agents: u32, per_agent: u32, radius: f64, seed: Seed) -> Vec<Vec<Disk>> {
    let mut r = rng(seed, 0);
    (0..n_agents)
        .map(|_| {
            (0..per_agent)
                .map(|_| {
                    let cx = unit(&mut r);
                    let cy = unit(&mut r);
                    Disk { cx, cy, r: radius }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use submax::submodular::{check_monotone, check_normalized, check_submodular};

    #[test]
    fn disjoint_instances_are_reproducible_and_lawful() {
        let shape = CoverShape {
            n_agents: 4,
            max_set_size: 3,
            n_items: 10,
            max_weight: 9,
        };
        let a = random_cover_instance(&shape, Seed(7)).unwrap();
        let b = random_cover_instance(&shape, Seed(7)).unwrap();
        assert_eq!(a.oracle().ground().len(), b.oracle().ground().len());
        assert!(a.is_disjoint());
        assert_eq!(check_submodular(a.oracle()).unwrap(), None);
        assert_eq!(check_monotone(a.oracle()).unwrap(), None);
        assert!(check_normalized(a.oracle()));
        let full: Vec<ElementId> = a.oracle().ground().ids().collect();
        assert_eq!(
            a.oracle().evaluate(&full).unwrap(),
            b.oracle().evaluate(&full).unwrap()
        );
    }

    #[test]
    fn intersecting_instances_share_pool_elements() {
        let inst = random_intersecting_instance(5, 6, 3, 12, 9, Seed(3)).unwrap();
        assert!(!inst.is_disjoint());
        assert_eq!(inst.n_agents(), 5);
        for set in inst.strategy_sets() {
            assert_eq!(set.len(), 3);
        }
        // 5 agents x 3 picks from a pool of 6 must collide somewhere
        let mut seen = vec![0u32; 6];
        for set in inst.strategy_sets() {
            for e in set {
                seen[e.index()] += 1;
            }
        }
        assert!(seen.iter().any(|&c| c > 1));
    }

    #[test]
    fn disk_layouts_are_deterministic_and_in_range() {
        let a = random_disks(3, 2, 0.07, Seed(11));
        let b = random_disks(3, 2, 0.07, Seed(11));
        assert_eq!(a, b);
        for set in &a {
            for d in set {
                assert!((0.0..1.0).contains(&d.cx));
                assert!((0.0..1.0).contains(&d.cy));
                assert_eq!(d.r, 0.07);
            }
        }
        assert_ne!(random_disks(3, 2, 0.07, Seed(12)), a);
    }

    #[test]
    fn bad_shapes_are_rejected() {
        let shape = CoverShape {
            n_agents: 0,
            max_set_size: 1,
            n_items: 4,
            max_weight: 1,
        };
        assert!(random_cover_instance(&shape, Seed(0)).is_err());
        assert!(random_intersecting_instance(2, 3, 4, 8, 5, Seed(0)).is_err());
        assert!(random_intersecting_instance(2, 3, 2, 65, 5, Seed(0)).is_err());
    }
}
