//! Set-function oracles, marginal rewards, exhaustive property checkers, and
//! the brute-force reference solver.
//!
//! An oracle is a total function from subsets of a fixed ground set to reals.
//! Monotonicity, submodularity, and normalization are *checked*, never
//! assumed: the checkers here are exponential and guarded, and exist so that
//! every claimed bound elsewhere can be validated against honest inputs.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::error::{invalid_input, Error, Result};

/// Absolute tolerance for comparing real-valued oracle outputs.
/// Integer-exact oracles use 0.0 and compare exactly.
pub const REAL_TOLERANCE: f64 = 1e-9;

/// Ground sets larger than this are refused by the exhaustive checkers
/// unless the caller raises the guard.
pub const DEFAULT_CHECK_GUARD: u32 = 14;

/// Assignment spaces larger than this are refused by [`brute_force_opt`]
/// unless the caller raises the guard.
pub const DEFAULT_BRUTE_FORCE_GUARD: u64 = 1_000_000;

/// Index of an element in its [`GroundSet`]. The index order is the
/// tie-breaking order everywhere in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl ElementId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Fixed, ordered universe of elements. Labels are unique; their order is
/// set at construction and defines element indices for good.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        for (i, a) in labels.iter().enumerate() {
            if a.is_empty() {
                return Err(invalid_input("ground set labels must be nonempty"));
            }
            if labels[..i].iter().any(|b| b == a) {
                return Err(invalid_input(alloc::format!(
                    "duplicate ground set label {a:?}"
                )));
            }
        }
        Ok(GroundSet { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, id: ElementId) -> bool {
        id.index() < self.labels.len()
    }

    pub fn label(&self, id: ElementId) -> Option<&str> {
        self.labels.get(id.index()).map(String::as_str)
    }

    pub fn find(&self, label: &str) -> Option<ElementId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| ElementId(i as u32))
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.labels.len() as u32).map(ElementId)
    }
}

/// The value function behind an oracle. `set` arrives sorted and duplicate
/// free; implementations must be pure (same set, same number, any order of
/// queries).
pub trait SetValue: Send + Sync {
    fn value(&self, set: &[ElementId]) -> f64;
}

impl<F> SetValue for F
where
    F: Fn(&[ElementId]) -> f64 + Send + Sync,
{
    fn value(&self, set: &[ElementId]) -> f64 {
        self(set)
    }
}

/// A set-function oracle over a ground set. Immutable after construction;
/// concurrent read-only queries are safe. The query counter is atomic and
/// purely observational.
pub struct SubmodularOracle {
    ground: GroundSet,
    f: Box<dyn SetValue>,
    tol: f64,
    queries: AtomicU64,
}

impl core::fmt::Debug for SubmodularOracle {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SubmodularOracle")
            .field("ground_size", &self.ground.len())
            .field("tol", &self.tol)
            .field("queries", &self.queries())
            .finish()
    }
}

impl SubmodularOracle {
    /// Oracle with real-valued output, compared under [`REAL_TOLERANCE`].
    pub fn new(ground: GroundSet, f: impl SetValue + 'static) -> Self {
        Self::with_tolerance(ground, f, REAL_TOLERANCE)
    }

    /// Oracle whose outputs are exactly representable (integer counts,
    /// integer counts over a fixed denominator): comparisons are exact.
    pub fn exact(ground: GroundSet, f: impl SetValue + 'static) -> Self {
        Self::with_tolerance(ground, f, 0.0)
    }

    pub fn with_tolerance(ground: GroundSet, f: impl SetValue + 'static, tol: f64) -> Self {
        SubmodularOracle {
            ground,
            f: Box::new(f),
            tol,
            queries: AtomicU64::new(0),
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Comparison tolerance: 0.0 means integer-exact.
    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn is_exact(&self) -> bool {
        self.tol == 0.0
    }

    /// Number of value queries served so far.
    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// Sorts, deduplicates, and validates an element list.
    pub fn normalize_set(&self, elements: &[ElementId]) -> Result<Vec<ElementId>> {
        let mut set: Vec<ElementId> = Vec::with_capacity(elements.len());
        for &e in elements {
            if !self.ground.contains(e) {
                return Err(invalid_input(alloc::format!(
                    "element index {} outside ground set of size {}",
                    e.0,
                    self.ground.len()
                )));
            }
            set.push(e);
        }
        set.sort_unstable();
        set.dedup();
        Ok(set)
    }

    fn raw_value(&self, sorted_unique: &[ElementId]) -> f64 {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.f.value(sorted_unique)
    }

    /// f on the deduplicated element set. Accepts any order, any
    /// multiplicity.
    pub fn evaluate(&self, elements: &[ElementId]) -> Result<f64> {
        let set = self.normalize_set(elements)?;
        Ok(self.raw_value(&set))
    }

    /// Marginal reward of `x` against `set`: f(S ∪ {x}) − f(S), and 0 when
    /// x ∈ S.
    pub fn marginal(&self, x: ElementId, set: &[ElementId]) -> Result<f64> {
        if !self.ground.contains(x) {
            return Err(invalid_input(alloc::format!(
                "element index {} outside ground set of size {}",
                x.0,
                self.ground.len()
            )));
        }
        let s = self.normalize_set(set)?;
        if s.binary_search(&x).is_ok() {
            return Ok(0.0);
        }
        let base = self.raw_value(&s);
        let mut with_x = s;
        let at = with_x.binary_search(&x).unwrap_err();
        with_x.insert(at, x);
        Ok(self.raw_value(&with_x) - base)
    }

    /// Sum of marginal rewards along `sequence`; equals `evaluate` of the
    /// unique elements for every ordering. Duplicate occurrences contribute
    /// zero.
    pub fn telescoping_value(&self, sequence: &[ElementId]) -> Result<f64> {
        let mut prefix: Vec<ElementId> = Vec::with_capacity(sequence.len());
        let mut prefix_value = self.raw_value(&[]);
        let mut total = 0.0;
        for &x in sequence {
            if !self.ground.contains(x) {
                return Err(invalid_input(alloc::format!(
                    "element index {} outside ground set of size {}",
                    x.0,
                    self.ground.len()
                )));
            }
            match prefix.binary_search(&x) {
                Ok(_) => {} // already chosen upstream: marginal 0
                Err(at) => {
                    prefix.insert(at, x);
                    let next_value = self.raw_value(&prefix);
                    total += next_value - prefix_value;
                    prefix_value = next_value;
                }
            }
        }
        Ok(total)
    }
}

/// One strategy-selection problem: an oracle plus one nonempty strategy set
/// per agent. `disjoint_flag` records (and enforces) that the strategy sets
/// partition the ground set.
#[derive(Debug, Clone)]
pub struct Instance {
    oracle: Arc<SubmodularOracle>,
    sets: Vec<Vec<ElementId>>,
    disjoint: bool,
}

impl Instance {
    pub fn new(
        oracle: Arc<SubmodularOracle>,
        strategy_sets: Vec<Vec<ElementId>>,
        disjoint_flag: bool,
    ) -> Result<Self> {
        if strategy_sets.is_empty() {
            return Err(invalid_input("an instance needs at least one agent"));
        }
        let mut sets = Vec::with_capacity(strategy_sets.len());
        for (i, raw) in strategy_sets.into_iter().enumerate() {
            if raw.is_empty() {
                return Err(invalid_input(alloc::format!(
                    "strategy set of agent {i} is empty"
                )));
            }
            let mut s = raw;
            for &e in &s {
                if !oracle.ground().contains(e) {
                    return Err(invalid_input(alloc::format!(
                        "agent {i} references element index {} outside ground set",
                        e.0
                    )));
                }
            }
            s.sort_unstable();
            let before = s.len();
            s.dedup();
            if s.len() != before {
                return Err(invalid_input(alloc::format!(
                    "strategy set of agent {i} lists an element twice"
                )));
            }
            sets.push(s);
        }
        if disjoint_flag {
            let mut count = alloc::vec![0u32; oracle.ground().len()];
            for s in &sets {
                for &e in s {
                    count[e.index()] += 1;
                }
            }
            if count.iter().any(|&c| c > 1) {
                return Err(invalid_input(
                    "disjoint_flag set but strategy sets overlap",
                ));
            }
            if count.iter().any(|&c| c == 0) {
                return Err(invalid_input(
                    "disjoint_flag set but strategy sets do not cover the ground set",
                ));
            }
        }
        Ok(Instance {
            oracle,
            sets,
            disjoint: disjoint_flag,
        })
    }

    pub fn oracle(&self) -> &SubmodularOracle {
        &self.oracle
    }

    pub fn oracle_arc(&self) -> Arc<SubmodularOracle> {
        Arc::clone(&self.oracle)
    }

    pub fn n_agents(&self) -> usize {
        self.sets.len()
    }

    pub fn strategy_set(&self, agent: usize) -> &[ElementId] {
        &self.sets[agent]
    }

    pub fn strategy_sets(&self) -> &[Vec<ElementId>] {
        &self.sets
    }

    pub fn is_disjoint(&self) -> bool {
        self.disjoint
    }

    /// f of the deduplicated chosen elements.
    pub fn value_of(&self, assignment: &Assignment) -> Result<f64> {
        assignment.validate(self)?;
        self.oracle.evaluate(assignment.choices())
    }
}

/// One chosen element per agent. Only meaningful against the instance it was
/// built for; `validate` checks membership agent by agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    choices: Vec<ElementId>,
}

impl Assignment {
    pub fn new(choices: Vec<ElementId>) -> Self {
        Assignment { choices }
    }

    pub fn choices(&self) -> &[ElementId] {
        &self.choices
    }

    pub fn choice(&self, agent: usize) -> ElementId {
        self.choices[agent]
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    pub fn validate(&self, instance: &Instance) -> Result<()> {
        if self.choices.len() != instance.n_agents() {
            return Err(invalid_input(alloc::format!(
                "assignment has {} choices for {} agents",
                self.choices.len(),
                instance.n_agents()
            )));
        }
        for (i, &x) in self.choices.iter().enumerate() {
            if instance.sets[i].binary_search(&x).is_err() {
                return Err(invalid_input(alloc::format!(
                    "choice of agent {i} is not in its strategy set"
                )));
            }
        }
        Ok(())
    }
}

/// Witness for a failed property check: the offending pair A ⊆ B, plus the
/// extension element for submodularity violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub a: Vec<ElementId>,
    pub b: Vec<ElementId>,
    pub x: Option<ElementId>,
}

fn mask_set(mask: u64) -> Vec<ElementId> {
    let mut v = Vec::new();
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros();
        v.push(ElementId(i));
        m &= m - 1;
    }
    v
}

/// f tabulated over every subset of the ground set, indexed by bitmask.
fn value_table(oracle: &SubmodularOracle, what: &'static str, guard: u32) -> Result<Vec<f64>> {
    let n = oracle.ground().len() as u32;
    if n > guard {
        return Err(Error::SizeGuard {
            what,
            size: n as u64,
            limit: guard as u64,
        });
    }
    let mut table = Vec::with_capacity(1usize << n);
    for mask in 0..(1u64 << n) {
        table.push(oracle.raw_value(&mask_set(mask)));
    }
    Ok(table)
}

/// Exhaustive diminishing-returns check: Δ(x|A) ≥ Δ(x|B) for all A ⊆ B and
/// x ∉ B. Returns the first violating triple in a fixed canonical scan
/// (B ascending by mask, A descending submask, x ascending), or None if the
/// oracle is submodular.
pub fn check_submodular(oracle: &SubmodularOracle) -> Result<Option<Violation>> {
    check_submodular_with_guard(oracle, DEFAULT_CHECK_GUARD)
}

pub fn check_submodular_with_guard(
    oracle: &SubmodularOracle,
    guard: u32,
) -> Result<Option<Violation>> {
    let table = value_table(oracle, "check_submodular ground size", guard)?;
    let n = oracle.ground().len() as u32;
    let tol = oracle.tolerance();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for b in 0..(1u64 << n) {
        let mut a = b;
        loop {
            if a != b {
                let mut rest = full & !b;
                while rest != 0 {
                    let xb = rest & rest.wrapping_neg();
                    let gain_a = table[(a | xb) as usize] - table[a as usize];
                    let gain_b = table[(b | xb) as usize] - table[b as usize];
                    if gain_a < gain_b - tol {
                        return Ok(Some(Violation {
                            a: mask_set(a),
                            b: mask_set(b),
                            x: Some(ElementId(xb.trailing_zeros())),
                        }));
                    }
                    rest &= rest - 1;
                }
            }
            if a == 0 {
                break;
            }
            a = (a - 1) & b;
        }
    }
    Ok(None)
}

/// Exhaustive monotonicity check: f(A) ≤ f(B) for all A ⊆ B. Returns the
/// first violating pair, or None.
pub fn check_monotone(oracle: &SubmodularOracle) -> Result<Option<Violation>> {
    check_monotone_with_guard(oracle, DEFAULT_CHECK_GUARD)
}

pub fn check_monotone_with_guard(
    oracle: &SubmodularOracle,
    guard: u32,
) -> Result<Option<Violation>> {
    let table = value_table(oracle, "check_monotone ground size", guard)?;
    let n = oracle.ground().len() as u32;
    let tol = oracle.tolerance();
    for b in 0..(1u64 << n) {
        let mut a = b;
        loop {
            if table[a as usize] > table[b as usize] + tol {
                return Ok(Some(Violation {
                    a: mask_set(a),
                    b: mask_set(b),
                    x: None,
                }));
            }
            if a == 0 {
                break;
            }
            a = (a - 1) & b;
        }
    }
    Ok(None)
}

/// Normalization check: f(∅) = 0 (within the oracle's tolerance).
pub fn check_normalized(oracle: &SubmodularOracle) -> bool {
    let v = oracle.raw_value(&[]);
    let tol = oracle.tolerance();
    if v < 0.0 {
        -v <= tol
    } else {
        v <= tol
    }
}

/// Exact maximizer over all assignments by exhaustive enumeration. Ties are
/// broken lexicographically by element indices: the enumeration walks
/// assignments in lexicographic order (last agent fastest, each strategy set
/// sorted by index) and keeps only strict improvements.
pub fn brute_force_opt(instance: &Instance) -> Result<(Assignment, f64)> {
    brute_force_opt_with_guard(instance, DEFAULT_BRUTE_FORCE_GUARD)
}

pub fn brute_force_opt_with_guard(
    instance: &Instance,
    guard: u64,
) -> Result<(Assignment, f64)> {
    let mut space: u128 = 1;
    for s in instance.strategy_sets() {
        space = space.saturating_mul(s.len() as u128);
    }
    if space > guard as u128 {
        return Err(Error::SizeGuard {
            what: "brute_force_opt assignment count",
            size: u64::try_from(space).unwrap_or(u64::MAX),
            limit: guard,
        });
    }
    let n = instance.n_agents();
    let mut idx = alloc::vec![0usize; n];
    let mut best_choices: Option<Vec<ElementId>> = None;
    let mut best_value = f64::NEG_INFINITY;
    let mut scratch: Vec<ElementId> = Vec::with_capacity(n);
    loop {
        scratch.clear();
        for (agent, &k) in idx.iter().enumerate() {
            scratch.push(instance.sets[agent][k]);
        }
        let value = instance.oracle.evaluate(&scratch)?;
        if value > best_value {
            best_value = value;
            best_choices = Some(scratch.clone());
        }
        // odometer: last agent fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok((Assignment::new(best_choices.unwrap()), best_value));
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < instance.sets[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
