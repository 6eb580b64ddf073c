//! Exhaustive search over list and shift assignments.
//!
//! The adversary's choices are enumerated as a sequence of slots in
//! breadth-first vertex order: the list of a vertex, then the shifts of its
//! edges back to earlier vertices. After every choice the search looks for a
//! cascade certificate, which shows that every completion of the partial
//! assignment is colourable:
//!
//! colour one vertex `v` whose list is known with some `x` in it; every other
//! vertex `u` keeps a guaranteed number of colours (exact where both its list
//! and the shift to `v` are known, worst case otherwise); then repeatedly
//! delete any vertex whose guaranteed colours exceed its remaining degree.
//! If everything is deleted, colouring in reverse deletion order succeeds
//! whatever the unassigned shifts and lists are.
//!
//! The same cascade without a pre-coloured vertex, using list sizes alone,
//! is tried once before the search starts.
//!
//! Leaves are decided by the colouring solver. Statistics record how many
//! instances each pruned subtree stood for, so `covered` always equals the
//! full normalised instance space once a search completes.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coloring::solve;
use super::{binomial, forbidden, incidence, ListAssignment, ShiftAssignment, SolverError};
use crate::graph::Graph;
use crate::group::{k_subsets, k_subsets_containing_zero, AbelianGroup, ElementSet};

/// Largest number of candidate lists enumerated for a single vertex.
const LIST_DOMAIN_CAP: u128 = 1 << 22;

/// What the adversary controls about the lists.
#[derive(Debug, Clone)]
pub enum Sizes {
    /// All lists with these sizes (one per vertex).
    PerVertex(Vec<usize>),
    /// Lists are fixed; only shifts are enumerated.
    Fixed(ListAssignment),
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Enumerate only forest-zero shifts and root lists containing the
    /// identity. Ignored for fixed lists, where it would not be sound.
    pub normalize: bool,
    /// Use cascade certificates to skip subtrees.
    pub prune: bool,
    /// Abort after this many search nodes.
    pub max_nodes: Option<u64>,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            normalize: true,
            prune: true,
            max_nodes: Some(200_000_000),
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Number of list assignments in the (normalised) space.
    #[serde(with = "wide")]
    pub list_space: u128,
    /// Number of shift assignments in the (normalised) space.
    #[serde(with = "wide")]
    pub shift_space: u128,
    pub nodes: u64,
    pub pruned: u64,
    pub leaves: u64,
    /// Instances accounted for, either at leaves or inside pruned subtrees.
    #[serde(with = "wide")]
    pub covered: u128,
}

/// `u128` counters as JSON numbers when they fit in a `u64`, decimal strings
/// otherwise. serde_json cannot buffer `u128` inside tagged enums.
mod wide {
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(u64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        match u64::try_from(*v) {
            Ok(x) => s.serialize_u64(x),
            Err(_) => s.serialize_str(&v.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Small(x) => Ok(x as u128),
            Repr::Big(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl SearchStats {
    pub fn total(&self) -> u128 {
        self.list_space.saturating_mul(self.shift_space)
    }

    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.pruned += other.pruned;
        self.leaves += other.leaves;
        self.covered = self.covered.saturating_add(other.covered);
    }
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    /// Every instance in the space is colourable.
    Colorable(SearchStats),
    /// An uncolourable instance.
    Refuted {
        lists: ListAssignment,
        shift: ShiftAssignment,
        stats: SearchStats,
    },
}

impl SearchOutcome {
    pub fn stats(&self) -> &SearchStats {
        match self {
            SearchOutcome::Colorable(s) => s,
            SearchOutcome::Refuted { stats, .. } => stats,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progress {
    pub group: String,
    pub nodes: u64,
    #[serde(with = "wide")]
    pub covered: u128,
    #[serde(with = "wide")]
    pub total: u128,
}

impl fmt::Display for Progress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "group {}: {} nodes, {} of {} instances covered",
            self.group, self.nodes, self.covered, self.total
        )
    }
}

#[derive(Clone, Copy)]
enum Slot {
    List(usize),
    Shift(usize),
}

struct Plan<'a> {
    group: &'a AbelianGroup,
    n: usize,
    inc: Vec<Vec<(usize, usize, bool)>>,
    degree: Vec<i32>,
    size: Vec<usize>,
    slots: Vec<Slot>,
    domains: Vec<Vec<ElementSet>>,
    /// `suffix[i]` = instances below a node at depth `i`.
    suffix: Vec<u128>,
    fixed_lists: Option<Vec<u64>>,
    preset_shifts: Vec<Option<u8>>,
    list_space: u128,
    shift_space: u128,
}

impl Plan<'_> {
    fn domain_len(&self, slot: Slot) -> usize {
        match slot {
            Slot::List(v) => self.domains[v].len(),
            Slot::Shift(_) => self.group.order(),
        }
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            list_space: self.list_space,
            shift_space: self.shift_space,
            ..SearchStats::default()
        }
    }
}

/// Decide whether every instance in the space is colourable.
pub fn search(g: &Graph, a: &AbelianGroup, sizes: &Sizes, cfg: &SearchConfig) -> Result<SearchOutcome, SolverError> {
    let plan = build_plan(g, a, sizes, cfg)?;
    let mut stats = plan.stats();

    if cfg.prune && root_cascade(&plan) {
        stats.pruned = 1;
        stats.covered = stats.total();
        return Ok(SearchOutcome::Colorable(stats));
    }
    if plan.slots.is_empty() {
        let st = State::new(&plan);
        stats.leaves = 1;
        stats.covered = 1;
        return Ok(match st.leaf_refutes() {
            true => st.refutation(stats),
            false => SearchOutcome::Colorable(stats),
        });
    }

    let control = Control {
        nodes: AtomicU64::new(0),
        max_nodes: cfg.max_nodes,
        best: AtomicUsize::new(usize::MAX),
        exceeded: AtomicBool::new(false),
    };
    let units = plan.domain_len(plan.slots[0]);
    let run = |u: usize| -> UnitResult {
        let mut st = State::new(&plan);
        let flow = st.visit_value(0, u, &control, u, cfg.prune);
        if flow == Flow::Found {
            control.best.fetch_min(u, Ordering::SeqCst);
        }
        UnitResult {
            stats: st.stats,
            found: st.found,
            flow,
        }
    };
    let results: Vec<UnitResult> = if cfg.parallel && units > 1 {
        (0..units).into_par_iter().map(run).collect()
    } else {
        let mut out = Vec::with_capacity(units);
        for u in 0..units {
            let r = run(u);
            let stop = r.flow == Flow::Found;
            out.push(r);
            if stop {
                break;
            }
        }
        out
    };

    for r in &results {
        stats.absorb(&r.stats);
        if r.flow == Flow::Found {
            let (lists, shifts) = r.found.clone().expect("found");
            return Ok(SearchOutcome::Refuted {
                lists: ListAssignment::new(lists.into_iter().map(ElementSet).collect()),
                shift: ShiftAssignment::new(shifts),
                stats,
            });
        }
    }
    if control.exceeded.load(Ordering::SeqCst) {
        return Err(SolverError::Budget(Box::new(Progress {
            group: a.to_string(),
            nodes: stats.nodes,
            covered: stats.covered,
            total: stats.total(),
        })));
    }
    debug_assert_eq!(stats.covered, stats.total());
    Ok(SearchOutcome::Colorable(stats))
}

fn build_plan<'a>(g: &Graph, a: &'a AbelianGroup, sizes: &Sizes, cfg: &SearchConfig) -> Result<Plan<'a>, SolverError> {
    let n = g.n();
    let order = a.order();
    let (bfs, parent) = g.bfs_forest();
    let mut rank = vec![0; n];
    for (i, &v) in bfs.iter().enumerate() {
        rank[v] = i;
    }
    let (size, fixed_lists, normalize) = match sizes {
        Sizes::PerVertex(s) => {
            if s.len() != n {
                return Err(SolverError::Arity {
                    what: "list sizes",
                    expected: n,
                    actual: s.len(),
                });
            }
            if let Some(&big) = s.iter().find(|&&k| k > order) {
                return Err(SolverError::ListTooLarge { size: big, order });
            }
            (s.clone(), None, cfg.normalize)
        }
        Sizes::Fixed(l) => {
            l.validate(g, a)?;
            (l.sizes(), Some(l.as_slice().iter().map(|s| s.0).collect()), false)
        }
    };

    let mut domains = vec![Vec::new(); n];
    let mut list_space: u128 = 1;
    if fixed_lists.is_none() {
        for v in 0..n {
            let root = parent[v].is_none();
            let count = if normalize && root && size[v] > 0 {
                binomial(order - 1, size[v] - 1)
            } else {
                binomial(order, size[v])
            };
            if count > LIST_DOMAIN_CAP {
                return Err(SolverError::OverCap {
                    space: count,
                    cap: LIST_DOMAIN_CAP,
                });
            }
            domains[v] = if normalize && root && size[v] > 0 {
                k_subsets_containing_zero(a, size[v])?.collect()
            } else {
                k_subsets(a, size[v])?.collect()
            };
            list_space = list_space.saturating_mul(count);
        }
    }

    let mut slots = Vec::new();
    let mut preset_shifts = vec![None; g.m()];
    for &v in &bfs {
        if fixed_lists.is_none() {
            slots.push(Slot::List(v));
        }
        for &(w, pos) in g.incidences(v) {
            if rank[w] < rank[v] {
                if normalize && parent[v] == Some(pos) {
                    preset_shifts[pos] = Some(0);
                } else {
                    slots.push(Slot::Shift(pos));
                }
            }
        }
    }
    let shift_slots = slots.iter().filter(|s| matches!(s, Slot::Shift(_))).count();
    let shift_space = (order as u128).saturating_pow(shift_slots as u32);

    let mut plan = Plan {
        group: a,
        n,
        inc: incidence(g),
        degree: g.degrees().into_iter().map(|d| d as i32).collect(),
        size,
        slots,
        domains,
        suffix: Vec::new(),
        fixed_lists,
        preset_shifts,
        list_space,
        shift_space,
    };
    let mut suffix = vec![1u128; plan.slots.len() + 1];
    for i in (0..plan.slots.len()).rev() {
        suffix[i] = suffix[i + 1].saturating_mul(plan.domain_len(plan.slots[i]) as u128);
    }
    plan.suffix = suffix;
    Ok(plan)
}

/// Degeneracy-style cascade on list sizes alone.
fn root_cascade(plan: &Plan<'_>) -> bool {
    let slack: Vec<i32> = plan.size.iter().map(|&s| s as i32).collect();
    cascade(plan, slack, plan.degree.clone(), vec![false; plan.n], 0)
}

/// Repeatedly delete vertices with `slack > remaining degree`; true iff all
/// `n` vertices end up deleted. `removed` marks vertices deleted up front.
fn cascade(plan: &Plan<'_>, slack: Vec<i32>, mut deg: Vec<i32>, mut removed: Vec<bool>, mut count: usize) -> bool {
    let mut stack: Vec<usize> = (0..plan.n).filter(|&u| !removed[u] && slack[u] > deg[u]).collect();
    let mut queued = vec![false; plan.n];
    for &u in &stack {
        queued[u] = true;
    }
    while let Some(u) = stack.pop() {
        removed[u] = true;
        count += 1;
        for &(w, _, _) in &plan.inc[u] {
            if !removed[w] {
                deg[w] -= 1;
                if !queued[w] && slack[w] > deg[w] {
                    queued[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count == plan.n
}

struct Control {
    nodes: AtomicU64,
    max_nodes: Option<u64>,
    best: AtomicUsize,
    exceeded: AtomicBool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Flow {
    Continue,
    Found,
    Abort,
}

struct UnitResult {
    stats: SearchStats,
    found: Option<(Vec<u64>, Vec<u8>)>,
    flow: Flow,
}

struct State<'p> {
    plan: &'p Plan<'p>,
    lists: Vec<u64>,
    known_list: Vec<bool>,
    shifts: Vec<u8>,
    known_shift: Vec<bool>,
    stats: SearchStats,
    found: Option<(Vec<u64>, Vec<u8>)>,
}

impl<'p> State<'p> {
    fn new(plan: &'p Plan<'p>) -> Self {
        let (lists, known_list) = match &plan.fixed_lists {
            Some(l) => (l.clone(), vec![true; plan.n]),
            None => (vec![0; plan.n], vec![false; plan.n]),
        };
        State {
            plan,
            lists,
            known_list,
            shifts: plan.preset_shifts.iter().map(|s| s.unwrap_or(0)).collect(),
            known_shift: plan.preset_shifts.iter().map(Option::is_some).collect(),
            stats: SearchStats::default(),
            found: None,
        }
    }

    fn assign(&mut self, slot: Slot, value: usize) {
        match slot {
            Slot::List(v) => {
                self.lists[v] = self.plan.domains[v][value].0;
                self.known_list[v] = true;
            }
            Slot::Shift(pos) => {
                self.shifts[pos] = value as u8;
                self.known_shift[pos] = true;
            }
        }
    }

    fn unassign(&mut self, slot: Slot) {
        match slot {
            Slot::List(v) => self.known_list[v] = false,
            Slot::Shift(pos) => self.known_shift[pos] = false,
        }
    }

    fn dfs(&mut self, depth: usize, ctl: &Control, unit: usize, prune: bool) -> Flow {
        let slot = self.plan.slots[depth];
        for value in 0..self.plan.domain_len(slot) {
            let flow = self.visit_value(depth, value, ctl, unit, prune);
            if flow != Flow::Continue {
                return flow;
            }
        }
        Flow::Continue
    }

    fn visit_value(&mut self, depth: usize, value: usize, ctl: &Control, unit: usize, prune: bool) -> Flow {
        let slot = self.plan.slots[depth];
        self.assign(slot, value);
        let flow = self.visit(depth, ctl, unit, prune);
        self.unassign(slot);
        flow
    }

    fn visit(&mut self, depth: usize, ctl: &Control, unit: usize, prune: bool) -> Flow {
        self.stats.nodes += 1;
        let total = ctl.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if ctl.max_nodes.is_some_and(|m| total > m) {
            ctl.exceeded.store(true, Ordering::SeqCst);
            return Flow::Abort;
        }
        if ctl.exceeded.load(Ordering::Relaxed) || ctl.best.load(Ordering::Relaxed) < unit {
            return Flow::Abort;
        }
        if prune && self.certified() {
            self.stats.pruned += 1;
            self.stats.covered = self.stats.covered.saturating_add(self.plan.suffix[depth + 1]);
            return Flow::Continue;
        }
        if depth + 1 == self.plan.slots.len() {
            self.stats.leaves += 1;
            self.stats.covered += 1;
            if self.leaf_refutes() {
                self.found = Some((self.lists.clone(), self.shifts.clone()));
                return Flow::Found;
            }
            return Flow::Continue;
        }
        self.dfs(depth + 1, ctl, unit, prune)
    }

    fn leaf_refutes(&self) -> bool {
        let lists: Vec<ElementSet> = self.lists.iter().map(|&m| ElementSet(m)).collect();
        solve(self.plan.group, &self.plan.inc, &lists, &self.shifts).is_none()
    }

    fn refutation(&self, stats: SearchStats) -> SearchOutcome {
        SearchOutcome::Refuted {
            lists: ListAssignment::new(self.lists.iter().map(|&m| ElementSet(m)).collect()),
            shift: ShiftAssignment::new(self.shifts.clone()),
            stats,
        }
    }

    fn certified(&self) -> bool {
        (0..self.plan.n)
            .filter(|&v| self.known_list[v])
            .any(|v| ElementSet(self.lists[v]).iter().any(|x| self.cascade_from(v, x)))
    }

    fn cascade_from(&self, v: usize, x: u8) -> bool {
        let plan = self.plan;
        let mut deg = plan.degree.clone();
        let mut forb = vec![0u64; plan.n];
        let mut unknown = vec![0i32; plan.n];
        for &(w, pos, lower) in &plan.inc[v] {
            deg[w] -= 1;
            if self.known_list[w] && self.known_shift[pos] {
                forb[w] |= 1 << forbidden(plan.group, x, self.shifts[pos], lower);
            } else {
                unknown[w] += 1;
            }
        }
        let slack: Vec<i32> = (0..plan.n)
            .map(|u| {
                let base = if self.known_list[u] {
                    (self.lists[u] & !forb[u]).count_ones() as i32
                } else {
                    plan.size[u] as i32
                };
                base - unknown[u]
            })
            .collect();
        let mut removed = vec![false; plan.n];
        removed[v] = true;
        cascade(plan, slack, deg, removed, 1)
    }
}
