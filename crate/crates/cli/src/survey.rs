//! Catalog surveys of edge-group-choosability bounds.
//!
//! Per graph: kernelize by peeling edges at vertices of degree at most 2,
//! answer by the greedy bound when the kernel's line graph is degenerate
//! enough, and otherwise search every group of the requested orders. A
//! refutation on the kernel is lifted to the whole line graph and
//! re-validated there before it is reported.

use std::collections::HashMap;
use std::io::Write;
use std::time::Instant;

use grpchoose::graph::graph6::encode_graph6;
use grpchoose::graph::{chromatic_index, degeneracy_order, line_graph, Graph};
use grpchoose::group::ElementSet;
use grpchoose::solver::{
    check_reducible, find_coloring, kernelize_low_degree, sample_refutation, BoundedOptions, ListAssignment,
    SearchConfig, ShiftAssignment, SolverError, Verdict, Witness,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::Cache;
use crate::input::Entry;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    /// χ'_gl(G) <= Δ(G) + 1.
    Conj3,
    /// χ'_gl(G) <= χ'(G) + 1.
    Conj4,
    /// The Δ <= 3 case of `Conj3`; other graphs are skipped.
    Thm5,
}

impl Claim {
    pub fn parse(s: &str) -> Option<Claim> {
        match s {
            "conj3" => Some(Claim::Conj3),
            "conj4" => Some(Claim::Conj4),
            "thm5" => Some(Claim::Thm5),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Claim::Conj3 => "conj3",
            Claim::Conj4 => "conj4",
            Claim::Thm5 => "thm5",
        }
    }

    pub fn invariant(self) -> &'static str {
        match self {
            Claim::Conj3 | Claim::Thm5 => "chi_gl_edge <= max_degree + 1",
            Claim::Conj4 => "chi_gl_edge <= chromatic_index + 1",
        }
    }
}

/// Which group orders to search for a given list size `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderBound {
    Explicit(Vec<usize>),
    MaxOrder(usize),
    Margin(usize),
}

#[derive(Debug, Clone)]
pub struct Bounds {
    pub orders: OrderBound,
    /// `(samples, seed)` switches to sampling mode.
    pub sampling: Option<(u64, u64)>,
    pub max_nodes: Option<u64>,
}

impl Bounds {
    /// Orders of at least `max(k, 2)` admitted by the bound.
    pub fn orders_for(&self, k: usize) -> Vec<usize> {
        let lo = k.max(2);
        match &self.orders {
            OrderBound::Explicit(os) => {
                let mut v: Vec<usize> = os.iter().copied().filter(|&o| o >= lo).collect();
                v.sort_unstable();
                v.dedup();
                v
            }
            OrderBound::MaxOrder(m) => (lo..=*m).collect(),
            OrderBound::Margin(d) => (lo..=k + d).collect(),
        }
    }

    /// The cache key component: equal strings mean equal requests.
    pub fn key(&self) -> String {
        let mut s = match &self.orders {
            OrderBound::Explicit(os) => {
                let mut os = os.clone();
                os.sort_unstable();
                os.dedup();
                let parts: Vec<String> = os.iter().map(|o| o.to_string()).collect();
                format!("orders={}", parts.join(","))
            }
            OrderBound::MaxOrder(m) => format!("max_order={m}"),
            OrderBound::Margin(d) => format!("margin={d}"),
        };
        if let Some((n, seed)) = self.sampling {
            s.push_str(&format!(";samples={n};seed={seed}"));
        }
        match self.max_nodes {
            Some(n) => s.push_str(&format!(";max_nodes={n}")),
            None => s.push_str(";max_nodes=none"),
        }
        s
    }

    fn options(&self) -> BoundedOptions {
        BoundedOptions {
            fast_path: true,
            search: SearchConfig {
                max_nodes: self.max_nodes,
                ..SearchConfig::default()
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Checked,
    Skipped,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RecordKey {
    pub graph: String,
    pub claim: String,
    pub bounds: String,
}

/// One line of survey output. Re-running `claim` on `graph` with `bounds`
/// reproduces it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    /// graph6, or the raw input line when it did not parse.
    pub graph: String,
    pub claim: String,
    pub bounds: String,
    pub invariant: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chromatic_index: Option<usize>,
    /// List size checked on the line graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orders: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl SurveyRecord {
    pub fn key(&self) -> RecordKey {
        RecordKey {
            graph: self.graph.clone(),
            claim: self.claim.clone(),
            bounds: self.bounds.clone(),
        }
    }

    pub fn is_refuted(&self) -> bool {
        self.verdict.as_ref().is_some_and(Verdict::is_refuted)
    }

    /// Structural checks for records read back from disk.
    pub fn check_consistent(&self) -> Result<(), String> {
        if Claim::parse(&self.claim).is_none() {
            return Err(format!("unknown claim {:?}", self.claim));
        }
        match (self.status, &self.verdict) {
            (Status::Checked, None) => Err("checked record without a verdict".into()),
            (Status::Skipped | Status::Error, Some(_)) => Err("verdict on an unchecked record".into()),
            (Status::Skipped | Status::Error, None) if self.reason.is_none() => {
                Err("unchecked record without a reason".into())
            }
            (_, Some(Verdict::Refuted { witness })) => witness.graph().map(|_| ()).map_err(|e| e.to_string()),
            _ => Ok(()),
        }
    }

    fn base(graph: String, claim: Claim, bounds: &Bounds, status: Status) -> Self {
        SurveyRecord {
            graph,
            claim: claim.name().into(),
            bounds: bounds.key(),
            invariant: claim.invariant().into(),
            status,
            n: None,
            m: None,
            max_degree: None,
            min_degree: None,
            chromatic_index: None,
            k: None,
            orders: Vec::new(),
            kernel_edges: None,
            verdict: None,
            reason: None,
        }
    }

    /// Record for an input line that is not a graph.
    pub fn input_error(raw: &str, claim: Claim, bounds: &Bounds, reason: String) -> Self {
        SurveyRecord {
            reason: Some(reason),
            ..Self::base(raw.trim().into(), claim, bounds, Status::Error)
        }
    }
}

/// Runs `claim` on one graph. Never fails; problems become error records.
pub fn check_graph(g: &Graph, claim: Claim, bounds: &Bounds) -> SurveyRecord {
    let graph = match encode_graph6(g) {
        Ok(s) => s,
        Err(e) => return SurveyRecord::input_error("?", claim, bounds, e.to_string()),
    };
    let mut rec = SurveyRecord {
        n: Some(g.n()),
        m: Some(g.m()),
        max_degree: Some(g.max_degree()),
        min_degree: Some(g.min_degree()),
        ..SurveyRecord::base(graph, claim, bounds, Status::Checked)
    };
    let fail = |mut rec: SurveyRecord, reason: String| {
        rec.status = Status::Error;
        rec.reason = Some(reason);
        rec
    };
    if let Err(e) = g.require_simple() {
        return fail(rec, e.to_string());
    }
    if claim == Claim::Thm5 && g.max_degree() > 3 {
        rec.status = Status::Skipped;
        rec.reason = Some(format!("maximum degree {} > 3", g.max_degree()));
        return rec;
    }
    if g.m() == 0 {
        rec.verdict = Some(Verdict::HoldsByTheorem {
            rule: "no edges".into(),
        });
        return rec;
    }
    let k = match claim {
        Claim::Conj3 | Claim::Thm5 => g.max_degree() + 1,
        Claim::Conj4 => match chromatic_index(g) {
            Ok(c) => {
                rec.chromatic_index = Some(c);
                c + 1
            }
            Err(e) => return fail(rec, e.to_string()),
        },
    };
    rec.k = Some(k);
    let (kernel, _cert) = match kernelize_low_degree(g, k - g.max_degree()) {
        Ok(x) => x,
        Err(e) => return fail(rec, e.to_string()),
    };
    rec.kernel_edges = Some(kernel.m());
    if kernel.m() == 0 {
        rec.verdict = Some(Verdict::HoldsByTheorem { rule: "peel".into() });
        return rec;
    }
    let line = line_graph(&kernel).expect("kernel has an edge");
    if degeneracy_order(&line).degeneracy < k {
        rec.verdict = Some(Verdict::HoldsByTheorem { rule: "greedy".into() });
        return rec;
    }
    let orders = bounds.orders_for(k);
    if orders.is_empty() {
        return fail(
            rec,
            format!("no group order of at least {} within the bounds", k.max(2)),
        );
    }
    rec.orders = orders.clone();
    let sizes = vec![k; line.n()];
    let result = match bounds.sampling {
        Some((samples, seed)) => sample_refutation(&line, &sizes, &orders, samples, seed),
        None => check_reducible(&line, &sizes, &orders, &bounds.options()),
    };
    let verdict = match result {
        Ok(v) => v,
        Err(SolverError::Budget(p)) => return fail(rec, format!("search budget exhausted: {p}")),
        Err(e) => return fail(rec, e.to_string()),
    };
    let verdict = match verdict {
        Verdict::Refuted { witness } => match lift_witness(g, &kernel, &witness, k) {
            Ok(w) => Verdict::Refuted { witness: Box::new(w) },
            Err(e) => return fail(rec, format!("kernel refutation did not lift: {e}")),
        },
        v => v,
    };
    rec.verdict = Some(verdict);
    rec
}

/// Extends a witness on the line graph of `kernel` (a spanning subgraph of
/// `g` with the same edge ids) to the line graph of `g`. Peeled edges get the
/// first `k` elements as their list, and line-graph edges outside the kernel
/// get shift zero. The line graph of the kernel is an induced subgraph, so
/// the lifted instance is uncolourable too; this is re-checked.
pub fn lift_witness(g: &Graph, kernel: &Graph, w: &Witness, k: usize) -> Result<Witness, SolverError> {
    let full = line_graph(g)?;
    let small = w.graph()?;
    let a = &w.group;
    let pos_in_g: Vec<usize> = kernel
        .edges()
        .iter()
        .map(|e| g.edge_position(e.id).expect("kernel edges belong to g"))
        .collect();
    let filler: ElementSet = (0..k as u8).collect();
    let mut lists = vec![filler; full.n()];
    for (j, &p) in pos_in_g.iter().enumerate() {
        lists[p] = w.lists.get(j);
    }
    let mut small_edge: HashMap<(usize, usize), usize> = HashMap::new();
    for (pos, e) in small.edges().iter().enumerate() {
        small_edge.insert((pos_in_g[e.u], pos_in_g[e.v]), pos);
        small_edge.insert((pos_in_g[e.v], pos_in_g[e.u]), pos);
    }
    let shifts = full
        .edges()
        .iter()
        .map(|e| match small_edge.get(&(e.u, e.v)) {
            Some(&pos) => {
                let from = if pos_in_g[small.edges()[pos].u] == e.u {
                    small.edges()[pos].u
                } else {
                    small.edges()[pos].v
                };
                w.shift.oriented(&small, a, pos, from)
            }
            None => 0,
        })
        .collect();
    let lifted = Witness::new(
        &full,
        a.clone(),
        ListAssignment::new(lists),
        ShiftAssignment::new(shifts),
    );
    if find_coloring(&full, a, &lifted.lists, &lifted.shift)?.is_some() {
        return Err(SolverError::InvalidArgument("lifted instance is colourable".into()));
    }
    Ok(lifted)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub computed: usize,
    pub cached: usize,
    pub refuted: usize,
    pub skipped: usize,
    pub errors: usize,
    pub filtered: usize,
    pub quarantined: usize,
}

pub struct SurveyOptions {
    pub claim: Claim,
    pub bounds: Bounds,
    /// Leave out graphs with larger maximum degree.
    pub max_degree: Option<usize>,
    /// Graphs handed to the worker pool at a time.
    pub chunk: usize,
}

/// Everything a reader needs to check a refutation independently.
#[derive(Debug, Clone, Serialize)]
pub struct RefutationBundle {
    pub graph: String,
    pub claim: String,
    pub invariant: String,
    pub witness: Witness,
    pub revalidated: bool,
}

impl RefutationBundle {
    pub fn from_record(rec: &SurveyRecord) -> Option<Self> {
        let w = rec.verdict.as_ref()?.witness()?;
        Some(RefutationBundle {
            graph: rec.graph.clone(),
            claim: rec.claim.clone(),
            invariant: rec.invariant.clone(),
            witness: w.clone(),
            revalidated: w.revalidate().unwrap_or(false),
        })
    }
}

pub struct SurveyRun {
    pub summary: Summary,
    pub refutation: Option<SurveyRecord>,
}

/// Surveys `entries` in order, writing each new record to `out` as a JSON
/// line and appending computed ones to the cache. Stops after the first
/// refutation. Unreadable entries become error records; they are written
/// but not cached.
pub fn run_survey(
    entries: &[Entry],
    opts: &SurveyOptions,
    mut cache: Option<&mut Cache>,
    out: &mut dyn Write,
) -> Result<SurveyRun, CliError> {
    let mut summary = Summary {
        quarantined: cache.as_ref().map_or(0, |c| c.quarantined()),
        ..Summary::default()
    };
    let bounds_key = opts.bounds.key();
    let claim = opts.claim;
    let io = |e: std::io::Error| CliError::Io(e.to_string());

    for chunk in entries.chunks(opts.chunk.max(1)) {
        let mut work: Vec<Task> = Vec::with_capacity(chunk.len());
        for e in chunk {
            let task = match &e.graph {
                Err(reason) => Task::Ready(SurveyRecord::input_error(
                    &e.text,
                    claim,
                    &opts.bounds,
                    format!("line {}: {reason}", e.line),
                )),
                Ok(g) if opts.max_degree.is_some_and(|d| g.max_degree() > d) => Task::Filtered,
                Ok(g) => {
                    let key = encode_graph6(g).ok().map(|graph| RecordKey {
                        graph,
                        claim: claim.name().into(),
                        bounds: bounds_key.clone(),
                    });
                    match (key, cache.as_ref()) {
                        (Some(k), Some(c)) if c.contains(&k) => Task::Cached(k),
                        _ => Task::Compute(g),
                    }
                }
            };
            work.push(task);
        }
        let results: Vec<Option<SurveyRecord>> = work
            .par_iter()
            .map(|t| match t {
                Task::Compute(g) => {
                    let start = Instant::now();
                    let rec = check_graph(g, claim, &opts.bounds);
                    log::info!("{} {}: {:?}", claim.name(), rec.graph, start.elapsed());
                    Some(rec)
                }
                Task::Ready(rec) => Some(rec.clone()),
                Task::Cached(_) | Task::Filtered => None,
            })
            .collect();
        for (task, rec) in work.iter().zip(results) {
            match task {
                Task::Filtered => summary.filtered += 1,
                Task::Cached(k) => {
                    summary.cached += 1;
                    let c = cache.as_ref().expect("cached implies a cache");
                    if let Some(r) = c.query(&k.claim).find(|r| &r.key() == k && r.is_refuted()) {
                        summary.refuted += 1;
                        return Ok(SurveyRun {
                            summary,
                            refutation: Some(r.clone()),
                        });
                    }
                }
                Task::Ready(_) | Task::Compute(_) => {
                    let rec = rec.expect("computed");
                    let line = serde_json::to_string(&rec).map_err(|e| CliError::Io(e.to_string()))?;
                    writeln!(out, "{line}").map_err(io)?;
                    match rec.status {
                        Status::Error => summary.errors += 1,
                        Status::Skipped => summary.skipped += 1,
                        Status::Checked => {}
                    }
                    if matches!(task, Task::Compute(_)) {
                        summary.computed += 1;
                        if rec.status != Status::Error {
                            if let Some(c) = cache.as_deref_mut() {
                                c.append(&rec).map_err(io)?;
                            }
                        }
                    }
                    if rec.is_refuted() {
                        summary.refuted += 1;
                        return Ok(SurveyRun {
                            summary,
                            refutation: Some(rec),
                        });
                    }
                }
            }
        }
    }
    Ok(SurveyRun {
        summary,
        refutation: None,
    })
}

enum Task<'a> {
    Compute(&'a Graph),
    Ready(SurveyRecord),
    Cached(RecordKey),
    Filtered,
}

#[cfg(test)]
mod tests {
    use super::*;
    use grpchoose::graph::named::{complete, cycle};

    fn bounds() -> Bounds {
        Bounds {
            orders: OrderBound::MaxOrder(5),
            sampling: None,
            max_nodes: None,
        }
    }

    #[test]
    fn cycles_peel_away() {
        let r = check_graph(&cycle(5), Claim::Conj3, &bounds());
        assert_eq!(r.kernel_edges, Some(0));
        assert_eq!(r.verdict, Some(Verdict::HoldsByTheorem { rule: "peel".into() }));
    }

    #[test]
    fn thm5_skips_high_degree() {
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(check_graph(&star, Claim::Thm5, &bounds()).status, Status::Skipped);
    }

    #[test]
    fn k4_under_conj3() {
        let r = check_graph(&complete(4), Claim::Conj3, &bounds());
        assert_eq!(r.k, Some(4));
        assert_eq!(r.kernel_edges, Some(6));
        assert_eq!(r.orders, vec![4, 5]);
        assert!(matches!(
            r.verdict,
            Some(Verdict::VerifiedUpToBound { max_order: 5, .. })
        ));
    }

    #[test]
    fn lifted_witness_stays_uncolourable() {
        // C4 plus a pendant edge, over the spanning 4-cycle refuted at k = 2.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let g_kernel = g.without_edge(g.edges()[4].id).unwrap();
        let line = line_graph(&g_kernel).unwrap();
        let v = check_reducible(&line, &[2; 4], &[2], &BoundedOptions::default()).unwrap();
        let w = v.witness().unwrap();
        let lifted = lift_witness(&g, &g_kernel, w, 2).unwrap();
        assert!(lifted.revalidate().unwrap());
        assert_eq!(lifted.lists.as_slice().len(), 5);
    }

    #[test]
    fn bound_keys_differ() {
        let mut b = bounds();
        let k1 = b.key();
        b.orders = OrderBound::Explicit(vec![5, 4, 4]);
        assert_eq!(b.key(), "orders=4,5;max_nodes=none");
        assert_ne!(k1, b.key());
        assert_eq!(b.orders_for(4), vec![4, 5]);
        assert_eq!(OrderBound::Margin(2), OrderBound::Margin(2));
    }
}
