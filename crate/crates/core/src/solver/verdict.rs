use serde::{Deserialize, Serialize};

use super::engine::SearchStats;
use super::{find_coloring, ListAssignment, ShiftAssignment, SolverError};
use crate::graph::Graph;
use crate::group::{AbelianGroup, ElementSet};

/// A group searched exhaustively without finding a refutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedGroup {
    pub group: AbelianGroup,
    pub stats: SearchStats,
}

/// Outcome of a bounded verification. Only `Refuted` and `HoldsByTheorem`
/// are proofs; the other two are evidence up to the stated bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Refuted {
        witness: Box<Witness>,
    },
    VerifiedUpToBound {
        max_order: usize,
        checked: Vec<CheckedGroup>,
    },
    HoldsByTheorem {
        rule: String,
    },
    NoRefutationSampled {
        samples: u64,
        seed: u64,
        max_order: usize,
    },
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Refuted { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Refuted { .. } => "refuted",
            Verdict::VerifiedUpToBound { .. } => "verified_up_to_bound",
            Verdict::HoldsByTheorem { .. } => "holds_by_theorem",
            Verdict::NoRefutationSampled { .. } => "no_refutation_sampled",
        }
    }
}

/// An uncolourable instance `(A, L, f)` on a graph whose edges are recorded
/// alongside, so the witness can be checked without outside context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "WitnessRepr", try_from = "WitnessRepr")]
pub struct Witness {
    pub group: AbelianGroup,
    pub lists: ListAssignment,
    pub shift: ShiftAssignment,
    pub edges: Vec<(usize, usize)>,
}

impl Witness {
    pub fn new(g: &Graph, group: AbelianGroup, lists: ListAssignment, shift: ShiftAssignment) -> Self {
        Witness {
            group,
            lists,
            shift,
            edges: g.edges().iter().map(|e| (e.u, e.v)).collect(),
        }
    }

    /// The graph the witness lives on.
    pub fn graph(&self) -> Result<Graph, SolverError> {
        Ok(Graph::from_edges(self.lists.as_slice().len(), &self.edges)?)
    }

    /// True iff the instance really has no colouring.
    pub fn revalidate(&self) -> Result<bool, SolverError> {
        let g = self.graph()?;
        Ok(find_coloring(&g, &self.group, &self.lists, &self.shift)?.is_none())
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeShiftRepr {
    u: usize,
    v: usize,
    value: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    group: AbelianGroup,
    lists: Vec<Vec<Vec<u32>>>,
    shifts: Vec<EdgeShiftRepr>,
}

impl From<Witness> for WitnessRepr {
    fn from(w: Witness) -> Self {
        let a = &w.group;
        WitnessRepr {
            lists: w
                .lists
                .as_slice()
                .iter()
                .map(|s| s.iter().map(|x| a.residues(x)).collect())
                .collect(),
            shifts: w
                .edges
                .iter()
                .zip(w.shift.as_slice())
                .map(|(&(u, v), &x)| EdgeShiftRepr {
                    u,
                    v,
                    value: a.residues(x),
                })
                .collect(),
            group: w.group.clone(),
        }
    }
}

impl TryFrom<WitnessRepr> for Witness {
    type Error = SolverError;

    fn try_from(r: WitnessRepr) -> Result<Self, Self::Error> {
        let a = r.group;
        let mut lists = Vec::with_capacity(r.lists.len());
        for list in &r.lists {
            let mut s = ElementSet::EMPTY;
            for x in list {
                s.insert(a.index_of_residues(x)?);
            }
            lists.push(s);
        }
        let mut shifts = Vec::with_capacity(r.shifts.len());
        let mut edges = Vec::with_capacity(r.shifts.len());
        for e in &r.shifts {
            if e.u >= e.v || e.v >= lists.len() {
                return Err(SolverError::InvalidArgument(format!(
                    "witness edge ({}, {}) is not canonically oriented on {} vertices",
                    e.u,
                    e.v,
                    lists.len()
                )));
            }
            shifts.push(a.index_of_residues(&e.value)?);
            edges.push((e.u, e.v));
        }
        Ok(Witness {
            group: a,
            lists: ListAssignment::new(lists),
            shift: ShiftAssignment::new(shifts),
            edges,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::cycle;

    #[test]
    fn witness_round_trips_through_json() {
        let g = cycle(4);
        let a: AbelianGroup = "Z2".parse().unwrap();
        let w = Witness::new(
            &g,
            a,
            ListAssignment::uniform(4, ElementSet::full(2)),
            ShiftAssignment::new(vec![1, 0, 0, 0]),
        );
        assert!(w.revalidate().unwrap());
        let v = Verdict::Refuted {
            witness: Box::new(w.clone()),
        };
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.starts_with("{\"verdict\":\"refuted\""));
        let back: Verdict = serde_json::from_str(&text).unwrap();
        assert_eq!(back.witness(), Some(&w));
    }

    #[test]
    fn verified_verdict_round_trips_with_wide_counters() {
        let stats = SearchStats {
            list_space: u128::from(u64::MAX) * 4,
            shift_space: 16384,
            covered: 7,
            ..SearchStats::default()
        };
        let v = Verdict::VerifiedUpToBound {
            max_order: 5,
            checked: vec![CheckedGroup {
                group: "Z5".parse().unwrap(),
                stats,
            }],
        };
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.contains("\"shift_space\":16384"));
        let back: Verdict = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn malformed_witness_is_rejected() {
        let text = r#"{"group":"Z2","lists":[[[0]],[[2]]],"shifts":[]}"#;
        assert!(serde_json::from_str::<Witness>(text).is_err());
        let text = r#"{"group":"Z2","lists":[[[0]],[[1]]],"shifts":[{"u":1,"v":0,"value":[0]}]}"#;
        assert!(serde_json::from_str::<Witness>(text).is_err());
    }
}
