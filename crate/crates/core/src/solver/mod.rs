//! Exact (A, L, f)-colouring and bounded group-choosability verification.
//!
//! An edge `e = uv` with `u < v` carries a shift `f(e)`; a colouring `c` must
//! satisfy `c(u) - c(v) != f(e)`. Traversing the edge from `v` to `u`
//! negates the shift.
//!
//! Two reductions keep the instance space small, and both preserve
//! satisfiability:
//!
//! * Shift normalisation. Replacing `c(x)` by `c(x) - t(x)` turns
//!   `(L, f)` into `(L - t, f')` with `f'(uv) = f(uv) - t(u) + t(v)`. Choosing
//!   `t` along a spanning forest makes `f'` vanish on forest edges. When
//!   quantifying over all lists of given sizes, the translated lists range
//!   over all lists again, so only forest-zero shifts need enumerating.
//! * A single global translation per component (which fixes `f`) lets the
//!   list of each component root contain the identity.
//!
//! Translating every list to contain the identity on top of shift
//! normalisation would use the same freedom twice, so it is not done.

mod bounded;
mod coloring;
mod engine;
mod kernel;
mod normalize;
mod verdict;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::group::{AbelianGroup, ElementSet, GroupError};

pub use bounded::{
    check_reducible, edge_group_choice_number_bounded, group_choice_number_bounded, is_al_colorable,
    is_d_group_choosable_bounded, is_k_group_choosable_bounded, sample_refutation, AlOptions, AlOutcome,
    BoundedOptions, ChoiceNumber, LowerWitness,
};
pub use coloring::{extend_greedily, find_coloring, is_coloring};
pub use engine::{search, Progress, SearchConfig, SearchOutcome, SearchStats, Sizes};
pub use kernel::{kernelize_low_degree, PeelCertificate};
pub use normalize::{normalize_shift, translate_lists};
pub use verdict::{CheckedGroup, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{what} has {actual} entries, graph needs {expected}")]
    Arity {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("{what} uses an element outside the group of order {order}")]
    ElementOutOfRange { what: &'static str, order: usize },
    #[error("list size {size} exceeds group order {order}")]
    ListTooLarge { size: usize, order: usize },
    #[error("instance space of {space} exceeds the cap of {cap}; enable sampling")]
    OverCap { space: u128, cap: u128 },
    #[error("search budget exhausted: {0}")]
    Budget(Box<Progress>),
    #[error("refuted for every k up to {0}")]
    Exhausted(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// One list per vertex, as sets of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ListAssignment(Vec<ElementSet>);

impl ListAssignment {
    pub fn new(lists: Vec<ElementSet>) -> Self {
        ListAssignment(lists)
    }

    pub fn uniform(n: usize, list: ElementSet) -> Self {
        ListAssignment(vec![list; n])
    }

    pub fn get(&self, v: usize) -> ElementSet {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[ElementSet] {
        &self.0
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.0.iter().map(|s| s.len()).collect()
    }

    pub fn validate(&self, g: &Graph, a: &AbelianGroup) -> Result<(), SolverError> {
        if self.0.len() != g.n() {
            return Err(SolverError::Arity {
                what: "list assignment",
                expected: g.n(),
                actual: self.0.len(),
            });
        }
        if self.0.iter().any(|s| !s.fits(a.order())) {
            return Err(SolverError::ElementOutOfRange {
                what: "list assignment",
                order: a.order(),
            });
        }
        Ok(())
    }
}

/// One shift per edge, aligned with `g.edges()` and read on the canonical
/// orientation (lower endpoint to higher).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShiftAssignment(Vec<u8>);

impl ShiftAssignment {
    pub fn new(shifts: Vec<u8>) -> Self {
        ShiftAssignment(shifts)
    }

    pub fn zero(g: &Graph) -> Self {
        ShiftAssignment(vec![0; g.m()])
    }

    pub fn get(&self, pos: usize) -> u8 {
        self.0[pos]
    }

    pub fn set(&mut self, pos: usize, value: u8) {
        self.0[pos] = value;
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    /// The shift of edge `pos` when traversed starting at `from`.
    pub fn oriented(&self, g: &Graph, a: &AbelianGroup, pos: usize, from: usize) -> u8 {
        let e = &g.edges()[pos];
        if from == e.u {
            self.0[pos]
        } else {
            a.neg_idx(self.0[pos])
        }
    }

    pub fn validate(&self, g: &Graph, a: &AbelianGroup) -> Result<(), SolverError> {
        if self.0.len() != g.m() {
            return Err(SolverError::Arity {
                what: "shift assignment",
                expected: g.m(),
                actual: self.0.len(),
            });
        }
        if self.0.iter().any(|&x| x as usize >= a.order()) {
            return Err(SolverError::ElementOutOfRange {
                what: "shift assignment",
                order: a.order(),
            });
        }
        Ok(())
    }
}

/// Incidence view used by the search code: for vertex `v`, entries
/// `(w, edge position, v is the lower endpoint)`.
pub(crate) fn incidence(g: &Graph) -> Vec<Vec<(usize, usize, bool)>> {
    g.vertices()
        .map(|v| g.incidences(v).iter().map(|&(w, pos)| (w, pos, v < w)).collect())
        .collect()
}

/// The colour forbidden at the far end of an edge whose near end has colour
/// `x`: `x - f` if the near end is the lower endpoint, `x + f` otherwise.
#[inline]
pub(crate) fn forbidden(a: &AbelianGroup, x: u8, f: u8, near_is_lower: bool) -> u8 {
    if near_is_lower {
        a.sub_idx(x, f)
    } else {
        a.add_idx(x, f)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
