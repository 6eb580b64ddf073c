use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{extend_greedily, ListAssignment, ShiftAssignment, SolverError};
use crate::graph::{Edge, EdgeId, Graph};
use crate::group::AbelianGroup;

/// Record of a low-degree peel. An edge `e` incident to a vertex of degree at
/// most 2 has at most `Δ` neighbours in the line graph, so with lists of size
/// `Δ + l` (`l >= 1`) any colouring of the remaining edges extends to `e`.
/// Hence a bound `Δ(g) + l` on the kernel transfers back to `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelCertificate {
    pub l: usize,
    pub max_degree: usize,
    /// Peeled edges, in peel order.
    pub peeled: Vec<Edge>,
}

impl PeelCertificate {
    /// `Δ(g) + l`, the list size the certificate speaks about.
    pub fn bound(&self) -> usize {
        self.max_degree + self.l
    }

    /// Extend a colouring of the kernel's edges (keyed by edge id) to all of
    /// `g`, given an instance on the line graph of `g` (line-graph vertex `i`
    /// is `g.edges()[i]`). Peeled edges are coloured greedily in reverse peel
    /// order.
    pub fn extend(
        &self,
        g: &Graph,
        line: &Graph,
        a: &AbelianGroup,
        lists: &ListAssignment,
        shift: &ShiftAssignment,
        kernel_coloring: &BTreeMap<EdgeId, u8>,
    ) -> Option<Vec<u8>> {
        let mut partial: Vec<Option<u8>> = g.edges().iter().map(|e| kernel_coloring.get(&e.id).copied()).collect();
        let order: Vec<usize> = self
            .peeled
            .iter()
            .rev()
            .map(|e| g.edge_position(e.id).expect("peeled edge belongs to g"))
            .collect();
        if !extend_greedily(line, a, lists, shift, &mut partial, &order) {
            return None;
        }
        partial.into_iter().collect()
    }
}

/// Repeatedly delete an edge at a vertex of degree 1 or 2 (smallest such
/// vertex, then its smallest edge id) until none remains. Edge ids of the
/// kernel match those of `g`.
pub fn kernelize_low_degree(g: &Graph, l: usize) -> Result<(Graph, PeelCertificate), SolverError> {
    if l == 0 {
        return Err(SolverError::InvalidArgument("l must be at least 1".into()));
    }
    let mut h = g.clone();
    let mut peeled = Vec::new();
    while let Some(v) = h.vertices().find(|&v| (1..=2).contains(&h.degree(v))) {
        let id = h
            .incidences(v)
            .iter()
            .map(|&(_, pos)| h.edges()[pos].id)
            .min()
            .expect("positive degree");
        peeled.push(*h.edge(id).expect("edge"));
        h = h.without_edge(id)?;
    }
    Ok((
        h,
        PeelCertificate {
            l,
            max_degree: g.max_degree(),
            peeled,
        },
    ))
}
