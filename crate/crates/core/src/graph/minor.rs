//! Minor containment for the small 2-connected forbidden minors used by the
//! outerplanarity machinery.
//!
//! Search works block by block (every target is 2-connected, so a model lives
//! inside one block) and explores edge contractions depth-first, memoising
//! contracted graphs by canonical form. Before each step the host is reduced:
//! vertices of degree at most 1 are dropped (every target has minimum degree
//! 2) and, for `K4`, degree-2 vertices are suppressed.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::canon::{canonical_form, CanonicalForm};
use super::{blocks, named, Graph, GraphError};

pub const MINOR_VERTEX_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MinorName {
    K4,
    K23,
    /// `K_{2,3}` plus an edge between two of its degree-2 vertices.
    K23Plus,
}

impl MinorName {
    pub fn pattern(self) -> Graph {
        match self {
            MinorName::K4 => named::complete(4),
            MinorName::K23 => named::complete_bipartite(2, 3),
            MinorName::K23Plus => named::k23_plus(),
        }
    }

    fn suppress_degree_two(self) -> bool {
        matches!(self, MinorName::K4)
    }
}

impl fmt::Display for MinorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MinorName::K4 => "K4",
            MinorName::K23 => "K23",
            MinorName::K23Plus => "K23_PLUS",
        })
    }
}

impl FromStr for MinorName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "K4" => Ok(MinorName::K4),
            "K23" | "K2,3" => Ok(MinorName::K23),
            "K23_PLUS" | "K23+" => Ok(MinorName::K23Plus),
            other => Err(format!("unknown minor {other:?}")),
        }
    }
}

/// True iff `h` is a minor of `g`. Parallel edges of `g` are ignored.
pub fn has_minor(g: &Graph, h: MinorName) -> Result<bool, GraphError> {
    if g.n() > MINOR_VERTEX_CAP {
        return Err(GraphError::TooLarge {
            what: "vertex count",
            actual: g.n(),
            cap: MINOR_VERTEX_CAP,
        });
    }
    let simple = g.simplified();
    let pattern = Masks::from_graph(&h.pattern());
    let dec = blocks(&simple);
    for vs in &dec.blocks {
        if vs.len() < pattern.n() {
            continue;
        }
        let (block, _) = simple.induced(vs);
        let mut search = Search {
            target: h,
            pattern: &pattern,
            seen: HashSet::new(),
        };
        if search.run(Masks::from_graph(&block)) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug)]
struct Masks(Vec<u64>);

impl Masks {
    fn from_graph(g: &Graph) -> Self {
        Masks(g.adjacency_masks())
    }

    fn n(&self) -> usize {
        self.0.len()
    }

    fn degree(&self, v: usize) -> usize {
        self.0[v].count_ones() as usize
    }

    fn edge_count(&self) -> usize {
        self.0.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    fn remove(&mut self, v: usize) {
        self.0.remove(v);
        let low = (1u64 << v) - 1;
        for m in &mut self.0 {
            *m = (*m & low) | ((*m >> (v + 1)) << v);
        }
    }

    /// Merge `v` into `u`.
    fn contract(&self, u: usize, v: usize) -> Masks {
        let mut out = self.clone();
        let merged = (out.0[u] | out.0[v]) & !(1 << u) & !(1 << v);
        for w in 0..out.n() {
            if merged & (1 << w) != 0 {
                out.0[w] |= 1 << u;
            }
        }
        out.0[u] = merged;
        out.remove(v);
        out
    }

    fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.n());
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                if self.0[u] & (1 << v) != 0 {
                    g.add_edge(u, v).expect("valid");
                }
            }
        }
        g
    }
}

struct Search<'a> {
    target: MinorName,
    pattern: &'a Masks,
    seen: HashSet<CanonicalForm>,
}

impl Search<'_> {
    fn reduce(&self, mut g: Masks) -> Masks {
        loop {
            let Some(v) = (0..g.n()).find(|&v| {
                let d = g.degree(v);
                d <= 1 || (d == 2 && self.target.suppress_degree_two())
            }) else {
                return g;
            };
            if g.degree(v) == 2 {
                let a = g.0[v].trailing_zeros() as usize;
                let b = 63 - g.0[v].leading_zeros() as usize;
                g.0[a] |= 1 << b;
                g.0[b] |= 1 << a;
            }
            let nbrs = g.0[v];
            for w in 0..g.n() {
                if nbrs & (1 << w) != 0 {
                    g.0[w] &= !(1 << v);
                }
            }
            g.remove(v);
        }
    }

    fn run(&mut self, g: Masks) -> bool {
        let g = self.reduce(g);
        if g.n() < self.pattern.n() || g.edge_count() < self.pattern.edge_count() {
            return false;
        }
        if contains_subgraph(&g, self.pattern) {
            return true;
        }
        if g.n() == self.pattern.n() || !self.seen.insert(canonical_form(&g.to_graph())) {
            return false;
        }
        for u in 0..g.n() {
            let mut bits = g.0[u] & !((2u64 << u) - 1);
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if self.run(g.contract(u, v)) {
                    return true;
                }
            }
        }
        false
    }
}

/// Is `pattern` a (not necessarily induced) subgraph of `host`?
fn contains_subgraph(host: &Masks, pattern: &Masks) -> bool {
    let mut map = vec![usize::MAX; pattern.n()];
    place(host, pattern, 0, 0, &mut map)
}

fn place(host: &Masks, pattern: &Masks, i: usize, used: u64, map: &mut [usize]) -> bool {
    if i == pattern.n() {
        return true;
    }
    let need = pattern.degree(i);
    for x in 0..host.n() {
        if used & (1 << x) != 0 || host.degree(x) < need {
            continue;
        }
        let ok = (0..i).all(|j| pattern.0[i] & (1 << j) == 0 || host.0[x] & (1 << map[j]) != 0);
        if ok {
            map[i] = x;
            if place(host, pattern, i + 1, used | (1 << x), map) {
                return true;
            }
        }
    }
    false
}
