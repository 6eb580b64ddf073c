//! Canonical labelling of simple graphs by colour refinement plus
//! individualisation backtracking.
//!
//! The certificate is the adjacency matrix under the best leaf labelling
//! (lexicographically largest row vector). Twins inside a target cell are
//! branched on once, which keeps cliques, empty graphs and stars cheap.

use super::Graph;

/// Isomorphism-invariant form of a simple graph (parallel edges are collapsed).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rebuild the canonically labelled graph.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.rows[u] & (1 << v) != 0 {
                    g.add_edge(u, v).expect("valid");
                }
            }
        }
        g
    }
}

/// Canonical form and the labelling `perm[v] = canonical label of v`.
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.n();
    assert!(n <= 64, "canonical labelling supports n <= 64");
    let masks = g.simplified().adjacency_masks();
    let mut search = Search {
        masks: &masks,
        best: None,
    };
    let colors = refine(&masks, vec![0; n]);
    search.run(colors);
    let (rows, perm) = search.best.expect("at least one leaf");
    (CanonicalForm { n, rows }, perm)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.simplified().m() == b.simplified().m() && canonical_form(a) == canonical_form(b)
}

struct Search<'a> {
    masks: &'a [u64],
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, colors: Vec<usize>) {
        let n = colors.len();
        let k = colors.iter().copied().max().map_or(0, |c| c + 1);
        if k == n {
            let rows = relabel(self.masks, &colors);
            if self.best.as_ref().is_none_or(|(b, _)| rows > *b) {
                self.best = Some((rows, colors));
            }
            return;
        }
        // first non-singleton cell
        let mut size = vec![0usize; k];
        for &c in &colors {
            size[c] += 1;
        }
        let target = (0..k).find(|&c| size[c] > 1).expect("non-discrete");
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..n {
            if colors[v] != target {
                continue;
            }
            if tried.iter().any(|&u| twins(self.masks, u, v)) {
                continue;
            }
            tried.push(v);
            let next: Vec<usize> = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| 2 * c + usize::from(c == target && w != v))
                .collect();
            let next = refine(self.masks, rerank(&next));
            self.run(next);
        }
    }
}

fn twins(masks: &[u64], u: usize, v: usize) -> bool {
    (masks[u] & !(1 << v)) == (masks[v] & !(1 << u))
}

fn relabel(masks: &[u64], perm: &[usize]) -> Vec<u64> {
    let mut rows = vec![0u64; perm.len()];
    for (v, &m) in masks.iter().enumerate() {
        let mut bits = m;
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            rows[perm[v]] |= 1 << perm[w];
        }
    }
    rows
}

fn rerank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut uniq: Vec<T> = keys.to_vec();
    uniq.sort();
    uniq.dedup();
    keys.iter().map(|k| uniq.binary_search(k).expect("present")).collect()
}

/// Equitable refinement. Colours stay ordered consistently with the input
/// colouring, so the result depends only on the isomorphism class of
/// (graph, colouring).
pub(crate) fn refine(masks: &[u64], mut colors: Vec<usize>) -> Vec<usize> {
    let n = colors.len();
    let mut k = colors.iter().copied().max().map_or(0, |c| c + 1);
    loop {
        let sigs: Vec<(usize, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut counts = vec![0u32; k];
                let mut bits = masks[v];
                while bits != 0 {
                    let w = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    counts[colors[w]] += 1;
                }
                (colors[v], counts)
            })
            .collect();
        let next = rerank(&sigs);
        let nk = next.iter().copied().max().map_or(0, |c| c + 1);
        colors = next;
        if nk == k {
            return colors;
        }
        k = nk;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::line_graph;
    use crate::graph::named::*;

    fn relabelled(g: &Graph, perm: &[usize]) -> Graph {
        let mut h = Graph::new(g.n());
        for e in g.edges() {
            h.add_edge(perm[e.u], perm[e.v]).unwrap();
        }
        h
    }

    #[test]
    fn invariant_under_relabelling() {
        let graphs = [petersen(), bowtie(), k23_plus(), wheel(5), prism(), path(4)];
        for g in &graphs {
            let n = g.n();
            let perm: Vec<usize> = (0..n).map(|i| (i * 7 + 3) % n).collect();
            let mut seen = vec![false; n];
            if perm.iter().all(|&p| !std::mem::replace(&mut seen[p], true)) {
                assert_eq!(canonical_form(g), canonical_form(&relabelled(g, &perm)));
            }
            let rev: Vec<usize> = (0..n).rev().collect();
            assert_eq!(canonical_form(g), canonical_form(&relabelled(g, &rev)));
            assert!(are_isomorphic(&canonical_form(g).to_graph(), g));
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        assert!(!are_isomorphic(&path(3), &star(3)));
        assert!(!are_isomorphic(&cycle(6), &cycle(3).disjoint_union(&cycle(3))));
        assert!(!are_isomorphic(&prism(), &complete_bipartite(3, 3)));
    }

    #[test]
    fn line_graph_of_cycle_is_cycle() {
        for n in 3..=8 {
            assert!(are_isomorphic(&line_graph(&cycle(n)).unwrap(), &cycle(n)));
        }
    }

    #[test]
    fn symmetric_graphs_are_cheap() {
        let _ = canonical_form(&complete(16));
        let _ = canonical_form(&Graph::new(16));
        let _ = canonical_form(&complete_bipartite(8, 8));
    }
}
