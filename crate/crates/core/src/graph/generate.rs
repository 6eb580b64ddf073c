use std::collections::BTreeSet;

use super::canon::{canonical_form, CanonicalForm};
use super::{Graph, GraphError};

pub const GENERATION_CAP: usize = 8;

/// Every connected simple graph on exactly `n` vertices, once per isomorphism
/// class, in canonical-form order. Graphs are returned canonically labelled.
///
/// Built level by level: each connected graph on `n` vertices has a non-cut
/// vertex, so extending every connected `(n-1)`-vertex graph by a new vertex
/// with every non-empty neighbourhood reaches all classes.
pub fn generate_connected_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, GraphError> {
    if n > GENERATION_CAP {
        return Err(GraphError::TooLarge {
            what: "vertex count",
            actual: n,
            cap: GENERATION_CAP,
        });
    }
    Ok(level(n).into_iter().map(|c| c.to_graph()))
}

/// Connected graphs on `1..=n` vertices, grouped by size.
pub fn generate_connected_graphs_up_to(n: usize) -> Result<Vec<Graph>, GraphError> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(generate_connected_graphs(k)?);
    }
    Ok(out)
}

fn level(n: usize) -> BTreeSet<CanonicalForm> {
    let mut current: BTreeSet<CanonicalForm> = BTreeSet::new();
    if n == 0 {
        return current;
    }
    current.insert(canonical_form(&Graph::new(1)));
    for k in 2..=n {
        let mut next = BTreeSet::new();
        for form in &current {
            let base = form.to_graph();
            for subset in 1u64..(1 << (k - 1)) {
                let mut g = base.clone();
                let v = g.add_vertex();
                for u in 0..k - 1 {
                    if subset & (1 << u) != 0 {
                        g.add_edge(u, v).expect("valid");
                    }
                }
                next.insert(canonical_form(&g));
            }
        }
        current = next;
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| generate_connected_graphs(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
        assert!(generate_connected_graphs(9).is_err());
    }
}
