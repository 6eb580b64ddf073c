use super::{EdgeId, Graph, GraphError};

pub const CHROMATIC_INDEX_EDGE_CAP: usize = 20;

/// Line graph. Vertex `i` of the result stands for `g.edges()[i]`; two vertices
/// are adjacent iff the underlying edges share at least one endpoint. Parallel
/// edges of `g` become adjacent vertices, and the result is always simple.
pub fn line_graph(g: &Graph) -> Result<Graph, GraphError> {
    if g.m() == 0 {
        return Err(GraphError::NoEdges);
    }
    let edges = g.edges();
    let mut lg = Graph::new(edges.len());
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = (&edges[i], &edges[j]);
            if a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v {
                lg.add_edge(i, j).expect("valid");
            }
        }
    }
    Ok(lg)
}

/// An edge minimising `d(u) + d(v)`, with that sum. Ties go to the earliest edge.
pub fn min_degree_sum_edge(g: &Graph) -> Result<(EdgeId, usize), GraphError> {
    g.edges()
        .iter()
        .map(|e| (e.id, g.degree(e.u) + g.degree(e.v)))
        .min_by_key(|&(id, s)| (s, id))
        .ok_or(GraphError::NoEdges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrder {
    /// Elimination order: each vertex had minimum degree when removed.
    pub order: Vec<usize>,
    pub degeneracy: usize,
}

impl DegeneracyOrder {
    /// The order in which a greedy colouring should visit the vertices.
    pub fn coloring_order(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().rev().copied()
    }
}

/// Repeated minimum-degree elimination (ties broken by smallest vertex id).
/// The degeneracy is the largest degree seen at removal time; colouring along
/// the reverse order, every vertex sees at most that many coloured neighbours.
pub fn degeneracy_order(g: &Graph) -> DegeneracyOrder {
    let n = g.n();
    let mut deg = g.degrees();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertex remains");
        degeneracy = degeneracy.max(deg[v]);
        removed[v] = true;
        order.push(v);
        for &(w, _) in g.incidences(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    DegeneracyOrder { order, degeneracy }
}

/// Exact chromatic index by backtracking over proper edge colourings.
pub fn chromatic_index(g: &Graph) -> Result<usize, GraphError> {
    if g.m() > CHROMATIC_INDEX_EDGE_CAP {
        return Err(GraphError::TooLarge {
            what: "edge count",
            actual: g.m(),
            cap: CHROMATIC_INDEX_EDGE_CAP,
        });
    }
    let delta = g.max_degree();
    if g.m() == 0 {
        return Ok(0);
    }
    // Colour edges in BFS-ish order so that conflicts surface early.
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.sort_by_key(|&i| {
        let e = &g.edges()[i];
        (e.u.min(e.v), e.u.max(e.v))
    });
    let mut k = delta;
    loop {
        let mut used = vec![0u64; g.n()];
        if edge_color(g, &order, 0, k, &mut used) {
            if g.is_simple() {
                debug_assert!(k <= delta + 1, "Vizing bound violated");
            }
            return Ok(k);
        }
        k += 1;
    }
}

fn edge_color(g: &Graph, order: &[usize], i: usize, k: usize, used: &mut [u64]) -> bool {
    let Some(&pos) = order.get(i) else {
        return true;
    };
    let e = g.edges()[pos];
    let busy = used[e.u] | used[e.v];
    // Symmetry: the first edge may take colour 0 only.
    let limit = if i == 0 { 1 } else { k };
    for c in 0..limit {
        if busy & (1 << c) != 0 {
            continue;
        }
        used[e.u] |= 1 << c;
        used[e.v] |= 1 << c;
        if edge_color(g, order, i + 1, k, used) {
            return true;
        }
        used[e.u] &= !(1 << c);
        used[e.v] &= !(1 << c);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn line_graph_small_cases() {
        let lp = line_graph(&path(3)).unwrap();
        assert_eq!((lp.n(), lp.m()), (3, 2));
        for n in 3..=6 {
            let lc = line_graph(&cycle(n)).unwrap();
            assert_eq!((lc.n(), lc.m()), (n, n));
            assert!(lc.degrees().iter().all(|&d| d == 2));
            assert!(lc.is_connected());
        }
        assert_eq!(line_graph(&Graph::new(3)), Err(GraphError::NoEdges));
    }

    #[test]
    fn line_graph_of_k4_is_octahedron() {
        let lk4 = line_graph(&complete(4)).unwrap();
        assert_eq!((lk4.n(), lk4.m()), (6, 12));
        assert!(lk4.degrees().iter().all(|&d| d == 4));
        // octahedron: every vertex has exactly one non-neighbour
        for v in 0..6 {
            assert_eq!(lk4.neighbors(v).len(), 4);
        }
    }

    #[test]
    fn parallel_edges_become_adjacent() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        let lg = line_graph(&g).unwrap();
        assert!(lg.is_simple());
        assert_eq!(lg.m(), 3);
    }

    #[test]
    fn degree_sum_edges() {
        assert_eq!(min_degree_sum_edge(&complete(4)).unwrap().1, 6);
        assert_eq!(min_degree_sum_edge(&star(5)).unwrap().1, 6);
        assert_eq!(min_degree_sum_edge(&petersen()).unwrap().1, 6);
        assert_eq!(min_degree_sum_edge(&Graph::new(2)), Err(GraphError::NoEdges));
    }

    #[test]
    fn degeneracy_values() {
        assert_eq!(degeneracy_order(&star(4)).degeneracy, 1);
        assert_eq!(degeneracy_order(&path(5)).degeneracy, 1);
        for n in 3..8 {
            assert_eq!(degeneracy_order(&cycle(n)).degeneracy, 2);
        }
        assert_eq!(degeneracy_order(&line_graph(&complete(4)).unwrap()).degeneracy, 4);
        assert_eq!(degeneracy_order(&Graph::new(3)).degeneracy, 0);
    }

    #[test]
    fn chromatic_index_values() {
        assert_eq!(chromatic_index(&cycle(4)).unwrap(), 2);
        assert_eq!(chromatic_index(&cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_index(&complete(4)).unwrap(), 3);
        assert_eq!(chromatic_index(&petersen()).unwrap(), 4);
        assert_eq!(chromatic_index(&complete(5)).unwrap(), 5);
        assert!(matches!(
            chromatic_index(&complete(7)),
            Err(GraphError::TooLarge { .. })
        ));
    }
}
