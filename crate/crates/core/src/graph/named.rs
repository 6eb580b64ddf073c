//! Small named graphs used throughout the tests and catalogs.

use super::Graph;

/// Path with `len` edges (so `len + 1` vertices).
pub fn path(len: usize) -> Graph {
    let mut g = Graph::new(len + 1);
    for i in 0..len {
        g.add_edge(i, i + 1).expect("valid");
    }
    g
}

/// Cycle on `n >= 3` vertices `0-1-...-(n-1)-0`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut g = Graph::new(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n).expect("valid");
    }
    g
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).expect("valid");
        }
    }
    g
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v).expect("valid");
        }
    }
    g
}

/// `K_{1,k}` centred at vertex 0.
pub fn star(k: usize) -> Graph {
    complete_bipartite(1, k)
}

/// `K_{2,3}` plus an edge joining two of its degree-2 vertices.
pub fn k23_plus() -> Graph {
    let mut g = complete_bipartite(2, 3);
    g.add_edge(2, 3).expect("valid");
    g
}

/// Two triangles sharing vertex 0.
pub fn bowtie() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).expect("valid")
}

pub fn petersen() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5).expect("valid");
        g.add_edge(i, i + 5).expect("valid");
        g.add_edge(5 + i, 5 + (i + 2) % 5).expect("valid");
    }
    g
}

/// Wheel: hub 0 joined to the rim cycle `1..=k`.
pub fn wheel(k: usize) -> Graph {
    let mut g = Graph::new(k + 1);
    for i in 0..k {
        g.add_edge(0, i + 1).expect("valid");
        g.add_edge(i + 1, (i + 1) % k + 1).expect("valid");
    }
    g
}

/// Triangular prism.
pub fn prism() -> Graph {
    Graph::from_edges(
        6,
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
    .expect("valid")
}

/// The configuration graph with a 4-vertex `v = 0` on two triangles
/// `0-1-2` and `0-3-4`. Edges are inserted in the order
/// `e1 = v v1, e2 = v v2, e3 = v v3, e4 = v v4, e5 = v3 v4, e6 = v1 v2`.
pub fn g1() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (3, 4), (1, 2)]).expect("valid")
}
