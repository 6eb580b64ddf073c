use std::collections::BTreeSet;

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex set of every block, sorted. Isolated vertices form singleton blocks.
    pub blocks: Vec<Vec<usize>>,
    /// Edge positions (into `Graph::edges`) belonging to each block.
    pub block_edges: Vec<Vec<usize>>,
    pub cut_vertices: BTreeSet<usize>,
}

/// Block-cut decomposition (Hopcroft-Tarjan over an edge stack). Every edge lies
/// in exactly one block; cut vertices are the vertices lying in two or more.
pub fn blocks(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut st = State {
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        time: 0,
        edge_stack: Vec::new(),
        found: Vec::new(),
    };
    for s in 0..n {
        if st.disc[s] == usize::MAX {
            if g.degree(s) == 0 {
                st.disc[s] = st.time;
                st.time += 1;
                st.found.push((vec![s], Vec::new()));
            } else {
                dfs(g, s, None, &mut st);
            }
        }
    }
    let mut membership = vec![0usize; n];
    let mut blocks = Vec::new();
    let mut block_edges = Vec::new();
    for (mut vs, mut es) in st.found {
        vs.sort_unstable();
        vs.dedup();
        es.sort_unstable();
        for &v in &vs {
            membership[v] += 1;
        }
        blocks.push(vs);
        block_edges.push(es);
    }
    let cut_vertices = (0..n).filter(|&v| membership[v] >= 2).collect();
    BlockDecomposition {
        blocks,
        block_edges,
        cut_vertices,
    }
}

struct State {
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    edge_stack: Vec<usize>,
    found: Vec<(Vec<usize>, Vec<usize>)>,
}

fn dfs(g: &Graph, v: usize, parent_edge: Option<usize>, st: &mut State) {
    st.disc[v] = st.time;
    st.low[v] = st.time;
    st.time += 1;
    for &(w, pos) in g.incidences(v) {
        if Some(pos) == parent_edge {
            continue;
        }
        if st.disc[w] == usize::MAX {
            st.edge_stack.push(pos);
            dfs(g, w, Some(pos), st);
            st.low[v] = st.low[v].min(st.low[w]);
            if st.low[w] >= st.disc[v] {
                let mut vs = Vec::new();
                let mut es = Vec::new();
                while let Some(p) = st.edge_stack.pop() {
                    let e = g.edges()[p];
                    vs.push(e.u);
                    vs.push(e.v);
                    es.push(p);
                    if p == pos {
                        break;
                    }
                }
                st.found.push((vs, es));
            }
        } else if st.disc[w] < st.disc[v] {
            st.edge_stack.push(pos);
            st.low[v] = st.low[v].min(st.disc[w]);
        }
    }
}

/// True iff every block is complete (`K1`, `K2` included) or a chordless cycle.
pub fn blocks_all_complete_or_cycle(g: &Graph) -> Result<bool, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let dec = blocks(g);
    Ok(dec
        .blocks
        .iter()
        .zip(&dec.block_edges)
        .all(|(vs, es)| block_is_complete(g, vs, es) || block_is_cycle(g, vs, es)))
}

fn block_is_complete(g: &Graph, vs: &[usize], es: &[usize]) -> bool {
    let k = vs.len();
    if es.len() != k * (k - 1) / 2 {
        return false;
    }
    vs.iter()
        .enumerate()
        .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.multiplicity(a, b) == 1))
}

fn block_is_cycle(g: &Graph, vs: &[usize], es: &[usize]) -> bool {
    // A biconnected block whose internal degrees are all 2 is a cycle
    // (a doubled edge counts as a 2-cycle).
    if vs.len() < 2 || es.len() != vs.len() {
        return false;
    }
    let mut deg = std::collections::HashMap::new();
    for &p in es {
        let e = g.edges()[p];
        *deg.entry(e.u).or_insert(0) += 1;
        *deg.entry(e.v).or_insert(0) += 1;
    }
    deg.values().all(|&d| d == 2)
}
