use super::fragments::planar_rotations;
use super::{PlaneError, PlaneGraph};
use crate::graph::Graph;

pub const EMBED_VERTEX_CAP: usize = 10;

const NONE: usize = usize::MAX;

/// A plane embedding of `g`, or `None` iff `g` is not planar. Blocks are
/// embedded by fragment insertion and glued at cut vertices.
pub fn embed_small(g: &Graph) -> Result<Option<PlaneGraph>, PlaneError> {
    check_cap(g, EMBED_VERTEX_CAP)?;
    match planar_rotations(g) {
        Some(rot) => Ok(Some(PlaneGraph::new(g.clone(), rot)?)),
        None => Ok(None),
    }
}

/// [`embed_small`] without the vertex cap.
pub fn embed_planar(g: &Graph) -> Result<Option<PlaneGraph>, PlaneError> {
    g.require_simple()?;
    match planar_rotations(g) {
        Some(rot) => Ok(Some(PlaneGraph::new(g.clone(), rot)?)),
        None => Ok(None),
    }
}

/// Same contract as [`embed_small`], but by backtracking over rotation
/// systems. Exponential; kept as an independent check.
pub fn embed_by_rotation_search(g: &Graph) -> Result<Option<PlaneGraph>, PlaneError> {
    check_cap(g, EMBED_VERTEX_CAP)?;
    match rotations(g) {
        Some(rot) => Ok(Some(PlaneGraph::new(g.clone(), rot)?)),
        None => Ok(None),
    }
}

fn check_cap(g: &Graph, cap: usize) -> Result<(), PlaneError> {
    g.require_simple()?;
    if g.n() > cap {
        return Err(PlaneError::TooLarge { actual: g.n(), cap });
    }
    Ok(())
}

/// An embedding with every vertex of a component on one face, found by
/// embedding `g` plus an apex vertex and deleting the apex. `None` iff `g` is
/// not outerplanar. Allows one vertex fewer than [`embed_small`].
pub fn outerplanar_embedding(g: &Graph) -> Result<Option<PlaneGraph>, PlaneError> {
    check_cap(g, EMBED_VERTEX_CAP - 1)?;
    let n = g.n();
    if n >= 2 && g.m() > 2 * n - 3 {
        return Ok(None);
    }
    let mut h = g.clone();
    let apex = h.add_vertex();
    for v in 0..n {
        h.add_edge(v, apex)?;
    }
    let Some(mut rot) = planar_rotations(&h) else {
        return Ok(None);
    };
    rot.pop();
    for r in &mut rot {
        r.retain(|&w| w != apex);
    }
    Ok(Some(PlaneGraph::new(g.clone(), rot)?))
}

fn rotations(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let mut rot: Vec<Vec<usize>> = g.vertices().map(|v| g.neighbors(v)).collect();
    let comp = g.components();
    let k = comp.iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..k {
        let verts: Vec<usize> = g.vertices().filter(|&v| comp[v] == c).collect();
        let edges = verts.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        let nv = verts.len();
        // cycle rank at most 1: every rotation system is planar
        if edges <= nv {
            continue;
        }
        if edges > 3 * nv - 6 {
            return None;
        }
        let mut s = Search::new(g, &verts, edges);
        if !s.place(0) {
            return None;
        }
        for &v in &verts {
            rot[v] = s.rot[v].iter().map(|&j| s.nbrs[v][j]).collect();
        }
    }
    Some(rot)
}

/// Builds rotations vertex by vertex. Darts are numbered `off[v] + i` for
/// `(v, nbrs[v][i])`; `succ` is the partial face successor map.
struct Search {
    order: Vec<usize>,
    nbrs: Vec<Vec<usize>>,
    off: Vec<usize>,
    rev: Vec<usize>,
    tail: Vec<usize>,
    succ: Vec<usize>,
    /// Faces of a 2-connected plane graph are cycles, so partial walks may
    /// not repeat a vertex.
    simple_faces: bool,
    rot: Vec<Vec<usize>>,
    target: usize,
}

impl Search {
    fn new(g: &Graph, verts: &[usize], edges: usize) -> Self {
        let n = g.n();
        let nbrs: Vec<Vec<usize>> = g.vertices().map(|v| g.neighbors(v)).collect();
        let mut off = vec![0; n + 1];
        for v in 0..n {
            off[v + 1] = off[v] + nbrs[v].len();
        }
        let mut rev = vec![NONE; off[n]];
        let mut tail = vec![NONE; off[n]];
        for v in 0..n {
            for (i, &w) in nbrs[v].iter().enumerate() {
                let j = nbrs[w].binary_search(&v).expect("symmetric adjacency");
                rev[off[v] + i] = off[w] + j;
                tail[off[v] + i] = v;
            }
        }
        // breadth first from a vertex of maximum degree
        let start = *verts
            .iter()
            .max_by_key(|&&v| (nbrs[v].len(), std::cmp::Reverse(v)))
            .expect("non-empty component");
        let mut order = vec![start];
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &nbrs[v] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        let succ = vec![NONE; off[n]];
        Search {
            order,
            nbrs,
            off,
            rev,
            tail,
            succ,
            simple_faces: biconnected(g, verts),
            rot: vec![Vec::new(); n],
            target: edges + 2 - verts.len(),
        }
    }

    fn place(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let v = self.order[i];
        self.rot[v].clear();
        self.rot[v].push(0);
        if self.extend(i, v, 1) {
            return true;
        }
        self.rot[v].clear();
        false
    }

    fn extend(&mut self, i: usize, v: usize, used: u64) -> bool {
        let d = self.nbrs[v].len();
        let last = *self.rot[v].last().expect("rotation starts with index 0");
        let arriving = self.rev[self.off[v] + last];
        if self.rot[v].len() == d {
            // mirror images embed equally, so fix the orientation at the root
            if i == 0 && d >= 3 && self.rot[v][1] > last {
                return false;
            }
            self.succ[arriving] = self.off[v];
            if self.feasible() && self.place(i + 1) {
                return true;
            }
            self.succ[arriving] = NONE;
            return false;
        }
        for j in 1..d {
            if used >> j & 1 == 1 {
                continue;
            }
            self.succ[arriving] = self.off[v] + j;
            self.rot[v].push(j);
            if self.feasible() && self.extend(i, v, used | 1 << j) {
                return true;
            }
            self.rot[v].pop();
        }
        self.succ[arriving] = NONE;
        false
    }

    /// Closed orbits are final faces; every face still to close uses at least
    /// one open chain and at least three open darts.
    fn feasible(&self) -> bool {
        let darts = *self.off.last().expect("offsets");
        let mut has_pred = vec![false; darts];
        let mut in_comp = vec![false; darts];
        for &v in &self.order {
            for d in self.off[v]..self.off[v + 1] {
                in_comp[d] = true;
                if self.succ[d] != NONE {
                    has_pred[self.succ[d]] = true;
                }
            }
        }
        let mut visited = vec![false; darts];
        let (mut chains, mut open) = (0, 0);
        for d in 0..darts {
            if !in_comp[d] || has_pred[d] {
                continue;
            }
            chains += 1;
            let mut x = d;
            let mut seen = 0u64;
            loop {
                visited[x] = true;
                open += 1;
                let bit = 1u64 << self.tail[x];
                if self.simple_faces && seen & bit != 0 {
                    return false;
                }
                seen |= bit;
                if self.succ[x] == NONE {
                    break;
                }
                x = self.succ[x];
            }
            // the head of the last dart may only close the walk
            let head = self.tail[self.rev[x]];
            if self.simple_faces && head != self.tail[d] && seen >> head & 1 == 1 {
                return false;
            }
        }
        let mut closed = 0;
        for d in 0..darts {
            if !in_comp[d] || visited[d] {
                continue;
            }
            closed += 1;
            let mut x = d;
            let mut seen = 0u64;
            while !visited[x] {
                visited[x] = true;
                let bit = 1u64 << self.tail[x];
                if self.simple_faces && seen & bit != 0 {
                    return false;
                }
                seen |= bit;
                x = self.succ[x];
            }
        }
        closed + chains.min(open / 3) >= self.target
    }
}

/// True if the component on `verts` has at least three vertices and no cut
/// vertex.
fn biconnected(g: &Graph, verts: &[usize]) -> bool {
    if verts.len() < 3 {
        return false;
    }
    verts.iter().all(|&cut| {
        let rest: Vec<usize> = verts.iter().copied().filter(|&v| v != cut).collect();
        g.induced(&rest).0.is_connected()
    })
}
