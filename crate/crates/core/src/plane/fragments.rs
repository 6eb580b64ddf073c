//! Planar embedding of each block by repeated fragment insertion: start from
//! a cycle, and while some part of the block is missing, route a path of the
//! most constrained fragment through a face containing all its attachments.

use std::collections::{HashMap, VecDeque};

use crate::graph::{blocks, Graph};

/// A rotation system for the simple graph `g`, or `None` if it is not planar.
/// Rotations of different blocks are concatenated at cut vertices.
pub(super) fn planar_rotations(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let dec = blocks(g);
    let mut rot = vec![Vec::new(); g.n()];
    for (vs, es) in dec.blocks.iter().zip(&dec.block_edges) {
        if es.is_empty() {
            continue;
        }
        let local = |x: usize| vs.binary_search(&x).expect("endpoint in block");
        let pairs: Vec<(usize, usize)> = es
            .iter()
            .map(|&p| {
                let e = &g.edges()[p];
                (local(e.u), local(e.v))
            })
            .collect();
        let block = embed_block(vs.len(), &pairs)?;
        for (i, r) in block.into_iter().enumerate() {
            rot[vs[i]].extend(r.into_iter().map(|j| vs[j]));
        }
    }
    Some(rot)
}

/// Embeds a 2-connected graph (or a single edge) on vertices `0..k`.
fn embed_block(k: usize, pairs: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); k];
    for &(u, v) in pairs {
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    if pairs.len() == 1 {
        return Some(adj);
    }
    let mut in_h = vec![false; k];
    let mut h_edge = vec![vec![false; k]; k];
    let cycle = initial_cycle(&adj, pairs[0]);
    for (i, &v) in cycle.iter().enumerate() {
        let w = cycle[(i + 1) % cycle.len()];
        in_h[v] = true;
        h_edge[v][w] = true;
        h_edge[w][v] = true;
    }
    let mut faces = vec![cycle.clone(), cycle.into_iter().rev().collect::<Vec<_>>()];

    loop {
        let frags = fragments(&adj, &in_h, &h_edge);
        if frags.is_empty() {
            break;
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attach.iter().all(|a| faces[f].contains(a)))
                .collect();
            if admissible.is_empty() {
                return None;
            }
            if best.is_none_or(|(_, _, c)| admissible.len() < c) {
                best = Some((fi, admissible[0], admissible.len()));
            }
        }
        let (fi, face, _) = best.expect("some fragment");
        let path = frags[fi].path(&adj, &in_h);
        for w in path.windows(2) {
            in_h[w[0]] = true;
            in_h[w[1]] = true;
            h_edge[w[0]][w[1]] = true;
            h_edge[w[1]][w[0]] = true;
        }
        let (f1, f2) = split_face(&faces[face], &path);
        faces[face] = f1;
        faces.push(f2);
    }

    // w follows u in the rotation at v whenever u, v, w are consecutive on a face
    let mut next: HashMap<(usize, usize), usize> = HashMap::new();
    for f in &faces {
        let l = f.len();
        for i in 0..l {
            next.insert((f[(i + 1) % l], f[i]), f[(i + 2) % l]);
        }
    }
    let rot = (0..k)
        .map(|v| {
            let mut r = vec![adj[v][0]];
            while r.len() < adj[v].len() {
                r.push(next[&(v, *r.last().expect("non-empty"))]);
            }
            r
        })
        .collect();
    Some(rot)
}

/// A cycle through edge `(a, b)`: `a`, `b`, then a shortest path back to `a`
/// avoiding that edge.
fn initial_cycle(adj: &[Vec<usize>], (a, b): (usize, usize)) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[b] = b;
    let mut queue = VecDeque::from([b]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if prev[y] == usize::MAX && !(x == b && y == a) {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut back = vec![a];
    let mut x = a;
    while x != b {
        x = prev[x];
        back.push(x);
    }
    // back runs a .. b along the path; the cycle is a, b, ..., back to a
    back.reverse();
    let mut cycle = vec![a];
    cycle.extend(back.into_iter().take_while(|&x| x != a));
    cycle
}

struct Fragment {
    /// Sorted attachment vertices in the current subgraph.
    attach: Vec<usize>,
    /// Vertices outside the subgraph; empty for a chord.
    inner: Vec<usize>,
}

impl Fragment {
    /// A path between two distinct attachments through the fragment.
    fn path(&self, adj: &[Vec<usize>], in_h: &[bool]) -> Vec<usize> {
        let a = self.attach[0];
        if self.inner.is_empty() {
            return vec![a, self.attach[1]];
        }
        let mut prev: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for &y in &adj[a] {
            if !in_h[y] && self.inner.binary_search(&y).is_ok() {
                prev.insert(y, a);
                queue.push_back(y);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if in_h[y] && y != a {
                    let mut path = vec![y, x];
                    let mut z = x;
                    while z != a {
                        z = prev[&z];
                        path.push(z);
                    }
                    path.reverse();
                    return path;
                }
                if !in_h[y] && !prev.contains_key(&y) {
                    prev.insert(y, x);
                    queue.push_back(y);
                }
            }
        }
        unreachable!("a fragment of a 2-connected graph has two attachments")
    }
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], h_edge: &[Vec<bool>]) -> Vec<Fragment> {
    let k = adj.len();
    let mut out = Vec::new();
    for u in 0..k {
        for &v in &adj[u] {
            if u < v && in_h[u] && in_h[v] && !h_edge[u][v] {
                out.push(Fragment {
                    attach: vec![u, v],
                    inner: Vec::new(),
                });
            }
        }
    }
    let mut seen = vec![false; k];
    for s in 0..k {
        if in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut inner = vec![s];
        let mut attach = Vec::new();
        let mut i = 0;
        while i < inner.len() {
            let x = inner[i];
            i += 1;
            for &y in &adj[x] {
                if in_h[y] {
                    attach.push(y);
                } else if !seen[y] {
                    seen[y] = true;
                    inner.push(y);
                }
            }
        }
        inner.sort_unstable();
        attach.sort_unstable();
        attach.dedup();
        out.push(Fragment { attach, inner });
    }
    out
}

/// Splits the oriented face cycle `face` along `path`, whose ends lie on it.
/// Both halves keep the face's orientation, so the new path is walked once in
/// each direction.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let l = face.len();
    let (a, b) = (path[0], *path.last().expect("path has two ends"));
    let i = face.iter().position(|&x| x == a).expect("a on face");
    let j = face.iter().position(|&x| x == b).expect("b on face");
    let arc = |from: usize, to: usize| -> Vec<usize> {
        let mut out = vec![face[from]];
        let mut x = from;
        while x != to {
            x = (x + 1) % l;
            out.push(face[x]);
        }
        out
    };
    let inner = &path[1..path.len() - 1];
    let mut f1 = arc(i, j);
    f1.extend(inner.iter().rev());
    let mut f2 = arc(j, i);
    f2.extend(inner.iter());
    (f1, f2)
}
