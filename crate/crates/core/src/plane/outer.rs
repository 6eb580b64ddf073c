use serde::{Deserialize, Serialize};

use super::PlaneGraph;
use crate::graph::{enumerate_cycles, has_minor, Graph, GraphError, MinorName};

/// Outerplanarity via the forbidden minors K4 and K2,3.
pub fn is_outerplanar(g: &Graph) -> Result<bool, GraphError> {
    Ok(!has_minor(g, MinorName::K4)? && !has_minor(g, MinorName::K23)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleKind {
    /// No chord.
    Hole,
    /// At least one chord.
    Net,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KCycle {
    /// Starts at the smallest vertex; the second vertex is smaller than the
    /// last.
    pub vertices: Vec<usize>,
    pub kind: CycleKind,
    pub chords: Vec<(usize, usize)>,
}

/// Every `k`-cycle of `g`, labelled hole or net.
pub fn find_k_net_or_hole(g: &Graph, k: usize) -> Vec<KCycle> {
    let mut out = Vec::new();
    if k < 3 || k > g.n() {
        return out;
    }
    enumerate_cycles(g, k, |cyc| {
        if cyc.len() == k {
            let mut chords = Vec::new();
            for i in 0..k {
                for j in i + 2..k {
                    if i == 0 && j == k - 1 {
                        continue;
                    }
                    if g.has_edge(cyc[i], cyc[j]) {
                        let (a, b) = (cyc[i].min(cyc[j]), cyc[i].max(cyc[j]));
                        chords.push((a, b));
                    }
                }
            }
            chords.sort_unstable();
            out.push(KCycle {
                vertices: cyc.to_vec(),
                kind: if chords.is_empty() {
                    CycleKind::Hole
                } else {
                    CycleKind::Net
                },
                chords,
            });
        }
        true
    });
    out
}

/// Connected components of the graph on 3-faces in which two faces are
/// adjacent when they share an edge. Each cluster lists face indices in
/// increasing order; clusters are ordered by their first face.
pub fn clusters(pg: &PlaneGraph) -> Vec<Vec<usize>> {
    let faces = pg.faces();
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let is_tri = |i: usize| faces[i].degree() == 3;
    for (i, f) in faces.iter().enumerate() {
        if !is_tri(i) {
            continue;
        }
        for &(u, v) in &f.darts {
            let j = pg.face_of_dart(v, u).expect("reverse dart exists");
            if is_tri(j) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; faces.len()];
    for i in (0..faces.len()).filter(|&i| is_tri(i)) {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}
