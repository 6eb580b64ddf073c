use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{ConfigSpec, Host, Shape};
use crate::graph::ConfigurationMatch;
use crate::plane::clusters;

/// What an occurrence covers in the host. Two matches with the same key are
/// the same occurrence up to a pattern automorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ImageKey {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<usize>,
}

pub fn image_key(spec: &ConfigSpec, m: &ConfigurationMatch) -> ImageKey {
    let map = &m.vertex_map;
    let pairs: Vec<(usize, usize)> = match &spec.shape {
        Shape::Pattern(p) => p.edges().iter().map(|e| (map[e.u], map[e.v])).collect(),
        Shape::AlternatingCycle { .. } => (0..map.len()).map(|i| (map[i], map[(i + 1) % map.len()])).collect(),
    };
    let vertices: BTreeSet<usize> = map.iter().copied().collect();
    let edges: BTreeSet<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
    let faces: BTreeSet<usize> = m.face_map.iter().copied().collect();
    ImageKey {
        vertices: vertices.into_iter().collect(),
        edges: edges.into_iter().collect(),
        faces: faces.into_iter().collect(),
    }
}

/// Re-checks every constraint of `spec` for `m` directly against the host.
pub fn validate<'a>(host: impl Into<Host<'a>>, spec: &ConfigSpec, m: &ConfigurationMatch) -> Result<(), String> {
    let host = host.into();
    let g = host.graph();
    let n = g.n();
    let delta = g.max_degree();
    let map = &m.vertex_map;
    let deg = |p: usize| g.degree(map[p]);
    if m.config != spec.name {
        return Err(format!("match names {}, spec is {}", m.config, spec.name));
    }
    if let Some(&v) = map.iter().find(|&&v| v >= n) {
        return Err(format!("vertex {v} is not in the host"));
    }

    let pattern = match &spec.shape {
        Shape::AlternatingCycle { odd, even } => {
            let l = map.len();
            if l < 4 || l % 2 == 1 {
                return Err(format!("alternating cycle of length {l}"));
            }
            if map.iter().collect::<BTreeSet<_>>().len() != l {
                return Err("cycle repeats a vertex".into());
            }
            for i in 0..l {
                if !g.has_edge(map[i], map[(i + 1) % l]) {
                    return Err(format!("{} and {} are not adjacent", map[i], map[(i + 1) % l]));
                }
                let c = if i % 2 == 0 { odd } else { even };
                if !c.admits(g.degree(map[i]), delta) {
                    return Err(format!("position {i} has degree {}", g.degree(map[i])));
                }
            }
            if !m.face_map.is_empty() {
                return Err("cycle matches carry no faces".into());
            }
            return Ok(());
        }
        Shape::Pattern(p) => p,
    };

    if map.len() != pattern.n() {
        return Err(format!("map has {} entries, pattern has {}", map.len(), pattern.n()));
    }
    for a in 0..map.len() {
        for b in a + 1..map.len() {
            if map[a] == map[b] && !spec.may_coincide.contains(&(a, b)) {
                return Err(format!("pattern vertices {a} and {b} share host vertex {}", map[a]));
            }
        }
    }
    for e in pattern.edges() {
        if !g.has_edge(map[e.u], map[e.v]) {
            return Err(format!("pattern edge {}-{} is missing", e.u, e.v));
        }
    }
    for (p, c) in spec.degrees.iter().enumerate() {
        if !c.admits(deg(p), delta) {
            return Err(format!("pattern vertex {p} has degree {}", deg(p)));
        }
    }
    for s in &spec.sums {
        let bound = s.bound.resolve(delta);
        if deg(s.a) + deg(s.b) > bound {
            return Err(format!("degree sum exceeds {bound}"));
        }
    }
    for s in &spec.mins {
        if deg(s.a).min(deg(s.b)) > s.bound {
            return Err(format!("smaller degree exceeds {}", s.bound));
        }
    }
    for s in &spec.few_above {
        let count = s.vertices.iter().filter(|&&p| deg(p) > s.above).count();
        if count > s.at_most {
            return Err(format!("{count} vertices above degree {}", s.above));
        }
    }
    for s in &spec.multisets {
        let mut d: Vec<usize> = s.vertices.iter().map(|&p| deg(p)).collect();
        d.sort_unstable();
        if d != s.degrees {
            return Err(format!("degree multiset {d:?}"));
        }
    }

    if !spec.requires_plane() {
        return if m.face_map.is_empty() {
            Ok(())
        } else {
            Err("faces given for an abstract configuration".into())
        };
    }
    let pg = host.plane().ok_or("configuration needs an embedded host")?;
    let faces = pg.faces();
    let type_of = |f: usize| {
        let mut d: Vec<usize> = faces[f].walk().map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if m.face_map.len() != spec.faces.len() {
        return Err(format!(
            "{} faces given, {} expected",
            m.face_map.len(),
            spec.faces.len()
        ));
    }
    for (fs, &f) in spec.faces.iter().zip(&m.face_map) {
        if f >= faces.len() {
            return Err(format!("face {f} does not exist"));
        }
        let walk: Vec<usize> = faces[f].walk().collect();
        let want: Vec<usize> = fs.boundary.iter().map(|&p| map[p]).collect();
        if !same_cyclic_sequence(&walk, &want) {
            return Err(format!("face {f} has boundary {walk:?}, expected {want:?}"));
        }
        if let Some(t) = &fs.degree_type {
            if &type_of(f) != t {
                return Err(format!("face {f} has degree type {:?}", type_of(f)));
            }
        }
    }
    for s in &spec.incident_faces {
        let v = map[s.vertex];
        let count = (0..faces.len())
            .filter(|&f| faces[f].walk().any(|x| x == v))
            .filter(|&f| faces[f].degree() == s.degree_type.len() && type_of(f) == s.degree_type)
            .count();
        if count < s.at_least {
            return Err(format!("vertex {v} lies on {count} faces of type {:?}", s.degree_type));
        }
    }
    if let Some(cs) = &spec.cluster {
        let target = m.face_map[cs.face];
        let all = clusters(pg);
        let cluster = all
            .iter()
            .find(|c| c.contains(&target))
            .ok_or("cluster face is not a 3-face")?;
        let have: BTreeSet<usize> = cluster.iter().flat_map(|&f| faces[f].walk()).collect();
        let want: BTreeSet<usize> = cs.vertices.iter().map(|&p| map[p]).collect();
        if have != want {
            return Err(format!("cluster spans {have:?}, expected {want:?}"));
        }
    }
    Ok(())
}

/// Equal as cyclic sequences, in either direction.
fn same_cyclic_sequence(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let l = a.len();
    let mut rev = b.to_vec();
    rev.reverse();
    [b.to_vec(), rev]
        .iter()
        .any(|s| (0..l).any(|shift| (0..l).all(|i| a[i] == s[(i + shift) % l])))
}
