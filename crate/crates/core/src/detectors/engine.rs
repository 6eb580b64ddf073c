use std::collections::HashSet;

use super::{image_key, ConfigSpec, DegreeConstraint, DetectError, Host, Shape};
use crate::graph::{find_alternating_cycles, AlternationPattern, ConfigurationMatch, Graph};
use crate::plane::{clusters, PlaneGraph};

const NONE: usize = usize::MAX;

/// Every occurrence of `spec` in `host`, one per image (vertex set, edge set
/// and faces), in discovery order.
pub fn find_config<'a>(host: impl Into<Host<'a>>, spec: &ConfigSpec) -> Result<Vec<ConfigurationMatch>, DetectError> {
    let host = host.into();
    let g = host.graph();
    g.require_simple()?;
    if spec.requires_plane() && host.plane().is_none() {
        return Err(DetectError::NeedsEmbedding(spec.name.clone()));
    }
    let raw = match &spec.shape {
        Shape::Pattern(p) => {
            let mut s = PatternSearch::new(host, spec, p);
            s.step(0);
            s.out
        }
        Shape::AlternatingCycle { odd, even } => alternating(g, spec, *odd, *even),
    };
    let mut seen = HashSet::new();
    Ok(raw.into_iter().filter(|m| seen.insert(image_key(spec, m))).collect())
}

fn alternating(g: &Graph, spec: &ConfigSpec, odd: DegreeConstraint, even: DegreeConstraint) -> Vec<ConfigurationMatch> {
    let delta = g.max_degree();
    let odd = |v: usize| odd.admits(g.degree(v), delta);
    let even = |v: usize| even.admits(g.degree(v), delta);
    let pattern = AlternationPattern { odd: &odd, even: &even };
    find_alternating_cycles(g, &pattern, None)
        .into_iter()
        .map(|c| ConfigurationMatch {
            config: spec.name.clone(),
            vertex_map: c,
            face_map: Vec::new(),
        })
        .collect()
}

/// Constraints spanning several pattern vertices, checked once the last of
/// them is placed.
#[derive(Clone, Copy)]
enum Check {
    Sum(usize),
    Min(usize),
    Few(usize),
    Multiset(usize),
    Incident(usize),
}

struct PatternSearch<'a> {
    g: &'a Graph,
    pg: Option<&'a PlaneGraph>,
    spec: &'a ConfigSpec,
    delta: usize,
    order: Vec<usize>,
    /// Earlier pattern neighbours of `order[i]`.
    back: Vec<Vec<usize>>,
    checks: Vec<Vec<Check>>,
    map: Vec<usize>,
    clusters: Option<Vec<Vec<usize>>>,
    out: Vec<ConfigurationMatch>,
}

impl<'a> PatternSearch<'a> {
    fn new(host: Host<'a>, spec: &'a ConfigSpec, p: &'a Graph) -> Self {
        let k = p.n();
        // breadth-first over the pattern so each vertex after the first has a
        // placed neighbour
        let mut order = Vec::with_capacity(k);
        let mut seen = vec![false; k];
        for s in 0..k {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            order.push(s);
            let mut head = order.len() - 1;
            while head < order.len() {
                let x = order[head];
                head += 1;
                for y in p.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        order.push(y);
                    }
                }
            }
        }
        let mut pos = vec![0; k];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .map(|&v| p.neighbors(v).into_iter().filter(|&w| pos[w] < pos[v]).collect())
            .collect();
        let mut checks = vec![Vec::new(); k.max(1)];
        let last = |vs: &[usize]| vs.iter().map(|&v| pos[v]).max().unwrap_or(0);
        for (i, c) in spec.sums.iter().enumerate() {
            checks[last(&[c.a, c.b])].push(Check::Sum(i));
        }
        for (i, c) in spec.mins.iter().enumerate() {
            checks[last(&[c.a, c.b])].push(Check::Min(i));
        }
        for (i, c) in spec.few_above.iter().enumerate() {
            checks[last(&c.vertices)].push(Check::Few(i));
        }
        for (i, c) in spec.multisets.iter().enumerate() {
            checks[last(&c.vertices)].push(Check::Multiset(i));
        }
        for (i, c) in spec.incident_faces.iter().enumerate() {
            checks[pos[c.vertex]].push(Check::Incident(i));
        }
        let g = host.graph();
        PatternSearch {
            g,
            pg: host.plane(),
            spec,
            delta: g.max_degree(),
            order,
            back,
            checks,
            map: vec![NONE; k],
            clusters: None,
            out: Vec::new(),
        }
    }

    fn step(&mut self, i: usize) {
        if i == self.order.len() {
            self.finish();
            return;
        }
        let p = self.order[i];
        let candidates: Vec<usize> = match self.back[i].first() {
            Some(&q) => self.g.neighbors(self.map[q]),
            None => self.g.vertices().collect(),
        };
        for h in candidates {
            if !self.spec.degrees[p].admits(self.g.degree(h), self.delta) {
                continue;
            }
            if !self.back[i].iter().all(|&q| self.g.has_edge(self.map[q], h)) {
                continue;
            }
            let clash = self.order[..i]
                .iter()
                .any(|&q| self.map[q] == h && !self.spec.coincidence_allowed(p, q));
            if clash {
                continue;
            }
            self.map[p] = h;
            if self.checks_hold(i) {
                self.step(i + 1);
            }
            self.map[p] = NONE;
        }
    }

    fn deg(&self, p: usize) -> usize {
        self.g.degree(self.map[p])
    }

    fn checks_hold(&self, i: usize) -> bool {
        if i >= self.checks.len() {
            return true;
        }
        self.checks[i].iter().all(|&c| match c {
            Check::Sum(j) => {
                let s = &self.spec.sums[j];
                self.deg(s.a) + self.deg(s.b) <= s.bound.resolve(self.delta)
            }
            Check::Min(j) => {
                let s = &self.spec.mins[j];
                self.deg(s.a).min(self.deg(s.b)) <= s.bound
            }
            Check::Few(j) => {
                let s = &self.spec.few_above[j];
                s.vertices.iter().filter(|&&v| self.deg(v) > s.above).count() <= s.at_most
            }
            Check::Multiset(j) => {
                let s = &self.spec.multisets[j];
                let mut d: Vec<usize> = s.vertices.iter().map(|&v| self.deg(v)).collect();
                d.sort_unstable();
                d == s.degrees
            }
            Check::Incident(j) => {
                let s = &self.spec.incident_faces[j];
                let pg = self.pg.expect("plane host");
                let h = self.map[s.vertex];
                let mut faces = pg.faces_at(h);
                faces.sort_unstable();
                faces.dedup();
                faces
                    .into_iter()
                    .filter(|&f| {
                        let face = &pg.faces()[f];
                        face.degree() == s.degree_type.len() && {
                            let mut d: Vec<usize> = face.walk().map(|v| self.g.degree(v)).collect();
                            d.sort_unstable();
                            d == s.degree_type
                        }
                    })
                    .count()
                    >= s.at_least
            }
        })
    }

    /// Host faces that can play pattern face `j` under the current map: the
    /// faces on either side of the first boundary edge, kept if their walk is
    /// the mapped boundary read in some direction.
    fn face_candidates(&self, j: usize) -> Vec<usize> {
        let pg = self.pg.expect("plane host");
        let spec = &self.spec.faces[j];
        let image: Vec<usize> = spec.boundary.iter().map(|&p| self.map[p]).collect();
        let (a, b) = (image[0], image[1 % image.len()]);
        let mut out = Vec::new();
        for (x, y) in [(a, b), (b, a)] {
            let Some(f) = pg.face_of_dart(x, y) else { continue };
            if out.contains(&f) {
                continue;
            }
            let face = &pg.faces()[f];
            if face.degree() != image.len() {
                continue;
            }
            let walk: Vec<usize> = face.walk().collect();
            let forward = walk_matches(&walk, &image);
            let reversed: Vec<usize> = image.iter().rev().copied().collect();
            if !forward && !walk_matches(&walk, &reversed) {
                continue;
            }
            if let Some(t) = &spec.degree_type {
                let mut d: Vec<usize> = walk.iter().map(|&v| self.g.degree(v)).collect();
                d.sort_unstable();
                if &d != t {
                    continue;
                }
            }
            out.push(f);
        }
        out
    }

    fn finish(&mut self) {
        let per_face: Vec<Vec<usize>> = (0..self.spec.faces.len()).map(|j| self.face_candidates(j)).collect();
        if per_face.iter().any(Vec::is_empty) {
            return;
        }
        // every combination of face choices
        let mut choice = vec![0usize; per_face.len()];
        loop {
            let face_map: Vec<usize> = choice.iter().zip(&per_face).map(|(&c, fs)| fs[c]).collect();
            if self.cluster_holds(&face_map) {
                self.out.push(ConfigurationMatch {
                    config: self.spec.name.clone(),
                    vertex_map: self.map.clone(),
                    face_map,
                });
            }
            let mut j = 0;
            loop {
                if j == choice.len() {
                    return;
                }
                choice[j] += 1;
                if choice[j] < per_face[j].len() {
                    break;
                }
                choice[j] = 0;
                j += 1;
            }
        }
    }

    fn cluster_holds(&mut self, face_map: &[usize]) -> bool {
        let Some(cs) = &self.spec.cluster else {
            return true;
        };
        let pg = self.pg.expect("plane host");
        let all = self.clusters.get_or_insert_with(|| clusters(pg));
        let target = face_map[cs.face];
        let Some(cluster) = all.iter().find(|c| c.contains(&target)) else {
            return false;
        };
        let mut have: Vec<usize> = cluster.iter().flat_map(|&f| pg.faces()[f].walk()).collect();
        have.sort_unstable();
        have.dedup();
        let mut want: Vec<usize> = cs.vertices.iter().map(|&p| self.map[p]).collect();
        want.sort_unstable();
        want.dedup();
        have == want
    }
}

/// `walk` read cyclically from some start equals `seq`.
fn walk_matches(walk: &[usize], seq: &[usize]) -> bool {
    let l = walk.len();
    l == seq.len() && (0..l).any(|s| (0..l).all(|i| walk[(s + i) % l] == seq[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detectors::{catalog, lookup, validate};
    use crate::graph::named::{complete, cycle};
    use crate::plane::{embed_small, parse_rotation_system};

    #[test]
    fn edge_sum_7_on_k4_is_every_edge() {
        let found = find_config(&complete(4), lookup("EDGE_SUM(7)").unwrap()).unwrap();
        assert_eq!(found.len(), 6);
    }

    #[test]
    fn alt4_on_c4_is_absent() {
        assert!(find_config(&cycle(4), lookup("ALT4CYCLE(6)").unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn face_spec_needs_embedding() {
        let err = find_config(&complete(4), lookup("G7").unwrap()).unwrap_err();
        assert!(matches!(err, DetectError::NeedsEmbedding(_)));
    }

    /// G1 with two pendant vertices on each of v1..v4, drawn in the outer face.
    #[test]
    fn g1_found_with_full_degrees() {
        let text = "0: 1 2 3 4\n1: 2 0 5 6\n2: 0 1 7 8\n3: 4 0 9 10\n4: 0 3 11 12\n\
                    5: 1\n6: 1\n7: 2\n8: 2\n9: 3\n10: 3\n11: 4\n12: 4\n";
        let pg = parse_rotation_system(text).unwrap();
        let spec = lookup("G1").unwrap();
        let found = find_config(&pg, spec).unwrap();
        assert!(found.iter().any(|m| m.vertex_map == vec![0, 1, 2, 3, 4]));
        for m in &found {
            validate(&pg, spec, m).unwrap();
        }
    }

    /// Every pattern entry is found on its own pattern graph once the degree
    /// constraints are dropped.
    #[test]
    fn catalog_round_trip() {
        for spec in catalog() {
            let Shape::Pattern(p) = &spec.shape else { continue };
            let mut relaxed = spec.clone();
            relaxed.degrees.fill(DegreeConstraint::Any);
            relaxed.sums.clear();
            relaxed.mins.clear();
            relaxed.few_above.clear();
            relaxed.multisets.clear();
            relaxed.incident_faces.clear();
            for f in &mut relaxed.faces {
                f.degree_type = None;
            }
            let Some(pg) = embed_small(p).unwrap() else {
                panic!("{} is not planar", spec.name)
            };
            let found = find_config(&pg, &relaxed).unwrap();
            let identity: Vec<usize> = (0..p.n()).collect();
            assert!(
                found.iter().any(|m| m.vertex_map == identity) || relaxed.cluster.is_some(),
                "{}",
                spec.name
            );
            for m in &found {
                validate(&pg, &relaxed, m).unwrap();
            }
        }
    }
}
