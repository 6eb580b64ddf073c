//! Configuration detectors.
//!
//! A [`ConfigSpec`] is a small pattern (a fixed graph, or an alternating
//! cycle of any even length) together with degree, face and distinctness
//! constraints. [`find_config`] locates every occurrence in a host, one match
//! per image; [`validate`] re-checks a single match from scratch and shares no
//! code with the search.

mod catalog;
mod engine;
mod lemmas;
mod validate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::plane::PlaneGraph;

pub use crate::graph::ConfigurationMatch;
pub use catalog::{catalog, lookup};
pub use engine::find_config;
pub use lemmas::{
    lemma_configs, lemma_names, verify_unavoidability, CounterexampleBundle, Outcome, UnavoidabilityReport,
};
pub use validate::{image_key, validate, ImageKey};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetectError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("configuration {0} constrains faces; supply an embedding")]
    NeedsEmbedding(String),
    #[error("unknown configuration {0:?}")]
    UnknownConfig(String),
    #[error("unknown lemma {0:?}")]
    UnknownLemma(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeConstraint {
    Any,
    Exact(usize),
    AtMost(usize),
    AtLeast(usize),
    /// Equal to the host's maximum degree.
    MaxDegree,
}

impl DegreeConstraint {
    pub fn admits(self, d: usize, delta: usize) -> bool {
        match self {
            DegreeConstraint::Any => true,
            DegreeConstraint::Exact(k) => d == k,
            DegreeConstraint::AtMost(k) => d <= k,
            DegreeConstraint::AtLeast(k) => d >= k,
            DegreeConstraint::MaxDegree => d == delta,
        }
    }
}

/// `max(floor, Δ + plus)`, or just `floor` when `delta_plus` is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub floor: usize,
    pub delta_plus: Option<usize>,
}

impl Bound {
    pub fn constant(c: usize) -> Self {
        Bound {
            floor: c,
            delta_plus: None,
        }
    }

    pub fn max_with_delta(floor: usize, plus: usize) -> Self {
        Bound {
            floor,
            delta_plus: Some(plus),
        }
    }

    pub fn resolve(self, delta: usize) -> usize {
        self.delta_plus.map_or(self.floor, |p| self.floor.max(delta + p))
    }
}

/// `d(a) + d(b) <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumAtMost {
    pub a: usize,
    pub b: usize,
    pub bound: Bound,
}

/// `min(d(a), d(b)) <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinAtMost {
    pub a: usize,
    pub b: usize,
    pub bound: usize,
}

/// At most `at_most` of `vertices` have degree greater than `above`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FewAbove {
    pub vertices: Vec<usize>,
    pub above: usize,
    pub at_most: usize,
}

/// The degrees of `vertices` form exactly this multiset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeMultiset {
    pub vertices: Vec<usize>,
    pub degrees: Vec<usize>,
}

/// A face whose boundary walk is `boundary` (in either direction). With
/// `degree_type`, the multiset of vertex degrees along the walk is fixed too.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSpec {
    pub boundary: Vec<usize>,
    pub degree_type: Option<Vec<usize>>,
}

/// `vertex` lies on at least `at_least` distinct faces of length
/// `degree_type.len()` whose vertex degrees form `degree_type`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidentFaces {
    pub vertex: usize,
    pub degree_type: Vec<usize>,
    pub at_least: usize,
}

/// The 3-face cluster containing pattern face `face` has exactly the images
/// of `vertices` as its vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterSpec {
    pub face: usize,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// A fixed pattern graph; its edges must be present in the host (the
    /// occurrence need not be induced).
    Pattern(Graph),
    /// An even cycle `v1 v2 ... v2k`, `k >= 2`, with constraints on the odd
    /// and even positions.
    AlternatingCycle {
        odd: DegreeConstraint,
        even: DegreeConstraint,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigSpec {
    pub name: String,
    pub summary: String,
    pub shape: Shape,
    /// One per pattern vertex; empty for alternating cycles.
    pub degrees: Vec<DegreeConstraint>,
    pub sums: Vec<SumAtMost>,
    pub mins: Vec<MinAtMost>,
    pub few_above: Vec<FewAbove>,
    pub multisets: Vec<DegreeMultiset>,
    pub faces: Vec<FaceSpec>,
    pub incident_faces: Vec<IncidentFaces>,
    pub cluster: Option<ClusterSpec>,
    /// Pattern vertex pairs that may share a host vertex. All other pairs map
    /// to distinct vertices.
    pub may_coincide: Vec<(usize, usize)>,
}

impl ConfigSpec {
    pub fn pattern(name: &str, summary: &str, pattern: Graph) -> Self {
        let k = pattern.n();
        Self::base(name, summary, Shape::Pattern(pattern), vec![DegreeConstraint::Any; k])
    }

    pub fn alternating_cycle(name: &str, summary: &str, odd: DegreeConstraint, even: DegreeConstraint) -> Self {
        Self::base(name, summary, Shape::AlternatingCycle { odd, even }, Vec::new())
    }

    fn base(name: &str, summary: &str, shape: Shape, degrees: Vec<DegreeConstraint>) -> Self {
        ConfigSpec {
            name: name.into(),
            summary: summary.into(),
            shape,
            degrees,
            sums: Vec::new(),
            mins: Vec::new(),
            few_above: Vec::new(),
            multisets: Vec::new(),
            faces: Vec::new(),
            incident_faces: Vec::new(),
            cluster: None,
            may_coincide: Vec::new(),
        }
    }

    pub fn with_degree(mut self, v: usize, c: DegreeConstraint) -> Self {
        self.degrees[v] = c;
        self
    }

    pub fn with_sum(mut self, a: usize, b: usize, bound: Bound) -> Self {
        self.sums.push(SumAtMost { a, b, bound });
        self
    }

    pub fn with_min(mut self, a: usize, b: usize, bound: usize) -> Self {
        self.mins.push(MinAtMost { a, b, bound });
        self
    }

    pub fn with_few_above(mut self, vertices: &[usize], above: usize, at_most: usize) -> Self {
        self.few_above.push(FewAbove {
            vertices: vertices.to_vec(),
            above,
            at_most,
        });
        self
    }

    pub fn with_multiset(mut self, vertices: &[usize], degrees: &[usize]) -> Self {
        let mut degrees = degrees.to_vec();
        degrees.sort_unstable();
        self.multisets.push(DegreeMultiset {
            vertices: vertices.to_vec(),
            degrees,
        });
        self
    }

    pub fn with_face(mut self, boundary: &[usize], degree_type: Option<&[usize]>) -> Self {
        self.faces.push(FaceSpec {
            boundary: boundary.to_vec(),
            degree_type: degree_type.map(sorted),
        });
        self
    }

    pub fn with_incident_faces(mut self, vertex: usize, degree_type: &[usize], at_least: usize) -> Self {
        self.incident_faces.push(IncidentFaces {
            vertex,
            degree_type: sorted(degree_type),
            at_least,
        });
        self
    }

    pub fn with_cluster(mut self, face: usize, vertices: &[usize]) -> Self {
        self.cluster = Some(ClusterSpec {
            face,
            vertices: vertices.to_vec(),
        });
        self
    }

    pub fn with_coincidence(mut self, a: usize, b: usize) -> Self {
        self.may_coincide.push((a.min(b), a.max(b)));
        self
    }

    /// Number of pattern vertices; zero for alternating cycles.
    pub fn pattern_size(&self) -> usize {
        match &self.shape {
            Shape::Pattern(p) => p.n(),
            Shape::AlternatingCycle { .. } => 0,
        }
    }

    pub fn requires_plane(&self) -> bool {
        !self.faces.is_empty() || !self.incident_faces.is_empty() || self.cluster.is_some()
    }

    pub fn coincidence_allowed(&self, a: usize, b: usize) -> bool {
        self.may_coincide.contains(&(a.min(b), a.max(b)))
    }
}

fn sorted(xs: &[usize]) -> Vec<usize> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v
}

/// A host graph, with or without an embedding.
#[derive(Debug, Clone, Copy)]
pub enum Host<'a> {
    Graph(&'a Graph),
    Plane(&'a PlaneGraph),
}

impl<'a> Host<'a> {
    pub fn graph(&self) -> &'a Graph {
        match self {
            Host::Graph(g) => g,
            Host::Plane(pg) => pg.graph(),
        }
    }

    pub fn plane(&self) -> Option<&'a PlaneGraph> {
        match self {
            Host::Graph(_) => None,
            Host::Plane(pg) => Some(pg),
        }
    }
}

impl<'a> From<&'a Graph> for Host<'a> {
    fn from(g: &'a Graph) -> Self {
        Host::Graph(g)
    }
}

impl<'a> From<&'a PlaneGraph> for Host<'a> {
    fn from(pg: &'a PlaneGraph) -> Self {
        Host::Plane(pg)
    }
}
