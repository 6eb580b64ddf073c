//! Plane graphs given by rotation systems.
//!
//! The rotation at `v` is the clockwise cyclic order of its neighbours (the
//! graph is simple, so a neighbour names a dart). Faces are the orbits of the
//! successor map `(u, v) -> (v, w)`, where `w` follows `u` in the rotation at
//! `v`. Each connected component is traced on its own; for a disconnected
//! graph the outer faces of the components are reported separately.

mod embed;
mod fragments;
mod outer;
mod rotation;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub use embed::{embed_by_rotation_search, embed_planar, embed_small, outerplanar_embedding, EMBED_VERTEX_CAP};
pub use outer::{clusters, find_k_net_or_hole, is_outerplanar, CycleKind, KCycle};
pub use rotation::{parse_rotation_system, write_rotation_system};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("rotation system lists {actual} vertices, graph has {expected}")]
    RotationLength { expected: usize, actual: usize },
    #[error("rotation at vertex {vertex} is invalid: {reason}")]
    BadRotation { vertex: usize, reason: String },
    #[error("not a planar embedding: component with {vertices} vertices, {edges} edges and {faces} faces")]
    NotPlanar {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("embedding search is capped at {cap} vertices, graph has {actual}; supply a rotation system instead")]
    TooLarge { actual: usize, cap: usize },
}

/// A face as its boundary walk.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    /// Darts `(tail, head)` in walk order.
    pub darts: Vec<(usize, usize)>,
}

impl Face {
    /// Number of edge-steps of the boundary walk.
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    /// Boundary vertices in walk order (with repetitions at cut vertices).
    pub fn walk(&self) -> impl Iterator<Item = usize> + '_ {
        self.darts.iter().map(|d| d.0)
    }

    /// Distinct boundary vertices, sorted.
    pub fn vertex_set(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.walk().collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Times the walk passes through `v`.
    pub fn multiplicity(&self, v: usize) -> usize {
        self.walk().filter(|&x| x == v).count()
    }
}

#[derive(Debug, Clone)]
pub struct PlaneGraph {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
    faces: Vec<Face>,
    dart_face: HashMap<(usize, usize), usize>,
}

impl PlaneGraph {
    /// Validates the rotation system and traces the faces.
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>) -> Result<Self, PlaneError> {
        graph.require_simple()?;
        if rotation.len() != graph.n() {
            return Err(PlaneError::RotationLength {
                expected: graph.n(),
                actual: rotation.len(),
            });
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != graph.neighbors(v) {
                return Err(PlaneError::BadRotation {
                    vertex: v,
                    reason: format!("{rot:?} is not an ordering of the neighbours {:?}", graph.neighbors(v)),
                });
            }
        }
        let faces = trace_faces(&rotation);
        let mut dart_face = HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            for &d in &f.darts {
                dart_face.insert(d, i);
            }
        }
        let pg = PlaneGraph {
            graph,
            rotation,
            faces,
            dart_face,
        };
        pg.euler_check()?;
        Ok(pg)
    }

    fn euler_check(&self) -> Result<(), PlaneError> {
        let comp = self.graph.components();
        let k = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut verts = vec![0usize; k];
        let mut edges = vec![0usize; k];
        let mut faces = vec![0usize; k];
        for &c in &comp {
            verts[c] += 1;
        }
        for e in self.graph.edges() {
            edges[comp[e.u]] += 1;
        }
        for f in &self.faces {
            faces[comp[f.darts[0].0]] += 1;
        }
        for c in 0..k {
            if edges[c] > 0 && verts[c] + faces[c] != edges[c] + 2 {
                return Err(PlaneError::NotPlanar {
                    vertices: verts[c],
                    edges: edges[c],
                    faces: faces[c],
                });
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Index of the face containing dart `(u, v)`.
    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<usize> {
        self.dart_face.get(&(u, v)).copied()
    }

    /// Times the boundary walk of face `face` passes through `v`; zero if
    /// `v` is not on it.
    pub fn m_v(&self, v: usize, face: usize) -> usize {
        self.faces[face].multiplicity(v)
    }

    /// Faces around `v` in rotation order (a face may repeat at a cut
    /// vertex).
    pub fn faces_at(&self, v: usize) -> Vec<usize> {
        self.rotation[v].iter().map(|&w| self.dart_face[&(v, w)]).collect()
    }

    /// True if some face boundary contains every vertex; a graph with at most
    /// one vertex counts, its single face being implicit.
    pub fn all_vertices_on_one_face(&self) -> bool {
        self.graph.n() <= 1 || self.face_containing_all_vertices().is_some()
    }

    /// Some face whose boundary contains every vertex, if any.
    pub fn face_containing_all_vertices(&self) -> Option<usize> {
        let n = self.graph.n();
        self.faces.iter().position(|f| f.vertex_set().len() == n)
    }
}

fn trace_faces(rotation: &[Vec<usize>]) -> Vec<Face> {
    let next = |u: usize, v: usize| -> usize {
        let rot = &rotation[v];
        let i = rot.iter().position(|&x| x == u).expect("u is a neighbour of v");
        rot[(i + 1) % rot.len()]
    };
    let mut seen: HashMap<(usize, usize), bool> = HashMap::new();
    let mut faces = Vec::new();
    for (u, rot) in rotation.iter().enumerate() {
        for &v in rot {
            if seen.contains_key(&(u, v)) {
                continue;
            }
            let mut darts = Vec::new();
            let (mut a, mut b) = (u, v);
            while !seen.contains_key(&(a, b)) {
                seen.insert((a, b), true);
                darts.push((a, b));
                let c = next(a, b);
                a = b;
                b = c;
            }
            faces.push(Face { darts });
        }
    }
    faces
}
