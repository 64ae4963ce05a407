use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("duplicate identifier '{0}'")]
    DuplicateId(String),
    #[error("unknown edge '{0}'")]
    UnknownEdge(String),
    #[error("element refers to a vertex or edge outside the quiver")]
    QuiverMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: VertexId,
    pub rng: VertexId,
}

/// A directed graph. Finite quivers list their vertices and edges; the
/// discrete infinite quiver has vertices `v1, v2, ...` and no edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
    discrete_infinite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub src: String,
    pub rng: String,
}

/// Quiver file contents. `degrees` maps edge ids to group elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
    #[serde(default)]
    pub degrees: BTreeMap<String, i64>,
}

impl Quiver {
    pub fn new(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Quiver, QuiverError> {
        let spec = QuiverSpec {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(id, s, r)| EdgeSpec { id: id.to_string(), src: s.to_string(), rng: r.to_string() })
                .collect(),
            degrees: BTreeMap::new(),
        };
        Quiver::from_spec(&spec)
    }

    pub fn from_spec(spec: &QuiverSpec) -> Result<Quiver, QuiverError> {
        let mut index: HashMap<&str, VertexId> = HashMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(QuiverError::DuplicateId(v.clone()));
            }
        }
        let mut edges = Vec::with_capacity(spec.edges.len());
        let mut out_edges = vec![Vec::new(); spec.vertices.len()];
        for e in &spec.edges {
            if index.contains_key(e.id.as_str()) || edges.iter().any(|x: &Edge| x.name == e.id) {
                return Err(QuiverError::DuplicateId(e.id.clone()));
            }
            let lookup = |v: &str| index.get(v).copied().ok_or_else(|| QuiverError::UnknownVertex(v.to_string()));
            let src = lookup(&e.src)?;
            let rng = lookup(&e.rng)?;
            out_edges[src].push(edges.len());
            edges.push(Edge { name: e.id.clone(), src, rng });
        }
        Ok(Quiver { vertices: spec.vertices.clone(), edges, out_edges, discrete_infinite: false })
    }

    pub fn discrete_infinite() -> Quiver {
        Quiver { vertices: Vec::new(), edges: Vec::new(), out_edges: Vec::new(), discrete_infinite: true }
    }

    pub fn is_discrete_infinite(&self) -> bool {
        self.discrete_infinite
    }

    pub fn is_finite(&self) -> bool {
        !self.discrete_infinite
    }

    pub fn vertex_count(&self) -> Option<usize> {
        (!self.discrete_infinite).then_some(self.vertices.len())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.discrete_infinite || v < self.vertices.len()
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        e < self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> String {
        if self.discrete_infinite {
            format!("v{}", v + 1)
        } else {
            self.vertices[v].clone()
        }
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        if self.discrete_infinite {
            let n: usize = name.strip_prefix('v')?.parse().ok()?;
            return n.checked_sub(1);
        }
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        self.out_edges.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Regular vertices emit at least one edge (all edge sets are finite).
    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.out_edges(v).is_empty()
    }

    /// The edge eliminated by the normal form at a regular vertex: the first
    /// one declared.
    pub fn distinguished(&self, v: VertexId) -> Option<EdgeId> {
        self.out_edges(v).first().copied()
    }

    /// Vertices considered at a given bound: all of them for finite quivers,
    /// `v1..v_bound` for the discrete infinite one.
    pub fn window_vertices(&self, bound: usize) -> Vec<VertexId> {
        if self.discrete_infinite {
            (0..bound).collect()
        } else {
            (0..self.vertices.len()).collect()
        }
    }

    /// Length of the longest path, or `None` when there is a cycle.
    pub fn longest_path(&self) -> Option<usize> {
        if self.discrete_infinite {
            return Some(0);
        }
        let n = self.vertices.len();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        let mut depth = vec![0usize; n];
        fn visit(q: &Quiver, v: usize, state: &mut [u8], depth: &mut [usize]) -> bool {
            match state[v] {
                1 => return false,
                2 => return true,
                _ => {}
            }
            state[v] = 1;
            let mut best = 0;
            for &e in q.out_edges(v) {
                let w = q.edges[e].rng;
                if !visit(q, w, state, depth) {
                    return false;
                }
                best = best.max(depth[w] + 1);
            }
            depth[v] = best;
            state[v] = 2;
            true
        }
        for v in 0..n {
            if !visit(self, v, &mut state, &mut depth) {
                return None;
            }
        }
        Some(depth.into_iter().max().unwrap_or(0))
    }

    pub fn is_acyclic(&self) -> bool {
        self.longest_path().is_some()
    }
}
