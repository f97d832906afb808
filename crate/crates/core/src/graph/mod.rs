//! Multigraph representation, terminal sets, paths and connected components.
//!
//! Vertices and edges get dense ids in insertion order; every iteration in
//! the crate follows those ids, which is what makes certificates reproducible.

mod format;

pub use format::{parse_graph, serialize_graph, GraphDoc};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An edge `u -> v`. In undirected graphs the orientation is only the
/// reference orientation used by directed labelings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// One entry of a vertex's incidence list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incidence {
    pub edge: EdgeId,
    pub other: VertexId,
    /// True when leaving the vertex along this edge follows the edge's
    /// orientation (`u -> v`).
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    names: Vec<String>,
    index: BTreeMap<String, VertexId>,
    edges: Vec<Edge>,
    incidence: Vec<Vec<Incidence>>,
}

impl Graph {
    pub fn new(directed: bool) -> Self {
        Graph { directed, names: Vec::new(), index: BTreeMap::new(), edges: Vec::new(), incidence: Vec::new() }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateVertex { line: 0, name });
        }
        let id = VertexId(self.names.len());
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.incidence.push(Vec::new());
        Ok(id)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        assert!(u.0 < self.names.len() && v.0 < self.names.len(), "edge endpoint out of range");
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge { u, v });
        self.incidence[u.0].push(Incidence { edge: id, other: v, forward: true });
        if u != v {
            self.incidence[v.0].push(Incidence { edge: id, other: u, forward: false });
        }
        id
    }

    /// Joins `u` and `v` by a path of `len` unit edges, creating `len - 1`
    /// fresh interior vertices named `{prefix}.{i}`.
    pub fn add_subdivided_edge(&mut self, u: VertexId, v: VertexId, len: usize, prefix: &str) -> Result<Vec<EdgeId>> {
        if len == 0 {
            return Err(Error::InvalidParameter("subdivided edge of length 0".into()));
        }
        let mut edges = Vec::with_capacity(len);
        let mut prev = u;
        for i in 1..len {
            let mid = self.add_vertex(format!("{prefix}.{i}"))?;
            edges.push(self.add_edge(prev, mid));
            prev = mid;
        }
        edges.push(self.add_edge(prev, v));
        Ok(edges)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e.0]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    /// All incidences of `v`, in edge-id order.
    pub fn incident(&self, v: VertexId) -> &[Incidence] {
        &self.incidence[v.0]
    }

    /// Incidences that may be traversed when leaving `v`: all of them in an
    /// undirected graph, only forward ones in a directed graph.
    pub fn out_steps(&self, v: VertexId) -> impl Iterator<Item = &Incidence> + '_ {
        let directed = self.directed;
        self.incidence[v.0].iter().filter(move |inc| !directed || inc.forward)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v.0].iter().map(|inc| if self.edges[inc.edge.0].is_loop() { 2 } else { 1 }).sum()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// Edges joining `u` and `v` (in either orientation), in id order.
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        self.incidence[u.0].iter().filter(|inc| inc.other == v).map(|inc| inc.edge).collect()
    }

    /// Checks the structural [`Path`] invariants against this graph.
    pub fn validate_path(&self, p: &Path) -> Result<()> {
        if p.vertices.is_empty() {
            return Err(Error::InvalidPath("empty vertex sequence".into()));
        }
        if p.edges.len() + 1 != p.vertices.len() {
            return Err(Error::InvalidPath("edge count must be vertex count minus one".into()));
        }
        let mut seen = BTreeSet::new();
        for &v in &p.vertices {
            if v.0 >= self.vertex_count() {
                return Err(Error::InvalidPath(format!("vertex {v} out of range")));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidPath(format!("repeated vertex '{}'", self.name(v))));
            }
        }
        for (i, &e) in p.edges.iter().enumerate() {
            if e.0 >= self.edge_count() {
                return Err(Error::InvalidPath(format!("edge {e} out of range")));
            }
            let edge = self.edge(e);
            let (x, y) = (p.vertices[i], p.vertices[i + 1]);
            let ok = if self.directed {
                edge.u == x && edge.v == y
            } else {
                (edge.u == x && edge.v == y) || (edge.u == y && edge.v == x)
            };
            if !ok {
                return Err(Error::InvalidPath(format!(
                    "edge {e} does not join '{}' and '{}'",
                    self.name(x),
                    self.name(y)
                )));
            }
        }
        Ok(())
    }

    /// Builds a path from a vertex sequence, picking for every consecutive
    /// pair the smallest-id joining edge not in `used`.
    pub fn path_from_vertices(&self, vertices: Vec<VertexId>, used: &mut BTreeSet<EdgeId>) -> Result<Path> {
        let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
        for w in vertices.windows(2) {
            let candidate = self.incidence[w[0].0]
                .iter()
                .filter(|inc| inc.other == w[1] && (!self.directed || inc.forward))
                .map(|inc| inc.edge)
                .find(|e| !used.contains(e));
            match candidate {
                Some(e) => {
                    used.insert(e);
                    edges.push(e);
                }
                None => {
                    return Err(Error::InvalidPath(format!(
                        "no available edge between '{}' and '{}'",
                        self.name(w[0]),
                        self.name(w[1])
                    )))
                }
            }
        }
        Ok(Path { vertices, edges })
    }
}

/// Which terminal set a [`TerminalSet`] represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TerminalLabel {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalSet {
    pub label: TerminalLabel,
    pub members: BTreeSet<VertexId>,
}

impl TerminalSet {
    pub fn new(label: TerminalLabel) -> Self {
        TerminalSet { label, members: BTreeSet::new() }
    }

    pub fn from_iter(label: TerminalLabel, members: impl IntoIterator<Item = VertexId>) -> Self {
        TerminalSet { label, members: members.into_iter().collect() }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().copied()
    }

    /// Membership as a dense mask over `n` vertices.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in &self.members {
            if v.0 < n {
                mask[v.0] = true;
            }
        }
        mask
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path { vertices: vec![v], edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("path has at least one vertex")
    }

    pub fn interior(&self) -> &[VertexId] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        Path { vertices, edges }
    }

    /// Whether the `i`-th edge is traversed along its reference orientation.
    pub fn traverses_forward(&self, g: &Graph, i: usize) -> bool {
        g.edge(self.edges[i]).u == self.vertices[i]
    }

    pub fn names(&self, g: &Graph) -> Vec<String> {
        self.vertices.iter().map(|&v| g.name(v).to_string()).collect()
    }
}

/// Connected components (weak components for directed graphs), each sorted,
/// cells ordered by smallest member.
pub fn components(g: &Graph) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut cells = Vec::new();
    for start in g.vertices() {
        if seen[start.0] {
            continue;
        }
        seen[start.0] = true;
        let mut cell = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for inc in g.incident(v) {
                if !seen[inc.other.0] {
                    seen[inc.other.0] = true;
                    cell.push(inc.other);
                    queue.push_back(inc.other);
                }
            }
        }
        cell.sort();
        cells.push(cell);
    }
    cells
}

/// Spanning forest by breadth-first search from the smallest vertex of each
/// component; returns the chosen edge ids in order of discovery.
pub fn spanning_forest(g: &Graph) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut forest = Vec::new();
    for root in g.vertices() {
        if seen[root.0] {
            continue;
        }
        seen[root.0] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for inc in g.incident(v) {
                if !seen[inc.other.0] {
                    seen[inc.other.0] = true;
                    forest.push(inc.edge);
                    queue.push_back(inc.other);
                }
            }
        }
    }
    forest
}
