use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId};

/// A tree living inside a host graph: a connected, acyclic edge subset (or a
/// single vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    adj: BTreeMap<VertexId, Vec<(EdgeId, VertexId)>>,
    edges: Vec<EdgeId>,
}

impl Tree {
    pub fn single(v: VertexId) -> Self {
        Tree { adj: BTreeMap::from([(v, Vec::new())]), edges: Vec::new() }
    }

    pub fn from_edges(g: &Graph, edges: &[EdgeId]) -> Result<Tree> {
        if edges.is_empty() {
            return Err(Error::Precondition("a tree needs at least one edge or use Tree::single".into()));
        }
        let mut adj: BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> = BTreeMap::new();
        let mut seen_edges = BTreeSet::new();
        for &e in edges {
            if !seen_edges.insert(e) {
                return Err(Error::Precondition(format!("edge {e} listed twice")));
            }
            let edge = g.edge(e);
            if edge.is_loop() {
                return Err(Error::Precondition("a tree has no loops".into()));
            }
            adj.entry(edge.u).or_default().push((e, edge.v));
            adj.entry(edge.v).or_default().push((e, edge.u));
        }
        for list in adj.values_mut() {
            list.sort();
        }
        let tree = Tree { adj, edges: seen_edges.into_iter().collect() };
        if tree.adj.len() != tree.edges.len() + 1 || tree.bfs_order(tree.root()).len() != tree.adj.len() {
            return Err(Error::Precondition("edge set is not a tree".into()));
        }
        Ok(tree)
    }

    /// The whole of `g`, which must be a tree.
    pub fn from_graph(g: &Graph) -> Result<Tree> {
        match g.vertex_count() {
            0 => Err(Error::Precondition("empty graph is not a tree".into())),
            1 if g.edge_count() == 0 => Ok(Tree::single(VertexId(0))),
            _ => Tree::from_edges(g, &g.edge_ids().collect::<Vec<_>>()),
        }
    }

    pub fn root(&self) -> VertexId {
        *self.adj.keys().next().expect("tree is non-empty")
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, Vec::len)
    }

    pub fn neighbors(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        self.adj.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn leaves(&self) -> Vec<VertexId> {
        self.adj.iter().filter(|(_, n)| n.len() == 1).map(|(&v, _)| v).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(Vec::len).max().unwrap_or(0)
    }

    pub(crate) fn bfs_order(&self, root: VertexId) -> Vec<VertexId> {
        let mut seen = BTreeSet::from([root]);
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(_, w) in self.neighbors(v) {
                if seen.insert(w) {
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Parent pointers `(parent, edge to parent)` for the tree rooted at `root`.
    pub(crate) fn parents(&self, root: VertexId) -> BTreeMap<VertexId, (VertexId, EdgeId)> {
        let mut parent = BTreeMap::new();
        let mut queue = VecDeque::from([root]);
        let mut seen = BTreeSet::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(e, w) in self.neighbors(v) {
                if seen.insert(w) {
                    parent.insert(w, (v, e));
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// The unique path from `u` to `v`.
    pub fn path_between(&self, u: VertexId, v: VertexId) -> Path {
        let parent = self.parents(v);
        let mut vertices = vec![u];
        let mut edges = Vec::new();
        let mut cur = u;
        while cur != v {
            let (p, e) = parent[&cur];
            vertices.push(p);
            edges.push(e);
            cur = p;
        }
        Path { vertices, edges }
    }

    /// Proper 2-colouring: `true` for the class of the smallest vertex.
    pub fn bipartition(&self) -> BTreeMap<VertexId, bool> {
        let root = self.root();
        let mut colour = BTreeMap::from([(root, true)]);
        for v in self.bfs_order(root) {
            let c = colour[&v];
            for &(_, w) in self.neighbors(v) {
                colour.entry(w).or_insert(!c);
            }
        }
        colour
    }

    /// Distances within the tree from `src`.
    pub fn distances(&self, src: VertexId) -> BTreeMap<VertexId, usize> {
        let mut dist = BTreeMap::from([(src, 0)]);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for &(_, w) in self.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(slot) = dist.entry(w) {
                    slot.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The subtree left after deleting `removed`, if non-empty and connected.
    pub(crate) fn without(&self, removed: &BTreeSet<VertexId>) -> Option<Tree> {
        let mut adj = BTreeMap::new();
        for (&v, nbrs) in &self.adj {
            if removed.contains(&v) {
                continue;
            }
            let kept: Vec<_> = nbrs.iter().copied().filter(|(_, w)| !removed.contains(w)).collect();
            adj.insert(v, kept);
        }
        if adj.is_empty() {
            return None;
        }
        let edges: BTreeSet<EdgeId> = adj.values().flatten().map(|&(e, _)| e).collect();
        let tree = Tree { adj, edges: edges.into_iter().collect() };
        (tree.bfs_order(tree.root()).len() == tree.adj.len()).then_some(tree)
    }
}
