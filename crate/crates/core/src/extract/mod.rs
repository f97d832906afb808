//! Turning large trees into many disjoint target objects.

mod cycles;
mod tree;

pub use cycles::{hub_even_cycles, validate_cycle, Cycle};
pub use tree::Tree;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Path, TerminalSet, VertexId};

/// A maximal run of the tree between two branch vertices (degree ≠ 2).
#[derive(Debug, Clone)]
struct Chain {
    verts: Vec<VertexId>,
    edges: Vec<EdgeId>,
    alive: bool,
}

impl Chain {
    fn ends(&self) -> (VertexId, VertexId) {
        (self.verts[0], *self.verts.last().unwrap())
    }

    fn other(&self, v: VertexId) -> VertexId {
        let (s, t) = self.ends();
        if s == v {
            t
        } else {
            s
        }
    }

    /// Vertices and edges walked from `from` to the far end.
    fn walk_from(&self, from: VertexId) -> (Vec<VertexId>, Vec<EdgeId>) {
        if self.verts[0] == from {
            (self.verts.clone(), self.edges.clone())
        } else {
            let mut v = self.verts.clone();
            let mut e = self.edges.clone();
            v.reverse();
            e.reverse();
            (v, e)
        }
    }
}

/// The tree with degree-2 vertices suppressed; each contracted edge keeps
/// the chain it replaces.
struct Contracted {
    chains: Vec<Chain>,
    at: BTreeMap<VertexId, Vec<usize>>,
}

impl Contracted {
    fn new(t: &Tree) -> Self {
        let mut chains = Vec::new();
        let mut used = BTreeSet::new();
        let branch: Vec<VertexId> = t.vertices().filter(|&v| t.degree(v) != 2).collect();
        for &s in &branch {
            for &(e0, w0) in t.neighbors(s) {
                if used.contains(&e0) {
                    continue;
                }
                let mut verts = vec![s, w0];
                let mut edges = vec![e0];
                used.insert(e0);
                let mut cur = w0;
                while t.degree(cur) == 2 {
                    let &(e, w) = t.neighbors(cur).iter().find(|&&(e, _)| !used.contains(&e)).unwrap();
                    used.insert(e);
                    verts.push(w);
                    edges.push(e);
                    cur = w;
                }
                chains.push(Chain { verts, edges, alive: true });
            }
        }
        let mut at: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for (i, c) in chains.iter().enumerate() {
            let (s, t) = c.ends();
            at.entry(s).or_default().push(i);
            at.entry(t).or_default().push(i);
        }
        Contracted { chains, at }
    }

    fn live(&self, v: VertexId) -> Vec<usize> {
        self.at.get(&v).map_or(Vec::new(), |l| l.iter().copied().filter(|&i| self.chains[i].alive).collect())
    }

    fn degree(&self, v: VertexId) -> usize {
        self.live(v).len()
    }

    fn nodes(&self) -> Vec<VertexId> {
        self.at.keys().copied().filter(|&v| self.degree(v) > 0).collect()
    }

    fn leaves(&self) -> Vec<VertexId> {
        self.nodes().into_iter().filter(|&v| self.degree(v) == 1).collect()
    }

    /// Depth and parent chain of every node, rooted at `root`.
    fn rooted(&self, root: VertexId) -> BTreeMap<VertexId, (usize, Option<usize>)> {
        let mut info = BTreeMap::from([(root, (0, None))]);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let d = info[&v].0;
            for i in self.live(v) {
                let w = self.chains[i].other(v);
                if let std::collections::btree_map::Entry::Vacant(slot) = info.entry(w) {
                    slot.insert((d + 1, Some(i)));
                    stack.push(w);
                }
            }
        }
        info
    }

    fn route(&self, from: VertexId, to: VertexId) -> Path {
        let info = self.rooted(to);
        let mut vertices = vec![from];
        let mut edges = Vec::new();
        let mut cur = from;
        while cur != to {
            let ci = info[&cur].1.expect("tree is connected");
            let (v, e) = self.chains[ci].walk_from(cur);
            vertices.extend_from_slice(&v[1..]);
            edges.extend(e);
            cur = *v.last().unwrap();
        }
        Path { vertices, edges }
    }

    /// Merge the two live chains at a degree-2 node into one.
    fn suppress(&mut self, s: VertexId) {
        let live = self.live(s);
        debug_assert_eq!(live.len(), 2);
        let (mut v1, mut e1) = self.chains[live[0]].walk_from(s);
        v1.reverse();
        e1.reverse();
        let (v2, e2) = self.chains[live[1]].walk_from(s);
        v1.extend_from_slice(&v2[1..]);
        e1.extend(e2);
        for &i in &live {
            self.chains[i].alive = false;
        }
        let idx = self.chains.len();
        let (x, y) = (v1[0], *v1.last().unwrap());
        self.chains.push(Chain { verts: v1, edges: e1, alive: true });
        self.at.entry(x).or_default().push(idx);
        self.at.entry(y).or_default().push(idx);
    }
}

/// Exactly ⌊p/2⌋ pairwise vertex-disjoint leaf-to-leaf paths of a subcubic
/// tree with p ≥ 2 leaves.
pub fn leaf_pair_paths(t: &Tree) -> Result<Vec<Path>> {
    if t.max_degree() > 3 {
        return Err(Error::Precondition("tree has a vertex of degree > 3".into()));
    }
    let p = t.leaves().len();
    if p < 2 {
        return Err(Error::Precondition("tree has fewer than 2 leaves".into()));
    }
    let mut ct = Contracted::new(t);
    let mut out = Vec::new();
    loop {
        let leaves = ct.leaves();
        if leaves.len() <= 3 {
            out.push(ct.route(leaves[0], leaves[1]));
            break;
        }
        let root = leaves[0];
        let info = ct.rooted(root);
        // a deepest branch vertex has only leaf children
        let (&t3, _) = info
            .iter()
            .filter(|(&v, _)| ct.degree(v) == 3)
            .max_by_key(|&(&v, &(d, _))| (d, std::cmp::Reverse(v)))
            .expect("at least 4 leaves force a degree-3 vertex");
        let up = info[&t3].1.expect("branch vertex is not the root");
        let kids: Vec<usize> = ct.live(t3).into_iter().filter(|&i| i != up).collect();
        let l1 = ct.chains[kids[0]].other(t3);
        let l2 = ct.chains[kids[1]].other(t3);
        debug_assert!(ct.degree(l1) == 1 && ct.degree(l2) == 1);
        let (mut v, mut e) = ct.chains[kids[0]].walk_from(l1);
        let (v2, e2) = ct.chains[kids[1]].walk_from(t3);
        v.extend_from_slice(&v2[1..]);
        e.extend(e2);
        out.push(Path { vertices: v, edges: e });
        let s = ct.chains[up].other(t3);
        for i in [kids[0], kids[1], up] {
            ct.chains[i].alive = false;
        }
        if ct.degree(s) == 2 {
            ct.suppress(s);
        }
    }
    debug_assert_eq!(out.len(), p / 2);
    Ok(out)
}

/// Even A-paths from a tree whose A-vertices are leaves: keep the larger
/// colour class of A, prune everything else down to it, pair its leaves.
pub fn even_component_paths(t: &Tree, a: &TerminalSet) -> Result<Vec<Path>> {
    let terminals: Vec<VertexId> = t.vertices().filter(|&v| a.contains(v)).collect();
    if let Some(&bad) = terminals.iter().find(|&&v| t.degree(v) > 1) {
        return Err(Error::Precondition(format!("A-vertex {bad} is not a leaf")));
    }
    if terminals.len() < 2 {
        return Ok(Vec::new());
    }
    let colour = t.bipartition();
    let (left, right): (Vec<VertexId>, Vec<VertexId>) = terminals.iter().partition(|&&v| colour[&v]);
    let keep: BTreeSet<VertexId> = match left.len().cmp(&right.len()) {
        std::cmp::Ordering::Greater => left.into_iter().collect(),
        std::cmp::Ordering::Less => right.into_iter().collect(),
        std::cmp::Ordering::Equal => {
            if colour[&terminals[0]] {
                left.into_iter().collect()
            } else {
                right.into_iter().collect()
            }
        }
    };
    if keep.len() < 2 {
        return Ok(Vec::new());
    }
    let mut deg: BTreeMap<VertexId, usize> = t.vertices().map(|v| (v, t.degree(v))).collect();
    let mut removed = BTreeSet::new();
    let mut queue: Vec<VertexId> = t.vertices().filter(|&v| deg[&v] <= 1 && !keep.contains(&v)).collect();
    while let Some(v) = queue.pop() {
        if !removed.insert(v) {
            continue;
        }
        for &(_, w) in t.neighbors(v) {
            if removed.contains(&w) {
                continue;
            }
            let d = deg.get_mut(&w).unwrap();
            *d -= 1;
            if *d <= 1 && !keep.contains(&w) {
                queue.push(w);
            }
        }
    }
    let pruned = t.without(&removed).expect("pruning keeps the subtree spanning A_T");
    leaf_pair_paths(&pruned)
}

/// At least ⌊|A∩V(t)|/2⌋ pairwise edge-disjoint A-paths in a tree, by a
/// post-order sweep that pairs dangling A-ends at non-A vertices.
pub fn tree_edge_disjoint_apaths(t: &Tree, a: &TerminalSet) -> Result<Vec<Path>> {
    let count = t.vertices().filter(|&v| a.contains(v)).count();
    if count < 2 {
        return Err(Error::Precondition("fewer than 2 A-vertices in the tree".into()));
    }
    let root = t.root();
    let parent = t.parents(root);
    let order = t.bfs_order(root);
    // dangle[v]: path from an A-vertex up to v, not yet closed
    let mut dangle: BTreeMap<VertexId, Path> = BTreeMap::new();
    let mut out = Vec::new();
    for &v in order.iter().rev() {
        let mut incoming = Vec::new();
        for &(e, c) in t.neighbors(v) {
            if parent.get(&c).map(|&(p, _)| p) != Some(v) {
                continue;
            }
            if let Some(mut d) = dangle.remove(&c) {
                d.vertices.push(v);
                d.edges.push(e);
                incoming.push(d);
            }
        }
        let up = if a.contains(v) {
            out.extend(incoming);
            Some(Path::trivial(v))
        } else {
            let mut it = incoming.into_iter();
            let mut leftover = None;
            while let Some(d1) = it.next() {
                match it.next() {
                    Some(d2) => {
                        let tail = d2.reversed();
                        let mut p = d1;
                        p.vertices.extend_from_slice(&tail.vertices[1..]);
                        p.edges.extend(tail.edges);
                        out.push(p);
                    }
                    None => leftover = Some(d1),
                }
            }
            leftover
        };
        if let Some(d) = up {
            dangle.insert(v, d);
        }
    }
    debug_assert!(out.len() >= count / 2);
    Ok(out)
}
