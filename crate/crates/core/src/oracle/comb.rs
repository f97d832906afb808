use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{EdgeId, Graph, TerminalSet, VertexId};

/// Whether the subgraph formed by `edges` is an A-ℓ-comb: a subdivision of
/// a path of length ℓ with a pendant edge at every internal vertex, whose
/// leaves are exactly its A-vertices.
pub fn is_comb(g: &Graph, edges: &[EdgeId], a: &TerminalSet, ell: usize) -> bool {
    if edges.is_empty() || ell == 0 {
        return false;
    }
    let distinct: BTreeSet<EdgeId> = edges.iter().copied().collect();
    if distinct.len() != edges.len() {
        return false;
    }
    let mut adj: BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> = BTreeMap::new();
    for &e in edges {
        let edge = g.edge(e);
        if edge.is_loop() {
            return false;
        }
        adj.entry(edge.u).or_default().push((e, edge.v));
        adj.entry(edge.v).or_default().push((e, edge.u));
    }
    // a tree: |V| = |E| + 1 and connected
    if adj.len() != edges.len() + 1 {
        return false;
    }
    let start = *adj.keys().next().unwrap();
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &(_, w) in &adj[&v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    if seen.len() != adj.len() {
        return false;
    }
    for (&v, nbrs) in &adj {
        let deg = nbrs.len();
        if deg > 3 || (deg == 1) != a.contains(v) {
            return false;
        }
    }
    let spine: BTreeSet<VertexId> = adj.iter().filter(|(_, n)| n.len() == 3).map(|(&v, _)| v).collect();
    if spine.len() != ell - 1 {
        return false;
    }
    if spine.is_empty() {
        return true;
    }
    // neighbours of each branch vertex after suppressing degree-2 vertices
    let suppressed_next = |first: (EdgeId, VertexId)| -> VertexId {
        let (mut prev_edge, mut cur) = first;
        while adj[&cur].len() == 2 {
            let &(e, w) = adj[&cur].iter().find(|&&(e, _)| e != prev_edge).unwrap();
            prev_edge = e;
            cur = w;
        }
        cur
    };
    let mut spine_edges = 0;
    for &u in &spine {
        let spine_nbrs = adj[&u].iter().filter(|&&step| spine.contains(&suppressed_next(step))).count();
        if spine_nbrs > 2 {
            return false;
        }
        spine_edges += spine_nbrs;
    }
    // a forest on the spine with |spine| - 1 edges is a path
    spine_edges / 2 == spine.len() - 1
}
