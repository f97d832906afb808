//! Unit-capacity max flow between vertex sets: edge-disjoint paths together
//! with a minimum edge cut of the same size.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutPackPair {
    pub paths: Vec<Path>,
    pub cut: BTreeSet<EdgeId>,
}

struct Flow<'a> {
    g: &'a Graph,
    blocked: Vec<bool>,
    /// +1: flow from `edge.u` to `edge.v`; -1: the reverse.
    flow: Vec<i8>,
}

impl Flow<'_> {
    /// Residual capacity of traversing edge `e` from `from`.
    fn residual(&self, e: EdgeId, from: VertexId) -> bool {
        if self.blocked[e.0] {
            return false;
        }
        let edge = self.g.edge(e);
        if edge.is_loop() {
            return false;
        }
        let forward = edge.u == from;
        let f = self.flow[e.0];
        if self.g.is_directed() {
            if forward {
                f == 0
            } else {
                f == 1
            }
        } else if forward {
            f < 1
        } else {
            f > -1
        }
    }

    fn push(&mut self, e: EdgeId, from: VertexId) {
        let forward = self.g.edge(e).u == from;
        self.flow[e.0] += if forward { 1 } else { -1 };
    }

    /// Breadth-first search from all of `s`; stops at the first `t`-vertex.
    /// Returns the reached set and, if found, the augmenting steps.
    fn search(&self, s: &[bool], t: &[bool]) -> (Vec<bool>, Option<Vec<(EdgeId, VertexId)>>) {
        let n = self.g.vertex_count();
        let mut seen = s.to_vec();
        let mut pred: Vec<Option<(EdgeId, VertexId)>> = vec![None; n];
        let mut queue: VecDeque<VertexId> = (0..n).filter(|&i| s[i]).map(VertexId).collect();
        while let Some(v) = queue.pop_front() {
            for inc in self.g.incident(v) {
                let w = inc.other;
                if seen[w.0] || !self.residual(inc.edge, v) {
                    continue;
                }
                seen[w.0] = true;
                pred[w.0] = Some((inc.edge, v));
                if t[w.0] {
                    let mut steps = Vec::new();
                    let mut cur = w;
                    while let Some((e, p)) = pred[cur.0] {
                        steps.push((e, p));
                        cur = p;
                    }
                    steps.reverse();
                    return (seen, Some(steps));
                }
                queue.push_back(w);
            }
        }
        (seen, None)
    }
}

/// Maximum family of edge-disjoint S–T paths avoiding `forbidden`, and a
/// minimum S–T edge cut in `g - forbidden`. Every path stops at the first
/// T-vertex it meets and has no interior vertex in S ∪ T.
pub fn max_edge_disjoint_paths(
    g: &Graph,
    s: &BTreeSet<VertexId>,
    t: &BTreeSet<VertexId>,
    forbidden: &BTreeSet<EdgeId>,
) -> Result<CutPackPair> {
    if let Some(v) = s.intersection(t).next() {
        return Err(Error::Precondition(format!("source and sink sets share {}", g.name(*v))));
    }
    let n = g.vertex_count();
    let mut s_mask = vec![false; n];
    let mut t_mask = vec![false; n];
    for v in s {
        s_mask[v.0] = true;
    }
    for v in t {
        t_mask[v.0] = true;
    }
    let mut blocked = vec![false; g.edge_count()];
    for e in forbidden {
        blocked[e.0] = true;
    }
    let mut fl = Flow { g, blocked, flow: vec![0; g.edge_count()] };
    let reached = loop {
        let (seen, steps) = fl.search(&s_mask, &t_mask);
        match steps {
            Some(steps) => {
                for (e, from) in steps {
                    fl.push(e, from);
                }
            }
            None => break seen,
        }
    };
    let cut: BTreeSet<EdgeId> = g
        .edge_ids()
        .filter(|&e| {
            let edge = g.edge(e);
            !fl.blocked[e.0] && !edge.is_loop() && {
                let (a, b) = (reached[edge.u.0], reached[edge.v.0]);
                if g.is_directed() {
                    a && !b
                } else {
                    a != b
                }
            }
        })
        .collect();
    let paths = decompose(g, &fl.flow, &s_mask, &t_mask);
    assert_eq!(paths.len(), cut.len(), "flow value must equal cut size");
    Ok(CutPackPair { paths, cut })
}

/// Split the flow into S–T paths; any closed loop met on the way is dropped.
fn decompose(g: &Graph, flow: &[i8], s: &[bool], t: &[bool]) -> Vec<Path> {
    let n = g.vertex_count();
    // out[v]: edges carrying flow out of v, in id order
    let mut out: Vec<VecDeque<(EdgeId, VertexId)>> = vec![VecDeque::new(); n];
    for e in g.edge_ids() {
        let edge = g.edge(e);
        match flow[e.0] {
            1 => out[edge.u.0].push_back((e, edge.v)),
            -1 => out[edge.v.0].push_back((e, edge.u)),
            _ => {}
        }
    }
    let mut paths = Vec::new();
    for start in (0..n).filter(|&i| s[i]).map(VertexId) {
        while !out[start.0].is_empty() {
            let mut vertices = vec![start];
            let mut edges = Vec::new();
            let mut cur = start;
            while !t[cur.0] {
                let (e, w) = out[cur.0].pop_front().expect("flow is conserved off S and T");
                if let Some(pos) = vertices.iter().position(|&v| v == w) {
                    vertices.truncate(pos + 1);
                    edges.truncate(pos);
                } else {
                    vertices.push(w);
                    edges.push(e);
                }
                cur = w;
            }
            paths.push(Path { vertices, edges });
        }
    }
    paths
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(false);
        for i in 0..n {
            g.add_vertex(format!("m{i}")).unwrap();
        }
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v));
        }
        g
    }

    fn set(ids: &[usize]) -> BTreeSet<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn theta_graph() {
        let g = graph(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        let r = max_edge_disjoint_paths(&g, &set(&[0]), &set(&[1]), &BTreeSet::new()).unwrap();
        assert_eq!(r.paths.len(), 3);
        assert_eq!(r.cut.len(), 3);
        for p in &r.paths {
            g.validate_path(p).unwrap();
        }
    }

    #[test]
    fn single_edge() {
        let g = graph(2, &[(0, 1)]);
        let r = max_edge_disjoint_paths(&g, &set(&[0]), &set(&[1]), &BTreeSet::new()).unwrap();
        assert_eq!(r.paths.len(), 1);
        assert_eq!(r.cut, BTreeSet::from([EdgeId(0)]));
        let r = max_edge_disjoint_paths(&g, &set(&[0]), &set(&[1]), &BTreeSet::from([EdgeId(0)])).unwrap();
        assert!(r.paths.is_empty() && r.cut.is_empty());
    }

    #[test]
    fn overlapping_sets_are_rejected() {
        let g = graph(2, &[(0, 1)]);
        assert!(max_edge_disjoint_paths(&g, &set(&[0, 1]), &set(&[1]), &BTreeSet::new()).is_err());
    }

    #[test]
    fn paths_stop_at_first_sink() {
        // 0 - 1 - 2 with both 1 and 2 sinks
        let g = graph(3, &[(0, 1), (1, 2)]);
        let r = max_edge_disjoint_paths(&g, &set(&[0]), &set(&[1, 2]), &BTreeSet::new()).unwrap();
        assert_eq!(r.paths.len(), 1);
        assert_eq!(r.paths[0].last(), VertexId(1));
    }

    #[test]
    fn flow_reroutes_through_cancellation() {
        // the classic case where the first BFS path must be partly undone
        let g = graph(6, &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (3, 5), (4, 5), (2, 5)]);
        let r = max_edge_disjoint_paths(&g, &set(&[0]), &set(&[5]), &BTreeSet::new()).unwrap();
        assert_eq!(r.paths.len(), 2);
        let mut used = BTreeSet::new();
        for p in &r.paths {
            g.validate_path(p).unwrap();
            assert!(p.edges.iter().all(|e| used.insert(*e)));
        }
    }
}
