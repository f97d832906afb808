#![allow(dead_code)]

use std::collections::BTreeSet;

use epframe::epsolve::{solver_budget, Certificate, SolveParams, SolverRegistry, Variant};
use epframe::graph::{Graph, GraphDoc, Path, TerminalLabel, TerminalSet, VertexId};
use epframe::oracle::{verify_certificate, Budget, Report};

/// Builds an undirected graph on `n` vertices `v0..` from an edge list.
pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    let mut g = Graph::new(false);
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    for &(u, v) in edges {
        g.add_edge(VertexId(u), VertexId(v));
    }
    g
}

pub fn terminals(ids: impl IntoIterator<Item = usize>) -> TerminalSet {
    TerminalSet::from_iter(TerminalLabel::A, ids.into_iter().map(VertexId))
}

/// Solves with the named variant and checks the certificate exhaustively.
pub fn solve_and_verify(doc: &GraphDoc, variant: Variant, params: SolveParams) -> (Certificate, Report) {
    let reg = SolverRegistry::default();
    let cert = reg
        .get(variant.name())
        .unwrap()
        .solve(&doc.graph, &doc.a, params, &solver_budget())
        .unwrap_or_else(|e| panic!("{variant} failed: {e}"));
    let report = verify_certificate(doc, &cert.to_doc(&doc.graph), &Budget::nodes(50_000_000));
    (cert, report)
}

/// Canonical undirected vertex sequence of a path.
pub fn canonical(p: &Path) -> Vec<usize> {
    let fwd: Vec<usize> = p.vertices.iter().map(|v| v.0).collect();
    let mut rev = fwd.clone();
    rev.reverse();
    fwd.min(rev)
}

/// Every simple path with at least one edge, both ends in A and no
/// interior A-vertex, by plain recursion over vertex sequences. Assumes a
/// simple undirected graph.
pub fn naive_apaths(g: &Graph, a: &TerminalSet) -> BTreeSet<Vec<usize>> {
    fn go(g: &Graph, a: &TerminalSet, seq: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        let last = *seq.last().unwrap();
        for u in 0..g.vertex_count() {
            if seq.contains(&u) || g.edges_between(VertexId(last), VertexId(u)).is_empty() {
                continue;
            }
            seq.push(u);
            if a.contains(VertexId(u)) {
                let mut rev = seq.clone();
                rev.reverse();
                out.insert(seq.clone().min(rev));
            } else {
                go(g, a, seq, out);
            }
            seq.pop();
        }
    }
    let mut out = BTreeSet::new();
    for s in a.iter() {
        go(g, a, &mut vec![s.0], &mut out);
    }
    out
}
