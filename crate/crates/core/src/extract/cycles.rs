use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::tree::Tree;
use super::tree_edge_disjoint_apaths;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, TerminalLabel, TerminalSet, VertexId};
use crate::oracle::{Budget, Meter};

/// A closed walk without repeated vertices: edge `i` joins `vertices[i]` and
/// `vertices[(i + 1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

pub fn validate_cycle(g: &Graph, c: &Cycle) -> Result<()> {
    let n = c.vertices.len();
    if n == 0 || c.edges.len() != n {
        return Err(Error::InvalidPath("cycle needs as many edges as vertices".into()));
    }
    let distinct_v: BTreeSet<_> = c.vertices.iter().collect();
    let distinct_e: BTreeSet<_> = c.edges.iter().collect();
    if distinct_v.len() != n || distinct_e.len() != n {
        return Err(Error::InvalidPath("cycle repeats a vertex or edge".into()));
    }
    for i in 0..n {
        let e = g.edge(c.edges[i]);
        let (x, y) = (c.vertices[i], c.vertices[(i + 1) % n]);
        let joins = (e.u == x && e.v == y) || (!g.is_directed() && e.u == y && e.v == x);
        if !joins {
            return Err(Error::InvalidPath(format!("edge {} does not join {} and {}", c.edges[i], x, y)));
        }
    }
    Ok(())
}

/// An even cycle inside the vertex set `cell`, by exhaustive search rooted at
/// each cycle's smallest vertex.
fn even_cycle_in(g: &Graph, cell: &BTreeSet<VertexId>, meter: &mut Meter) -> Result<Option<Cycle>> {
    struct Search<'a, 'm> {
        g: &'a Graph,
        cell: &'a BTreeSet<VertexId>,
        root: VertexId,
        verts: Vec<VertexId>,
        edges: Vec<EdgeId>,
        on: BTreeSet<VertexId>,
        meter: &'m mut Meter,
    }
    impl Search<'_, '_> {
        fn go(&mut self, v: VertexId) -> Result<Option<Cycle>> {
            for inc in self.g.incident(v) {
                let w = inc.other;
                if w == v || !self.cell.contains(&w) || w < self.root {
                    continue;
                }
                self.meter.tick()?;
                if w == self.root {
                    let closing_ok = self.edges.first() != Some(&inc.edge);
                    if closing_ok && (self.edges.len() + 1) % 2 == 0 {
                        let mut edges = self.edges.clone();
                        edges.push(inc.edge);
                        return Ok(Some(Cycle { vertices: self.verts.clone(), edges }));
                    }
                    continue;
                }
                if self.on.contains(&w) {
                    continue;
                }
                self.on.insert(w);
                self.verts.push(w);
                self.edges.push(inc.edge);
                let found = self.go(w)?;
                self.on.remove(&w);
                self.verts.pop();
                self.edges.pop();
                if found.is_some() {
                    return Ok(found);
                }
            }
            Ok(None)
        }
    }
    for &root in cell {
        let mut s = Search {
            g,
            cell,
            root,
            verts: vec![root],
            edges: Vec::new(),
            on: BTreeSet::from([root]),
            meter: &mut *meter,
        };
        if let Some(c) = s.go(root)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Components of `g - x`, ordered by smallest member.
fn components_without(g: &Graph, x: VertexId) -> Vec<BTreeSet<VertexId>> {
    let mut seen = vec![false; g.vertex_count()];
    seen[x.0] = true;
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s.0] {
            continue;
        }
        seen[s.0] = true;
        let mut cell = BTreeSet::from([s]);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for inc in g.incident(v) {
                if !seen[inc.other.0] {
                    seen[inc.other.0] = true;
                    cell.insert(inc.other);
                    queue.push_back(inc.other);
                }
            }
        }
        out.push(cell);
    }
    out
}

/// Edge-disjoint even cycles through `x` inside one component `cell`: each
/// x-edge becomes a subdivision vertex, paths between same-colour
/// subdivision vertices in a spanning tree close up into even cycles.
fn cycles_through_hub(g: &Graph, x: VertexId, cell: &BTreeSet<VertexId>) -> Result<Vec<Cycle>> {
    let mut aux = Graph::new(false);
    let mut host_vertex = Vec::new();
    let mut aux_of = BTreeMap::new();
    for &v in cell {
        aux_of.insert(v, aux.add_vertex(g.name(v).to_string())?);
        host_vertex.push(Some(v));
    }
    let mut host_edge = Vec::new();
    for &v in cell {
        for inc in g.incident(v) {
            let w = inc.other;
            if cell.contains(&w) && v < w {
                aux.add_edge(aux_of[&v], aux_of[&w]);
                host_edge.push(inc.edge);
            }
        }
    }
    // one subdivision vertex per x-edge into the cell, remembering that edge
    let mut hub_edge = BTreeMap::new();
    for inc in g.incident(x) {
        if let Some(&w) = aux_of.get(&inc.other) {
            let s = aux.add_vertex(format!("hub.{}", inc.edge.0))?;
            host_vertex.push(None);
            hub_edge.insert(s, inc.edge);
            aux.add_edge(s, w);
            host_edge.push(inc.edge);
        }
    }
    if hub_edge.len() < 2 {
        return Ok(Vec::new());
    }
    let forest = crate::graph::spanning_forest(&aux);
    let tree = Tree::from_edges(&aux, &forest)?;
    let colour = tree.bipartition();
    let (c1, c2): (Vec<VertexId>, Vec<VertexId>) = hub_edge.keys().partition(|s| colour[s]);
    let class = if c1.len() >= c2.len() { c1 } else { c2 };
    if class.len() < 2 {
        return Ok(Vec::new());
    }
    let a_prime = TerminalSet::from_iter(TerminalLabel::A, class);
    let mut out = Vec::new();
    for p in tree_edge_disjoint_apaths(&tree, &a_prime)? {
        // s, w1, ..., w2, t  becomes  x, w1, ..., w2 closed by the x-edges
        let inner = &p.vertices[1..p.vertices.len() - 1];
        let mut vertices = vec![x];
        vertices.extend(inner.iter().map(|&v| host_vertex[v.0].expect("interior is a host vertex")));
        let mut edges = vec![hub_edge[&p.first()]];
        edges.extend(p.edges[1..p.edges.len() - 1].iter().map(|e| host_edge[e.0]));
        edges.push(hub_edge[&p.last()]);
        out.push(Cycle { vertices, edges });
    }
    Ok(out)
}

/// `k` pairwise edge-disjoint even cycles in a graph with a vertex `x` of
/// degree at least 6k.
pub fn hub_even_cycles(g: &Graph, x: VertexId, k: usize, budget: &Budget) -> Result<Vec<Cycle>> {
    if g.is_directed() {
        return Err(Error::Precondition("graph must be undirected".into()));
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    if g.degree(x) < 6 * k {
        return Err(Error::Precondition(format!("deg({}) = {} < 6k = {}", g.name(x), g.degree(x), 6 * k)));
    }
    let cells = components_without(g, x);
    if cells.len() >= k {
        let mut meter = budget.meter();
        let mut found = Vec::new();
        for cell in &cells {
            let mut with_hub = cell.clone();
            with_hub.insert(x);
            if let Some(c) = even_cycle_in(g, &with_hub, &mut meter)? {
                found.push(c);
                if found.len() == k {
                    return Ok(found);
                }
            }
        }
    }
    let mut out = Vec::new();
    for cell in &cells {
        out.extend(cycles_through_hub(g, x, cell)?);
    }
    if out.len() < k {
        return Err(Error::Precondition(format!("only {} even cycles extracted, need {k}", out.len())));
    }
    out.truncate(k);
    Ok(out)
}
