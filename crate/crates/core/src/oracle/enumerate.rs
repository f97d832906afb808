use std::ops::ControlFlow;

use super::spec::{Budget, Instance, Meter, PathKind, PathSpec};
use crate::error::Result;
use crate::graph::{EdgeId, Path, VertexId};
use crate::labeling::matches_spec;

/// Vertices and edges a search must not touch.
#[derive(Debug, Clone, Default)]
pub struct Avoid {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

struct Walker<'a, 'b> {
    inst: Instance<'a>,
    spec: PathSpec,
    a_mask: Vec<bool>,
    b_mask: Vec<bool>,
    blocked_v: Vec<bool>,
    blocked_e: Vec<bool>,
    on_path: Vec<bool>,
    verts: Vec<VertexId>,
    edges: Vec<EdgeId>,
    meter: &'b mut Meter,
}

impl Walker<'_, '_> {
    fn is_end(&self, w: VertexId) -> bool {
        if self.spec.kind.is_ab() {
            self.b_mask[w.0]
        } else {
            self.a_mask[w.0]
        }
    }

    fn may_be_interior(&self, w: VertexId) -> bool {
        !self.a_mask[w.0] && !(self.spec.kind.is_ab() && self.b_mask[w.0])
    }

    /// Each undirected path is reported once, from its smaller endpoint
    /// whenever both orientations would be discovered.
    fn canonical(&self, start: VertexId, end: VertexId) -> bool {
        if self.inst.graph.is_directed() {
            return true;
        }
        if self.spec.kind.is_ab() {
            !(self.b_mask[start.0] && self.a_mask[end.0]) || start < end
        } else {
            start < end
        }
    }

    fn dfs<F>(&mut self, v: VertexId, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&Path) -> Result<ControlFlow<()>>,
    {
        let g = self.inst.graph;
        for inc in g.out_steps(v) {
            let w = inc.other;
            if w == v || self.blocked_e[inc.edge.0] || self.blocked_v[w.0] || self.on_path[w.0] {
                continue;
            }
            self.meter.tick()?;
            self.on_path[w.0] = true;
            self.verts.push(w);
            self.edges.push(inc.edge);
            let mut flow = ControlFlow::Continue(());
            if self.is_end(w) && self.canonical(self.verts[0], w) {
                let p = Path { vertices: self.verts.clone(), edges: self.edges.clone() };
                if matches_spec(&self.spec, &self.inst, &p)? {
                    flow = visit(&p)?;
                }
            }
            if flow.is_continue() && self.may_be_interior(w) {
                flow = self.dfs(w, visit)?;
            }
            self.on_path[w.0] = false;
            self.verts.pop();
            self.edges.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Calls `visit` on every target path avoiding `avoid`, in deterministic
/// order, until it breaks.
pub(crate) fn walk_paths<F>(
    inst: &Instance<'_>,
    spec: PathSpec,
    avoid: &Avoid,
    meter: &mut Meter,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&Path) -> Result<ControlFlow<()>>,
{
    let g = inst.graph;
    spec.kind.validate()?;
    // surface missing-input errors even when no candidate path exists
    matches_spec(&spec, inst, &Path::trivial(VertexId(0)))?;
    let n = g.vertex_count();
    let mut blocked_v = vec![false; n];
    for v in &avoid.vertices {
        blocked_v[v.0] = true;
    }
    let mut blocked_e = vec![false; g.edge_count()];
    for e in &avoid.edges {
        blocked_e[e.0] = true;
    }
    let mut walker = Walker {
        inst: *inst,
        spec,
        a_mask: inst.a.mask(n),
        b_mask: inst.b.map(|b| b.mask(n)).unwrap_or_else(|| vec![false; n]),
        blocked_v,
        blocked_e,
        on_path: vec![false; n],
        verts: Vec::new(),
        edges: Vec::new(),
        meter,
    };
    for start in inst.a.iter() {
        if walker.blocked_v[start.0] {
            continue;
        }
        walker.on_path[start.0] = true;
        walker.verts.push(start);
        let flow = walker.dfs(start, &mut visit)?;
        walker.verts.pop();
        walker.on_path[start.0] = false;
        if flow.is_break() {
            break;
        }
    }
    Ok(())
}

/// All target paths, each once up to reversal (undirected graphs report the
/// smaller endpoint first; directed graphs keep orientation).
pub fn enumerate_paths(inst: &Instance<'_>, spec: PathSpec, budget: &Budget) -> Result<Vec<Path>> {
    budget.check_graph(inst.graph)?;
    let mut meter = budget.meter();
    let mut out = Vec::new();
    walk_paths(inst, spec, &Avoid::default(), &mut meter, |p| {
        out.push(p.clone());
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(out)
}

/// Some target path that avoids `avoid`, if one exists.
pub fn find_path_avoiding(inst: &Instance<'_>, spec: PathSpec, avoid: &Avoid, budget: &Budget) -> Result<Option<Path>> {
    budget.check_graph(inst.graph)?;
    let mut meter = budget.meter();
    let mut found = None;
    walk_paths(inst, spec, avoid, &mut meter, |p| {
        found = Some(p.clone());
        Ok(ControlFlow::Break(()))
    })?;
    Ok(found)
}

/// Shorthand used by tests and the CLI.
pub fn count_paths(inst: &Instance<'_>, kind: PathKind, budget: &Budget) -> Result<usize> {
    enumerate_paths(inst, PathSpec::vertex(kind), budget).map(|v| v.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::{Graph, TerminalLabel, TerminalSet};

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(false);
        let vs: Vec<_> = (0..n).map(|i| g.add_vertex(format!("v{i}")).unwrap()).collect();
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(vs[i], vs[j]);
            }
        }
        g
    }

    #[test]
    fn triangle_all_terminals_has_three_paths() {
        let g = complete(3);
        let a = TerminalSet::from_iter(TerminalLabel::A, g.vertices());
        let paths =
            enumerate_paths(&Instance::new(&g, &a), PathSpec::vertex(PathKind::Plain), &Budget::default()).unwrap();
        assert_eq!(paths.len(), 3);
        assert!(paths.iter().all(|p| p.len() == 1 && p.first() < p.last()));
    }

    #[test]
    fn even_path_on_short_line() {
        let mut g = Graph::new(false);
        let a = g.add_vertex("a").unwrap();
        let u = g.add_vertex("u").unwrap();
        let b = g.add_vertex("b").unwrap();
        g.add_edge(a, u);
        g.add_edge(u, b);
        let aset = TerminalSet::from_iter(TerminalLabel::A, [a, b]);
        assert_eq!(count_paths(&Instance::new(&g, &aset), PathKind::Even, &Budget::default()).unwrap(), 1);
    }

    #[test]
    fn empty_terminal_set() {
        let g = complete(4);
        let a = TerminalSet::new(TerminalLabel::A);
        assert_eq!(count_paths(&Instance::new(&g, &a), PathKind::Plain, &Budget::default()).unwrap(), 0);
    }

    #[test]
    fn vertex_cap_is_explicit() {
        let g = complete(21);
        let a = TerminalSet::from_iter(TerminalLabel::A, g.vertices());
        let err = count_paths(&Instance::new(&g, &a), PathKind::Plain, &Budget::default()).unwrap_err();
        assert!(err.budget_exceeded());
    }

    #[test]
    fn node_budget_is_explicit() {
        let g = complete(9);
        let a = TerminalSet::from_iter(TerminalLabel::A, [crate::graph::VertexId(0), crate::graph::VertexId(1)]);
        let err = count_paths(&Instance::new(&g, &a), PathKind::Plain, &Budget::nodes(50)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(_)));
    }

    #[test]
    fn directed_kind_requires_directed_graph() {
        let g = complete(3);
        let a = TerminalSet::from_iter(TerminalLabel::A, g.vertices());
        assert!(count_paths(&Instance::new(&g, &a), PathKind::DirectedPlain, &Budget::default()).is_err());
    }

    #[test]
    fn avoiding_blocks_paths() {
        let g = complete(3);
        let a = TerminalSet::from_iter(TerminalLabel::A, [crate::graph::VertexId(0), crate::graph::VertexId(1)]);
        let inst = Instance::new(&g, &a);
        let spec = PathSpec::vertex(PathKind::Plain);
        let avoid = Avoid { vertices: vec![], edges: vec![EdgeId(0)] };
        let p = find_path_avoiding(&inst, spec, &avoid, &Budget::default()).unwrap().unwrap();
        assert_eq!(p.len(), 2);
        let avoid = Avoid { vertices: vec![crate::graph::VertexId(1)], edges: vec![] };
        assert!(find_path_avoiding(&inst, spec, &avoid, &Budget::default()).unwrap().is_none());
    }
}
