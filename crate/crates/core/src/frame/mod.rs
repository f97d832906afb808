//! Maximal frames: subcubic forests whose leaves are exactly their A-vertices,
//! grown by augmentation until none applies.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::extract::Tree;
use crate::graph::{EdgeId, Graph, Path, TerminalSet, VertexId};
use crate::oracle::{Budget, Meter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameVariant {
    Plain,
    /// Every A-path inside the forest has length at least ℓ.
    Long(usize),
    /// Every component carries a witness even A-path.
    Even,
}

impl fmt::Display for FrameVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameVariant::Plain => write!(f, "plain"),
            FrameVariant::Long(l) => write!(f, "long:{l}"),
            FrameVariant::Even => write!(f, "even"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Augmentation {
    /// An A-path disjoint from the frame.
    NewComponent(Path),
    /// An A–F-path, oriented from its A-end to a degree-2 frame vertex.
    AttachPath(Path),
}

impl Augmentation {
    pub fn path(&self) -> &Path {
        match self {
            Augmentation::NewComponent(p) | Augmentation::AttachPath(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub variant: FrameVariant,
    edges: BTreeSet<EdgeId>,
    degree: Vec<usize>,
    /// Even variant: one even A-path per component, in creation order.
    pub witnesses: Vec<Path>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrameStats {
    pub c: usize,
    pub a_count: usize,
    pub u: BTreeSet<VertexId>,
    pub leaves: BTreeSet<VertexId>,
}

impl Frame {
    pub fn empty(g: &Graph, variant: FrameVariant) -> Self {
        Frame { variant, edges: BTreeSet::new(), degree: vec![0; g.vertex_count()], witnesses: Vec::new() }
    }

    /// A frame over the given edges; call [`Frame::validate`] before use.
    pub fn from_edges(g: &Graph, variant: FrameVariant, edges: &[EdgeId], witnesses: Vec<Path>) -> Self {
        let mut f = Frame::empty(g, variant);
        for &e in edges {
            f.add_edge(g, e);
        }
        f.witnesses = witnesses;
        f
    }

    fn add_edge(&mut self, g: &Graph, e: EdgeId) {
        if self.edges.insert(e) {
            let edge = g.edge(e);
            self.degree[edge.u.0] += 1;
            self.degree[edge.v.0] += 1;
        }
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degree[v.0]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.degree[v.0] > 0
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.degree.iter().enumerate().filter(|(_, &d)| d > 0).map(|(i, _)| VertexId(i))
    }

    /// Components as trees, ordered by smallest vertex.
    pub fn components(&self, g: &Graph) -> Vec<Tree> {
        let mut adj: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for &e in &self.edges {
            let edge = g.edge(e);
            adj.entry(edge.u).or_default().push(e);
            adj.entry(edge.v).or_default().push(e);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in adj.keys() {
            if !seen.insert(s) {
                continue;
            }
            let mut edges = BTreeSet::new();
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &e in &adj[&v] {
                    edges.insert(e);
                    let w = g.edge(e).other(v);
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            let edges: Vec<EdgeId> = edges.into_iter().collect();
            out.push(Tree::from_edges(g, &edges).expect("validated frames are forests"));
        }
        out
    }

    /// Checks every frame invariant, including the variant-specific ones.
    pub fn validate(&self, g: &Graph, a: &TerminalSet) -> Result<()> {
        let bad = |m: String| Err(Error::FrameInvariant(m));
        let mut uf: Vec<usize> = (0..g.vertex_count()).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut c = x;
            while uf[c] != r {
                let n = uf[c];
                uf[c] = r;
                c = n;
            }
            r
        }
        for &e in &self.edges {
            let edge = g.edge(e);
            let (ru, rv) = (find(&mut uf, edge.u.0), find(&mut uf, edge.v.0));
            if ru == rv {
                return bad(format!("edge {e} closes a cycle"));
            }
            uf[ru] = rv;
        }
        for v in self.vertices() {
            let d = self.degree(v);
            if d > 3 {
                return bad(format!("vertex {} has degree {d}", g.name(v)));
            }
            if (d == 1) != a.contains(v) {
                return bad(format!("vertex {} breaks the leaves-are-A rule", g.name(v)));
            }
        }
        let trees = self.components(g);
        for t in &trees {
            let leaves = t.leaves().len();
            let cubic = t.vertices().filter(|&v| t.degree(v) == 3).count();
            if leaves != cubic + 2 {
                return bad("leaf and degree-3 counts disagree".into());
            }
        }
        match self.variant {
            FrameVariant::Plain => {}
            FrameVariant::Long(ell) => {
                if ell == 0 {
                    return Err(Error::InvalidParameter("long frames need ell >= 1".into()));
                }
                for t in &trees {
                    for l in t.leaves() {
                        let dist = t.distances(l);
                        if t.leaves().iter().any(|&m| m != l && dist[&m] < ell) {
                            return bad(format!("leaf {} is closer than {ell} to another leaf", g.name(l)));
                        }
                    }
                }
            }
            FrameVariant::Even => {
                if self.witnesses.len() != trees.len() {
                    return bad(format!("{} witnesses for {} components", self.witnesses.len(), trees.len()));
                }
                let mut covered = BTreeSet::new();
                for w in &self.witnesses {
                    g.validate_path(w).map_err(|e| Error::FrameInvariant(e.to_string()))?;
                    let ok = w.len() % 2 == 0
                        && !w.is_empty()
                        && a.contains(w.first())
                        && a.contains(w.last())
                        && w.interior().iter().all(|&v| !a.contains(v))
                        && w.edges.iter().all(|e| self.edges.contains(e));
                    if !ok {
                        return bad("witness is not an even A-path of the frame".into());
                    }
                    let home = trees.iter().position(|t| t.contains(w.first())).unwrap();
                    if !covered.insert(home) {
                        return bad("two witnesses share a component".into());
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply(&mut self, g: &Graph, aug: &Augmentation) {
        for &e in &aug.path().edges {
            self.add_edge(g, e);
        }
        if let (FrameVariant::Even, Augmentation::NewComponent(p)) = (self.variant, aug) {
            self.witnesses.push(p.clone());
        }
    }
}

pub fn frame_stats(g: &Graph, a: &TerminalSet, frame: &Frame) -> FrameStats {
    let mut stats = FrameStats { c: frame.components(g).len(), ..FrameStats::default() };
    for v in frame.vertices() {
        match frame.degree(v) {
            1 => {
                stats.leaves.insert(v);
            }
            3 => {
                stats.u.insert(v);
            }
            _ => {}
        }
        if a.contains(v) {
            stats.a_count += 1;
        }
    }
    stats
}

struct Searcher<'a> {
    g: &'a Graph,
    a: &'a TerminalSet,
    frame: &'a Frame,
    meter: Meter,
}

impl Searcher<'_> {
    /// Vertices an augmenting path may pass through.
    fn free(&self, v: VertexId) -> bool {
        !self.frame.contains(v) && !self.a.contains(v)
    }

    fn starts(&self) -> Vec<VertexId> {
        self.a.iter().filter(|&v| !self.frame.contains(v)).collect()
    }

    /// Shortest path from `s` through free vertices to the first vertex
    /// accepted by `target`.
    fn bfs(&mut self, s: VertexId, target: impl Fn(VertexId) -> bool) -> Result<Option<Path>> {
        let n = self.g.vertex_count();
        let mut pred: Vec<Option<(EdgeId, VertexId)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s.0] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for inc in self.g.incident(v) {
                let w = inc.other;
                if seen[w.0] {
                    continue;
                }
                self.meter.tick()?;
                if target(w) {
                    pred[w.0] = Some((inc.edge, v));
                    return Ok(Some(unwind(&pred, w)));
                }
                if self.free(w) {
                    seen[w.0] = true;
                    pred[w.0] = Some((inc.edge, v));
                    queue.push_back(w);
                }
            }
        }
        Ok(None)
    }

    /// Free vertices reachable from the current path end, and whether any
    /// target is adjacent to that region.
    fn reach(&self, from: VertexId, on: &[bool], target: &impl Fn(VertexId) -> bool) -> (usize, bool) {
        let mut seen = on.to_vec();
        let mut stack = vec![from];
        let mut count = 0;
        let mut hit = false;
        while let Some(v) = stack.pop() {
            for inc in self.g.incident(v) {
                let w = inc.other;
                if seen[w.0] {
                    continue;
                }
                if target(w) {
                    hit = true;
                }
                if self.free(w) {
                    seen[w.0] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        (count, hit)
    }

    /// Depth-first search for a simple path from `s` through free vertices
    /// to a vertex `w` with `accept(w, length)`. `max_bonus` bounds the
    /// extra length any target can contribute, for pruning.
    fn dfs(
        &mut self,
        s: VertexId,
        target: impl Fn(VertexId) -> bool,
        accept: impl Fn(VertexId, usize) -> bool,
        need: usize,
    ) -> Result<Option<Path>> {
        let mut on = vec![false; self.g.vertex_count()];
        on[s.0] = true;
        let mut verts = vec![s];
        let mut edges = Vec::new();
        self.dfs_from(&target, &accept, need, &mut on, &mut verts, &mut edges)
    }

    fn dfs_from(
        &mut self,
        target: &impl Fn(VertexId) -> bool,
        accept: &impl Fn(VertexId, usize) -> bool,
        need: usize,
        on: &mut Vec<bool>,
        verts: &mut Vec<VertexId>,
        edges: &mut Vec<EdgeId>,
    ) -> Result<Option<Path>> {
        let v = *verts.last().unwrap();
        let (room, hit) = self.reach(v, on, target);
        if !hit || edges.len() + room + 1 < need {
            return Ok(None);
        }
        for inc in self.g.incident(v) {
            let w = inc.other;
            if on[w.0] {
                continue;
            }
            self.meter.tick()?;
            if target(w) && accept(w, edges.len() + 1) {
                let mut p = Path { vertices: verts.clone(), edges: edges.clone() };
                p.vertices.push(w);
                p.edges.push(inc.edge);
                return Ok(Some(p));
            }
            if self.free(w) {
                on[w.0] = true;
                verts.push(w);
                edges.push(inc.edge);
                let found = self.dfs_from(target, accept, need, on, verts, edges)?;
                verts.pop();
                edges.pop();
                on[w.0] = false;
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }

    fn new_component(&mut self) -> Result<Option<Path>> {
        let (g, a, frame) = (self.g, self.a, self.frame);
        let fresh = |w: VertexId| a.contains(w) && !frame.contains(w);
        for s in self.starts() {
            let found = match frame.variant {
                FrameVariant::Plain | FrameVariant::Long(0..=1) => self.bfs(s, |w| fresh(w) && w != s)?,
                FrameVariant::Long(ell) => self.dfs(s, |w| fresh(w) && w != s, |_, len| len >= ell, ell)?,
                FrameVariant::Even => self.dfs(s, |w| fresh(w) && w != s, |_, len| len % 2 == 0, 2)?,
            };
            if let Some(p) = found {
                debug_assert!(g.validate_path(&p).is_ok());
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    fn attach(&mut self) -> Result<Option<Path>> {
        let (g, frame) = (self.g, self.frame);
        let hub = |w: VertexId| frame.degree(w) == 2;
        match frame.variant {
            FrameVariant::Plain | FrameVariant::Even | FrameVariant::Long(0..=1) => {
                for s in self.starts() {
                    if let Some(p) = self.bfs(s, hub)? {
                        return Ok(Some(p));
                    }
                }
                Ok(None)
            }
            FrameVariant::Long(ell) => {
                // distance inside the forest from each frame vertex to its nearest leaf
                let mut leaf_dist = vec![usize::MAX; g.vertex_count()];
                let mut queue = VecDeque::new();
                for v in frame.vertices().filter(|&v| frame.degree(v) == 1) {
                    leaf_dist[v.0] = 0;
                    queue.push_back(v);
                }
                while let Some(v) = queue.pop_front() {
                    for inc in g.incident(v) {
                        if frame.edges.contains(&inc.edge) && leaf_dist[inc.other.0] == usize::MAX {
                            leaf_dist[inc.other.0] = leaf_dist[v.0] + 1;
                            queue.push_back(inc.other);
                        }
                    }
                }
                let best = frame.vertices().filter(|&v| hub(v)).map(|v| leaf_dist[v.0]).max().unwrap_or(0);
                let need = ell.saturating_sub(best).max(1);
                for s in self.starts() {
                    let ld = &leaf_dist;
                    let found = self.dfs(s, hub, |w, len| len + ld[w.0] >= ell, need)?;
                    if let Some(p) = found {
                        return Ok(Some(p));
                    }
                }
                Ok(None)
            }
        }
    }
}

fn unwind(pred: &[Option<(EdgeId, VertexId)>], end: VertexId) -> Path {
    let mut vertices = vec![end];
    let mut edges = Vec::new();
    let mut cur = end;
    while let Some((e, p)) = pred[cur.0] {
        vertices.push(p);
        edges.push(e);
        cur = p;
    }
    vertices.reverse();
    edges.reverse();
    Path { vertices, edges }
}

fn search(g: &Graph, a: &TerminalSet, frame: &Frame, meter: Meter) -> Result<(Option<Augmentation>, Meter)> {
    let mut s = Searcher { g, a, frame, meter };
    if let Some(p) = s.new_component()? {
        return Ok((Some(Augmentation::NewComponent(p)), s.meter));
    }
    let found = s.attach()?.map(Augmentation::AttachPath);
    Ok((found, s.meter))
}

fn check_input(g: &Graph) -> Result<()> {
    if g.is_directed() {
        return Err(Error::Precondition("frames live in undirected graphs".into()));
    }
    Ok(())
}

/// The first applicable augmentation in id order, or `None` if the frame is
/// maximal.
pub fn find_augmentation(g: &Graph, a: &TerminalSet, frame: &Frame, budget: &Budget) -> Result<Option<Augmentation>> {
    check_input(g)?;
    frame.validate(g, a)?;
    Ok(search(g, a, frame, budget.meter())?.0)
}

/// A maximal frame grown from the empty one. The budget bounds the total
/// search effort across all augmentation steps.
pub fn construct_frame(g: &Graph, a: &TerminalSet, variant: FrameVariant, budget: &Budget) -> Result<Frame> {
    check_input(g)?;
    if let FrameVariant::Long(0) = variant {
        return Err(Error::InvalidParameter("long frames need ell >= 1".into()));
    }
    let mut frame = Frame::empty(g, variant);
    let mut meter = budget.meter();
    loop {
        let (found, m) = search(g, a, &frame, meter)?;
        meter = m;
        match found {
            Some(aug) => frame.apply(g, &aug),
            None => break,
        }
    }
    debug_assert!(frame.validate(g, a).is_ok());
    Ok(frame)
}
