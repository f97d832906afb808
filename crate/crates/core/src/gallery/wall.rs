use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::header;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, GraphDoc, TerminalLabel, TerminalSet, VertexId};
use crate::labeling::{EdgeLabeling, GroupElem, GroupSpec, LabelMode};
use crate::oracle::{enumerate_paths, Budget, PathKind, PathSpec};

/// Target parity of the parity wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::InvalidParameter(format!("parity must be even or odd, got '{s}'"))),
        }
    }

    fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// A generated wall with its distinguished edges.
#[derive(Debug, Clone)]
pub struct Wall {
    pub doc: GraphDoc,
    pub a1: VertexId,
    pub a2: VertexId,
    /// Top-row detour edges; empty for the plain wall.
    pub grey: Vec<EdgeId>,
    /// First edge of every attachment at `a1`.
    pub a1_edges: Vec<EdgeId>,
}

/// Rows `0..=r` with row `r` on top, columns `0..=2r+1`; vertical edges join
/// rows y and y+1 at columns x ≡ y (mod 2); the two degree-1 corners are
/// dropped. Edges are stored left to right and top to bottom.
struct Layout {
    r: usize,
}

impl Layout {
    fn exists(&self, x: usize, y: usize) -> bool {
        let r = self.r;
        let top_corner = if r % 2 == 0 { 0 } else { 2 * r + 1 };
        !((y == 0 && x == 2 * r + 1) || (y == r && x == top_corner))
    }

    fn row(&self, y: usize) -> Vec<usize> {
        (0..=2 * self.r + 1).filter(|&x| self.exists(x, y)).collect()
    }
}

fn colour(x: usize, y: usize) -> usize {
    (x + y) % 2
}

/// Builds the wall. With `parity`, adds grey detours and subdivides the
/// attachments so that grey-free A-paths have the other parity.
fn build(r: usize, parity: Option<Parity>) -> Result<Wall> {
    if r < 2 {
        return Err(Error::InvalidParameter("wall height r must be at least 2".into()));
    }
    let lay = Layout { r };
    let mut g = Graph::new(false);
    let mut at = BTreeMap::new();
    for y in (0..=r).rev() {
        for x in lay.row(y) {
            at.insert((x, y), g.add_vertex(format!("w{x}.{y}"))?);
        }
    }
    let a1 = g.add_vertex("a1")?;
    let a2 = g.add_vertex("a2")?;
    for y in (0..=r).rev() {
        let row = lay.row(y);
        for w in row.windows(2) {
            g.add_edge(at[&(w[0], y)], at[&(w[1], y)]);
        }
    }
    for y in (0..r).rev() {
        for x in lay.row(y) {
            if x % 2 == y % 2 && lay.exists(x, y + 1) {
                g.add_edge(at[&(x, y + 1)], at[&(x, y)]);
            }
        }
    }
    let mut grey = Vec::new();
    if parity.is_some() {
        let row = lay.row(r);
        let (lo, hi) = (row[0], row[row.len() - 1]);
        // top vertices without a vertical edge, paired off left to right
        let free: Vec<usize> = row.iter().copied().filter(|&x| x != lo && x != hi && x % 2 != (r + 1) % 2).collect();
        for pair in free.chunks_exact(2) {
            grey.push(g.add_edge(at[&(pair[0], r)], at[&(pair[1], r)]));
        }
        if grey.is_empty() {
            return Err(Error::Calibration(format!("no room for a grey edge at r = {r}")));
        }
    }
    let mut a1_edges = Vec::new();
    for y in (0..=r).rev() {
        let row = lay.row(y);
        let (x1, x2) = (row[0], row[row.len() - 1]);
        // left length ≡ colour + 1, right length ≡ colour + non-target parity + 1
        let (l1, l2) = match parity {
            None => (1, 1),
            Some(p) => {
                let l1 = 2 - (colour(x1, y) + 1) % 2;
                let l2 = 2 - (colour(x2, y) + (1 - p.bit()) + 1) % 2;
                (l1, l2)
            }
        };
        let es = g.add_subdivided_edge(a1, at[&(x1, y)], l1, &format!("l{y}"))?;
        a1_edges.push(es[0]);
        g.add_subdivided_edge(at[&(x2, y)], a2, l2, &format!("r{y}"))?;
    }
    let a = TerminalSet::from_iter(TerminalLabel::A, [a1, a2]);
    let b: Vec<VertexId> = if parity.is_some() {
        grey.iter().flat_map(|&e| [g.edge(e).u, g.edge(e).v]).collect()
    } else {
        lay.row(r).iter().map(|&x| at[&(x, r)]).collect()
    };
    let mut doc = GraphDoc::new(g, a);
    doc.b = Some(TerminalSet::from_iter(TerminalLabel::B, b));
    Ok(Wall { doc, a1, a2, grey, a1_edges })
}

/// Wall with a₁ on the left boundary, a₂ on the right, B the top row.
pub fn gen_wall_aba(r: usize) -> Result<Wall> {
    let mut w = build(r, None)?;
    w.doc.comments.push(header("wall-aba", &[("r", r)]));
    Ok(w)
}

/// Two-colours the graph without the grey edges; `None` if an odd cycle remains.
fn colouring_without(g: &Graph, skip: &BTreeSet<EdgeId>) -> Option<Vec<u8>> {
    let mut col = vec![u8::MAX; g.vertex_count()];
    for s in g.vertices() {
        if col[s.0] != u8::MAX {
            continue;
        }
        col[s.0] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for inc in g.incident(u) {
                if skip.contains(&inc.edge) {
                    continue;
                }
                let v = inc.other;
                if col[v.0] == u8::MAX {
                    col[v.0] = 1 - col[u.0];
                    queue.push_back(v);
                } else if col[v.0] == col[u.0] {
                    return None;
                }
            }
        }
    }
    Some(col)
}

/// Checks the parity contract: every grey-free A-path has the other parity,
/// and some A-path has the target parity. Exhaustive for `r ≤ 3`.
fn calibrate(w: &Wall, target: Parity, exhaustive: bool) -> Result<()> {
    let g = &w.doc.graph;
    let grey: BTreeSet<EdgeId> = w.grey.iter().copied().collect();
    let col = colouring_without(g, &grey)
        .ok_or_else(|| Error::Calibration("wall without grey edges is not bipartite".into()))?;
    if usize::from(col[w.a1.0] != col[w.a2.0]) == target.bit() {
        return Err(Error::Calibration("grey-free A-paths have the target parity".into()));
    }
    if !exhaustive {
        return Ok(());
    }
    let paths = enumerate_paths(&w.doc.instance(), PathSpec::vertex(PathKind::Plain), &Budget::nodes(100_000_000))?;
    let mut hit = false;
    for p in &paths {
        let parity = p.len() % 2;
        if parity == target.bit() {
            hit = true;
            if !p.edges.iter().any(|e| grey.contains(e)) {
                return Err(Error::Calibration(format!(
                    "grey-free A-path of length {} has the target parity",
                    p.len()
                )));
            }
        }
    }
    if !hit {
        return Err(Error::Calibration("no A-path has the target parity".into()));
    }
    Ok(())
}

/// Largest height checked by enumeration at construction time.
pub const PARITY_CHECK_MAX_R: usize = 3;

/// Wall with grey detours on the top row; A-paths of the target parity must
/// use an odd number of grey edges. B is the set of grey endpoints.
pub fn gen_wall_parity(r: usize, parity: Parity) -> Result<Wall> {
    let mut w = build(r, Some(parity))?;
    let exhaustive = r <= PARITY_CHECK_MAX_R;
    calibrate(&w, parity, exhaustive)?;
    w.doc.comments.push(format!("{} parity={}", header("wall-parity", &[("r", r)]), parity.name()));
    if !exhaustive {
        w.doc.comments.push("verification skipped".into());
    }
    Ok(w)
}

/// Parity-wall skeleton labelled μ on the a₁ edges, −μ on grey edges and 0
/// elsewhere, so every zero-weight A-path uses a grey edge.
pub fn gen_zero_label_wall(r: usize, group: GroupSpec, mu: GroupElem, mode: LabelMode) -> Result<Wall> {
    group.validate()?;
    if group.is_zero(mu) {
        return Err(Error::InvalidParameter("mu must be non-zero".into()));
    }
    let mut w = build(r, Some(Parity::Odd))?;
    let mut lab = EdgeLabeling::uniform(group, mode, w.doc.graph.edge_count(), group.zero());
    let neg = group.neg(mu)?;
    for &e in &w.a1_edges {
        lab.weights[e.0] = mu;
    }
    for &e in &w.grey {
        lab.weights[e.0] = neg;
    }
    w.doc.labeling = Some(lab);
    w.doc.b = None;
    let mode_name = match mode {
        LabelMode::Undirected => "undirected",
        LabelMode::Directed => "directed",
    };
    w.doc.comments.push(format!("{} mu={} mode={mode_name}", header("zero-wall", &[("r", r)]), group.format_elem(mu)));
    Ok(w)
}
