use std::collections::BTreeSet;

use super::header;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, GraphDoc, Path, TerminalLabel, TerminalSet, VertexId};
use crate::oracle::{enumerate_paths, Budget, Instance, PathKind, PathSpec};

/// Parameters of the modular grid family, with the derived lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularFamilyParams {
    pub m: usize,
    pub d: usize,
    pub s: usize,
    /// Smallest prime divisor of `m`.
    pub p: usize,
    /// Top-edge length `m / p`.
    pub b: usize,
    /// Right attachment length `m - m/p - 1`.
    pub c: usize,
}

impl ModularFamilyParams {
    pub fn new(m: usize, d: usize, s: usize) -> Result<Self> {
        let p = (2..=m).find(|q| m % q == 0).unwrap_or(m);
        if m <= 4 || p == m {
            return Err(Error::InvalidParameter(format!("m = {m}: m must be composite, m > 4")));
        }
        if d >= m {
            return Err(Error::InvalidParameter(format!("d = {d} must lie in 0..{m}")));
        }
        if s < 2 {
            return Err(Error::InvalidParameter("grid side s must be at least 2".into()));
        }
        let b = m / p;
        debug_assert!(b > 2);
        Ok(ModularFamilyParams { m, d, s, p, b, c: m - b - 1 })
    }

    /// Attachment lengths `(left, right)` after the residue modification.
    pub fn attachments(&self) -> (usize, usize, Modification) {
        let (m, d, c) = (self.m, self.d, self.c);
        if let Some(x) = (0..m).find(|x| (2 * x) % m == d) {
            (x + 1, c + x, Modification::Both(x))
        } else if d != (m / 2 + m - 2) % m {
            (d + 1, c, Modification::Left)
        } else {
            // the A-incident edge of the right chain grows to d + 1
            (1, c + d, Modification::Right)
        }
    }
}

/// How the A-incident edges were lengthened.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modification {
    /// Every A-incident edge became a path of length x + 1, with 2x ≡ d.
    Both(usize),
    Left,
    Right,
}

/// A generated grid together with the vertex classes the audits need.
#[derive(Debug, Clone)]
pub struct GridFamily {
    pub doc: GraphDoc,
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
    pub top_edges: BTreeSet<EdgeId>,
    /// Edges per top chain.
    pub top_chain: usize,
}

struct Lengths {
    top: usize,
    inner: usize,
    left: usize,
    right: usize,
}

/// Graph, left terminals, right terminals, top-chain edges.
type Built = (Graph, Vec<VertexId>, Vec<VertexId>, BTreeSet<EdgeId>);

fn build_grid(s: usize, lens: &Lengths) -> Result<Built> {
    let mut g = Graph::new(false);
    let mut at = vec![vec![VertexId(0); s + 1]; s + 1];
    for (i, row) in at.iter_mut().enumerate().skip(1) {
        for (j, slot) in row.iter_mut().enumerate().skip(1) {
            *slot = g.add_vertex(format!("g{i}.{j}"))?;
        }
    }
    let left: Vec<VertexId> = (1..=s).map(|i| g.add_vertex(format!("al{i}"))).collect::<Result<_>>()?;
    let right: Vec<VertexId> = (1..=s).map(|i| g.add_vertex(format!("ar{i}"))).collect::<Result<_>>()?;
    let mut top = BTreeSet::new();
    for i in 1..=s {
        for j in 1..s {
            let len = if i == 1 { lens.top } else { lens.inner };
            let es = g.add_subdivided_edge(at[i][j], at[i][j + 1], len, &format!("h{i}.{j}"))?;
            if i == 1 {
                top.extend(es);
            }
        }
    }
    for i in 1..s {
        for j in 1..=s {
            g.add_subdivided_edge(at[i][j], at[i + 1][j], lens.inner, &format!("v{i}.{j}"))?;
        }
    }
    for i in 1..=s {
        g.add_subdivided_edge(left[i - 1], at[i][1], lens.left, &format!("l{i}"))?;
        g.add_subdivided_edge(at[i][s], right[i - 1], lens.right, &format!("r{i}"))?;
    }
    Ok((g, left, right, top))
}

/// The grid G(m, s) with the residue-d modification.
pub fn gen_grid_mod(params: ModularFamilyParams) -> Result<GridFamily> {
    let (l, r, _) = params.attachments();
    let lens = Lengths { top: params.b, inner: params.m, left: l, right: r };
    let (g, left, right, top_edges) = build_grid(params.s, &lens)?;
    let a = TerminalSet::from_iter(TerminalLabel::A, left.iter().chain(&right).copied());
    let mut doc = GraphDoc::new(g, a);
    doc.comments.push(header("grid-mod", &[("m", params.m), ("d", params.d), ("s", params.s)]));
    Ok(GridFamily { doc, left, right, top_edges, top_chain: params.b })
}

/// Where an A-path starts and ends in a grid family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sides {
    LeftLeft,
    RightRight,
    Crossing,
}

impl GridFamily {
    pub fn sides(&self, p: &Path) -> Sides {
        let l = |v: VertexId| self.left.contains(&v);
        match (l(p.first()), l(p.last())) {
            (true, true) => Sides::LeftLeft,
            (false, false) => Sides::RightRight,
            _ => Sides::Crossing,
        }
    }

    pub fn top_count(&self, p: &Path) -> usize {
        // a path using one edge of a chain uses all of it
        p.edges.iter().filter(|e| self.top_edges.contains(e)).count() / self.top_chain
    }

    /// Proper: from left to right, using at least one top chain.
    pub fn is_proper(&self, p: &Path) -> bool {
        self.sides(p) == Sides::Crossing && self.top_count(p) > 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub paths: usize,
    pub proper_hits: usize,
    pub violations: Vec<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn a_paths(fam: &GridFamily, budget: &Budget) -> Result<Vec<Path>> {
    enumerate_paths(&Instance::new(&fam.doc.graph, &fam.doc.a), PathSpec::vertex(PathKind::Plain), budget)
}

/// Checks every A-path's length against the case analysis: the residue is
/// fixed by its two attachments plus `b` per top chain.
pub fn residue_audit(params: ModularFamilyParams, fam: &GridFamily, budget: &Budget) -> Result<AuditReport> {
    let (l, r, _) = params.attachments();
    let (m, b) = (params.m, params.b);
    let mut report = AuditReport::default();
    for p in a_paths(fam, budget)? {
        report.paths += 1;
        let t = fam.top_count(&p);
        let ends = match fam.sides(&p) {
            Sides::LeftLeft => 2 * l,
            Sides::RightRight => 2 * r,
            Sides::Crossing => l + r,
        };
        if p.len() % m != (ends + t * b) % m {
            report.violations.push(format!("length {} with {t} top chains breaks the residue rule", p.len()));
        }
        let hits = p.len() % m == params.d;
        if hits && !fam.is_proper(&p) {
            report.violations.push(format!("improper path of length {} has residue d", p.len()));
        }
        if hits {
            report.proper_hits += 1;
        }
    }
    if report.proper_hits == 0 {
        report.violations.push("no path has residue d".into());
    }
    Ok(report)
}

/// Improper paths never have residue d; some proper path does.
pub fn subdivision_audit(params: ModularFamilyParams, fam: &GridFamily, budget: &Budget) -> Result<AuditReport> {
    let mut report = AuditReport::default();
    for p in a_paths(fam, budget)? {
        report.paths += 1;
        let hits = p.len() % params.m == params.d;
        if fam.is_proper(&p) {
            report.proper_hits += usize::from(hits);
        } else if hits {
            report.violations.push(format!("improper path {:?} has length {} ≡ d", p.names(&fam.doc.graph), p.len()));
        }
    }
    if report.proper_hits == 0 {
        report.violations.push(format!("no proper path of length ≡ {} (mod {})", params.d, params.m));
    }
    Ok(report)
}

/// The grid with G(6, s) lengths, left terminals in A and right terminals in
/// B: top-free A–B paths are odd, each top chain flips the parity.
pub fn gen_even_abpath_counterexample(s: usize) -> Result<GridFamily> {
    let params = ModularFamilyParams::new(6, 0, s)?;
    let lens = Lengths { top: params.b, inner: params.m, left: 1, right: params.c };
    let (g, left, right, top_edges) = build_grid(s, &lens)?;
    let a = TerminalSet::from_iter(TerminalLabel::A, left.iter().copied());
    let mut doc = GraphDoc::new(g, a);
    doc.b = Some(TerminalSet::from_iter(TerminalLabel::B, right.iter().copied()));
    doc.comments.push(header("even-ab", &[("s", s)]));
    let mut fam = GridFamily { doc, left, right, top_edges, top_chain: params.b };
    if s <= 3 {
        verify_even_ab(&fam)?;
    } else {
        fam.doc.comments.push("verification skipped".into());
    }
    Ok(fam)
}

fn verify_even_ab(fam: &GridFamily) -> Result<()> {
    let inst = fam.doc.instance();
    let paths = enumerate_paths(&inst, PathSpec::vertex(PathKind::AB), &Budget::nodes(50_000_000))?;
    let mut even = 0;
    for p in &paths {
        let t = fam.top_count(p);
        if t == 0 && p.len() % 2 == 0 {
            return Err(Error::Calibration(format!("top-free A-B path of even length {}", p.len())));
        }
        even += usize::from(p.len() % 2 == 0);
    }
    if even == 0 {
        return Err(Error::Calibration("no even A-B path".into()));
    }
    Ok(())
}

/// Directed s×s grid: rows left to right, odd columns up and even columns
/// down, left terminals feed column 1, column s feeds right terminals; B is
/// the top row.
pub fn gen_directed_grid(s: usize) -> Result<GraphDoc> {
    if s < 2 {
        return Err(Error::InvalidParameter("grid side s must be at least 2".into()));
    }
    let mut g = Graph::new(true);
    let mut at = vec![vec![VertexId(0); s + 1]; s + 1];
    for (i, row) in at.iter_mut().enumerate().skip(1) {
        for (j, slot) in row.iter_mut().enumerate().skip(1) {
            *slot = g.add_vertex(format!("g{i}.{j}"))?;
        }
    }
    let left: Vec<VertexId> = (1..=s).map(|i| g.add_vertex(format!("al{i}"))).collect::<Result<_>>()?;
    let right: Vec<VertexId> = (1..=s).map(|i| g.add_vertex(format!("ar{i}"))).collect::<Result<_>>()?;
    for i in 1..=s {
        for j in 1..s {
            g.add_edge(at[i][j], at[i][j + 1]);
        }
    }
    // row 1 is the top
    for j in 1..=s {
        for i in 1..s {
            if j % 2 == 1 {
                g.add_edge(at[i + 1][j], at[i][j]);
            } else {
                g.add_edge(at[i][j], at[i + 1][j]);
            }
        }
    }
    for i in 1..=s {
        g.add_edge(left[i - 1], at[i][1]);
        g.add_edge(at[i][s], right[i - 1]);
    }
    let a = TerminalSet::from_iter(TerminalLabel::A, left.iter().chain(&right).copied());
    let top: Vec<VertexId> = (1..=s).map(|j| at[1][j]).collect();
    let mut doc = GraphDoc::new(g, a);
    doc.b = Some(TerminalSet::from_iter(TerminalLabel::B, top));
    doc.comments.push(header("directed-grid", &[("s", s)]));
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_derive_lengths() {
        let p = ModularFamilyParams::new(6, 0, 3).unwrap();
        assert_eq!((p.p, p.b, p.c), (2, 3, 2));
        assert_eq!(p.attachments(), (1, 2, Modification::Both(0)));
        assert!(ModularFamilyParams::new(5, 0, 3).is_err());
        assert!(ModularFamilyParams::new(4, 0, 3).is_err());
        assert!(ModularFamilyParams::new(6, 6, 3).is_err());
    }

    #[test]
    fn modification_cases() {
        let case = |m, d| ModularFamilyParams::new(m, d, 2).unwrap().attachments();
        assert_eq!(case(6, 1), (1, 3, Modification::Right));
        assert_eq!(case(6, 3), (4, 2, Modification::Left));
        assert_eq!(case(8, 5), (6, 3, Modification::Left));
        assert_eq!(case(9, 2), (2, 6, Modification::Both(1)));
    }

    #[test]
    fn grid_shape() {
        let fam = gen_grid_mod(ModularFamilyParams::new(6, 0, 2).unwrap()).unwrap();
        assert_eq!(fam.doc.a.len(), 4);
        assert_eq!(fam.top_edges.len(), 3);
        assert_eq!(fam.doc.comments, vec!["family=grid-mod m=6 d=0 s=2".to_string()]);
    }

    #[test]
    fn directed_grid_shape() {
        let doc = gen_directed_grid(3).unwrap();
        assert!(doc.graph.is_directed());
        assert_eq!(doc.graph.vertex_count(), 15);
        assert_eq!(doc.graph.edge_count(), 6 + 6 + 6);
    }
}
