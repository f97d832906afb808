//! Deterministic generators for the counterexample and lower-bound
//! families, each recording its parameters in a leading comment.

mod grid;
mod wall;

use std::collections::BTreeMap;

pub use grid::{
    gen_directed_grid, gen_even_abpath_counterexample, gen_grid_mod, residue_audit, subdivision_audit, AuditReport,
    GridFamily, Modification, ModularFamilyParams, Sides,
};
pub use wall::{gen_wall_aba, gen_wall_parity, gen_zero_label_wall, Parity, Wall, PARITY_CHECK_MAX_R};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphDoc, TerminalLabel, TerminalSet, VertexId};
use crate::labeling::{GroupSpec, LabelMode};

/// `family=<name> k1=v1 k2=v2 ...`
pub(crate) fn header(family: &str, params: &[(&str, usize)]) -> String {
    let mut s = format!("family={family}");
    for (k, v) in params {
        s.push_str(&format!(" {k}={v}"));
    }
    s
}

/// K_{2k−1} with every vertex in A.
pub fn gen_clique_a(k: usize) -> Result<GraphDoc> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n = 2 * k - 1;
    let mut g = Graph::new(false);
    for i in 0..n {
        g.add_vertex(format!("c{i}"))?;
    }
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(VertexId(u), VertexId(v));
        }
    }
    let a = TerminalSet::from_iter(TerminalLabel::A, (0..n).map(VertexId));
    let mut doc = GraphDoc::new(g, a);
    doc.comments.push(header("clique-a", &[("k", k)]));
    Ok(doc)
}

/// k−1 copies of K_{2ℓ−3}, each vertex matched to a private pendant A-vertex.
pub fn gen_long_lb(k: usize, ell: usize) -> Result<GraphDoc> {
    if k < 2 || ell < 3 {
        return Err(Error::InvalidParameter("long-lb needs k >= 2 and ell >= 3".into()));
    }
    let q = 2 * ell - 3;
    let mut g = Graph::new(false);
    let mut a = Vec::new();
    for c in 0..k - 1 {
        let core: Vec<VertexId> = (0..q).map(|i| g.add_vertex(format!("k{c}.{i}"))).collect::<Result<_>>()?;
        for i in 0..q {
            for j in i + 1..q {
                g.add_edge(core[i], core[j]);
            }
        }
        for (i, &v) in core.iter().enumerate() {
            let t = g.add_vertex(format!("t{c}.{i}"))?;
            g.add_edge(v, t);
            a.push(t);
        }
    }
    let mut doc = GraphDoc::new(g, TerminalSet::from_iter(TerminalLabel::A, a));
    doc.comments.push(header("long-lb", &[("k", k), ("ell", ell)]));
    Ok(doc)
}

/// Everything a family may read; each family takes what it needs and
/// rejects a missing required value.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub k: Option<usize>,
    pub ell: Option<usize>,
    pub m: Option<usize>,
    pub d: Option<usize>,
    pub s: Option<usize>,
    pub r: Option<usize>,
    pub group: Option<String>,
    pub mu: Option<String>,
    /// Target parity for the parity wall.
    pub parity: Option<String>,
    /// Labeling mode for the zero wall.
    pub mode: Option<String>,
    pub seed: Option<u64>,
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidParameter(format!("family {family} needs --{flag}")))
}

pub trait Family: Send + Sync {
    fn name(&self) -> &'static str;
    fn generate(&self, p: &FamilyParams) -> Result<GraphDoc>;
}

struct CliqueA;
struct LongLb;
struct GridMod;
struct WallAba;
struct WallParity;
struct ZeroWall;
struct DirectedGrid;
struct EvenAb;
struct RandomFamily;

impl Family for CliqueA {
    fn name(&self) -> &'static str {
        "clique-a"
    }
    fn generate(&self, p: &FamilyParams) -> Result<GraphDoc> {
        gen_clique_a(need(p.k, "k", self.name())?)
    }
}

impl Family for LongLb {
    fn name(&self) -> &'static str {
        "long-lb"
    }
    fn generate(&self, p: &FamilyParams) -> Result<GraphDoc> {
        gen_long_lb(need(p.k, "k", self.name())?, need(p.ell, "ell", self.name())?)
    }
}

impl Family for GridMod {
    fn name(&self) -> &'static str {
        "grid-mod"
    }
    fn generate(&self, p: &FamilyParams) -> Result<GraphDoc> {
        let params =
            ModularFamilyParams::new(need(p.m, "m", self.name())?, p.d.unwrap_or(0), need(p.s, "s", self.name())?)?;
        Ok(gen_grid_mod(params)?.doc)
    }
}

impl Family for WallAba {
    fn name(&self) -> &'static str {
        "wall-aba"
    }
    fn generate(&self, p: &FamilyParams) -> Result<GraphDoc> {
        Ok(gen_wall_aba(need(p.r, "r", self.name())?)?.doc)
    }
}

impl Family for WallParity {
    fn name(&self) -> &'static str {
        "wall-parity"
    }
    fn generate(&self, p: &FamilyParams) -> Result<GraphDoc> {
        let parity = Parity::parse(p.parity.as_deref().unwrap_or("odd"))?;
        Ok(gen_wall_parity(need(p.r, "r", self.name())?, parity)?.doc)
    }
}

impl Family for ZeroWall {
    fn name(&self) -> &'static str {
        "zero-wall"
    }
    fn generate(&self, p: &FamilyParams) -> Result<GraphDoc> {
        let group: GroupSpec = p.group.as_deref().unwrap_or("Zm:3").parse()?;
        let mu = group.parse_elem(p.mu.as_deref().unwrap_or("1"))?;
        let mode = match p.mode.as_deref().unwrap_or("undirected") {
            "undirected" => LabelMode::Undirected,
            "directed" => LabelMode::Directed,
            other => return Err(Error::InvalidParameter(format!("unknown labeling mode '{other}'"))),
        };
        Ok(gen_zero_label_wall(need(p.r, "r", self.name())?, group, mu, mode)?.doc)
    }
}

impl Family for DirectedGrid {
    fn name(&self) -> &'static str {
        "directed-grid"
    }
    fn generate(&self, p: &FamilyParams) -> Result<GraphDoc> {
        gen_directed_grid(need(p.s, "s", self.name())?)
    }
}

impl Family for EvenAb {
    fn name(&self) -> &'static str {
        "even-ab"
    }
    fn generate(&self, p: &FamilyParams) -> Result<GraphDoc> {
        Ok(gen_even_abpath_counterexample(need(p.s, "s", self.name())?)?.doc)
    }
}

/// Seeded G(n, 0.3) on `s` vertices (default 10), A with probability 1/2.
impl Family for RandomFamily {
    fn name(&self) -> &'static str {
        "random"
    }
    fn generate(&self, p: &FamilyParams) -> Result<GraphDoc> {
        let n = p.s.unwrap_or(10);
        let seed = p.seed.unwrap_or(0);
        let mut doc = crate::random::random_graph(&mut crate::random::rng(seed), n, 0.3, 0.5);
        doc.comments.push(format!("{} seed={seed}", header("random", &[("s", n)])));
        Ok(doc)
    }
}

/// Families by name.
pub struct FamilyRegistry {
    families: BTreeMap<&'static str, Box<dyn Family>>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        FamilyRegistry { families: BTreeMap::new() }
    }

    pub fn register(&mut self, f: Box<dyn Family>) {
        self.families.insert(f.name(), f);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Family> {
        self.families
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family '{name}'")))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.keys().copied().collect()
    }
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        let mut reg = FamilyRegistry::empty();
        reg.register(Box::new(CliqueA));
        reg.register(Box::new(LongLb));
        reg.register(Box::new(GridMod));
        reg.register(Box::new(WallAba));
        reg.register(Box::new(WallParity));
        reg.register(Box::new(ZeroWall));
        reg.register(Box::new(DirectedGrid));
        reg.register(Box::new(EvenAb));
        reg.register(Box::new(RandomFamily));
        reg
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::serialize_graph;

    #[test]
    fn clique_sizes() {
        let d = gen_clique_a(1).unwrap();
        assert_eq!((d.graph.vertex_count(), d.graph.edge_count()), (1, 0));
        let d = gen_clique_a(3).unwrap();
        assert_eq!((d.graph.vertex_count(), d.graph.edge_count(), d.a.len()), (5, 10, 5));
    }

    #[test]
    fn long_lb_sizes() {
        let d = gen_long_lb(2, 4).unwrap();
        assert_eq!((d.graph.vertex_count(), d.graph.edge_count()), (10, 15));
        assert!(d.a.iter().all(|v| d.graph.degree(v) == 1));
        assert!(gen_long_lb(1, 4).is_err());
    }

    #[test]
    fn registry_generates_deterministically() {
        let reg = FamilyRegistry::default();
        let p = FamilyParams { k: Some(2), ell: Some(4), m: Some(6), s: Some(2), r: Some(2), ..Default::default() };
        for name in reg.names() {
            let fam = reg.get(name).unwrap();
            let once = serialize_graph(&fam.generate(&p).unwrap());
            let twice = serialize_graph(&fam.generate(&p).unwrap());
            assert_eq!(once, twice, "{name}");
            assert!(once.starts_with(&format!("# family={name}")), "{name}: {once}");
        }
        assert!(reg.get("nope").is_err());
    }
}
