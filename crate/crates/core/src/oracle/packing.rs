//! Exact maximum packings and minimum hitting sets by exhaustive search.

use super::bitset::BitSet;
use super::enumerate::enumerate_paths;
use super::spec::{Budget, Disjointness, Instance, Meter, PathSpec};
use crate::error::Result;
use crate::graph::{Graph, Path};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    pub size: usize,
    pub witness: Vec<Path>,
}

/// A vertex or edge set, as raw ids in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSet {
    pub kind: Disjointness,
    pub items: Vec<usize>,
}

impl HittingSet {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

fn universe(g: &Graph, mode: Disjointness) -> usize {
    match mode {
        Disjointness::Vertex => g.vertex_count(),
        Disjointness::Edge => g.edge_count(),
    }
}

pub fn elements(p: &Path, mode: Disjointness) -> Vec<usize> {
    match mode {
        Disjointness::Vertex => p.vertices.iter().map(|v| v.0).collect(),
        Disjointness::Edge => p.edges.iter().map(|e| e.0).collect(),
    }
}

/// Endpoint slots: a vertex-disjoint family uses each end vertex once, an
/// edge-disjoint family uses each (end, end edge) pair once.
fn tokens(g: &Graph, p: &Path, mode: Disjointness) -> [usize; 2] {
    match mode {
        Disjointness::Vertex => [p.first().0, p.last().0],
        Disjointness::Edge => {
            let side = |e: crate::graph::EdgeId, v| 2 * e.0 + usize::from(g.edge(e).u != v);
            [side(p.edges[0], p.first()), side(*p.edges.last().unwrap(), p.last())]
        }
    }
}

struct PackSearch<'m> {
    sets: Vec<BitSet>,
    tokens: Vec<[usize; 2]>,
    token_universe: usize,
    best: Vec<usize>,
    limit: usize,
    meter: &'m mut Meter,
}

impl PackSearch<'_> {
    fn upper_bound(&self, cands: &[usize]) -> usize {
        let mut seen = BitSet::new(self.token_universe);
        for &c in cands {
            for t in self.tokens[c] {
                seen.insert(t);
            }
        }
        (seen.len() / 2).min(cands.len())
    }

    fn run(&mut self, cands: Vec<usize>, chosen: &mut Vec<usize>) -> Result<()> {
        self.meter.tick()?;
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        if self.best.len() >= self.limit || cands.is_empty() {
            return Ok(());
        }
        if chosen.len() + self.upper_bound(&cands) <= self.best.len() {
            return Ok(());
        }
        // branch on the element shared by the fewest candidates
        let mut counts = std::collections::BTreeMap::new();
        for &c in &cands {
            for x in self.sets[c].iter() {
                *counts.entry(x).or_insert(0usize) += 1;
            }
        }
        let (&pivot, _) = counts.iter().min_by_key(|&(&x, &n)| (n, x)).expect("candidates are non-empty");
        let holders: Vec<usize> = cands.iter().copied().filter(|&c| self.sets[c].contains(pivot)).collect();
        for &p in &holders {
            let rest: Vec<usize> =
                cands.iter().copied().filter(|&q| q != p && !self.sets[q].intersects(&self.sets[p])).collect();
            chosen.push(p);
            self.run(rest, chosen)?;
            chosen.pop();
            if self.best.len() >= self.limit {
                return Ok(());
            }
        }
        let rest: Vec<usize> = cands.into_iter().filter(|&q| !self.sets[q].contains(pivot)).collect();
        self.run(rest, chosen)
    }
}

/// Indices of a maximum pairwise disjoint subfamily of `paths`, capped at
/// `limit`.
pub fn max_packing_of(
    g: &Graph,
    paths: &[Path],
    mode: Disjointness,
    limit: Option<usize>,
    meter: &mut Meter,
) -> Result<Vec<usize>> {
    let n = universe(g, mode);
    let mut search = PackSearch {
        sets: paths.iter().map(|p| BitSet::from_iter(n, elements(p, mode))).collect(),
        tokens: paths.iter().map(|p| tokens(g, p, mode)).collect(),
        token_universe: 2 * g.edge_count().max(g.vertex_count()) + 2,
        best: Vec::new(),
        limit: limit.unwrap_or(usize::MAX),
        meter,
    };
    let cands: Vec<usize> = (0..paths.len()).filter(|&i| !paths[i].is_empty()).collect();
    search.run(cands, &mut Vec::new())?;
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

/// Exact maximum number of pairwise disjoint target paths (in the sense of
/// `spec.disjointness`), capped at `limit`, with a witness family.
pub fn max_disjoint(inst: &Instance<'_>, spec: PathSpec, limit: Option<usize>, budget: &Budget) -> Result<Packing> {
    let paths = enumerate_paths(inst, spec, budget)?;
    let mut meter = budget.meter();
    let picked = max_packing_of(inst.graph, &paths, spec.disjointness, limit, &mut meter)?;
    let witness: Vec<Path> = picked.into_iter().map(|i| paths[i].clone()).collect();
    Ok(Packing { size: witness.len(), witness })
}

struct HitSearch<'m> {
    sets: Vec<BitSet>,
    universe: usize,
    meter: &'m mut Meter,
}

impl HitSearch<'_> {
    /// Pairwise disjoint unhit sets (restricted to allowed elements) force
    /// one element each.
    fn lower_bound(&self, unhit: &[usize], forbidden: &BitSet) -> usize {
        let mut used = BitSet::new(self.universe);
        let mut count = 0;
        for &i in unhit {
            let mut avail = self.sets[i].clone();
            avail.difference_with(forbidden);
            if !avail.intersects(&used) {
                used.union_with(&avail);
                count += 1;
            }
        }
        count
    }

    fn run(&mut self, chosen: &mut BitSet, forbidden: &mut BitSet, left: usize) -> Result<bool> {
        self.meter.tick()?;
        let unhit: Vec<usize> = (0..self.sets.len()).filter(|&i| !self.sets[i].intersects(chosen)).collect();
        if unhit.is_empty() {
            return Ok(true);
        }
        if left == 0 || self.lower_bound(&unhit, forbidden) > left {
            return Ok(false);
        }
        let pick = unhit
            .iter()
            .copied()
            .min_by_key(|&i| {
                let mut avail = self.sets[i].clone();
                avail.difference_with(forbidden);
                (avail.len(), i)
            })
            .expect("unhit is non-empty");
        let mut branch = self.sets[pick].clone();
        branch.difference_with(forbidden);
        let options: Vec<usize> = branch.iter().collect();
        let mut newly_forbidden = Vec::new();
        let mut ok = false;
        for x in options {
            chosen.insert(x);
            let found = self.run(chosen, forbidden, left - 1)?;
            if found {
                ok = true;
                break;
            }
            chosen.remove(x);
            forbidden.insert(x);
            newly_forbidden.push(x);
        }
        for x in newly_forbidden {
            forbidden.remove(x);
        }
        Ok(ok)
    }
}

/// A minimum set of elements meeting every set in `sets`, searched by
/// increasing size up to `cap`.
pub fn min_hitting_of(sets: Vec<BitSet>, universe: usize, cap: usize, meter: &mut Meter) -> Result<Option<Vec<usize>>> {
    let mut search = HitSearch { sets, universe, meter };
    for size in 0..=cap {
        let mut chosen = BitSet::new(universe);
        let mut forbidden = BitSet::new(universe);
        if search.run(&mut chosen, &mut forbidden, size)? {
            return Ok(Some(chosen.iter().collect()));
        }
    }
    Ok(None)
}

/// A minimum vertex or edge set meeting every target path, or `None` if
/// every hitting set is larger than `cap`. A-vertices are allowed.
pub fn min_hitting_set(
    inst: &Instance<'_>,
    spec: PathSpec,
    mode: Disjointness,
    cap: usize,
    budget: &Budget,
) -> Result<Option<HittingSet>> {
    let paths = enumerate_paths(inst, spec, budget)?;
    let n = universe(inst.graph, mode);
    let sets = paths.iter().map(|p| BitSet::from_iter(n, elements(p, mode))).collect();
    let mut meter = budget.meter();
    Ok(min_hitting_of(sets, n, cap, &mut meter)?.map(|items| HittingSet { kind: mode, items }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{TerminalLabel, TerminalSet, VertexId};
    use crate::oracle::PathKind;

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
    fn k5_all_terminals() {
        let g = complete(5);
        let a = TerminalSet::from_iter(TerminalLabel::A, g.vertices());
        let inst = Instance::new(&g, &a);
        let spec = PathSpec::vertex(PathKind::Plain);
        let pack = max_disjoint(&inst, spec, None, &Budget::default()).unwrap();
        assert_eq!(pack.size, 2);
        let hit = min_hitting_set(&inst, spec, Disjointness::Vertex, 10, &Budget::default()).unwrap().unwrap();
        assert_eq!(hit.len(), 4);
        // edge-disjoint: every edge is an A-path, so the packing is all 10 edges
        let pack = max_disjoint(&inst, PathSpec::edge(PathKind::Plain), None, &Budget::default()).unwrap();
        assert_eq!(pack.size, 10);
    }

    #[test]
    fn two_disjoint_edges() {
        let mut g = Graph::new(false);
        let v: Vec<_> = (0..4).map(|i| g.add_vertex(format!("x{i}")).unwrap()).collect();
        g.add_edge(v[0], v[1]);
        g.add_edge(v[2], v[3]);
        let a = TerminalSet::from_iter(TerminalLabel::A, g.vertices());
        let pack =
            max_disjoint(&Instance::new(&g, &a), PathSpec::vertex(PathKind::Plain), None, &Budget::default()).unwrap();
        assert_eq!(pack.size, 2);
    }

    #[test]
    fn limit_caps_the_search() {
        let g = complete(6);
        let a = TerminalSet::from_iter(TerminalLabel::A, g.vertices());
        let pack = max_disjoint(&Instance::new(&g, &a), PathSpec::vertex(PathKind::Plain), Some(1), &Budget::default())
            .unwrap();
        assert_eq!(pack.size, 1);
    }

    #[test]
    fn no_paths_means_empty_hitting_set() {
        let mut g = Graph::new(false);
        let x = g.add_vertex("x").unwrap();
        let y = g.add_vertex("y").unwrap();
        g.add_edge(x, y);
        let a = TerminalSet::from_iter(TerminalLabel::A, [VertexId(0)]);
        let hit = min_hitting_set(
            &Instance::new(&g, &a),
            PathSpec::vertex(PathKind::Plain),
            Disjointness::Vertex,
            3,
            &Budget::default(),
        )
        .unwrap()
        .unwrap();
        assert!(hit.is_empty());
    }

    #[test]
    fn cap_too_small_gives_none() {
        let g = complete(5);
        let a = TerminalSet::from_iter(TerminalLabel::A, g.vertices());
        let hit = min_hitting_set(
            &Instance::new(&g, &a),
            PathSpec::vertex(PathKind::Plain),
            Disjointness::Vertex,
            3,
            &Budget::default(),
        )
        .unwrap();
        assert!(hit.is_none());
    }
}
