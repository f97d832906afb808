use std::collections::BTreeSet;
use std::fmt;

use super::enumerate::{find_path_avoiding, Avoid};
use super::spec::{Budget, Disjointness, Instance, PathKind, PathSpec};
use crate::epsolve::{CertificateDoc, Variant};
use crate::graph::{EdgeId, Graph, GraphDoc, Path, VertexId};

/// Outcome of checking a certificate: one line per violated clause.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, clause: impl Into<String>) {
        self.violations.push(clause.into());
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status: {}", if self.passed() { "pass" } else { "fail" })?;
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        Ok(())
    }
}

fn resolve(g: &Graph, names: &[String], report: &mut Report, what: &str) -> Option<Vec<VertexId>> {
    let mut out = Vec::with_capacity(names.len());
    let mut ok = true;
    for n in names {
        match g.vertex(n) {
            Some(v) => out.push(v),
            None => {
                report.fail(format!("{what}: unknown vertex '{n}'"));
                ok = false;
            }
        }
    }
    ok.then_some(out)
}

/// Why `p` fails to be a target path, if it does.
fn explain(inst: &Instance<'_>, kind: PathKind, p: &Path) -> Option<String> {
    let g = inst.graph;
    if p.is_empty() {
        return Some("path has no edges".into());
    }
    for end in [p.first(), p.last()] {
        if !inst.a.contains(end) {
            return Some(format!("endpoint not in A: '{}'", g.name(end)));
        }
    }
    if let Some(&v) = p.interior().iter().find(|&&v| inst.a.contains(v)) {
        return Some(format!("interior vertex in A: '{}'", g.name(v)));
    }
    match kind {
        PathKind::Long(ell) if p.len() < ell => Some(format!("length {} is shorter than {ell}", p.len())),
        PathKind::Even if p.len() % 2 == 1 => Some(format!("length {} is not even", p.len())),
        _ => None,
    }
}

fn check_paths(inst: &Instance<'_>, spec: PathSpec, k: usize, paths: &[Vec<String>], report: &mut Report) {
    let g = inst.graph;
    let mut shared_edges = BTreeSet::new();
    let mut built = Vec::new();
    for (i, names) in paths.iter().enumerate() {
        let what = format!("path {i}");
        let Some(vs) = resolve(g, names, report, &what) else { continue };
        let mut fresh = BTreeSet::new();
        let used = match spec.disjointness {
            Disjointness::Edge => &mut shared_edges,
            Disjointness::Vertex => &mut fresh,
        };
        let p = match g.path_from_vertices(vs, used) {
            Ok(p) => p,
            Err(e) => {
                report.fail(format!("{what}: {e}"));
                continue;
            }
        };
        if let Err(e) = g.validate_path(&p) {
            report.fail(format!("{what}: {e}"));
            continue;
        }
        if let Some(why) = explain(inst, spec.kind, &p) {
            report.fail(format!("{what}: {why}"));
        }
        built.push((i, p));
    }
    for x in 0..built.len() {
        for y in x + 1..built.len() {
            let (i, p) = &built[x];
            let (j, q) = &built[y];
            match spec.disjointness {
                Disjointness::Vertex => {
                    if let Some(v) = p.vertices.iter().find(|v| q.vertices.contains(v)) {
                        report.fail(format!("paths {i} and {j} share vertex '{}'", g.name(*v)));
                    }
                }
                Disjointness::Edge => {
                    // parallel copies were assigned greedily above, so a shared id means no copy was left
                    if let Some(e) = p.edges.iter().find(|e| q.edges.contains(e)) {
                        let edge = g.edge(*e);
                        report.fail(format!("paths {i} and {j} share edge '{} {}'", g.name(edge.u), g.name(edge.v)));
                    }
                }
            }
        }
    }
    if paths.len() < k {
        report.fail(format!("only {} paths, need k = {k}", paths.len()));
    }
}

fn resolve_edges(g: &Graph, items: &[String], report: &mut Report) -> Option<Vec<EdgeId>> {
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    let mut ok = true;
    for item in items {
        let parts: Vec<&str> = item.split_whitespace().collect();
        let [u, v] = parts[..] else {
            report.fail(format!("hitting set: malformed edge '{item}'"));
            ok = false;
            continue;
        };
        let (Some(u), Some(v)) = (g.vertex(u), g.vertex(v)) else {
            report.fail(format!("hitting set: unknown vertex in edge '{item}'"));
            ok = false;
            continue;
        };
        let candidates: BTreeSet<EdgeId> =
            g.edges_between(u, v).into_iter().filter(|&e| !g.is_directed() || g.edge(e).u == u).collect();
        match candidates.into_iter().find(|e| !used.contains(e)) {
            Some(e) => {
                used.insert(e);
                out.push(e);
            }
            None => {
                report.fail(format!("hitting set: no edge '{item}' in the graph"));
                ok = false;
            }
        }
    }
    ok.then_some(out)
}

/// Checks a certificate against the instance in `doc`: path validity and
/// disjointness, or exhaustive coverage of the hitting set within `budget`.
pub fn verify_certificate(doc: &GraphDoc, cert: &CertificateDoc, budget: &Budget) -> Report {
    let mut report = Report::default();
    let g = &doc.graph;
    let inst = doc.instance();
    let variant: Variant = match cert.variant.parse() {
        Ok(v) => v,
        Err(_) => {
            report.fail(format!("unknown variant '{}'", cert.variant));
            return report;
        }
    };
    if cert.k == 0 {
        report.fail("k must be at least 1");
    }
    let spec = match variant.spec(cert.ell) {
        Ok(s) => s,
        Err(e) => {
            report.fail(e.to_string());
            return report;
        }
    };
    let theory = variant.bound(cert.k, cert.ell, doc.a.len());
    if cert.claimed_bound > theory {
        report.fail(format!("claimed bound {} exceeds the theorem's {theory}", cert.claimed_bound));
    }
    match cert.outcome.as_str() {
        "paths" => {
            if cert.hitting.is_some() {
                report.fail("paths outcome carries a hitting set");
            }
            check_paths(&inst, spec, cert.k, &cert.paths, &mut report);
        }
        "hitting" => {
            if !cert.paths.is_empty() {
                report.fail("hitting outcome carries paths");
            }
            let Some(h) = &cert.hitting else {
                report.fail("hitting outcome without a hitting set");
                return report;
            };
            let expected = spec.disjointness.to_string();
            if h.kind != expected {
                report.fail(format!("hitting set type '{}' should be '{expected}'", h.kind));
                return report;
            }
            if h.items.len() > cert.claimed_bound {
                report.fail(format!(
                    "hitting set has {} items, claimed bound is {}",
                    h.items.len(),
                    cert.claimed_bound
                ));
            }
            let avoid = match spec.disjointness {
                Disjointness::Vertex => {
                    let Some(vs) = resolve(g, &h.items, &mut report, "hitting set") else { return report };
                    if vs.iter().collect::<BTreeSet<_>>().len() != vs.len() {
                        report.fail("hitting set repeats a vertex");
                    }
                    Avoid { vertices: vs, edges: vec![] }
                }
                Disjointness::Edge => {
                    let Some(es) = resolve_edges(g, &h.items, &mut report) else { return report };
                    Avoid { vertices: vec![], edges: es }
                }
            };
            match find_path_avoiding(&inst, spec, &avoid, budget) {
                Ok(Some(p)) => report.fail(format!("path avoiding hitting set: {}", p.names(g).join(" "))),
                Ok(None) => {}
                Err(e) => report.fail(format!("coverage not checked: {e}")),
            }
        }
        other => report.fail(format!("unknown outcome '{other}'")),
    }
    report
}
