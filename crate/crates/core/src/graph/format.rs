//! Line-based text format for graphs with terminal markers and labels.
//!
//! ```text
//! # comment
//! graph undirected | graph directed
//! group Zm <m> | group Z | group Z2w <w>   [directed]
//! vertex <name> [A] [B]
//! edge <u> <v> [label=<elt>]
//! ```
//!
//! The optional trailing `directed` on the group line selects directed
//! labeling semantics in an undirected graph; directed graphs always use it.

use std::fmt::Write as _;

use super::{Graph, TerminalLabel, TerminalSet};
use crate::error::{Error, Result};
use crate::labeling::{EdgeLabeling, GroupSpec, LabelMode};

/// A parsed graph document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDoc {
    /// Comment lines preceding the `graph` line, without the leading `#`.
    pub comments: Vec<String>,
    pub graph: Graph,
    pub a: TerminalSet,
    pub b: Option<TerminalSet>,
    pub labeling: Option<EdgeLabeling>,
}

impl GraphDoc {
    pub fn new(graph: Graph, a: TerminalSet) -> Self {
        GraphDoc { comments: Vec::new(), graph, a, b: None, labeling: None }
    }

    pub fn instance(&self) -> crate::oracle::Instance<'_> {
        crate::oracle::Instance { graph: &self.graph, a: &self.a, b: self.b.as_ref(), labeling: self.labeling.as_ref() }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, message: message.into() }
}

pub fn parse_graph(text: &str) -> Result<GraphDoc> {
    let mut comments = Vec::new();
    let mut graph: Option<Graph> = None;
    let mut group: Option<(GroupSpec, LabelMode)> = None;
    let mut a = TerminalSet::new(TerminalLabel::A);
    let mut b = TerminalSet::new(TerminalLabel::B);
    let mut saw_b = false;
    let mut labels = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if graph.is_none() {
                comments.push(comment.trim().to_string());
            }
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some(g) = graph.as_mut() else {
            match tokens.as_slice() {
                ["graph", "undirected"] => graph = Some(Graph::new(false)),
                ["graph", "directed"] => graph = Some(Graph::new(true)),
                _ => return Err(syntax(line_no, "expected 'graph undirected' or 'graph directed'")),
            }
            continue;
        };
        match tokens[0] {
            "group" => {
                if group.is_some() {
                    return Err(syntax(line_no, "duplicate group declaration"));
                }
                if g.vertex_count() > 0 {
                    return Err(syntax(line_no, "group declaration must precede vertices"));
                }
                let (spec, rest) = match &tokens[1..] {
                    ["Zm", m, rest @ ..] => {
                        (GroupSpec::Zm(m.parse().map_err(|_| syntax(line_no, "invalid modulus"))?), rest)
                    }
                    ["Z", rest @ ..] => (GroupSpec::Z, rest),
                    ["Z2w", w, rest @ ..] => {
                        (GroupSpec::Z2w(w.parse().map_err(|_| syntax(line_no, "invalid dimension"))?), rest)
                    }
                    _ => return Err(syntax(line_no, "unknown group")),
                };
                spec.validate().map_err(|e| syntax(line_no, e.to_string()))?;
                let mode = match rest {
                    [] if g.is_directed() => LabelMode::Directed,
                    [] => LabelMode::Undirected,
                    ["directed"] => LabelMode::Directed,
                    _ => return Err(syntax(line_no, "unexpected tokens after group")),
                };
                group = Some((spec, mode));
            }
            "vertex" => {
                let name = tokens.get(1).ok_or_else(|| syntax(line_no, "vertex needs a name"))?;
                let v = g
                    .add_vertex(*name)
                    .map_err(|_| Error::DuplicateVertex { line: line_no, name: name.to_string() })?;
                for marker in &tokens[2..] {
                    match *marker {
                        "A" => {
                            a.members.insert(v);
                        }
                        "B" => {
                            saw_b = true;
                            b.members.insert(v);
                        }
                        other => return Err(syntax(line_no, format!("unknown marker '{other}'"))),
                    }
                }
            }
            "edge" => {
                if tokens.len() < 3 || tokens.len() > 4 {
                    return Err(syntax(line_no, "edge needs two endpoints and an optional label"));
                }
                let lookup = |name: &str| {
                    g.vertex(name).ok_or_else(|| Error::UndeclaredVertex { line: line_no, name: name.to_string() })
                };
                let u = lookup(tokens[1])?;
                let v = lookup(tokens[2])?;
                let label = match tokens.get(3) {
                    None => None,
                    Some(tok) => {
                        let elt = tok.strip_prefix("label=").ok_or_else(|| syntax(line_no, "expected label=<elt>"))?;
                        let (spec, _) = group.ok_or(Error::LabelWithoutGroup { line: line_no })?;
                        Some(spec.parse_elem(elt).map_err(|e| syntax(line_no, e.to_string()))?)
                    }
                };
                g.add_edge(u, v);
                labels.push(label);
            }
            other => return Err(syntax(line_no, format!("unknown directive '{other}'"))),
        }
    }

    let graph = graph.ok_or_else(|| syntax(1, "missing 'graph' line"))?;
    let labeling = group.map(|(spec, mode)| EdgeLabeling {
        group: spec,
        mode,
        weights: labels.iter().map(|l| l.unwrap_or_else(|| spec.zero())).collect(),
    });
    Ok(GraphDoc { comments, graph, a, b: saw_b.then_some(b), labeling })
}

/// Canonical form: comments, header, group, vertices and edges in id order.
pub fn serialize_graph(doc: &GraphDoc) -> String {
    let g = &doc.graph;
    let mut out = String::new();
    for c in &doc.comments {
        let _ = writeln!(out, "# {c}");
    }
    out.push_str(if g.is_directed() { "graph directed\n" } else { "graph undirected\n" });
    if let Some(lab) = &doc.labeling {
        let suffix = if lab.mode == LabelMode::Directed && !g.is_directed() { " directed" } else { "" };
        let _ = writeln!(out, "group {}{suffix}", lab.group);
    }
    for v in g.vertices() {
        out.push_str("vertex ");
        out.push_str(g.name(v));
        if doc.a.contains(v) {
            out.push_str(" A");
        }
        if doc.b.as_ref().is_some_and(|b| b.contains(v)) {
            out.push_str(" B");
        }
        out.push('\n');
    }
    for e in g.edge_ids() {
        let edge = g.edge(e);
        let _ = write!(out, "edge {} {}", g.name(edge.u), g.name(edge.v));
        if let Some(lab) = &doc.labeling {
            let _ = write!(out, " label={}", lab.group.format_elem(lab.weights[e.0]));
        }
        out.push('\n');
    }
    out
}
