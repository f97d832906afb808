use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path};
use crate::oracle::{Disjointness, HittingSet, PathKind, PathSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Gallai,
    Long,
    Even,
    MaderEdge,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Gallai, Variant::Long, Variant::Even, Variant::MaderEdge];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Gallai => "gallai",
            Variant::Long => "long",
            Variant::Even => "even",
            Variant::MaderEdge => "mader-edge",
        }
    }

    pub fn disjointness(self) -> Disjointness {
        match self {
            Variant::MaderEdge => Disjointness::Edge,
            _ => Disjointness::Vertex,
        }
    }

    pub fn spec(self, ell: Option<usize>) -> Result<PathSpec> {
        let kind = match (self, ell) {
            (Variant::Long, Some(l)) if l >= 1 => PathKind::Long(l),
            (Variant::Long, _) => return Err(Error::InvalidParameter("variant long needs ell >= 1".into())),
            (_, Some(_)) => return Err(Error::InvalidParameter(format!("variant {self} takes no ell"))),
            (Variant::Gallai | Variant::MaderEdge, None) => PathKind::Plain,
            (Variant::Even, None) => PathKind::Even,
        };
        Ok(PathSpec { kind, disjointness: self.disjointness() })
    }

    /// The largest hitting set the variant's theorem allows.
    pub fn bound(self, k: usize, ell: Option<usize>, a_len: usize) -> usize {
        match self {
            Variant::Gallai => 4 * k,
            Variant::Long => 4 * k * ell.unwrap_or(1),
            Variant::Even => 10 * k,
            Variant::MaderEdge => k * ceil_log2(a_len),
        }
    }
}

/// ⌈log₂ n⌉, with 0 for n ≤ 1.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown variant '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Paths(Vec<Path>),
    Hitting(HittingSet),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub variant: Variant,
    pub k: usize,
    pub ell: Option<usize>,
    pub outcome: Outcome,
    pub claimed_bound: usize,
    pub diagnostics: Map<String, Value>,
}

impl Certificate {
    pub fn is_paths(&self) -> bool {
        matches!(self.outcome, Outcome::Paths(_))
    }

    pub fn to_doc(&self, g: &Graph) -> CertificateDoc {
        let (outcome, paths, hitting) = match &self.outcome {
            Outcome::Paths(ps) => ("paths", ps.iter().map(|p| p.names(g)).collect(), None),
            Outcome::Hitting(h) => {
                let items = match h.kind {
                    Disjointness::Vertex => {
                        h.items.iter().map(|&i| g.name(crate::graph::VertexId(i)).to_string()).collect()
                    }
                    Disjointness::Edge => h
                        .items
                        .iter()
                        .map(|&i| {
                            let e = g.edge(EdgeId(i));
                            format!("{} {}", g.name(e.u), g.name(e.v))
                        })
                        .collect(),
                };
                ("hitting", Vec::new(), Some(HittingDoc { kind: h.kind.to_string(), items }))
            }
        };
        CertificateDoc {
            variant: self.variant.name().to_string(),
            k: self.k,
            ell: self.ell,
            outcome: outcome.to_string(),
            paths,
            hitting,
            claimed_bound: self.claimed_bound,
            diagnostics: Value::Object(self.diagnostics.clone()),
        }
    }
}

/// The serialized certificate; vertices are referred to by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub variant: String,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    pub outcome: String,
    #[serde(default)]
    pub paths: Vec<Vec<String>>,
    #[serde(default)]
    pub hitting: Option<HittingDoc>,
    pub claimed_bound: usize,
    #[serde(default)]
    pub diagnostics: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub items: Vec<String>,
}

impl CertificateDoc {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Certificate(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_rounds() {
        assert_eq!([0, 1, 2, 3, 4, 5, 8, 9].map(ceil_log2), [0, 0, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn variant_names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert!("bogus".parse::<Variant>().is_err());
    }

    #[test]
    fn spec_requires_ell_only_for_long() {
        assert!(Variant::Long.spec(None).is_err());
        assert!(Variant::Gallai.spec(Some(2)).is_err());
        assert_eq!(Variant::Long.spec(Some(3)).unwrap().kind, PathKind::Long(3));
    }

    #[test]
    fn doc_json_round_trip() {
        let doc = CertificateDoc {
            variant: "gallai".into(),
            k: 2,
            ell: None,
            outcome: "hitting".into(),
            paths: vec![],
            hitting: Some(HittingDoc { kind: "vertex".into(), items: vec!["a".into()] }),
            claimed_bound: 8,
            diagnostics: Value::Object(Map::new()),
        };
        let text = doc.to_json();
        assert!(text.contains("\"type\": \"vertex\""));
        assert_eq!(CertificateDoc::from_json(&text).unwrap(), doc);
    }
}
