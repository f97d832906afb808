//! Abelian group edge labelings and the path predicates built on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::oracle::{Instance, PathKind, PathSpec};

/// The label group: `Z_m`, `Z`, or `Z_2^w` (bit vectors, `w <= 64`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupSpec {
    Zm(u64),
    Z,
    Z2w(u32),
}

/// A group element. Which variant is meaningful depends on the owning group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElem {
    Mod(u64),
    Int(i64),
    Bits(u64),
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupSpec::Zm(m) if m < 2 => Err(Error::InvalidParameter(format!("Zm modulus {m} < 2"))),
            GroupSpec::Z2w(w) if !(1..=64).contains(&w) => {
                Err(Error::InvalidParameter(format!("Z2w dimension {w} outside 1..=64")))
            }
            _ => Ok(()),
        }
    }

    pub fn zero(&self) -> GroupElem {
        match self {
            GroupSpec::Zm(_) => GroupElem::Mod(0),
            GroupSpec::Z => GroupElem::Int(0),
            GroupSpec::Z2w(_) => GroupElem::Bits(0),
        }
    }

    pub fn is_zero(&self, x: GroupElem) -> bool {
        x == self.zero()
    }

    pub fn add(&self, x: GroupElem, y: GroupElem) -> Result<GroupElem> {
        match (self, x, y) {
            (GroupSpec::Zm(m), GroupElem::Mod(a), GroupElem::Mod(b)) => {
                Ok(GroupElem::Mod(((a as u128 + b as u128) % *m as u128) as u64))
            }
            (GroupSpec::Z, GroupElem::Int(a), GroupElem::Int(b)) => {
                a.checked_add(b).map(GroupElem::Int).ok_or(Error::Overflow)
            }
            (GroupSpec::Z2w(_), GroupElem::Bits(a), GroupElem::Bits(b)) => Ok(GroupElem::Bits(a ^ b)),
            _ => Err(Error::InvalidParameter("element does not belong to the group".into())),
        }
    }

    pub fn neg(&self, x: GroupElem) -> Result<GroupElem> {
        match (self, x) {
            (GroupSpec::Zm(m), GroupElem::Mod(a)) => Ok(GroupElem::Mod((m - a % m) % m)),
            (GroupSpec::Z, GroupElem::Int(a)) => a.checked_neg().map(GroupElem::Int).ok_or(Error::Overflow),
            (GroupSpec::Z2w(_), GroupElem::Bits(a)) => Ok(GroupElem::Bits(a)),
            _ => Err(Error::InvalidParameter("element does not belong to the group".into())),
        }
    }

    /// Parses a label: an integer for `Z_m`/`Z`, comma-separated bits for `Z_2^w`.
    pub fn parse_elem(&self, text: &str) -> Result<GroupElem> {
        let bad = || Error::InvalidParameter(format!("invalid group element '{text}'"));
        match *self {
            GroupSpec::Zm(m) => {
                let x: i128 = text.trim().parse().map_err(|_| bad())?;
                Ok(GroupElem::Mod(x.rem_euclid(m as i128) as u64))
            }
            GroupSpec::Z => text.trim().parse().map(GroupElem::Int).map_err(|_| bad()),
            GroupSpec::Z2w(w) => {
                let bits: Vec<&str> = text.split(',').map(str::trim).collect();
                if bits.len() != w as usize {
                    return Err(bad());
                }
                let mut value = 0u64;
                for (i, b) in bits.iter().enumerate() {
                    match *b {
                        "0" => {}
                        "1" => value |= 1 << i,
                        _ => return Err(bad()),
                    }
                }
                Ok(GroupElem::Bits(value))
            }
        }
    }

    pub fn format_elem(&self, x: GroupElem) -> String {
        match (self, x) {
            (GroupSpec::Z2w(w), GroupElem::Bits(bits)) => {
                (0..*w).map(|i| if bits >> i & 1 == 1 { "1" } else { "0" }).collect::<Vec<_>>().join(",")
            }
            (_, GroupElem::Mod(a)) => a.to_string(),
            (_, GroupElem::Int(a)) => a.to_string(),
            (_, GroupElem::Bits(a)) => a.to_string(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Zm(m) => write!(f, "Zm {m}"),
            GroupSpec::Z => write!(f, "Z"),
            GroupSpec::Z2w(w) => write!(f, "Z2w {w}"),
        }
    }
}

/// Accepts `Zm:<m>`, `Z`, `Z2w:<w>`; a space works in place of the colon.
impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown group '{s}'"));
        let parts: Vec<&str> = s.split(|c: char| c == ':' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
        let spec = match parts.as_slice() {
            ["Zm", m] => GroupSpec::Zm(m.parse().map_err(|_| bad())?),
            ["Z"] => GroupSpec::Z,
            ["Z2w", w] => GroupSpec::Z2w(w.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelMode {
    Undirected,
    /// Traversing an edge against its reference orientation counts `-label`.
    Directed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabeling {
    pub group: GroupSpec,
    pub mode: LabelMode,
    /// Indexed by edge id; one weight per edge of the associated graph.
    pub weights: Vec<GroupElem>,
}

impl EdgeLabeling {
    pub fn uniform(group: GroupSpec, mode: LabelMode, edges: usize, value: GroupElem) -> Self {
        EdgeLabeling { group, mode, weights: vec![value; edges] }
    }

    pub fn weight(&self, e: crate::graph::EdgeId) -> Option<GroupElem> {
        self.weights.get(e.0).copied()
    }
}

/// Sum of the edge labels along `p`, with signs in directed mode.
pub fn path_weight(g: &Graph, lab: &EdgeLabeling, p: &Path) -> Result<GroupElem> {
    let mut total = lab.group.zero();
    for (i, &e) in p.edges.iter().enumerate() {
        let w = lab.weight(e).ok_or_else(|| Error::InvalidParameter(format!("edge {e} has no weight")))?;
        let w = if lab.mode == LabelMode::Directed && !p.traverses_forward(g, i) { lab.group.neg(w)? } else { w };
        total = lab.group.add(total, w)?;
    }
    Ok(total)
}

/// The `Z_2` labeling with every edge labelled 1; weights are length parity.
pub fn make_parity_labeling(g: &Graph) -> EdgeLabeling {
    EdgeLabeling::uniform(GroupSpec::Zm(2), LabelMode::Undirected, g.edge_count(), GroupElem::Mod(1))
}

/// Whether `p` is a path of the kind described by `spec` in `inst`.
///
/// `p` is assumed to be a valid path of the graph.
pub fn matches_spec(spec: &PathSpec, inst: &Instance<'_>, p: &Path) -> Result<bool> {
    let kind = spec.kind;
    if kind.requires_directed() && !inst.graph.is_directed() {
        return Err(Error::Precondition(format!("{kind} requires a directed graph")));
    }
    if kind.requires_b() && inst.b.is_none() {
        return Err(Error::Precondition(format!("{kind} requires a B set")));
    }
    if kind.requires_labeling() && inst.labeling.is_none() {
        return Err(Error::Precondition(format!("{kind} requires an edge labeling")));
    }
    if p.is_empty() {
        return Ok(false);
    }
    let a = inst.a;
    let (first, last) = (p.first(), p.last());
    let endpoints_ok = if kind.is_ab() {
        let b = inst.b.expect("checked above");
        let interior_ok = p.interior().iter().all(|&v| !a.contains(v) && !b.contains(v));
        interior_ok && ((a.contains(first) && b.contains(last)) || (b.contains(first) && a.contains(last)))
    } else {
        a.contains(first) && a.contains(last) && p.interior().iter().all(|&v| !a.contains(v))
    };
    if !endpoints_ok {
        return Ok(false);
    }
    let len = p.len();
    Ok(match kind {
        PathKind::Plain | PathKind::DirectedPlain | PathKind::AB => true,
        PathKind::Long(ell) => len >= ell,
        PathKind::Even | PathKind::EvenAB => len % 2 == 0,
        PathKind::Odd | PathKind::OddAB => len % 2 == 1,
        PathKind::ZeroMod { m, d } => len % m == d,
        PathKind::ABA | PathKind::DirectedABA => {
            let b = inst.b.expect("checked above");
            p.vertices.iter().any(|&v| b.contains(v))
        }
        PathKind::ZeroWeight | PathKind::NonZeroWeight => {
            let lab = inst.labeling.expect("checked above");
            let w = path_weight(inst.graph, lab, p)?;
            lab.group.is_zero(w) == (kind == PathKind::ZeroWeight)
        }
    })
}
