use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, TerminalSet};
use crate::labeling::EdgeLabeling;

/// Borrowed view of everything a path predicate may need.
#[derive(Debug, Clone, Copy)]
pub struct Instance<'a> {
    pub graph: &'a Graph,
    pub a: &'a TerminalSet,
    pub b: Option<&'a TerminalSet>,
    pub labeling: Option<&'a EdgeLabeling>,
}

impl<'a> Instance<'a> {
    pub fn new(graph: &'a Graph, a: &'a TerminalSet) -> Self {
        Instance { graph, a, b: None, labeling: None }
    }

    pub fn with_b(mut self, b: &'a TerminalSet) -> Self {
        self.b = Some(b);
        self
    }

    pub fn with_labeling(mut self, lab: &'a EdgeLabeling) -> Self {
        self.labeling = Some(lab);
        self
    }
}

/// The class of target paths.
///
/// All kinds except the `AB` family are A-paths: both ends in A, no interior
/// vertex in A. The `AB` kinds join A to B with no interior vertex in A ∪ B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathKind {
    Plain,
    Long(usize),
    Even,
    Odd,
    ZeroWeight,
    NonZeroWeight,
    ABA,
    DirectedPlain,
    DirectedABA,
    ZeroMod { m: usize, d: usize },
    AB,
    EvenAB,
    OddAB,
}

impl PathKind {
    pub fn is_ab(&self) -> bool {
        matches!(self, PathKind::AB | PathKind::EvenAB | PathKind::OddAB)
    }

    pub fn requires_b(&self) -> bool {
        self.is_ab() || matches!(self, PathKind::ABA | PathKind::DirectedABA)
    }

    pub fn requires_labeling(&self) -> bool {
        matches!(self, PathKind::ZeroWeight | PathKind::NonZeroWeight)
    }

    pub fn requires_directed(&self) -> bool {
        matches!(self, PathKind::DirectedPlain | PathKind::DirectedABA)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PathKind::Long(0) => Err(Error::InvalidParameter("long threshold must be >= 1".into())),
            PathKind::ZeroMod { m, d } if m == 0 || d >= m => {
                Err(Error::InvalidParameter(format!("zeromod needs 0 <= d < m, got m={m} d={d}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PathKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathKind::Plain => write!(f, "plain"),
            PathKind::Long(l) => write!(f, "long:{l}"),
            PathKind::Even => write!(f, "even"),
            PathKind::Odd => write!(f, "odd"),
            PathKind::ZeroWeight => write!(f, "zero"),
            PathKind::NonZeroWeight => write!(f, "nonzero"),
            PathKind::ABA => write!(f, "aba"),
            PathKind::DirectedPlain => write!(f, "directed-plain"),
            PathKind::DirectedABA => write!(f, "directed-aba"),
            PathKind::ZeroMod { m, d } => write!(f, "zeromod:{m}:{d}"),
            PathKind::AB => write!(f, "ab"),
            PathKind::EvenAB => write!(f, "even-ab"),
            PathKind::OddAB => write!(f, "odd-ab"),
        }
    }
}

impl FromStr for PathKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown path spec '{s}'"));
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let kind = match parts.as_slice() {
            ["plain"] => PathKind::Plain,
            ["long", l] => PathKind::Long(num(l)?),
            ["even"] => PathKind::Even,
            ["odd"] => PathKind::Odd,
            ["zero"] => PathKind::ZeroWeight,
            ["nonzero"] => PathKind::NonZeroWeight,
            ["aba"] => PathKind::ABA,
            ["directed-plain"] => PathKind::DirectedPlain,
            ["directed-aba"] => PathKind::DirectedABA,
            ["zeromod", m, d] => PathKind::ZeroMod { m: num(m)?, d: num(d)? },
            ["ab"] => PathKind::AB,
            ["even-ab"] => PathKind::EvenAB,
            ["odd-ab"] => PathKind::OddAB,
            _ => return Err(bad()),
        };
        kind.validate()?;
        Ok(kind)
    }
}

/// Sense of disjointness for packings, and element type for hitting sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Disjointness {
    Vertex,
    Edge,
}

impl fmt::Display for Disjointness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Disjointness::Vertex => "vertex",
            Disjointness::Edge => "edge",
        })
    }
}

impl FromStr for Disjointness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertex" => Ok(Disjointness::Vertex),
            "edge" => Ok(Disjointness::Edge),
            _ => Err(Error::InvalidParameter(format!("unknown mode '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathSpec {
    pub kind: PathKind,
    pub disjointness: Disjointness,
}

impl PathSpec {
    pub fn vertex(kind: PathKind) -> Self {
        PathSpec { kind, disjointness: Disjointness::Vertex }
    }

    pub fn edge(kind: PathKind) -> Self {
        PathSpec { kind, disjointness: Disjointness::Edge }
    }
}

/// Limits for exhaustive searches. Exceeding either is reported as
/// [`Error::BudgetExceeded`], never silently truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_vertices: Option<usize>,
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_vertices: Some(20), max_nodes: 1_000_000 }
    }
}

impl Budget {
    /// An explicit node budget; lifts the vertex cap.
    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_vertices: None, max_nodes }
    }

    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        match self.max_vertices {
            Some(cap) if g.vertex_count() > cap => {
                Err(Error::BudgetExceeded(format!("graph has {} vertices, limit is {cap}", g.vertex_count())))
            }
            _ => Ok(()),
        }
    }

    pub fn meter(&self) -> Meter {
        Meter { used: 0, limit: self.max_nodes }
    }
}

/// Counts search nodes against a [`Budget`].
#[derive(Debug, Clone)]
pub struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded(format!("more than {} search nodes", self.limit)))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}
