//! Planar diagrams of Y-oriented trivalent graphs with signed crossings.
//!
//! A diagram is a rotation system: every crossing and every vertex lists its
//! incident semi-arcs in counterclockwise order. Crossings store their four
//! slots by role and derive the rotation from the sign; vertices store their
//! three slots explicitly.

mod canon;
pub mod catalog;
mod json;
mod topology;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use json::{parse_diagram, serialize_diagram};
pub use topology::{End, NodeRef, SlotRef, Topology};
pub use validate::{ValidationIssue, ValidationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_int(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn to_int(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    In,
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub id: String,
    pub sign: Sign,
    pub under_in: String,
    pub under_out: String,
    pub over_in: String,
    pub over_out: String,
}

impl Crossing {
    /// The semi-arcs in counterclockwise order together with whether each is
    /// arriving at the crossing.
    ///
    /// With the under-strand running east, a positive crossing has its
    /// over-strand running south.
    pub fn rotation(&self) -> [(&str, Dir); 4] {
        let (ui, uo, oi, oo) = (
            (self.under_in.as_str(), Dir::In),
            (self.under_out.as_str(), Dir::Out),
            (self.over_in.as_str(), Dir::In),
            (self.over_out.as_str(), Dir::Out),
        );
        match self.sign {
            Sign::Positive => [ui, oo, uo, oi],
            Sign::Negative => [ui, oi, uo, oo],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub semi_arc: String,
    pub dir: Dir,
}

impl Slot {
    pub fn new(semi_arc: impl Into<String>, dir: Dir) -> Slot {
        Slot {
            semi_arc: semi_arc.into(),
            dir,
        }
    }
}

/// A trivalent vertex; `slots` are in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub slots: [Slot; 3],
}

impl Vertex {
    /// Merge vertices have two incoming slots, split vertices one.
    pub fn kind(&self) -> Option<VertexKind> {
        match self.slots.iter().filter(|s| s.dir == Dir::In).count() {
            2 => Some(VertexKind::Merge),
            1 => Some(VertexKind::Split),
            _ => None,
        }
    }

    /// Slot index of the edge whose direction differs from the other two.
    pub fn lone_slot(&self) -> Option<usize> {
        let kind = self.kind()?;
        let lone_dir = match kind {
            VertexKind::Merge => Dir::Out,
            VertexKind::Split => Dir::In,
        };
        self.slots.iter().position(|s| s.dir == lone_dir)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Merge,
    Split,
}

impl VertexKind {
    /// Sign used in the coloring relations: `+1` for merges, `-1` for splits.
    pub fn sign(self) -> Sign {
        match self {
            VertexKind::Merge => Sign::Positive,
            VertexKind::Split => Sign::Negative,
        }
    }
}

/// Designates the unbounded region as the face on one side of a semi-arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Outer {
    pub semi_arc: String,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("semi-arc {0:?} occupies more than one slot of the same direction")]
    DuplicateSlot(String),
    #[error("semi-arc {0:?} is missing its {1} end")]
    MissingSlot(String, &'static str),
    #[error("crossing {0:?} has sign {1}, expected 1 or -1")]
    BadSign(String, i64),
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("vertex {0:?} must have both incoming and outgoing slots")]
    NotYOriented(String),
    #[error("outer face refers to unknown semi-arc {0:?}")]
    UnknownOuter(String),
    #[error("unknown crossing {0:?}")]
    UnknownCrossing(String),
    #[error("unknown semi-arc {0:?}")]
    UnknownSemiArc(String),
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

/// A diagram with its derived topology.
///
/// Crossings and vertices are kept sorted by id. Equality compares the
/// defining data only.
#[derive(Clone)]
pub struct Diagram {
    name: String,
    crossings: Vec<Crossing>,
    vertices: Vec<Vertex>,
    outer: Option<Outer>,
    topology: Topology,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.crossings == other.crossings
            && self.vertices == other.vertices
            && self.outer == other.outer
    }
}

impl Eq for Diagram {}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Diagram")
            .field("name", &self.name)
            .field("crossings", &self.crossings)
            .field("vertices", &self.vertices)
            .field("outer", &self.outer)
            .finish()
    }
}

impl Diagram {
    /// Checks that every semi-arc has exactly one tail and one head, that ids
    /// are unique and that every vertex is Y-oriented, then traces faces.
    ///
    /// Planarity and the other global conditions are reported by
    /// [`Diagram::validate`].
    pub fn new(
        name: impl Into<String>,
        mut crossings: Vec<Crossing>,
        mut vertices: Vec<Vertex>,
        outer: Option<Outer>,
    ) -> Result<Diagram, DiagramError> {
        crossings.sort_by(|a, b| a.id.cmp(&b.id));
        vertices.sort_by(|a, b| a.id.cmp(&b.id));

        let mut ids = BTreeSet::new();
        for id in crossings
            .iter()
            .map(|c| &c.id)
            .chain(vertices.iter().map(|v| &v.id))
        {
            if !ids.insert(id.as_str()) {
                return Err(DiagramError::DuplicateId(id.clone()));
            }
        }

        // semi-arc -> (tail seen, head seen)
        let mut ends: BTreeMap<String, (bool, bool)> = BTreeMap::new();
        let mut mark = |semi: &str, dir: Dir| -> Result<(), DiagramError> {
            let entry = ends.entry(semi.to_string()).or_default();
            let seen = match dir {
                Dir::Out => &mut entry.0,
                Dir::In => &mut entry.1,
            };
            if std::mem::replace(seen, true) {
                return Err(DiagramError::DuplicateSlot(semi.to_string()));
            }
            Ok(())
        };
        for c in &crossings {
            for (semi, dir) in c.rotation() {
                mark(semi, dir)?;
            }
        }
        for v in &vertices {
            if v.kind().is_none() {
                return Err(DiagramError::NotYOriented(v.id.clone()));
            }
            for s in &v.slots {
                mark(&s.semi_arc, s.dir)?;
            }
        }
        for (semi, (tail, head)) in &ends {
            if !tail {
                return Err(DiagramError::MissingSlot(semi.to_string(), "tail"));
            }
            if !head {
                return Err(DiagramError::MissingSlot(semi.to_string(), "head"));
            }
        }
        if let Some(o) = &outer {
            if !ends.contains_key(&o.semi_arc) {
                return Err(DiagramError::UnknownOuter(o.semi_arc.clone()));
            }
        }
        let semi_arcs: Vec<String> = ends.into_keys().collect();
        let topology = Topology::build(semi_arcs, &crossings, &vertices, outer.as_ref());
        Ok(Diagram {
            name: name.into(),
            crossings,
            vertices,
            outer,
            topology,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn outer(&self) -> Option<&Outer> {
        self.outer.as_ref()
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    /// Semi-arc ids in sorted order.
    pub fn semi_arcs(&self) -> &[String] {
        self.topology.semi_arcs()
    }

    pub fn crossing(&self, id: &str) -> Option<&Crossing> {
        self.crossings.iter().find(|c| c.id == id)
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// `k`, half the number of vertices.
    pub fn vertex_pairs(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Diagram {
        self.name = name.into();
        self
    }

    pub fn with_outer(self, outer: Option<Outer>) -> Result<Diagram, DiagramError> {
        Diagram::new(self.name, self.crossings, self.vertices, outer)
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    /// Fails with [`DiagramError::Invalid`] unless [`Diagram::validate`]
    /// reports no issues.
    pub fn ensure_valid(&self) -> Result<(), DiagramError> {
        let report = self.validate();
        match report.issues.first() {
            None => Ok(()),
            Some(issue) => Err(DiagramError::Invalid(issue.to_string())),
        }
    }

    /// Swaps the over- and under-strands at one crossing and flips its sign.
    /// The rotation system is unchanged.
    pub fn crossing_change(&self, id: &str) -> Result<Diagram, DiagramError> {
        let mut crossings = self.crossings.clone();
        let c = crossings
            .iter_mut()
            .find(|c| c.id == id)
            .ok_or_else(|| DiagramError::UnknownCrossing(id.to_string()))?;
        std::mem::swap(&mut c.under_in, &mut c.over_in);
        std::mem::swap(&mut c.under_out, &mut c.over_out);
        c.sign = c.sign.flip();
        Diagram::new(
            self.name.clone(),
            crossings,
            self.vertices.clone(),
            self.outer.clone(),
        )
    }

    /// Disjoint union; ids of `other` are prefixed to keep them apart.
    pub fn disjoint_union(&self, other: &Diagram, prefix: &str) -> Result<Diagram, DiagramError> {
        let re = |s: &str| format!("{prefix}{s}");
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| Crossing {
            id: re(&c.id),
            sign: c.sign,
            under_in: re(&c.under_in),
            under_out: re(&c.under_out),
            over_in: re(&c.over_in),
            over_out: re(&c.over_out),
        }));
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|v| Vertex {
            id: re(&v.id),
            slots: v.slots.clone().map(|s| Slot::new(re(&s.semi_arc), s.dir)),
        }));
        Diagram::new(
            format!("{}+{}", self.name, other.name),
            crossings,
            vertices,
            self.outer.clone(),
        )
    }

    /// Whether two diagrams have isomorphic labelled rotation systems,
    /// ignoring ids, names and outer-face choices.
    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        canon::canonical_form(self) == canon::canonical_form(other)
    }

    /// An id-independent string describing the rotation system.
    pub fn canonical_form(&self) -> String {
        canon::canonical_form(self)
    }

    /// A semi-arc id not used by this diagram, of the form `{prefix}{n}`.
    pub fn fresh_id(&self, prefix: &str, taken: &BTreeSet<String>) -> String {
        (0..)
            .map(|i| format!("{prefix}{i}"))
            .find(|id| {
                !taken.contains(id)
                    && self.topology.semi_index(id).is_none()
                    && self.crossing(id).is_none()
                    && self.vertex(id).is_none()
            })
            .unwrap()
    }
}
