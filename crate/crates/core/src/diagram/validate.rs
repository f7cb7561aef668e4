use std::fmt;

use serde::Serialize;

use super::{Diagram, NodeRef, VertexKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValidationIssue {
    /// `|SA| != 2n + 3k` or an odd number of vertices.
    SemiArcCount { semi_arcs: usize, expected: usize },
    /// A connected component has no crossing.
    NoCrossing { component: usize },
    /// `V - E + F != 2` for a component, so its rotation system is not planar.
    NotPlanar { component: usize, euler: i64 },
    /// Merge and split vertices do not pair up within a component.
    VertexImbalance {
        component: usize,
        merges: usize,
        splits: usize,
    },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::SemiArcCount {
                semi_arcs,
                expected,
            } => {
                write!(f, "{semi_arcs} semi-arcs, expected {expected}")
            }
            ValidationIssue::NoCrossing { component } => {
                write!(f, "component {component} has no crossing")
            }
            ValidationIssue::NotPlanar { component, euler } => {
                write!(
                    f,
                    "component {component} is not planar (V - E + F = {euler})"
                )
            }
            ValidationIssue::VertexImbalance {
                component,
                merges,
                splits,
            } => write!(
                f,
                "component {component} has {merges} merge and {splits} split vertices"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub crossings: usize,
    pub vertices: usize,
    pub semi_arcs: usize,
    pub arcs: usize,
    pub faces: usize,
    pub components: usize,
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    /// Faces of the planar diagram: components share their unbounded region.
    pub fn planar_faces(&self) -> usize {
        (self.faces + 1).saturating_sub(self.components)
    }
}

pub(super) fn validate(d: &Diagram) -> ValidationReport {
    let topo = d.topology();
    let n = d.crossings().len();
    let v = d.vertices().len();
    let e = topo.semi_arc_count();
    let comps = topo.component_count();
    let mut issues = Vec::new();

    let expected = 2 * n + 3 * v / 2;
    if e != expected || !v.is_multiple_of(2) {
        issues.push(ValidationIssue::SemiArcCount {
            semi_arcs: e,
            expected,
        });
    }

    let mut nodes = vec![0i64; comps];
    let mut edges = vec![0i64; comps];
    let mut faces = vec![0i64; comps];
    let mut crossings = vec![0usize; comps];
    let mut merges = vec![0usize; comps];
    let mut splits = vec![0usize; comps];
    for node in 0..topo.node_count() {
        let c = topo.node_component(node);
        nodes[c] += 1;
        match topo.node_kind(node) {
            NodeRef::Crossing(_) => crossings[c] += 1,
            NodeRef::Vertex(i) => match d.vertices()[i].kind() {
                Some(VertexKind::Merge) => merges[c] += 1,
                _ => splits[c] += 1,
            },
        }
    }
    for s in 0..e {
        edges[topo.semi_component(s)] += 1;
    }
    for f in 0..topo.faces().len() {
        faces[topo.face_component(f)] += 1;
    }
    for c in 0..comps {
        if crossings[c] == 0 {
            issues.push(ValidationIssue::NoCrossing { component: c });
        }
        let euler = nodes[c] - edges[c] + faces[c];
        if euler != 2 {
            issues.push(ValidationIssue::NotPlanar {
                component: c,
                euler,
            });
        }
        if merges[c] != splits[c] {
            issues.push(ValidationIssue::VertexImbalance {
                component: c,
                merges: merges[c],
                splits: splits[c],
            });
        }
    }

    ValidationReport {
        crossings: n,
        vertices: v,
        semi_arcs: e,
        arcs: topo.arcs().len(),
        faces: topo.faces().len(),
        components: comps,
        issues,
    }
}
