//! Mutable scratch copy of a diagram used while rewriting a local picture.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{Crossing, Diagram, Dir, End, NodeRef, Sign, Slot, Vertex};
use crate::Error;

pub(super) fn dir_of(end: End) -> Dir {
    match end {
        End::Head => Dir::In,
        End::Tail => Dir::Out,
    }
}

pub(super) fn not_applicable(msg: impl Into<String>) -> Error {
    Error::NotApplicable(msg.into())
}

pub(super) struct Edit {
    name: String,
    crossings: BTreeMap<String, Crossing>,
    vertices: BTreeMap<String, Vertex>,
    outer: Option<crate::diagram::Outer>,
    used: BTreeSet<String>,
}

impl Edit {
    pub fn new(d: &Diagram) -> Edit {
        let mut used: BTreeSet<String> = d.semi_arcs().iter().cloned().collect();
        used.extend(d.crossings().iter().map(|c| c.id.clone()));
        used.extend(d.vertices().iter().map(|v| v.id.clone()));
        Edit {
            name: d.name().to_string(),
            crossings: d
                .crossings()
                .iter()
                .map(|c| (c.id.clone(), c.clone()))
                .collect(),
            vertices: d
                .vertices()
                .iter()
                .map(|v| (v.id.clone(), v.clone()))
                .collect(),
            outer: d.outer().cloned(),
            used,
        }
    }

    /// An unused id `{prefix}{n}`.
    pub fn fresh(&mut self, prefix: &str) -> String {
        let id = (1..)
            .map(|i| format!("{prefix}{i}"))
            .find(|id| !self.used.contains(id))
            .unwrap();
        self.used.insert(id.clone());
        id
    }

    /// Renames the given end of a semi-arc wherever it sits.
    pub fn rename_end(&mut self, semi: &str, end: End, new: &str) -> Result<(), Error> {
        for c in self.crossings.values_mut() {
            let slots = match end {
                End::Head => [&mut c.under_in, &mut c.over_in],
                End::Tail => [&mut c.under_out, &mut c.over_out],
            };
            for s in slots {
                if s == semi {
                    *s = new.to_string();
                    return Ok(());
                }
            }
        }
        let dir = dir_of(end);
        for v in self.vertices.values_mut() {
            for s in v.slots.iter_mut() {
                if s.semi_arc == semi && s.dir == dir {
                    s.semi_arc = new.to_string();
                    return Ok(());
                }
            }
        }
        Err(not_applicable(format!("no {end:?} end of {semi:?}")))
    }

    /// Cuts a semi-arc into `count` pieces in its own direction. The first
    /// piece keeps the id and the tail; the last piece takes over the head.
    /// The caller places the new interior endpoints.
    pub fn split(&mut self, semi: &str, count: usize) -> Result<Vec<String>, Error> {
        let mut pieces = vec![semi.to_string()];
        for _ in 1..count {
            pieces.push(self.fresh("s"));
        }
        if count > 1 {
            self.rename_end(semi, End::Head, pieces.last().unwrap())?;
        }
        Ok(pieces)
    }

    /// Joins consecutive pieces (in their direction) into the first one. The
    /// caller removes the nodes in between.
    pub fn merge(&mut self, pieces: &[String]) -> Result<(), Error> {
        let (first, last) = (pieces.first().unwrap(), pieces.last().unwrap());
        if first != last {
            self.rename_end(last, End::Head, first)?;
        }
        Ok(())
    }

    pub fn remove_crossing(&mut self, id: &str) -> Crossing {
        self.crossings.remove(id).expect("crossing exists")
    }

    pub fn remove_vertex(&mut self, id: &str) -> Vertex {
        self.vertices.remove(id).expect("vertex exists")
    }

    pub fn add_crossing(&mut self, c: Crossing) {
        self.used.insert(c.id.clone());
        self.crossings.insert(c.id.clone(), c);
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.used.insert(v.id.clone());
        self.vertices.insert(v.id.clone(), v);
    }

    /// Builds the diagram and rejects anything that fails validation.
    pub fn finish(self) -> Result<Diagram, Error> {
        let mut slots_seen = BTreeSet::new();
        for c in self.crossings.values() {
            slots_seen.extend([&c.under_in, &c.under_out, &c.over_in, &c.over_out]);
        }
        for v in self.vertices.values() {
            slots_seen.extend(v.slots.iter().map(|s| &s.semi_arc));
        }
        let outer = self.outer.filter(|o| slots_seen.contains(&o.semi_arc));
        let d = Diagram::new(
            self.name,
            self.crossings.into_values().collect(),
            self.vertices.into_values().collect(),
            outer,
        )
        .map_err(|e| not_applicable(format!("result is malformed: {e}")))?;
        d.ensure_valid()
            .map_err(|e| not_applicable(format!("result is not valid: {e}")))?;
        Ok(d)
    }
}

/// A crossing from its counterclockwise slots; `over_pair` (0 or 1) selects
/// which opposite pair is the over-strand. The sign follows from the
/// rotation.
pub(super) fn make_crossing(
    id: &str,
    ccw: [(String, Dir); 4],
    over_pair: usize,
) -> Result<Crossing, Error> {
    let under_pair = 1 - over_pair;
    let pick = |pair: usize, dir: Dir| -> Result<usize, Error> {
        [pair, pair + 2]
            .into_iter()
            .find(|&i| ccw[i].1 == dir)
            .ok_or_else(|| not_applicable("strand through a crossing must pass in and out"))
    };
    let (ui, uo) = (pick(under_pair, Dir::In)?, pick(under_pair, Dir::Out)?);
    let (oi, oo) = (pick(over_pair, Dir::In)?, pick(over_pair, Dir::Out)?);
    let sign = if ccw[(ui + 1) % 4].1 == Dir::Out {
        Sign::Positive
    } else {
        Sign::Negative
    };
    Ok(Crossing {
        id: id.to_string(),
        sign,
        under_in: ccw[ui].0.clone(),
        under_out: ccw[uo].0.clone(),
        over_in: ccw[oi].0.clone(),
        over_out: ccw[oo].0.clone(),
    })
}

/// Read-only helpers on the original diagram.
pub(super) struct View<'a> {
    pub d: &'a Diagram,
}

impl<'a> View<'a> {
    pub fn name(&self, semi: usize) -> String {
        self.d.topology().semi_name(semi).to_string()
    }

    pub fn idx(&self, id: &str) -> Result<usize, Error> {
        self.d
            .topology()
            .semi_index(id)
            .ok_or_else(|| not_applicable(format!("unknown semi-arc {id:?}")))
    }

    pub fn node_at(&self, semi: usize, end: End) -> usize {
        let topo = self.d.topology();
        match end {
            End::Tail => topo.tail_at(semi).node,
            End::Head => topo.head_at(semi).node,
        }
    }

    pub fn slot_at(&self, semi: usize, end: End) -> usize {
        let topo = self.d.topology();
        match end {
            End::Tail => topo.tail_at(semi).slot,
            End::Head => topo.head_at(semi).slot,
        }
    }

    pub fn slots(&self, node: usize) -> &'a [(usize, End)] {
        self.d.topology().node_slots(node)
    }

    pub fn crossing(&self, node: usize) -> Option<&'a Crossing> {
        match self.d.topology().node_kind(node) {
            NodeRef::Crossing(i) => Some(&self.d.crossings()[i]),
            NodeRef::Vertex(_) => None,
        }
    }

    pub fn vertex(&self, node: usize) -> Option<&'a Vertex> {
        match self.d.topology().node_kind(node) {
            NodeRef::Vertex(i) => Some(&self.d.vertices()[i]),
            NodeRef::Crossing(_) => None,
        }
    }

    pub fn node_id(&self, node: usize) -> &'a str {
        match self.d.topology().node_kind(node) {
            NodeRef::Crossing(i) => &self.d.crossings()[i].id,
            NodeRef::Vertex(i) => &self.d.vertices()[i].id,
        }
    }

    /// The piece continuing the same strand through a crossing.
    pub fn partner(&self, node: usize, slot: usize) -> (usize, End) {
        self.slots(node)[(slot + 2) % 4]
    }

    /// Whether the slot lies on the over-strand of its crossing.
    pub fn is_over(&self, node: usize, slot: usize) -> bool {
        let c = self.crossing(node).expect("crossing");
        let (semi, end) = self.slots(node)[slot];
        let name = self.d.topology().semi_name(semi);
        match end {
            End::Head => c.over_in == name,
            End::Tail => c.over_out == name,
        }
    }
}

pub(super) fn slot(semi: &str, dir: Dir) -> Slot {
    Slot::new(semi, dir)
}
