//! Id-independent encoding of a rotation system, used to compare diagrams up
//! to relabelling.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write;

use super::{Diagram, End, NodeRef, Sign, VertexKind};

pub(super) fn canonical_form(d: &Diagram) -> String {
    let topo = d.topology();
    let mut per_component: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for node in 0..topo.node_count() {
        per_component
            .entry(topo.node_component(node))
            .or_default()
            .push(node);
    }
    let mut parts: Vec<String> = per_component
        .values()
        .map(|nodes| {
            nodes
                .iter()
                .map(|&start| encode_from(d, start))
                .min()
                .unwrap()
        })
        .collect();
    parts.sort();
    parts.join("|")
}

/// Slot index at which a node's canonical listing starts: the incoming
/// under-strand of a crossing, the lone edge of a vertex.
fn first_slot(d: &Diagram, node: usize) -> usize {
    match d.topology().node_kind(node) {
        NodeRef::Crossing(_) => 0,
        NodeRef::Vertex(i) => d.vertices()[i].lone_slot().unwrap_or(0),
    }
}

fn encode_from(d: &Diagram, start: usize) -> String {
    let topo = d.topology();
    let mut node_num = BTreeMap::new();
    let mut semi_num = BTreeMap::new();
    let mut queue = VecDeque::new();
    node_num.insert(start, 0usize);
    queue.push_back(start);
    let mut out = String::new();
    while let Some(node) = queue.pop_front() {
        let tag = match topo.node_kind(node) {
            NodeRef::Crossing(i) => match d.crossings()[i].sign {
                Sign::Positive => "C+",
                Sign::Negative => "C-",
            },
            NodeRef::Vertex(i) => match d.vertices()[i].kind() {
                Some(VertexKind::Merge) => "VM",
                _ => "VS",
            },
        };
        out.push_str(tag);
        let slots = topo.node_slots(node);
        let first = first_slot(d, node);
        for k in 0..slots.len() {
            let (semi, end) = slots[(first + k) % slots.len()];
            let next = semi_num.len();
            let num = *semi_num.entry(semi).or_insert(next);
            let other = match end {
                End::Tail => topo.head_at(semi).node,
                End::Head => topo.tail_at(semi).node,
            };
            if !node_num.contains_key(&other) {
                node_num.insert(other, node_num.len());
                queue.push_back(other);
            }
            let e = if end == End::Tail { 't' } else { 'h' };
            write!(out, " {num}{e}").unwrap();
        }
        out.push(';');
    }
    out
}
