use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use super::{Crossing, Dir, Outer, Side, Vertex};

/// Which end of a semi-arc sits at a slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub(crate) fn from_dir(dir: Dir) -> End {
        match dir {
            Dir::In => End::Head,
            Dir::Out => End::Tail,
        }
    }
}

/// A node of the rotation system, indexing the diagram's sorted crossing or
/// vertex list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeRef {
    Crossing(usize),
    Vertex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlotRef {
    pub node: usize,
    pub slot: usize,
}

#[derive(Clone, Debug)]
struct Node {
    kind: NodeRef,
    slots: Vec<(usize, End)>,
}

/// Everything derived from the rotation system: indices, faces, connected
/// components and arcs.
///
/// Semi-arcs are indexed in sorted id order; nodes list the crossings first,
/// then the vertices.
#[derive(Clone, Debug)]
pub struct Topology {
    semi_arcs: Vec<String>,
    index: BTreeMap<String, usize>,
    nodes: Vec<Node>,
    tail_at: Vec<SlotRef>,
    head_at: Vec<SlotRef>,
    faces: Vec<Vec<(usize, Side)>>,
    face_of: Vec<[usize; 2]>,
    node_component: Vec<usize>,
    component_count: usize,
    outer_faces: Vec<usize>,
    arcs: Vec<Vec<usize>>,
    arc_of: Vec<usize>,
}

impl Topology {
    pub(crate) fn build(
        semi_arcs: Vec<String>,
        crossings: &[Crossing],
        vertices: &[Vertex],
        outer: Option<&Outer>,
    ) -> Topology {
        let index: BTreeMap<String, usize> = semi_arcs
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut nodes = Vec::with_capacity(crossings.len() + vertices.len());
        for (i, c) in crossings.iter().enumerate() {
            let slots = c
                .rotation()
                .iter()
                .map(|&(s, dir)| (index[s], End::from_dir(dir)))
                .collect();
            nodes.push(Node {
                kind: NodeRef::Crossing(i),
                slots,
            });
        }
        for (i, v) in vertices.iter().enumerate() {
            let slots = v
                .slots
                .iter()
                .map(|s| (index[&s.semi_arc], End::from_dir(s.dir)))
                .collect();
            nodes.push(Node {
                kind: NodeRef::Vertex(i),
                slots,
            });
        }

        let e = semi_arcs.len();
        let unset = SlotRef {
            node: usize::MAX,
            slot: 0,
        };
        let mut tail_at = vec![unset; e];
        let mut head_at = vec![unset; e];
        for (ni, node) in nodes.iter().enumerate() {
            for (si, &(semi, end)) in node.slots.iter().enumerate() {
                let r = SlotRef { node: ni, slot: si };
                match end {
                    End::Tail => tail_at[semi] = r,
                    End::Head => head_at[semi] = r,
                }
            }
        }

        let mut uf = UnionFind::<usize>::new(nodes.len());
        for s in 0..e {
            uf.union(tail_at[s].node, head_at[s].node);
        }
        let mut comp_label = BTreeMap::new();
        let node_component: Vec<usize> = (0..nodes.len())
            .map(|n| {
                let next = comp_label.len();
                *comp_label.entry(uf.find(n)).or_insert(next)
            })
            .collect();
        let component_count = comp_label.len();

        let mut topo = Topology {
            semi_arcs,
            index,
            nodes,
            tail_at,
            head_at,
            faces: Vec::new(),
            face_of: vec![[usize::MAX; 2]; e],
            node_component,
            component_count,
            outer_faces: Vec::new(),
            arcs: Vec::new(),
            arc_of: Vec::new(),
        };
        topo.trace_faces();
        topo.pick_outer_faces(outer);
        topo.build_arcs(crossings);
        topo
    }

    fn trace_faces(&mut self) {
        let e = self.semi_arcs.len();
        for start in 0..e {
            for side in [Side::Left, Side::Right] {
                if self.face_of[start][side.index()] != usize::MAX {
                    continue;
                }
                let face = self.faces.len();
                let mut walk = Vec::new();
                let (mut semi, mut side_now) = (start, side);
                loop {
                    self.face_of[semi][side_now.index()] = face;
                    walk.push((semi, side_now));
                    (semi, side_now) = self.next_in_face(semi, side_now);
                    if (semi, side_now) == (start, side) {
                        break;
                    }
                }
                self.faces.push(walk);
            }
        }
    }

    /// Walking a face with the face on the left: after `(semi, side)` comes
    /// the semi-arc leaving the arrival node through the clockwise-next slot.
    pub fn next_in_face(&self, semi: usize, side: Side) -> (usize, Side) {
        let arrive = match side {
            Side::Left => self.head_at[semi],
            Side::Right => self.tail_at[semi],
        };
        let node = &self.nodes[arrive.node];
        let deg = node.slots.len();
        let (next, end) = node.slots[(arrive.slot + deg - 1) % deg];
        match end {
            End::Tail => (next, Side::Left),
            End::Head => (next, Side::Right),
        }
    }

    fn pick_outer_faces(&mut self, outer: Option<&Outer>) {
        let mut outer_faces = vec![usize::MAX; self.component_count];
        if let Some(o) = outer {
            let s = self.index[&o.semi_arc];
            outer_faces[self.semi_component(s)] = self.face_of[s][o.side.index()];
        }
        for s in 0..self.semi_arcs.len() {
            let c = self.semi_component(s);
            if outer_faces[c] == usize::MAX {
                outer_faces[c] = self.face_of[s][Side::Left.index()];
            }
        }
        self.outer_faces = outer_faces;
    }

    fn build_arcs(&mut self, crossings: &[Crossing]) {
        let e = self.semi_arcs.len();
        let mut uf = UnionFind::<usize>::new(e);
        for c in crossings {
            uf.union(self.index[&c.over_in], self.index[&c.over_out]);
        }
        let mut label = BTreeMap::new();
        let mut arcs: Vec<Vec<usize>> = Vec::new();
        let mut arc_of = Vec::with_capacity(e);
        for s in 0..e {
            let root = uf.find(s);
            let a = *label.entry(root).or_insert_with(|| {
                arcs.push(Vec::new());
                arcs.len() - 1
            });
            arcs[a].push(s);
            arc_of.push(a);
        }
        self.arcs = arcs;
        self.arc_of = arc_of;
    }

    pub fn semi_arcs(&self) -> &[String] {
        &self.semi_arcs
    }

    pub fn semi_arc_count(&self) -> usize {
        self.semi_arcs.len()
    }

    pub fn semi_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn semi_name(&self, i: usize) -> &str {
        &self.semi_arcs[i]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_kind(&self, node: usize) -> NodeRef {
        self.nodes[node].kind
    }

    /// Counterclockwise slots of a node.
    pub fn node_slots(&self, node: usize) -> &[(usize, End)] {
        &self.nodes[node].slots
    }

    pub fn tail_at(&self, semi: usize) -> SlotRef {
        self.tail_at[semi]
    }

    pub fn head_at(&self, semi: usize) -> SlotRef {
        self.head_at[semi]
    }

    pub fn faces(&self) -> &[Vec<(usize, Side)>] {
        &self.faces
    }

    pub fn face_of(&self, semi: usize, side: Side) -> usize {
        self.face_of[semi][side.index()]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn node_component(&self, node: usize) -> usize {
        self.node_component[node]
    }

    pub fn semi_component(&self, semi: usize) -> usize {
        self.node_component[self.tail_at[semi].node]
    }

    pub fn face_component(&self, face: usize) -> usize {
        self.semi_component(self.faces[face][0].0)
    }

    /// The face labelled zero in each component's Alexander numbering.
    pub fn outer_face(&self, component: usize) -> usize {
        self.outer_faces[component]
    }

    pub fn arcs(&self) -> &[Vec<usize>] {
        &self.arcs
    }

    pub fn arc_of(&self, semi: usize) -> usize {
        self.arc_of[semi]
    }
}
