//! The local rewrites. Each works on the rotation system directly: semi-arcs
//! are cut or joined, the crossings and vertices inside the disk are
//! replaced, and the result is validated before it is returned.
//!
//! Face-based anchors name one `(semi-arc, side)` of the face being
//! collapsed. Pieces are described in the direction of the face walk (face
//! on the left); whether that agrees with a semi-arc's own direction depends
//! on the side the face lies on.

use std::collections::BTreeSet;

use super::edit::{dir_of, make_crossing, not_applicable, slot, Edit, View};
use crate::diagram::{Diagram, Dir, End, Side, Vertex};
use crate::Error;

fn arrive(forward: bool) -> End {
    if forward {
        End::Head
    } else {
        End::Tail
    }
}

fn leave(forward: bool) -> End {
    if forward {
        End::Tail
    } else {
        End::Head
    }
}

fn arr(forward: bool) -> Dir {
    dir_of(arrive(forward))
}

fn lv(forward: bool) -> Dir {
    dir_of(leave(forward))
}

fn all_distinct(items: &[usize]) -> Result<(), Error> {
    let set: BTreeSet<_> = items.iter().collect();
    if set.len() == items.len() {
        Ok(())
    } else {
        Err(not_applicable("local picture overlaps itself"))
    }
}

/// The face containing `(semi, side)`, as walk entries `(semi, forward)`.
fn face(v: &View, semi: &str, side: Side) -> Result<Vec<(usize, bool)>, Error> {
    let s = v.idx(semi)?;
    let topo = v.d.topology();
    Ok(topo.faces()[topo.face_of(s, side)]
        .iter()
        .map(|&(e, sd)| (e, sd == Side::Left))
        .collect())
}

/// Node and slot where a walk along `(semi, forward)` starts or ends.
fn walk_start(v: &View, semi: usize, forward: bool) -> (usize, usize) {
    let end = leave(forward);
    (v.node_at(semi, end), v.slot_at(semi, end))
}

fn walk_end(v: &View, semi: usize, forward: bool) -> (usize, usize) {
    let end = arrive(forward);
    (v.node_at(semi, end), v.slot_at(semi, end))
}

/// Joins a two-piece edge meeting at a removed crossing, given which end of
/// `near` sits at that crossing. Returns the surviving id.
fn join_pair(
    ed: &mut Edit,
    near: &str,
    far: &str,
    near_end_at_crossing: End,
) -> Result<String, Error> {
    let chain = match near_end_at_crossing {
        End::Head => [near.to_string(), far.to_string()],
        End::Tail => [far.to_string(), near.to_string()],
    };
    ed.merge(&chain)?;
    Ok(chain[0].clone())
}

/// A piece of a cut edge and its direction at the new crossing.
type Piece = (String, Dir);

/// Cuts an edge leaving or entering a vertex into `(near, far)`, near
/// touching the vertex.
fn cut_pair(ed: &mut Edit, semi: &str, dir_at_vertex: Dir) -> Result<(Piece, Piece), Error> {
    let pieces = ed.split(semi, 2)?;
    Ok(match dir_at_vertex {
        // edge leaves the vertex: near piece runs into the crossing
        Dir::Out => ((pieces[0].clone(), Dir::In), (pieces[1].clone(), Dir::Out)),
        Dir::In => ((pieces[1].clone(), Dir::Out), (pieces[0].clone(), Dir::In)),
    })
}

pub fn r1_add(d: &Diagram, semi: &str, side: Side, over_first: bool) -> Result<Diagram, Error> {
    View { d }.idx(semi)?;
    let mut ed = Edit::new(d);
    let p = ed.split(semi, 3)?;
    let (e1, l, e2) = (p[0].clone(), p[1].clone(), p[2].clone());
    let c = ed.fresh("c");
    // first pass: e1 -> l, second pass: l -> e2
    let (ccw, first_pair) = match side {
        Side::Left => (
            [
                (l.clone(), Dir::Out),
                (l, Dir::In),
                (e1, Dir::In),
                (e2, Dir::Out),
            ],
            0,
        ),
        Side::Right => (
            [
                (e2, Dir::Out),
                (e1, Dir::In),
                (l.clone(), Dir::In),
                (l, Dir::Out),
            ],
            1,
        ),
    };
    let over = if over_first {
        first_pair
    } else {
        1 - first_pair
    };
    ed.add_crossing(make_crossing(&c, ccw, over)?);
    ed.finish()
}

pub fn r1_remove(d: &Diagram, loop_semi: &str) -> Result<Diagram, Error> {
    let v = View { d };
    let l = v.idx(loop_semi)?;
    let node = v.node_at(l, End::Tail);
    if v.node_at(l, End::Head) != node || v.crossing(node).is_none() {
        return Err(not_applicable("not a kink"));
    }
    let topo = d.topology();
    let monogon = [Side::Left, Side::Right]
        .iter()
        .any(|&s| topo.faces()[topo.face_of(l, s)].len() == 1);
    if !monogon {
        return Err(not_applicable("loop does not bound a monogon"));
    }
    let (e1, _) = v.partner(node, v.slot_at(l, End::Tail));
    let (e2, _) = v.partner(node, v.slot_at(l, End::Head));
    if e1 == e2 {
        return Err(not_applicable(
            "removing the kink would leave a crossingless circle",
        ));
    }
    let mut ed = Edit::new(d);
    ed.remove_crossing(v.node_id(node));
    ed.merge(&[v.name(e1), v.name(e2)])?;
    ed.finish()
}

pub fn r2_add(
    d: &Diagram,
    e: &str,
    se: Side,
    f: &str,
    sf: Side,
    e_over: bool,
) -> Result<Diagram, Error> {
    let v = View { d };
    let (ei, fi) = (v.idx(e)?, v.idx(f)?);
    let topo = d.topology();
    if ei == fi || topo.face_of(ei, se) != topo.face_of(fi, sf) {
        return Err(not_applicable(
            "the two semi-arcs must be distinct sides of one face",
        ));
    }
    let (fe, ff) = (se == Side::Left, sf == Side::Left);
    let mut ed = Edit::new(d);
    let pe = ed.split(e, 3)?;
    let pf = ed.split(f, 3)?;
    let walk = |p: &Vec<String>, fwd: bool| {
        if fwd {
            (p[0].clone(), p[1].clone(), p[2].clone())
        } else {
            (p[2].clone(), p[1].clone(), p[0].clone())
        }
    };
    let (ea, eb, ec) = walk(&pe, fe);
    let (fa, fb, fc) = walk(&pf, ff);
    let c1 = ed.fresh("c");
    let c2 = ed.fresh("c");
    let over = if e_over { 1 } else { 0 };
    let x1 = make_crossing(
        &c1,
        [
            (fb.clone(), arr(ff)),
            (eb.clone(), lv(fe)),
            (fc, lv(ff)),
            (ea, arr(fe)),
        ],
        over,
    )?;
    let x2 = make_crossing(
        &c2,
        [(fa, arr(ff)), (eb, arr(fe)), (fb, lv(ff)), (ec, lv(fe))],
        over,
    )?;
    ed.add_crossing(x1);
    ed.add_crossing(x2);
    ed.finish()
}

/// Pieces on either side of `mid` along its strand through the crossings
/// at both of its ends, in the strand's own direction.
fn through(v: &View, mid: usize) -> (usize, usize) {
    let t = v.node_at(mid, End::Tail);
    let h = v.node_at(mid, End::Head);
    let (before, _) = v.partner(t, v.slot_at(mid, End::Tail));
    let (after, _) = v.partner(h, v.slot_at(mid, End::Head));
    (before, after)
}

pub fn r2_remove(d: &Diagram, semi: &str, side: Side) -> Result<Diagram, Error> {
    let v = View { d };
    let fc = face(&v, semi, side)?;
    if fc.len() != 2 {
        return Err(not_applicable("face is not a bigon"));
    }
    let (x, fx) = fc[0];
    let (y, _) = fc[1];
    let (p, px) = walk_start(&v, x, fx);
    let (q, qx) = walk_end(&v, x, fx);
    if p == q || v.crossing(p).is_none() || v.crossing(q).is_none() {
        return Err(not_applicable("bigon must join two distinct crossings"));
    }
    if v.is_over(p, px) != v.is_over(q, qx) {
        return Err(not_applicable("strands alternate around the bigon"));
    }
    let (xb, xa) = through(&v, x);
    let (yb, ya) = through(&v, y);
    all_distinct(&[x, y, xb, xa, yb, ya])?;
    let mut ed = Edit::new(d);
    ed.remove_crossing(v.node_id(p));
    ed.remove_crossing(v.node_id(q));
    ed.merge(&[v.name(xb), v.name(xa)])?;
    ed.merge(&[v.name(yb), v.name(ya)])?;
    ed.finish()
}

pub fn r3(d: &Diagram, semi: &str, side: Side) -> Result<Diagram, Error> {
    let v = View { d };
    let fc = face(&v, semi, side)?;
    if fc.len() != 3 {
        return Err(not_applicable("face is not a triangle"));
    }
    let [(s1, fa), (s2, fcw), (s3, fb)] = [fc[0], fc[1], fc[2]];
    let (q, q1) = walk_start(&v, s1, fa);
    let (r, r1) = walk_end(&v, s1, fa);
    let (_, r2) = walk_start(&v, s2, fcw);
    let (p, p2) = walk_end(&v, s2, fcw);
    let (_, p3) = walk_start(&v, s3, fb);
    let (_, q3) = walk_end(&v, s3, fb);
    if [q, r, p].iter().any(|&n| v.crossing(n).is_none()) || q == r || r == p || p == q {
        return Err(not_applicable(
            "triangle must have three distinct crossings",
        ));
    }
    let a_w = v.partner(q, q1).0;
    let a_e = v.partner(r, r1).0;
    let c_se = v.partner(r, r2).0;
    let c_nw = v.partner(p, p2).0;
    let b_ne = v.partner(p, p3).0;
    let b_sw = v.partner(q, q3).0;
    all_distinct(&[s1, s2, s3, a_w, a_e, c_se, c_nw, b_ne, b_sw])?;
    let a_over_c = v.is_over(r, r1);
    let a_over_b = v.is_over(q, q1);
    let b_over_c = v.is_over(p, p3);
    let cyclic = (a_over_c && !b_over_c && !a_over_b) || (!a_over_c && b_over_c && a_over_b);
    if cyclic {
        return Err(not_applicable("levels around the triangle are cyclic"));
    }
    let n = |s: usize| v.name(s);
    let (a, c, b) = (n(s1), n(s2), n(s3));
    let x = make_crossing(
        v.node_id(r),
        [
            (a.clone(), lv(fa)),
            (n(c_nw), lv(fcw)),
            (n(a_w), arr(fa)),
            (c.clone(), arr(fcw)),
        ],
        if a_over_c { 0 } else { 1 },
    )?;
    let y = make_crossing(
        v.node_id(q),
        [
            (n(a_e), lv(fa)),
            (n(b_ne), arr(fb)),
            (a, arr(fa)),
            (b.clone(), lv(fb)),
        ],
        if a_over_b { 0 } else { 1 },
    )?;
    let z = make_crossing(
        v.node_id(p),
        [
            (b, arr(fb)),
            (c, lv(fcw)),
            (n(b_sw), lv(fb)),
            (n(c_se), arr(fcw)),
        ],
        if b_over_c { 0 } else { 1 },
    )?;
    let mut ed = Edit::new(d);
    for node in [p, q, r] {
        ed.remove_crossing(v.node_id(node));
    }
    ed.add_crossing(x);
    ed.add_crossing(y);
    ed.add_crossing(z);
    ed.finish()
}

fn vertex_slot_of(vx: &Vertex, semi: &str) -> Result<usize, Error> {
    let hits: Vec<usize> = (0..3).filter(|&i| vx.slots[i].semi_arc == semi).collect();
    match hits[..] {
        [i] => Ok(i),
        _ => Err(not_applicable(format!(
            "{semi:?} must meet vertex {:?} once",
            vx.id
        ))),
    }
}

/// Moves a strand crossing the edges `g1`, `g2` next to a vertex over to the
/// other side, where it crosses the third edge instead.
pub fn r4_remove(d: &Diagram, semi: &str, side: Side) -> Result<Diagram, Error> {
    let v = View { d };
    let fc = face(&v, semi, side)?;
    if fc.len() != 3 {
        return Err(not_applicable("face is not a triangle"));
    }
    let k = (0..3)
        .find(|&k| {
            let (s, f) = fc[(k + 1) % 3];
            v.vertex(walk_end(&v, s, f).0).is_some()
        })
        .ok_or_else(|| not_applicable("triangle has no vertex"))?;
    let (s_mid, fs) = fc[k];
    let (x2, f2) = fc[(k + 1) % 3];
    let (x1, f1) = fc[(k + 2) % 3];
    let (c1, c1_s) = walk_start(&v, s_mid, fs);
    let (c2, c2_s) = walk_end(&v, s_mid, fs);
    let (vn, _) = walk_end(&v, x2, f2);
    if v.crossing(c1).is_none() || v.crossing(c2).is_none() || c1 == c2 {
        return Err(not_applicable(
            "triangle must have two crossings and a vertex",
        ));
    }
    let s_over = v.is_over(c1, c1_s);
    if s_over != v.is_over(c2, c2_s) {
        return Err(not_applicable("strand is not on one level"));
    }
    let (_, c1_x) = walk_end(&v, x1, f1);
    let (_, c2_x) = walk_start(&v, x2, f2);
    let s_e = v.partner(c1, c1_s).0;
    let s_w = v.partner(c2, c2_s).0;
    let g1_far = v.partner(c1, c1_x).0;
    let g2_far = v.partner(c2, c2_x).0;
    let vx = v.vertex(vn).unwrap();
    let (n1, n2) = (v.name(x1), v.name(x2));
    let g3_slot = (0..3)
        .find(|&i| vx.slots[i].semi_arc != n1 && vx.slots[i].semi_arc != n2)
        .ok_or_else(|| not_applicable("vertex edges overlap"))?;
    let g3 = v.idx(&vx.slots[g3_slot].semi_arc)?;
    all_distinct(&[s_mid, x1, x2, s_e, s_w, g1_far, g2_far, g3])?;

    let mut ed = Edit::new(d);
    join_pair(&mut ed, &n1, &v.name(g1_far), v.slots(c1)[c1_x].1)?;
    join_pair(&mut ed, &n2, &v.name(g2_far), v.slots(c2)[c2_x].1)?;
    let ((near, d_near), (far, d_far)) = cut_pair(&mut ed, &v.name(g3), vx.slots[g3_slot].dir)?;
    let id = v.node_id(c1).to_string();
    ed.remove_crossing(v.node_id(c1));
    ed.remove_crossing(v.node_id(c2));
    let c3 = make_crossing(
        &id,
        [
            (v.name(s_e), arr(fs)),
            (near, d_near),
            (v.name(s_w), lv(fs)),
            (far, d_far),
        ],
        if s_over { 0 } else { 1 },
    )?;
    ed.add_crossing(c3);
    ed.finish()
}

/// Inverse of [`r4_remove`]: `g3` joins the vertex to a crossing, and the
/// other strand at that crossing is pushed across the vertex.
pub fn r4_add(d: &Diagram, vertex: &str, g3: &str) -> Result<Diagram, Error> {
    let v = View { d };
    let vx = d
        .vertex(vertex)
        .ok_or_else(|| not_applicable(format!("unknown vertex {vertex:?}")))?;
    let j = vertex_slot_of(vx, g3)?;
    let g3i = v.idx(g3)?;
    let at_vertex = End::from_dir(vx.slots[j].dir);
    let far_end = if at_vertex == End::Head {
        End::Tail
    } else {
        End::Head
    };
    let c3 = v.node_at(g3i, far_end);
    if v.crossing(c3).is_none() {
        return Err(not_applicable("edge does not end at a crossing"));
    }
    let i = v.slot_at(g3i, far_end);
    let slots = v.slots(c3);
    let (s_e, s_e_end) = slots[(i + 3) % 4];
    let (s_w, s_w_end) = slots[(i + 1) % 4];
    let (g3_far, _) = slots[(i + 2) % 4];
    let fs = s_e_end == End::Head;
    let s_over = v.is_over(c3, (i + 3) % 4);
    let g1 = &vx.slots[(j + 1) % 3];
    let g2 = &vx.slots[(j + 2) % 3];
    let (g1i, g2i) = (v.idx(&g1.semi_arc)?, v.idx(&g2.semi_arc)?);
    all_distinct(&[s_e, s_w, g3i, g3_far, g1i, g2i])?;

    let mut ed = Edit::new(d);
    join_pair(&mut ed, g3, &v.name(g3_far), far_end)?;
    let ((x1, dx1), (g1_far, dg1)) = cut_pair(&mut ed, &g1.semi_arc, g1.dir)?;
    let ((x2, dx2), (g2_far, dg2)) = cut_pair(&mut ed, &g2.semi_arc, g2.dir)?;
    let s_mid = ed.fresh("s");
    let id1 = v.node_id(c3).to_string();
    ed.remove_crossing(&id1);
    let id2 = ed.fresh("c");
    let over = if s_over { 0 } else { 1 };
    let c1 = make_crossing(
        &id1,
        [
            (v.name(s_e), dir_of(s_e_end)),
            (g1_far, dg1),
            (s_mid.clone(), lv(fs)),
            (x1, dx1),
        ],
        over,
    )?;
    let c2 = make_crossing(
        &id2,
        [
            (s_mid, arr(fs)),
            (g2_far, dg2),
            (v.name(s_w), dir_of(s_w_end)),
            (x2, dx2),
        ],
        over,
    )?;
    ed.add_crossing(c1);
    ed.add_crossing(c2);
    ed.finish()
}

/// Twists the two edges after `g3` (counterclockwise) at a vertex, adding a
/// crossing between them.
pub fn r5_add(d: &Diagram, vertex: &str, g3: &str, g1_over: bool) -> Result<Diagram, Error> {
    let vx = d
        .vertex(vertex)
        .ok_or_else(|| not_applicable(format!("unknown vertex {vertex:?}")))?
        .clone();
    let j = vertex_slot_of(&vx, g3)?;
    let g1 = vx.slots[(j + 1) % 3].clone();
    let g2 = vx.slots[(j + 2) % 3].clone();
    if g1.semi_arc == g2.semi_arc || g1.semi_arc == g3 || g2.semi_arc == g3 {
        return Err(not_applicable("vertex has a loop"));
    }
    let mut ed = Edit::new(d);
    let ((g1_near, dn1), (g1_far, df1)) = cut_pair(&mut ed, &g1.semi_arc, g1.dir)?;
    let ((g2_near, dn2), (g2_far, df2)) = cut_pair(&mut ed, &g2.semi_arc, g2.dir)?;
    let c = ed.fresh("c");
    ed.add_crossing(make_crossing(
        &c,
        [
            (g1_far, df1),
            (g2_far, df2),
            (g1_near.clone(), dn1),
            (g2_near.clone(), dn2),
        ],
        if g1_over { 0 } else { 1 },
    )?);
    ed.remove_vertex(&vx.id);
    ed.add_vertex(Vertex {
        id: vx.id.clone(),
        slots: [
            vx.slots[j].clone(),
            slot(&g2_near, g2.dir),
            slot(&g1_near, g1.dir),
        ],
    });
    ed.finish()
}

/// Undoes a twist: the face must be a bigon between a vertex and a crossing.
pub fn r5_remove(d: &Diagram, semi: &str, side: Side) -> Result<Diagram, Error> {
    let v = View { d };
    let fc = face(&v, semi, side)?;
    if fc.len() != 2 {
        return Err(not_applicable("face is not a bigon"));
    }
    let k = (0..2)
        .find(|&k| {
            let (s, f) = fc[k];
            v.vertex(walk_start(&v, s, f).0).is_some()
        })
        .ok_or_else(|| not_applicable("bigon has no vertex"))?;
    let (g2n, f2) = fc[k];
    let (g1n, f1) = fc[1 - k];
    let (vn, _) = walk_start(&v, g2n, f2);
    let (c, c2) = walk_end(&v, g2n, f2);
    let (_, c1) = walk_start(&v, g1n, f1);
    if v.crossing(c).is_none() || walk_end(&v, g1n, f1).0 != vn {
        return Err(not_applicable("bigon must join a vertex and a crossing"));
    }
    let vx = v.vertex(vn).unwrap().clone();
    let (n1, n2) = (v.name(g1n), v.name(g2n));
    let j = (0..3)
        .find(|&i| vx.slots[i].semi_arc != n1 && vx.slots[i].semi_arc != n2)
        .ok_or_else(|| not_applicable("vertex edges overlap"))?;
    let g3 = v.idx(&vx.slots[j].semi_arc)?;
    let g1_far = v.partner(c, c1).0;
    let g2_far = v.partner(c, c2).0;
    all_distinct(&[g1n, g2n, g1_far, g2_far, g3])?;
    let dir_at_v = |name: &str| vx.slots.iter().find(|s| s.semi_arc == name).unwrap().dir;
    let (d1, d2) = (dir_at_v(&n1), dir_at_v(&n2));

    let mut ed = Edit::new(d);
    let m1 = join_pair(&mut ed, &n1, &v.name(g1_far), v.slots(c)[c1].1)?;
    let m2 = join_pair(&mut ed, &n2, &v.name(g2_far), v.slots(c)[c2].1)?;
    ed.remove_crossing(v.node_id(c));
    ed.remove_vertex(&vx.id);
    ed.add_vertex(Vertex {
        id: vx.id.clone(),
        slots: [vx.slots[j].clone(), slot(&m1, d1), slot(&m2, d2)],
    });
    ed.finish()
}

/// IH-move on the edge `h` joining two distinct vertices. `forward` orients
/// the new edge from the vertex that keeps the tail vertex's id.
pub fn r6(d: &Diagram, h: &str, forward: bool) -> Result<Diagram, Error> {
    let v = View { d };
    let hi = v.idx(h)?;
    let (n1, n2) = (v.node_at(hi, End::Tail), v.node_at(hi, End::Head));
    let (Some(v1), Some(v2)) = (v.vertex(n1), v.vertex(n2)) else {
        return Err(not_applicable("edge must join two vertices"));
    };
    if n1 == n2 {
        return Err(not_applicable("edge is a loop"));
    }
    let j = v.slot_at(hi, End::Tail);
    let k = v.slot_at(hi, End::Head);
    let a = v1.slots[(j + 1) % 3].clone();
    let b = v1.slots[(j + 2) % 3].clone();
    let dd = v2.slots[(k + 2) % 3].clone();
    let c = v2.slots[(k + 1) % 3].clone();
    let mut ed = Edit::new(d);
    let h_new = ed.fresh("s");
    let (w1_dir, w2_dir) = if forward {
        (Dir::Out, Dir::In)
    } else {
        (Dir::In, Dir::Out)
    };
    ed.remove_vertex(&v1.id);
    ed.remove_vertex(&v2.id);
    ed.add_vertex(Vertex {
        id: v1.id.clone(),
        slots: [dd, a, slot(&h_new, w1_dir)],
    });
    ed.add_vertex(Vertex {
        id: v2.id.clone(),
        slots: [slot(&h_new, w2_dir), b, c],
    });
    ed.finish()
}
