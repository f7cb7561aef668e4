//! Small built-in diagrams.

use super::{Crossing, Diagram, Dir, Sign, Slot, Vertex};

fn crossing(id: &str, sign: Sign, under: (&str, &str), over: (&str, &str)) -> Crossing {
    Crossing {
        id: id.into(),
        sign,
        under_in: under.0.into(),
        under_out: under.1.into(),
        over_in: over.0.into(),
        over_out: over.1.into(),
    }
}

fn vertex(id: &str, slots: [(&str, Dir); 3]) -> Vertex {
    Vertex {
        id: id.into(),
        slots: slots.map(|(s, d)| Slot::new(s, d)),
    }
}

/// A circle with one positive kink: semi-arc `a` is the loop, `b` the rest.
pub fn one_kink_unknot() -> Diagram {
    let c = crossing("c", Sign::Positive, ("b", "a"), ("a", "b"));
    Diagram::new("one-kink unknot", vec![c], vec![], None).expect("valid")
}

/// The trivial handlebody-knot of genus `g >= 1`: a kinked circle carrying
/// `g - 1` bubbles, each a split vertex followed by a merge vertex joined by
/// an inner chord.
pub fn trivial_diagram(genus: usize) -> Diagram {
    assert!(genus >= 1, "genus must be positive");
    if genus == 1 {
        return one_kink_unknot().with_name("trivial genus 1");
    }
    let bubbles = genus - 1;
    // Circle segments e0..e{2b}; e0 leaves the kink, e{2b} returns to it.
    let seg = |i: usize| format!("e{i}");
    let last = seg(2 * bubbles);
    let kink = crossing("c", Sign::Positive, (&last, "loop"), ("loop", &seg(0)));
    let mut vertices = Vec::new();
    for b in 0..bubbles {
        let chord = format!("h{b}");
        let (before, middle, after) = (seg(2 * b), seg(2 * b + 1), seg(2 * b + 2));
        vertices.push(vertex(
            &format!("s{b}"),
            [(&before, Dir::In), (&middle, Dir::Out), (&chord, Dir::Out)],
        ));
        vertices.push(vertex(
            &format!("t{b}"),
            [(&middle, Dir::In), (&after, Dir::Out), (&chord, Dir::In)],
        ));
    }
    Diagram::new(format!("trivial genus {genus}"), vec![kink], vertices, None).expect("valid")
}

/// A split union of `count` one-kink unknots.
pub fn trivial_link(count: usize) -> Diagram {
    assert!(count >= 1);
    let base = one_kink_unknot();
    let mut d = base.clone();
    for i in 1..count {
        d = d.disjoint_union(&base, &format!("u{i}.")).expect("valid");
    }
    d.with_name(format!("trivial {count}-component link"))
}

/// A genus-2 diagram with two positive crossings and two vertices whose
/// coloring matrix, with flows `a` and `b` on its two cycles, is the
/// standard 8x7 worked example.
pub fn e_diagram() -> Diagram {
    let crossings = vec![
        crossing("c1", Sign::Positive, ("x4", "x1"), ("x2", "x3")),
        crossing("c2", Sign::Positive, ("x6", "x2"), ("x7", "x4")),
    ];
    let vertices = vec![
        vertex("v1", [("x5", Dir::Out), ("x1", Dir::In), ("x3", Dir::In)]),
        vertex("v2", [("x5", Dir::In), ("x6", Dir::Out), ("x7", Dir::Out)]),
    ];
    Diagram::new("E", crossings, vertices, None).expect("valid")
}

/// The standard three-crossing trefoil; all crossings carry `sign`.
pub fn trefoil(sign: Sign) -> Diagram {
    let crossings = vec![
        crossing("c1", sign, ("s2", "s3"), ("s5", "s0")),
        crossing("c2", sign, ("s0", "s1"), ("s3", "s4")),
        crossing("c3", sign, ("s4", "s5"), ("s1", "s2")),
    ];
    Diagram::new("trefoil", crossings, vec![], None).expect("valid")
}
