//! Local moves relating diagrams of the same handlebody-link, plus seeded
//! random walks built from them.
//!
//! A site is written `KIND:ARG:ARG...`:
//!
//! | kind | arguments | effect on semi-arc count |
//! |------|-----------|--------------------------|
//! | `R1+` | semi, `left`/`right`, `over`/`under` | +2 |
//! | `R1-` | loop semi | −2 |
//! | `R2+` | semi, side, semi, side, `over`/`under` | +4 |
//! | `R2-` | semi, side of a bigon | −4 |
//! | `R3`  | semi, side of a triangle | 0 |
//! | `R4+` | vertex, edge to a crossing | +2 |
//! | `R4-` | semi, side of a triangle at a vertex | −2 |
//! | `R5+` | vertex, edge, `over`/`under` | +2 |
//! | `R5-` | semi, side of a bigon at a vertex | −2 |
//! | `R6`  | edge between vertices, `fwd`/`rev` | 0 |
//!
//! Ids containing `:` cannot be addressed.

mod corpus;
mod edit;
mod rules;

use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Diagram, Side};
use crate::Error;

pub use corpus::{random_corpus, CorpusOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
    R4Add,
    R4Remove,
    R5Add,
    R5Remove,
    R6,
}

impl MoveKind {
    pub const ALL: [MoveKind; 10] = [
        MoveKind::R1Add,
        MoveKind::R1Remove,
        MoveKind::R2Add,
        MoveKind::R2Remove,
        MoveKind::R3,
        MoveKind::R4Add,
        MoveKind::R4Remove,
        MoveKind::R5Add,
        MoveKind::R5Remove,
        MoveKind::R6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::R1Add => "R1+",
            MoveKind::R1Remove => "R1-",
            MoveKind::R2Add => "R2+",
            MoveKind::R2Remove => "R2-",
            MoveKind::R3 => "R3",
            MoveKind::R4Add => "R4+",
            MoveKind::R4Remove => "R4-",
            MoveKind::R5Add => "R5+",
            MoveKind::R5Remove => "R5-",
            MoveKind::R6 => "R6",
        }
    }

    /// Change in the number of semi-arcs.
    pub fn semi_arc_delta(self) -> i64 {
        match self {
            MoveKind::R1Add | MoveKind::R4Add | MoveKind::R5Add => 2,
            MoveKind::R1Remove | MoveKind::R4Remove | MoveKind::R5Remove => -2,
            MoveKind::R2Add => 4,
            MoveKind::R2Remove => -4,
            MoveKind::R3 | MoveKind::R6 => 0,
        }
    }

    fn arity(self) -> usize {
        match self {
            MoveKind::R1Remove | MoveKind::R4Add => 1 + usize::from(self == MoveKind::R4Add),
            MoveKind::R2Remove
            | MoveKind::R3
            | MoveKind::R4Remove
            | MoveKind::R5Remove
            | MoveKind::R6 => 2,
            MoveKind::R1Add | MoveKind::R5Add => 3,
            MoveKind::R2Add => 5,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.replace('−', "-");
        MoveKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::BadMove(format!("unknown move kind {s:?}")))
    }
}

/// A move together with the ids that pin down where it applies.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub args: Vec<String>,
}

impl MoveSite {
    pub fn new(kind: MoveKind, args: &[&str]) -> MoveSite {
        MoveSite {
            kind,
            args: args.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for a in &self.args {
            write!(f, ":{a}")?;
        }
        Ok(())
    }
}

impl FromStr for MoveSite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut parts = s.split(':');
        let kind: MoveKind = parts.next().unwrap_or_default().parse()?;
        let args: Vec<String> = parts.map(str::to_string).collect();
        if args.len() != kind.arity() {
            return Err(Error::BadMove(format!(
                "{kind} takes {} argument(s), got {}",
                kind.arity(),
                args.len()
            )));
        }
        Ok(MoveSite { kind, args })
    }
}

fn side(s: &str) -> Result<Side, Error> {
    match s {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        _ => Err(Error::BadMove(format!("expected left or right, got {s:?}"))),
    }
}

fn choice(s: &str, yes: &str, no: &str) -> Result<bool, Error> {
    if s == yes {
        Ok(true)
    } else if s == no {
        Ok(false)
    } else {
        Err(Error::BadMove(format!("expected {yes} or {no}, got {s:?}")))
    }
}

/// Applies a move. The result is validated; anything that does not match the
/// local pattern is `NotApplicable`.
pub fn apply_move(d: &Diagram, site: &MoveSite) -> Result<Diagram, Error> {
    if site.args.len() != site.kind.arity() {
        return Err(Error::BadMove(site.to_string()));
    }
    let a: Vec<&str> = site.args.iter().map(String::as_str).collect();
    match site.kind {
        MoveKind::R1Add => rules::r1_add(d, a[0], side(a[1])?, choice(a[2], "over", "under")?),
        MoveKind::R1Remove => rules::r1_remove(d, a[0]),
        MoveKind::R2Add => rules::r2_add(
            d,
            a[0],
            side(a[1])?,
            a[2],
            side(a[3])?,
            choice(a[4], "over", "under")?,
        ),
        MoveKind::R2Remove => rules::r2_remove(d, a[0], side(a[1])?),
        MoveKind::R3 => rules::r3(d, a[0], side(a[1])?),
        MoveKind::R4Add => rules::r4_add(d, a[0], a[1]),
        MoveKind::R4Remove => rules::r4_remove(d, a[0], side(a[1])?),
        MoveKind::R5Add => rules::r5_add(d, a[0], a[1], choice(a[2], "over", "under")?),
        MoveKind::R5Remove => rules::r5_remove(d, a[0], side(a[1])?),
        MoveKind::R6 => rules::r6(d, a[0], choice(a[1], "fwd", "rev")?),
    }
}

/// Every syntactically possible site of one kind, in a fixed order. Most
/// will not apply.
pub fn candidate_sites(d: &Diagram, kind: MoveKind) -> Vec<MoveSite> {
    let topo = d.topology();
    let semis = d.semi_arcs();
    let side_str = |s: Side| s.to_string();
    let face_anchors = || {
        topo.faces()
            .iter()
            .map(|f| {
                let (s, sd) = f[0];
                vec![topo.semi_name(s).to_string(), side_str(sd)]
            })
            .collect::<Vec<_>>()
    };
    let mk = |args: Vec<String>| MoveSite { kind, args };
    let mut out = Vec::new();
    match kind {
        MoveKind::R1Add => {
            for s in semis {
                for sd in ["left", "right"] {
                    for ou in ["over", "under"] {
                        out.push(mk(vec![s.clone(), sd.into(), ou.into()]));
                    }
                }
            }
        }
        MoveKind::R1Remove => out.extend(semis.iter().map(|s| mk(vec![s.clone()]))),
        MoveKind::R2Add => {
            for f in topo.faces() {
                for (i, &(e, se)) in f.iter().enumerate() {
                    for (j, &(g, sg)) in f.iter().enumerate() {
                        if i == j || e == g {
                            continue;
                        }
                        for ou in ["over", "under"] {
                            out.push(mk(vec![
                                topo.semi_name(e).to_string(),
                                side_str(se),
                                topo.semi_name(g).to_string(),
                                side_str(sg),
                                ou.into(),
                            ]));
                        }
                    }
                }
            }
        }
        MoveKind::R2Remove | MoveKind::R3 | MoveKind::R4Remove | MoveKind::R5Remove => {
            out.extend(face_anchors().into_iter().map(mk))
        }
        MoveKind::R4Add => {
            for v in d.vertices() {
                for s in &v.slots {
                    out.push(mk(vec![v.id.clone(), s.semi_arc.clone()]));
                }
            }
        }
        MoveKind::R5Add => {
            for v in d.vertices() {
                for s in &v.slots {
                    for ou in ["over", "under"] {
                        out.push(mk(vec![v.id.clone(), s.semi_arc.clone(), ou.into()]));
                    }
                }
            }
        }
        MoveKind::R6 => {
            for s in semis {
                for fr in ["fwd", "rev"] {
                    out.push(mk(vec![s.clone(), fr.into()]));
                }
            }
        }
    }
    out.dedup();
    out
}

/// All sites where a move applies, ordered by kind and then by anchor.
pub fn enumerate_applicable(d: &Diagram) -> Vec<MoveSite> {
    MoveKind::ALL
        .into_iter()
        .flat_map(|k| candidate_sites(d, k))
        .filter(|s| apply_move(d, s).is_ok())
        .collect()
}

/// Limits for random walks.
#[derive(Clone, Debug)]
pub struct WalkOptions {
    /// Moves whose result has more crossings than this are skipped.
    pub max_crossings: Option<usize>,
    pub kinds: Vec<MoveKind>,
}

impl Default for WalkOptions {
    fn default() -> Self {
        WalkOptions {
            max_crossings: None,
            kinds: MoveKind::ALL.to_vec(),
        }
    }
}

/// One random applicable move: a kind is drawn uniformly among those with an
/// applicable site, then a site of that kind. `None` if nothing applies.
pub fn random_move<R: Rng>(
    d: &Diagram,
    rng: &mut R,
    opts: &WalkOptions,
) -> Option<(MoveSite, Diagram)> {
    let mut kinds = opts.kinds.clone();
    while !kinds.is_empty() {
        let ki = rng.random_range(0..kinds.len());
        let mut sites = candidate_sites(d, kinds[ki]);
        while !sites.is_empty() {
            let si = rng.random_range(0..sites.len());
            let site = sites.swap_remove(si);
            if let Ok(next) = apply_move(d, &site) {
                if opts
                    .max_crossings
                    .is_none_or(|n| next.crossing_count() <= n)
                {
                    return Some((site, next));
                }
            }
        }
        kinds.swap_remove(ki);
    }
    None
}

/// Seeded random walk of `steps` moves. Stops early only if no move applies.
pub fn random_equivalent(d: &Diagram, seed: u64, steps: usize) -> Diagram {
    random_walk(d, seed, steps, &WalkOptions::default()).0
}

/// Like [`random_equivalent`], also returning the sites used.
pub fn random_walk(
    d: &Diagram,
    seed: u64,
    steps: usize,
    opts: &WalkOptions,
) -> (Diagram, Vec<MoveSite>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut trail = Vec::new();
    for _ in 0..steps {
        match random_move(&cur, &mut rng, opts) {
            Some((site, next)) => {
                trail.push(site);
                cur = next;
            }
            None => break,
        }
    }
    (cur, trail)
}

/// Random crossing changes, each at a uniformly chosen crossing.
pub fn random_crossing_changes<R: Rng>(d: &Diagram, rng: &mut R, count: usize) -> Diagram {
    let mut cur = d.clone();
    for _ in 0..count {
        let ids: Vec<String> = cur.crossings().iter().map(|c| c.id.clone()).collect();
        let Some(id) = ids.choose(rng) else { break };
        cur = cur.crossing_change(id).expect("crossing exists");
    }
    cur
}
