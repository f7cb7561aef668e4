//! The coloring matrix `A(D, φ; X)`, its rank, a brute-force coloring
//! counter and the linear relation satisfied by the rows of `A`.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::algebra::{AlexanderBiquandle, FieldElement};
use crate::diagram::{Diagram, Sign, VertexKind};
use crate::flow::{alexander_numbering, check_flow, Flow};
use crate::Error;

/// Default node budget for [`count_colorings_bruteforce`].
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 50_000_000;

/// The semi-arcs around a crossing as used by its two relations:
///
/// ```text
/// x(w)  = t^ψ x(u) + (s^ψ - t^ψ) x(v)
/// x(v') = s^φ x(v)
/// ```
///
/// `ψ` is the flow of the over-strand and `φ` that of the under-strand. For a
/// positive crossing `u, w` are the incoming and outgoing under-strand and
/// `v, v'` the outgoing and incoming over-strand; a negative crossing swaps
/// both pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingFrame {
    pub u: usize,
    pub v: usize,
    pub v_prime: usize,
    pub w: usize,
    pub psi: u64,
    pub phi: u64,
    pub sign: Sign,
}

/// The semi-arcs around a vertex: `γ` is the lone edge, and with the flow
/// running from the paired edges towards `γ` (merge) or away from it (split),
/// `α` is the paired edge on the right. Relations: `x(α) = x(γ)` and
/// `x(β) = s^η x(γ)` with `η = φ(α)`, `θ = φ(β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexFrame {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub eta: u64,
    pub theta: u64,
    pub sign: Sign,
}

pub fn crossing_frames(d: &Diagram, flow: &Flow) -> Vec<CrossingFrame> {
    let topo = d.topology();
    let idx = |id: &str| topo.semi_index(id).unwrap();
    d.crossings()
        .iter()
        .map(|c| {
            let (u, w, v, v_prime) = match c.sign {
                Sign::Positive => (&c.under_in, &c.under_out, &c.over_out, &c.over_in),
                Sign::Negative => (&c.under_out, &c.under_in, &c.over_in, &c.over_out),
            };
            CrossingFrame {
                u: idx(u),
                v: idx(v),
                v_prime: idx(v_prime),
                w: idx(w),
                psi: flow.semi_value(d, idx(&c.over_in)),
                phi: flow.semi_value(d, idx(&c.under_in)),
                sign: c.sign,
            }
        })
        .collect()
}

/// Vertex frames, merge vertices first, each group in id order.
pub fn vertex_frames(d: &Diagram, flow: &Flow) -> Vec<(String, VertexFrame)> {
    let topo = d.topology();
    let mut frames: Vec<(String, VertexFrame)> = d
        .vertices()
        .iter()
        .map(|vx| {
            let kind = vx.kind().expect("validated vertex");
            let g = vx.lone_slot().unwrap();
            let (a, b) = match kind {
                VertexKind::Merge => ((g + 2) % 3, (g + 1) % 3),
                VertexKind::Split => ((g + 1) % 3, (g + 2) % 3),
            };
            let idx = |i: usize| topo.semi_index(&vx.slots[i].semi_arc).unwrap();
            let (alpha, beta, gamma) = (idx(a), idx(b), idx(g));
            let frame = VertexFrame {
                alpha,
                beta,
                gamma,
                eta: flow.semi_value(d, alpha),
                theta: flow.semi_value(d, beta),
                sign: kind.sign(),
            };
            (vx.id.clone(), frame)
        })
        .collect();
    frames.sort_by_key(|(_, f)| f.sign == Sign::Negative);
    frames
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", content = "id", rename_all = "snake_case")]
pub enum RowProvenance {
    Under(String),
    Over(String),
    VertexAlpha(String),
    VertexBeta(String),
}

impl fmt::Display for RowProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowProvenance::Under(id) => write!(f, "under({id})"),
            RowProvenance::Over(id) => write!(f, "over({id})"),
            RowProvenance::VertexAlpha(id) => write!(f, "alpha({id})"),
            RowProvenance::VertexBeta(id) => write!(f, "beta({id})"),
        }
    }
}

/// `(2n + 4k) x (2n + 3k)` matrix whose kernel is the space of colorings.
/// Columns follow the sorted semi-arc ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringMatrix {
    pub entries: Vec<Vec<FieldElement>>,
    pub rows: Vec<RowProvenance>,
    pub columns: Vec<String>,
}

impl ColoringMatrix {
    pub fn row_count(&self) -> usize {
        self.entries.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }
}

fn require_family(ab: &AlexanderBiquandle, flow: &Flow) -> Result<(), Error> {
    ab.require_zm_family(flow.m())?;
    Ok(())
}

pub fn coloring_matrix(
    d: &Diagram,
    flow: &Flow,
    ab: &AlexanderBiquandle,
) -> Result<ColoringMatrix, Error> {
    require_family(ab, flow)?;
    check_flow(d, flow)?;
    let f = ab.field();
    let cols = d.topology().semi_arc_count();
    let exp = |x: u64| x as i64;
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let cframes = crossing_frames(d, flow);
    let vframes = vertex_frames(d, flow);

    for (c, fr) in d.crossings().iter().zip(&cframes) {
        let mut row = vec![FieldElement::ZERO; cols];
        row[fr.u] = f.add(row[fr.u], ab.t_pow(exp(fr.psi)));
        row[fr.v] = f.add(row[fr.v], ab.s_minus_t(exp(fr.psi)));
        row[fr.w] = f.sub(row[fr.w], f.one());
        entries.push(row);
        rows.push(RowProvenance::Under(c.id.clone()));
    }
    for (c, fr) in d.crossings().iter().zip(&cframes) {
        let mut row = vec![FieldElement::ZERO; cols];
        row[fr.v] = f.sub(row[fr.v], ab.s_pow(exp(fr.phi)));
        row[fr.v_prime] = f.add(row[fr.v_prime], f.one());
        entries.push(row);
        rows.push(RowProvenance::Over(c.id.clone()));
    }
    for (id, fr) in &vframes {
        let mut row = vec![FieldElement::ZERO; cols];
        row[fr.alpha] = f.add(row[fr.alpha], f.one());
        row[fr.gamma] = f.sub(row[fr.gamma], f.one());
        entries.push(row);
        rows.push(RowProvenance::VertexAlpha(id.clone()));
    }
    for (id, fr) in &vframes {
        let mut row = vec![FieldElement::ZERO; cols];
        row[fr.beta] = f.add(row[fr.beta], f.one());
        row[fr.gamma] = f.sub(row[fr.gamma], ab.s_pow(exp(fr.eta)));
        entries.push(row);
        rows.push(RowProvenance::VertexBeta(id.clone()));
    }
    Ok(ColoringMatrix {
        entries,
        rows,
        columns: d.semi_arcs().to_vec(),
    })
}

/// Rank by Gaussian elimination; pivots are taken column by column from the
/// first row with a nonzero entry, so the echelon form is reproducible.
pub fn rank(ab: &AlexanderBiquandle, mx: &ColoringMatrix) -> usize {
    let f = ab.field();
    let mut rows = mx.entries.clone();
    let cols = mx.column_count();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]).expect("nonzero pivot");
        let pivot: Vec<FieldElement> = rows[r].iter().map(|&x| f.mul(x, inv)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let factor = row[c];
            if factor.is_zero() {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot).skip(c) {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
        rows[r] = pivot;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// `dim Col_X(D, φ) = #SA(D) - rank A(D, φ; X)`.
pub fn coloring_dimension(
    d: &Diagram,
    flow: &Flow,
    ab: &AlexanderBiquandle,
) -> Result<usize, Error> {
    let mx = coloring_matrix(d, flow, ab)?;
    Ok(mx.column_count() - rank(ab, &mx))
}

/// `#X^dim` as an exact integer.
pub fn coloring_count(ab: &AlexanderBiquandle, dim: usize) -> BigUint {
    BigUint::from(ab.field().order()).pow(dim as u32)
}

/// One coloring condition: `target = op(source, other)`.
#[derive(Clone, Copy)]
enum Rule {
    /// `x(w) = x(u) ⊻^ψ x(v)`
    Under {
        w: usize,
        u: usize,
        v: usize,
        n: i64,
    },
    /// `x(v') = x(v) ⊼^φ x(u)`
    Over {
        vp: usize,
        v: usize,
        u: usize,
        n: i64,
    },
    /// `x(β) = s^η x(γ)`, with `η = 0` for the `α` condition.
    Vertex { target: usize, gamma: usize, n: i64 },
}

impl Rule {
    fn target(self) -> usize {
        match self {
            Rule::Under { w, .. } => w,
            Rule::Over { vp, .. } => vp,
            Rule::Vertex { target, .. } => target,
        }
    }

    fn eval(self, ab: &AlexanderBiquandle, x: &[Option<FieldElement>]) -> Option<FieldElement> {
        match self {
            Rule::Under { u, v, n, .. } => Some(ab.under_n(x[u]?, x[v]?, n)),
            Rule::Over { v, u, n, .. } => Some(ab.over_n(x[v]?, x[u]?, n)),
            Rule::Vertex { gamma, n, .. } => Some(ab.over_n(x[gamma]?, x[gamma]?, n)),
        }
    }
}

/// Counts colorings by backtracking over semi-arc values, propagating every
/// condition whose inputs are known. Works directly with the biquandle
/// operations, independently of the matrix. Gives up after visiting `cap`
/// search nodes.
pub fn count_colorings_bruteforce(
    d: &Diagram,
    flow: &Flow,
    ab: &AlexanderBiquandle,
    cap: u64,
) -> Result<BigUint, Error> {
    require_family(ab, flow)?;
    check_flow(d, flow)?;
    let mut rules = Vec::new();
    for fr in crossing_frames(d, flow) {
        rules.push(Rule::Under {
            w: fr.w,
            u: fr.u,
            v: fr.v,
            n: fr.psi as i64,
        });
        rules.push(Rule::Over {
            vp: fr.v_prime,
            v: fr.v,
            u: fr.u,
            n: fr.phi as i64,
        });
    }
    for (_, fr) in vertex_frames(d, flow) {
        rules.push(Rule::Vertex {
            target: fr.alpha,
            gamma: fr.gamma,
            n: 0,
        });
        rules.push(Rule::Vertex {
            target: fr.beta,
            gamma: fr.gamma,
            n: fr.eta as i64,
        });
    }
    let mut search = Search {
        ab,
        rules,
        values: vec![None; d.topology().semi_arc_count()],
        visited: 0,
        cap,
    };
    search.run()
}

struct Search<'a> {
    ab: &'a AlexanderBiquandle,
    rules: Vec<Rule>,
    values: Vec<Option<FieldElement>>,
    visited: u64,
    cap: u64,
}

impl Search<'_> {
    fn run(&mut self) -> Result<BigUint, Error> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(Error::TooLarge(self.cap));
        }
        let Some(free) = self.values.iter().position(Option::is_none) else {
            return Ok(BigUint::from(1u32));
        };
        let mut total = BigUint::from(0u32);
        let elements: Vec<FieldElement> = self.ab.field().elements().collect();
        for x in elements {
            let mut trail = vec![free];
            self.values[free] = Some(x);
            if self.propagate(&mut trail) {
                total += self.run()?;
            }
            for s in trail {
                self.values[s] = None;
            }
        }
        Ok(total)
    }

    /// Applies rules until nothing changes; false on a contradiction.
    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            for &rule in &self.rules {
                let Some(value) = rule.eval(self.ab, &self.values) else {
                    continue;
                };
                let t = rule.target();
                match self.values[t] {
                    Some(existing) if existing != value => return false,
                    Some(_) => {}
                    None => {
                        self.values[t] = Some(value);
                        trail.push(t);
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

/// The row combination with coefficients
/// `ε t^{-ρ(w)}(s^φ - t^φ)`, `ε t^{-ρ(v')}(s^ψ - t^ψ)` for the crossing rows
/// and `ε t^{-ρ(α)}(s^η - t^η)`, `ε t^{-ρ(β)}(s^θ - t^θ)` for the vertex
/// rows. It vanishes for every flowed diagram.
pub fn relation_residual(
    d: &Diagram,
    flow: &Flow,
    ab: &AlexanderBiquandle,
) -> Result<Vec<FieldElement>, Error> {
    let mx = coloring_matrix(d, flow, ab)?;
    let coeffs = relation_coefficients(d, flow, ab)?;
    let f = ab.field();
    let mut out = vec![FieldElement::ZERO; mx.column_count()];
    for (row, &c) in mx.entries.iter().zip(&coeffs) {
        if c.is_zero() {
            continue;
        }
        for (acc, &x) in out.iter_mut().zip(row) {
            *acc = f.add(*acc, f.mul(c, x));
        }
    }
    Ok(out)
}

/// Row coefficients of the linear relation, in matrix row order.
pub fn relation_coefficients(
    d: &Diagram,
    flow: &Flow,
    ab: &AlexanderBiquandle,
) -> Result<Vec<FieldElement>, Error> {
    let numbering = alexander_numbering(d, flow)?;
    let f = ab.field();
    let rho = |s: usize| numbering.rho[s] as i64;
    let coeff = |sign: Sign, at: usize, n: u64| {
        let c = f.mul(ab.t_pow(-rho(at)), ab.s_minus_t(n as i64));
        match sign {
            Sign::Positive => c,
            Sign::Negative => f.neg(c),
        }
    };
    let cframes = crossing_frames(d, flow);
    let vframes = vertex_frames(d, flow);
    let mut out = Vec::new();
    out.extend(cframes.iter().map(|fr| coeff(fr.sign, fr.w, fr.phi)));
    out.extend(cframes.iter().map(|fr| coeff(fr.sign, fr.v_prime, fr.psi)));
    out.extend(
        vframes
            .iter()
            .map(|(_, fr)| coeff(fr.sign, fr.alpha, fr.eta)),
    );
    out.extend(
        vframes
            .iter()
            .map(|(_, fr)| coeff(fr.sign, fr.beta, fr.theta)),
    );
    Ok(out)
}
