//! `Z_m`-flows on diagrams: the solution space, its enumeration, the gcd
//! invariant and the Alexander numbering of regions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::gcd;
use crate::diagram::{Diagram, Dir, Side};
use crate::snf::smith_normal_form;

/// Enumeration refuses flow spaces larger than this unless told otherwise.
pub const DEFAULT_FLOW_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FlowError {
    #[error("modulus must be at least 1, got {0}")]
    BadModulus(u64),
    #[error("flow space has more than {0} elements")]
    TooManyFlows(u128),
    #[error("Alexander numbering is inconsistent at semi-arc {0:?}")]
    Inconsistent(String),
    #[error("not a flow: {0}")]
    Invalid(String),
    #[error("flow has {got} values but the diagram has {expected} arcs")]
    WrongLength { got: usize, expected: usize },
}

/// Values in `Z_m` on the arcs of one diagram, indexed as in its
/// [`crate::diagram::Topology`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flow {
    m: u64,
    values: Vec<u64>,
}

impl Flow {
    /// Reduces `values` mod `m` and checks both flow conditions.
    pub fn new(d: &Diagram, m: u64, values: Vec<i64>) -> Result<Flow, FlowError> {
        if m == 0 {
            return Err(FlowError::BadModulus(m));
        }
        let arcs = d.topology().arcs().len();
        if values.len() != arcs {
            return Err(FlowError::WrongLength {
                got: values.len(),
                expected: arcs,
            });
        }
        let flow = Flow {
            m,
            values: values
                .iter()
                .map(|&v| v.rem_euclid(m as i64) as u64)
                .collect(),
        };
        check_flow(d, &flow)?;
        Ok(flow)
    }

    pub fn zero(d: &Diagram, m: u64) -> Flow {
        Flow {
            m,
            values: vec![0; d.topology().arcs().len()],
        }
    }

    /// Builds a flow from values on semi-arcs given by id; every arc needs at
    /// least one named member and members of one arc must agree.
    pub fn from_semi_values(
        d: &Diagram,
        m: u64,
        values: &BTreeMap<String, i64>,
    ) -> Result<Flow, FlowError> {
        if m == 0 {
            return Err(FlowError::BadModulus(m));
        }
        let topo = d.topology();
        let mut arc_values: Vec<Option<u64>> = vec![None; topo.arcs().len()];
        for (id, &v) in values {
            let s = topo
                .semi_index(id)
                .ok_or_else(|| FlowError::Invalid(format!("unknown semi-arc {id:?}")))?;
            let v = v.rem_euclid(m as i64) as u64;
            let slot = &mut arc_values[topo.arc_of(s)];
            match *slot {
                Some(old) if old != v => {
                    return Err(FlowError::Invalid(format!(
                        "conflicting values on the arc of {id:?}"
                    )))
                }
                _ => *slot = Some(v),
            }
        }
        let values = arc_values
            .iter()
            .enumerate()
            .map(|(a, v)| {
                v.ok_or_else(|| {
                    let s = topo.arcs()[a][0];
                    FlowError::Invalid(format!("no value for the arc of {:?}", topo.semi_name(s)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let flow = Flow { m, values };
        check_flow(d, &flow)?;
        Ok(flow)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn arc_value(&self, arc: usize) -> u64 {
        self.values[arc]
    }

    pub fn semi_value(&self, d: &Diagram, semi: usize) -> u64 {
        self.values[d.topology().arc_of(semi)]
    }

    /// Values keyed by semi-arc id.
    pub fn semi_values(&self, d: &Diagram) -> BTreeMap<String, i64> {
        let topo = d.topology();
        (0..topo.semi_arc_count())
            .map(|s| (topo.semi_name(s).to_string(), self.semi_value(d, s) as i64))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// `gcd(m, φ(a) for every arc a)`; the zero flow gives `m`.
    pub fn gcd(&self) -> u64 {
        gcd_of_values(&self.values, self.m)
    }
}

pub fn gcd_of_values(values: &[u64], m: u64) -> u64 {
    values.iter().fold(m, |g, &v| gcd(g, v))
}

/// The integer constraint matrix: one row per crossing (under-in arc minus
/// under-out arc) and per vertex (incoming minus outgoing), one column per arc.
pub fn constraint_matrix(d: &Diagram) -> Vec<Vec<i64>> {
    let topo = d.topology();
    let arcs = topo.arcs().len();
    let arc = |id: &str| topo.arc_of(topo.semi_index(id).unwrap());
    let mut rows = Vec::new();
    for c in d.crossings() {
        let mut row = vec![0i64; arcs];
        row[arc(&c.under_in)] += 1;
        row[arc(&c.under_out)] -= 1;
        rows.push(row);
    }
    for v in d.vertices() {
        let mut row = vec![0i64; arcs];
        for s in &v.slots {
            row[arc(&s.semi_arc)] += match s.dir {
                Dir::In => 1,
                Dir::Out => -1,
            };
        }
        rows.push(row);
    }
    rows
}

/// Checks both flow conditions directly from the diagram data.
pub fn check_flow(d: &Diagram, flow: &Flow) -> Result<(), FlowError> {
    let topo = d.topology();
    let m = flow.m as i64;
    let value = |id: &str| flow.values[topo.arc_of(topo.semi_index(id).unwrap())] as i64;
    for c in d.crossings() {
        if value(&c.under_in) != value(&c.under_out) {
            return Err(FlowError::Invalid(format!("crossing {:?}", c.id)));
        }
    }
    for v in d.vertices() {
        let net: i64 = v
            .slots
            .iter()
            .map(|s| match s.dir {
                Dir::In => value(&s.semi_arc),
                Dir::Out => -value(&s.semi_arc),
            })
            .sum();
        if net.rem_euclid(m) != 0 {
            return Err(FlowError::Invalid(format!("vertex {:?}", v.id)));
        }
    }
    Ok(())
}

/// All `Z_m`-flows of a diagram as a direct sum of cyclic groups: every flow
/// is `Σ c_i g_i` with `0 <= c_i < order_i`, each exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowSpace {
    m: u64,
    arcs: usize,
    rank: usize,
    elementary_divisors: Vec<u64>,
    generators: Vec<Vec<u64>>,
    orders: Vec<u64>,
}

impl FlowSpace {
    pub fn new(d: &Diagram, m: u64) -> Result<FlowSpace, FlowError> {
        if m == 0 {
            return Err(FlowError::BadModulus(m));
        }
        let arcs = d.topology().arcs().len();
        let snf = smith_normal_form(&constraint_matrix(d), arcs);
        let r = snf.rank();
        let mm = m as i128;
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for i in 0..arcs {
            let (scale, order) = if i < r {
                let g = gcd(snf.divisors[i].unsigned_abs() as u64 % m, m);
                (mm / g as i128, g)
            } else {
                (1, m)
            };
            if order == 1 {
                continue;
            }
            generators.push(
                (0..arcs)
                    .map(|row| (snf.v[row][i] * scale).rem_euclid(mm) as u64)
                    .collect(),
            );
            orders.push(order);
        }
        Ok(FlowSpace {
            m,
            arcs,
            rank: r,
            elementary_divisors: snf.divisors.iter().map(|&x| x as u64).collect(),
            generators,
            orders,
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of free `Z` summands: `#arcs - rank`.
    pub fn genus(&self) -> usize {
        self.arcs - self.rank
    }

    pub fn elementary_divisors(&self) -> &[u64] {
        &self.elementary_divisors
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// `m^(a-r) · Π gcd(d_i, m)`, or `None` on overflow.
    pub fn count(&self) -> Option<u128> {
        self.orders
            .iter()
            .try_fold(1u128, |acc, &o| acc.checked_mul(o as u128))
    }

    /// The flow with mixed-radix index `index`; the first generator is the
    /// most significant digit, so index 0 is the zero flow.
    pub fn flow_at(&self, mut index: u128) -> Flow {
        let mut values = vec![0u64; self.arcs];
        for (g, &o) in self.generators.iter().zip(&self.orders).rev() {
            let c = (index % o as u128) as u64;
            index /= o as u128;
            if c != 0 {
                for (v, &x) in values.iter_mut().zip(g) {
                    *v = ((*v as u128 + c as u128 * x as u128) % self.m as u128) as u64;
                }
            }
        }
        Flow { m: self.m, values }
    }

    /// Iterates all flows, zero first; fails if there are more than `cap`.
    pub fn enumerate(&self, cap: u128) -> Result<impl Iterator<Item = Flow> + '_, FlowError> {
        let count = self.checked_count(cap)?;
        Ok((0..count).map(move |i| self.flow_at(i)))
    }

    /// The flow count, or `TooManyFlows` when it exceeds `cap`.
    pub fn checked_count(&self, cap: u128) -> Result<u128, FlowError> {
        match self.count() {
            Some(c) if c <= cap => Ok(c),
            _ => Err(FlowError::TooManyFlows(cap)),
        }
    }
}

/// Region labels of `(D, φ)` in `Z_m`: every component's outer face is 0, and
/// crossing a semi-arc from its right to its left adds its flow value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderNumbering {
    pub face_labels: Vec<u64>,
    /// Label of the face on the left of each semi-arc.
    pub rho: Vec<u64>,
}

pub fn alexander_numbering(d: &Diagram, flow: &Flow) -> Result<AlexanderNumbering, FlowError> {
    let topo = d.topology();
    let m = flow.m;
    let faces = topo.faces();
    let mut labels: Vec<Option<u64>> = vec![None; faces.len()];
    let mut stack = Vec::new();
    for c in 0..topo.component_count() {
        let f = topo.outer_face(c);
        labels[f] = Some(0);
        stack.push(f);
    }
    while let Some(f) = stack.pop() {
        let here = labels[f].unwrap();
        for &(s, side) in &faces[f] {
            let v = flow.semi_value(d, s);
            let other = topo.face_of(s, side.opposite());
            let label = match side {
                Side::Right => (here + v) % m,
                Side::Left => (here + m - v) % m,
            };
            if labels[other].is_none() {
                labels[other] = Some(label);
                stack.push(other);
            }
        }
    }
    let face_labels: Vec<u64> = labels
        .into_iter()
        .map(|l| l.expect("faces are connected"))
        .collect();
    for s in 0..topo.semi_arc_count() {
        let left = face_labels[topo.face_of(s, Side::Left)];
        let right = face_labels[topo.face_of(s, Side::Right)];
        if left != (right + flow.semi_value(d, s)) % m {
            return Err(FlowError::Inconsistent(topo.semi_name(s).to_string()));
        }
    }
    let rho = (0..topo.semi_arc_count())
        .map(|s| face_labels[topo.face_of(s, Side::Left)])
        .collect();
    Ok(AlexanderNumbering { face_labels, rho })
}

/// Carries a flow across a local change of diagram: values on semi-arc ids
/// present in both diagrams are kept and the rest are forced by the flow
/// conditions. Fails if the result is not a flow.
pub fn transport_flow(from: &Diagram, flow: &Flow, to: &Diagram) -> Result<Flow, FlowError> {
    let m = flow.m;
    let topo = to.topology();
    let n = topo.semi_arc_count();
    let mut value: Vec<Option<u64>> = (0..n)
        .map(|s| {
            from.topology()
                .semi_index(topo.semi_name(s))
                .map(|old| flow.semi_value(from, old))
        })
        .collect();

    // Each constraint is a signed sum of semi-arc values that must vanish.
    let mut constraints: Vec<Vec<(usize, i64)>> = Vec::new();
    for c in to.crossings() {
        let idx = |id: &str| topo.semi_index(id).unwrap();
        constraints.push(vec![(idx(&c.under_in), 1), (idx(&c.under_out), -1)]);
        constraints.push(vec![(idx(&c.over_in), 1), (idx(&c.over_out), -1)]);
    }
    for v in to.vertices() {
        constraints.push(
            v.slots
                .iter()
                .map(|s| {
                    let sign = if s.dir == Dir::In { 1 } else { -1 };
                    (topo.semi_index(&s.semi_arc).unwrap(), sign)
                })
                .collect(),
        );
    }
    let mut progress = true;
    while progress {
        progress = false;
        for con in &constraints {
            let unknown: Vec<_> = con.iter().filter(|(s, _)| value[*s].is_none()).collect();
            if unknown.len() != 1 {
                continue;
            }
            let &&(target, coeff) = unknown.first().unwrap();
            let rest: i64 = con
                .iter()
                .filter(|(s, _)| *s != target)
                .map(|&(s, c)| c * value[s].unwrap() as i64)
                .sum();
            // coeff * x + rest = 0 with coeff = ±1
            let x = (-rest * coeff).rem_euclid(m as i64) as u64;
            value[target] = Some(x);
            progress = true;
        }
    }
    let mut arc_values = vec![None; topo.arcs().len()];
    for s in 0..n {
        let v = value[s].ok_or_else(|| {
            FlowError::Invalid(format!("value of {:?} is undetermined", topo.semi_name(s)))
        })?;
        let slot = &mut arc_values[topo.arc_of(s)];
        if slot.is_some_and(|old| old != v) {
            return Err(FlowError::Invalid(format!(
                "arc of {:?} is not constant",
                topo.semi_name(s)
            )));
        }
        *slot = Some(v);
    }
    let flow = Flow {
        m,
        values: arc_values.into_iter().map(Option::unwrap).collect(),
    };
    check_flow(to, &flow)?;
    Ok(flow)
}
