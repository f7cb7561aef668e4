//! Exhaustive and sampled axiom checks for finite biquandles and for the
//! `Z_m`-family of Alexander biquandles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{AlexanderBiquandle, FieldError};

/// Default number of random trials for sampled checks.
pub const DEFAULT_SAMPLES: usize = 10_000;

/// Sampled checks are used once exhaustive enumeration exceeds this many
/// instances.
pub const EXHAUSTIVE_LIMIT: u64 = 2_000_000;

/// A biquandle on `{0, .., size-1}` given by its two operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBiquandleTable {
    size: usize,
    // under[x * size + y] = x ⊻ y
    under: Vec<u32>,
    over: Vec<u32>,
}

impl FiniteBiquandleTable {
    /// Panics unless both tables have `size * size` entries below `size`.
    pub fn new(size: usize, under: Vec<u32>, over: Vec<u32>) -> Self {
        assert_eq!(under.len(), size * size);
        assert_eq!(over.len(), size * size);
        assert!(under.iter().chain(&over).all(|&v| (v as usize) < size));
        FiniteBiquandleTable { size, under, over }
    }

    pub fn from_alexander(ab: &AlexanderBiquandle) -> Self {
        let f = ab.field();
        let size = f.order() as usize;
        let mut under = Vec::with_capacity(size * size);
        let mut over = Vec::with_capacity(size * size);
        for x in f.elements() {
            for y in f.elements() {
                under.push(ab.under(x, y).index());
                over.push(ab.over(x, y).index());
            }
        }
        FiniteBiquandleTable { size, under, over }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn under(&self, x: u32, y: u32) -> u32 {
        self.under[x as usize * self.size + y as usize]
    }

    pub fn over(&self, x: u32, y: u32) -> u32 {
        self.over[x as usize * self.size + y as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub trials: u64,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub exhaustive: bool,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Tally {
    name: &'static str,
    trials: u64,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            trials: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn finish(self) -> AxiomCheck {
        AxiomCheck {
            name: self.name,
            passed: self.witness.is_none(),
            trials: self.trials,
            witness: self.witness,
        }
    }
}

fn is_bijection(values: impl Iterator<Item = u32>, size: usize) -> bool {
    let mut seen = vec![false; size];
    for v in values {
        if std::mem::replace(&mut seen[v as usize], true) {
            return false;
        }
    }
    seen.iter().all(|&b| b)
}

/// Checks every biquandle axiom by enumeration over the table.
pub fn check_biquandle_axioms(table: &FiniteBiquandleTable) -> AxiomReport {
    let n = table.size() as u32;
    let mut idem = Tally::new("x⊻x = x⊼x");
    let mut under_bij = Tally::new("y ↦ y⊻x bijective");
    let mut over_bij = Tally::new("y ↦ y⊼x bijective");
    let mut pair_bij = Tally::new("S(x,y) = (y⊼x, x⊻y) bijective");
    let mut ex1 = Tally::new("(x⊻y)⊻(z⊻y) = (x⊻z)⊻(y⊼z)");
    let mut ex2 = Tally::new("(x⊻y)⊼(z⊻y) = (x⊼z)⊻(y⊼z)");
    let mut ex3 = Tally::new("(x⊼y)⊼(z⊼y) = (x⊼z)⊼(y⊻z)");
    let u = |a, b| table.under(a, b);
    let o = |a, b| table.over(a, b);

    for x in 0..n {
        idem.record(u(x, x) == o(x, x), || format!("x={x}"));
        under_bij.record(is_bijection((0..n).map(|y| u(y, x)), n as usize), || {
            format!("x={x}")
        });
        over_bij.record(is_bijection((0..n).map(|y| o(y, x)), n as usize), || {
            format!("x={x}")
        });
    }
    let pairs = (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    pair_bij.record(
        is_bijection(pairs.map(|(x, y)| o(y, x) * n + u(x, y)), (n * n) as usize),
        || "S is not injective".to_string(),
    );
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let w = || format!("x={x} y={y} z={z}");
                ex1.record(u(u(x, y), u(z, y)) == u(u(x, z), o(y, z)), w);
                ex2.record(o(u(x, y), u(z, y)) == u(o(x, z), o(y, z)), w);
                ex3.record(o(o(x, y), o(z, y)) == o(o(x, z), u(y, z)), w);
            }
        }
    }
    AxiomReport {
        exhaustive: true,
        checks: [idem, under_bij, over_bij, pair_bij, ex1, ex2, ex3]
            .into_iter()
            .map(Tally::finish)
            .collect(),
    }
}

/// Options for [`check_gfamily_axioms`].
#[derive(Clone, Copy, Debug)]
pub struct FamilyCheckOptions {
    pub samples: usize,
    pub seed: u64,
    pub exhaustive_limit: u64,
}

impl Default for FamilyCheckOptions {
    fn default() -> Self {
        FamilyCheckOptions {
            samples: DEFAULT_SAMPLES,
            seed: 0,
            exhaustive_limit: EXHAUSTIVE_LIMIT,
        }
    }
}

/// Verifies the `Z_m`-family axioms for `{⊻^[g]}, {⊼^[g]}`, `g ∈ Z_m`.
///
/// `Z_m` is abelian, so the conjugate `h⁻¹gh` is just `g`. Small instances
/// are enumerated; larger ones are sampled with a seeded generator.
pub fn check_gfamily_axioms(
    ab: &AlexanderBiquandle,
    m: u64,
    opts: FamilyCheckOptions,
) -> Result<AxiomReport, FieldError> {
    ab.require_zm_family(m)?;
    let f = ab.field();
    let q = f.order() as u64;
    let total = q.saturating_pow(3).saturating_mul(m.saturating_mul(m));
    let exhaustive = total <= opts.exhaustive_limit;

    let mut idem = Tally::new("x⊻^g x = x⊼^g x");
    let mut under_comp = Tally::new("x⊻^(g+h) y = (x⊻^g y)⊻^h(y⊻^g y)");
    let mut over_comp = Tally::new("x⊼^(g+h) y = (x⊼^g y)⊼^h(y⊼^g y)");
    let mut unit = Tally::new("x⊻^0 y = x = x⊼^0 y");
    let mut periodic = Tally::new("operations depend on g mod m");
    let mut ex1 = Tally::new("(x⊻^g y)⊻^h(z⊼^g y) = (x⊻^h z)⊻^g(y⊻^h z)");
    let mut ex2 = Tally::new("(x⊼^g y)⊻^h(z⊼^g y) = (x⊻^h z)⊼^g(y⊻^h z)");
    let mut ex3 = Tally::new("(x⊼^g y)⊼^h(z⊼^g y) = (x⊼^h z)⊼^g(y⊻^h z)");

    let mut visit = |x, y, z, g: i64, h: i64| {
        let u = |a, b, n| ab.under_n(a, b, n);
        let o = |a, b, n| ab.over_n(a, b, n);
        let w = || {
            format!(
                "x={} y={} z={} g={g} h={h}",
                f.format(x),
                f.format(y),
                f.format(z)
            )
        };
        idem.record(u(x, x, g) == o(x, x, g), w);
        under_comp.record(u(x, y, g + h) == u(u(x, y, g), u(y, y, g), h), w);
        over_comp.record(o(x, y, g + h) == o(o(x, y, g), o(y, y, g), h), w);
        unit.record(u(x, y, 0) == x && o(x, y, 0) == x, w);
        periodic.record(
            u(x, y, g) == u(x, y, g + m as i64) && o(x, y, g) == o(x, y, g + m as i64),
            w,
        );
        ex1.record(
            u(u(x, y, g), o(z, y, g), h) == u(u(x, z, h), u(y, z, h), g),
            w,
        );
        ex2.record(
            u(o(x, y, g), o(z, y, g), h) == o(u(x, z, h), u(y, z, h), g),
            w,
        );
        ex3.record(
            o(o(x, y, g), o(z, y, g), h) == o(o(x, z, h), u(y, z, h), g),
            w,
        );
    };

    if exhaustive {
        for x in f.elements() {
            for y in f.elements() {
                for z in f.elements() {
                    for g in 0..m as i64 {
                        for h in 0..m as i64 {
                            visit(x, y, z, g, h);
                        }
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let pick = |rng: &mut ChaCha8Rng| f.element(rng.random_range(0..f.order())).unwrap();
        for _ in 0..opts.samples {
            let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let g = rng.random_range(0..m) as i64;
            let h = rng.random_range(0..m) as i64;
            visit(x, y, z, g, h);
        }
    }

    Ok(AxiomReport {
        exhaustive,
        checks: [idem, under_comp, over_comp, unit, periodic, ex1, ex2, ex3]
            .into_iter()
            .map(Tally::finish)
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4_s1() -> AlexanderBiquandle {
        AlexanderBiquandle::from_params(2, &[1, 1, 1], &[1]).unwrap()
    }

    #[test]
    fn alexander_table_is_a_biquandle() {
        let report = check_biquandle_axioms(&FiniteBiquandleTable::from_alexander(&gf4_s1()));
        assert!(report.exhaustive);
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(
            report.check("(x⊻y)⊻(z⊻y) = (x⊻z)⊻(y⊼z)").unwrap().trials,
            64
        );
    }

    #[test]
    fn broken_table_reports_witness() {
        // constant operations are never bijective
        let t = FiniteBiquandleTable::new(2, vec![0; 4], vec![0; 4]);
        let report = check_biquandle_axioms(&t);
        assert!(!report.all_passed());
        let bij = report.check("y ↦ y⊻x bijective").unwrap();
        assert!(!bij.passed);
        assert_eq!(bij.witness.as_deref(), Some("x=0"));
    }

    #[test]
    fn gf4_is_a_z3_family() {
        let report = check_gfamily_axioms(&gf4_s1(), 3, FamilyCheckOptions::default()).unwrap();
        assert!(report.exhaustive);
        assert!(report.all_passed(), "{report:?}");
    }

    #[test]
    fn gf4_is_not_a_z2_family() {
        let err = check_gfamily_axioms(&gf4_s1(), 2, FamilyCheckOptions::default()).unwrap_err();
        assert_eq!(err, FieldError::NotZmFamily { m: 2, kind: 3 });
    }

    #[test]
    fn large_family_is_sampled() {
        let ab = AlexanderBiquandle::from_params(3, &[1, 2, 1, 2, 1], &[1]).unwrap();
        let opts = FamilyCheckOptions {
            samples: 500,
            seed: 7,
            ..Default::default()
        };
        let report = check_gfamily_axioms(&ab, 10, opts).unwrap();
        assert!(!report.exhaustive);
        assert!(report.all_passed());
        assert!(report.checks.iter().all(|c| c.trials == 500));
    }
}
