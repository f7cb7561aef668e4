use hbk_core::algebra::AlexanderBiquandle;
use hbk_core::bounds::gordian_lower_bound;
use hbk_core::coloring::coloring_dimension;
use hbk_core::diagram::catalog;
use hbk_core::flow::{check_flow, transport_flow, DEFAULT_FLOW_CAP};
use hbk_core::moves::{
    random_corpus, random_crossing_changes, random_walk, CorpusOptions, WalkOptions,
};
use hbk_core::{parse_diagram, serialize_diagram, Diagram, Field, FieldElement, Flow, FlowSpace};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> Vec<Field> {
    vec![
        Field::new(2, &[1, 1, 1]).unwrap(),
        Field::new(3, &[2, 1, 1]).unwrap(),
        Field::new(5, &[4, 2, 1]).unwrap(),
        Field::new(3, &[1, 2, 1, 2, 1]).unwrap(),
        Field::new(7, &[3, 1]).unwrap(),
    ]
}

fn biquandles() -> Vec<AlexanderBiquandle> {
    vec![
        AlexanderBiquandle::from_params(2, &[1, 1, 1], &[1]).unwrap(),
        AlexanderBiquandle::from_params(3, &[2, 1, 1], &[1, 1]).unwrap(),
        AlexanderBiquandle::from_params(5, &[4, 2, 1], &[1, 0, 1]).unwrap(),
        AlexanderBiquandle::from_params(3, &[1, 2, 1, 2, 1], &[1]).unwrap(),
    ]
}

fn elem(f: &Field, i: u32) -> FieldElement {
    f.element(i % f.order()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(which in 0usize..5, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = &fields()[which];
        let (a, b, c) = (elem(f, a), elem(f, b), elem(f, c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            let order = f.mult_order(a).unwrap();
            prop_assert_eq!((f.order() as u64 - 1) % order, 0);
            prop_assert_eq!(f.pow(a, order as i64).unwrap(), f.one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn closed_form_matches_recursion(which in 0usize..4, a in any::<u32>(), b in any::<u32>()) {
        let x = &biquandles()[which];
        let f = x.field();
        let (a, b) = (elem(f, a), elem(f, b));
        let kind = x.biquandle_type() as i64;
        // iterate a ⊻ b = t a + (s - t) b and b ⊼ b = s b side by side
        let (mut ua, mut ub) = (a, b);
        for n in 0..=2 * kind {
            prop_assert_eq!(x.under_n(a, b, n), ua);
            prop_assert_eq!(x.over_n(b, b, n), ub);
            ua = f.add(f.mul(x.t(), ua), f.mul(f.sub(x.s(), x.t()), ub));
            ub = f.mul(x.s(), ub);
        }
        prop_assert_eq!(x.under_n(a, b, kind), a);
        prop_assert_eq!(x.over_n(a, b, kind), a);
    }

    #[test]
    fn under_n_composes(which in 0usize..4, a in any::<u32>(), b in any::<u32>(), i in -20i64..20, j in -20i64..20) {
        let x = &biquandles()[which];
        let f = x.field();
        let (a, b) = (elem(f, a), elem(f, b));
        let stepped = x.under_n(x.under_n(a, b, i), x.over_n(b, b, i), j);
        prop_assert_eq!(x.under_n(a, b, i + j), stepped);
    }

    #[test]
    fn quandle_degeneration(a in any::<u32>(), b in any::<u32>()) {
        let x = &biquandles()[0];
        let f = x.field();
        let (a, b) = (elem(f, a), elem(f, b));
        prop_assert_eq!(x.over(a, b), a);
    }
}

/// Counts flows by trying every arc assignment.
fn count_flows_directly(d: &Diagram, m: u64) -> u64 {
    let arcs = d.topology().arcs().len();
    let mut n = 0;
    for code in 0..m.pow(arcs as u32) {
        let mut c = code;
        let values = (0..arcs)
            .map(|_| {
                let v = c % m;
                c /= m;
                v as i64
            })
            .collect();
        // construction rejects anything violating the flow conditions
        if Flow::new(d, m, values).is_ok() {
            n += 1;
        }
    }
    n
}

fn small_corpus() -> Vec<Diagram> {
    let opts = CorpusOptions {
        max_crossings: 4,
        ..CorpusOptions::default()
    };
    random_corpus(99, 24, &opts)
}

#[test]
fn flow_counts_match_direct_enumeration() {
    for d in small_corpus() {
        for m in [2, 3, 4] {
            let fs = FlowSpace::new(&d, m).unwrap();
            let direct = count_flows_directly(&d, m);
            assert_eq!(fs.count(), Some(direct as u128), "{} m={m}", d.name());
            for flow in fs.enumerate(DEFAULT_FLOW_CAP).unwrap() {
                check_flow(&d, &flow).unwrap();
            }
            let genus = fs.genus() as u32;
            assert_eq!(direct, m.pow(genus));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        for d in random_corpus(seed, 3, &CorpusOptions::default()) {
            let text = serialize_diagram(&d);
            let back = parse_diagram(&text).unwrap();
            prop_assert_eq!(&back, &d);
            prop_assert_eq!(serialize_diagram(&back), text);
        }
    }

    #[test]
    fn crossing_change_is_an_involution(seed in any::<u64>()) {
        for d in random_corpus(seed, 3, &CorpusOptions::default()) {
            for c in d.crossings() {
                let once = d.crossing_change(&c.id).unwrap();
                prop_assert!(once.validate().is_valid());
                prop_assert_eq!(once.crossing(&c.id).unwrap().sign, c.sign.flip());
                prop_assert_eq!(&once.crossing_change(&c.id).unwrap(), &d);
            }
        }
    }

    #[test]
    fn random_walks_preserve_invariants(seed in any::<u64>(), steps in 1usize..6) {
        let x = AlexanderBiquandle::from_params(3, &[2, 1, 1], &[1, 1]).unwrap();
        let start = catalog::e_diagram();
        let opts = WalkOptions { max_crossings: Some(6), ..WalkOptions::default() };
        let (end, trail) = random_walk(&start, seed, steps, &opts);
        prop_assert!(end.validate().is_valid());
        prop_assert_eq!(end.semi_arcs().len() as i64 - start.semi_arcs().len() as i64,
            trail.iter().map(|s| s.kind.semi_arc_delta()).sum::<i64>());
        let fs = FlowSpace::new(&start, 8).unwrap();
        prop_assert_eq!(fs.count(), FlowSpace::new(&end, 8).unwrap().count());
        for flow in fs.enumerate(DEFAULT_FLOW_CAP).unwrap() {
            let moved = transport_flow(&start, &flow, &end).unwrap();
            prop_assert_eq!(flow.gcd(), moved.gcd());
            prop_assert_eq!(
                coloring_dimension(&start, &flow, &x).unwrap(),
                coloring_dimension(&end, &moved, &x).unwrap()
            );
        }
    }

    #[test]
    fn crossing_changes_bound_the_distance(seed in any::<u64>(), j in 0usize..=3) {
        let x = AlexanderBiquandle::from_params(2, &[1, 1, 1], &[1]).unwrap();
        let d = &random_corpus(seed, 1, &CorpusOptions::default())[0];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let changed = random_crossing_changes(d, &mut rng, j);
        let b = gordian_lower_bound(d, &changed, &x, 3, DEFAULT_FLOW_CAP).unwrap();
        prop_assert!(b.forward <= j && b.backward <= j);
        let same = gordian_lower_bound(d, d, &x, 3, DEFAULT_FLOW_CAP).unwrap();
        prop_assert_eq!(same.bound, 0);
    }
}

#[test]
fn unknotting_bound_matches_brute_force_maximum() {
    use hbk_core::bounds::unknotting_lower_bound;
    use hbk_core::coloring::{count_colorings_bruteforce, DEFAULT_BRUTE_FORCE_CAP};
    use num_bigint::BigUint;

    let x = AlexanderBiquandle::from_params(2, &[1, 1, 1], &[1]).unwrap();
    let genus_two: Vec<Diagram> = random_corpus(5, 60, &CorpusOptions::default())
        .into_iter()
        .filter(|d| d.semi_arcs().len() <= 10 && FlowSpace::new(d, 3).unwrap().genus() == 2)
        .take(6)
        .collect();
    assert!(!genus_two.is_empty());
    for d in genus_two {
        let fs = FlowSpace::new(&d, 3).unwrap();
        let max_dim = fs
            .enumerate(DEFAULT_FLOW_CAP)
            .unwrap()
            .map(|flow| {
                let mut count =
                    count_colorings_bruteforce(&d, &flow, &x, DEFAULT_BRUTE_FORCE_CAP).unwrap();
                let mut dim = 0;
                while count > BigUint::from(1u32) {
                    count /= 4u32;
                    dim += 1;
                }
                dim
            })
            .max()
            .unwrap();
        let bound = unknotting_lower_bound(&d, &x, 3, DEFAULT_FLOW_CAP).unwrap();
        assert_eq!(bound.bound, max_dim - 1, "{}", d.name());
    }
}
