use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hbk_core::bounds::{flow_dim_profile, gordian_lower_bound};
use hbk_core::coloring::{coloring_dimension, count_colorings_bruteforce, DEFAULT_BRUTE_FORCE_CAP};
use hbk_core::diagram::catalog;
use hbk_core::flow::DEFAULT_FLOW_CAP;
use hbk_core::moves::{random_corpus, CorpusOptions};
use hbk_core::{AlexanderBiquandle, Field, FlowSpace};

fn gf9() -> AlexanderBiquandle {
    AlexanderBiquandle::from_params(3, &[2, 1, 1], &[1, 1]).unwrap()
}

fn field_ops(c: &mut Criterion) {
    let f = Field::new(5, &[4, 2, 1]).unwrap();
    let elems: Vec<_> = f.elements().collect();
    c.bench_function("field/mul_add_25", |b| {
        b.iter(|| {
            let mut acc = f.one();
            for &x in &elems {
                acc = f.add(f.mul(acc, x), x);
            }
            black_box(acc)
        })
    });
    c.bench_function("field/construct_gf3^4", |b| {
        b.iter(|| Field::new(3, black_box(&[1, 2, 1, 2, 1])).unwrap())
    });
}

fn dimension(c: &mut Criterion) {
    let ab = gf9();
    let mut group = c.benchmark_group("dimension");
    for d in [
        catalog::e_diagram(),
        catalog::trivial_diagram(3),
        catalog::trefoil(hbk_core::diagram::Sign::Positive),
    ] {
        let flow = FlowSpace::new(&d, 8).unwrap().flow_at(5);
        group.bench_with_input(BenchmarkId::new("rank", d.name()), &d, |b, d| {
            b.iter(|| coloring_dimension(d, &flow, &ab).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("brute_force", d.name()), &d, |b, d| {
            b.iter(|| count_colorings_bruteforce(d, &flow, &ab, DEFAULT_BRUTE_FORCE_CAP).unwrap())
        });
    }
    group.finish();
}

fn flows_and_bounds(c: &mut Criterion) {
    let ab = gf9();
    let corpus = random_corpus(1, 8, &CorpusOptions::default());
    c.bench_function("flows/space_e_m8", |b| {
        b.iter(|| FlowSpace::new(&catalog::e_diagram(), 8).unwrap())
    });
    c.bench_function("bounds/profile_corpus_m8", |b| {
        b.iter(|| {
            for d in &corpus {
                black_box(flow_dim_profile(d, &ab, 8, DEFAULT_FLOW_CAP).unwrap());
            }
        })
    });
    let (d1, d2) = (
        &corpus[0],
        corpus[0]
            .crossing_change(&corpus[0].crossings()[0].id)
            .unwrap(),
    );
    c.bench_function("bounds/gordian_pair_m8", |b| {
        b.iter(|| gordian_lower_bound(d1, &d2, &ab, 8, DEFAULT_FLOW_CAP).unwrap())
    });
}

fn corpus(c: &mut Criterion) {
    let mut group = c.benchmark_group("corpus");
    group.sample_size(10);
    group.bench_function("generate_50", |b| {
        b.iter(|| random_corpus(black_box(7), 50, &CorpusOptions::default()))
    });
    group.finish();
}

criterion_group!(benches, field_ops, dimension, flows_and_bounds, corpus);
criterion_main!(benches);
