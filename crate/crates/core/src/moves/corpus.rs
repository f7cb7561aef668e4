//! Seeded random diagrams: trivial diagrams scrambled by moves and then
//! crossing changes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{random_crossing_changes, random_move, WalkOptions};
use crate::diagram::{catalog, Diagram};

#[derive(Clone, Debug)]
pub struct CorpusOptions {
    /// Total genus over all components.
    pub max_genus: usize,
    pub max_components: usize,
    pub max_crossings: usize,
    pub max_steps: usize,
    /// Apply random crossing changes after the moves.
    pub crossing_changes: bool,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            max_genus: 3,
            max_components: 2,
            max_crossings: 6,
            max_steps: 10,
            crossing_changes: true,
        }
    }
}

fn instance(seed: u64, index: u64, opts: &CorpusOptions) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let k = rng.random_range(1..=opts.max_components.min(opts.max_genus).max(1));
    let mut genus = vec![1; k];
    for _ in k..rng.random_range(k..=opts.max_genus.max(k)) {
        let i = rng.random_range(0..k);
        genus[i] += 1;
    }
    let mut d = catalog::trivial_diagram(genus[0]);
    for (i, &g) in genus.iter().enumerate().skip(1) {
        d = d
            .disjoint_union(&catalog::trivial_diagram(g), &format!("k{i}."))
            .expect("disjoint prefixes");
    }
    let walk = WalkOptions {
        max_crossings: Some(opts.max_crossings),
        ..WalkOptions::default()
    };
    for _ in 0..rng.random_range(0..=opts.max_steps) {
        match random_move(&d, &mut rng, &walk) {
            Some((_, next)) => d = next,
            None => break,
        }
    }
    if opts.crossing_changes {
        let changes = rng.random_range(0..=d.crossing_count());
        d = random_crossing_changes(&d, &mut rng, changes);
    }
    d.with_name(format!("corpus-{seed}-{index}"))
}

/// `count` valid diagrams, reproducible from `seed`; generated in parallel.
pub fn random_corpus(seed: u64, count: usize, opts: &CorpusOptions) -> Vec<Diagram> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| instance(seed, i, opts))
        .collect()
}
