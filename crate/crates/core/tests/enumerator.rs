mod common;

use common::*;
use hyperising::enumerate::{count_bound, enumerate_connected};
use hyperising::random::ActivityKind;
use hyperising::{Hypergraph, LabelSet};

/// Every connected subset by brute force, sorted by size then lexicographically.
fn brute_force(g: &Hypergraph, t: usize) -> Vec<LabelSet> {
    let mut sets: Vec<LabelSet> = (1..1u32 << g.n())
        .filter(|s| s.count_ones() as usize <= t)
        .map(|s| g.induced(&subset(s)).unwrap())
        .filter(|h| h.is_connected().unwrap())
        .map(|h| h.labels().clone())
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    sets
}

#[test]
fn matches_brute_force_up_to_fourteen() {
    let spec = shape(1, 14);
    for seed in 0..40 {
        let g = one_instance(seed, &spec, ActivityKind::IsingInRange);
        for t in [1, 3, g.n()] {
            let fam = enumerate_connected(&g, t, 1 << 26).unwrap();
            let listed: Vec<LabelSet> = fam.iter().cloned().collect();
            assert_eq!(listed, brute_force(&g, t), "seed {seed}, t {t}");
        }
    }
}

#[test]
fn families_are_monotone_and_bounded() {
    let spec = shape(4, 14);
    for seed in 100..130 {
        let g = one_instance(seed, &spec, ActivityKind::IsingInRange);
        let full = enumerate_connected(&g, 8, 1 << 26).unwrap();
        for t in 1..8 {
            let small = enumerate_connected(&g, t, 1 << 26).unwrap();
            assert!(small.iter().all(|s| full.contains(s)));
            assert!(small.iter().all(|s| s.len() <= t));
        }
        for (size, &count) in full.counts().iter().enumerate().skip(1) {
            let bound = count_bound(g.n(), g.max_degree(), g.max_edge_size(), size + 1);
            assert!(count as f64 <= bound, "size {}: {count} > {bound}", size + 1);
        }
    }
}

#[test]
fn output_independent_of_thread_count() {
    let g = one_instance(7, &shape(14, 14), ActivityKind::IsingInRange);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| enumerate_connected(&g, 6, 1 << 26).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn path_counts() {
    let g = Hypergraph::ising(3, &[(&[0, 1], 0.5), (&[1, 2], 0.5)]).unwrap();
    assert_eq!(enumerate_connected(&g, 2, 1 << 20).unwrap().counts(), vec![3, 2]);
}
