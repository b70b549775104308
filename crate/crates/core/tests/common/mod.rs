#![allow(dead_code)]

use coopcolor_core::hypergraph::{ChainSystem, CoopInstance, Hypergraph, Interval};
use rand::seq::SliceRandom;
use rand::Rng;

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i)
            } else {
                a.swap(c[i], i)
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut a: Vec<usize> = (0..n).collect();
    a.shuffle(rng);
    a
}

/// A random chain system on `n >= 3` vertices with edge lengths 2..=5 and at
/// most one 2-edge (possibly repeated).
pub fn random_chain(rng: &mut impl Rng, n: usize) -> ChainSystem {
    let closed = rng.random_bool(0.5);
    let order = random_permutation(rng, n);
    let two_edge = if rng.random_bool(0.5) {
        Some(rng.random_range(0..n - 1))
    } else {
        None
    };
    let mut intervals = Vec::new();
    for _ in 0..rng.random_range(0..=2 * n) {
        let len = rng.random_range(3..=5).min(n);
        let start = if closed {
            rng.random_range(0..n)
        } else {
            rng.random_range(0..=n - len)
        };
        intervals.push(Interval::new(start, len));
    }
    if let Some(s) = two_edge {
        for _ in 0..rng.random_range(1..=2) {
            intervals.push(Interval::new(s, 2));
        }
    }
    intervals.shuffle(rng);
    ChainSystem::new(order, intervals, closed).unwrap()
}

/// Random explicit family: `n` in 2..=max_n, `m` in 1..=max_m, edges of size
/// 2..=4 (capped at n).
pub fn random_family(rng: &mut impl Rng, max_n: usize, max_m: usize) -> CoopInstance {
    let n = rng.random_range(2..=max_n);
    let m = rng.random_range(1..=max_m);
    let hs = (0..m)
        .map(|_| {
            let edges = (0..rng.random_range(0..=2 * n))
                .map(|_| {
                    let size = rng.random_range(2..=4.min(n));
                    let mut vs = random_permutation(rng, n);
                    vs.truncate(size);
                    vs
                })
                .collect();
            Hypergraph::explicit(n, edges).unwrap()
        })
        .collect();
    CoopInstance::new(hs).unwrap()
}
