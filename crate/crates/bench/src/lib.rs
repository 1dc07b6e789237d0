//! Deterministic inputs for the benchmarks.

use fibertorsion::graph::{double, Edge, GluingMatrix, Slot};
use fibertorsion::{ExceptionalFiber, IntMatrix, PlumbingGraph, SeifertInvariants};

/// An `n×n` matrix with entries in `-9..=9` from a fixed linear congruential sequence.
pub fn matrix(n: usize, seed: u64) -> IntMatrix {
    let mut x = seed;
    let entries = (0..n * n)
        .map(|_| {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((x >> 33) % 19) as i64 - 9
        })
        .collect::<Vec<_>>();
    IntMatrix::from_rows(n, &entries.chunks(n).collect::<Vec<_>>()).expect("square matrix")
}

/// Orientable piece of genus `g` with `b` boundary tori and `n` cone points.
pub fn piece(g: u32, b: u32, n: usize) -> SeifertInvariants {
    let primes = [2, 3, 5, 7, 11, 13, 17, 19];
    let fibers = (0..n)
        .map(|i| ExceptionalFiber::new(primes[i % primes.len()], 1))
        .collect();
    SeifertInvariants::orientable(g, b, fibers, None).expect("valid piece")
}

/// A chain of `len` pieces, each with two boundary tori, glued end to end by
/// a fiber-section swap.
pub fn chain(len: usize) -> PlumbingGraph {
    let nodes = (0..len).map(|_| piece(0, 2, 2)).collect();
    let edges = (1..len)
        .map(|v| Edge {
            from: Slot { node: v - 1, slot: 1 },
            to: Slot { node: v, slot: 0 },
            matrix: GluingMatrix([[0, 1], [1, 0]]),
        })
        .collect();
    PlumbingGraph::new(nodes, edges).expect("valid chain")
}

pub fn doubled(b: u32) -> PlumbingGraph {
    double(&piece(1, b, 3)).expect("piece has boundary")
}
