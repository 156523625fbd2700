//! Shared workloads for the criterion benchmarks.

use ppheap::random::{alphabet, random_pstring};
use ppheap::Alphabet;

/// A random text over `sigma` static and `pi` parameterized characters.
pub fn workload(n: usize, sigma: usize, pi: usize, seed: u64) -> (Vec<char>, Alphabet) {
    (random_pstring(seed, n, sigma, pi), alphabet(pi))
}

/// `count` patterns of length `m` cut from the text, spread evenly.
pub fn patterns_from(text: &[char], m: usize, count: usize) -> Vec<Vec<char>> {
    if text.len() < m || count == 0 {
        return Vec::new();
    }
    let stride = ((text.len() - m) / count).max(1);
    (0..count)
        .map(|k| (k * stride).min(text.len() - m))
        .map(|s| text[s..s + m].to_vec())
        .collect()
}
