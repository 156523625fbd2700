//! Seeded random p-strings for tests, fuzzing and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Alphabet;

fn nth_char(base: u32, k: usize) -> char {
    char::from_u32(base + k as u32).expect("alphabet index within the basic multilingual plane")
}

/// The `k`-th static character: `a`, `b`, ... then Latin Extended.
pub fn static_char(k: usize) -> char {
    if k < 26 {
        nth_char('a' as u32, k)
    } else {
        nth_char(0x100, k - 26)
    }
}

/// The `k`-th parameterized character: `A`, `B`, ... then Greek and beyond.
pub fn param_char(k: usize) -> char {
    if k < 26 {
        nth_char('A' as u32, k)
    } else {
        nth_char(0x391, k - 26)
    }
}

/// Alphabet whose parameterized characters are the first `pi_size` values of
/// [`param_char`].
pub fn alphabet(pi_size: usize) -> Alphabet {
    Alphabet::new((0..pi_size).map(param_char))
}

/// Every character a random string with these sizes may contain.
pub fn symbols(sigma_size: usize, pi_size: usize) -> Vec<char> {
    (0..sigma_size)
        .map(static_char)
        .chain((0..pi_size).map(param_char))
        .collect()
}

/// Draws `n` characters uniformly from `sigma_size` static and `pi_size`
/// parameterized characters.
///
/// # Panics
///
/// If `n > 0` and both sizes are zero.
pub fn random_pstring(seed: u64, n: usize, sigma_size: usize, pi_size: usize) -> Vec<char> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_pstring_with(&mut rng, n, sigma_size, pi_size)
}

pub fn random_pstring_with<R: Rng>(rng: &mut R, n: usize, sigma_size: usize, pi_size: usize) -> Vec<char> {
    let syms = symbols(sigma_size, pi_size);
    assert!(n == 0 || !syms.is_empty(), "cannot draw from an empty alphabet");
    (0..n).map(|_| syms[rng.gen_range(0..syms.len())]).collect()
}
