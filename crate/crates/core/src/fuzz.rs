//! Seeded differential fuzzing of the heap matcher against the brute-force
//! matcher, with greedy shrinking of failing inputs.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Alphabet;
use crate::heap::Heap;
use crate::query::naive_match;
use crate::random::{self, random_pstring_with};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzConfig {
    pub max_n: usize,
    pub max_m: usize,
    pub sigma_size: usize,
    pub pi_size: usize,
    pub samples: u64,
    pub seed: u64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            max_n: 200,
            max_m: 20,
            sigma_size: 4,
            pi_size: 4,
            samples: 10_000,
            seed: 1,
        }
    }
}

/// A text and pattern on which the heap and the brute-force matcher disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub sample: u64,
    pub text: Vec<char>,
    pub pattern: Vec<char>,
    pub alphabet: Alphabet,
    pub expected: Vec<usize>,
    pub got: Vec<usize>,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.text.iter().collect();
        let p: String = self.pattern.iter().collect();
        let pi: String = self.alphabet.params().collect();
        writeln!(f, "divergence at sample {}", self.sample)?;
        writeln!(f, "  text:     {s:?}")?;
        writeln!(f, "  pattern:  {p:?}")?;
        writeln!(f, "  pi:       {pi:?}")?;
        writeln!(f, "  expected: {:?}", self.expected)?;
        write!(f, "  got:      {:?}", self.got)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FuzzReport {
    pub samples: u64,
    pub occurrences: u64,
}

/// Returns `(expected, got)` when the heap disagrees with brute force.
pub fn check_instance(text: &[char], pattern: &[char], alphabet: &Alphabet) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut heap = Heap::from_chars(text, alphabet.clone());
    let got = heap.query(pattern).expect("non-empty pattern");
    let expected = naive_match(text, pattern, alphabet).expect("non-empty pattern");
    (got != expected).then_some((expected, got))
}

/// Draws one (text, pattern) pair. Half of the patterns are renamed
/// substrings of the text, so most of those have occurrences.
pub fn sample_instance<R: Rng>(rng: &mut R, cfg: &FuzzConfig, alphabet: &Alphabet) -> (Vec<char>, Vec<char>) {
    let n = rng.gen_range(0..=cfg.max_n);
    let text = random_pstring_with(rng, n, cfg.sigma_size, cfg.pi_size);
    let m = rng.gen_range(1..=cfg.max_m.max(1));
    let pattern = if n >= m && rng.gen_bool(0.5) {
        let start = rng.gen_range(0..=n - m);
        let params: Vec<char> = alphabet.params().collect();
        let mut renamed = params.clone();
        renamed.shuffle(rng);
        text[start..start + m]
            .iter()
            .map(|&c| match params.iter().position(|&p| p == c) {
                Some(k) => renamed[k],
                None => c,
            })
            .collect()
    } else {
        random_pstring_with(rng, m, cfg.sigma_size, cfg.pi_size)
    };
    (text, pattern)
}

/// Runs `cfg.samples` random instances; stops at the first divergence and
/// returns it shrunk.
pub fn run(cfg: &FuzzConfig) -> Result<FuzzReport, Divergence> {
    assert!(cfg.sigma_size + cfg.pi_size > 0, "fuzzing needs at least one symbol");
    let alphabet = random::alphabet(cfg.pi_size);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = FuzzReport::default();
    for sample in 0..cfg.samples {
        let (text, pattern) = sample_instance(&mut rng, cfg, &alphabet);
        if let Some((expected, got)) = check_instance(&text, &pattern, &alphabet) {
            return Err(minimize(Divergence {
                sample,
                text,
                pattern,
                alphabet,
                expected,
                got,
            }));
        }
        report.samples += 1;
        report.occurrences += naive_match(&text, &pattern, &alphabet).map_or(0, |v| v.len() as u64);
    }
    Ok(report)
}

/// Greedily deletes single characters from the text and the pattern while
/// the disagreement persists.
pub fn minimize(mut div: Divergence) -> Divergence {
    loop {
        let mut shrunk = false;
        for which in 0..2 {
            let mut k = 0;
            loop {
                let seq = if which == 0 { &div.text } else { &div.pattern };
                if k >= seq.len() || (which == 1 && seq.len() == 1) {
                    break;
                }
                let mut text = div.text.clone();
                let mut pattern = div.pattern.clone();
                if which == 0 {
                    text.remove(k);
                } else {
                    pattern.remove(k);
                }
                match check_instance(&text, &pattern, &div.alphabet) {
                    Some((expected, got)) => {
                        div.text = text;
                        div.pattern = pattern;
                        div.expected = expected;
                        div.got = got;
                        shrunk = true;
                    }
                    None => k += 1,
                }
            }
        }
        if !shrunk {
            return div;
        }
    }
}
