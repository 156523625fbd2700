//! Static/parameterized symbol classes and the prev encoding.
//!
//! A p-string mixes static characters, which must match exactly, with
//! parameterized characters, which only have to match up to a consistent
//! renaming. The prev encoding replaces every parameterized character by the
//! distance back to its previous occurrence (0 for a first occurrence), so two
//! p-strings parameterized-match exactly when their encodings are equal.
//!
//! Positions in this module are 1-based, as in the rest of the public API.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Class of a character under an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharClass {
    Static,
    Param,
}

/// The declared parameterized characters. Everything else is static.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    params: BTreeSet<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(params: I) -> Self {
        Alphabet {
            params: params.into_iter().collect(),
        }
    }

    /// An alphabet with no parameterized characters; matching degenerates to
    /// exact matching.
    pub fn all_static() -> Self {
        Self::default()
    }

    pub fn classify(&self, c: char) -> CharClass {
        if self.params.contains(&c) {
            CharClass::Param
        } else {
            CharClass::Static
        }
    }

    #[inline]
    pub fn is_param(&self, c: char) -> bool {
        self.params.contains(&c)
    }

    /// Parameterized characters in ascending order.
    pub fn params(&self) -> impl Iterator<Item = char> + '_ {
        self.params.iter().copied()
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }
}

/// One symbol of a prev-encoded sequence.
///
/// The derived order puts every `Dist` before every `Static`, distances
/// ascending and static characters by scalar value. Child tables and link
/// tables iterate in this order, which keeps traversals and exports
/// deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EncSym {
    Dist(usize),
    Static(char),
}

impl EncSym {
    pub fn is_dist(self) -> bool {
        matches!(self, EncSym::Dist(_))
    }
}

impl fmt::Display for EncSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncSym::Dist(d) => write!(f, "{d}"),
            EncSym::Static(c) => write!(f, "{c}"),
        }
    }
}

/// Renders an encoded sequence compactly, e.g. `a0b01a06`. Distances above 9
/// are ambiguous in this form; use it for diagnostics only.
pub fn display_encoding(seq: &[EncSym]) -> String {
    seq.iter().map(|s| s.to_string()).collect()
}

/// Computes the prev encoding of `s`.
pub fn prev_encode(s: &[char], alphabet: &Alphabet) -> Vec<EncSym> {
    let mut last_seen: BTreeMap<char, usize> = BTreeMap::new();
    s.iter()
        .enumerate()
        .map(|(i, &c)| {
            if !alphabet.is_param(c) {
                return EncSym::Static(c);
            }
            match last_seen.insert(c, i) {
                Some(j) => EncSym::Dist(i - j),
                None => EncSym::Dist(0),
            }
        })
        .collect()
}

/// Whether two p-strings parameterized-match.
pub fn p_match(x: &[char], y: &[char], alphabet: &Alphabet) -> bool {
    x.len() == y.len() && prev_encode(x, alphabet) == prev_encode(y, alphabet)
}

/// Per-position distances to the previous and next occurrence of the same
/// parameterized character over a whole text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrevDistArrays {
    // 0 encodes "absent"; real distances are >= 1.
    prev: Vec<usize>,
    next: Vec<usize>,
}

impl PrevDistArrays {
    pub fn build(text: &[char], alphabet: &Alphabet) -> Self {
        let n = text.len();
        let mut prev = vec![0; n];
        let mut next = vec![0; n];
        let mut last_seen: BTreeMap<char, usize> = BTreeMap::new();
        for (p, &c) in text.iter().enumerate() {
            if !alphabet.is_param(c) {
                continue;
            }
            if let Some(q) = last_seen.insert(c, p) {
                prev[p] = p - q;
                next[q] = p - q;
            }
        }
        PrevDistArrays { prev, next }
    }

    pub(crate) fn from_prev(prev: Vec<usize>) -> Self {
        let mut next = vec![0; prev.len()];
        for (p, &d) in prev.iter().enumerate() {
            if d != 0 {
                next[p - d] = d;
            }
        }
        PrevDistArrays { prev, next }
    }

    pub fn len(&self) -> usize {
        self.prev.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prev.is_empty()
    }

    /// Distance from position `p` back to the previous occurrence of the same
    /// parameterized character.
    pub fn prev(&self, p: usize) -> Option<usize> {
        nonzero(self.prev[p - 1])
    }

    /// Distance from position `p` forward to the next occurrence of the same
    /// parameterized character.
    pub fn next(&self, p: usize) -> Option<usize> {
        nonzero(self.next[p - 1])
    }
}

fn nonzero(d: usize) -> Option<usize> {
    (d != 0).then_some(d)
}

/// Symbol `offset` (1-based) of `prev_encode(text[i..])`, in O(1).
///
/// # Panics
///
/// If the window runs past the end of the text.
pub fn window_prev_at(text: &[char], dists: &PrevDistArrays, alphabet: &Alphabet, i: usize, offset: usize) -> EncSym {
    assert!(i >= 1 && offset >= 1, "positions and offsets are 1-based");
    let p = i + offset - 1;
    assert!(
        p <= text.len(),
        "window {i}+{offset} exceeds text length {}",
        text.len()
    );
    let c = text[p - 1];
    if !alphabet.is_param(c) {
        return EncSym::Static(c);
    }
    match dists.prev(p) {
        Some(d) if d < offset => EncSym::Dist(d),
        _ => EncSym::Dist(0),
    }
}

/// Symbol `offset` (1-based) of the prev encoding of the pattern suffix that
/// starts after `cut` characters, given the encoding `q` of the whole pattern.
///
/// # Panics
///
/// If `cut + offset` exceeds `q.len()`.
pub fn reencode_at(q: &[EncSym], cut: usize, offset: usize) -> EncSym {
    assert!(offset >= 1 && cut + offset <= q.len(), "re-encode out of range");
    match q[cut + offset - 1] {
        EncSym::Dist(e) if e >= offset => EncSym::Dist(0),
        sym => sym,
    }
}

/// Leftmost registered occurrence of every parameterized character, for a
/// text that grows at its front.
///
/// Registrations use *slots*: the k-th character prepended gets slot k, so
/// the last character of the text has slot 1 and slots increase leftward.
/// For a text of final length n, position p has slot n + 1 - p.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OccRegistry {
    leftmost: BTreeMap<char, usize>,
    front: usize,
}

impl OccRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers parameterized character `c` at `slot`.
    ///
    /// # Panics
    ///
    /// If `slot` does not lie strictly left of every registered slot.
    pub fn push_front(&mut self, slot: usize, c: char) {
        assert!(slot > self.front, "registry slots must strictly increase");
        self.front = slot;
        self.leftmost.insert(c, slot);
    }

    /// Distance from the character about to be placed at `front_slot` to the
    /// leftmost registered occurrence of `c`, or `None` if `c` has not been
    /// registered.
    pub fn next_dist(&self, front_slot: usize, c: char) -> Option<usize> {
        debug_assert!(front_slot > self.front);
        self.leftmost.get(&c).map(|&j| front_slot - j)
    }

    /// Slot of the leftmost registered occurrence of `c`.
    pub fn leftmost(&self, c: char) -> Option<usize> {
        self.leftmost.get(&c).copied()
    }

    /// Smallest registered position, expressed as a slot (the largest one).
    pub fn front(&self) -> usize {
        self.front
    }
}
