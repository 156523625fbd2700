//! Parameterized pattern matching over an augmented heap.
//!
//! The encoded pattern is cut greedily into segments: each segment is the
//! longest prefix of the re-encoded remainder that the heap spells from the
//! root. A single segment means the whole pattern is a node `v`, and the
//! occurrences are the ids below `v` plus the ids above `v` whose maximal
//! reach lands below it.
//!
//! With several segments, an occurrence must own a node on the path of the
//! first segment whose maximal reach stops exactly at the segment's end. Each
//! such candidate is then checked segment by segment: the text position at
//! every cut must reach exactly the segment's node (or into its subtree for
//! the last segment), and the few pattern positions whose encoding changed
//! because of the cut are checked against the text's previous-occurrence
//! distances.

use thiserror::Error;

use crate::alphabet::{prev_encode, reencode_at, Alphabet, EncSym};
use crate::heap::{Heap, NodeId, Slot, ROOT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("pattern is empty")]
    EmptyPattern,
    #[error("heap is not augmented")]
    NotAugmented,
}

/// One greedy segment of an encoded pattern. Pattern positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    /// Number of pattern characters before this segment.
    pub cut: usize,
    pub len: usize,
    /// Node spelling the re-encoded segment.
    pub node: NodeId,
    /// Ids of the non-root nodes from the root down to `node`.
    pub path_ids: Vec<usize>,
    /// Positions whose distance `e` reaches back past the cut, so the
    /// re-encoding zeroed them; `(s, e)` pairs.
    pub boundary: Vec<(usize, usize)>,
    /// Positions encoded as a first occurrence in the whole pattern.
    pub zeros: Vec<usize>,
}

/// Result of cutting a pattern into segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segmentation {
    Segments(Vec<Segment>),
    /// Some segment could not consume a single symbol.
    NoOccurrence,
}

impl Heap {
    /// Cuts the encoded pattern `q` into greedy root walks.
    pub fn segment_pattern(&self, q: &[EncSym]) -> Segmentation {
        let m = q.len();
        let mut segments = Vec::new();
        let mut cut = 0;
        while cut < m {
            let mut s: Slot = ROOT;
            let mut path_ids = Vec::new();
            let mut len = 0;
            while cut + len < m {
                let sym = reencode_at(q, cut, len + 1);
                match self.nodes[s].children.get(sym) {
                    Some(c) => {
                        s = c;
                        len += 1;
                        path_ids.push(self.id_of_slot(c).0);
                    }
                    None => break,
                }
            }
            if len == 0 {
                return Segmentation::NoOccurrence;
            }
            let mut boundary = Vec::new();
            let mut zeros = Vec::new();
            for pos in cut + 1..=cut + len {
                if let EncSym::Dist(e) = q[pos - 1] {
                    if e == 0 {
                        zeros.push(pos);
                    } else if e >= pos - cut {
                        boundary.push((pos, e));
                    }
                }
            }
            segments.push(Segment {
                cut,
                len,
                node: self.id_of_slot(s),
                path_ids,
                boundary,
                zeros,
            });
            cut += len;
        }
        Segmentation::Segments(segments)
    }

    /// Start positions on the first segment's path whose maximal reach stops
    /// exactly at the segment's node. Every occurrence of a multi-segment
    /// pattern is among them.
    pub fn first_segment_candidates(&self, first: &Segment) -> Vec<usize> {
        let aug = self.augmentation.as_ref().expect("heap is not augmented");
        let target = self.slot_of(first.node);
        first
            .path_ids
            .iter()
            .copied()
            .filter(|&i| aug.mrp(self.slot_of_pos(i)) == target)
            .collect()
    }

    /// All 1-based positions `i` where `text[i..i + m - 1]` parameterized-matches
    /// `pattern`, ascending.
    pub fn find(&self, pattern: &[char]) -> Result<Vec<usize>, QueryError> {
        if pattern.is_empty() {
            return Err(QueryError::EmptyPattern);
        }
        let aug = self.augmentation.as_ref().ok_or(QueryError::NotAugmented)?;
        let m = pattern.len();
        let n = self.len();
        if m > n {
            return Ok(Vec::new());
        }
        let q = prev_encode(pattern, &self.alphabet);
        let segments = match self.segment_pattern(&q) {
            Segmentation::Segments(s) => s,
            Segmentation::NoOccurrence => return Ok(Vec::new()),
        };

        let first = &segments[0];
        let v1 = self.slot_of(first.node);
        if segments.len() == 1 {
            let mut out: Vec<usize> = aug.subtree(v1).map(|s| self.id_of_slot(s).0).collect();
            // path ids above v1, accepted when their reach ends below v1
            out.extend(
                first.path_ids[..first.path_ids.len() - 1]
                    .iter()
                    .copied()
                    .filter(|&i| aug.contains(v1, aug.mrp(self.slot_of_pos(i)))),
            );
            out.sort_unstable();
            return Ok(out);
        }

        let seg_slots: Vec<Slot> = segments.iter().map(|s| self.slot_of(s.node)).collect();
        let last = segments.len() - 1;
        let mut out: Vec<usize> = self
            .first_segment_candidates(first)
            .into_iter()
            .filter(|&i| {
                segments.iter().enumerate().skip(1).all(|(t, seg)| {
                    let p = i + seg.cut;
                    if p > n {
                        return false;
                    }
                    let reach = aug.mrp(self.slot_of_pos(p));
                    let node_ok = if t < last {
                        reach == seg_slots[t]
                    } else {
                        aug.contains(seg_slots[t], reach)
                    };
                    node_ok
                        && seg.boundary.iter().all(|&(s, e)| {
                            let pos = i + s - 1;
                            self.alphabet.is_param(self.char_at(pos)) && self.prev_dist_at(pos) == Some(e)
                        })
                        && seg
                            .zeros
                            .iter()
                            .all(|&s| self.prev_dist_at(i + s - 1).is_none_or(|d| d >= s))
                })
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn find_str(&self, pattern: &str) -> Result<Vec<usize>, QueryError> {
        let p: Vec<char> = pattern.chars().collect();
        self.find(&p)
    }

    /// Augments if needed, then runs [`Heap::find`].
    pub fn query(&mut self, pattern: &[char]) -> Result<Vec<usize>, QueryError> {
        self.augment();
        self.find(pattern)
    }
}

/// Brute-force matcher: compares the encoding of every window with the
/// encoding of the pattern. O(nm).
pub fn naive_match(text: &[char], pattern: &[char], alphabet: &Alphabet) -> Result<Vec<usize>, QueryError> {
    if pattern.is_empty() {
        return Err(QueryError::EmptyPattern);
    }
    let m = pattern.len();
    if m > text.len() {
        return Ok(Vec::new());
    }
    let q = prev_encode(pattern, alphabet);
    Ok((1..=text.len() - m + 1)
        .filter(|&i| prev_encode(&text[i - 1..i - 1 + m], alphabet) == q)
        .collect())
}
