//! Oracles and invariant checkers shared by the integration tests. They only
//! use the public heap API plus brute-force encodings.

#![allow(dead_code)]

use std::collections::BTreeMap;

use ppheap::{prev_encode, Alphabet, EncSym, Heap, NodeId};

/// Parent id, edge label and depth per node id, built by inserting every
/// encoded suffix shortest first and walking from the root each time.
pub struct ShtOracle {
    pub parent: Vec<usize>,
    pub label: Vec<Option<EncSym>>,
    pub depth: Vec<usize>,
}

pub fn sequence_hash_tree(text: &[char], alphabet: &Alphabet) -> ShtOracle {
    let n = text.len();
    let mut children: Vec<BTreeMap<EncSym, usize>> = vec![BTreeMap::new(); n + 1];
    let mut parent = vec![usize::MAX; n + 1];
    let mut label = vec![None; n + 1];
    let mut depth = vec![0; n + 1];
    for i in (1..=n).rev() {
        let enc = prev_encode(&text[i - 1..], alphabet);
        let mut v = 0;
        for (k, sym) in enc.iter().enumerate() {
            match children[v].get(sym) {
                Some(&c) => v = c,
                None => {
                    children[v].insert(*sym, i);
                    parent[i] = v;
                    label[i] = Some(*sym);
                    depth[i] = k + 1;
                    break;
                }
            }
        }
        assert!(label[i].is_some(), "suffix {i} already represented");
    }
    ShtOracle { parent, label, depth }
}

fn ancestors(h: &Heap, v: NodeId) -> Vec<NodeId> {
    let mut out = Vec::new();
    let mut u = v;
    while !u.is_bottom() {
        out.push(u);
        u = h.parent(u);
    }
    out
}

/// Expected label of a link whose target spells `target`.
fn def4_holds(sym: EncSym, source: &[EncSym], target: &[EncSym]) -> bool {
    if target.len() != source.len() + 1 {
        return false;
    }
    match sym {
        EncSym::Static(_) | EncSym::Dist(0) => target[0] == sym && target[1..] == *source,
        EncSym::Dist(d) => {
            if d > source.len() || source[d - 1] != EncSym::Dist(0) {
                return false;
            }
            let mut want = vec![EncSym::Dist(0)];
            want.extend_from_slice(&source[..d - 1]);
            want.push(EncSym::Dist(d));
            want.extend_from_slice(&source[d..]);
            want == target
        }
    }
}

/// Every structural invariant of a freshly built heap. Returns a description
/// of the first violation.
pub fn check_structure(h: &Heap, text: &[char], alphabet: &Alphabet) -> Result<(), String> {
    let n = text.len();
    if h.len() != n || h.node_count() != n + 1 {
        return Err(format!("node count {} for n = {n}", h.node_count()));
    }
    let oracle = sequence_hash_tree(text, alphabet);
    let labels: Vec<Vec<EncSym>> = (0..=n).map(|i| h.path_label(NodeId(i))).collect();
    for i in 1..=n {
        let v = NodeId(i);
        let p = h.parent(v);
        if p.0 != oracle.parent[i] || h.label(v) != oracle.label[i] || h.depth(v) != oracle.depth[i] {
            return Err(format!("node {i} differs from the sequence hash tree"));
        }
        if p != NodeId::ROOT && p.0 <= i {
            return Err(format!("node {i} has parent {} with a smaller id", p.0));
        }
        let suffix = prev_encode(&text[i - 1..], alphabet);
        if labels[i][..] != suffix[..h.depth(v)] {
            return Err(format!("path label of node {i} is not a prefix of its suffix"));
        }
    }

    // reversed suffix links
    let mut incoming = vec![0usize; n + 1];
    let mut source_of = vec![None; n + 1];
    let mut from_real = 0;
    for s in 0..=n {
        let src = NodeId(s);
        for (sym, dst) in h.rslinks(src) {
            from_real += 1;
            incoming[dst.0] += 1;
            source_of[dst.0] = Some(src);
            if !def4_holds(sym, &labels[s], &labels[dst.0]) {
                return Err(format!("link {s} -{sym}-> {} breaks its label semantics", dst.0));
            }
            // monotonicity along the source's ancestors
            for u in ancestors(h, src) {
                let want = match sym {
                    EncSym::Dist(d) if d >= 1 && h.depth(u) < d => EncSym::Dist(0),
                    other => other,
                };
                if h.rslink(u, want).is_none() {
                    return Err(format!("ancestor {} of {s} lacks a link labelled {want}", u.0));
                }
            }
        }
    }
    // the root's single incoming link comes from bottom
    incoming[0] += 1;
    if from_real != n {
        return Err(format!("{from_real} links leave real nodes, expected {n}"));
    }
    if let Some(i) = (0..=n).find(|&i| incoming[i] != 1) {
        return Err(format!("node {i} has {} incoming links", incoming[i]));
    }
    if incoming.iter().sum::<usize>() != n + 1 {
        return Err("incoming link total is not n + 1".into());
    }
    for i in 1..=n {
        let v = NodeId(i);
        if h.slink(v) != source_of[i] {
            return Err(format!("slink of node {i} is not the source of its incoming link"));
        }
        // the witness with its first character removed encodes as the slink
        let d = h.depth(v);
        let witness = &text[i - 1..i - 1 + d];
        let z = h.slink(v).unwrap();
        if prev_encode(&witness[1..], alphabet) != labels[z.0] {
            return Err(format!("slink of node {i} does not spell the witness suffix"));
        }
    }
    if h.slink(NodeId::ROOT).is_some() {
        return Err("root has a suffix link".into());
    }
    Ok(())
}

/// Maximal reach pointers against an independent root walk per position.
pub fn check_mrp(h: &Heap, text: &[char], alphabet: &Alphabet) -> Result<(), String> {
    for i in 1..=text.len() {
        let suffix = prev_encode(&text[i - 1..], alphabet);
        let m = h.mrp(i);
        let (walked, k) = h.walk(&suffix);
        if m != walked {
            return Err(format!("mrp({i}) = {} but the walk reaches {}", m.0, walked.0));
        }
        if h.path_label(m)[..] != suffix[..k] {
            return Err(format!("mrp({i}) is not a prefix of its suffix"));
        }
        if k < suffix.len() && h.child(m, suffix[k]).is_some() {
            return Err(format!("mrp({i}) is not maximal"));
        }
        if i >= 2 {
            let prev = h.mrp(i - 1);
            let start = h.slink(prev).unwrap();
            if h.depth(start) + 1 != h.depth(prev) || h.path_label(start)[..] != suffix[..h.depth(start)] {
                return Err(format!("descent start for position {i} is not a prefix"));
            }
        }
    }
    if !text.is_empty() && h.mrp(1) != NodeId(1) {
        return Err("mrp(1) is not node 1".into());
    }
    Ok(())
}

/// `|v_n| - |v_1| + 4(n - 1)` with `v_i` the node of position `i`.
pub fn climb_bound(h: &Heap) -> i64 {
    let n = h.len() as i64;
    if n == 0 {
        return 0;
    }
    h.depth(NodeId(h.len())) as i64 - h.depth(NodeId(1)) as i64 + 4 * (n - 1)
}

/// `|v_n| - |v_1| + 2(n - 1)` with `v_i = mrp(i)`.
pub fn descent_bound(h: &Heap) -> i64 {
    let n = h.len() as i64;
    if n == 0 {
        return 0;
    }
    h.depth(h.mrp(h.len())) as i64 - h.depth(h.mrp(1)) as i64 + 2 * (n - 1)
}
