mod common;

use common::{check_mrp, check_structure, climb_bound, descent_bound};
use ppheap::random::{alphabet, random_pstring};
use ppheap::{prev_encode, reencode_at, Alphabet, Heap, NodeId, PrevDistArrays, Segmentation};
use proptest::prelude::*;

const EXAMPLES: [(&str, &str); 3] = [
    ("axyxyyxxyyxxzyazy", "xyz"),
    ("abzaxxbyaxxbazzax", "xyz"),
    ("xxayxayxayxa", "xy"),
];

fn chars(s: &str) -> Vec<char> {
    s.chars().collect()
}

#[test]
fn example_texts_satisfy_all_invariants() {
    for (t, pi) in EXAMPLES {
        let text = chars(t);
        let a = Alphabet::new(pi.chars());
        let mut h = Heap::from_chars(&text, a.clone());
        check_structure(&h, &text, &a).unwrap();
        h.augment();
        check_mrp(&h, &text, &a).unwrap();
        assert_eq!(h.climb_visits() as i64, climb_bound(&h), "{t}");
        assert_eq!(h.descent_visits() as i64, descent_bound(&h), "{t}");
    }
}

#[test]
fn degenerate_alphabets() {
    for (t, pi) in [("aaaa", ""), ("xxxx", "x"), ("", "x"), ("a", ""), ("xyxyxyyx", "xy")] {
        let text = chars(t);
        let a = Alphabet::new(pi.chars());
        let mut h = Heap::from_chars(&text, a.clone());
        check_structure(&h, &text, &a).unwrap();
        h.augment();
        check_mrp(&h, &text, &a).unwrap();
    }
}

#[test]
fn exhaustive_short_patterns_on_examples() {
    for (t, pi) in EXAMPLES {
        let text = chars(t);
        let a = Alphabet::new(pi.chars());
        let mut syms: Vec<char> = text.clone();
        syms.push('c');
        syms.sort_unstable();
        syms.dedup();
        let mut h = Heap::from_chars(&text, a.clone());
        h.augment();
        let mut pats: Vec<Vec<char>> = vec![vec![]];
        for _ in 0..6 {
            pats = pats
                .iter()
                .flat_map(|p| {
                    syms.iter().map(move |&c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
            for p in &pats {
                let want = ppheap::naive_match(&text, p, &a).unwrap();
                assert_eq!(h.find(p).unwrap(), want, "text {t} pattern {p:?}");
            }
        }
    }
}

#[test]
fn online_reads_between_insertions() {
    let text = random_pstring(7, 300, 3, 3);
    let a = alphabet(3);
    let mut h = Heap::new(a.clone());
    for k in (0..text.len()).rev() {
        h.push_front(text[k]);
        let cur = &text[k..];
        assert_eq!(h.len(), cur.len());
        assert_eq!(h.char_at(1), cur[0]);
        assert_eq!(h.depth(h.last_inserted()), h.depth(NodeId(1)));
        if k % 37 == 0 {
            check_structure(&h, cur, &a).unwrap();
            assert_eq!(h, Heap::from_chars(cur, a.clone()));
            assert_eq!(h.dist_arrays(), PrevDistArrays::build(cur, &a));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_heaps_satisfy_invariants(seed in any::<u64>(), n in 0usize..120, sigma in 0usize..4, pi in 0usize..4) {
        prop_assume!(sigma + pi > 0 || n == 0);
        let text = random_pstring(seed, n, sigma, pi);
        let a = alphabet(pi);
        let mut h = Heap::from_chars(&text, a.clone());
        prop_assert_eq!(check_structure(&h, &text, &a), Ok(()));
        prop_assert_eq!(h.dist_arrays(), PrevDistArrays::build(&text, &a));
        prop_assert_eq!(h.climb_visits() as i64, climb_bound(&h));
        h.augment();
        prop_assert_eq!(check_mrp(&h, &text, &a), Ok(()));
        prop_assert_eq!(h.descent_visits() as i64, descent_bound(&h));
    }

    #[test]
    fn reach_prefixes_are_represented(seed in any::<u64>(), n in 1usize..100, pi in 1usize..4) {
        let text = random_pstring(seed, n, 2, pi);
        let a = alphabet(pi);
        let mut h = Heap::from_chars(&text, a.clone());
        h.augment();
        for i in 1..=n {
            let d = h.depth(h.mrp(i));
            let enc = prev_encode(&text[i - 1..i - 1 + d], &a);
            prop_assert!(h.represents(&enc));
            // every shorter window re-encodes to a prefix of the same path
            for k in 0..=d {
                prop_assert_eq!(h.walk(&enc[..k]).1, k);
            }
        }
    }

    #[test]
    fn candidates_cover_every_occurrence(seed in any::<u64>(), n in 20usize..150, start in 0usize..20, m in 2usize..30, pi in 1usize..4) {
        let text = random_pstring(seed, n, 2, pi);
        let a = alphabet(pi);
        let start = start.min(n - 1);
        let end = (start + m).min(n);
        let pattern = &text[start..end];
        let mut h = Heap::from_chars(&text, a.clone());
        h.augment();
        let q = prev_encode(pattern, &a);
        let occ = ppheap::naive_match(&text, pattern, &a).unwrap();
        prop_assert!(occ.contains(&(start + 1)));
        match h.segment_pattern(&q) {
            Segmentation::Segments(segs) => {
                if segs.len() >= 2 {
                    let cands = h.first_segment_candidates(&segs[0]);
                    for i in &occ {
                        prop_assert!(cands.contains(i), "occurrence {} missing from candidates", i);
                    }
                }
                for s in &segs {
                    let re: Vec<_> = (1..=s.len).map(|o| reencode_at(&q, s.cut, o)).collect();
                    prop_assert_eq!(h.path_label(s.node), re);
                }
            }
            Segmentation::NoOccurrence => prop_assert!(false, "a text substring was rejected"),
        }
    }
}
