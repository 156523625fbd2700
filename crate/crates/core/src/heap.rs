//! The parameterized position heap and its right-to-left online construction.
//!
//! The heap is the trie obtained by inserting the prev-encoded suffixes of the
//! text shortest first, each insertion adding the shortest prefix that is not
//! yet present. Every text position therefore owns exactly one node, and the
//! node id of a non-root node is that position.
//!
//! Construction prepends one character at a time. Each node may carry
//! *reversed suffix links*: `rslink(a, v) = u` when `u` spells the encoding of
//! a one-character-longer string whose one-step suffix encodes as `v`. A new
//! character is inserted by climbing from the previously inserted leaf to the
//! lowest ancestor with a link for the right label, following that link, and
//! hanging the new leaf below its target. Exactly one new link appears per
//! step, so the total work is linear in the number of nodes visited.
//!
//! Nodes live in an arena indexed by *slot*: slot 0 is the root and slot k is
//! the node inserted by the k-th prepended character. For a text of length n,
//! slot k holds node id `n + 1 - k`. Slots are stable under `push_front`, ids
//! are not.

use smallvec::SmallVec;

use crate::alphabet::{Alphabet, CharClass, EncSym, OccRegistry, PrevDistArrays};
use crate::augment::Augmentation;

pub(crate) type Slot = usize;
pub(crate) const ROOT: Slot = 0;

/// A node of the heap, named by the text position it was inserted for.
///
/// Id 0 is the root. Ids are relative to the heap's current text: after a
/// further `push_front` every non-root id shifts up by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);
    /// The auxiliary parent of the root.
    pub const BOTTOM: NodeId = NodeId(usize::MAX);

    pub fn is_bottom(self) -> bool {
        self == Self::BOTTOM
    }
}

/// One heap node, packed into a single cache line. `NONE` marks a missing
/// parent, label or suffix link.
#[derive(Debug, Clone, PartialEq, Eq)]
#[repr(align(64))]
pub(crate) struct Node {
    parent: u32,
    depth: u32,
    label: u32,
    /// Source of the unique incoming reversed suffix link.
    slink: u32,
    pub(crate) children: SymMap,
    pub(crate) rs_out: SymMap,
}

const NONE: u32 = u32::MAX;

fn pack_slot(s: Option<Slot>) -> u32 {
    s.map_or(NONE, |s| u32::try_from(s).expect("text too long"))
}

fn unpack_slot(s: u32) -> Option<Slot> {
    (s != NONE).then_some(s as Slot)
}

/// Symbol-keyed edges of one node, sorted by symbol. Keys and targets are
/// packed into `u32`s and the first two edges live inline, which keeps a
/// typical node within one cache line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct SymMap(SmallVec<[(u32, u32); 2]>);

const STATIC_BIT: u32 = 1 << 31;

fn pack(sym: EncSym) -> u32 {
    match sym {
        EncSym::Dist(d) => {
            assert!(d < STATIC_BIT as usize, "distance {d} too large");
            d as u32
        }
        EncSym::Static(c) => STATIC_BIT | c as u32,
    }
}

fn unpack(key: u32) -> EncSym {
    if key & STATIC_BIT == 0 {
        EncSym::Dist(key as usize)
    } else {
        EncSym::Static(char::from_u32(key & !STATIC_BIT).expect("packed a valid char"))
    }
}

impl SymMap {
    pub(crate) fn get(&self, sym: EncSym) -> Option<Slot> {
        let key = pack(sym);
        self.0
            .binary_search_by_key(&key, |&(k, _)| k)
            .ok()
            .map(|i| self.0[i].1 as Slot)
    }

    /// Returns the previous target if `sym` was already present.
    pub(crate) fn insert(&mut self, sym: EncSym, slot: Slot) -> Option<Slot> {
        let key = pack(sym);
        let slot = u32::try_from(slot).expect("text too long");
        match self.0.binary_search_by_key(&key, |&(k, _)| k) {
            Ok(i) => Some(std::mem::replace(&mut self.0[i].1, slot) as Slot),
            Err(i) => {
                self.0.insert(i, (key, slot));
                None
            }
        }
    }

    pub(crate) fn iter(&self) -> impl DoubleEndedIterator<Item = (EncSym, Slot)> + '_ {
        self.0.iter().map(|&(k, v)| (unpack(k), v as Slot))
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn values(&self) -> impl DoubleEndedIterator<Item = Slot> + '_ {
        self.0.iter().map(|&(_, v)| v as Slot)
    }
}

impl Node {
    pub(crate) fn root() -> Self {
        Node {
            parent: NONE,
            depth: 0,
            label: NONE,
            slink: NONE,
            children: SymMap::default(),
            rs_out: SymMap::default(),
        }
    }

    pub(crate) fn new(parent: Slot, depth: usize, label: EncSym, slink: Option<Slot>) -> Self {
        Node {
            parent: pack_slot(Some(parent)),
            depth: u32::try_from(depth).expect("text too long"),
            label: pack(label),
            slink: pack_slot(slink),
            children: SymMap::default(),
            rs_out: SymMap::default(),
        }
    }

    /// `None` for the root, whose parent is the auxiliary bottom node.
    #[inline]
    pub(crate) fn parent(&self) -> Option<Slot> {
        unpack_slot(self.parent)
    }

    #[inline]
    pub(crate) fn depth(&self) -> usize {
        self.depth as usize
    }

    #[inline]
    pub(crate) fn label(&self) -> Option<EncSym> {
        (self.label != NONE).then(|| unpack(self.label))
    }

    #[inline]
    pub(crate) fn slink(&self) -> Option<Slot> {
        unpack_slot(self.slink)
    }

    pub(crate) fn set_slink(&mut self, s: Slot) {
        self.slink = pack_slot(Some(s));
    }
}

/// Which of the three insertion cases a step took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertCase {
    /// The new character is static.
    Static,
    /// A parameterized character that does not occur in the old text.
    FirstOccurrence,
    /// A parameterized character whose next occurrence is `d` positions to
    /// the right of the new front.
    Repeat { d: usize },
}

/// One node examined while climbing toward a usable reversed suffix link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClimbStep {
    pub node: NodeId,
    pub tested: EncSym,
    pub hit: bool,
}

/// What a single `push_front` did. Ids are relative to the text after the
/// step unless the trace came from [`Heap::build_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertTrace {
    pub case: InsertCase,
    pub new_node: NodeId,
    /// Nodes examined, starting at the previously inserted leaf. When the
    /// climb reaches the bottom node the last step names [`NodeId::BOTTOM`].
    pub climb: Vec<ClimbStep>,
    /// The ancestor whose link was followed.
    pub link_source: NodeId,
    /// The link target, which becomes the parent of the new node.
    pub attached_to: NodeId,
    /// Source and label of the single reversed suffix link created.
    pub new_link_from: NodeId,
    pub new_link_label: EncSym,
}

impl InsertTrace {
    fn shift(&mut self, by: usize) {
        let f = |v: &mut NodeId| {
            if *v != NodeId::ROOT && !v.is_bottom() {
                v.0 += by;
            }
        };
        f(&mut self.new_node);
        f(&mut self.link_source);
        f(&mut self.attached_to);
        f(&mut self.new_link_from);
        for step in &mut self.climb {
            f(&mut step.node);
        }
    }
}

/// A right-to-left online parameterized position heap.
#[derive(Debug, Clone)]
pub struct Heap {
    pub(crate) alphabet: Alphabet,
    pub(crate) nodes: Vec<Node>,
    /// `chars[k]` is the character at slot k; index 0 is unused.
    pub(crate) chars: Vec<char>,
    /// Distance from slot k to the previous occurrence (further left, so a
    /// larger slot) of the same parameterized character; 0 if none.
    pub(crate) prev_dist: Vec<usize>,
    pub(crate) registry: OccRegistry,
    pub(crate) last: Slot,
    pub(crate) augmentation: Option<Augmentation>,
    climb_visits: u64,
    pub(crate) descent_visits: u64,
}

impl PartialEq for Heap {
    /// Structural equality; work counters are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.nodes == other.nodes
            && self.chars == other.chars
            && self.prev_dist == other.prev_dist
            && self.registry == other.registry
            && self.last == other.last
            && self.augmentation == other.augmentation
    }
}

impl Eq for Heap {}

impl Heap {
    /// The heap of the empty text: the root alone.
    pub fn new(alphabet: Alphabet) -> Self {
        Heap {
            alphabet,
            nodes: vec![Node::root()],
            chars: vec!['\0'],
            prev_dist: vec![0],
            registry: OccRegistry::new(),
            last: ROOT,
            augmentation: None,
            climb_visits: 0,
            descent_visits: 0,
        }
    }

    /// Builds the heap of `text` by prepending its characters right to left.
    pub fn build(text: &str, alphabet: Alphabet) -> Self {
        let chars: Vec<char> = text.chars().collect();
        Self::from_chars(&chars, alphabet)
    }

    pub fn from_chars(text: &[char], alphabet: Alphabet) -> Self {
        let mut heap = Heap::new(alphabet);
        heap.reserve(text.len());
        for &c in text.iter().rev() {
            heap.insert(c, None);
        }
        heap
    }

    /// Like [`Heap::from_chars`], also returning one trace per step with ids
    /// expressed as positions of the final text. `traces[k]` describes the
    /// insertion of position `n - k`.
    pub fn build_traced(text: &[char], alphabet: Alphabet) -> (Self, Vec<InsertTrace>) {
        let n = text.len();
        let mut heap = Heap::new(alphabet);
        let mut traces = Vec::with_capacity(n);
        for (k, &c) in text.iter().rev().enumerate() {
            let mut trace = heap.push_front_traced(c);
            trace.shift(n - (k + 1));
            traces.push(trace);
        }
        (heap, traces)
    }

    pub fn reserve(&mut self, additional: usize) {
        self.nodes.reserve(additional);
        self.chars.reserve(additional);
        self.prev_dist.reserve(additional);
    }

    /// Prepends `c` to the text and inserts the node for the new first
    /// position. Returns its id, which is always 1.
    pub fn push_front(&mut self, c: char) -> NodeId {
        self.insert(c, None);
        NodeId(1)
    }

    pub fn push_front_traced(&mut self, c: char) -> InsertTrace {
        let mut climb = Vec::new();
        let mut trace = self.insert(c, Some(&mut climb));
        trace.climb = climb;
        trace
    }

    fn insert(&mut self, c: char, mut record: Option<&mut Vec<ClimbStep>>) -> InsertTrace {
        let new_slot = self.nodes.len();
        let class = self.alphabet.classify(c);
        let case = match class {
            CharClass::Static => InsertCase::Static,
            CharClass::Param => match self.registry.next_dist(new_slot, c) {
                Some(d) => InsertCase::Repeat { d },
                None => InsertCase::FirstOccurrence,
            },
        };

        // Climb from the last inserted node (ancestor-or-self) to the lowest
        // node with a link for the phase label. Bottom links to the root on
        // every static label and on distance 0.
        let mut below: Option<Slot> = None;
        let mut cur = Some(self.last);
        let mut visits: u64 = 0;
        let (source, target) = loop {
            visits += 1;
            let Some(v) = cur else {
                if let Some(rec) = record.as_deref_mut() {
                    let tested = match case {
                        InsertCase::Static => EncSym::Static(c),
                        _ => EncSym::Dist(0),
                    };
                    rec.push(ClimbStep {
                        node: NodeId::BOTTOM,
                        tested,
                        hit: true,
                    });
                }
                break (None, ROOT);
            };
            let node = &self.nodes[v];
            let want = match case {
                InsertCase::Static => EncSym::Static(c),
                InsertCase::Repeat { d } if node.depth() >= d => EncSym::Dist(d),
                _ => EncSym::Dist(0),
            };
            let hit = node.rs_out.get(want);
            if let Some(rec) = record.as_deref_mut() {
                rec.push(ClimbStep {
                    node: self.id_of_slot_after(v, new_slot),
                    tested: want,
                    hit: hit.is_some(),
                });
            }
            if let Some(u) = hit {
                break (Some(v), u);
            }
            below = Some(v);
            cur = node.parent();
        };
        // the link target
        visits += 1;
        if new_slot > 1 {
            self.climb_visits += visits;
        }
        // The previous leaf never has outgoing links, so the first node
        // examined always misses and `below` is set.
        let z = below.expect("climb hit at the last inserted leaf");

        self.chars.push(c);
        self.prev_dist.push(0);
        if let InsertCase::Repeat { d } = case {
            self.prev_dist[new_slot - d] = d;
        }

        let depth = self.nodes[target].depth() + 1;
        let label = self.window_sym(new_slot, depth);
        let link_label = match case {
            InsertCase::Static => EncSym::Static(c),
            InsertCase::Repeat { d } if d < depth => EncSym::Dist(d),
            _ => EncSym::Dist(0),
        };
        self.nodes.push(Node::new(target, depth, label, Some(z)));
        let fresh = self.nodes[target].children.insert(label, new_slot).is_none();
        debug_assert!(fresh, "duplicate child edge");
        let fresh = self.nodes[z].rs_out.insert(link_label, new_slot).is_none();
        debug_assert!(fresh, "duplicate reversed suffix link");

        if class == CharClass::Param {
            self.registry.push_front(new_slot, c);
        }
        self.last = new_slot;
        self.augmentation = None;

        InsertTrace {
            case,
            new_node: NodeId(1),
            climb: Vec::new(),
            link_source: source.map_or(NodeId::BOTTOM, |s| self.id_of_slot(s)),
            attached_to: self.id_of_slot(target),
            new_link_from: self.id_of_slot(z),
            new_link_label: link_label,
        }
    }

    /// Symbol `offset` of the encoded suffix starting at `slot`.
    #[inline]
    pub(crate) fn window_sym(&self, slot: Slot, offset: usize) -> EncSym {
        let q = slot + 1 - offset;
        let c = self.chars[q];
        if !self.alphabet.is_param(c) {
            return EncSym::Static(c);
        }
        let d = self.prev_dist[q];
        if d != 0 && d < offset {
            EncSym::Dist(d)
        } else {
            EncSym::Dist(0)
        }
    }

    // Id of `slot` once the node at `new_slot` exists.
    fn id_of_slot_after(&self, slot: Slot, new_slot: Slot) -> NodeId {
        if slot == ROOT {
            NodeId::ROOT
        } else {
            NodeId(new_slot + 1 - slot)
        }
    }

    #[inline]
    pub(crate) fn id_of_slot(&self, slot: Slot) -> NodeId {
        if slot == ROOT {
            NodeId::ROOT
        } else {
            NodeId(self.len() + 1 - slot)
        }
    }

    #[inline]
    pub(crate) fn slot_of(&self, v: NodeId) -> Slot {
        assert!(v.0 <= self.len(), "node id {} out of range 0..={}", v.0, self.len());
        if v == NodeId::ROOT {
            ROOT
        } else {
            self.len() + 1 - v.0
        }
    }

    #[inline]
    pub(crate) fn slot_of_pos(&self, p: usize) -> Slot {
        self.len() + 1 - p
    }

    /// Length of the text indexed so far.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of nodes including the root, excluding the bottom node.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The indexed text.
    pub fn text(&self) -> Vec<char> {
        self.chars[1..].iter().rev().copied().collect()
    }

    /// Character at 1-based position `p`.
    pub fn char_at(&self, p: usize) -> char {
        assert!(p >= 1 && p <= self.len(), "position {p} out of range");
        self.chars[self.slot_of_pos(p)]
    }

    /// Distance from position `p` to the previous occurrence of the same
    /// parameterized character, maintained incrementally.
    pub fn prev_dist_at(&self, p: usize) -> Option<usize> {
        let d = self.prev_dist[self.slot_of_pos(p)];
        (d != 0).then_some(d)
    }

    /// The distance arrays of the current text.
    pub fn dist_arrays(&self) -> PrevDistArrays {
        PrevDistArrays::from_prev(self.prev_dist[1..].iter().rev().copied().collect())
    }

    /// Node id of the node inserted most recently (the root for an empty
    /// text).
    pub fn last_inserted(&self) -> NodeId {
        self.id_of_slot(self.last)
    }

    /// Total nodes visited by all insertions after the first, counting the
    /// climbed path (bottom included) and the link target.
    pub fn climb_visits(&self) -> u64 {
        self.climb_visits
    }

    /// The node for position `i`; id 0 is the root.
    pub fn node_of_id(&self, i: usize) -> NodeId {
        assert!(i <= self.len(), "node id {i} out of range 0..={}", self.len());
        NodeId(i)
    }

    pub fn parent(&self, v: NodeId) -> NodeId {
        match self.nodes[self.slot_of(v)].parent() {
            Some(p) => self.id_of_slot(p),
            None => NodeId::BOTTOM,
        }
    }

    pub fn depth(&self, v: NodeId) -> usize {
        self.nodes[self.slot_of(v)].depth()
    }

    /// Depth with the bottom node at -1.
    pub fn signed_depth(&self, v: NodeId) -> isize {
        if v.is_bottom() {
            -1
        } else {
            self.depth(v) as isize
        }
    }

    /// Label of the edge entering `v`; `None` for the root.
    pub fn label(&self, v: NodeId) -> Option<EncSym> {
        self.nodes[self.slot_of(v)].label()
    }

    pub fn child(&self, v: NodeId, sym: EncSym) -> Option<NodeId> {
        self.nodes[self.slot_of(v)]
            .children
            .get(sym)
            .map(|s| self.id_of_slot(s))
    }

    /// Children of `v` in symbol order.
    pub fn children(&self, v: NodeId) -> impl Iterator<Item = (EncSym, NodeId)> + '_ {
        self.nodes[self.slot_of(v)]
            .children
            .iter()
            .map(|(sym, s)| (sym, self.id_of_slot(s)))
    }

    /// Outgoing reversed suffix links of `v` in label order.
    pub fn rslinks(&self, v: NodeId) -> impl Iterator<Item = (EncSym, NodeId)> + '_ {
        self.nodes[self.slot_of(v)]
            .rs_out
            .iter()
            .map(|(sym, s)| (sym, self.id_of_slot(s)))
    }

    pub fn rslink(&self, v: NodeId, sym: EncSym) -> Option<NodeId> {
        self.nodes[self.slot_of(v)].rs_out.get(sym).map(|s| self.id_of_slot(s))
    }

    /// Forward suffix link: the source of the unique reversed suffix link
    /// entering `v`. `None` for the root.
    pub fn slink(&self, v: NodeId) -> Option<NodeId> {
        self.nodes[self.slot_of(v)].slink().map(|s| self.id_of_slot(s))
    }

    /// Labels on the path from the root to `v`.
    pub fn path_label(&self, v: NodeId) -> Vec<EncSym> {
        let mut out = Vec::with_capacity(self.depth(v));
        let mut s = self.slot_of(v);
        while let Some(label) = self.nodes[s].label() {
            out.push(label);
            s = self.nodes[s].parent().expect("labelled node has a parent");
        }
        out.reverse();
        out
    }

    /// All node ids in preorder, children visited in symbol order.
    pub fn preorder(&self) -> Vec<NodeId> {
        self.preorder_slots().into_iter().map(|s| self.id_of_slot(s)).collect()
    }

    pub(crate) fn preorder_slots(&self) -> Vec<Slot> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![ROOT];
        while let Some(s) = stack.pop() {
            order.push(s);
            stack.extend(self.nodes[s].children.values().rev());
        }
        order
    }

    /// Walks `seq` from the root as far as the heap allows. Returns the
    /// deepest node reached and the number of symbols consumed.
    pub fn walk(&self, seq: &[EncSym]) -> (NodeId, usize) {
        let mut s = ROOT;
        let mut k = 0;
        for sym in seq {
            match self.nodes[s].children.get(*sym) {
                Some(c) => {
                    s = c;
                    k += 1;
                }
                None => break,
            }
        }
        (self.id_of_slot(s), k)
    }

    /// Whether `seq` is spelled by a path from the root.
    pub fn represents(&self, seq: &[EncSym]) -> bool {
        self.walk(seq).1 == seq.len()
    }
}
