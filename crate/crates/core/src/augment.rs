//! Post-construction augmentation: preorder intervals for O(1) subtree tests
//! and maximal reach pointers.
//!
//! `mrp(i)` is the deepest node whose path label is a prefix of the encoded
//! suffix starting at `i`. Positions are processed left to right: the node
//! for position 1 is its own maximal reach, and every later search starts at
//! the forward suffix link of the previous answer, which is already a prefix
//! of the next suffix. The descents telescope to linear total work.

use crate::heap::{Heap, NodeId, Slot, ROOT};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Augmentation {
    /// Preorder index of each slot and the largest index in its subtree.
    interval: Vec<(u32, u32)>,
    /// Slots in preorder.
    order: Vec<u32>,
    /// Maximal reach per slot; the root entry is unused.
    mrp: Vec<u32>,
}

impl Augmentation {
    #[inline]
    pub(crate) fn contains(&self, ancestor: Slot, node: Slot) -> bool {
        let (lo, hi) = self.interval[ancestor];
        let p = self.interval[node].0;
        lo <= p && p <= hi
    }

    #[inline]
    pub(crate) fn mrp(&self, slot: Slot) -> Slot {
        self.mrp[slot] as Slot
    }

    /// Slots of the subtree rooted at `slot`, in preorder.
    pub(crate) fn subtree(&self, slot: Slot) -> impl Iterator<Item = Slot> + '_ {
        let (lo, hi) = self.interval[slot];
        self.order[lo as usize..=hi as usize].iter().map(|&s| s as Slot)
    }
}

impl Heap {
    /// Computes preorder intervals and maximal reach pointers. A later
    /// `push_front` discards them.
    pub fn augment(&mut self) {
        if self.augmentation.is_some() {
            return;
        }
        let (interval, order) = self.compute_preorder();
        let (mrp, descent_visits) = self.compute_mrp();
        self.descent_visits = descent_visits;
        self.augmentation = Some(Augmentation { interval, order, mrp });
    }

    /// Installs maximal reach pointers loaded from elsewhere, recomputing the
    /// preorder.
    pub(crate) fn install_mrp(&mut self, mrp: Vec<Slot>) {
        let (interval, order) = self.compute_preorder();
        let mrp = mrp.into_iter().map(|s| s as u32).collect();
        self.augmentation = Some(Augmentation { interval, order, mrp });
    }

    pub fn is_augmented(&self) -> bool {
        self.augmentation.is_some()
    }

    fn compute_preorder(&self) -> (Vec<(u32, u32)>, Vec<u32>) {
        let n = self.nodes.len();
        let mut interval = vec![(0u32, 0u32); n];
        let mut order = Vec::with_capacity(n);
        // Entries with the top bit set close the subtree of their slot.
        const CLOSE: usize = 1 << (usize::BITS - 1);
        let mut stack = vec![ROOT];
        while let Some(e) = stack.pop() {
            if e & CLOSE != 0 {
                interval[e & !CLOSE].1 = order.len() as u32 - 1;
                continue;
            }
            interval[e].0 = order.len() as u32;
            order.push(e as u32);
            let children = &self.nodes[e].children;
            if children.is_empty() {
                interval[e].1 = interval[e].0;
            } else {
                stack.push(e | CLOSE);
                stack.extend(children.values().rev());
            }
        }
        (interval, order)
    }

    fn compute_mrp(&self) -> (Vec<u32>, u64) {
        let n = self.len();
        let mut mrp = vec![ROOT as u32; n + 1];
        if n == 0 {
            return (mrp, 0);
        }
        let mut visits = 0u64;
        // position 1 is slot n, and its node is a leaf
        let mut cur = n;
        mrp[n] = cur as u32;
        for slot in (1..n).rev() {
            let mut w = self.nodes[cur].slink().expect("non-root node has a suffix link");
            visits += 1;
            // The suffix at `slot` has exactly `slot` characters.
            while self.nodes[w].depth() < slot {
                let sym = self.window_sym(slot, self.nodes[w].depth() + 1);
                match self.nodes[w].children.get(sym) {
                    Some(c) => {
                        w = c;
                        visits += 1;
                    }
                    None => break,
                }
            }
            mrp[slot] = w as u32;
            cur = w;
        }
        (mrp, visits)
    }

    fn aug(&self) -> &Augmentation {
        self.augmentation
            .as_ref()
            .expect("heap is not augmented; call augment() first")
    }

    /// Maximal reach pointer of position `i`.
    ///
    /// # Panics
    ///
    /// If the heap is not augmented or `i` is not a text position.
    pub fn mrp(&self, i: usize) -> NodeId {
        assert!(i >= 1 && i <= self.len(), "position {i} out of range");
        self.id_of_slot(self.aug().mrp(self.slot_of_pos(i)))
    }

    /// Whether `ancestor` is an ancestor of `node` or `node` itself.
    pub fn subtree_contains(&self, ancestor: NodeId, node: NodeId) -> bool {
        self.aug().contains(self.slot_of(ancestor), self.slot_of(node))
    }

    /// Preorder interval `(in, out)` of `v`.
    pub fn preorder_interval(&self, v: NodeId) -> (usize, usize) {
        let (lo, hi) = self.aug().interval[self.slot_of(v)];
        (lo as usize, hi as usize)
    }

    /// Nodes visited by the last [`Heap::augment`]: one per starting suffix
    /// link plus one per descent step.
    pub fn descent_visits(&self) -> u64 {
        self.descent_visits
    }

    /// Ids of all nodes in the subtree of `v`, in preorder.
    pub fn subtree_ids(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.aug().subtree(self.slot_of(v)).map(|s| self.id_of_slot(s))
    }
}
