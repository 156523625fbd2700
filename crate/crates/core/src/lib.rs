//! Parameterized position heaps built right to left.
//!
//! Two strings *parameterized-match* when a bijection that fixes the static
//! characters maps one onto the other. This crate indexes a text so that all
//! parameterized occurrences of a pattern can be listed quickly:
//!
//! ```
//! use ppheap::{Alphabet, Heap};
//!
//! let mut heap = Heap::build("abzaxxbyaxxbazzax", Alphabet::new("xyz".chars()));
//! heap.augment();
//! assert_eq!(heap.find_str("yazzbx").unwrap(), vec![3]);
//! assert_eq!(heap.find_str("yaxxba").unwrap(), vec![8]);
//! ```
//!
//! The heap is built online by prepending characters ([`Heap::push_front`]),
//! in time O(n log(σ + π)) for σ static and π parameterized characters.
//! Queries need the maximal reach pointers computed by [`Heap::augment`].

pub mod alphabet;
pub mod augment;
pub mod dot;
pub mod fuzz;
pub mod heap;
pub mod index_file;
pub mod query;
pub mod random;

pub use alphabet::{
    display_encoding, p_match, prev_encode, reencode_at, window_prev_at, Alphabet, CharClass, EncSym, OccRegistry,
    PrevDistArrays,
};
pub use dot::DotOptions;
pub use heap::{ClimbStep, Heap, InsertCase, InsertTrace, NodeId};
pub use index_file::IndexError;
pub use query::{naive_match, QueryError, Segment, Segmentation};
