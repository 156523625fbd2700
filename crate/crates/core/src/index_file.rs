//! Line-oriented text serialization of a heap.
//!
//! ```text
//! PPHv1
//! n <length>
//! pi <parameterized characters>
//! augmented <0|1>
//! node <id> <parent|-> <label|-> <slink|-> <mrp|->    one per id 0..=n
//! text <indexed text>
//! ```
//!
//! Labels are `s:<char>` or `d:<distance>`. Reversed suffix links are not
//! stored: each non-root node has exactly one incoming link, whose source is
//! the `slink` field and whose label follows from the node's path label. The
//! trailing `text` line carries the indexed text, which queries need for
//! their distance checks; it runs to the end of the file.

use std::fmt::Write as _;

use thiserror::Error;

use crate::alphabet::{Alphabet, EncSym, OccRegistry};
use crate::heap::{Heap, Node, Slot, ROOT};

pub const MAGIC: &str = "PPHv1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("inconsistent index: {0}")]
    Integrity(String),
    #[error("parameterized alphabet contains a line break")]
    UnserializableAlphabet,
}

fn integrity<T>(msg: impl Into<String>) -> Result<T, IndexError> {
    Err(IndexError::Integrity(msg.into()))
}

fn write_sym(out: &mut String, sym: EncSym) {
    match sym {
        EncSym::Static(c) => {
            out.push_str("s:");
            out.push(c);
        }
        EncSym::Dist(d) => {
            let _ = write!(out, "d:{d}");
        }
    }
}

fn write_opt(out: &mut String, id: Option<usize>) {
    match id {
        Some(i) => {
            let _ = write!(out, "{i}");
        }
        None => out.push('-'),
    }
}

impl Heap {
    /// Serializes the heap, including maximal reach pointers when augmented.
    pub fn to_index_string(&self) -> Result<String, IndexError> {
        if self.alphabet.params().any(|c| c == '\n') {
            return Err(IndexError::UnserializableAlphabet);
        }
        let n = self.len();
        let mut out = String::with_capacity(32 * (n + 1));
        out.push_str(MAGIC);
        out.push('\n');
        let _ = writeln!(out, "n {n}");
        out.push_str("pi ");
        out.extend(self.alphabet.params());
        out.push('\n');
        let _ = writeln!(out, "augmented {}", u8::from(self.is_augmented()));
        for id in 0..=n {
            let slot = if id == 0 { ROOT } else { n + 1 - id };
            let node = &self.nodes[slot];
            let _ = write!(out, "node {id} ");
            write_opt(&mut out, node.parent().map(|p| self.id_of_slot(p).0));
            out.push(' ');
            match node.label() {
                Some(sym) => write_sym(&mut out, sym),
                None => out.push('-'),
            }
            out.push(' ');
            write_opt(&mut out, node.slink().map(|s| self.id_of_slot(s).0));
            out.push(' ');
            let mrp = match &self.augmentation {
                Some(aug) if id != 0 => Some(self.id_of_slot(aug.mrp(slot)).0),
                _ => None,
            };
            write_opt(&mut out, mrp);
            out.push('\n');
        }
        out.push_str("text ");
        out.extend(self.chars[1..].iter().rev());
        out.push('\n');
        Ok(out)
    }

    /// Parses and validates an index produced by [`Heap::to_index_string`].
    pub fn from_index_str(src: &str) -> Result<Heap, IndexError> {
        Parser::new(src).parse()
    }
}

struct Parser<'a> {
    rest: &'a str,
    line: usize,
}

struct NodeLine {
    parent: Option<usize>,
    label: Option<EncSym>,
    slink: Option<usize>,
    mrp: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { rest: src, line: 1 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, IndexError> {
        Err(IndexError::Parse {
            line: self.line,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, lit: &str) -> Result<(), IndexError> {
        match self.rest.strip_prefix(lit) {
            Some(r) => {
                self.rest = r;
                Ok(())
            }
            None => self.err(format!("expected `{}`", lit.escape_debug())),
        }
    }

    fn newline(&mut self) -> Result<(), IndexError> {
        self.expect("\n")?;
        self.line += 1;
        Ok(())
    }

    /// A space-free token.
    fn token(&mut self) -> Result<&'a str, IndexError> {
        let end = self.rest.find([' ', '\n']).unwrap_or(self.rest.len());
        if end == 0 {
            return self.err("missing field");
        }
        let (tok, r) = self.rest.split_at(end);
        self.rest = r;
        Ok(tok)
    }

    fn number(&mut self) -> Result<usize, IndexError> {
        let tok = self.token()?;
        tok.parse().or_else(|_| self.err(format!("bad number `{tok}`")))
    }

    fn opt_number(&mut self) -> Result<Option<usize>, IndexError> {
        if self.rest.starts_with("- ") || self.rest.starts_with("-\n") {
            self.rest = &self.rest[1..];
            return Ok(None);
        }
        self.number().map(Some)
    }

    fn label(&mut self) -> Result<Option<EncSym>, IndexError> {
        if let Some(r) = self.rest.strip_prefix("s:") {
            let mut it = r.chars();
            let Some(c) = it.next() else {
                return self.err("truncated static label");
            };
            if c == '\n' {
                self.line += 1;
            }
            self.rest = it.as_str();
            return Ok(Some(EncSym::Static(c)));
        }
        if let Some(r) = self.rest.strip_prefix("d:") {
            self.rest = r;
            return Ok(Some(EncSym::Dist(self.number()?)));
        }
        match self.rest.strip_prefix('-') {
            Some(r) => {
                self.rest = r;
                Ok(None)
            }
            None => self.err("expected `s:<char>`, `d:<int>` or `-`"),
        }
    }

    fn node_line(&mut self, id: usize) -> Result<NodeLine, IndexError> {
        self.expect("node ")?;
        let got = self.number()?;
        if got != id {
            return self.err(format!("expected node {id}, found {got}"));
        }
        self.expect(" ")?;
        let parent = self.opt_number()?;
        self.expect(" ")?;
        let label = self.label()?;
        self.expect(" ")?;
        let slink = self.opt_number()?;
        self.expect(" ")?;
        let mrp = self.opt_number()?;
        self.newline()?;
        Ok(NodeLine {
            parent,
            label,
            slink,
            mrp,
        })
    }

    fn parse(mut self) -> Result<Heap, IndexError> {
        self.expect(MAGIC)?;
        self.newline()?;
        self.expect("n ")?;
        let n = self.number()?;
        self.newline()?;
        self.expect("pi ")?;
        let end = self.rest.find('\n').unwrap_or(self.rest.len());
        let alphabet = Alphabet::new(self.rest[..end].chars());
        self.rest = &self.rest[end..];
        self.newline()?;
        self.expect("augmented ")?;
        let augmented = match self.token()? {
            "0" => false,
            "1" => true,
            other => return self.err(format!("bad augmented flag `{other}`")),
        };
        self.newline()?;
        let mut lines = Vec::with_capacity(n + 1);
        for id in 0..=n {
            lines.push(self.node_line(id)?);
        }
        self.expect("text ")?;
        let text_line = self.line;
        let raw = self.rest.strip_suffix('\n').unwrap_or(self.rest);
        let text: Vec<char> = raw.chars().collect();
        if text.len() != n {
            return Err(IndexError::Parse {
                line: text_line,
                msg: format!("text has {} characters, header says {n}", text.len()),
            });
        }
        assemble(n, alphabet, augmented, lines, &text)
    }
}

fn assemble(
    n: usize,
    alphabet: Alphabet,
    augmented: bool,
    lines: Vec<NodeLine>,
    text: &[char],
) -> Result<Heap, IndexError> {
    let slot_of = |id: usize| if id == 0 { ROOT } else { n + 1 - id };
    let root = &lines[0];
    if root.parent.is_some() || root.label.is_some() || root.slink.is_some() || root.mrp.is_some() {
        return integrity("root line must be `node 0 - - - -`");
    }

    let mut heap = Heap::new(alphabet);
    heap.reserve(n);
    // Parents carry larger ids, so descending ids visit parents first.
    for id in (1..=n).rev() {
        let line = &lines[id];
        let (Some(parent), Some(label), Some(_)) = (line.parent, line.label, line.slink) else {
            return integrity(format!("node {id} lacks a parent, label or suffix link"));
        };
        if parent != 0 && parent <= id {
            return integrity(format!("node {id} has parent {parent}; ids must decrease downward"));
        }
        if parent > n {
            return integrity(format!("node {id} has unknown parent {parent}"));
        }
        let p = slot_of(parent);
        let depth = heap.nodes[p].depth() + 1;
        let slot = heap.nodes.len();
        if heap.nodes[p].children.insert(label, slot).is_some() {
            return integrity(format!("node {parent} has two children labelled {label}"));
        }
        heap.nodes.push(Node::new(p, depth, label, None));
    }

    // Text-derived state.
    let mut registry = OccRegistry::new();
    let mut prev_dist = vec![0usize; n + 1];
    heap.chars = std::iter::once('\0').chain(text.iter().rev().copied()).collect();
    for slot in 1..=n {
        let c = heap.chars[slot];
        if heap.alphabet.is_param(c) {
            if let Some(d) = registry.next_dist(slot, c) {
                prev_dist[slot - d] = d;
            }
            registry.push_front(slot, c);
        }
    }
    heap.prev_dist = prev_dist;
    heap.registry = registry;
    heap.last = n;

    for slot in 1..=n {
        let depth = heap.nodes[slot].depth();
        if depth > slot {
            return integrity(format!("node {} deeper than its suffix", n + 1 - slot));
        }
        if heap.nodes[slot].label() != Some(heap.window_sym(slot, depth)) {
            return integrity(format!("node {} label disagrees with the text", n + 1 - slot));
        }
    }

    // First symbol on each path, and the first offset s >= 2 whose symbol
    // points back to offset 1. Both are inherited from the parent.
    let mut head: Vec<Option<EncSym>> = vec![None; n + 1];
    let mut back_to_first: Vec<Option<usize>> = vec![None; n + 1];
    for slot in 1..=n {
        let node = &heap.nodes[slot];
        let p = node.parent().unwrap();
        if p == ROOT {
            head[slot] = node.label();
        } else {
            head[slot] = head[p];
            back_to_first[slot] = back_to_first[p]
                .or_else(|| (node.label() == Some(EncSym::Dist(node.depth() - 1))).then_some(node.depth()));
        }
    }

    for id in 1..=n {
        let slot = slot_of(id);
        let z_id = lines[id].slink.unwrap();
        if z_id > n {
            return integrity(format!("node {id} has unknown suffix link {z_id}"));
        }
        let z = slot_of(z_id);
        if heap.nodes[z].depth() + 1 != heap.nodes[slot].depth() {
            return integrity(format!("suffix link of node {id} skips depth"));
        }
        let link_label = match head[slot] {
            Some(EncSym::Static(c)) => EncSym::Static(c),
            _ => EncSym::Dist(back_to_first[slot].map_or(0, |s| s - 1)),
        };
        if heap.nodes[z].rs_out.insert(link_label, slot).is_some() {
            return integrity(format!("node {z_id} has two links labelled {link_label}"));
        }
        heap.nodes[slot].set_slink(z);
    }

    if augmented {
        let mut mrp: Vec<Slot> = vec![ROOT; n + 1];
        for (id, line) in lines.iter().enumerate().skip(1) {
            match line.mrp {
                Some(m) if (1..=n).contains(&m) => mrp[slot_of(id)] = slot_of(m),
                _ => return integrity(format!("node {id} lacks a valid maximal reach pointer")),
            }
        }
        heap.install_mrp(mrp);
    } else if lines.iter().any(|l| l.mrp.is_some()) {
        return integrity("maximal reach pointers present in a non-augmented index");
    }
    Ok(heap)
}
