//! Graphviz export.

use std::fmt::Write as _;

use crate::alphabet::EncSym;
use crate::heap::{Heap, NodeId};

#[derive(Debug, Clone, Copy, Default)]
pub struct DotOptions {
    /// Draw reversed suffix links as dashed red edges.
    pub rslinks: bool,
    /// Draw maximal reach pointers as bold edges. Ignored unless the heap is
    /// augmented; pointers to the node itself are omitted.
    pub mrp: bool,
}

fn quote_sym(sym: EncSym) -> String {
    let raw = sym.to_string();
    let mut out = String::with_capacity(raw.len());
    for c in raw.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

impl Heap {
    /// Renders the heap as a DOT digraph. Output depends only on the heap's
    /// structure: nodes and edges come in preorder with children and links in
    /// symbol order.
    pub fn to_dot(&self, opts: DotOptions) -> String {
        let order = self.preorder();
        let mut out = String::new();
        out.push_str("digraph pph {\n");
        out.push_str("  node [shape=circle];\n");
        for &v in &order {
            let _ = writeln!(out, "  n{} [label=\"{}\"];", v.0, v.0);
        }
        for &v in &order {
            for (sym, c) in self.children(v) {
                let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", v.0, c.0, quote_sym(sym));
            }
        }
        if opts.rslinks {
            for &v in &order {
                for (sym, u) in self.rslinks(v) {
                    let _ = writeln!(
                        out,
                        "  n{} -> n{} [style=dashed, color=red, fontcolor=red, constraint=false, label=\"{}\"];",
                        v.0,
                        u.0,
                        quote_sym(sym)
                    );
                }
            }
        }
        if opts.mrp && self.is_augmented() {
            for i in 1..=self.len() {
                let target = self.mrp(i);
                if target != NodeId(i) {
                    let _ = writeln!(
                        out,
                        "  n{} -> n{} [style=bold, color=blue, constraint=false];",
                        i, target.0
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
