//! Graphviz export. Formula trees are drawn top-down, links as dashed arcs
//! between leaves, anchors as points.

use std::fmt::Write;

use crate::extended_net::{ExtendedNet, Node};
use crate::formula::{Formula, LeafRef, Path, Sequent};
use crate::simple_net::SimpleNet;

fn node_id(l: &LeafRef) -> String {
    format!("n{}_{}", l.i, if l.path.is_empty() { "root".to_string() } else { l.path.to_string() })
}

fn tree(out: &mut String, i: usize, f: &Formula, p: Path) {
    let me = node_id(&LeafRef::new(i, p));
    let (label, kids) = match f {
        Formula::And(l, r) => ("∧".to_string(), Some((l, r))),
        Formula::Or(l, r) => ("∨".to_string(), Some((l, r))),
        leaf => (leaf.to_string(), None),
    };
    let shape = if kids.is_some() { "plaintext" } else { "box" };
    writeln!(out, "    {me} [label=\"{label}\", shape={shape}];").expect("string write");
    if let Some((l, r)) = kids {
        for (d, c) in [(crate::formula::Dir::L, l), (crate::formula::Dir::R, r)] {
            let q = p.child(d);
            tree(out, i, c, q);
            writeln!(out, "    {me} -> {} [arrowhead=none];", node_id(&LeafRef::new(i, q))).expect("string write");
        }
    }
}

fn forest(out: &mut String, s: &Sequent) {
    for (i, f) in s.formulas().iter().enumerate() {
        writeln!(out, "  subgraph cluster_{i} {{\n    style=invis;").expect("string write");
        tree(out, i, f, Path::ROOT);
        out.push_str("  }\n");
    }
}

fn arc(out: &mut String, a: &str, b: &str, count: u64) {
    let label = if count > 1 { format!(", label=\"×{count}\"") } else { String::new() };
    writeln!(out, "  {a} -> {b} [style=dashed, color=blue, constraint=false{label}];").expect("string write");
}

pub fn simple_to_dot(n: &SimpleNet) -> String {
    let mut out = String::from("digraph net {\n  rankdir=TB;\n  splines=curved;\n");
    forest(&mut out, n.sequent());
    for (a, b) in n.links() {
        arc(&mut out, &node_id(a), &node_id(b), 1);
    }
    out.push_str("}\n");
    out
}

pub fn extended_to_dot(n: &ExtendedNet) -> String {
    let mut out = String::from("digraph net {\n  rankdir=TB;\n  splines=curved;\n");
    forest(&mut out, n.sequent());
    for (k, label) in n.anchors() {
        writeln!(out, "  k{k} [shape=point, width=0.15, xlabel=\"{label}\"];").expect("string write");
    }
    let name = |x: &Node| match x {
        Node::Leaf(l) => node_id(l),
        Node::Anchor(k) => format!("k{k}"),
    };
    for ((a, b), c) in n.links() {
        arc(&mut out, &name(a), &name(b), *c);
    }
    out.push_str("}\n");
    out
}
