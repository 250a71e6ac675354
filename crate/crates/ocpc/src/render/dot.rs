//! Graphviz output. Identical models always produce identical bytes.

use std::fmt::Write as _;

use ocpc_core::discovery::{NetNode, PlaceKind};
use ocpc_core::{Ocdfg, Ocpn};

use super::fmt_seconds;
use super::json::place_id;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// One cluster per object type; edges labelled `frequency / mean duration`.
pub fn ocdfg(m: &Ocdfg, min_frequency: u64) -> String {
    let mut out = String::from(
        "digraph ocdfg {\n  rankdir=LR;\n  node [shape=box, style=\"rounded,filled\", fontname=\"Helvetica\"];\n",
    );
    for (i, (t, g)) in m.types.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let id = |a: &str| quote(&format!("{t}|{a}"));
        let _ = writeln!(out, "  subgraph cluster_{i} {{");
        let _ = writeln!(out, "    label={};\n    color=\"{color}\";", quote(t.as_str()));
        let start = quote(&format!("{t}|>start"));
        let end = quote(&format!("{t}|>end"));
        let _ = writeln!(
            out,
            "    {start} [shape=circle, label=\"\", width=0.2, fillcolor=\"{color}\"];"
        );
        let _ = writeln!(
            out,
            "    {end} [shape=doublecircle, label=\"\", width=0.2, fillcolor=\"{color}\"];"
        );
        for (a, n) in g.nodes.iter().filter(|(_, n)| n.frequency >= min_frequency) {
            let label = quote(&format!("{a}\n({})", n.frequency));
            let _ = writeln!(
                out,
                "    {} [label={label}, fillcolor=\"{color}33\", color=\"{color}\"];",
                id(a.as_str())
            );
        }
        for (a, f) in &g.start {
            let _ = writeln!(
                out,
                "    {start} -> {} [label=\"{f}\", color=\"{color}\"];",
                id(a.as_str())
            );
        }
        for ((a, b), s) in g.edges.iter().filter(|(_, s)| s.frequency >= min_frequency) {
            let label = quote(&format!("{} / {}", s.frequency, fmt_seconds(s.mean)));
            let _ = writeln!(
                out,
                "    {} -> {} [label={label}, color=\"{color}\"];",
                id(a.as_str()),
                id(b.as_str())
            );
        }
        for (a, f) in &g.end {
            let _ = writeln!(
                out,
                "    {} -> {end} [label=\"{f}\", color=\"{color}\"];",
                id(a.as_str())
            );
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// Places as circles per type, shared transitions as boxes; variable arcs
/// are drawn as double lines.
pub fn ocpn(net: &Ocpn) -> String {
    let mut out = String::from("digraph ocpn {\n  rankdir=LR;\n  node [fontname=\"Helvetica\"];\n");
    for a in &net.transitions {
        let _ = writeln!(
            out,
            "  {} [shape=box, label={}];",
            quote(&format!("t|{a}")),
            quote(a.as_str())
        );
    }
    for (i, (t, n)) in net.nets.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for (p, place) in n.places.iter().enumerate() {
            let label = match place.kind {
                PlaceKind::Source => t.to_string(),
                PlaceKind::Sink => String::new(),
                PlaceKind::Between(..) => String::new(),
            };
            let shape = if place.kind == PlaceKind::Sink {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(
                out,
                "  {} [shape={shape}, label={}, color=\"{color}\", width=0.3];",
                quote(&format!("p|{}", place_id(n, p))),
                quote(&label)
            );
        }
        let node = |x: &NetNode| match x {
            NetNode::Place(p) => quote(&format!("p|{}", place_id(n, *p))),
            NetNode::Transition(a) => quote(&format!("t|{a}")),
        };
        for arc in &n.arcs {
            let style = if arc.variable {
                format!("color=\"{color}:white:{color}\"")
            } else {
                format!("color=\"{color}\"")
            };
            let _ = writeln!(out, "  {} -> {} [{style}];", node(&arc.from), node(&arc.to));
        }
    }
    out.push_str("}\n");
    out
}
