//! Graphviz output.

use std::fmt::Write;

use crate::alphabet::PAD_TOKEN;
use crate::automaton::Automaton;
use crate::coloring::RegularColoring;
use crate::error::{Error, Result};
use crate::relation::AutomaticRelation;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The automaton's states and transitions; letters are shown as
/// comma-separated tuples, several letters on one edge separated by `|`.
pub fn automaton_to_dot(a: &Automaton) -> String {
    let codec = a.codec();
    let name = |d| if d == codec.pad() { PAD_TOKEN.to_string() } else { a.alphabet().name(d).to_string() };
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    for s in 0..a.num_states() as u32 {
        let shape = if a.is_accepting(s) { "doublecircle" } else { "circle" };
        writeln!(out, "  {s} [shape={shape}];").expect("write to string");
    }
    for (i, &s) in a.initial().iter().enumerate() {
        writeln!(out, "  init{i} [shape=point];\n  init{i} -> {s};").expect("write to string");
    }
    for s in 0..a.num_states() as u32 {
        let mut by_target: Vec<(u32, Vec<String>)> = Vec::new();
        for &(l, d) in a.transitions(s) {
            let label = codec.decode(l).into_iter().map(name).collect::<Vec<_>>().join(",");
            match by_target.iter_mut().find(|(t, _)| *t == d) {
                Some((_, v)) => v.push(label),
                None => by_target.push((d, vec![label])),
            }
        }
        for (d, labels) in by_target {
            writeln!(out, "  {s} -> {d} [label={}];", quote(&labels.join(" | "))).expect("write to string");
        }
    }
    out.push_str("}\n");
    out
}

const PALETTE: &[&str] = &["lightblue", "salmon", "palegreen", "khaki", "plum", "lightgray", "orange", "cyan"];

/// Extra decoration for [`relation_slice_to_dot`].
#[derive(Clone, Copy, Debug, Default)]
pub struct DotStyle<'a> {
    /// Fill each vertex with the color of its class.
    pub coloring: Option<&'a RegularColoring>,
    /// A second relation drawn with dashed edges.
    pub dashed: Option<&'a AutomaticRelation>,
}

/// The finite subgraph on words of length at most `max_len`.
pub fn relation_slice_to_dot(r: &AutomaticRelation, max_len: usize, style: &DotStyle) -> Result<String> {
    let a = r.alphabet();
    let (vertices, edges) = r.slice(max_len)?;
    let label = |w: &[u32]| quote(&a.format_word(w));
    let mut out = String::from("digraph relation {\n");
    for v in &vertices {
        match style.coloring.map(|c| c.color_of(v)).transpose()?.flatten() {
            Some(i) => writeln!(
                out,
                "  {} [style=filled, fillcolor={}, tooltip=\"color {i}\"];",
                label(v),
                PALETTE[i % PALETTE.len()]
            ),
            None => writeln!(out, "  {};", label(v)),
        }
        .expect("write to string");
    }
    for (u, v) in &edges {
        writeln!(out, "  {} -> {};", label(u), label(v)).expect("write to string");
    }
    if let Some(d) = style.dashed {
        if d.alphabet() != a {
            return Err(Error::AlphabetMismatch(format!("{a:?} vs {:?}", d.alphabet())));
        }
        for (u, v) in d.slice(max_len)?.1 {
            writeln!(out, "  {} -> {} [style=dashed];", label(&u), label(&v)).expect("write to string");
        }
    }
    out.push_str("}\n");
    Ok(out)
}
