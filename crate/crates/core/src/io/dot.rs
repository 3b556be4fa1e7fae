use std::fmt::Write;

use crate::pyramid::PyramidStructure;

/// Renders the pyramid as a Graphviz digraph.
///
/// Terminal nodes share one rank, listed in the final order. Each internal
/// node has an edge to each child labelled with its index (4 decimals).
pub fn emit_dot(pyramid: &PyramidStructure) -> String {
    let mut out = String::new();
    out.push_str("digraph pyramid {\n");
    out.push_str("  node [shape=box];\n");
    out.push_str("  { rank=same;");
    for row in &pyramid.final_order {
        write!(out, " n{row};").unwrap();
    }
    out.push_str(" }\n");
    for q in &pyramid.quadruples {
        let label = match pyramid.extent(q.id) {
            Some(ext) if !q.is_terminal() => format!(
                "P{}\\n{{{}}}",
                q.id,
                ext.iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            _ => format!("{}", q.id),
        };
        writeln!(out, "  n{} [label=\"{label}\"];", q.id).unwrap();
    }
    for q in &pyramid.quadruples {
        if let Some((l, r)) = q.children {
            for child in [l, r] {
                writeln!(out, "  n{} -> n{child} [label=\"{:.4}\"];", q.id, q.index).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
