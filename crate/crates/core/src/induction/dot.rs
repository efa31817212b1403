use std::fmt::Write;

use super::{DecisionTree, Split, TreeNode};
use crate::rules::format_number;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering: internal nodes show the tested attribute, edges the
/// interval or category, leaves the class and per-class support.
pub(super) fn to_dot(t: &DecisionTree) -> String {
    let mut out = String::from("digraph tree {\n  node [shape=box, fontname=\"Helvetica\"];\n");
    let mut next = 0;
    emit(t, &t.root, &mut next, &mut out);
    out.push_str("}\n");
    out
}

fn emit(t: &DecisionTree, node: &TreeNode, next: &mut usize, out: &mut String) -> usize {
    let id = *next;
    *next += 1;
    match node {
        TreeNode::Leaf { label, support } => {
            let counts = support
                .counts()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join("/");
            writeln!(
                out,
                "  n{id} [label=\"{}\\n({counts})\", shape=ellipse];",
                escape(label)
            )
            .unwrap();
        }
        TreeNode::Internal {
            attribute_index,
            split,
            children,
            ..
        } => {
            writeln!(
                out,
                "  n{id} [label=\"{}\"];",
                escape(&t.schema[*attribute_index].name)
            )
            .unwrap();
            for (i, child) in children.iter().enumerate() {
                let edge = match split {
                    Split::Categorical { values } => format!("= {}", values[i]),
                    Split::Grouped(spec) => {
                        let close = if i + 1 == spec.k { ']' } else { ')' };
                        format!(
                            "[{}, {}{close}",
                            format_number(spec.lower(i)),
                            format_number(spec.upper(i))
                        )
                    }
                };
                let child_id = emit(t, child, next, out);
                writeln!(out, "  n{id} -> n{child_id} [label=\"{}\"];", escape(&edge)).unwrap();
            }
        }
    }
    id
}
