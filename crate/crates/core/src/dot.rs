//! Graphviz rendering of the first levels of the branching graph, styled by
//! the position of each vertex under `φ_n`.

use std::fmt::Write;

use crate::alcove::{position, AlcovePosition};
use crate::branching::{vertices_at_level, Vertex, DEFAULT_MAX_PATH_LEVEL};
use crate::error::{Error, Result};

fn node_id(v: &Vertex) -> String {
    let parts: Vec<String> = v.shape.parts().iter().map(usize::to_string).collect();
    format!("v{}_{}", v.level, parts.join("_"))
}

pub fn node_label(v: &Vertex) -> String {
    format!("{}@{}", v.shape.pretty(), v.level)
}

/// Levels `0..=k` with edges of the graph. Wall vertices are boxed, alcove
/// vertices are colored by alcove index, and each level lists its wall
/// vertices in a comment.
pub fn emit_dot(level: usize, n: i64) -> Result<String> {
    if level > DEFAULT_MAX_PATH_LEVEL {
        return Err(Error::ResourceBound {
            what: "graph level",
            requested: level,
            bound: DEFAULT_MAX_PATH_LEVEL,
        });
    }
    let mut out = String::new();
    writeln!(out, "digraph branching {{").unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    writeln!(out, "  node [fontname=\"Helvetica\", colorscheme=set19];").unwrap();
    for k in 0..=level {
        let vertices = vertices_at_level(k);
        let walls: Vec<String> = vertices
            .iter()
            .filter_map(|v| match position(v, n) {
                AlcovePosition::Wall(j) => Some(format!("{} on wall {j}", v.shape.pretty())),
                AlcovePosition::Alcove(_) => None,
            })
            .collect();
        writeln!(out, "  // ---- level {k} ----").unwrap();
        if !walls.is_empty() {
            writeln!(out, "  // walls: {}", walls.join(", ")).unwrap();
        }
        writeln!(out, "  {{ rank=same;").unwrap();
        for v in &vertices {
            let style = match position(v, n) {
                AlcovePosition::Wall(j) => format!("shape=box, style=dashed, class=\"wall{j}\""),
                AlcovePosition::Alcove(j) => {
                    format!(
                        "shape=ellipse, color={}, class=\"alcove{j}\"",
                        (j - 1) % 9 + 1
                    )
                }
            };
            writeln!(
                out,
                "    {} [label=\"{}\", {style}];",
                node_id(v),
                node_label(v)
            )
            .unwrap();
        }
        writeln!(out, "  }}").unwrap();
        for v in &vertices {
            for p in v.parents() {
                writeln!(out, "  {} -> {};", node_id(&p), node_id(v)).unwrap();
            }
        }
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nodes(dot: &str) -> Vec<&str> {
        dot.lines().filter(|l| l.contains("[label=")).collect()
    }

    #[test]
    fn node_counts() {
        assert_eq!(nodes(&emit_dot(6, 2).unwrap()).len(), 21);
        let single = emit_dot(0, 5).unwrap();
        assert_eq!(nodes(&single).len(), 1);
        assert!(single.contains("label=\"∅@0\""));
        assert!(!single.contains("->"));
    }

    #[test]
    fn wall_styling() {
        let dot = emit_dot(6, 2).unwrap();
        let line = dot.lines().find(|l| l.contains("\"(1)@3\"")).unwrap();
        assert!(line.contains("shape=box") && line.contains("wall1"));
        let line = dot.lines().find(|l| l.contains("\"∅@6\"")).unwrap();
        assert!(line.contains("alcove1"));
        assert!(dot.contains("// walls: (1) on wall 1"));
    }

    #[test]
    fn edge_count_matches_parents() {
        let dot = emit_dot(5, 3).unwrap();
        let edges = dot.lines().filter(|l| l.contains("->")).count();
        let expected: usize = (0..=5)
            .flat_map(vertices_at_level)
            .map(|v| v.parents().len())
            .sum();
        assert_eq!(edges, expected);
        assert_eq!(emit_dot(5, 3).unwrap(), dot);
    }

    #[test]
    fn bound() {
        assert!(emit_dot(DEFAULT_MAX_PATH_LEVEL + 1, 2).is_err());
    }
}
