//! Line-based graph files:
//!
//! ```text
//! # comment
//! vertex a
//! vertex b
//! edge a b 3
//! ```

use artinrg_core::lgraph::GraphBuilder;
use artinrg_core::LabelledGraph;

use super::{column_of, strip_comment, ParseError};

pub fn parse_graph(text: &str) -> Result<LabelledGraph, ParseError> {
    let mut b = GraphBuilder::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let toks: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        let Some(&head) = toks.first() else { continue };
        let at = |t: &str| ParseError::new(line, column_of(raw, t), "");
        let fail = |t: &str, msg: String| ParseError { message: msg, ..at(t) };
        match head {
            "vertex" => {
                if toks.len() != 2 {
                    return Err(fail(
                        head,
                        format!("expected `vertex <name>`, found {} field(s)", toks.len()),
                    ));
                }
                b.vertex(toks[1]).map_err(|e| fail(toks[1], e.to_string()))?;
            }
            "edge" => {
                if toks.len() != 4 {
                    return Err(fail(
                        head,
                        format!("expected `edge <name> <name> <label>`, found {} field(s)", toks.len()),
                    ));
                }
                let label: u64 = toks[3]
                    .parse()
                    .map_err(|_| fail(toks[3], format!("label {:?} is not a non-negative integer", toks[3])))?;
                b.edge(toks[1], toks[2], label)
                    .map_err(|e| fail(toks[1], e.to_string()))?;
            }
            other => return Err(fail(other, format!("unknown directive {other:?}"))),
        }
    }
    b.build()
        .map_err(|e| ParseError::new(last_line.max(1), 1, e.to_string()))
}

pub fn format_graph(g: &LabelledGraph) -> String {
    let mut out = String::new();
    for name in g.names() {
        out.push_str(&format!("vertex {name}\n"));
    }
    for (u, v, l) in g.edges() {
        out.push_str(&format!("edge {} {} {l}\n", g.name(u), g.name(v)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let g = parse_graph("vertex a\nvertex b # second\n\nedge a b 3\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.label(0, 1), Some(3));
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_graph("vertex a\nvertex a\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 8));
        assert!(e.message.contains("duplicate"));
        let e = parse_graph("vertex a\nedge a b 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("undeclared"));
        let e = parse_graph("vertex a\nvertex b\nedge a b 1\n").unwrap_err();
        assert!(e.message.contains("< 2"));
        let e = parse_graph("vertex a\nvertex b\nedge a b x\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 10));
        assert!(parse_graph("vertex a\nedge a a 2\n")
            .unwrap_err()
            .message
            .contains("self-loop"));
        assert!(parse_graph("vertx a\n")
            .unwrap_err()
            .message
            .contains("unknown directive"));
        assert!(parse_graph("# nothing\n").unwrap_err().message.contains("no vertices"));
        let dup = parse_graph("vertex a\nvertex b\nedge a b 2\nedge b a 3\n").unwrap_err();
        assert_eq!(dup.line, 4);
    }
}
