//! S-expression syntax for group expressions. See `docs/expressions.md`.

use std::path::Path;

use artinrg_core::lgraph::GraphBuilder;
use artinrg_core::{GroupExpr, GroupOrder, LabelledGraph};

use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Str(String),
    Atom(String),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next();
        if c == Some('\n') {
            self.line += 1;
            self.column = 1;
        } else if c.is_some() {
            self.column += 1;
        }
        c
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    while let Some(c) = cur.peek() {
        let (line, column) = (cur.line, cur.column);
        let tok = match c {
            ';' => {
                while !matches!(cur.peek(), None | Some('\n')) {
                    cur.bump();
                }
                continue;
            }
            c if c.is_whitespace() => {
                cur.bump();
                continue;
            }
            '(' | ')' => {
                cur.bump();
                if c == '(' {
                    Tok::Open
                } else {
                    Tok::Close
                }
            }
            '"' => {
                cur.bump();
                let mut s = String::new();
                loop {
                    match cur.bump() {
                        None => return Err(ParseError::new(line, column, "unterminated string")),
                        Some('"') => break,
                        Some('\\') => match cur.bump() {
                            Some(e @ ('"' | '\\')) => s.push(e),
                            Some('n') => s.push('\n'),
                            _ => return Err(ParseError::new(cur.line, cur.column - 1, "bad escape in string")),
                        },
                        Some(ch) => s.push(ch),
                    }
                }
                Tok::Str(s)
            }
            _ => {
                let mut s = String::new();
                while let Some(ch) = cur.peek() {
                    if ch.is_whitespace() || matches!(ch, '(' | ')' | '"' | ';') {
                        break;
                    }
                    s.push(ch);
                    cur.bump();
                }
                Tok::Atom(s)
            }
        };
        out.push(Spanned { tok, line, column });
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Sexp {
    Atom(String, usize, usize),
    Str(String, usize, usize),
    List(Vec<Sexp>, usize, usize),
}

impl Sexp {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (Sexp::Atom(_, l, c) | Sexp::Str(_, l, c) | Sexp::List(_, l, c)) = self;
        ParseError::new(*l, *c, msg)
    }
}

fn read(toks: &[Spanned], i: &mut usize) -> Result<Sexp, ParseError> {
    let t = &toks[*i];
    *i += 1;
    match &t.tok {
        Tok::Atom(a) => Ok(Sexp::Atom(a.clone(), t.line, t.column)),
        Tok::Str(s) => Ok(Sexp::Str(s.clone(), t.line, t.column)),
        Tok::Close => Err(ParseError::new(t.line, t.column, "unexpected `)`")),
        Tok::Open => {
            let mut items = Vec::new();
            loop {
                match toks.get(*i) {
                    None => return Err(ParseError::new(t.line, t.column, "unclosed `(`")),
                    Some(Spanned { tok: Tok::Close, .. }) => {
                        *i += 1;
                        return Ok(Sexp::List(items, t.line, t.column));
                    }
                    Some(_) => items.push(read(toks, i)?),
                }
            }
        }
    }
}

/// Source of graph files named in `(artin "file")` forms.
pub trait GraphSource {
    fn load(&self, name: &str) -> Result<String, String>;
}

/// Resolves graph files relative to a directory.
pub struct DirSource<'a>(pub &'a Path);

impl GraphSource for DirSource<'_> {
    fn load(&self, name: &str) -> Result<String, String> {
        let p = self.0.join(name);
        std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))
    }
}

/// Rejects every file reference.
pub struct NoFiles;

impl GraphSource for NoFiles {
    fn load(&self, name: &str) -> Result<String, String> {
        Err(format!("graph file {name:?} not available here"))
    }
}

pub fn parse_expr(text: &str, files: &dyn GraphSource) -> Result<GroupExpr, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::new(1, 1, "empty expression"));
    }
    let mut i = 0;
    let s = read(&toks, &mut i)?;
    if let Some(t) = toks.get(i) {
        return Err(ParseError::new(t.line, t.column, "trailing input after expression"));
    }
    interpret(&s, files)
}

fn int(s: &Sexp) -> Result<u64, ParseError> {
    match s {
        Sexp::Atom(a, ..) => a
            .parse()
            .map_err(|_| s.err(format!("expected a non-negative integer, found {a:?}"))),
        _ => Err(s.err("expected a non-negative integer")),
    }
}

fn order(s: &Sexp) -> Result<GroupOrder, ParseError> {
    match s {
        Sexp::Atom(a, ..) if a == "inf" => Ok(GroupOrder::Infinite),
        _ => match int(s)? {
            0 => Err(s.err("group order must be >= 1")),
            n => Ok(GroupOrder::Finite(n)),
        },
    }
}

fn string(s: &Sexp) -> Result<&str, ParseError> {
    match s {
        Sexp::Str(v, ..) => Ok(v),
        _ => Err(s.err("expected a quoted string")),
    }
}

fn vertex_name(p: &Sexp) -> Result<&str, ParseError> {
    match p {
        Sexp::Atom(a, ..) => Ok(a),
        _ => Err(p.err("expected a vertex name")),
    }
}

fn graph(s: &Sexp, files: &dyn GraphSource) -> Result<LabelledGraph, ParseError> {
    let items = match s {
        Sexp::Str(name, ..) => {
            let text = files.load(name).map_err(|m| s.err(m))?;
            return super::graph::parse_graph(&text).map_err(|e| s.err(format!("in {name}: {e}")));
        }
        Sexp::List(items, ..) if matches!(items.first(), Some(Sexp::Atom(h, ..)) if h == "graph") => &items[1..],
        _ => return Err(s.err("expected a graph file name or `(graph ...)`")),
    };
    let mut b = GraphBuilder::new();
    for item in items {
        let clause = match item {
            Sexp::List(parts, ..) => match parts.first() {
                Some(Sexp::Atom(h, ..)) => Some((h.as_str(), &parts[1..])),
                _ => None,
            },
            _ => None,
        };
        match clause {
            Some(("vertices", names)) => {
                for p in names {
                    b.vertex(vertex_name(p)?).map_err(|e| p.err(e.to_string()))?;
                }
            }
            Some(("edge", [x, y, l])) => {
                let l = int(l)?;
                b.edge(vertex_name(x)?, vertex_name(y)?, l)
                    .map_err(|e| item.err(e.to_string()))?;
            }
            Some(("edge", _)) => return Err(item.err("`edge` takes two names and a label")),
            _ => return Err(item.err("expected `(vertices ...)` or `(edge a b n)`")),
        }
    }
    b.build().map_err(|e| s.err(e.to_string()))
}

fn interpret(s: &Sexp, files: &dyn GraphSource) -> Result<GroupExpr, ParseError> {
    let (head, args): (&str, &[Sexp]) = match s {
        Sexp::Atom(a, ..) => (a.as_str(), &[]),
        Sexp::List(items, ..) => match items.first() {
            Some(Sexp::Atom(h, ..)) => (h.as_str(), &items[1..]),
            _ => return Err(s.err("expected a form name after `(`")),
        },
        Sexp::Str(..) => return Err(s.err("expected a group expression, found a string")),
    };
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(s.err(format!("`{head}` takes {n} argument(s), found {}", args.len())))
        }
    };
    let e = match head {
        "trivial" => {
            arity(0)?;
            GroupExpr::Trivial
        }
        "integers" => {
            arity(0)?;
            GroupExpr::Integers
        }
        "cyclic" => {
            arity(1)?;
            GroupExpr::Cyclic(int(&args[0])?)
        }
        "free" => {
            arity(1)?;
            GroupExpr::Free(int(&args[0])?)
        }
        "surface" => {
            arity(1)?;
            GroupExpr::Surface(int(&args[0])?)
        }
        "free-abelian" => {
            arity(1)?;
            GroupExpr::FreeAbelian(int(&args[0])?)
        }
        "amenable" => {
            arity(2)?;
            GroupExpr::Amenable {
                tag: string(&args[0])?.to_string(),
                order: order(&args[1])?,
            }
        }
        "artin" => {
            arity(1)?;
            GroupExpr::Artin(graph(&args[0], files)?)
        }
        "coxeter" => {
            arity(1)?;
            GroupExpr::Coxeter(graph(&args[0], files)?)
        }
        "amalgam-finite" => {
            arity(3)?;
            let n = int(&args[2])?;
            GroupExpr::amalgam_finite(interpret(&args[0], files)?, interpret(&args[1], files)?, n)
        }
        "amalgam-amenable" => {
            arity(6)?;
            GroupExpr::AmalgamAmenable {
                left: Box::new(interpret(&args[0], files)?),
                right: Box::new(interpret(&args[1], files)?),
                amalgam: Box::new(interpret(&args[2], files)?),
                left_order: order(&args[3])?,
                right_order: order(&args[4])?,
                amalgam_order: order(&args[5])?,
            }
        }
        "generation" => {
            arity(3)?;
            GroupExpr::generation(
                interpret(&args[0], files)?,
                interpret(&args[1], files)?,
                string(&args[2])?,
            )
        }
        other => return Err(s.err(format!("unknown form {other:?}"))),
    };
    shallow_validate(&e).map_err(|m| s.err(m))?;
    Ok(e)
}

// Children were validated when they were built.
fn shallow_validate(e: &GroupExpr) -> Result<(), String> {
    match e {
        GroupExpr::AmalgamFinite { amalgam_order: 0, .. } => Err("group orders must be >= 1".into()),
        GroupExpr::Generation { justification, .. } if justification.trim().is_empty() => {
            Err("generation node needs a non-empty justification".into())
        }
        GroupExpr::AmalgamFinite { .. } | GroupExpr::AmalgamAmenable { .. } | GroupExpr::Generation { .. } => Ok(()),
        leaf => leaf.validate().map_err(|e| e.to_string()),
    }
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn format_graph_inline(g: &LabelledGraph) -> String {
    let mut s = format!("(graph (vertices {})", g.names().join(" "));
    for (u, v, l) in g.edges() {
        s.push_str(&format!(" (edge {} {} {l})", g.name(u), g.name(v)));
    }
    s.push(')');
    s
}

/// Single-line rendering that [`parse_expr`] reads back, with graphs inline.
pub fn format_expr(e: &GroupExpr) -> String {
    match e {
        GroupExpr::Trivial => "(trivial)".into(),
        GroupExpr::Integers => "(integers)".into(),
        GroupExpr::Cyclic(n) => format!("(cyclic {n})"),
        GroupExpr::Free(n) => format!("(free {n})"),
        GroupExpr::Surface(n) => format!("(surface {n})"),
        GroupExpr::FreeAbelian(n) => format!("(free-abelian {n})"),
        GroupExpr::Amenable { tag, order } => format!("(amenable {} {order})", quote(tag)),
        GroupExpr::Artin(g) => format!("(artin {})", format_graph_inline(g)),
        GroupExpr::Coxeter(g) => format!("(coxeter {})", format_graph_inline(g)),
        GroupExpr::AmalgamFinite {
            left,
            right,
            amalgam_order,
        } => format!(
            "(amalgam-finite {} {} {amalgam_order})",
            format_expr(left),
            format_expr(right)
        ),
        GroupExpr::AmalgamAmenable {
            left,
            right,
            amalgam,
            left_order,
            right_order,
            amalgam_order,
        } => format!(
            "(amalgam-amenable {} {} {} {left_order} {right_order} {amalgam_order})",
            format_expr(left),
            format_expr(right),
            format_expr(amalgam)
        ),
        GroupExpr::Generation {
            left,
            right,
            justification,
        } => format!(
            "(generation {} {} {})",
            format_expr(left),
            format_expr(right),
            quote(justification)
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use artinrg_core::lgraph::families;
    use proptest::prelude::*;

    fn p(s: &str) -> Result<GroupExpr, ParseError> {
        parse_expr(s, &NoFiles)
    }

    #[test]
    fn flagship_forms() {
        assert_eq!(
            p("(amalgam-finite (cyclic 6) (cyclic 4) 2)").unwrap(),
            GroupExpr::amalgam_finite(GroupExpr::Cyclic(6), GroupExpr::Cyclic(4), 2)
        );
        assert_eq!(
            p("; comment\n(generation (free 2) (free 3) \"declared\")").unwrap(),
            GroupExpr::generation(GroupExpr::Free(2), GroupExpr::Free(3), "declared")
        );
        assert_eq!(p("integers").unwrap(), GroupExpr::Integers);
        let GroupExpr::Artin(g) = p("(artin (graph (vertices a b c) (edge a b 3) (edge b c 2)))").unwrap() else {
            panic!("expected an Artin node")
        };
        assert_eq!(g.edge_count(), 2);
        assert_eq!(
            p("(amenable \"Z^2\" inf)").unwrap(),
            GroupExpr::Amenable {
                tag: "Z^2".into(),
                order: GroupOrder::Infinite
            }
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = p("(amalgam-finite (cyclic 6)\n  (cyclc 4) 2)").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("unknown form"));
        assert!(p("(cyclic 1)").unwrap_err().message.contains(">= 2"));
        assert!(p("(cyclic 6").unwrap_err().message.contains("unclosed"));
        assert!(p("(cyclic 6))").unwrap_err().message.contains("trailing"));
        assert!(p("(free x)").unwrap_err().message.contains("integer"));
        assert!(p("(cyclic 2 3)").unwrap_err().message.contains("1 argument"));
        assert!(p("(generation (free 1) (free 1) \"  \")")
            .unwrap_err()
            .message
            .contains("justification"));
        assert!(p("(artin \"x.graph\")").unwrap_err().message.contains("not available"));
        assert!(p("(artin (graph (vertices a) (edge a a 2)))")
            .unwrap_err()
            .message
            .contains("self-loop"));
        assert!(p("\"s").unwrap_err().message.contains("unterminated"));
        assert!(p("  ; only a comment").is_err());
    }

    #[test]
    fn reads_graph_files_relative_to_directory() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("b3.graph"), "vertex s1\nvertex s2\nedge s1 s2 3\n").unwrap();
        let from_file = parse_expr("(artin \"b3.graph\")", &DirSource(dir.path())).unwrap();
        let inline = p("(artin (graph (vertices s1 s2) (edge s1 s2 3)))").unwrap();
        assert_eq!(from_file, inline);
        let e = parse_expr("(artin \"missing.graph\")", &DirSource(dir.path())).unwrap_err();
        assert_eq!(e.column, 8);
    }

    fn arb_expr() -> impl Strategy<Value = GroupExpr> {
        let order = prop_oneof![Just(GroupOrder::Infinite), (1u64..50).prop_map(GroupOrder::Finite)];
        let leaf = prop_oneof![
            Just(GroupExpr::Trivial),
            Just(GroupExpr::Integers),
            (2u64..20).prop_map(GroupExpr::Cyclic),
            (1u64..5).prop_map(GroupExpr::Free),
            (2u64..5).prop_map(GroupExpr::Surface),
            (1u64..4).prop_map(GroupExpr::FreeAbelian),
            ("[a-z \"\\\\]{1,8}", order.clone()).prop_map(|(tag, order)| GroupExpr::Amenable { tag, order }),
            proptest::collection::vec(2u64..7, 0..4).prop_map(|l| GroupExpr::Artin(families::path(&l))),
            proptest::collection::vec(2u64..7, 6..8).prop_map(|l| GroupExpr::Coxeter(families::cycle(&l))),
        ];
        leaf.prop_recursive(4, 24, 3, move |inner| {
            prop_oneof![
                (inner.clone(), inner.clone(), 1u64..5).prop_map(|(a, b, n)| GroupExpr::amalgam_finite(a, b, n)),
                (inner.clone(), inner.clone(), "[a-z]{1,6}").prop_map(|(a, b, j)| GroupExpr::generation(a, b, &j)),
                (
                    inner.clone(),
                    inner.clone(),
                    inner,
                    order.clone(),
                    order.clone(),
                    order.clone()
                )
                    .prop_map(|(l, r, k, lo, ro, ko)| GroupExpr::AmalgamAmenable {
                        left: Box::new(l),
                        right: Box::new(r),
                        amalgam: Box::new(k),
                        left_order: lo,
                        right_order: ro,
                        amalgam_order: ko,
                    }),
            ]
        })
    }

    proptest! {
        #[test]
        fn format_round_trips(e in arb_expr()) {
            prop_assert_eq!(p(&format_expr(&e)).unwrap(), e);
        }
    }
}
