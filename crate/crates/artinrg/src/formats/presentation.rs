//! Presentation files:
//!
//! ```text
//! gens: a b
//! rel: a^4
//! rel: a^2 B^3
//! ```
//!
//! Upper case letters are inverses; `x^k` repeats a letter; `1` is the
//! empty word.

use artinrg_core::fpgroup::Presentation;

use super::{column_of, strip_comment, ParseError};

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut gens: Option<Presentation> = None;
    let mut rels = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let code = strip_comment(raw);
        let body = code.trim();
        if body.is_empty() {
            continue;
        }
        let Some((key, rest)) = body.split_once(':') else {
            return Err(ParseError::new(
                line,
                column_of(raw, body),
                "expected `gens:` or `rel:`",
            ));
        };
        let col = column_of(raw, rest.trim_start()).min(raw.len() + 1);
        match key.trim() {
            "gens" => {
                if gens.is_some() {
                    return Err(ParseError::new(line, 1, "second `gens:` line"));
                }
                let names = rest.split_whitespace().map(str::to_string).collect();
                let p = Presentation::new(names, Vec::new()).map_err(|e| ParseError::new(line, col, e.to_string()))?;
                gens = Some(p);
            }
            "rel" => {
                let Some(p) = &gens else {
                    return Err(ParseError::new(line, 1, "`rel:` before `gens:`"));
                };
                let word: String = rest
                    .split_whitespace()
                    .filter(|t| *t != "1")
                    .collect::<Vec<_>>()
                    .join(" ");
                let w = p
                    .parse_word(&word)
                    .map_err(|e| ParseError::new(line, col, e.to_string()))?;
                rels.push(w);
            }
            other => {
                return Err(ParseError::new(
                    line,
                    column_of(raw, body),
                    format!("unknown key {other:?}"),
                ));
            }
        }
    }
    let p = gens.ok_or_else(|| ParseError::new(1, 1, "missing `gens:` line"))?;
    Presentation::new(p.generators().to_vec(), rels).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

pub fn format_presentation(p: &Presentation) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inverses_and_powers() {
        let p = parse_presentation("# SL(2,Z)\ngens: a b\nrel: a^4\nrel: a^2 B^3\n").unwrap();
        let q = Presentation::from_strs(&["a", "b"], &["a^4", "a^2 B^3"]).unwrap();
        assert_eq!(p, q);
        assert_eq!(parse_presentation(&format_presentation(&p)).unwrap(), p);
    }

    #[test]
    fn free_group_and_identity() {
        let p = parse_presentation("gens: x y\nrel: 1\n").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert!(p.relators().iter().all(|r| r.is_empty()));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_presentation("gens: a b\nrel: a c\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 6));
        assert!(e.message.contains("unknown generator"));
        assert_eq!(parse_presentation("rel: a\n").unwrap_err().line, 1);
        assert!(parse_presentation("gens: a\nfoo: a\n")
            .unwrap_err()
            .message
            .contains("unknown key"));
        assert!(parse_presentation("").unwrap_err().message.contains("missing"));
        assert!(parse_presentation("gens: a a\n").is_err());
        assert!(parse_presentation("gens: a\nrel: a^x\n")
            .unwrap_err()
            .message
            .contains("exponent"));
    }
}
