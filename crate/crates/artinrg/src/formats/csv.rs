//! Sample tables as CSV: `index,d_lower,d_upper,r_lower,r_upper`, with
//! rationals written as `num/den`.

use artinrg_core::fpgroup::RgSample;
use artinrg_core::Rational;

use super::ParseError;

pub const HEADER: &str = "index,d_lower,d_upper,r_lower,r_upper";

pub fn format_row(s: &RgSample) -> String {
    format!(
        "{},{},{},{},{}",
        s.index,
        s.d_lower,
        s.d_upper,
        s.r_lower.to_fraction_string(),
        s.r_upper.to_fraction_string()
    )
}

pub fn write_samples(samples: &[RgSample]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for s in samples {
        out.push_str(&format_row(s));
        out.push('\n');
    }
    out
}

/// Parses a table and checks that the rational columns agree with the
/// integer columns.
pub fn read_samples(text: &str) -> Result<Vec<RgSample>, ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == HEADER => {}
        Some((i, _)) => return Err(ParseError::new(i + 1, 1, format!("expected header `{HEADER}`"))),
        None => return Err(ParseError::new(1, 1, "empty table")),
    }
    let mut out = Vec::new();
    for (i, raw) in lines {
        let line = i + 1;
        let fields: Vec<&str> = raw.trim().split(',').collect();
        if fields.len() != 5 {
            return Err(ParseError::new(
                line,
                1,
                format!("expected 5 fields, found {}", fields.len()),
            ));
        }
        let col = |k: usize| fields[..k].iter().map(|f| f.len() + 1).sum::<usize>() + 1;
        let int = |k: usize| -> Result<u64, ParseError> {
            fields[k]
                .parse()
                .map_err(|_| ParseError::new(line, col(k), format!("bad integer {:?}", fields[k])))
        };
        let rat = |k: usize| -> Result<Rational, ParseError> {
            fields[k]
                .parse()
                .map_err(|_| ParseError::new(line, col(k), format!("bad rational {:?}", fields[k])))
        };
        let (index, lo, hi) = (int(0)?, int(1)?, int(2)?);
        if index == 0 || lo > hi {
            return Err(ParseError::new(line, 1, "need index >= 1 and d_lower <= d_upper"));
        }
        let s = RgSample::new(index, lo, hi);
        for (k, want) in [(3, &s.r_lower), (4, &s.r_upper)] {
            if rat(k)? != *want {
                return Err(ParseError::new(
                    line,
                    col(k),
                    format!("expected {want} = (d - 1)/index"),
                ));
            }
        }
        out.push(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reads_written_table() {
        let s = vec![RgSample::new(24, 3, 3), RgSample::new(6, 2, 3)];
        let text = write_samples(&s);
        assert_eq!(
            text,
            "index,d_lower,d_upper,r_lower,r_upper\n24,3,3,1/12,1/12\n6,2,3,1/6,1/3\n"
        );
        assert_eq!(read_samples(&text).unwrap(), s);
    }

    #[test]
    fn rejects_inconsistent_rows() {
        let bad = format!("{HEADER}\n24,3,3,1/12,1/6\n");
        assert_eq!(read_samples(&bad).unwrap_err().column, 13);
        assert!(read_samples("index\n").is_err());
        assert!(read_samples(&format!("{HEADER}\n1,2\n")).is_err());
        assert!(read_samples(&format!("{HEADER}\n4,3,2,1/2,1/4\n")).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(rows in proptest::collection::vec((1u64..10_000, 0u64..500, 0u64..500), 0..20)) {
            let s: Vec<RgSample> = rows.into_iter().map(|(i, a, b)| RgSample::new(i, a.min(b), a.max(b))).collect();
            let back = read_samples(&write_samples(&s)).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
