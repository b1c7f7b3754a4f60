//! The points file: an exact, line-oriented text format.
//!
//! ```text
//! richdist 1
//! cyclo 4
//! points 4
//! 1 0
//! 0 1
//! -1 0
//! 0 -1
//! ```
//!
//! Each point line holds the `φ(N)` coordinates of the point in the power
//! basis `1, ζ, ζ², …` as rationals `a/b` in lowest terms, with `/1` omitted.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use richdist_core::{CycloField, CycloNum, PointSet, Rational};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: expected {expected} coefficients for cyclo {order}, found {found}")]
    CoefficientCount { line: usize, order: u32, expected: usize, found: usize },
    #[error("header declares {declared} points but the file has {found}")]
    PointCount { declared: usize, found: usize },
    #[error("file is in cyclo {found}, expected cyclo {expected}")]
    FieldOrder { expected: u32, found: u32 },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: richdist_core::Error,
    },
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

pub fn write_rational(out: &mut String, q: &Rational) {
    if q.denom() == &BigInt::from(1) {
        let _ = write!(out, "{}", q.numer());
    } else {
        let _ = write!(out, "{}/{}", q.numer(), q.denom());
    }
}

pub fn serialize(ps: &PointSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "richdist {FORMAT_VERSION}");
    let _ = writeln!(out, "cyclo {}", ps.field().order());
    let _ = writeln!(out, "points {}", ps.len());
    for p in ps.points() {
        for (k, c) in p.coeffs().iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            write_rational(&mut out, c);
        }
        out.push('\n');
    }
    out
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// `-?digits(/digits)?` with a nonzero denominator.
pub fn parse_rational(token: &str) -> Result<Rational, String> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !is_digits(unsigned) {
        return Err(format!("malformed rational {token:?}"));
    }
    let num = BigInt::from_str(num).map_err(|e| format!("{token:?}: {e}"))?;
    let den = match den {
        None => BigInt::from(1),
        Some(d) if is_digits(d) => BigInt::from_str(d).map_err(|e| format!("{token:?}: {e}"))?,
        Some(_) => return Err(format!("malformed denominator in {token:?}")),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in {token:?}"));
    }
    debug_assert!(den.is_positive());
    Ok(Rational::new(num, den))
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    /// Next meaningful line with its 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, text) in self.inner.by_ref() {
            self.last = i + 1;
            let t = text.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Some((i + 1, text));
            }
        }
        None
    }

    fn header(&mut self, key: &str) -> Result<(usize, u64), ParseError> {
        let (line, text) = self.next().ok_or_else(|| syntax(self.last + 1, 1, format!("missing `{key}` line")))?;
        let mut words = tokens(text);
        match words.next() {
            Some((_, w)) if w == key => {}
            Some((col, w)) => return Err(syntax(line, col, format!("expected `{key}`, found {w:?}"))),
            None => unreachable!("blank lines are skipped"),
        }
        let (col, value) = words.next().ok_or_else(|| syntax(line, text.len() + 1, format!("`{key}` needs a value")))?;
        let value = value.parse::<u64>().map_err(|_| syntax(line, col, format!("bad `{key}` value {value:?}")))?;
        if let Some((col, extra)) = words.next() {
            return Err(syntax(line, col, format!("unexpected {extra:?}")));
        }
        Ok((line, value))
    }
}

/// Whitespace-separated words with 1-based columns.
fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = text;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let word = &tail[..len];
        let column = offset + start + 1;
        offset += start + len;
        rest = &tail[len..];
        Some((column, word))
    })
}

pub fn parse(text: &str) -> Result<PointSet, ParseError> {
    let mut lines = Lines { inner: text.lines().enumerate(), last: 0 };
    let (line, version) = lines.header("richdist")?;
    if version != FORMAT_VERSION as u64 {
        return Err(syntax(line, 10, format!("unsupported version {version}")));
    }
    let (line, order) = lines.header("cyclo")?;
    let order = u32::try_from(order).ok().filter(|&n| n > 0).ok_or_else(|| syntax(line, 7, "field order must be in 1..2^32"))?;
    let field = CycloField::new(order).map_err(|source| ParseError::Invalid { line, source })?;
    let (_, declared) = lines.header("points")?;
    let declared = declared as usize;
    let degree = field.degree();

    let mut points = Vec::with_capacity(declared.min(1 << 20));
    while let Some((line, text)) = lines.next() {
        let mut coeffs = Vec::with_capacity(degree);
        for (column, word) in tokens(text) {
            coeffs.push(parse_rational(word).map_err(|m| syntax(line, column, m))?);
        }
        if coeffs.len() != degree {
            return Err(ParseError::CoefficientCount { line, order, expected: degree, found: coeffs.len() });
        }
        points.push(CycloNum::from_coeffs(&field, &coeffs).map_err(|source| ParseError::Invalid { line, source })?);
    }
    if points.len() != declared {
        return Err(ParseError::PointCount { declared, found: points.len() });
    }
    PointSet::from_points(&field, points).map_err(|source| ParseError::Invalid { line: lines.last, source })
}

/// Like [`parse`], additionally requiring the field order.
pub fn parse_in(text: &str, expected_order: u32) -> Result<PointSet, ParseError> {
    let ps = parse(text)?;
    if ps.field().order() != expected_order {
        return Err(ParseError::FieldOrder { expected: expected_order, found: ps.field().order() });
    }
    Ok(ps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use richdist_core::build_theorem1;

    const SQUARE: &str = "richdist 1\ncyclo 4\npoints 4\n1 0\n0 1\n-1 0\n0 -1\n";

    #[test]
    fn square_text() {
        let sq = PointSet::regular_ngon(4).unwrap();
        assert_eq!(serialize(&sq), SQUARE);
        assert_eq!(parse(SQUARE).unwrap(), sq);
    }

    #[test]
    fn round_trip_with_fractions() {
        let (ps, _) = build_theorem1(10).unwrap();
        let text = serialize(&ps);
        assert!(text.contains('/') || ps.points().iter().all(|p| p.coeffs().iter().all(|c| c.is_integer())));
        assert_eq!(parse(&text).unwrap(), ps);
        assert_eq!(serialize(&parse(&text).unwrap()), text);
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-6/4").unwrap(), Rational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_integer(7.into()));
        for bad in ["3/0", "", "/2", "1/", "1/-2", "+1", "1.5", "a", "--1", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("richdist 1\ncyclo 4\npoints 1\n1 3/0\n").unwrap_err();
        assert_eq!(e, syntax(4, 3, "zero denominator in \"3/0\""));
        let e = parse("richdist 1\ncyclo 5\npoints 1\n1 2 3\n").unwrap_err();
        assert_eq!(e, ParseError::CoefficientCount { line: 4, order: 5, expected: 4, found: 3 });
        let e = parse("richdist 1\ncyclo 4\npoints 2\n1 0\n").unwrap_err();
        assert_eq!(e, ParseError::PointCount { declared: 2, found: 1 });
        let e = parse("richdist 2\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 1, .. }));
        let e = parse("richdist 1\nfield 4\n").unwrap_err();
        assert_eq!(e, syntax(2, 1, "expected `cyclo`, found \"field\""));
        assert!(matches!(parse("richdist 1\ncyclo 0\n").unwrap_err(), ParseError::Syntax { line: 2, .. }));
        assert!(matches!(parse("").unwrap_err(), ParseError::Syntax { line: 1, .. }));
        let dup = "richdist 1\ncyclo 4\npoints 2\n1 0\n1 0\n";
        assert!(matches!(parse(dup).unwrap_err(), ParseError::Invalid { .. }));
        assert_eq!(parse_in(SQUARE, 8).unwrap_err(), ParseError::FieldOrder { expected: 8, found: 4 });
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a square\nrichdist 1\n\ncyclo 4\npoints 4\n1 0\n  0   1 \n-1 0\n# last\n0 -1\n";
        assert_eq!(parse(text).unwrap(), PointSet::regular_ngon(4).unwrap());
    }
}
