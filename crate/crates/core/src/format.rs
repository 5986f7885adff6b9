//! The `.biq` text format.
//!
//! ```text
//! # comment
//! biq 2
//! 1 1 1 1
//! 2 2 2 2
//! 1 1 1 1
//! 2 2 2 2
//! ```
//!
//! A header `biq <n>` is followed by `2n` rows of `2n` whitespace-separated
//! entries laid out as `[[M1 | M2], [M3 | M4]]`. `#` starts a comment. Entry
//! 0 (a blank) is only accepted when reading a [`Pattern`]. A file may hold
//! several records; emission separates them with a blank line.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{BlockMatrix, Biquandle};
use crate::search::Pattern;

/// Strips a `#` comment and surrounding whitespace.
pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Non-empty, comment-free lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty())
}

pub(crate) fn parse_uint(token: &str, line: usize) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, found `{token}`")))
}

/// A raw `2n x 2n` grid from one `.biq` record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub order: usize,
    pub rows: Vec<Vec<u8>>,
}

/// Reads every `.biq` record in `text`. Entries are range-checked against
/// `0..=n` when `allow_blank`, `1..=n` otherwise.
pub fn parse_grids(text: &str, allow_blank: bool) -> Result<Vec<Grid>> {
    let mut lines = content_lines(text).peekable();
    let mut grids = Vec::new();
    while let Some((ln, header)) = lines.next() {
        let mut parts = header.split_whitespace();
        if parts.next() != Some("biq") {
            return Err(Error::parse(ln, format!("expected header `biq <n>`, found `{header}`")));
        }
        let n = match (parts.next(), parts.next()) {
            (Some(tok), None) => parse_uint(tok, ln)?,
            _ => return Err(Error::parse(ln, "header must be `biq <n>`")),
        };
        if !(1..=255).contains(&n) {
            return Err(Error::parse(ln, format!("order {n} outside 1..=255")));
        }
        let lo = if allow_blank { 0 } else { 1 };
        let mut rows = Vec::with_capacity(2 * n);
        for r in 0..2 * n {
            let (rl, line) = lines
                .next()
                .ok_or_else(|| Error::parse(ln, format!("expected {} rows, found {r}", 2 * n)))?;
            let row = line
                .split_whitespace()
                .map(|tok| {
                    let v = parse_uint(tok, rl)?;
                    if v < lo || v > n {
                        return Err(Error::parse(rl, format!("entry {v} outside {lo}..={n}")));
                    }
                    Ok(v as u8)
                })
                .collect::<Result<Vec<u8>>>()?;
            if row.len() != 2 * n {
                return Err(Error::parse(
                    rl,
                    format!("expected {} entries, found {}", 2 * n, row.len()),
                ));
            }
            rows.push(row);
        }
        grids.push(Grid { order: n, rows });
    }
    Ok(grids)
}

fn parse_single(text: &str, allow_blank: bool) -> Result<Grid> {
    let mut grids = parse_grids(text, allow_blank)?;
    match grids.len() {
        1 => Ok(grids.pop().unwrap()),
        0 => Err(Error::parse(1, "no `biq` record found")),
        k => Err(Error::parse(1, format!("expected one `biq` record, found {k}"))),
    }
}

/// Parses every record in `text` as a complete matrix.
pub fn parse_matrices(text: &str) -> Result<Vec<BlockMatrix>> {
    parse_grids(text, false)?
        .iter()
        .map(|g| BlockMatrix::from_rows(&g.rows))
        .collect()
}

impl FromStr for BlockMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BlockMatrix::from_rows(&parse_single(s, false)?.rows)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::from_rows(&parse_single(s, true)?.rows)
    }
}

pub(crate) fn write_grid<'a>(
    f: &mut fmt::Formatter<'_>,
    n: usize,
    rows: impl Iterator<Item = &'a [u8]>,
) -> fmt::Result {
    writeln!(f, "biq {n}")?;
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        f.write_str("\n")?;
    }
    Ok(())
}

impl fmt::Display for BlockMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_grid(f, self.order(), self.rows())
    }
}

impl fmt::Display for Biquandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix().fmt(f)
    }
}

/// Writes records separated by blank lines.
pub fn emit_records<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}
