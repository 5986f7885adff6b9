//! Finitely presented biquandles given by short relations.
//!
//! A relation `(input, op, operator, output)` says `op(input, operator) =
//! output`, e.g. `1_{~3} = 2` is `(1, LowerLeft, 3, 2)`. Knot diagrams give
//! presentations whose semiarcs are numbered along the orientation, so that
//! relation `i` always outputs `i + 1`; such a presentation is stored
//! compactly as a [`PresentationVector`].
//!
//! Text formats:
//!
//! ```text
//! pv 4
//! l3 l4 u1 u2
//! ```
//!
//! ```text
//! pres 2 2
//! rel 1 u2 2
//! rel 2 l1 1
//! ```
//!
//! Op letters: `U` = `a^b`, `u` = `a^{~b}`, `L` = `a_b`, `l` = `a_{~b}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::format::{content_lines, parse_uint};
use crate::matrix::{cell_coords, cell_index, BlockMatrix, OpKind};
use crate::search::Pattern;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub input: usize,
    pub op: OpKind,
    pub operator: usize,
    pub output: usize,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rel {} {}{} {}",
            self.input,
            self.op.letter(),
            self.operator,
            self.output
        )
    }
}

/// Generators `1..=g` and explicit short relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: usize,
    relations: Vec<Relation>,
}

impl Presentation {
    /// Checks that indices are in range and that no two relations assign
    /// different outputs to the same `(op, input, operator)` triple.
    pub fn new(generators: usize, relations: Vec<Relation>) -> Result<Self> {
        if generators == 0 {
            return Err(Error::invalid("a presentation needs at least one generator"));
        }
        let mut seen = BTreeMap::new();
        for r in &relations {
            for (what, v) in [("input", r.input), ("operator", r.operator), ("output", r.output)] {
                if !(1..=generators).contains(&v) {
                    return Err(Error::invalid(format!(
                        "{what} {v} of `{r}` outside 1..={generators}"
                    )));
                }
            }
            if let Some(prev) = seen.insert((r.op, r.input, r.operator), r.output) {
                if prev != r.output {
                    return Err(Error::invalid(format!(
                        "relations give {}{}{} two outputs, {prev} and {}",
                        r.input,
                        r.op.letter(),
                        r.operator,
                        r.output
                    )));
                }
            }
        }
        Ok(Presentation {
            generators,
            relations,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Reads one relation from every non-blank cell of a presentation matrix.
    pub fn from_pattern(p: &Pattern) -> Self {
        let n = p.order();
        let relations = p
            .cells()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(idx, &v)| {
                let (block, a, b) = cell_coords(n, idx);
                Relation {
                    input: a,
                    op: OpKind::from_block(block).expect("block index below 4"),
                    operator: b,
                    output: v as usize,
                }
            })
            .collect();
        Presentation {
            generators: n,
            relations,
        }
    }

    /// The presentation whose relations are the whole operation table.
    pub fn from_matrix(m: &BlockMatrix) -> Self {
        Self::from_pattern(&Pattern::from(m))
    }

    /// The presentation matrix: each relation fills one cell of the
    /// corresponding block, everything else blank.
    pub fn to_pattern(&self) -> Result<Pattern> {
        let g = self.generators;
        if g > 255 {
            return Err(Error::invalid("more than 255 generators cannot form a matrix"));
        }
        let mut p = Pattern::blank(g);
        for r in &self.relations {
            let idx = cell_index(g, r.op.block(), r.input, r.operator);
            match p.cells[idx] as usize {
                0 => p.cells[idx] = r.output as u8,
                v if v == r.output => {}
                v => {
                    return Err(Error::invalid(format!(
                        "cell of `{r}` already holds {v}"
                    )))
                }
            }
        }
        Ok(p)
    }

    /// Knotlike: each generator is input, operator and output exactly once,
    /// and relations pair up as switch relations (`a^b = c` with `b_a = d`,
    /// or `a^{~b} = c` with `b_{~a} = d`).
    pub fn is_knotlike(&self) -> bool {
        let g = self.generators;
        let mut counts = vec![[0usize; 3]; g + 1];
        for r in &self.relations {
            counts[r.input][0] += 1;
            counts[r.operator][1] += 1;
            counts[r.output][2] += 1;
        }
        if counts[1..].iter().any(|c| *c != [1, 1, 1]) {
            return false;
        }
        let by_input: BTreeMap<usize, &Relation> =
            self.relations.iter().map(|r| (r.input, r)).collect();
        self.relations.iter().all(|r| {
            by_input.get(&r.operator).is_some_and(|partner| {
                partner.operator == r.input
                    && partner.op == r.op.flip()
                    && partner.input != r.input
            })
        })
    }

    /// Generators renamed by `perm` (`perm[i - 1]` is the new name of `i`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.generators {
            return Err(Error::invalid("relabelling has the wrong length"));
        }
        let map = |i: usize| perm[i - 1];
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                input: map(r.input),
                op: r.op,
                operator: map(r.operator),
                output: map(r.output),
            })
            .collect();
        Presentation::new(self.generators, relations)
    }

    fn map_ops(&self, f: impl Fn(OpKind) -> OpKind) -> Self {
        Presentation {
            generators: self.generators,
            relations: self
                .relations
                .iter()
                .map(|r| Relation { op: f(r.op), ..*r })
                .collect(),
        }
    }

    /// Presentation of the obverse biquandle (left and right operations
    /// exchanged).
    pub fn obverse(&self) -> Self {
        self.map_ops(OpKind::obverse)
    }

    /// Presentation of the flipped biquandle.
    pub fn flip(&self) -> Self {
        self.map_ops(OpKind::flip)
    }

    /// Parses any supported source: `pv`, `pres`, or a `biq` presentation
    /// matrix (blanks allowed), chosen by the first header keyword.
    pub fn parse_any(text: &str) -> Result<Self> {
        let keyword = content_lines(text)
            .next()
            .and_then(|(_, l)| l.split_whitespace().next())
            .unwrap_or("");
        match keyword {
            "pv" => Ok(text.parse::<PresentationVector>()?.to_presentation()),
            "pres" => text.parse(),
            "biq" => Ok(Presentation::from_pattern(&text.parse()?)),
            other => Err(Error::parse(
                1,
                format!("unknown presentation header `{other}`; expected pv, pres or biq"),
            )),
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pres {} {}", self.generators, self.relations.len())?;
        for r in &self.relations {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

fn parse_op_token(tok: &str, line: usize, n: usize) -> Result<(OpKind, usize)> {
    let mut chars = tok.chars();
    let letter = chars.next().unwrap_or(' ');
    let op = OpKind::from_letter(letter).ok_or_else(|| {
        Error::parse(line, format!("unknown op letter `{letter}` in `{tok}`; use U, u, L or l"))
    })?;
    let rest = chars.as_str();
    if rest.is_empty() || !rest.bytes().all(|c| c.is_ascii_digit()) {
        return Err(Error::parse(line, format!("`{tok}` needs a decimal operator index")));
    }
    let idx = parse_uint(rest, line)?;
    if !(1..=n).contains(&idx) {
        return Err(Error::parse(line, format!("operator {idx} in `{tok}` outside 1..={n}")));
    }
    Ok((op, idx))
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let (g, count) = match parts.as_slice() {
            ["pres", g, r] => (parse_uint(g, ln)?, parse_uint(r, ln)?),
            _ => return Err(Error::parse(ln, "header must be `pres <generators> <relations>`")),
        };
        if g == 0 {
            return Err(Error::parse(ln, "a presentation needs at least one generator"));
        }
        let mut relations = Vec::with_capacity(count);
        for (ln, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let rel = match parts.as_slice() {
                ["rel", input, op, output] => {
                    let (op, operator) = parse_op_token(op, ln, g)?;
                    let input = parse_uint(input, ln)?;
                    let output = parse_uint(output, ln)?;
                    for v in [input, output] {
                        if !(1..=g).contains(&v) {
                            return Err(Error::parse(ln, format!("generator {v} outside 1..={g}")));
                        }
                    }
                    Relation {
                        input,
                        op,
                        operator,
                        output,
                    }
                }
                _ => {
                    return Err(Error::parse(
                        ln,
                        "relation must be `rel <input> <op><operator> <output>`",
                    ))
                }
            };
            relations.push(rel);
        }
        if relations.len() != count {
            return Err(Error::parse(
                ln,
                format!("header declares {count} relations, found {}", relations.len()),
            ));
        }
        Presentation::new(g, relations).map_err(|e| Error::parse(ln, e.to_string()))
    }
}

/// Entry `i` is the operation and operator carrying semiarc `i` to `i + 1`
/// (semiarc `n` wraps to 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentationVector {
    entries: Vec<(OpKind, usize)>,
}

impl PresentationVector {
    pub fn new(entries: Vec<(OpKind, usize)>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::invalid("empty presentation vector"));
        }
        if let Some((_, j)) = entries.iter().find(|(_, j)| !(1..=n).contains(j)) {
            return Err(Error::invalid(format!("operator {j} outside 1..={n}")));
        }
        Ok(PresentationVector { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(OpKind, usize)] {
        &self.entries
    }

    pub fn relations(&self) -> Vec<Relation> {
        let n = self.entries.len();
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &(op, operator))| Relation {
                input: i + 1,
                op,
                operator,
                output: (i + 1) % n + 1,
            })
            .collect()
    }

    pub fn to_presentation(&self) -> Presentation {
        Presentation {
            generators: self.entries.len(),
            relations: self.relations(),
        }
    }
}

impl fmt::Display for PresentationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pv {}", self.entries.len())?;
        let tokens: Vec<String> = self
            .entries
            .iter()
            .map(|(op, j)| format!("{}{j}", op.letter()))
            .collect();
        writeln!(f, "{}", tokens.join(" "))
    }
}

impl FromStr for PresentationVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["pv", n] => parse_uint(n, ln)?,
            _ => return Err(Error::parse(ln, "header must be `pv <n>`")),
        };
        if n == 0 {
            return Err(Error::parse(ln, "presentation vector must be non-empty"));
        }
        let mut entries = Vec::with_capacity(n);
        let mut last_line = ln;
        for (ln, line) in lines {
            last_line = ln;
            for tok in line.split_whitespace() {
                if entries.len() == n {
                    return Err(Error::parse(ln, format!("more than {n} entries")));
                }
                entries.push(parse_op_token(tok, ln, n)?);
            }
        }
        if entries.len() != n {
            return Err(Error::parse(
                last_line,
                format!("expected {n} entries, found {}", entries.len()),
            ));
        }
        PresentationVector::new(entries)
    }
}
