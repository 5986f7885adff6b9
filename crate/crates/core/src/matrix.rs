//! Finite biquandles stored as `2n x 2n` block matrices.
//!
//! Elements are `1..=n`. The four `n x n` blocks are laid out as
//! `[[M1 | M2], [M3 | M4]]` where
//!
//! | block | operation      | notation  |
//! |-------|----------------|-----------|
//! | `M1`  | upper-left     | `a^{~b}`  |
//! | `M2`  | upper-right    | `a^b`     |
//! | `M3`  | lower-left     | `a_{~b}`  |
//! | `M4`  | lower-right    | `a_b`     |
//!
//! and `Mk[a][b]` is the result of applying operation `k` to input `a` with
//! operator `b`. Cells are stored row-major over the whole `2n x 2n` layout,
//! so the derived ordering is the canonical lexicographic order of the
//! flattened matrix.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// One of the four biquandle operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    /// `a^{~b}`, block `M1`.
    UpperLeft,
    /// `a^b`, block `M2`.
    UpperRight,
    /// `a_{~b}`, block `M3`.
    LowerLeft,
    /// `a_b`, block `M4`.
    LowerRight,
}

impl OpKind {
    pub const ALL: [OpKind; 4] = [
        OpKind::UpperLeft,
        OpKind::UpperRight,
        OpKind::LowerLeft,
        OpKind::LowerRight,
    ];

    /// Zero-based block index (`M1` is 0).
    pub fn block(self) -> usize {
        match self {
            OpKind::UpperLeft => 0,
            OpKind::UpperRight => 1,
            OpKind::LowerLeft => 2,
            OpKind::LowerRight => 3,
        }
    }

    pub fn from_block(block: usize) -> Option<OpKind> {
        OpKind::ALL.get(block).copied()
    }

    /// Left and right operations exchanged.
    pub fn obverse(self) -> OpKind {
        match self {
            OpKind::UpperLeft => OpKind::UpperRight,
            OpKind::UpperRight => OpKind::UpperLeft,
            OpKind::LowerLeft => OpKind::LowerRight,
            OpKind::LowerRight => OpKind::LowerLeft,
        }
    }

    /// Upper and lower operations exchanged.
    pub fn flip(self) -> OpKind {
        match self {
            OpKind::UpperLeft => OpKind::LowerLeft,
            OpKind::UpperRight => OpKind::LowerRight,
            OpKind::LowerLeft => OpKind::UpperLeft,
            OpKind::LowerRight => OpKind::UpperRight,
        }
    }

    pub fn is_upper(self) -> bool {
        matches!(self, OpKind::UpperLeft | OpKind::UpperRight)
    }

    pub fn is_left(self) -> bool {
        matches!(self, OpKind::UpperLeft | OpKind::LowerLeft)
    }

    /// Text letter: `U`/`L` for the unbarred (right) operations, `u`/`l` for
    /// the barred (left) ones.
    pub fn letter(self) -> char {
        match self {
            OpKind::UpperLeft => 'u',
            OpKind::UpperRight => 'U',
            OpKind::LowerLeft => 'l',
            OpKind::LowerRight => 'L',
        }
    }

    pub fn from_letter(c: char) -> Option<OpKind> {
        match c {
            'u' => Some(OpKind::UpperLeft),
            'U' => Some(OpKind::UpperRight),
            'l' => Some(OpKind::LowerLeft),
            'L' => Some(OpKind::LowerRight),
            _ => None,
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Position of `Mk[a][b]` in the row-major `2n x 2n` layout. `a`, `b` are 1-based.
#[inline]
pub(crate) fn cell_index(n: usize, block: usize, a: usize, b: usize) -> usize {
    let row = a - 1 + n * (block >> 1);
    let col = b - 1 + n * (block & 1);
    row * 2 * n + col
}

/// Inverse of [`cell_index`]: `(block, a, b)` with 1-based `a`, `b`.
#[inline]
pub(crate) fn cell_coords(n: usize, idx: usize) -> (usize, usize, usize) {
    let row = idx / (2 * n);
    let col = idx % (2 * n);
    let block = 2 * (row / n) + col / n;
    (block, row % n + 1, col % n + 1)
}

/// Names one of the twenty axioms (or a group of existential items that are
/// witnessed together).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Axiom {
    pub group: u8,
    pub item: &'static str,
}

impl Axiom {
    const fn new(group: u8, item: &'static str) -> Self {
        Axiom { group, item }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.group, self.item)
    }
}

/// A complete `2n x 2n` block matrix with entries in `1..=n`. Not necessarily
/// a biquandle; see [`BlockMatrix::biqtest`] and [`Biquandle`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockMatrix {
    order: usize,
    cells: Vec<u8>,
}

impl BlockMatrix {
    /// Builds a matrix from its `2n` rows of length `2n`.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let (order, cells) = flatten_rows(rows, false)?;
        Ok(BlockMatrix { order, cells })
    }

    /// Builds a matrix from the four `n x n` blocks `[M1, M2, M3, M4]`.
    pub fn from_blocks(blocks: [&[Vec<u8>]; 4]) -> Result<Self> {
        let n = blocks[0].len();
        let mut rows = vec![Vec::with_capacity(2 * n); 2 * n];
        for (k, block) in blocks.iter().enumerate() {
            if block.len() != n {
                return Err(Error::invalid(format!(
                    "block M{} has {} rows, expected {}",
                    k + 1,
                    block.len(),
                    n
                )));
            }
            for (i, row) in block.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::invalid(format!(
                        "block M{} row {} has {} entries, expected {}",
                        k + 1,
                        i + 1,
                        row.len(),
                        n
                    )));
                }
                rows[i + n * (k >> 1)].extend_from_slice(row);
            }
        }
        Self::from_rows(&rows)
    }

    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), 4 * order * order);
        BlockMatrix { order, cells }
    }

    /// The trivial matrix `BT_n`: every operation returns its input.
    pub fn trivial(n: usize) -> Self {
        assert!((1..=255).contains(&n), "order must be in 1..=255");
        let mut cells = vec![0; 4 * n * n];
        for block in 0..4 {
            for a in 1..=n {
                for b in 1..=n {
                    cells[cell_index(n, block, a, b)] = a as u8;
                }
            }
        }
        BlockMatrix { order: n, cells }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Row-major cells of the `2n x 2n` layout.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// `Mk[a][b]` without bounds checks beyond the slice index. 1-based.
    #[inline]
    pub fn get(&self, op: OpKind, a: usize, b: usize) -> usize {
        self.cells[cell_index(self.order, op.block(), a, b)] as usize
    }

    /// Table lookup with range checking.
    pub fn eval_op(&self, op: OpKind, a: usize, b: usize) -> Result<usize> {
        let n = self.order;
        if !(1..=n).contains(&a) || !(1..=n).contains(&b) {
            return Err(Error::invalid(format!(
                "elements ({a}, {b}) out of range 1..={n}"
            )));
        }
        Ok(self.get(op, a, b))
    }

    /// One block as `n` rows.
    pub fn block(&self, op: OpKind) -> Vec<Vec<u8>> {
        let n = self.order;
        (1..=n)
            .map(|a| {
                (1..=n)
                    .map(|b| self.get(op, a, b) as u8)
                    .collect()
            })
            .collect()
    }

    /// The `2n` rows of the full layout.
    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.cells.chunks(2 * self.order)
    }

    fn permute_blocks(&self, map: impl Fn(OpKind) -> OpKind) -> Self {
        let n = self.order;
        let mut cells = vec![0; self.cells.len()];
        for op in OpKind::ALL {
            let src = map(op);
            for a in 1..=n {
                for b in 1..=n {
                    cells[cell_index(n, op.block(), a, b)] = self.get(src, a, b) as u8;
                }
            }
        }
        BlockMatrix { order: n, cells }
    }

    /// Swaps `M1 <-> M2` and `M3 <-> M4`.
    pub fn obverse(&self) -> Self {
        self.permute_blocks(OpKind::obverse)
    }

    /// Swaps `M1 <-> M3` and `M2 <-> M4`.
    pub fn flip(&self) -> Self {
        self.permute_blocks(OpKind::flip)
    }

    /// Relabels elements by `perm`, a 1-based image table of length `n`
    /// (`perm[a - 1]` is the new name of `a`). The result is isomorphic to
    /// `self` via `perm`.
    pub fn relabel(&self, perm: &[u8]) -> Self {
        let n = self.order;
        assert_eq!(perm.len(), n);
        let mut cells = vec![0; self.cells.len()];
        for op in OpKind::ALL {
            for a in 1..=n {
                for b in 1..=n {
                    let pa = perm[a - 1] as usize;
                    let pb = perm[b - 1] as usize;
                    cells[cell_index(n, op.block(), pa, pb)] = perm[self.get(op, a, b) - 1];
                }
            }
        }
        BlockMatrix { order: n, cells }
    }

    /// Checks all twenty axioms and reports the first one that fails.
    ///
    /// Universal axioms are checked at every argument tuple; existential
    /// ones by scanning all candidate witnesses.
    pub fn check_axioms(&self) -> std::result::Result<(), Axiom> {
        let n = self.order;
        let ur = |a: usize, b: usize| self.get(OpKind::UpperRight, a, b);
        let ul = |a: usize, b: usize| self.get(OpKind::UpperLeft, a, b);
        let lr = |a: usize, b: usize| self.get(OpKind::LowerRight, a, b);
        let ll = |a: usize, b: usize| self.get(OpKind::LowerLeft, a, b);
        let els = || 1..=n;

        // direct type II
        for a in els() {
            for b in els() {
                if ul(ur(a, b), lr(b, a)) != a {
                    return Err(Axiom::new(1, "i"));
                }
                if ll(lr(b, a), ur(a, b)) != b {
                    return Err(Axiom::new(1, "ii"));
                }
                if ur(ul(a, b), ll(b, a)) != a {
                    return Err(Axiom::new(1, "iii"));
                }
                if lr(ll(b, a), ul(a, b)) != b {
                    return Err(Axiom::new(1, "iv"));
                }
            }
        }

        // reverse type II
        for a in els() {
            for b in els() {
                let x_found = els().any(|x| {
                    x == ur(a, ll(b, x)) && a == ul(x, b) && b == lr(ll(b, x), a)
                });
                if !x_found {
                    return Err(Axiom::new(2, "i-iii"));
                }
                let y_found = els().any(|y| {
                    y == ul(a, lr(b, y)) && a == ur(y, b) && b == ll(lr(b, y), a)
                });
                if !y_found {
                    return Err(Axiom::new(2, "iv-vi"));
                }
            }
        }

        // type III, all crossings of one sign
        for a in els() {
            for b in els() {
                for c in els() {
                    if ur(ur(a, b), c) != ur(ur(a, lr(c, b)), ur(b, c)) {
                        return Err(Axiom::new(3, "i"));
                    }
                    if lr(lr(c, b), a) != lr(lr(c, ur(a, b)), lr(b, a)) {
                        return Err(Axiom::new(3, "ii"));
                    }
                    if ur(lr(b, a), lr(c, ur(a, b))) != lr(ur(b, c), ur(a, lr(c, b))) {
                        return Err(Axiom::new(3, "iii"));
                    }
                    if ul(ul(a, b), c) != ul(ul(a, ll(c, b)), ul(b, c)) {
                        return Err(Axiom::new(3, "iv"));
                    }
                    if ll(ll(c, b), a) != ll(ll(c, ul(a, b)), ll(b, a)) {
                        return Err(Axiom::new(3, "v"));
                    }
                    if ul(ll(b, a), ll(c, ul(a, b))) != ll(ul(b, c), ul(a, ll(c, b))) {
                        return Err(Axiom::new(3, "vi"));
                    }
                }
            }
        }

        // type I
        for a in els() {
            if !els().any(|x| x == lr(a, x) && a == ur(x, a)) {
                return Err(Axiom::new(4, "i-ii"));
            }
            if !els().any(|y| y == ul(a, y) && a == ll(y, a)) {
                return Err(Axiom::new(4, "iii-iv"));
            }
        }
        Ok(())
    }

    /// True iff the matrix satisfies all twenty biquandle axioms.
    pub fn biqtest(&self) -> bool {
        self.check_axioms().is_ok()
    }

    /// Rebuilds the full matrix from its switch matrix `[M2 | M4]`.
    ///
    /// The switch `S(a, b) = (S4[b][a], S2[a][b])` must be a bijection on
    /// pairs; its inverse `S^-1(x, y) = (y^{~x}, x_{~y})` determines `M1` and
    /// `M3`. The result is not checked against the axioms.
    pub fn from_switch(upper_right: &[Vec<u8>], lower_right: &[Vec<u8>]) -> Result<Self> {
        let n = upper_right.len();
        let check = |t: &[Vec<u8>], name: &str| -> Result<()> {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(Error::invalid(format!("{name} is not {n}x{n}")));
            }
            if t.iter().flatten().any(|&v| v == 0 || v as usize > n) {
                return Err(Error::invalid(format!("{name} has entries outside 1..={n}")));
            }
            Ok(())
        };
        if n == 0 {
            return Err(Error::invalid("empty switch matrix"));
        }
        check(upper_right, "S2")?;
        check(lower_right, "S4")?;

        let mut ul = vec![vec![0u8; n]; n];
        let mut ll = vec![vec![0u8; n]; n];
        let mut seen = vec![false; n * n];
        for a in 1..=n {
            for b in 1..=n {
                let x = lower_right[b - 1][a - 1] as usize;
                let y = upper_right[a - 1][b - 1] as usize;
                let slot = (x - 1) * n + (y - 1);
                if seen[slot] {
                    return Err(Error::invalid(format!(
                        "switch map is not a bijection: pair ({x}, {y}) hit twice"
                    )));
                }
                seen[slot] = true;
                ul[y - 1][x - 1] = a as u8;
                ll[x - 1][y - 1] = b as u8;
            }
        }
        Self::from_blocks([&ul, upper_right, &ll, lower_right])
    }
}

/// Validates a rectangular `2n x 2n` array. `allow_blank` admits entry 0.
pub(crate) fn flatten_rows(rows: &[Vec<u8>], allow_blank: bool) -> Result<(usize, Vec<u8>)> {
    let size = rows.len();
    if size == 0 || !size.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "matrix must have 2n rows for some n >= 1, got {size}"
        )));
    }
    let n = size / 2;
    if n > 255 {
        return Err(Error::invalid("order above 255 is not supported"));
    }
    let mut cells = Vec::with_capacity(size * size);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != size {
            return Err(Error::invalid(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                size
            )));
        }
        for (j, &v) in row.iter().enumerate() {
            let lo = if allow_blank { 0 } else { 1 };
            if (v as usize) < lo || v as usize > n {
                return Err(Error::invalid(format!(
                    "entry {v} at ({}, {}) outside {lo}..={n}",
                    i + 1,
                    j + 1
                )));
            }
        }
        cells.extend_from_slice(row);
    }
    Ok((n, cells))
}

/// A block matrix known to satisfy every biquandle axiom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Biquandle(BlockMatrix);

impl TryFrom<BlockMatrix> for Biquandle {
    type Error = Error;

    fn try_from(m: BlockMatrix) -> Result<Self> {
        m.check_axioms().map_err(Error::NotBiquandle)?;
        Ok(Biquandle(m))
    }
}

impl Deref for Biquandle {
    type Target = BlockMatrix;

    fn deref(&self) -> &BlockMatrix {
        &self.0
    }
}

impl From<Biquandle> for BlockMatrix {
    fn from(b: Biquandle) -> BlockMatrix {
        b.0
    }
}

impl Biquandle {
    /// Wraps a matrix the caller has already verified.
    pub(crate) fn new_unchecked(m: BlockMatrix) -> Self {
        debug_assert!(m.biqtest());
        Biquandle(m)
    }

    pub fn trivial(n: usize) -> Self {
        Biquandle(BlockMatrix::trivial(n))
    }

    pub fn matrix(&self) -> &BlockMatrix {
        &self.0
    }

    pub fn obverse(&self) -> Self {
        Biquandle(self.0.obverse())
    }

    pub fn flip(&self) -> Self {
        Biquandle(self.0.flip())
    }

    pub fn relabel(&self, perm: &[u8]) -> Self {
        Biquandle(self.0.relabel(perm))
    }

    fn block_is_trivial(&self, op: OpKind) -> bool {
        let n = self.order();
        (1..=n).all(|a| (1..=n).all(|b| self.get(op, a, b) == a))
    }

    /// Quandle biquandle: both lower operations are trivial.
    pub fn is_qbiq(&self) -> bool {
        self.block_is_trivial(OpKind::LowerLeft) && self.block_is_trivial(OpKind::LowerRight)
    }

    /// True when either both lower or both upper operations are trivial, so
    /// the biquandle or its flip is a qbiq.
    pub fn is_quandle_like(&self) -> bool {
        self.is_qbiq()
            || (self.block_is_trivial(OpKind::UpperLeft)
                && self.block_is_trivial(OpKind::UpperRight))
    }

    /// Some element generates everything by acting on it (in the input
    /// position) with arbitrary elements under all four operations.
    pub fn is_connected(&self) -> bool {
        let n = self.order();
        (1..=n).any(|start| self.orbit(start).len() == n)
    }

    /// Closure of `{start}` under every right translation `x -> Mk[x][y]`.
    pub fn orbit(&self, start: usize) -> Vec<usize> {
        let n = self.order();
        let mut seen = vec![false; n + 1];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for op in OpKind::ALL {
                for y in 1..=n {
                    let z = self.get(op, x, y);
                    if !seen[z] {
                        seen[z] = true;
                        stack.push(z);
                    }
                }
            }
        }
        (1..=n).filter(|&x| seen[x]).collect()
    }

    /// Elements idempotent in all four operations.
    pub fn idempotents(&self) -> Vec<usize> {
        (1..=self.order())
            .filter(|&a| OpKind::ALL.iter().all(|&op| self.get(op, a, a) == a))
            .collect()
    }

    pub fn idempotent_count(&self) -> usize {
        self.idempotents().len()
    }

    /// The qbiq `[[dual Q | Q], [T_n | T_n]]` of a quandle.
    pub fn from_quandle(q: &QuandleMatrix) -> Result<Self> {
        q.check_axioms().map_err(Error::Invalid)?;
        let n = q.order();
        let trivial: Vec<Vec<u8>> = (1..=n).map(|a| vec![a as u8; n]).collect();
        let m = BlockMatrix::from_blocks([&q.dual().rows(), &q.rows(), &trivial, &trivial])?;
        Biquandle::try_from(m)
    }
}

/// Operation table of a finite quandle, `Q[a][b] = a^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuandleMatrix {
    order: usize,
    table: Vec<u8>,
}

impl QuandleMatrix {
    /// Accepts any square table with entries in `1..=n`; quandle axioms are
    /// checked separately by [`QuandleMatrix::check_axioms`].
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > 255 {
            return Err(Error::invalid(format!("quandle order {n} out of range")));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!("quandle row {} has wrong length", i + 1)));
            }
            if row.iter().any(|&v| v == 0 || v as usize > n) {
                return Err(Error::invalid(format!(
                    "quandle row {} has entries outside 1..={n}",
                    i + 1
                )));
            }
            table.extend_from_slice(row);
        }
        Ok(QuandleMatrix { order: n, table })
    }

    pub fn trivial(n: usize) -> Self {
        let rows: Vec<Vec<u8>> = (1..=n).map(|a| vec![a as u8; n]).collect();
        Self::from_rows(&rows).expect("trivial table is well formed")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.table[(a - 1) * self.order + (b - 1)] as usize
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Idempotence, invertible columns and right self-distributivity.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let n = self.order;
        for a in 1..=n {
            if self.get(a, a) != a {
                return Err(format!("quandle axiom (i) fails: {a}^{a} != {a}"));
            }
        }
        for b in 1..=n {
            let mut seen = vec![false; n + 1];
            for a in 1..=n {
                let v = self.get(a, b);
                if seen[v] {
                    return Err(format!("quandle axiom (ii) fails: column {b} repeats {v}"));
                }
                seen[v] = true;
            }
        }
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    if self.get(self.get(a, b), c) != self.get(self.get(a, c), self.get(b, c)) {
                        return Err(format!("quandle axiom (iii) fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// The dual quandle `a^{~b}`: each column permutation inverted. Requires
    /// permutation columns.
    pub fn dual(&self) -> QuandleMatrix {
        let n = self.order;
        let mut table = vec![0u8; n * n];
        for a in 1..=n {
            for b in 1..=n {
                let c = self.get(a, b);
                table[(c - 1) * n + (b - 1)] = a as u8;
            }
        }
        QuandleMatrix { order: n, table }
    }
}
