use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{cell_index, flatten_rows, BlockMatrix, OpKind};

/// A partially filled block matrix; entry 0 is a blank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    pub(crate) order: usize,
    pub(crate) cells: Vec<u8>,
}

impl Pattern {
    /// The all-blank pattern of order `n`.
    pub fn blank(n: usize) -> Self {
        assert!((1..=255).contains(&n), "order must be in 1..=255");
        Pattern {
            order: n,
            cells: vec![0; 4 * n * n],
        }
    }

    /// `2n` rows of `2n` entries in `0..=n`.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let (order, cells) = flatten_rows(rows, true)?;
        Ok(Pattern { order, cells })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.cells.chunks(2 * self.order)
    }

    /// Entry `Mk[a][b]`, 0 when blank.
    #[inline]
    pub fn get(&self, op: OpKind, a: usize, b: usize) -> u8 {
        self.cells[cell_index(self.order, op.block(), a, b)]
    }

    pub fn set(&mut self, op: OpKind, a: usize, b: usize, value: u8) -> Result<()> {
        let n = self.order;
        if !(1..=n).contains(&a) || !(1..=n).contains(&b) {
            return Err(Error::invalid(format!("position ({a}, {b}) outside 1..={n}")));
        }
        if value as usize > n {
            return Err(Error::invalid(format!("value {value} outside 0..={n}")));
        }
        self.cells[cell_index(n, op.block(), a, b)] = value;
        Ok(())
    }

    pub fn blank_count(&self) -> usize {
        self.cells.iter().filter(|&&v| v == 0).count()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|&v| v != 0)
    }

    /// The completed matrix, if no blanks remain.
    pub fn to_matrix(&self) -> Option<BlockMatrix> {
        self.is_complete()
            .then(|| BlockMatrix::from_cells_unchecked(self.order, self.cells.clone()))
    }

    /// True when every non-blank entry of `self` matches `m`.
    pub fn agrees_with(&self, m: &BlockMatrix) -> bool {
        self.order == m.order()
            && self
                .cells
                .iter()
                .zip(m.cells())
                .all(|(&p, &v)| p == 0 || p == v)
    }

    /// Checks the structural pattern invariants: no repeated value within a
    /// block column, and no block row with two entries equal to their
    /// column numbers.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.order;
        for op in OpKind::ALL {
            for b in 1..=n {
                let mut seen = vec![false; n + 1];
                for a in 1..=n {
                    let v = self.get(op, a, b) as usize;
                    if v != 0 {
                        if seen[v] {
                            return Err(format!(
                                "block M{} column {b} repeats {v}",
                                op.block() + 1
                            ));
                        }
                        seen[v] = true;
                    }
                }
            }
            for a in 1..=n {
                let fixed = (1..=n).filter(|&b| self.get(op, a, b) as usize == b).count();
                if fixed > 1 {
                    return Err(format!(
                        "block M{} row {a} has {fixed} entries equal to their column",
                        op.block() + 1
                    ));
                }
            }
        }
        Ok(())
    }
}

impl From<&BlockMatrix> for Pattern {
    fn from(m: &BlockMatrix) -> Self {
        Pattern {
            order: m.order(),
            cells: m.cells().to_vec(),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::format::write_grid(f, self.order, self.rows())
    }
}
