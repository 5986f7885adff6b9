//! Completion of partial biquandle matrices and enumeration of all finite
//! biquandles of a given order.

mod pattern;
mod propagate;

pub use pattern::Pattern;
pub use propagate::{avail, biqfill, Fill};

use std::cmp::Reverse;

use rayon::prelude::*;

use crate::matrix::{cell_coords, cell_index, Biquandle, OpKind};

/// A blank chosen for branching, with the values to try there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub op: OpKind,
    pub row: usize,
    pub col: usize,
    pub values: Vec<u8>,
}

/// Branching priority: switch-block blanks first, then fewest remaining
/// values, then the score below.
type Key = (bool, Reverse<usize>, u32);

/// Picks the blank most likely to complete a column, a row or an axiom word.
///
/// Blanks in the switch blocks (upper-right, lower-right) are preferred, then
/// blanks with the fewest values left, then the highest score.
/// Score: determined cells in the blank's column, plus determined cells in
/// its block row (one more if the row already has its fixed entry), plus the
/// number of equation instances in which the blank is the only missing entry
/// at the top of one side. Ties go to the smallest `(block, row, col)`.
/// Returns `None` when the pattern is complete.
pub fn ratezero(p: &Pattern) -> Option<Branch> {
    let n = p.order();
    let cells = p.cells();
    if p.is_complete() {
        return None;
    }
    let pending = propagate::pending_counts(p);
    let mut best: Option<(Key, usize)> = None;
    for block in 0..4 {
        for a in 1..=n {
            let mut row_known = 0u32;
            let mut row_fixed = 0u32;
            for j in 1..=n {
                let v = cells[cell_index(n, block, a, j)] as usize;
                if v != 0 {
                    row_known += 1;
                    if v == j {
                        row_fixed = 1;
                    }
                }
            }
            for b in 1..=n {
                let idx = cell_index(n, block, a, b);
                if cells[idx] != 0 {
                    continue;
                }
                let col_known = (1..=n)
                    .filter(|&r| cells[cell_index(n, block, r, b)] != 0)
                    .count() as u32;
                let score = col_known + row_known + row_fixed + pending[idx];
                let choices = propagate::avail_in(n, cells, block, a, b).len();
                let key = (block & 1 == 1, Reverse(choices), score);
                if best.as_ref().is_none_or(|(k, _)| key > *k) {
                    best = Some((key, idx));
                }
            }
        }
    }
    let (_, idx) = best?;
    let (block, row, col) = cell_coords(n, idx);
    let values = propagate::avail_in(n, cells, block, row, col);
    Some(Branch {
        op: OpKind::from_block(block).expect("block index below 4"),
        row,
        col,
        values,
    })
}

fn children(p: &Pattern) -> Vec<Pattern> {
    let Some(branch) = ratezero(p) else {
        return Vec::new();
    };
    let idx = cell_index(p.order(), branch.op.block(), branch.row, branch.col);
    branch
        .values
        .iter()
        .filter_map(|&v| {
            let mut child = p.clone();
            child.cells[idx] = v;
            biqfill(&child).into_pattern()
        })
        .collect()
}

/// Depth-first search below an already propagated pattern.
fn search(p: Pattern, out: &mut Vec<Biquandle>) {
    if let Some(m) = p.to_matrix() {
        if m.biqtest() {
            out.push(Biquandle::new_unchecked(m));
        }
        return;
    }
    for child in children(&p) {
        search(child, out);
    }
}

/// All completions of `p` that are biquandles, in ascending lexicographic
/// order of the flattened `2n x 2n` matrix.
pub fn biqlist(p: &Pattern) -> Vec<Biquandle> {
    let mut out = Vec::new();
    if let Fill::Filled(start) = biqfill(p) {
        search(start, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

/// Same result as [`biqlist`], with subtrees explored on `jobs` threads.
pub fn biqlist_parallel(p: &Pattern, jobs: usize) -> Vec<Biquandle> {
    let jobs = jobs.max(1);
    if jobs == 1 {
        return biqlist(p);
    }
    let Fill::Filled(start) = biqfill(p) else {
        return Vec::new();
    };

    // widen the frontier breadth-first until there is enough work to share
    let mut done = Vec::new();
    let mut frontier = vec![start];
    while !frontier.is_empty() && frontier.len() < jobs * 8 {
        let mut next = Vec::new();
        for q in frontier {
            if q.is_complete() {
                done.push(q);
            } else {
                next.extend(children(&q));
            }
        }
        frontier = next;
    }
    frontier.extend(done);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let mut out: Vec<Biquandle> = pool.install(|| {
        frontier
            .into_par_iter()
            .flat_map_iter(|q| {
                let mut found = Vec::new();
                search(q, &mut found);
                found
            })
            .collect()
    });
    out.sort();
    out.dedup();
    out
}

/// Every biquandle of order `n`.
pub fn enumerate(n: usize) -> Vec<Biquandle> {
    biqlist(&Pattern::blank(n))
}
