//! Constraint propagation over partial biquandle patterns.
//!
//! Every axiom equation is compiled into a pair of small stack programs over
//! the variables `a, b, c`. Evaluating a program against a pattern yields the
//! value of the word, the single blank cell that would determine it, or
//! nothing. An equation whose one side is known and whose other side is a
//! blank cell forces that cell.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::matrix::{cell_index, OpKind};

use super::pattern::Pattern;

#[derive(Clone, Debug)]
enum Term {
    Var(u8),
    /// `Mk[input][operator]`
    Op(OpKind, Box<Term>, Box<Term>),
    /// The unique `r` with `Mk[r][operator] = value`; columns are permutations.
    Inv(OpKind, Box<Term>, Box<Term>),
}

use OpKind::{LowerLeft as LL, LowerRight as LR, UpperLeft as UL, UpperRight as UR};

fn var(i: u8) -> Term {
    Term::Var(i)
}

fn op(k: OpKind, input: &Term, operator: &Term) -> Term {
    Term::Op(k, Box::new(input.clone()), Box::new(operator.clone()))
}

fn inv(k: OpKind, value: &Term, operator: &Term) -> Term {
    Term::Inv(k, Box::new(value.clone()), Box::new(operator.clone()))
}

#[derive(Clone, Copy, Debug)]
enum Instr {
    Var(u8),
    Op(u8),
    Inv(u8),
}

fn compile(t: &Term, out: &mut Vec<Instr>) {
    match t {
        Term::Var(i) => out.push(Instr::Var(*i)),
        Term::Op(k, x, y) => {
            compile(x, out);
            compile(y, out);
            out.push(Instr::Op(k.block() as u8));
        }
        Term::Inv(k, x, y) => {
            compile(x, out);
            compile(y, out);
            out.push(Instr::Inv(k.block() as u8));
        }
    }
}

/// An equation between two biquandle words, quantified over `arity` variables.
#[derive(Debug)]
pub(crate) struct Equation {
    pub(crate) arity: usize,
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) tag: &'static str,
    lhs: Vec<Instr>,
    rhs: Vec<Instr>,
}

impl Equation {
    fn new(arity: usize, tag: &'static str, lhs: Term, rhs: Term) -> Self {
        let mut l = Vec::new();
        let mut r = Vec::new();
        compile(&lhs, &mut l);
        compile(&rhs, &mut r);
        Equation {
            arity,
            tag,
            lhs: l,
            rhs: r,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Val {
    Known(u8),
    /// Operands known, but the cell holding the result is blank.
    Pending(u32),
    Unknown,
}

#[inline]
fn eval(prog: &[Instr], vars: &[u8; 3], n: usize, cells: &[u8]) -> Val {
    let mut stack = [Val::Unknown; 16];
    let mut sp = 0usize;
    for ins in prog {
        match *ins {
            Instr::Var(i) => {
                stack[sp] = Val::Known(vars[i as usize]);
                sp += 1;
            }
            Instr::Op(k) => {
                sp -= 1;
                let y = stack[sp];
                let x = stack[sp - 1];
                stack[sp - 1] = match (x, y) {
                    (Val::Known(x), Val::Known(y)) => {
                        let idx = cell_index(n, k as usize, x as usize, y as usize);
                        match cells[idx] {
                            0 => Val::Pending(idx as u32),
                            v => Val::Known(v),
                        }
                    }
                    _ => Val::Unknown,
                };
            }
            Instr::Inv(k) => {
                sp -= 1;
                let y = stack[sp];
                let x = stack[sp - 1];
                stack[sp - 1] = match (x, y) {
                    (Val::Known(x), Val::Known(y)) => (1..=n)
                        .find(|&r| cells[cell_index(n, k as usize, r, y as usize)] == x)
                        .map_or(Val::Unknown, |r| Val::Known(r as u8)),
                    _ => Val::Unknown,
                };
            }
        }
    }
    debug_assert_eq!(sp, 1);
    stack[0]
}

/// Applies the switch `S(x, y) = (y_x, x^y)` or its inverse
/// `S^-1(x, y) = (y^{~x}, x_{~y})` at positions (0,1) or (1,2) of a triple.
#[derive(Clone, Copy)]
enum Step {
    S1,
    S2,
    S1Inv,
    S2Inv,
}

fn switch(x: &Term, y: &Term, inverse: bool) -> (Term, Term) {
    if inverse {
        (op(UL, y, x), op(LL, x, y))
    } else {
        (op(LR, y, x), op(UR, x, y))
    }
}

fn apply_steps(steps: &[Step]) -> [Term; 3] {
    let mut t = [var(0), var(1), var(2)];
    for step in steps {
        let (pos, inverse) = match step {
            Step::S1 => (0, false),
            Step::S2 => (1, false),
            Step::S1Inv => (0, true),
            Step::S2Inv => (1, true),
        };
        let (p, q) = switch(&t[pos], &t[pos + 1], inverse);
        t[pos] = p;
        t[pos + 1] = q;
    }
    t
}

#[allow(clippy::vec_init_then_push)] // grouped by axiom, with comments between
fn build_equations() -> Vec<Equation> {
    let (a, b, c) = (var(0), var(1), var(2));
    let mut eqs = Vec::new();

    // direct type II
    eqs.push(Equation::new(2, "1(i)", op(UL, &op(UR, &a, &b), &op(LR, &b, &a)), a.clone()));
    eqs.push(Equation::new(2, "1(ii)", op(LL, &op(LR, &b, &a), &op(UR, &a, &b)), b.clone()));
    eqs.push(Equation::new(2, "1(iii)", op(UR, &op(UL, &a, &b), &op(LL, &b, &a)), a.clone()));
    eqs.push(Equation::new(2, "1(iv)", op(LR, &op(LL, &b, &a), &op(UL, &a, &b)), b.clone()));

    // reverse type II, with the witnesses pinned down by column inverses
    let x = inv(UL, &a, &b);
    let bx = op(LL, &b, &x);
    eqs.push(Equation::new(2, "2(i)", x.clone(), op(UR, &a, &bx)));
    eqs.push(Equation::new(2, "2(iii)", op(LR, &bx, &a), b.clone()));
    let y = inv(UR, &a, &b);
    let by = op(LR, &b, &y);
    eqs.push(Equation::new(2, "2(iv)", y.clone(), op(UL, &a, &by)));
    eqs.push(Equation::new(2, "2(vi)", op(LL, &by, &a), b.clone()));

    // type III, single-sign crossings
    eqs.push(Equation::new(
        3,
        "3(i)",
        op(UR, &op(UR, &a, &b), &c),
        op(UR, &op(UR, &a, &op(LR, &c, &b)), &op(UR, &b, &c)),
    ));
    eqs.push(Equation::new(
        3,
        "3(ii)",
        op(LR, &op(LR, &c, &b), &a),
        op(LR, &op(LR, &c, &op(UR, &a, &b)), &op(LR, &b, &a)),
    ));
    eqs.push(Equation::new(
        3,
        "3(iii)",
        op(UR, &op(LR, &b, &a), &op(LR, &c, &op(UR, &a, &b))),
        op(LR, &op(UR, &b, &c), &op(UR, &a, &op(LR, &c, &b))),
    ));
    eqs.push(Equation::new(
        3,
        "3(iv)",
        op(UL, &op(UL, &a, &b), &c),
        op(UL, &op(UL, &a, &op(LL, &c, &b)), &op(UL, &b, &c)),
    ));
    eqs.push(Equation::new(
        3,
        "3(v)",
        op(LL, &op(LL, &c, &b), &a),
        op(LL, &op(LL, &c, &op(UL, &a, &b)), &op(LL, &b, &a)),
    ));
    eqs.push(Equation::new(
        3,
        "3(vi)",
        op(UL, &op(LL, &b, &a), &op(LL, &c, &op(UL, &a, &b))),
        op(LL, &op(UL, &b, &c), &op(UL, &a, &op(LL, &c, &b))),
    ));

    // type III with mixed crossing signs, derived from the braid relation
    // and invertibility of the switch
    use Step::*;
    let mixed: [(&[Step], &[Step], [&'static str; 3]); 4] = [
        (&[S2, S1, S2Inv], &[S1Inv, S2, S1], ["m1.1", "m1.2", "m1.3"]),
        (&[S1, S2, S1Inv], &[S2Inv, S1, S2], ["m2.1", "m2.2", "m2.3"]),
        (&[S1, S2Inv, S1Inv], &[S2Inv, S1Inv, S2], ["m3.1", "m3.2", "m3.3"]),
        (&[S2, S1Inv, S2Inv], &[S1Inv, S2Inv, S1], ["m4.1", "m4.2", "m4.3"]),
    ];
    for (lhs, rhs, tags) in mixed {
        let l = apply_steps(lhs);
        let r = apply_steps(rhs);
        for i in 0..3 {
            eqs.push(Equation::new(3, tags[i], l[i].clone(), r[i].clone()));
        }
    }
    eqs
}

pub(crate) fn equations() -> &'static [Equation] {
    static EQS: OnceLock<Vec<Equation>> = OnceLock::new();
    EQS.get_or_init(build_equations)
}

/// Calls `f(lhs, rhs)` for every instance of every equation.
fn for_each_instance(
    p: &Pattern,
    mut f: impl FnMut(&Equation, Val, Val) -> bool,
) -> bool {
    let n = p.order;
    for eq in equations() {
        let cs = if eq.arity == 3 { n } else { 1 };
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=cs {
                    let vars = [a as u8, b as u8, c as u8];
                    let l = eval(&eq.lhs, &vars, n, &p.cells);
                    let r = eval(&eq.rhs, &vars, n, &p.cells);
                    if !f(eq, l, r) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Result of running propagation to a fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fill {
    Filled(Pattern),
    Contradiction,
}

impl Fill {
    pub fn pattern(&self) -> Option<&Pattern> {
        match self {
            Fill::Filled(p) => Some(p),
            Fill::Contradiction => None,
        }
    }

    pub fn into_pattern(self) -> Option<Pattern> {
        match self {
            Fill::Filled(p) => Some(p),
            Fill::Contradiction => None,
        }
    }
}

/// Values that may go in the blank `Mk[a][b]` without repeating a value in
/// its column or breaking the one-fixed-entry-per-row rule. Ascending.
pub fn avail(p: &Pattern, op: OpKind, a: usize, b: usize) -> Result<Vec<u8>> {
    let n = p.order;
    if !(1..=n).contains(&a) || !(1..=n).contains(&b) {
        return Err(Error::invalid(format!("position ({a}, {b}) outside 1..={n}")));
    }
    if p.get(op, a, b) != 0 {
        return Err(Error::invalid(format!(
            "M{}[{a}][{b}] is not blank",
            op.block() + 1
        )));
    }
    Ok(avail_in(n, &p.cells, op.block(), a, b))
}

pub(crate) fn avail_in(n: usize, cells: &[u8], block: usize, a: usize, b: usize) -> Vec<u8> {
    let mut used = vec![false; n + 1];
    for r in 1..=n {
        used[cells[cell_index(n, block, r, b)] as usize] = true;
    }
    let mut row_fixed = false;
    let mut row_other_blank = false;
    for j in 1..=n {
        if j == b {
            continue;
        }
        match cells[cell_index(n, block, a, j)] as usize {
            0 => row_other_blank = true,
            v if v == j => row_fixed = true,
            _ => {}
        }
    }
    (1..=n)
        .filter(|&v| !used[v])
        .filter(|&v| {
            if v == b {
                !row_fixed
            } else {
                row_fixed || row_other_blank
            }
        })
        .map(|v| v as u8)
        .collect()
}

struct Filler {
    n: usize,
    cells: Vec<u8>,
    changed: bool,
}

impl Filler {
    /// Forces `cells[idx] = v`; false on conflict.
    #[inline]
    fn assign(&mut self, idx: usize, v: u8) -> bool {
        match self.cells[idx] {
            0 => {
                self.cells[idx] = v;
                self.changed = true;
                true
            }
            w => w == v,
        }
    }

    fn structural_pass(&mut self) -> bool {
        let n = self.n;
        for block in 0..4 {
            // columns are permutations
            for b in 1..=n {
                let mut used = vec![false; n + 1];
                let mut blank = None;
                let mut blanks = 0;
                for a in 1..=n {
                    match self.cells[cell_index(n, block, a, b)] as usize {
                        0 => {
                            blanks += 1;
                            blank = Some(a);
                        }
                        v => {
                            if used[v] {
                                return false;
                            }
                            used[v] = true;
                        }
                    }
                }
                if blanks == 1 {
                    let a = blank.unwrap();
                    match avail_in(n, &self.cells, block, a, b).as_slice() {
                        [v] => {
                            self.assign(cell_index(n, block, a, b), *v);
                        }
                        _ => return false,
                    }
                }
            }
            // each row has exactly one entry equal to its column number
            for a in 1..=n {
                let mut fixed = 0;
                let mut blanks = 0;
                let mut blank_col = 0;
                for b in 1..=n {
                    match self.cells[cell_index(n, block, a, b)] as usize {
                        0 => {
                            blanks += 1;
                            blank_col = b;
                        }
                        v if v == b => fixed += 1,
                        _ => {}
                    }
                }
                if fixed > 1 || (fixed == 0 && blanks == 0) {
                    return false;
                }
                if fixed == 0 && blanks == 1 {
                    self.assign(cell_index(n, block, a, blank_col), blank_col as u8);
                }
            }
        }
        true
    }

    /// Every blank needs a candidate value, and every value missing from a
    /// column (and every missing fixed entry of a row) needs a blank that can
    /// take it. Forced choices are made.
    fn domain_pass(&mut self) -> bool {
        let n = self.n;
        for block in 0..4 {
            let mut doms = vec![Vec::new(); n * n];
            for a in 1..=n {
                for b in 1..=n {
                    if self.cells[cell_index(n, block, a, b)] != 0 {
                        continue;
                    }
                    let d = avail_in(n, &self.cells, block, a, b);
                    match d.as_slice() {
                        [] => return false,
                        [v] => {
                            let v = *v;
                            if !self.assign(cell_index(n, block, a, b), v) {
                                return false;
                            }
                            return self.domain_pass();
                        }
                        _ => {}
                    }
                    doms[(a - 1) * n + b - 1] = d;
                }
            }
            for b in 1..=n {
                let mut present = vec![false; n + 1];
                for a in 1..=n {
                    present[self.cells[cell_index(n, block, a, b)] as usize] = true;
                }
                for v in 1..=n as u8 {
                    if present[v as usize] {
                        continue;
                    }
                    let mut slots = (1..=n).filter(|&a| doms[(a - 1) * n + b - 1].contains(&v));
                    match (slots.next(), slots.next()) {
                        (None, _) => return false,
                        (Some(a), None) => {
                            if !self.assign(cell_index(n, block, a, b), v) {
                                return false;
                            }
                            return self.domain_pass();
                        }
                        _ => {}
                    }
                }
            }
            for a in 1..=n {
                if (1..=n).any(|b| self.cells[cell_index(n, block, a, b)] as usize == b) {
                    continue;
                }
                let mut slots = (1..=n).filter(|&b| doms[(a - 1) * n + b - 1].contains(&(b as u8)));
                match (slots.next(), slots.next()) {
                    (None, _) => return false,
                    (Some(b), None) => {
                        if !self.assign(cell_index(n, block, a, b), b as u8) {
                            return false;
                        }
                        return self.domain_pass();
                    }
                    _ => {}
                }
            }
        }
        true
    }

    /// Type I links: row `a` of `M4` fixes column `x` iff `M2[x][a] = a`;
    /// row `a` of `M1` fixes column `y` iff `M3[y][a] = a`.
    fn type_one_pass(&mut self) -> bool {
        let n = self.n;
        for (row_block, col_block) in [(3usize, 1usize), (0, 2)] {
            for a in 1..=n {
                let fixed = (1..=n).find(|&x| self.cells[cell_index(n, row_block, a, x)] as usize == x);
                let hit = (1..=n).find(|&x| self.cells[cell_index(n, col_block, x, a)] as usize == a);
                match (fixed, hit) {
                    (Some(x), Some(y)) if x != y => return false,
                    (Some(x), None) => {
                        if !self.assign(cell_index(n, col_block, x, a), a as u8) {
                            return false;
                        }
                    }
                    (None, Some(x)) if !self.assign(cell_index(n, row_block, a, x), x as u8) => {
                        return false;
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn equation_pass(&mut self) -> bool {
        let n = self.n;
        for eq in equations() {
            let cs = if eq.arity == 3 { n } else { 1 };
            for a in 1..=n {
                for b in 1..=n {
                    for c in 1..=cs {
                        let vars = [a as u8, b as u8, c as u8];
                        let l = eval(&eq.lhs, &vars, n, &self.cells);
                        let r = eval(&eq.rhs, &vars, n, &self.cells);
                        let ok = match (l, r) {
                            (Val::Known(x), Val::Known(y)) => x == y,
                            (Val::Known(x), Val::Pending(idx)) | (Val::Pending(idx), Val::Known(x)) => {
                                self.assign(idx as usize, x)
                            }
                            _ => true,
                        };
                        if !ok {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Propagates forced entries until nothing changes or a contradiction shows.
/// Never alters a non-blank entry.
pub fn biqfill(p: &Pattern) -> Fill {
    let mut f = Filler {
        n: p.order,
        cells: p.cells.clone(),
        changed: true,
    };
    while f.changed {
        f.changed = false;
        if !f.structural_pass()
            || !f.domain_pass()
            || !f.type_one_pass()
            || !f.equation_pass()
        {
            return Fill::Contradiction;
        }
    }
    Fill::Filled(Pattern {
        order: p.order,
        cells: f.cells,
    })
}

/// For each blank cell, the number of equation instances in which it is the
/// outermost missing entry of one side.
pub(crate) fn pending_counts(p: &Pattern) -> Vec<u32> {
    let mut counts = vec![0u32; p.cells.len()];
    for_each_instance(p, |_, l, r| {
        if let Val::Pending(i) = l {
            counts[i as usize] += 1;
        }
        if let Val::Pending(i) = r {
            counts[i as usize] += 1;
        }
        true
    });
    counts
}

/// First equation violated by a complete matrix, if any. Used to check
/// that the propagation rules are consequences of the axioms.
#[cfg(test)]
pub(crate) fn first_violated(p: &Pattern) -> Option<&'static str> {
    let mut bad = None;
    for_each_instance(p, |eq, l, r| {
        if l != r {
            bad = Some(eq.tag);
            false
        } else {
            true
        }
    });
    bad
}
