//! Homomorphisms from finitely presented biquandles into finite ones,
//! isomorphisms and automorphism groups, and classification of biquandle
//! lists up to isomorphism (optionally also up to flip and obverse).

mod group;

pub use group::{identify_group, GroupLabel};

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;

use crate::matrix::{cell_index, Biquandle, BlockMatrix};
use crate::presentation::{Presentation, Relation};

/// A map of generators: `images()[i - 1]` is the image of generator `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomMap {
    images: Vec<u8>,
}

impl HomMap {
    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> usize {
        self.images[generator - 1] as usize
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.images.len() + 1];
        self.images
            .iter()
            .all(|&v| (v as usize) < seen.len() && !std::mem::replace(&mut seen[v as usize], true))
    }
}

impl fmt::Display for HomMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Depth-first search over generator assignments with relation propagation.
struct HomSearch<'a> {
    gens: usize,
    rels: &'a [Relation],
    /// Relations mentioning each generator.
    touching: Vec<Vec<usize>>,
    target: &'a BlockMatrix,
    /// `inv[cell_index(k, v, b)]` is the `a` with `Mk[a][b] = v`.
    inv: Vec<u8>,
    injective: bool,
}

#[derive(Clone)]
struct State {
    images: Vec<u8>,
    used: Vec<bool>,
}

impl<'a> HomSearch<'a> {
    fn new(p: &'a Presentation, target: &'a Biquandle, injective: bool) -> Self {
        let gens = p.generators();
        let mut touching = vec![Vec::new(); gens + 1];
        for (i, r) in p.relations().iter().enumerate() {
            for g in [r.input, r.operator, r.output] {
                if touching[g].last() != Some(&i) {
                    touching[g].push(i);
                }
            }
        }
        let m = target.matrix();
        let n = m.order();
        let mut inv = vec![0u8; 4 * n * n];
        for k in 0..4 {
            for a in 1..=n {
                for b in 1..=n {
                    let v = m.cells()[cell_index(n, k, a, b)] as usize;
                    inv[cell_index(n, k, v, b)] = a as u8;
                }
            }
        }
        HomSearch {
            gens,
            rels: p.relations(),
            touching,
            target: m,
            inv,
            injective,
        }
    }

    fn assign(&self, st: &mut State, g: usize, v: u8, queue: &mut Vec<usize>) -> bool {
        match st.images[g] {
            0 => {
                if self.injective && std::mem::replace(&mut st.used[v as usize], true) {
                    return false;
                }
                st.images[g] = v;
                queue.push(g);
                true
            }
            w => w == v,
        }
    }

    /// Forces images through the relations touching `queue`.
    fn propagate(&self, st: &mut State, mut queue: Vec<usize>) -> bool {
        let n = self.target.order();
        let cells = self.target.cells();
        while let Some(g) = queue.pop() {
            for &ri in &self.touching[g] {
                let r = &self.rels[ri];
                let k = r.op.block();
                let (x, y, z) = (st.images[r.input], st.images[r.operator], st.images[r.output]);
                if y == 0 {
                    continue;
                }
                let ok = if x != 0 {
                    let v = cells[cell_index(n, k, x as usize, y as usize)];
                    self.assign(st, r.output, v, &mut queue)
                } else if z != 0 {
                    let u = self.inv[cell_index(n, k, z as usize, y as usize)];
                    self.assign(st, r.input, u, &mut queue)
                } else {
                    true
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn run(&self, visit: &mut dyn FnMut(&[u8]) -> ControlFlow<()>) {
        let n = self.target.order();
        let st = State {
            images: vec![0; self.gens + 1],
            used: vec![false; n + 1],
        };
        let _ = self.dfs(st, visit);
    }

    fn dfs(&self, st: State, visit: &mut dyn FnMut(&[u8]) -> ControlFlow<()>) -> ControlFlow<()> {
        let Some(g) = (1..=self.gens).find(|&g| st.images[g] == 0) else {
            return visit(&st.images[1..]);
        };
        for v in 1..=self.target.order() as u8 {
            let mut next = st.clone();
            let mut queue = Vec::new();
            if self.assign(&mut next, g, v, &mut queue) && self.propagate(&mut next, queue) {
                self.dfs(next, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every homomorphism image vector until it breaks.
pub fn bhom_visit(
    p: &Presentation,
    target: &Biquandle,
    mut visit: impl FnMut(&[u8]) -> ControlFlow<()>,
) {
    HomSearch::new(p, target, false).run(&mut visit);
}

/// All homomorphisms from the presented biquandle into `target`, sorted.
pub fn bhomlist(p: &Presentation, target: &Biquandle) -> Vec<HomMap> {
    let mut out = Vec::new();
    bhom_visit(p, target, |images| {
        out.push(HomMap {
            images: images.to_vec(),
        });
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// `|Hom(P, target)|`, the counting invariant.
pub fn bhomcount(p: &Presentation, target: &Biquandle) -> u64 {
    let mut count = 0;
    bhom_visit(p, target, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

fn bijections(a: &Biquandle, b: &Biquandle, stop_at_first: bool) -> Vec<HomMap> {
    if a.order() != b.order() {
        return Vec::new();
    }
    let p = Presentation::from_matrix(a.matrix());
    let mut out = Vec::new();
    HomSearch::new(&p, b, true).run(&mut |images| {
        out.push(HomMap {
            images: images.to_vec(),
        });
        if stop_at_first {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out.sort();
    out
}

/// All isomorphisms `a -> b`, sorted.
pub fn bisolist(a: &Biquandle, b: &Biquandle) -> Vec<HomMap> {
    bijections(a, b, false)
}

pub fn is_isomorphic(a: &Biquandle, b: &Biquandle) -> bool {
    !bijections(a, b, true).is_empty()
}

/// The automorphism group as a sorted list of permutations, with its label.
pub fn baut(b: &Biquandle) -> (Vec<HomMap>, GroupLabel) {
    let maps = bisolist(b, b);
    let perms: Vec<Vec<u8>> = maps.iter().map(|m| m.images.clone()).collect();
    let label = identify_group(&perms).expect("automorphisms of a biquandle form a group");
    (maps, label)
}

/// Which biquandles count as the same when reducing a list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Equivalence {
    Iso,
    /// Isomorphic to the other one, its flip, its obverse or both.
    IsoFlipObverse,
}

/// Label-independent data that agree on equivalent biquandles: for each
/// element, the sorted per-block counts of operators fixing it.
fn fingerprint(b: &Biquandle) -> Vec<[usize; 4]> {
    let n = b.order();
    let m = b.matrix();
    let mut per_element: Vec<[usize; 4]> = (1..=n)
        .map(|x| {
            let mut counts = [0usize; 4];
            for (k, c) in counts.iter_mut().enumerate() {
                *c = (1..=n)
                    .filter(|&y| m.cells()[cell_index(n, k, x, y)] as usize == x)
                    .count();
            }
            counts.sort_unstable();
            counts
        })
        .collect();
    per_element.sort_unstable();
    per_element
}

fn variants(b: &Biquandle, mode: Equivalence) -> Vec<Biquandle> {
    match mode {
        Equivalence::Iso => vec![b.clone()],
        Equivalence::IsoFlipObverse => {
            let f = b.flip();
            vec![b.clone(), b.obverse(), f.obverse(), f]
        }
    }
}

pub fn equivalent(a: &Biquandle, b: &Biquandle, mode: Equivalence) -> bool {
    variants(b, mode).iter().any(|v| is_isomorphic(a, v))
}

/// Partitions `list` into classes; each class lists indices into `list` in
/// input order, and classes are ordered by their first member.
pub fn partition(list: &[Biquandle], mode: Equivalence) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut buckets: HashMap<(usize, Vec<[usize; 4]>), Vec<usize>> = HashMap::new();
    for (i, b) in list.iter().enumerate() {
        let bucket = buckets.entry((b.order(), fingerprint(b))).or_default();
        let vars = variants(b, mode);
        let found = bucket
            .iter()
            .copied()
            .find(|&c| vars.iter().any(|v| is_isomorphic(&list[classes[c][0]], v)));
        match found {
            Some(c) => classes[c].push(i),
            None => {
                bucket.push(classes.len());
                classes.push(vec![i]);
            }
        }
    }
    classes
}

/// One representative per class: the first member in input order.
pub fn breducelist(list: &[Biquandle], mode: Equivalence) -> Vec<Biquandle> {
    partition(list, mode)
        .into_iter()
        .map(|c| list[c[0]].clone())
        .collect()
}

/// A class of biquandles with its recorded invariants.
#[derive(Clone, Debug)]
pub struct ClassEntry {
    pub representative: Biquandle,
    pub members: usize,
    pub self_flip: bool,
    pub self_obverse: bool,
    pub aut: GroupLabel,
}

pub fn classify(list: &[Biquandle], mode: Equivalence) -> Vec<ClassEntry> {
    partition(list, mode)
        .into_iter()
        .map(|c| {
            let rep = list[c[0]].clone();
            ClassEntry {
                self_flip: is_isomorphic(&rep, &rep.flip()),
                self_obverse: is_isomorphic(&rep, &rep.obverse()),
                aut: baut(&rep).1,
                members: c.len(),
                representative: rep,
            }
        })
        .collect()
}
