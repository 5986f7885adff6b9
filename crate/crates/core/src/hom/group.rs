use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Isomorphism-class data of a finite group of permutations.
///
/// Groups of order up to 8 are determined by order, commutativity and the
/// multiset of element orders, so those get a conventional name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupLabel {
    pub order: usize,
    pub abelian: bool,
    /// Element order -> number of elements with that order.
    pub element_orders: BTreeMap<usize, usize>,
    pub name: Option<&'static str>,
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name {
            Some(name) => f.write_str(name),
            None => {
                let orders: Vec<String> = self
                    .element_orders
                    .iter()
                    .map(|(o, c)| format!("{o}^{c}"))
                    .collect();
                write!(
                    f,
                    "order {} {} [{}]",
                    self.order,
                    if self.abelian { "abelian" } else { "nonabelian" },
                    orders.join(" ")
                )
            }
        }
    }
}

/// `p ∘ q` for 1-based image vectors.
pub(crate) fn compose(p: &[u8], q: &[u8]) -> Vec<u8> {
    q.iter().map(|&x| p[x as usize - 1]).collect()
}

fn element_order(p: &[u8]) -> usize {
    let id: Vec<u8> = (1..=p.len() as u8).collect();
    let mut q = p.to_vec();
    let mut k = 1;
    while q != id {
        q = compose(p, &q);
        k += 1;
    }
    k
}

fn name(order: usize, abelian: bool, orders: &BTreeMap<usize, usize>) -> Option<&'static str> {
    let count = |k: usize| orders.get(&k).copied().unwrap_or(0);
    Some(match (order, abelian) {
        (1, _) => "Z1",
        (2, _) => "Z2",
        (3, _) => "Z3",
        (4, _) if count(4) > 0 => "Z4",
        (4, _) => "Z2⊕Z2",
        (5, _) => "Z5",
        (6, true) => "Z6",
        (6, false) => "S3",
        (7, _) => "Z7",
        (8, true) if count(8) > 0 => "Z8",
        (8, true) if count(4) > 0 => "Z4⊕Z2",
        (8, true) => "Z2⊕Z2⊕Z2",
        (8, false) if count(2) == 1 => "Q8",
        (8, false) => "D4",
        _ => return None,
    })
}

/// Labels the group formed by `perms`, after checking that the set really
/// is a group: equal lengths, genuine permutations, identity present and
/// closure under composition.
pub fn identify_group(perms: &[Vec<u8>]) -> Result<GroupLabel> {
    let Some(first) = perms.first() else {
        return Err(Error::invalid("empty set of permutations"));
    };
    let n = first.len();
    let set: HashSet<&[u8]> = perms.iter().map(|p| p.as_slice()).collect();
    if set.len() != perms.len() {
        return Err(Error::invalid("repeated permutation"));
    }
    for p in perms {
        let mut seen = vec![false; n + 1];
        if p.len() != n
            || p.iter().any(|&x| x == 0 || x as usize > n || std::mem::replace(&mut seen[x as usize], true))
        {
            return Err(Error::invalid(format!("{p:?} is not a permutation of 1..={n}")));
        }
    }
    let id: Vec<u8> = (1..=n as u8).collect();
    if !set.contains(id.as_slice()) {
        return Err(Error::invalid("identity missing"));
    }
    let mut abelian = true;
    for p in perms {
        for q in perms {
            let pq = compose(p, q);
            if !set.contains(pq.as_slice()) {
                return Err(Error::invalid("not closed under composition"));
            }
            if abelian && pq != compose(q, p) {
                abelian = false;
            }
        }
    }
    let mut element_orders = BTreeMap::new();
    for p in perms {
        *element_orders.entry(element_order(p)).or_insert(0) += 1;
    }
    let order = perms.len();
    Ok(GroupLabel {
        order,
        abelian,
        name: name(order, abelian, &element_orders),
        element_orders,
    })
}
