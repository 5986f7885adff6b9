#![allow(dead_code)]

use std::path::PathBuf;

use biquandle::{BlockMatrix, Presentation, PresentationVector};

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn matrix(name: &str) -> BlockMatrix {
    fixture(name).parse().unwrap()
}

pub fn knot(name: &str) -> Presentation {
    fixture(name)
        .parse::<PresentationVector>()
        .unwrap()
        .to_presentation()
}

/// One printed classification-table entry.
#[derive(Clone, Debug)]
pub struct TableEntry {
    pub table: String,
    pub index: usize,
    pub self_flip: bool,
    pub aut: String,
    pub matrix: BlockMatrix,
}

impl TableEntry {
    pub fn name(&self) -> String {
        format!("{} #{}", self.table, self.index)
    }
}

pub fn reference_tables() -> Vec<TableEntry> {
    let text = fixture("reference_tables.txt");
    let mut entries = Vec::new();
    let mut header: Option<Vec<String>> = None;
    let mut body = String::new();
    let mut flush = |header: &Option<Vec<String>>, body: &mut String| {
        if body.is_empty() {
            return;
        }
        let h = header.as_ref().expect("record without header");
        entries.push(TableEntry {
            table: h[1].clone(),
            index: h[2].parse().unwrap(),
            self_flip: h[4] == "yes",
            aut: h[6].clone(),
            matrix: body.parse().unwrap(),
        });
        body.clear();
    };
    for line in text.lines() {
        if line.starts_with('#') {
            continue;
        }
        if line.starts_with("table ") {
            flush(&header, &mut body);
            header = Some(line.split_whitespace().map(String::from).collect());
        } else if !line.trim().is_empty() {
            body.push_str(line);
            body.push('\n');
        }
    }
    flush(&header, &mut body);
    entries
}

/// Operation tables read straight from the printed rows:
/// `ops[k][a][b]` for blocks k = upper-left, upper-right, lower-left,
/// lower-right, with 0-based `a`, `b` and 1-based values.
pub fn raw_ops(m: &BlockMatrix) -> [Vec<Vec<usize>>; 4] {
    let rows: Vec<Vec<usize>> = m
        .rows()
        .map(|r| r.iter().map(|&v| v as usize).collect())
        .collect();
    let n = rows.len() / 2;
    let block = |r0: usize, c0: usize| -> Vec<Vec<usize>> {
        (0..n).map(|a| rows[r0 + a][c0..c0 + n].to_vec()).collect()
    };
    [block(0, 0), block(0, n), block(n, 0), block(n, n)]
}

pub fn letter_block(c: char) -> usize {
    match c {
        'u' => 0,
        'U' => 1,
        'l' => 2,
        'L' => 3,
        _ => panic!("bad op letter {c}"),
    }
}

/// Relations of a presentation as raw `(input, block, operator, output)`
/// tuples, 0-based, reconstructed from its `.pres` text so the oracle does
/// not share parsing or evaluation code with the library's search.
pub fn raw_relations(p: &Presentation) -> Vec<(usize, usize, usize, usize)> {
    p.to_string()
        .lines()
        .skip(1)
        .map(|line| {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let letter = parts[2].chars().next().unwrap();
            (
                parts[1].parse::<usize>().unwrap() - 1,
                letter_block(letter),
                parts[2][1..].parse::<usize>().unwrap() - 1,
                parts[3].parse::<usize>().unwrap() - 1,
            )
        })
        .collect()
}

/// Every assignment of `g` generators into `m` elements, filtered by the
/// relations. Returns the sorted list of 1-based image vectors.
pub fn brute_force_homs(p: &Presentation, target: &BlockMatrix) -> Vec<Vec<u8>> {
    let ops = raw_ops(target);
    let m = target.order();
    let g = p.generators();
    let rels = raw_relations(p);
    let mut phi = vec![0usize; g];
    let mut out = Vec::new();
    loop {
        if rels
            .iter()
            .all(|&(i, k, j, o)| ops[k][phi[i]][phi[j]] == phi[o] + 1)
        {
            out.push(phi.iter().map(|&x| x as u8 + 1).collect());
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == g {
                out.sort();
                return out;
            }
            phi[pos] += 1;
            if phi[pos] < m {
                break;
            }
            phi[pos] = 0;
            pos += 1;
        }
    }
}

/// All permutations of `1..=n` as image vectors, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, n: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 1..=n as u8 {
            if !prefix.contains(&v) {
                prefix.push(v);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

/// Bijections `phi` with `phi(Mk[a][b]) = M'k[phi(a)][phi(b)]` for all k, a, b,
/// found by trying all `n!` permutations.
pub fn brute_force_isos(a: &BlockMatrix, b: &BlockMatrix) -> Vec<Vec<u8>> {
    if a.order() != b.order() {
        return Vec::new();
    }
    let n = a.order();
    let (oa, ob) = (raw_ops(a), raw_ops(b));
    permutations(n)
        .into_iter()
        .filter(|phi| {
            let f = |x: usize| phi[x - 1] as usize;
            (0..4).all(|k| {
                (1..=n).all(|x| (1..=n).all(|y| f(oa[k][x - 1][y - 1]) == ob[k][f(x) - 1][f(y) - 1]))
            })
        })
        .collect()
}

/// Every matrix of the given order whose four blocks are arbitrary tables,
/// by direct enumeration. Only practical for order 2.
pub fn all_order_two_matrices() -> impl Iterator<Item = BlockMatrix> {
    (0u32..1 << 16).map(|bits| {
        let rows: Vec<Vec<u8>> = (0..4)
            .map(|r| (0..4).map(|c| ((bits >> (r * 4 + c)) & 1) as u8 + 1).collect())
            .collect();
        BlockMatrix::from_rows(&rows).unwrap()
    })
}
