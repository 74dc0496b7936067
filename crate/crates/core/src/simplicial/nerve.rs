use std::collections::HashMap;

use num_bigint::BigInt;

use super::chain::{Cellular, IntChainComplex};
use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;

/// Finite group given by its multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroupTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroupTable(format!("row {i} has length {}", row.len())));
            }
            if row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroupTable(format!("row {i} has an entry out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroupTable("no two-sided identity".into()))?;
        for g in 0..n {
            if !(0..n).any(|h| table[g][h] == identity && table[h][g] == identity) {
                return Err(Error::InvalidGroupTable(format!("element {g} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroupTable(format!(
                            "associativity fails on ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity })
    }

    /// Cyclic group `Z/n` with identity 0.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(table).expect("cyclic tables are groups")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// Normalized bar complex of `BG` through degree `maxdim`: cells in degree `n`
/// are tuples `[g_1|...|g_n]` with no identity entry.
#[derive(Clone, Debug)]
pub struct BarComplex {
    group: FiniteGroup,
    cells: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    chain: IntChainComplex,
}

/// Builds the normalized bar complex; its cohomology is `H^q(G; -)` for `q < maxdim`.
pub fn nerve(group: &FiniteGroup, maxdim: usize) -> BarComplex {
    let e = group.identity();
    let others: Vec<usize> = (0..group.order()).filter(|&g| g != e).collect();
    let mut cells: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for n in 1..=maxdim {
        let mut level = Vec::new();
        for prev in &cells[n - 1] {
            for &g in &others {
                let mut t = prev.clone();
                t.push(g);
                level.push(t);
            }
        }
        cells.push(level);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> = cells
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
        .collect();
    let mut boundaries = vec![IntMatrix::zeros(0, 1)];
    for n in 1..=maxdim {
        let mut b = IntMatrix::zeros(cells[n - 1].len(), cells[n].len());
        for (j, t) in cells[n].iter().enumerate() {
            let mut add = |face: Vec<usize>, sign: i64| {
                if face.contains(&e) {
                    return;
                }
                let i = index[n - 1][&face];
                b[(i, j)] += BigInt::from(sign);
            };
            add(t[1..].to_vec(), 1);
            for i in 1..n {
                let mut face = t[..i - 1].to_vec();
                face.push(group.mul(t[i - 1], t[i]));
                face.extend_from_slice(&t[i + 1..]);
                add(face, if i % 2 == 0 { 1 } else { -1 });
            }
            add(t[..n - 1].to_vec(), if n % 2 == 0 { 1 } else { -1 });
        }
        boundaries.push(b);
    }
    let labels = cells
        .iter()
        .map(|l| {
            l.iter()
                .map(|t| {
                    let parts: Vec<String> = t.iter().map(|g| g.to_string()).collect();
                    format!("[{}]", parts.join("|"))
                })
                .collect()
        })
        .collect();
    let chain = IntChainComplex::new(labels, boundaries).expect("bar differential squares to zero");
    BarComplex {
        group: group.clone(),
        cells,
        index,
        chain,
    }
}

impl BarComplex {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn maxdim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, n: usize) -> &[Vec<usize>] {
        &self.cells[n]
    }
}

impl Cellular for BarComplex {
    fn chain(&self) -> &IntChainComplex {
        &self.chain
    }

    fn front_back(&self, n: usize, cell: usize, p: usize) -> (usize, usize) {
        let t = &self.cells[n][cell];
        (self.index[p][&t[..p]], self.index[n - p][&t[p..]])
    }
}
