//! Brute-force lattice oracle, independent of the library's Smith reduction.
//!
//! Integer echelon forms by repeated Euclidean row steps, rational solving with
//! exact fractions, and finite quotients identified by enumerating cosets of a
//! triangular fundamental domain and counting element orders.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Vector = Vec<BigInt>;

/// Integer row echelon form restricted to the first `limit` columns.
/// Returns the transformed rows and the number of pivot rows.
pub fn echelon(mut rows: Vec<Vector>, limit: usize) -> (Vec<Vector>, usize) {
    let mut pivot_row = 0;
    for col in 0..limit {
        if pivot_row >= rows.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| rows[i][col].abs() < rows[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[pivot_row][col]);
                let src = rows[pivot_row].clone();
                for (x, y) in rows[i].iter_mut().zip(&src) {
                    *x -= &q * y;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < rows.len() && !rows[pivot_row][col].is_zero() {
            if rows[pivot_row][col].is_negative() {
                for x in rows[pivot_row].iter_mut() {
                    *x = -x.clone();
                }
            }
            pivot_row += 1;
        }
    }
    (rows, pivot_row)
}

/// Basis of the lattice spanned by `gens` (vectors in Z^n).
pub fn lattice_basis(gens: &[Vector], n: usize) -> Vec<Vector> {
    let (rows, r) = echelon(gens.to_vec(), n);
    rows.into_iter().take(r).collect()
}

/// Basis of `{x in Z^n : a x = 0}` where `a` is given by its rows.
pub fn kernel(a_rows: &[Vector], n: usize) -> Vec<Vector> {
    let m = a_rows.len();
    let aug: Vec<Vector> = (0..n)
        .map(|j| {
            let mut row: Vector = a_rows.iter().map(|r| r[j].clone()).collect();
            for k in 0..n {
                row.push(if k == j { BigInt::one() } else { BigInt::zero() });
            }
            row
        })
        .collect();
    let (rows, r) = echelon(aug, m);
    rows.into_iter().skip(r).map(|row| row[m..].to_vec()).collect()
}

pub fn rational_rank(vectors: &[Vector], n: usize) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for i in 0..rows.len() {
            if i == rank || rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] / &pivot;
            let src = rows[rank].clone();
            for (x, y) in rows[i].iter_mut().zip(&src) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Integer coordinates of `x` in the independent family `basis`, if any.
pub fn integer_coords(basis: &[Vector], x: &Vector) -> Option<Vector> {
    let k = basis.len();
    let n = x.len();
    // Solve sum c_j basis_j = x over Q via augmented elimination on the transpose.
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(b[i].clone()))
                .collect();
            row.push(BigRational::from_integer(x[i].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..n).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v = &*v / &pivot;
        }
        for i in 0..n {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            let src = rows[r].clone();
            for (a, b) in rows[i].iter_mut().zip(&src) {
                *a -= &f * b;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut c = vec![BigInt::zero(); k];
    for (i, &col) in pivots.iter().enumerate() {
        let v = &rows[i][k];
        if !v.is_integer() {
            return None;
        }
        c[col] = v.to_integer();
    }
    Some(c)
}

pub fn in_lattice(gens: &[Vector], x: &Vector) -> bool {
    if x.iter().all(Zero::is_zero) {
        return true;
    }
    let basis = lattice_basis(gens, x.len());
    integer_coords(&basis, x).is_some()
}

/// Invariant factors of a finite abelian group from its element-order census.
/// `orders[k]` is the number of elements of order exactly `k`.
pub fn chain_from_orders(orders: &BTreeMap<u64, u64>) -> Vec<BigInt> {
    let total: u64 = orders.values().sum();
    let killed_by = |d: u64| -> u64 {
        orders
            .iter()
            .filter(|(k, _)| d.is_multiple_of(**k))
            .map(|(_, c)| *c)
            .sum()
    };
    let mut primes = Vec::new();
    let mut m = total;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    // For each prime, parts_at_least[j] = #cyclic factors with p-exponent >= j+1.
    let mut factors: Vec<u64> = Vec::new();
    for p in primes {
        let mut exps = Vec::new();
        let mut prev = 0u32;
        let mut pj = 1u64;
        loop {
            pj *= p;
            let n = killed_by(pj);
            let e = n.ilog(p);
            if e == prev {
                break;
            }
            exps.push(e - prev);
            prev = e;
        }
        // exps[j] = number of parts >= j+1, nonincreasing.
        let parts = exps.first().copied().unwrap_or(0) as usize;
        let mut lambda = vec![0u32; parts];
        for (j, &count) in exps.iter().enumerate() {
            for l in lambda.iter_mut().take(count as usize) {
                *l = j as u32 + 1;
            }
        }
        // lambda is nonincreasing; align to the end of the chain.
        if factors.len() < parts {
            let pad = parts - factors.len();
            let mut f = vec![1u64; pad];
            f.extend(factors);
            factors = f;
        }
        let len = factors.len();
        for (idx, e) in lambda.iter().enumerate() {
            factors[len - 1 - idx] *= p.pow(*e);
        }
    }
    factors.into_iter().map(BigInt::from).collect()
}

/// Invariant factors of `Z^r / span(rows)` for a full-rank family of `r`
/// generators or more, by enumerating the triangular fundamental domain.
pub fn finite_quotient(gens: &[Vector], r: usize) -> Vec<BigInt> {
    if r == 0 {
        return Vec::new();
    }
    let (rows, rank) = echelon(gens.to_vec(), r);
    assert_eq!(rank, r, "finite quotient needs a full-rank lattice");
    let h: Vec<BigInt> = (0..r).map(|i| rows[i][i].clone()).collect();
    let reduce = |x: &mut Vector| {
        for i in 0..r {
            let q = x[i].div_floor(&h[i]);
            if !q.is_zero() {
                for (a, b) in x.iter_mut().zip(&rows[i]) {
                    *a -= &q * b;
                }
            }
        }
    };
    let sizes: Vec<u64> = h.iter().map(|x| x.to_u64().expect("small domain")).collect();
    let total: u64 = sizes.iter().product();
    assert!(total <= 2_000_000, "fundamental domain too large to enumerate");
    let mut census: BTreeMap<u64, u64> = BTreeMap::new();
    let mut digits = vec![0u64; r];
    for _ in 0..total {
        let x: Vector = digits.iter().map(|&d| BigInt::from(d)).collect();
        let mut acc = x.clone();
        let mut k = 1u64;
        loop {
            let mut y = acc.clone();
            reduce(&mut y);
            if y.iter().all(Zero::is_zero) {
                break;
            }
            k += 1;
            for (a, b) in acc.iter_mut().zip(&x) {
                *a += b;
            }
        }
        *census.entry(k).or_insert(0) += 1;
        for i in (0..r).rev() {
            digits[i] += 1;
            if digits[i] < sizes[i] {
                break;
            }
            digits[i] = 0;
        }
    }
    chain_from_orders(&census)
}

/// Isomorphism type `(rank, torsion chain)` of `span(s) / span(t)` in `Z^n`,
/// or `None` if `t` is not inside `span(s)`.
pub fn subquotient(n: usize, s: &[Vector], t: &[Vector]) -> Option<(usize, Vec<BigInt>)> {
    let basis = lattice_basis(s, n);
    let k = basis.len();
    let mut coords = Vec::new();
    for v in t {
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        coords.push(integer_coords(&basis, v)?);
    }
    let r = rational_rank(&coords, k);
    if r == 0 {
        return Some((k, Vec::new()));
    }
    // Saturation of the relation lattice: integer vectors in its rational span.
    let annihilator = kernel(&coords, k);
    let sat = if annihilator.is_empty() {
        (0..k)
            .map(|i| (0..k).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect::<Vec<Vector>>()
    } else {
        kernel(&annihilator, k)
    };
    assert_eq!(sat.len(), r);
    let rel: Vec<Vector> = coords
        .iter()
        .map(|c| integer_coords(&sat, c).expect("relations lie in their saturation"))
        .collect();
    Some((k - r, finite_quotient(&rel, r)))
}

pub fn v(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}
