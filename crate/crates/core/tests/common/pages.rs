//! Page entries from the image description
//! `E_r^f(n) = im( H^n(F^f / F^{f+r}) -> H^n(F^{f-r+1} / F^{f+1}) )`,
//! written as `(Z + D) / D` inside the cochains of degree `n` with
//! `Z = {x ∈ F^f : dx ∈ F^{f+r}}` and `D = F^{f+1} + d F^{f-r+1}`, all modulo
//! coefficient relations. Only the lattice routines of the oracle are used.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

use mss_core::ssengine::FilteredCochainComplex;

use super::oracle::{kernel, lattice_basis, subquotient, Vector};

fn unit(n: usize, i: usize, scale: &BigInt) -> Vector {
    let mut v = vec![BigInt::zero(); n];
    v[i] = scale.clone();
    v
}

fn d_rows(cx: &FilteredCochainComplex, n: i64) -> Vec<Vector> {
    let d = cx.d_matrix(n);
    (0..d.rows()).map(|i| d.row(i).to_vec()).collect()
}

/// `{x : x_i ≡ 0 (m_i) for filt_i < f, (dx)_j ≡ 0 (m_j) for filt_j < f + r}`.
fn cycles(cx: &FilteredCochainComplex, n: i64, f: i64, r: i64) -> Vec<Vector> {
    let size = cx.block(n).len();
    let mut constraints: Vec<(Vector, BigInt)> = Vec::new();
    for (i, (&fi, m)) in cx.filtrations(n).iter().zip(cx.moduli(n)).enumerate() {
        if fi < f {
            constraints.push((unit(size, i, &BigInt::one()), m));
        }
    }
    let rows = d_rows(cx, n);
    for (j, (&fj, m)) in cx.filtrations(n + 1).iter().zip(cx.moduli(n + 1)).enumerate() {
        if fj < f + r {
            constraints.push((rows[j].clone(), m));
        }
    }
    let k = constraints.len();
    if k == 0 {
        return (0..size).map(|i| unit(size, i, &BigInt::one())).collect();
    }
    // [c_k | -m_k e_k] (x, y) = 0
    let a: Vec<Vector> = constraints
        .iter()
        .enumerate()
        .map(|(idx, (c, m))| {
            let mut row = c.clone();
            row.extend((0..k).map(|l| if l == idx { -m.clone() } else { BigInt::zero() }));
            row
        })
        .collect();
    let ker = kernel(&a, size + k);
    let projected: Vec<Vector> = ker.into_iter().map(|v| v[..size].to_vec()).collect();
    lattice_basis(&projected, size)
}

fn denominators(cx: &FilteredCochainComplex, n: i64, f: i64, r: i64) -> Vec<Vector> {
    let size = cx.block(n).len();
    let mut out = Vec::new();
    for (i, (&fi, m)) in cx.filtrations(n).iter().zip(cx.moduli(n)).enumerate() {
        if fi > f {
            out.push(unit(size, i, &BigInt::one()));
        } else if !m.is_zero() {
            out.push(unit(size, i, &m));
        }
    }
    let d = cx.d_matrix(n - 1);
    for (j, &fj) in cx.filtrations(n - 1).iter().enumerate() {
        if fj > f - r {
            out.push(d.column(j));
        }
    }
    out
}

/// `(rank, torsion)` of `E_r^f(n)`.
pub fn entry(cx: &FilteredCochainComplex, n: i64, f: i64, r: usize) -> (usize, Vec<BigInt>) {
    let size = cx.block(n).len();
    if size == 0 {
        return (0, Vec::new());
    }
    let r = r as i64;
    let den = denominators(cx, n, f, r);
    let mut num = cycles(cx, n, f, r);
    num.extend(den.iter().cloned());
    subquotient(size, &num, &den).expect("denominators lie in the numerator")
}
