//! Independent reference implementations used only by tests.
//!
//! Level matrices are built by applying the defining recursion to each basis
//! vector `y·u` directly, and ranks come from textbook Gaussian elimination
//! over the rationals. Nothing here shares code with the library's block
//! assembly or Bareiss elimination.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use recurse_ring::{NcPolynomial, RecursionSystem};

pub type Vector = BTreeMap<Vec<usize>, BigRational>;

fn apply_letter(sys: &RecursionSystem, letter: char, v: &Vector) -> Vector {
    let g = sys.generator(letter).expect("declared generator");
    let mut out = Vector::new();
    for (u, c) in v {
        match u.split_first() {
            None => {
                let val = c * &g.phi;
                add(&mut out, Vec::new(), val);
            }
            Some((&y, rest)) => {
                for (y2, entry) in g.blocks[y].iter().enumerate() {
                    if entry.is_zero() {
                        continue;
                    }
                    let single: Vector = [(rest.to_vec(), c.clone())].into_iter().collect();
                    for (tail, val) in apply_poly(sys, entry, &single) {
                        let mut w = vec![y2];
                        w.extend(tail);
                        add(&mut out, w, val);
                    }
                }
            }
        }
    }
    out
}

fn add(v: &mut Vector, key: Vec<usize>, val: BigRational) {
    let e = v.entry(key).or_insert_with(BigRational::zero);
    *e += val;
}

/// `(v)p`, applying the letters of each monomial left to right.
pub fn apply_poly(sys: &RecursionSystem, p: &NcPolynomial, v: &Vector) -> Vector {
    let mut out = Vector::new();
    for (mono, c) in p.terms() {
        let mut cur = v.clone();
        for &letter in &mono.0 {
            cur = apply_letter(sys, letter, &cur);
        }
        for (k, val) in cur {
            add(&mut out, k, val * c);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn tree_word(index: usize, m: usize, n: usize) -> Vec<usize> {
    let mut w = vec![0; n];
    let mut x = index;
    for i in (0..n).rev() {
        w[i] = x % m;
        x /= m;
    }
    w
}

fn tree_index(w: &[usize], m: usize) -> usize {
    w.iter().fold(0, |acc, &y| acc * m + y)
}

/// Dense level-`n` matrix: row `u` holds the coordinates of `(u)p`.
pub fn dense_level_matrix(sys: &RecursionSystem, p: &NcPolynomial, n: usize) -> Vec<Vec<BigRational>> {
    let m = sys.arity();
    let dim = m.pow(n as u32);
    (0..dim)
        .map(|r| {
            let basis: Vector = [(tree_word(r, m, n), BigRational::one())].into_iter().collect();
            let image = apply_poly(sys, p, &basis);
            let mut row = vec![BigRational::zero(); dim];
            for (w, val) in image {
                row[tree_index(&w, m)] = val;
            }
            row
        })
        .collect()
}

pub fn gauss_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        let prow = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot;
                for j in col..ncols {
                    let d = &f * &prow[j];
                    row[j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `rank(L_i − L_{i−1} ⊗ I_m)` from dense matrices.
pub fn growth_profile(sys: &RecursionSystem, p: &NcPolynomial, n_max: usize) -> Vec<usize> {
    let m = sys.arity();
    (1..=n_max)
        .map(|i| {
            let cur = dense_level_matrix(sys, p, i);
            let prev = dense_level_matrix(sys, p, i - 1);
            let diff: Vec<Vec<BigRational>> = cur
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(c, v)| {
                            let k = if r % m == c % m { prev[r / m][c / m].clone() } else { BigRational::zero() };
                            v - k
                        })
                        .collect()
                })
                .collect();
            gauss_rank(diff)
        })
        .collect()
}
