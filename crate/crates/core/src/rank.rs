//! Exact rank by fraction-free (Bareiss) elimination, plus a word-sized
//! modular rank used as a quick lower bound.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A sparse integer row: `(column, value)` with nonzero values.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Rank over the rationals of a dense integer matrix.
///
/// One-step Bareiss: every intermediate entry is a minor of the input, so the
/// division by the previous pivot is exact and entries stay integral.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = pivot_row[col].clone();
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..ncols {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Drops columns that are zero in every row and densifies the rest.
pub fn compress_columns(rows: &[SparseRow]) -> Vec<Vec<BigInt>> {
    let mut cols: BTreeMap<usize, usize> = BTreeMap::new();
    for row in rows {
        for (c, _) in row {
            cols.insert(*c, 0);
        }
    }
    for (i, v) in cols.values_mut().enumerate() {
        *v = i;
    }
    rows.iter()
        .map(|row| {
            let mut dense = vec![BigInt::zero(); cols.len()];
            for (c, v) in row {
                dense[cols[c]] = v.clone();
            }
            dense
        })
        .collect()
}

pub fn sparse_rank(rows: &[SparseRow]) -> usize {
    bareiss_rank(compress_columns(rows))
}

/// Scales a rational row by the lcm of its denominators.
pub fn clear_denominators(row: &[(usize, BigRational)]) -> SparseRow {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    row.iter().map(|(c, v)| (*c, v.numer() * (&lcm / v.denom()))).collect()
}

/// Rank of the integer matrix reduced modulo the prime `p` (< 2^32).
/// Never exceeds the rational rank.
pub fn modular_rank(rows: &[SparseRow], p: u64) -> usize {
    assert!(p > 1 && p < (1 << 32), "modulus must fit in 32 bits");
    let dense = compress_columns(rows);
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = dense
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(&pb).to_u64().expect("reduced residue")).collect())
        .collect();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = mod_pow(m[rank][col], p - 2, p);
        for x in &mut m[rank][col..] {
            *x = *x * inv % p;
        }
        let pivot = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Largest bit length among the entries.
pub fn max_bits(rows: &[SparseRow]) -> u64 {
    rows.iter().flatten().map(|(_, v)| v.abs().bits()).max().unwrap_or(0)
}
