//! Exact level matrices.
//!
//! Rows are stored sparsely as `(column, value)` lists sorted by column.
//! The matrices of monomials in row-monomial systems have at most one entry
//! per row, so level 12 (4096 rows) stays cheap.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::fmt_rational;
use crate::rank::{clear_denominators, sparse_rank, SparseRow};

/// The action of an element on `V_n`, a square matrix of size `m^n`.
#[derive(Clone, PartialEq, Eq)]
pub struct LevelMatrix {
    level: usize,
    dim: usize,
    rows: Vec<Vec<(usize, BigRational)>>,
}

/// First entry where two matrices differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryDifference {
    pub row: usize,
    pub col: usize,
    pub left: BigRational,
    pub right: BigRational,
}

impl LevelMatrix {
    pub fn zero(level: usize, dim: usize) -> Self {
        LevelMatrix { level, dim, rows: vec![Vec::new(); dim] }
    }

    pub fn identity(level: usize, dim: usize) -> Self {
        Self::scalar(level, dim, BigRational::one())
    }

    pub fn scalar(level: usize, dim: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(level, dim);
        }
        LevelMatrix { level, dim, rows: (0..dim).map(|i| vec![(i, c.clone())]).collect() }
    }

    /// Builds from dense rows; zero entries are dropped.
    pub fn from_dense(level: usize, dense: Vec<Vec<BigRational>>) -> Self {
        let dim = dense.len();
        let rows = dense
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), dim, "matrix must be square");
                r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        LevelMatrix { level, dim, rows }
    }

    /// Assembles an `m × m` block matrix whose blocks all have the same size.
    pub fn from_blocks(level: usize, blocks: &[Vec<LevelMatrix>]) -> Self {
        let m = blocks.len();
        let d = blocks[0][0].dim;
        let mut rows = Vec::with_capacity(m * d);
        for block_row in blocks {
            assert_eq!(block_row.len(), m, "block layout must be square");
            for r in 0..d {
                let mut row = Vec::new();
                for (bc, block) in block_row.iter().enumerate() {
                    debug_assert_eq!(block.dim, d);
                    row.extend(block.rows[r].iter().map(|(c, v)| (bc * d + c, v.clone())));
                }
                rows.push(row);
            }
        }
        LevelMatrix { level, dim: m * d, rows }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<(usize, BigRational)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.rows[r]
            .binary_search_by_key(&c, |(col, _)| *col)
            .map(|i| self.rows[r][i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    /// The `(y, y')` block of size `dim / m`.
    pub fn block(&self, m: usize, y: usize, y2: usize) -> LevelMatrix {
        let d = self.dim / m;
        let rows = (0..d)
            .map(|r| {
                self.rows[y * d + r]
                    .iter()
                    .filter(|(c, _)| c / d == y2)
                    .map(|(c, v)| (c - y2 * d, v.clone()))
                    .collect()
            })
            .collect();
        LevelMatrix { level: self.level.saturating_sub(1), dim: d, rows }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        let mut dense = vec![vec![BigRational::zero(); self.dim]; self.dim];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                dense[r][*c] = v.clone();
            }
        }
        dense
    }

    pub fn scale(&self, c: &BigRational) -> LevelMatrix {
        if c.is_zero() {
            return Self::zero(self.level, self.dim);
        }
        LevelMatrix {
            level: self.level,
            dim: self.dim,
            rows: self.rows.iter().map(|r| r.iter().map(|(col, v)| (*col, v * c)).collect()).collect(),
        }
    }

    fn merge_rows(a: &[(usize, BigRational)], b: &[(usize, BigRational)], sign: bool) -> Vec<(usize, BigRational)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let v = if sign { b[j].1.clone() } else { -b[j].1.clone() };
                out.push((b[j].0, v));
                j += 1;
            } else {
                let v = if sign { &a[i].1 + &b[j].1 } else { &a[i].1 - &b[j].1 };
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    pub fn add(&self, other: &LevelMatrix) -> LevelMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        LevelMatrix {
            level: self.level,
            dim: self.dim,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| Self::merge_rows(a, b, true)).collect(),
        }
    }

    pub fn sub(&self, other: &LevelMatrix) -> LevelMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        LevelMatrix {
            level: self.level,
            dim: self.dim,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| Self::merge_rows(a, b, false)).collect(),
        }
    }

    /// Row-vector convention: `(v)(AB) = ((v)A)B`.
    pub fn mul(&self, other: &LevelMatrix) -> LevelMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|row| match row.as_slice() {
                [] => Vec::new(),
                [(k, a)] => other.rows[*k]
                    .iter()
                    .map(|(c, b)| (*c, a * b))
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
                _ => {
                    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                    for (k, a) in row {
                        for (c, b) in &other.rows[*k] {
                            *acc.entry(*c).or_insert_with(BigRational::zero) += a * b;
                        }
                    }
                    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
                }
            })
            .collect();
        LevelMatrix { level: self.level, dim: self.dim, rows }
    }

    /// `self ⊗ I_m`: the same transformation acting on the first letters,
    /// identity on the appended letter.
    pub fn kron_identity(&self, m: usize) -> LevelMatrix {
        let mut rows = Vec::with_capacity(self.dim * m);
        for row in &self.rows {
            for a in 0..m {
                rows.push(row.iter().map(|(c, v)| (c * m + a, v.clone())).collect());
            }
        }
        LevelMatrix { level: self.level + 1, dim: self.dim * m, rows }
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let rows: Vec<SparseRow> = self.rows.iter().filter(|r| !r.is_empty()).map(|r| clear_denominators(r)).collect();
        sparse_rank(&rows)
    }

    pub fn first_difference(&self, other: &LevelMatrix) -> Option<EntryDifference> {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        for (r, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            if a != b {
                let diff = Self::merge_rows(a, b, false);
                let c = diff[0].0;
                return Some(EntryDifference { row: r, col: c, left: self.get(r, c), right: other.get(r, c) });
            }
        }
        None
    }
}

impl fmt::Debug for LevelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LevelMatrix(level {}, dim {}, nnz {})", self.level, self.dim, self.nnz())
    }
}

impl fmt::Display for LevelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dense = self.to_dense();
        let cells: Vec<Vec<String>> = dense.iter().map(|r| r.iter().map(fmt_rational).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn dense(rows: &[&[i64]]) -> LevelMatrix {
        LevelMatrix::from_dense(0, rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn product_matches_dense_multiplication() {
        let a = dense(&[&[1, 2], &[0, 3]]);
        let b = dense(&[&[4, 0], &[5, 6]]);
        assert_eq!(a.mul(&b), dense(&[&[14, 12], &[15, 18]]));
    }

    #[test]
    fn add_sub_cancel() {
        let a = dense(&[&[1, 2], &[0, 3]]);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.add(&a), a.scale(&q(2)));
    }

    #[test]
    fn kron_identity_layout() {
        let swap = dense(&[&[0, 1], &[1, 0]]);
        let k = swap.kron_identity(2);
        assert_eq!(k.to_dense(), dense(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]).to_dense());
    }

    #[test]
    fn blocks_round_trip() {
        let a = dense(&[&[1, 2], &[3, 4]]);
        let z = LevelMatrix::zero(0, 2);
        let big = LevelMatrix::from_blocks(1, &[vec![z.clone(), a.clone()], vec![a.clone(), z.clone()]]);
        assert_eq!(big.dim(), 4);
        assert_eq!(big.block(2, 0, 1).to_dense(), a.to_dense());
        assert!(big.block(2, 1, 1).is_zero());
    }

    #[test]
    fn difference_witness() {
        let a = dense(&[&[1, 0], &[0, 1]]);
        let b = dense(&[&[1, 0], &[7, 1]]);
        let d = a.first_difference(&b).unwrap();
        assert_eq!((d.row, d.col, d.left, d.right), (1, 0, q(0), q(7)));
        assert!(a.first_difference(&a).is_none());
    }

    #[test]
    fn rank_of_rational_matrix() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let m = LevelMatrix::from_dense(0, vec![vec![half.clone(), q(1)], vec![q(1), q(2)]]);
        assert_eq!(m.rank(), 1);
    }
}
