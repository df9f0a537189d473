//! Rank certificates for R1: exact integer level matrices of words, the
//! rank of all words up to a length, and independence of powers of `s`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::RecursionError;
use crate::monomial::S;
use crate::rank::{max_bits, sparse_rank, SparseRow};
use crate::word::Word;

/// Highest level built by default (`2^12` rows).
pub const R1_LEVEL_CAP: usize = 12;

/// Square integer matrix with sparse rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        IntMatrix { dim, rows: (0..dim).map(|i| vec![(i, BigInt::one())]).collect() }
    }

    pub fn zero(dim: usize) -> Self {
        IntMatrix { dim, rows: vec![Vec::new(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.rows[r].iter().find(|(j, _)| *j == c).map(|(_, v)| v.clone()).unwrap_or_default()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        (0..self.dim).map(|r| (0..self.dim).map(|c| self.get(r, c)).collect()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| row.iter().all(|(c, _)| *c == r))
    }

    /// Block `(y, y2)` of a `2×2` split.
    pub fn block(&self, y: usize, y2: usize) -> IntMatrix {
        let h = self.dim / 2;
        let rows = self.rows[y * h..(y + 1) * h]
            .iter()
            .map(|row| row.iter().filter(|(c, _)| c / h == y2).map(|(c, v)| (c - y2 * h, v.clone())).collect())
            .collect();
        IntMatrix { dim: h, rows }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        if k.is_zero() {
            return IntMatrix::zero(self.dim);
        }
        let rows = self.rows.iter().map(|row| row.iter().map(|(c, v)| (*c, v * k)).collect()).collect();
        IntMatrix { dim: self.dim, rows }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim);
        let mut acc = vec![BigInt::zero(); self.dim];
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut touched = Vec::new();
                for (k, a) in row {
                    for (c, b) in &other.rows[*k] {
                        if acc[*c].is_zero() {
                            touched.push(*c);
                        }
                        acc[*c] += a * b;
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                touched
                    .into_iter()
                    .filter_map(|c| {
                        let v = std::mem::take(&mut acc[c]);
                        (!v.is_zero()).then_some((c, v))
                    })
                    .collect()
            })
            .collect();
        IntMatrix { dim: self.dim, rows }
    }

    /// `[[a, b], [c, d]]` from four equal-size blocks.
    fn from_blocks(a: &IntMatrix, b: &IntMatrix, c: &IntMatrix, d: &IntMatrix) -> IntMatrix {
        let h = a.dim;
        let join = |l: &IntMatrix, r: &IntMatrix, i: usize| -> Vec<(usize, BigInt)> {
            l.rows[i].iter().cloned().chain(r.rows[i].iter().map(|(j, v)| (j + h, v.clone()))).collect()
        };
        let rows = (0..h).map(|i| join(a, b, i)).chain((0..h).map(|i| join(c, d, i))).collect();
        IntMatrix { dim: 2 * h, rows }
    }

    fn flatten_into(&self, offset: usize, out: &mut SparseRow) {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                out.push((offset + r * self.dim + c, v.clone()));
            }
        }
    }
}

/// `(s_n, t_n)` with `s_0 = [1]`, `t_0 = [0]`,
/// `s_{n+1} = diag(I, 2s_n)`, `t_{n+1} = [[0, 2s_n], [0, 2t_n]]`.
pub fn r1_generators(n: usize) -> Result<(IntMatrix, IntMatrix), RecursionError> {
    if n > R1_LEVEL_CAP {
        return Err(RecursionError::LevelCapExceeded { requested: n, cap: R1_LEVEL_CAP });
    }
    let two = BigInt::from(2);
    let mut s = IntMatrix::identity(1);
    let mut t = IntMatrix::zero(1);
    for _ in 0..n {
        let h = s.dim;
        let s2 = s.scale(&two);
        let t2 = t.scale(&two);
        let z = IntMatrix::zero(h);
        let next_s = IntMatrix::from_blocks(&IntMatrix::identity(h), &z, &z, &s2);
        let next_t = IntMatrix::from_blocks(&z, &s2, &z, &t2);
        s = next_s;
        t = next_t;
    }
    Ok((s, t))
}

fn word_product(w: &Word, s: &IntMatrix, t: &IntMatrix) -> IntMatrix {
    w.letters().fold(IntMatrix::identity(s.dim), |acc, x| acc.mul(if x == S { s } else { t }))
}

pub fn r1_level_matrix(w: &Word, n: usize) -> Result<IntMatrix, RecursionError> {
    let (s, t) = r1_generators(n)?;
    Ok(word_product(w, &s, &t))
}

/// Level-0..n matrices of each word, concatenated and flattened.
fn word_vectors(words: &[Word], n: usize) -> Result<Vec<SparseRow>, RecursionError> {
    let gens: Vec<(IntMatrix, IntMatrix)> = (0..=n).map(r1_generators).collect::<Result<_, _>>()?;
    Ok(words
        .par_iter()
        .map(|w| {
            let mut row = SparseRow::new();
            let mut offset = 0;
            for (s, t) in &gens {
                word_product(w, s, t).flatten_into(offset, &mut row);
                offset += s.dim * s.dim;
            }
            row
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Full rank at this truncation.
    FreeAtScale,
    /// Rank below the count; the truncation is too coarse to separate
    /// the words, which refutes nothing.
    LevelInsufficient,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FreenessReport {
    #[serde(rename = "L")]
    pub max_len: usize,
    pub n: usize,
    pub word_count: usize,
    pub rank: usize,
    pub verdict: Verdict,
    pub max_coefficient_bits: u64,
    /// Seconds; left empty unless timing is requested, so reports stay
    /// byte-stable.
    pub wall_time: Option<f64>,
}

/// Rank of all `2^{L+1} − 2` words of length `1..=L`, as stacked level-0..n
/// matrices over the integers.
pub fn independence_rank(max_len: usize, n: usize) -> Result<FreenessReport, RecursionError> {
    if max_len == 0 {
        return Err(RecursionError::InvalidArgument("L must be at least 1".into()));
    }
    let words: Vec<Word> = (1..=max_len).flat_map(Word::all_of_length).collect();
    let rows = word_vectors(&words, n)?;
    let rank = sparse_rank(&rows);
    Ok(FreenessReport {
        max_len,
        n,
        word_count: words.len(),
        rank,
        verdict: if rank == words.len() { Verdict::FreeAtScale } else { Verdict::LevelInsufficient },
        max_coefficient_bits: max_bits(&rows),
        wall_time: None,
    })
}

/// Runs [`independence_rank`] from `n = L + 2` upward until full rank or
/// `n_cap`. Returns every attempt.
pub fn escalate(max_len: usize, n_cap: usize) -> Result<Vec<FreenessReport>, RecursionError> {
    let mut out = Vec::new();
    for n in max_len + 2..=n_cap.max(max_len + 2) {
        let r = independence_rank(max_len, n)?;
        let done = r.verdict == Verdict::FreeAtScale;
        out.push(r);
        if done {
            break;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranscendenceReport {
    pub d: usize,
    pub n: usize,
    pub rank: usize,
    pub count: usize,
    pub verdict: Verdict,
    pub max_coefficient_bits: u64,
}

/// Linear independence of `1, s, …, s^d` as stacked level-0..n matrices.
pub fn transcendence_check(d: usize, n: usize) -> Result<TranscendenceReport, RecursionError> {
    if d == 0 {
        return Err(RecursionError::InvalidArgument("d must be at least 1".into()));
    }
    let words: Vec<Word> = (0..=d).map(|k| Word::repeat_letter(S, k)).collect();
    let rows = word_vectors(&words, n)?;
    let rank = sparse_rank(&rows);
    Ok(TranscendenceReport {
        d,
        n,
        rank,
        count: d + 1,
        verdict: if rank == d + 1 { Verdict::FreeAtScale } else { Verdict::LevelInsufficient },
        max_coefficient_bits: max_bits(&rows),
    })
}

/// For `m = s^i t^j m'` with `j ≥ 1`: the top-right block of `m` at level
/// `n` against `2^{|m|−i} · s t^{j−1} m'` at level `n − 1`.
pub fn top_row_block_holds(m: &Word, n: usize) -> Result<Option<bool>, RecursionError> {
    let i = m.letters().take_while(|&x| x == S).count();
    if i == m.len() || n == 0 {
        return Ok(None);
    }
    let mut rest = Word::from_letters([S]);
    rest.append(&m.factor(i + 1, m.len()));
    let lhs = r1_level_matrix(m, n)?.block(0, 1);
    let rhs = r1_level_matrix(&rest, n - 1)?.scale(&(BigInt::one() << (m.len() - i)));
    Ok(Some(lhs == rhs))
}
