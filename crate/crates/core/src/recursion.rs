//! Level expansion of recursion systems: exact truncations, symbolic block
//! forms, state sets, rank ratios, growth profiles and identity checks.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::RecursionError;
use crate::matrix::{EntryDifference, LevelMatrix};
use crate::poly::{fmt_rational, Mono, NcPolynomial};
use crate::rank::{clear_denominators, sparse_rank, SparseRow};
use crate::system::RecursionSystem;

/// Dense-equivalent budget: levels with more than this many rows are refused.
pub const DEFAULT_MAX_ROWS: usize = 4096;

/// Largest level whose matrices have at most `max_rows` rows.
pub fn level_cap_for(arity: usize, max_rows: usize) -> usize {
    let mut n = 0;
    let mut rows = 1usize;
    while let Some(next) = rows.checked_mul(arity) {
        if next > max_rows {
            break;
        }
        rows = next;
        n += 1;
    }
    n
}

/// Expands polynomials of one system into level matrices. Generator matrices
/// are computed once per level and shared; the expander is `Sync`, so
/// independent polynomials can be expanded from several threads.
pub struct Expander<'a> {
    sys: &'a RecursionSystem,
    cap: usize,
    levels: RwLock<Vec<Arc<Vec<LevelMatrix>>>>,
}

impl<'a> Expander<'a> {
    /// Expander with the default cap (`m^n ≤ 4096`).
    pub fn new(sys: &'a RecursionSystem) -> Self {
        Self::with_cap(sys, level_cap_for(sys.arity(), DEFAULT_MAX_ROWS))
    }

    pub fn with_cap(sys: &'a RecursionSystem, cap: usize) -> Self {
        Expander { sys, cap, levels: RwLock::new(Vec::new()) }
    }

    pub fn system(&self) -> &'a RecursionSystem {
        self.sys
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn dim(&self, n: usize) -> usize {
        self.sys.arity().pow(n as u32)
    }

    fn check_level(&self, n: usize) -> Result<(), RecursionError> {
        if n > self.cap {
            Err(RecursionError::LevelCapExceeded { requested: n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Matrices of all generators at level `n`, in declaration order.
    pub fn generator_matrices(&self, n: usize) -> Result<Arc<Vec<LevelMatrix>>, RecursionError> {
        self.check_level(n)?;
        if let Some(mats) = self.levels.read().expect("level cache poisoned").get(n) {
            return Ok(Arc::clone(mats));
        }
        let mut levels = self.levels.write().expect("level cache poisoned");
        while levels.len() <= n {
            let k = levels.len();
            let mats: Vec<LevelMatrix> = if k == 0 {
                self.sys.generators().iter().map(|g| LevelMatrix::scalar(0, 1, g.phi.clone())).collect()
            } else {
                let below = &levels[k - 1];
                self.sys
                    .generators()
                    .iter()
                    .map(|g| {
                        let blocks: Vec<Vec<LevelMatrix>> = g
                            .blocks
                            .iter()
                            .map(|row| row.iter().map(|p| self.evaluate(p, k - 1, below)).collect())
                            .collect();
                        LevelMatrix::from_blocks(k, &blocks)
                    })
                    .collect()
            };
            levels.push(Arc::new(mats));
        }
        Ok(Arc::clone(&levels[n]))
    }

    fn evaluate(&self, p: &NcPolynomial, n: usize, gens: &[LevelMatrix]) -> LevelMatrix {
        let dim = self.dim(n);
        let mut acc = LevelMatrix::zero(n, dim);
        for (mono, c) in p.terms() {
            let term = match mono.0.split_first() {
                None => LevelMatrix::scalar(n, dim, c.clone()),
                Some((first, rest)) => {
                    let mut m = gens[self.index(*first)].clone();
                    for letter in rest {
                        if m.is_zero() {
                            break;
                        }
                        m = m.mul(&gens[self.index(*letter)]);
                    }
                    m.scale(c)
                }
            };
            acc = acc.add(&term);
        }
        acc
    }

    fn index(&self, c: char) -> usize {
        self.sys.generator_index(c).expect("letters are validated before expansion")
    }

    /// The exact action of `p` on `V_n`.
    pub fn level_matrix(&self, p: &NcPolynomial, n: usize) -> Result<LevelMatrix, RecursionError> {
        self.sys.check_polynomial(p)?;
        let gens = self.generator_matrices(n)?;
        Ok(self.evaluate(p, n, &gens))
    }

    /// `r_i = rank(L_i) / m^i` for `i = 1..=n_max`.
    pub fn rank_ratio_sequence(&self, p: &NcPolynomial, n_max: usize) -> Result<Vec<BigRational>, RecursionError> {
        (1..=n_max)
            .map(|i| {
                let rank = self.level_matrix(p, i)?.rank();
                Ok(BigRational::new(BigInt::from(rank), BigInt::from(self.dim(i))))
            })
            .collect()
    }

    /// `rank(L_i − L_{i−1} ⊗ I_m)` for `i = 1..=n_max`.
    pub fn growth_profile(&self, p: &NcPolynomial, n_max: usize) -> Result<Vec<usize>, RecursionError> {
        self.check_level(n_max)?;
        let mut prev = self.level_matrix(p, 0)?;
        let mut out = Vec::with_capacity(n_max);
        for i in 1..=n_max {
            let cur = self.level_matrix(p, i)?;
            out.push(cur.sub(&prev.kron_identity(self.sys.arity())).rank());
            prev = cur;
        }
        Ok(out)
    }

    /// Compares `lhs` and `rhs` at levels `0..=n_max`, stopping at the first
    /// level where they differ.
    pub fn check_identity(
        &self,
        lhs: &NcPolynomial,
        rhs: &NcPolynomial,
        n_max: usize,
    ) -> Result<IdentityVerdict, RecursionError> {
        self.sys.check_polynomial(lhs)?;
        self.sys.check_polynomial(rhs)?;
        self.check_level(n_max)?;
        let diff = lhs - rhs;
        for n in 0..=n_max {
            let d = self.level_matrix(&diff, n)?;
            if !d.is_zero() {
                let zero = LevelMatrix::zero(n, d.dim());
                let EntryDifference { row, col, .. } = d.first_difference(&zero).expect("nonzero matrix");
                let left = self.level_matrix(lhs, n)?.get(row, col);
                let right = self.level_matrix(rhs, n)?.get(row, col);
                return Ok(IdentityVerdict::Fails { level: n, row, col, lhs: left, rhs: right });
            }
        }
        Ok(IdentityVerdict::HoldsToLevel(n_max))
    }

    /// Root value `p_φ`: the level-0 scalar.
    pub fn phi_value(&self, p: &NcPolynomial) -> Result<BigRational, RecursionError> {
        self.sys.check_polynomial(p)?;
        Ok(phi_of(self.sys, p))
    }

    /// `[p]` expanded symbolically to `depth` levels.
    pub fn lex_block_form(&self, p: &NcPolynomial, depth: usize) -> Result<LexBlockForm, RecursionError> {
        if depth == 0 {
            return Err(RecursionError::InvalidArgument("block form depth must be at least 1".into()));
        }
        self.sys.check_polynomial(p)?;
        Ok(lex_form(self.sys, p, depth))
    }

    /// Breadth-first closure of block entries starting from generator `g`.
    pub fn state_set(&self, g: char, cap: usize) -> Result<StateSet, RecursionError> {
        if self.sys.generator_index(g).is_none() {
            return Err(RecursionError::UnknownGenerator(g));
        }
        if cap == 0 {
            return Err(RecursionError::InvalidArgument("state cap must be at least 1".into()));
        }
        let start = NcPolynomial::letter(g);
        let mut seen: HashSet<NcPolynomial> = HashSet::from([start.clone()]);
        let mut states = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        let mut exceeded = false;
        'bfs: while let Some(q) = queue.pop_front() {
            for entry in block_entries(self.sys, &q).into_iter().flatten() {
                if seen.insert(entry.clone()) {
                    if states.len() == cap {
                        exceeded = true;
                        break 'bfs;
                    }
                    states.push(entry.clone());
                    queue.push_back(entry);
                }
            }
        }
        let span_rank = polynomial_span_rank(&states);
        Ok(StateSet { states, exact_count: (!exceeded).then_some(seen.len()), span_rank })
    }
}

fn phi_of(sys: &RecursionSystem, p: &NcPolynomial) -> BigRational {
    let mut acc = BigRational::zero();
    for (mono, c) in p.terms() {
        let mut v = c.clone();
        for letter in &mono.0 {
            v *= &sys.generator(*letter).expect("validated letter").phi;
            if v.is_zero() {
                break;
            }
        }
        acc += v;
    }
    acc
}

/// The `m × m` block entries of `p`, computed by multiplying generator
/// blocks as matrices over the polynomial ring.
pub fn block_entries(sys: &RecursionSystem, p: &NcPolynomial) -> Vec<Vec<NcPolynomial>> {
    let m = sys.arity();
    let mut acc = vec![vec![NcPolynomial::zero(); m]; m];
    for (mono, c) in p.terms() {
        let mut prod: Vec<Vec<NcPolynomial>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { NcPolynomial::constant(c.clone()) } else { NcPolynomial::zero() }).collect())
            .collect();
        for letter in &mono.0 {
            let blocks = &sys.generator(*letter).expect("validated letter").blocks;
            prod = poly_matrix_mul(&prod, blocks);
        }
        for i in 0..m {
            for j in 0..m {
                acc[i][j] = &acc[i][j] + &prod[i][j];
            }
        }
    }
    acc
}

fn poly_matrix_mul(a: &[Vec<NcPolynomial>], b: &[Vec<NcPolynomial>]) -> Vec<Vec<NcPolynomial>> {
    let m = a.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut e = NcPolynomial::zero();
                    for k in 0..m {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            e = &e + &(&a[i][k] * &b[k][j]);
                        }
                    }
                    e
                })
                .collect()
        })
        .collect()
}

fn lex_form(sys: &RecursionSystem, p: &NcPolynomial, depth: usize) -> LexBlockForm {
    let blocks = block_entries(sys, p)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| if depth == 1 { BlockEntry::Poly(e) } else { BlockEntry::Nested(Box::new(lex_form(sys, &e, depth - 1))) })
                .collect()
        })
        .collect();
    LexBlockForm { root: phi_of(sys, p), blocks }
}

/// Rank of polynomials viewed as coefficient vectors over monomials.
pub fn polynomial_span_rank(polys: &[NcPolynomial]) -> usize {
    let mut monos: Vec<&Mono> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m)).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<SparseRow> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let row: Vec<(usize, BigRational)> =
                p.terms().map(|(m, c)| (monos.binary_search(&m).expect("collected"), c.clone())).collect();
            clear_denominators(&row)
        })
        .collect();
    sparse_rank(&rows)
}

/// Outcome of a truncated identity check. `HoldsToLevel` is a certificate
/// for the checked levels only; `Fails` is conclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityVerdict {
    HoldsToLevel(usize),
    Fails { level: usize, row: usize, col: usize, lhs: BigRational, rhs: BigRational },
}

impl IdentityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityVerdict::HoldsToLevel(_))
    }
}

impl fmt::Display for IdentityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityVerdict::HoldsToLevel(n) => {
                write!(f, "holds at all checked levels 0..={n} (truncation certificate, not a proof)")
            }
            IdentityVerdict::Fails { level, row, col, lhs, rhs } => write!(
                f,
                "fails at level {level}: entry ({row}, {col}) is {} on the left, {} on the right",
                fmt_rational(lhs),
                fmt_rational(rhs)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSet {
    /// Discovery order; the generator itself comes first.
    pub states: Vec<NcPolynomial>,
    /// `None` when the closure did not stabilize under the cap.
    pub exact_count: Option<usize>,
    pub span_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockEntry {
    Poly(NcPolynomial),
    Nested(Box<LexBlockForm>),
}

/// `(m+1) × (m+1)` form: root scalar in the corner, `m × m` blocks below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexBlockForm {
    pub root: BigRational,
    pub blocks: Vec<Vec<BlockEntry>>,
}

impl LexBlockForm {
    /// Block entries at the top depth, when they are polynomials.
    pub fn polynomial_blocks(&self) -> Option<Vec<Vec<NcPolynomial>>> {
        self.blocks
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        BlockEntry::Poly(p) => Some(p.clone()),
                        BlockEntry::Nested(_) => None,
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for LexBlockForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; [", fmt_rational(&self.root))?;
        for (i, row) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                match e {
                    BlockEntry::Poly(p) => write!(f, "{p}")?,
                    BlockEntry::Nested(inner) => write!(f, "{inner}")?,
                }
            }
            write!(f, "]")?;
        }
        write!(f, "])")
    }
}
