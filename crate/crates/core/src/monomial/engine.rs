use std::collections::HashMap;
use std::fmt;
use std::num::NonZeroUsize;

use lru::LruCache;
use num_traits::Zero;

use crate::error::MonomialError;
use crate::system::RecursionSystem;
use crate::word::{Alphabet, Word};

/// Default bound on memoized words.
pub const DEFAULT_MEMO_CAP: usize = 1 << 20;
/// Default bound on words visited by one zero test.
pub const DEFAULT_SEARCH_BUDGET: usize = 1 << 22;

/// Nonzero entry of one block row: target column and the entry monomial.
type RowEntry = Option<(u8, Word)>;

/// `2 × 2` block of a monomial; `None` marks a structural zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockForm {
    pub entries: [[Option<Word>; 2]; 2],
}

impl BlockForm {
    pub fn zero() -> Self {
        BlockForm { entries: [[None, None], [None, None]] }
    }

    pub fn get(&self, y: usize, y2: usize) -> Option<&Word> {
        self.entries[y][y2].as_ref()
    }

    pub fn support(&self) -> [[bool; 2]; 2] {
        [
            [self.entries[0][0].is_some(), self.entries[0][1].is_some()],
            [self.entries[1][0].is_some(), self.entries[1][1].is_some()],
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Option::is_none)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.entries.iter().flatten().flatten()
    }

    /// `[[t, 0], [s, 0]]`, with `1` for the empty word.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let cell = |e: &Option<Word>| match e {
            None => "0".to_string(),
            Some(w) => alphabet.render_compact(w),
        };
        format!(
            "[[{}, {}], [{}, {}]]",
            cell(&self.entries[0][0]),
            cell(&self.entries[0][1]),
            cell(&self.entries[1][0]),
            cell(&self.entries[1][1])
        )
    }
}

impl fmt::Display for BlockForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Alphabet::ST))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub memo_hits: u64,
    pub searches: u64,
    pub visited: u64,
}

/// Exact zero test for monomials of a two-generator, arity-2 system in which
/// every generator block has at most one nonzero entry per row and every
/// entry is a single monomial. Products of such blocks keep the shape, so the
/// action of a word on a tree vector never branches and never cancels: a
/// word is nonzero iff some chain of block entries reaches a word whose root
/// value is nonzero.
///
/// Methods take `&mut self` for the memo table; parallel callers use one
/// engine per worker (see [`MonomialEngine::fork`]).
pub struct MonomialEngine {
    alphabet: Alphabet,
    phi_nonzero: [bool; 2],
    rows: [[RowEntry; 2]; 2],
    memo: LruCache<Word, bool>,
    budget: usize,
    stats: EngineStats,
}

impl MonomialEngine {
    pub fn new(sys: &RecursionSystem) -> Result<Self, MonomialError> {
        Self::with_caps(sys, DEFAULT_MEMO_CAP, DEFAULT_SEARCH_BUDGET)
    }

    pub fn with_caps(sys: &RecursionSystem, memo_cap: usize, budget: usize) -> Result<Self, MonomialError> {
        let gens = sys.generators();
        if gens.len() != 2 || sys.arity() != 2 {
            return Err(MonomialError::NotMonomialSystem(format!(
                "need two generators over the binary tree, found {} generator(s) of arity {}",
                gens.len(),
                sys.arity()
            )));
        }
        let alphabet = Alphabet::new(gens[0].name, gens[1].name);
        let mut rows: [[RowEntry; 2]; 2] = Default::default();
        for (g, def) in gens.iter().enumerate() {
            for (y, row) in def.blocks.iter().enumerate() {
                let mut found: RowEntry = None;
                for (y2, entry) in row.iter().enumerate() {
                    if entry.is_zero() {
                        continue;
                    }
                    let Some((mono, _)) = entry.as_single_term() else {
                        return Err(MonomialError::NotMonomialSystem(format!(
                            "entry ({y}, {y2}) of '{}' is not a single monomial: {entry}",
                            def.name
                        )));
                    };
                    if found.is_some() {
                        return Err(MonomialError::NotMonomialSystem(format!(
                            "row {y} of '{}' has more than one nonzero entry",
                            def.name
                        )));
                    }
                    let word = Word::from_letters(mono.0.iter().map(|c| alphabet.index_of(*c).expect("declared letter")));
                    found = Some((y2 as u8, word));
                }
                rows[g][y] = found;
            }
        }
        let cap = NonZeroUsize::new(memo_cap.max(1)).expect("positive");
        Ok(MonomialEngine {
            alphabet,
            phi_nonzero: [!gens[0].phi.is_zero(), !gens[1].phi.is_zero()],
            rows,
            memo: LruCache::new(cap),
            budget: budget.max(1),
            stats: EngineStats::default(),
        })
    }

    /// A fresh engine for the same system with an empty memo table.
    pub fn fork(&self) -> Self {
        MonomialEngine {
            alphabet: self.alphabet,
            phi_nonzero: self.phi_nonzero,
            rows: self.rows.clone(),
            memo: LruCache::new(self.memo.cap()),
            budget: self.budget,
            stats: EngineStats::default(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn stats(&self) -> EngineStats {
        self.stats
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn parse(&self, text: &str) -> Result<Word, MonomialError> {
        Ok(self.alphabet.parse(text)?)
    }

    pub fn render(&self, w: &Word) -> String {
        self.alphabet.render(w)
    }

    /// Root value test: `w_φ ≠ 0`. The empty word acts as the identity.
    pub fn phi_nonzero(&self, w: &Word) -> bool {
        w.letters().all(|l| self.phi_nonzero[l as usize])
    }

    /// Symbolic block form; entries may still be zero as words (e.g. the
    /// `ss` entry of `tt` in R2).
    pub fn block_form(&self, w: &Word) -> BlockForm {
        let mut bf = BlockForm::zero();
        for y in 0..2u8 {
            let mut col = y;
            let mut entry = Word::empty();
            let mut alive = true;
            for l in w.letters() {
                match &self.rows[l as usize][col as usize] {
                    None => {
                        alive = false;
                        break;
                    }
                    Some((next, e)) => {
                        col = *next;
                        entry.append(e);
                    }
                }
            }
            if alive {
                bf.entries[y as usize][col as usize] = Some(entry);
            }
        }
        bf
    }

    /// Block form with entries that are zero words removed.
    pub fn reduced_block_form(&mut self, w: &Word) -> Result<BlockForm, MonomialError> {
        let mut bf = self.block_form(w);
        for y in 0..2 {
            for y2 in 0..2 {
                if let Some(e) = &bf.entries[y][y2] {
                    if self.is_zero(e)? {
                        bf.entries[y][y2] = None;
                    }
                }
            }
        }
        Ok(bf)
    }

    /// Breadth-first search through block entries for a word with nonzero
    /// root value. Exhausting the search proves every visited word zero.
    pub fn is_zero(&mut self, w: &Word) -> Result<bool, MonomialError> {
        if let Some(&z) = self.memo.get(w) {
            self.stats.memo_hits += 1;
            return Ok(z);
        }
        self.stats.searches += 1;
        let mut nodes: Vec<(Word, usize)> = vec![(w.clone(), usize::MAX)];
        let mut index: HashMap<Word, usize> = HashMap::from([(w.clone(), 0)]);
        let mut head = 0;
        let mut hit: Option<usize> = None;
        while head < nodes.len() {
            let i = head;
            head += 1;
            let cur = &nodes[i].0;
            let known = if i == 0 { None } else { self.memo.get(cur).copied() };
            if known.is_some() {
                self.stats.memo_hits += 1;
            }
            match known {
                Some(true) => continue,
                Some(false) => {
                    hit = Some(i);
                    break;
                }
                None => {}
            }
            if self.phi_nonzero(cur) {
                hit = Some(i);
                break;
            }
            let bf = self.block_form(cur);
            for child in bf.words() {
                if !index.contains_key(child) {
                    if nodes.len() >= self.budget {
                        return Err(MonomialError::SearchBudgetExceeded(self.budget));
                    }
                    index.insert(child.clone(), nodes.len());
                    nodes.push((child.clone(), i));
                }
            }
        }
        self.stats.visited += nodes.len() as u64;
        match hit {
            Some(mut i) => {
                loop {
                    let (word, parent) = &nodes[i];
                    self.memo.put(word.clone(), false);
                    if *parent == usize::MAX {
                        break;
                    }
                    i = *parent;
                }
                Ok(false)
            }
            None => {
                for (word, _) in nodes {
                    self.memo.put(word, true);
                }
                Ok(true)
            }
        }
    }

    pub fn is_nonzero(&mut self, w: &Word) -> Result<bool, MonomialError> {
        Ok(!self.is_zero(w)?)
    }

    /// Least `k ≤ cap` with `w^k = 0`.
    pub fn nil_degree(&mut self, w: &Word, cap: usize) -> Result<Option<usize>, MonomialError> {
        let mut power = Word::empty();
        for k in 1..=cap {
            power.append(w);
            if self.is_zero(&power)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// Memo entries as `(word, is_zero)`, most recently used first.
    pub fn memo_entries(&self) -> impl Iterator<Item = (&Word, bool)> {
        self.memo.iter().map(|(w, z)| (w, *z))
    }

    /// Seeds the memo table, e.g. from a persisted cache.
    pub fn seed_memo(&mut self, w: Word, zero: bool) {
        self.memo.put(w, zero);
    }
}
