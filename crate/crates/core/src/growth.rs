//! Counting nonzero monomials: the layers `V(n)`, the boundary sets `W(n)`,
//! growth tables, factor avoidance and the growth-exponent fit.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::GrowthError;
use crate::fibonacci::fib_u64;
use crate::monomial::{lambda_map, MonomialEngine, S, T};
use crate::word::Word;

/// `f(1..=60)` for R2, the reference growth table.
pub const REFERENCE_F: [u64; 60] = [
    2, 3, 4, 5, 7, 8, 9, 11, 13, 15, //
    16, 17, 19, 21, 24, 27, 29, 31, 32, 33, //
    35, 37, 40, 43, 46, 50, 53, 56, 59, 61, //
    63, 64, 65, 67, 69, 72, 75, 78, 82, 85, //
    89, 94, 98, 103, 107, 110, 114, 117, 120, 123, //
    125, 127, 128, 129, 131, 133, 136, 139, 142, 146,
];

/// Default bound on bytes held by one layer of stored words.
pub const DEFAULT_BYTE_CAP: usize = 1 << 30;

fn word_bytes(w: &Word) -> usize {
    std::mem::size_of::<Word>() + w.len().div_ceil(64) * 8
}

fn check_bytes(layer: &[Word], cap: usize) -> Result<(), GrowthError> {
    let needed: usize = layer.iter().map(word_bytes).sum();
    if needed > cap {
        Err(GrowthError::MemoryBudgetExceeded { needed, cap })
    } else {
        Ok(())
    }
}

/// `V(n+1) = {x·v ≠ 0 : v ∈ V(n), x ∈ {s, t}}`, sorted length-lexicographically.
pub fn extend_layer(engine: &mut MonomialEngine, layer: &[Word]) -> Result<Vec<Word>, GrowthError> {
    let mut next = Vec::with_capacity(layer.len() * 2);
    for v in layer {
        for x in [S, T] {
            let w = v.prepend(x);
            if !engine.is_zero(&w)? {
                next.push(w);
            }
        }
    }
    next.sort();
    Ok(next)
}

/// Same as [`extend_layer`], split across the rayon pool with one forked
/// engine per task. Output order does not depend on scheduling.
pub fn extend_layer_par(engine: &MonomialEngine, layer: &[Word]) -> Result<Vec<Word>, GrowthError> {
    let chunk = (layer.len() / (4 * rayon::current_num_threads()).max(1)).max(256);
    let parts: Result<Vec<Vec<Word>>, GrowthError> = layer
        .par_chunks(chunk)
        .map_init(|| engine.fork(), extend_layer)
        .collect();
    let mut next: Vec<Word> = parts?.into_iter().flatten().collect();
    next.sort();
    Ok(next)
}

/// `V(0) = {1}, V(1), …, V(n_max)`; index is the word length.
pub fn nonzero_layers(engine: &mut MonomialEngine, n_max: usize, byte_cap: usize) -> Result<Vec<Vec<Word>>, GrowthError> {
    let mut layers = vec![vec![Word::empty()]];
    for _ in 0..n_max {
        let next = extend_layer(engine, layers.last().expect("nonempty"))?;
        check_bytes(&next, byte_cap)?;
        layers.push(next);
    }
    Ok(layers)
}

/// `V(n)` alone, keeping only one layer in memory at a time.
pub fn enumerate_nonzero(engine: &mut MonomialEngine, n: usize, byte_cap: usize) -> Result<Vec<Word>, GrowthError> {
    let mut layer = vec![Word::empty()];
    for _ in 0..n {
        layer = extend_layer(engine, &layer)?;
        check_bytes(&layer, byte_cap)?;
    }
    Ok(layer)
}

/// `W(n) = {v ∈ V(n) : sv ≠ 0, tv ≠ 0}` from a layer `V(n)`.
pub fn boundary_filter(engine: &mut MonomialEngine, layer: &[Word]) -> Result<Vec<Word>, GrowthError> {
    let mut out = Vec::new();
    for v in layer {
        if !engine.is_zero(&v.prepend(S))? && !engine.is_zero(&v.prepend(T))? {
            out.push(v.clone());
        }
    }
    Ok(out)
}

/// `w ↦ ws`, defined on boundary words ending in `t`.
pub fn sigma_op(w: &Word) -> Word {
    let mut out = w.clone();
    out.push(S);
    out
}

/// `w ↦ (sw)^λ`.
pub fn kappa_op(w: &Word) -> Word {
    lambda_map(&w.prepend(S))
}

/// All boundary words of length `≤ n_max`, grown from `t` by `σ` and `κ`;
/// index is the word length, each bucket sorted. No zero tests are needed:
/// words ending in `s` are exactly `σ` of words ending in `t`, and words
/// ending in `t` are exactly `κ` of boundary words.
pub fn boundary_generate(n_max: usize) -> Vec<Vec<Word>> {
    let mut by_len: Vec<Vec<Word>> = vec![Vec::new(); n_max + 1];
    if n_max == 0 {
        return by_len;
    }
    let mut stack = vec![Word::from_letters([T])];
    while let Some(w) = stack.pop() {
        if w.last() == Some(T) && w.len() < n_max {
            stack.push(sigma_op(&w));
        }
        // |κ(w)| = |w| + 1 + (number of t in sw), always > |w|
        let k_len = w.len() + 1 + w.count(T);
        if k_len <= n_max {
            stack.push(kappa_op(&w));
        }
        by_len[w.len()].push(w);
    }
    for bucket in &mut by_len {
        bucket.sort();
    }
    by_len
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub f: u64,
    pub g: u64,
    #[serde(rename = "F")]
    pub big_f: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
}

impl GrowthTable {
    /// `f(n)`, for `1 ≤ n ≤ n_max`.
    pub fn f(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.rows.get(i)).map(|r| r.f)
    }

    pub fn f_values(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.f).collect()
    }

    /// Indices where the table disagrees with [`REFERENCE_F`].
    pub fn reference_mismatches(&self) -> Vec<(usize, u64, u64)> {
        self.rows
            .iter()
            .filter(|r| r.n <= REFERENCE_F.len())
            .filter(|r| r.f != REFERENCE_F[r.n - 1])
            .map(|r| (r.n, r.f, REFERENCE_F[r.n - 1]))
            .collect()
    }

    fn from_f_and_g(f: &[u64], g: &[u64]) -> Self {
        let mut total = 0;
        let rows = f
            .iter()
            .zip(g)
            .enumerate()
            .map(|(i, (&f, &g))| {
                total += f;
                GrowthRow { n: i + 1, f, g, big_f: total }
            })
            .collect();
        GrowthTable { rows }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthMethod {
    /// Layer-by-layer enumeration with zero tests.
    Enumerate,
    /// Boundary words from the `σ`/`κ` operators; `f(n) = 2 + Σ_{k<n} g(k)`.
    Operators,
}

pub fn growth_table(
    engine: &mut MonomialEngine,
    n_max: usize,
    method: GrowthMethod,
    byte_cap: usize,
) -> Result<GrowthTable, GrowthError> {
    if n_max == 0 {
        return Err(GrowthError::InvalidArgument("n must be at least 1".into()));
    }
    match method {
        GrowthMethod::Enumerate => {
            let mut f = Vec::with_capacity(n_max);
            let mut g = Vec::with_capacity(n_max);
            let mut layer = vec![Word::empty()];
            for _ in 0..n_max {
                layer = extend_layer(engine, &layer)?;
                check_bytes(&layer, byte_cap)?;
                f.push(layer.len() as u64);
                g.push(boundary_filter(engine, &layer)?.len() as u64);
            }
            Ok(GrowthTable::from_f_and_g(&f, &g))
        }
        GrowthMethod::Operators => Ok(operator_table(n_max)),
    }
}

/// Growth table from boundary counts alone.
pub fn operator_table(n_max: usize) -> GrowthTable {
    let w = boundary_generate(n_max);
    let g: Vec<u64> = (1..=n_max).map(|n| w[n].len() as u64).collect();
    let mut f = Vec::with_capacity(n_max);
    let mut cur = 2u64;
    for n in 1..=n_max {
        f.push(cur);
        cur += g[n - 1];
    }
    GrowthTable::from_f_and_g(&f, &g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Landmark {
    pub n: usize,
    pub length: u64,
    pub f: u64,
    pub expected: u64,
    pub holds: bool,
}

/// `f(a_{n+1} − 2) = 2^{n−2}` for `n` in `n_range`.
pub fn landmarks(n_range: std::ops::RangeInclusive<usize>) -> Vec<Landmark> {
    let max_len = fib_u64(*n_range.end() as u32 + 1) - 2;
    let table = operator_table(max_len as usize);
    n_range
        .map(|n| {
            let length = fib_u64(n as u32 + 1) - 2;
            let f = table.f(length as usize).expect("within table");
            let expected = 1u64 << (n - 2);
            Landmark { n, length, f, expected, holds: f == expected }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AvoidCounts {
    /// `counts[n-1]` = number of nonzero words of length `n` avoiding the factor.
    pub counts: Vec<u64>,
    /// First length with no avoiders; all longer lengths have none either.
    pub l0: Option<usize>,
}

/// Nonzero words with no occurrence of `factor`, counted per length. Both
/// properties pass to suffixes, so layers extend on the left and only the
/// new prefix needs checking.
pub fn avoid_factor_count(
    engine: &mut MonomialEngine,
    factor: &Word,
    n_max: usize,
    byte_cap: usize,
) -> Result<AvoidCounts, GrowthError> {
    if factor.is_empty() {
        return Err(GrowthError::InvalidArgument("factor must be nonempty".into()));
    }
    let mut layer = vec![Word::empty()];
    let mut counts = Vec::with_capacity(n_max);
    let mut l0 = None;
    for n in 1..=n_max {
        let mut next = Vec::new();
        for v in &layer {
            for x in [S, T] {
                let w = v.prepend(x);
                if !w.starts_with(factor) && !engine.is_zero(&w)? {
                    next.push(w);
                }
            }
        }
        check_bytes(&next, byte_cap)?;
        counts.push(next.len() as u64);
        if next.is_empty() && l0.is_none() {
            l0 = Some(n);
        }
        layer = next;
    }
    Ok(AvoidCounts { counts, l0 })
}

/// `c = log 2 / log α`.
pub fn growth_constant() -> f64 {
    let alpha = (1.0 + 5f64.sqrt()) / 2.0;
    2f64.ln() / alpha.ln()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GkEstimate {
    pub c: f64,
    /// `1 + c`, the predicted exponent of `F`.
    pub target: f64,
    /// Least-squares slope of `log F(n)` against `log n` on the window.
    pub slope: f64,
    pub window: (usize, usize),
    /// `(1/8) n^c < f(n) < 2 n^c` for every `3 ≤ n ≤ n_max`.
    pub band_holds: bool,
    pub band_violations: Vec<usize>,
    /// Extremes of `f(n) / n^c` over the band range.
    pub min_ratio: f64,
    pub max_ratio: f64,
}

/// Fits the exponent of `F` over the trailing `window` rows of the table.
pub fn gk_estimate(table: &GrowthTable, window: usize) -> Result<GkEstimate, GrowthError> {
    let n_max = table.rows.len();
    if window < 10 || window > n_max {
        return Err(GrowthError::InvalidArgument(format!("need 10 <= window <= n_max, got window {window}, n_max {n_max}")));
    }
    let c = growth_constant();
    let rows = &table.rows[n_max - window..];
    let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| (r.big_f as f64).ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let mut violations = Vec::new();
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio = 0f64;
    for r in table.rows.iter().filter(|r| r.n >= 3) {
        let nc = (r.n as f64).powf(c);
        let ratio = r.f as f64 / nc;
        min_ratio = min_ratio.min(ratio);
        max_ratio = max_ratio.max(ratio);
        if !(ratio > 0.125 && ratio < 2.0) {
            violations.push(r.n);
        }
    }
    Ok(GkEstimate {
        c,
        target: 1.0 + c,
        slope: sxy / sxx,
        window: (rows[0].n, n_max),
        band_holds: violations.is_empty(),
        band_violations: violations,
        min_ratio,
        max_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::builtin;
    use crate::word::Alphabet;

    #[test]
    fn first_layers() {
        let mut e = MonomialEngine::new(&builtin::r2()).unwrap();
        let layers = nonzero_layers(&mut e, 3, DEFAULT_BYTE_CAP).unwrap();
        let render = |l: &[Word]| l.iter().map(|w| Alphabet::ST.render(w)).collect::<Vec<_>>();
        assert_eq!(render(&layers[1]), ["s", "t"]);
        assert_eq!(render(&layers[2]), ["st", "ts", "tt"]);
        assert!(!layers[3].contains(&Alphabet::ST.parse("ttt").unwrap()));
    }

    #[test]
    fn boundary_seed() {
        let w = boundary_generate(3);
        assert_eq!(w[1], vec![Alphabet::ST.parse("t").unwrap()]);
        assert!(w[2].contains(&Alphabet::ST.parse("ts").unwrap()));
    }

    #[test]
    fn byte_cap_is_enforced() {
        let mut e = MonomialEngine::new(&builtin::r2()).unwrap();
        assert!(matches!(enumerate_nonzero(&mut e, 10, 64), Err(GrowthError::MemoryBudgetExceeded { .. })));
    }
}
