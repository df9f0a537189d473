use serde::Serialize;

use super::{MonomialEngine, S, T};
use crate::error::MonomialError;
use crate::word::Word;

/// Membership of a monomial `u` in the left annihilator series. For a
/// monomial, `u ∈ L_i` iff `u·v = 0` for every word `v` with `|v| = i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnihilatorReport {
    pub level: usize,
    pub member: bool,
    /// Some `v` with `|v| = level` and `u·v ≠ 0`, when not a member.
    pub counterexample: Option<Word>,
    /// Some `v` with `|v| = level − 1` and `u·v ≠ 0`, showing `u ∉ L_{level−1}`.
    /// The empty word when `level = 1` and `u ≠ 0`.
    pub strict_witness: Option<Word>,
}

impl AnnihilatorReport {
    /// `u ∈ L_level \ L_{level−1}`.
    pub fn strict_member(&self) -> bool {
        self.member && self.strict_witness.is_some()
    }
}

/// Suffixes `v` of length `j` with `u·v ≠ 0`, for `j = 0..=depth`.
fn right_extensions(engine: &mut MonomialEngine, u: &Word, depth: usize) -> Result<Vec<Vec<Word>>, MonomialError> {
    let mut layers = Vec::with_capacity(depth + 1);
    let first = if engine.is_zero(u)? { vec![] } else { vec![Word::empty()] };
    layers.push(first);
    for _ in 0..depth {
        let mut next = Vec::new();
        for v in layers.last().expect("nonempty") {
            for x in [S, T] {
                let mut v2 = v.clone();
                v2.push(x);
                if !engine.is_zero(&u.concat(&v2))? {
                    next.push(v2);
                }
            }
        }
        layers.push(next);
    }
    Ok(layers)
}

pub fn annihilator_level(engine: &mut MonomialEngine, u: &Word, level: usize) -> Result<AnnihilatorReport, MonomialError> {
    let layers = right_extensions(engine, u, level)?;
    let counterexample = layers[level].first().cloned();
    let strict_witness = match level {
        0 => None,
        _ => layers[level - 1].first().cloned(),
    };
    Ok(AnnihilatorReport { level, member: counterexample.is_none(), counterexample, strict_witness })
}

/// Least `i ≤ cap` with `u ∈ L_i`; `Some(0)` for a zero word.
pub fn annihilator_depth(engine: &mut MonomialEngine, u: &Word, cap: usize) -> Result<Option<usize>, MonomialError> {
    let layers = right_extensions(engine, u, cap)?;
    Ok(layers.iter().position(Vec::is_empty))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::builtin;

    #[test]
    fn zero_and_first_level() {
        let mut e = MonomialEngine::new(&builtin::r2()).unwrap();
        let ss = e.parse("ss").unwrap();
        assert_eq!(annihilator_depth(&mut e, &ss, 3).unwrap(), Some(0));
        let y1 = e.parse("tststs").unwrap();
        let r = annihilator_level(&mut e, &y1, 1).unwrap();
        assert!(r.strict_member());
        assert_eq!(r.strict_witness, Some(Word::empty()));
    }
}
