use std::fmt;

use serde::Serialize;

use super::{MonomialEngine, S, T};
use crate::error::MonomialError;
use crate::word::Word;

/// The five shapes of nonzero monomials, by factorization over `{t, st}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MonomialType {
    /// `s` itself.
    PureS,
    /// `t·v(t, st)`
    T,
    /// `st·v(t, st)`
    ST,
    /// `t·v(t, st)·s`
    TS,
    /// `st·v(t, st)·s`
    STS,
}

impl MonomialType {
    /// Positions where the block form may be nonzero.
    pub fn allowed_support(self) -> [[bool; 2]; 2] {
        match self {
            MonomialType::PureS => [[false, false], [true, false]],
            MonomialType::T => [[false, true], [false, true]],
            MonomialType::ST => [[false, false], [false, true]],
            MonomialType::TS => [[true, false], [true, false]],
            MonomialType::STS => [[false, false], [true, false]],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MonomialType::PureS => "s",
            MonomialType::T => "t·v(t,st)",
            MonomialType::ST => "st·v(t,st)",
            MonomialType::TS => "t·v(t,st)·s",
            MonomialType::STS => "st·v(t,st)·s",
        }
    }
}

impl fmt::Display for MonomialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Splits a word into `{t, st}` blocks and an optional trailing `s`.
/// Returns `(starts_with_st, ends_with_s)`.
fn factor_shape(w: &Word) -> Option<(bool, bool)> {
    let n = w.len();
    let mut i = 0;
    let mut first_st = None;
    let mut trailing_s = false;
    while i < n {
        if w.get(i) == T {
            first_st.get_or_insert(false);
            i += 1;
        } else if i + 1 < n && w.get(i + 1) == T {
            first_st.get_or_insert(true);
            i += 2;
        } else if i + 1 == n && i > 0 {
            trailing_s = true;
            i += 1;
        } else {
            return None;
        }
    }
    Some((first_st?, trailing_s))
}

/// Type of a nonzero monomial of R2.
pub fn classify(engine: &mut MonomialEngine, w: &Word) -> Result<MonomialType, MonomialError> {
    if w.is_empty() || engine.is_zero(w)? {
        return Err(MonomialError::ZeroHasNoType);
    }
    if w.len() == 1 && w.get(0) == S {
        return Ok(MonomialType::PureS);
    }
    let (st, s) = factor_shape(w).ok_or_else(|| MonomialError::NotFactorable(engine.render(w)))?;
    Ok(match (st, s) {
        (false, false) => MonomialType::T,
        (true, false) => MonomialType::ST,
        (false, true) => MonomialType::TS,
        (true, true) => MonomialType::STS,
    })
}
