//! Zero-ness calculus for row-monomial systems, with the structure theory of
//! R2 built on top: monomial types, nilpotency degrees, relators, the left
//! annihilator series and the power sets `S(w, k)`.
//!
//! Letter `0` is the first declared generator (`s` in R2), letter `1` the
//! second (`t`).

mod annihilator;
mod engine;
mod formal;
mod power_sets;
mod relators;
mod types;

pub use annihilator::{annihilator_depth, annihilator_level, AnnihilatorReport};
pub use engine::{BlockForm, EngineStats, MonomialEngine, DEFAULT_MEMO_CAP, DEFAULT_SEARCH_BUDGET};
pub use formal::FormalSum;
pub use power_sets::{m_set, s_set, verify_power_sets, PowerSetReport, REFERENCE_M};
pub use relators::{
    lambda_map, phi_substitution, relator_family, verify_relators, x_sequence, y_sequence, RelatorCheck,
    RelatorReport,
};
pub use types::{classify, MonomialType};

/// Letter index of `s`.
pub const S: u8 = 0;
/// Letter index of `t`.
pub const T: u8 = 1;
