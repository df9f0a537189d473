//! Exact computation with functionally recursive matrices over tree-indexed
//! vector spaces.
//!
//! A [`RecursionSystem`] defines each generator by a root scalar and an
//! `m × m` block of polynomials in the generators. From that data this crate
//! expands exact level matrices, decides zero-ness of monomials in
//! row-monomial systems, enumerates nonzero monomials to measure growth, and
//! certifies linear independence of words in free systems.
//!
//! ```
//! use recurse_ring::growth::{growth_table, GrowthMethod, DEFAULT_BYTE_CAP};
//! use recurse_ring::monomial::MonomialEngine;
//! use recurse_ring::{Alphabet, RecursionSystem};
//!
//! let r2 = RecursionSystem::builtin("R2").unwrap();
//! let mut engine = MonomialEngine::new(&r2).unwrap();
//! let w = Alphabet::ST.parse("tstts").unwrap();
//! assert_eq!(engine.nil_degree(&w, 16).unwrap(), Some(5));
//!
//! let table = growth_table(&mut engine, 60, GrowthMethod::Enumerate, DEFAULT_BYTE_CAP).unwrap();
//! assert_eq!(table.f(60), Some(146));
//! ```

pub mod dsl;
pub mod error;
pub mod fibonacci;
pub mod freeness;
pub mod growth;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod rank;
mod serde_big;
pub mod recursion;
pub mod system;
pub mod word;

pub use dsl::{parse_polynomial, parse_system, serialize_system};
pub use error::{DslError, Error, FibError, GrowthError, MonomialError, RecursionError, WordError};
pub use matrix::LevelMatrix;
pub use poly::{Mono, NcPolynomial};
pub use recursion::{Expander, IdentityVerdict, LexBlockForm, StateSet};
pub use system::{BaseRing, GeneratorDef, RecursionSystem};
pub use word::{Alphabet, Word};
