//! Recursion systems: finitely many generators over the `m`-ary tree, each
//! given by a root scalar and an `m × m` block of polynomials in the
//! generators themselves.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::RecursionError;
use crate::poly::NcPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseRing {
    Integers,
    Rationals,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorDef {
    pub name: char,
    /// Value on the root (the empty tree word).
    pub phi: BigRational,
    /// `blocks[y][y']` is the state reached from letter `y` to letter `y'`.
    pub blocks: Vec<Vec<NcPolynomial>>,
}

impl GeneratorDef {
    pub fn new(name: char, phi: BigRational, blocks: Vec<Vec<NcPolynomial>>) -> Self {
        GeneratorDef { name, phi, blocks }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionSystem {
    name: String,
    arity: usize,
    generators: Vec<GeneratorDef>,
    base_ring: BaseRing,
}

impl RecursionSystem {
    /// Validates names, block shapes and letter usage.
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        generators: Vec<GeneratorDef>,
    ) -> Result<Self, RecursionError> {
        if arity < 2 {
            return Err(RecursionError::InvalidArgument(format!("arity must be at least 2, got {arity}")));
        }
        if generators.is_empty() {
            return Err(RecursionError::InvalidArgument("a system needs at least one generator".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(RecursionError::InvalidArgument(format!("generator '{}' declared twice", g.name)));
            }
            if g.blocks.len() != arity || g.blocks.iter().any(|row| row.len() != arity) {
                return Err(RecursionError::InvalidArgument(format!(
                    "generator '{}' must have an {arity}x{arity} block",
                    g.name
                )));
            }
        }
        for g in &generators {
            for entry in g.blocks.iter().flatten() {
                if let Some(c) = entry.letters().find(|c| !generators.iter().any(|h| h.name == *c)) {
                    return Err(RecursionError::UnknownGenerator(c));
                }
            }
        }
        let integral = generators
            .iter()
            .all(|g| g.phi.is_integer() && g.blocks.iter().flatten().all(NcPolynomial::is_integral));
        let base_ring = if integral { BaseRing::Integers } else { BaseRing::Rationals };
        Ok(RecursionSystem { name: name.into(), arity, generators, base_ring })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[GeneratorDef] {
        &self.generators
    }

    pub fn base_ring(&self) -> BaseRing {
        self.base_ring
    }

    pub fn generator_index(&self, c: char) -> Option<usize> {
        self.generators.iter().position(|g| g.name == c)
    }

    pub fn generator(&self, c: char) -> Option<&GeneratorDef> {
        self.generators.iter().find(|g| g.name == c)
    }

    /// Rejects polynomials mentioning undeclared letters.
    pub fn check_polynomial(&self, p: &NcPolynomial) -> Result<(), RecursionError> {
        match p.letters().find(|c| self.generator_index(*c).is_none()) {
            Some(c) => Err(RecursionError::UnknownGenerator(c)),
            None => Ok(()),
        }
    }

    /// Built-in systems by name (case-insensitive): `R1`, `R2`, `SIGMA`, `BR`.
    pub fn builtin(name: &str) -> Option<RecursionSystem> {
        match name.to_ascii_uppercase().as_str() {
            "R1" => Some(builtin::r1()),
            "R2" => Some(builtin::r2()),
            "SIGMA" => Some(builtin::sigma()),
            "BR" => Some(builtin::bartholdi_reznykov()),
            _ => None,
        }
    }

    pub const BUILTIN_NAMES: [&'static str; 4] = ["R1", "R2", "SIGMA", "BR"];
}

pub mod builtin {
    //! The four shipped systems, built directly rather than parsed so the
    //! parser can be checked against them.

    use super::*;

    fn int(c: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(c))
    }

    fn scaled(c: i64, letters: &str) -> NcPolynomial {
        NcPolynomial::word(letters).scale(&int(c))
    }

    fn zero() -> NcPolynomial {
        NcPolynomial::zero()
    }

    fn one() -> NcPolynomial {
        NcPolynomial::one()
    }

    /// `s = (1 0; 0 2s)`, `t = (0 2s; 0 2t)` with `s_φ = 1`, `t_φ = 0`.
    /// Generates the free ring on two generators.
    pub fn r1() -> RecursionSystem {
        RecursionSystem::new(
            "R1",
            2,
            vec![
                GeneratorDef::new('s', BigRational::one(), vec![vec![one(), zero()], vec![zero(), scaled(2, "s")]]),
                GeneratorDef::new('t', BigRational::zero(), vec![vec![zero(), scaled(2, "s")], vec![zero(), scaled(2, "t")]]),
            ],
        )
        .expect("R1 is well formed")
    }

    /// `s = (0 0; 1 0)`, `t = (0 t; 0 s)` with zero root values: the
    /// monomial ring whose monomial semigroup is nil of degree 5.
    pub fn r2() -> RecursionSystem {
        RecursionSystem::new(
            "R2",
            2,
            vec![
                GeneratorDef::new('s', BigRational::zero(), vec![vec![zero(), zero()], vec![one(), zero()]]),
                GeneratorDef::new(
                    't',
                    BigRational::zero(),
                    vec![vec![zero(), NcPolynomial::letter('t')], vec![zero(), NcPolynomial::letter('s')]],
                ),
            ],
        )
        .expect("R2 is well formed")
    }

    /// The binary tree automorphism swapping the two subtrees at the root.
    pub fn sigma() -> RecursionSystem {
        RecursionSystem::new(
            "SIGMA",
            2,
            vec![GeneratorDef::new('σ', BigRational::one(), vec![vec![zero(), one()], vec![one(), zero()]])],
        )
        .expect("SIGMA is well formed")
    }

    /// `s = (0 1; 1 0)`, `t = (s 0; t 0)` with `s_φ = t_φ = 1`.
    pub fn bartholdi_reznykov() -> RecursionSystem {
        RecursionSystem::new(
            "BR",
            2,
            vec![
                GeneratorDef::new('s', BigRational::one(), vec![vec![zero(), one()], vec![one(), zero()]]),
                GeneratorDef::new(
                    't',
                    BigRational::one(),
                    vec![vec![NcPolynomial::letter('s'), zero()], vec![NcPolynomial::letter('t'), zero()]],
                ),
            ],
        )
        .expect("BR is well formed")
    }
}
