use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::MonomialEngine;
use crate::error::MonomialError;
use crate::poly::NcPolynomial;
use crate::word::{Alphabet, Word};

/// Integer combination of monomials, such as `s + t²`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<Word, BigInt>,
}

impl FormalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> Self {
        let mut s = Self::zero();
        for w in words {
            s.add_term(w, BigInt::one());
        }
        s
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        let e = self.terms.entry(w).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    /// Converts a polynomial with integer coefficients over the engine's
    /// two letters.
    pub fn from_polynomial(alphabet: &Alphabet, p: &NcPolynomial) -> Result<Self, MonomialError> {
        let mut sum = Self::zero();
        for (mono, c) in p.terms() {
            if !c.is_integer() {
                return Err(MonomialError::NotMonomialSystem(format!("coefficient {c} is not an integer")));
            }
            let letters: String = mono.0.iter().collect();
            sum.add_term(alphabet.parse(&letters)?, c.to_integer());
        }
        Ok(sum)
    }

    /// Product with zero words dropped as they appear.
    pub fn mul(&self, other: &FormalSum, engine: &mut MonomialEngine) -> Result<FormalSum, MonomialError> {
        let mut out = FormalSum::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let w = a.concat(b);
                if !engine.is_zero(&w)? {
                    out.add_term(w, ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Drops terms whose word is zero.
    pub fn reduce(&self, engine: &mut MonomialEngine) -> Result<FormalSum, MonomialError> {
        let mut out = FormalSum::zero();
        for (w, c) in &self.terms {
            if !engine.is_zero(w)? {
                out.add_term(w.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Least `k ≤ cap` with `x^k = 0`. Nonzero monomials are linearly
    /// independent, so a power vanishes iff every surviving term cancels or
    /// is a zero word.
    pub fn nil_degree(&self, engine: &mut MonomialEngine, cap: usize) -> Result<Option<usize>, MonomialError> {
        let base = self.reduce(engine)?;
        let mut power = base.clone();
        for k in 1..=cap {
            if power.is_zero() {
                return Ok(Some(k));
            }
            if k < cap {
                power = power.mul(&base, engine)?;
            }
        }
        Ok(None)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if !abs.is_one() {
                out.push_str(&abs.to_string());
            }
            out.push_str(&alphabet.render(w));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::builtin;

    #[test]
    fn parse_and_render() {
        let a = Alphabet::ST;
        let p = crate::dsl::parse_polynomial("s + t^2 - 2ts").unwrap();
        let x = FormalSum::from_polynomial(&a, &p).unwrap();
        // terms print in length-lexicographic order
        assert_eq!(x.len(), 3);
        assert_eq!(x.render(&a), "s - 2ts + tt");
    }

    #[test]
    fn cancellation_is_tracked() {
        let a = Alphabet::ST;
        let mut e = MonomialEngine::new(&builtin::r2()).unwrap();
        let x = FormalSum::from_words([a.parse("t").unwrap()]);
        let x = x.mul(&FormalSum::zero(), &mut e).unwrap();
        assert!(x.is_zero());
        assert_eq!(x.nil_degree(&mut e, 4).unwrap(), Some(1));
    }
}
