//! Noncommutative polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A monomial in generator letters; the empty monomial is the identity.
/// Ordered length-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub Vec<char>);

impl Mono {
    pub fn identity() -> Self {
        Mono(Vec::new())
    }

    pub fn letter(c: char) -> Self {
        Mono(vec![c])
    }

    pub fn from_str_letters(s: &str) -> Self {
        Mono(s.chars().filter(|c| !c.is_whitespace()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Mono) -> Mono {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Mono(v)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.0.iter().collect::<String>())
        }
    }
}

/// Finite linear combination of monomials. Zero coefficients are never
/// stored, so the empty map is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NcPolynomial {
    terms: BTreeMap<Mono, BigRational>,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Mono::identity())
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn letter(c: char) -> Self {
        Self::term(BigRational::one(), Mono::letter(c))
    }

    /// The monomial spelled by `letters`, e.g. `word("tst")`.
    pub fn word(letters: &str) -> Self {
        Self::term(BigRational::one(), Mono::from_str_letters(letters))
    }

    pub fn term(c: BigRational, m: Mono) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in length-lexicographic order of their monomials.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Mono) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The single term, if the polynomial is one nonzero multiple of a monomial.
    pub fn as_single_term(&self) -> Option<(&Mono, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The value if the polynomial is a scalar multiple of the identity (or zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Mono::identity()).cloned(),
            _ => None,
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = char> + '_ {
        self.terms.keys().flat_map(|m| m.0.iter().copied())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NcPolynomial { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Maximum monomial length, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Mono::len).max()
    }
}

impl Add for &NcPolynomial {
    type Output = NcPolynomial;
    fn add(self, rhs: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NcPolynomial {
    type Output = NcPolynomial;
    fn sub(self, rhs: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &NcPolynomial {
    type Output = NcPolynomial;
    fn mul(self, rhs: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.concat(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &NcPolynomial {
    type Output = NcPolynomial;
    fn neg(self) -> NcPolynomial {
        NcPolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for NcPolynomial {
            type Output = NcPolynomial;
            fn $method(self, rhs: NcPolynomial) -> NcPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for NcPolynomial {
    /// Normalized form accepted by the system-definition parser, e.g.
    /// `2*s*t - 1/2`. Terms appear in length-lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let letters: Vec<String> = m.0.iter().map(|ch| ch.to_string()).collect();
            if m.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", letters.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), letters.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPolynomial({self})")
    }
}
