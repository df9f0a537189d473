//! Packed words over a two-letter alphabet.
//!
//! Letter `0` and letter `1` are stored one bit each, so a word of length
//! 500 takes eight machine words. Display and parsing go through an
//! [`Alphabet`], which maps the two indices onto generator letters (`s`, `t`
//! for the built-in systems).

use std::cmp::Ordering;
use std::fmt;

use crate::error::WordError;

/// A finite word over letters `{0, 1}`. Unused high bits are always zero, so
/// derived equality and hashing are structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    len: usize,
    limbs: Vec<u64>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_letters<I: IntoIterator<Item = u8>>(letters: I) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// `letter` repeated `n` times.
    pub fn repeat_letter(letter: u8, n: usize) -> Self {
        Self::from_letters(std::iter::repeat_n(letter, n))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        debug_assert!(i < self.len);
        ((self.limbs[i / 64] >> (i % 64)) & 1) as u8
    }

    pub fn first(&self) -> Option<u8> {
        (self.len > 0).then(|| self.get(0))
    }

    pub fn last(&self) -> Option<u8> {
        (self.len > 0).then(|| self.get(self.len - 1))
    }

    #[inline]
    pub fn push(&mut self, letter: u8) {
        debug_assert!(letter < 2);
        if self.len.is_multiple_of(64) {
            self.limbs.push(0);
        }
        if letter == 1 {
            self.limbs[self.len / 64] |= 1 << (self.len % 64);
        }
        self.len += 1;
    }

    pub fn append(&mut self, other: &Word) {
        if self.len.is_multiple_of(64) {
            // aligned: copy limbs directly
            self.limbs.extend_from_slice(&other.limbs);
            self.len += other.len;
            return;
        }
        for i in 0..other.len {
            self.push(other.get(i));
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.append(other);
        w
    }

    /// `letter · self`.
    pub fn prepend(&self, letter: u8) -> Word {
        let mut limbs = Vec::with_capacity((self.len + 1).div_ceil(64));
        let mut carry = letter as u64;
        for &limb in &self.limbs {
            limbs.push((limb << 1) | carry);
            carry = limb >> 63;
        }
        let len = self.len + 1;
        if limbs.len() * 64 < len {
            limbs.push(carry);
        }
        Word { len, limbs }
    }

    /// The factor `self[start..end]`.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        assert!(start <= end && end <= self.len, "factor out of range");
        Word::from_letters((start..end).map(|i| self.get(i)))
    }

    pub fn pow(&self, k: usize) -> Word {
        let mut w = Word::empty();
        for _ in 0..k {
            w.append(self);
        }
        w
    }

    pub fn letters(&self) -> impl ExactSizeIterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Number of occurrences of `letter`.
    pub fn count(&self, letter: u8) -> usize {
        let ones: usize = self.limbs.iter().map(|l| l.count_ones() as usize).sum();
        if letter == 1 {
            ones
        } else {
            self.len - ones
        }
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        prefix.len <= self.len && (0..prefix.len).all(|i| self.get(i) == prefix.get(i))
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        let off = match self.len.checked_sub(suffix.len) {
            Some(o) => o,
            None => return false,
        };
        (0..suffix.len).all(|i| self.get(off + i) == suffix.get(i))
    }

    /// Whether `pattern` occurs as a contiguous factor.
    pub fn contains(&self, pattern: &Word) -> bool {
        if pattern.len > self.len {
            return false;
        }
        (0..=self.len - pattern.len)
            .any(|off| (0..pattern.len).all(|i| self.get(off + i) == pattern.get(i)))
    }

    /// Applies a letter substitution `0 ↦ images[0]`, `1 ↦ images[1]`.
    pub fn substitute(&self, images: &[Word; 2]) -> Word {
        let mut w = Word::empty();
        for l in self.letters() {
            w.append(&images[l as usize]);
        }
        w
    }

    /// All words of length `n` in length-lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        assert!(n < 64, "exhaustive enumeration limited to length < 64");
        (0u64..(1u64 << n)).map(move |code| {
            // most significant letter first so the order is lexicographic
            Word::from_letters((0..n).map(|i| ((code >> (n - 1 - i)) & 1) as u8))
        })
    }

    /// All words of length `1..=max_len` in length-lexicographic order.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = Word> {
        (1..=max_len).flat_map(Word::all_of_length)
    }

    /// Compact `0`/`1` rendering, used by the memo cache file format.
    pub fn to_bits(&self) -> String {
        self.letters().map(|l| if l == 0 { '0' } else { '1' }).collect()
    }

    pub fn from_bits(bits: &str) -> Option<Word> {
        let mut w = Word::empty();
        for c in bits.chars() {
            match c {
                '0' => w.push(0),
                '1' => w.push(1),
                _ => return None,
            }
        }
        Some(w)
    }
}

impl Ord for Word {
    /// Length-lexicographic order with letter 0 before letter 1.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for i in 0..self.len {
                match self.get(i).cmp(&other.get(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", Alphabet::ST.render(self))
    }
}

/// Names for the two letters of a [`Word`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alphabet {
    pub letters: [char; 2],
}

impl Alphabet {
    pub const ST: Alphabet = Alphabet { letters: ['s', 't'] };

    pub fn new(first: char, second: char) -> Self {
        Alphabet { letters: [first, second] }
    }

    pub fn index_of(&self, c: char) -> Option<u8> {
        self.letters.iter().position(|&l| l == c).map(|i| i as u8)
    }

    /// Parses a word such as `"tstts"`. Whitespace is ignored; the empty
    /// string and `"1"` both denote the empty word.
    pub fn parse(&self, text: &str) -> Result<Word, WordError> {
        let trimmed = text.trim();
        if trimmed == "1" {
            return Ok(Word::empty());
        }
        let mut w = Word::empty();
        for (pos, c) in trimmed.chars().enumerate() {
            if c.is_whitespace() {
                continue;
            }
            let l = self.index_of(c).ok_or(WordError::UnknownLetter { letter: c, position: pos })?;
            w.push(l);
        }
        Ok(w)
    }

    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().map(|l| self.letters[l as usize]).collect()
    }

    /// Runs of a letter collapsed into powers, e.g. `tstts` as `tst^2s`.
    pub fn render_compact(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < w.len() {
            let l = w.get(i);
            let mut j = i;
            while j < w.len() && w.get(j) == l {
                j += 1;
            }
            out.push(self.letters[l as usize]);
            if j - i > 1 {
                out.push('^');
                out.push_str(&(j - i).to_string());
            }
            i = j;
        }
        out
    }
}

/// Words serialize in the `s`/`t` letters.
impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&Alphabet::ST.render(self))
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::ST
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Alphabet::ST.parse(s).unwrap()
    }

    #[test]
    fn push_get_and_render() {
        let x = w("tstts");
        assert_eq!(x.len(), 5);
        assert_eq!(x.get(0), 1);
        assert_eq!(x.get(1), 0);
        assert_eq!(Alphabet::ST.render(&x), "tstts");
        assert_eq!(Alphabet::ST.render_compact(&x), "tst^2s");
        assert_eq!(Alphabet::ST.render(&Word::empty()), "1");
    }

    #[test]
    fn prepend_crosses_limb_boundary() {
        let base = Word::repeat_letter(1, 64);
        let p = base.prepend(0);
        assert_eq!(p.len(), 65);
        assert_eq!(p.get(0), 0);
        assert!((1..65).all(|i| p.get(i) == 1));
        assert_eq!(p, Word::from_letters(std::iter::once(0).chain(std::iter::repeat_n(1, 64))));
    }

    #[test]
    fn append_unaligned_matches_letterwise() {
        let a = Word::from_letters((0..70).map(|i| (i % 3 == 0) as u8));
        let b = Word::from_letters((0..90).map(|i| (i % 5 == 1) as u8));
        let joined = a.concat(&b);
        let expected = Word::from_letters(a.letters().chain(b.letters()));
        assert_eq!(joined, expected);
    }

    #[test]
    fn length_lex_order() {
        let mut v = [w("tt"), w("s"), w("st"), w("t"), w("ts")];
        v.sort();
        let shown: Vec<_> = v.iter().map(|x| Alphabet::ST.render(x)).collect();
        assert_eq!(shown, ["s", "t", "st", "ts", "tt"]);
    }

    #[test]
    fn factor_search() {
        let x = w("tsttsttst");
        assert!(x.contains(&w("tts")));
        assert!(!x.contains(&w("ss")));
        assert!(x.starts_with(&w("tst")));
        assert!(x.ends_with(&w("st")));
        assert_eq!(x.factor(2, 5), w("tts"));
        assert_eq!(x.count(1), 6);
    }

    #[test]
    fn substitution() {
        let lambda = [w("t"), w("st")];
        assert_eq!(w("ts").substitute(&lambda), w("stt"));
    }

    #[test]
    fn unknown_letter_is_rejected() {
        assert!(Alphabet::ST.parse("sxt").is_err());
    }

    #[test]
    fn bits_round_trip() {
        let x = w("tsts");
        assert_eq!(Word::from_bits(&x.to_bits()), Some(x));
    }
}
