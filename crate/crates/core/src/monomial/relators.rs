use serde::Serialize;

use super::{MonomialEngine, S, T};
use crate::error::MonomialError;
use crate::word::{Alphabet, Word};

/// The endomorphism `s → t, t → st`.
pub fn lambda_map(w: &Word) -> Word {
    w.substitute(&[Word::from_letters([T]), Word::from_letters([S, T])])
}

/// The projection `t → s, st → t` on words that factor over `{t, st}`.
pub fn phi_substitution(w: &Word) -> Result<Word, MonomialError> {
    let mut out = Word::empty();
    let mut i = 0;
    while i < w.len() {
        if w.get(i) == T {
            out.push(S);
            i += 1;
        } else if i + 1 < w.len() && w.get(i + 1) == T {
            out.push(T);
            i += 2;
        } else {
            return Err(MonomialError::NotFactorable(Alphabet::ST.render(w)));
        }
    }
    Ok(out)
}

/// `u_1 = ss`, `u_{2i} = t·λ(u_{2i−1})`, `u_{2i+1} = λ(u_{2i})`.
pub fn relator_family(k: usize) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::with_capacity(k);
    for i in 1..=k {
        let u = if i == 1 {
            Word::repeat_letter(S, 2)
        } else if i % 2 == 0 {
            lambda_map(&out[i - 2]).prepend(T)
        } else {
            lambda_map(&out[i - 2])
        };
        out.push(u);
    }
    out
}

/// `x_1 = ts`, `x_{i+1} = x_i(t, st) = λ(x_i)`.
pub fn x_sequence(k: usize) -> Vec<Word> {
    let mut out = vec![Word::from_letters([T, S])];
    while out.len() < k {
        let next = lambda_map(out.last().expect("nonempty"));
        out.push(next);
    }
    out.truncate(k);
    out
}

/// `y_i = x_i^3`.
pub fn y_sequence(k: usize) -> Vec<Word> {
    x_sequence(k).iter().map(|x| x.pow(3)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelatorCheck {
    pub index: usize,
    pub word: String,
    pub length: usize,
    pub zero: bool,
    /// Every proper contiguous factor is nonzero.
    pub minimal: bool,
    /// A zero proper factor, as `(start, end)`, when not minimal.
    pub zero_factor: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelatorReport {
    pub relators: Vec<RelatorCheck>,
}

impl RelatorReport {
    pub fn all_zero_and_minimal(&self) -> bool {
        self.relators.iter().all(|r| r.zero && r.minimal)
    }
}

/// Checks that `u_1..u_k` are zero and that none has a zero proper factor.
/// Factors are enumerated by start position, longest first; once
/// `w[i..j]` is nonzero, so is every factor inside it, which prunes the
/// shorter ends for that start.
pub fn verify_relators(engine: &mut MonomialEngine, k: usize) -> Result<RelatorReport, MonomialError> {
    let mut relators = Vec::with_capacity(k);
    for (i, u) in relator_family(k).into_iter().enumerate() {
        let zero = engine.is_zero(&u)?;
        let mut zero_factor = None;
        let n = u.len();
        'starts: for start in 0..n {
            for end in (start + 1..=n).rev() {
                if end - start == n {
                    continue;
                }
                if engine.is_zero(&u.factor(start, end))? {
                    zero_factor = Some((start, end));
                    break 'starts;
                }
                // factors [start, e) with e < end sit inside this nonzero one
                break;
            }
        }
        relators.push(RelatorCheck {
            index: i + 1,
            word: engine.render(&u),
            length: n,
            zero,
            minimal: zero_factor.is_none(),
            zero_factor,
        });
    }
    Ok(RelatorReport { relators })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Alphabet::ST.parse(s).unwrap()
    }

    #[test]
    fn first_relators() {
        let u = relator_family(4);
        assert_eq!(u[0], w("ss"));
        assert_eq!(u[1], w("ttt"));
        assert_eq!(u[2], w("ststst"));
        assert_eq!(u[3], w("ttsttsttst"));
    }

    #[test]
    fn relator_lengths() {
        let lens: Vec<usize> = relator_family(12).iter().map(Word::len).collect();
        assert_eq!(lens, vec![2, 3, 6, 10, 17, 28, 46, 75, 122, 198, 321, 520]);
    }

    #[test]
    fn phi_undoes_lambda() {
        for x in Word::all_up_to(8) {
            assert_eq!(phi_substitution(&lambda_map(&x)).unwrap(), x);
        }
        assert!(phi_substitution(&w("ss")).is_err());
    }

    #[test]
    fn x_sequence_start() {
        let x = x_sequence(3);
        assert_eq!(x, vec![w("ts"), w("stt"), w("tstst")]);
    }
}
