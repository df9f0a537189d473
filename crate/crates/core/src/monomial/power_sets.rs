use serde::Serialize;

use super::annihilator::annihilator_depth;
use super::{MonomialEngine, S, T};
use crate::error::MonomialError;
use crate::word::Word;

/// `M(1)`, `M(2)`, `M(3)` as listed for R2.
pub const REFERENCE_M: [&[&str]; 3] = [
    &["ts", "st", "tts", "tstt", "ttst", "tststt", "ststts", "ttststs"],
    &["stt", "ttsts", "ttstst", "tststtstt", "ststtstts"],
    &["ttststs", "tststtsttstt", "ststtsttstts"],
];

/// `{(tw)(sw)^k, (sw)(tw)^k, (tw)(tsw)^k, (tsw)(stw)^k, (tsw)(t²w)^k}`.
pub fn s_set(w: &Word, k: usize) -> [Word; 5] {
    let tw = w.prepend(T);
    let sw = w.prepend(S);
    let tsw = sw.prepend(T);
    let stw = tw.prepend(S);
    let ttw = tw.prepend(T);
    [
        tw.concat(&sw.pow(k)),
        sw.concat(&tw.pow(k)),
        tw.concat(&tsw.pow(k)),
        tsw.concat(&stw.pow(k)),
        tsw.concat(&ttw.pow(k)),
    ]
}

/// Nonzero elements of `S(w, k)` for `w ∈ {1, t, ts}`, sorted and deduplicated.
pub fn m_set(engine: &mut MonomialEngine, k: usize) -> Result<Vec<Word>, MonomialError> {
    let mut out = Vec::new();
    for w in [Word::empty(), Word::from_letters([T]), Word::from_letters([T, S])] {
        for x in s_set(&w, k) {
            if !engine.is_zero(&x)? {
                out.push(x);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerSetReport {
    /// Computed `M(1..=3)`, rendered.
    pub m: Vec<Vec<String>>,
    /// Each computed set equals the reference one.
    pub m_match: [bool; 3],
    pub m4_zero: bool,
    pub s4_checked_up_to: usize,
    /// Some `w` with a nonzero element of `S(w, 4)`.
    pub s4_counterexample: Option<String>,
    /// Least `i` with the element in `L_i`, per element of `M(3)`.
    pub m3_levels: Vec<(String, Option<usize>)>,
    pub level_bound: usize,
}

impl PowerSetReport {
    pub fn holds(&self) -> bool {
        self.m_match.iter().all(|&b| b)
            && self.m4_zero
            && self.s4_counterexample.is_none()
            && self.m3_levels.iter().all(|(_, l)| l.is_some())
    }
}

pub fn verify_power_sets(engine: &mut MonomialEngine, cap_len: usize, level_bound: usize) -> Result<PowerSetReport, MonomialError> {
    let mut m = Vec::new();
    let mut m_match = [false; 3];
    let mut m3 = Vec::new();
    for k in 1..=3 {
        let computed = m_set(engine, k)?;
        let mut expected: Vec<Word> = REFERENCE_M[k - 1].iter().map(|s| engine.parse(s)).collect::<Result<_, _>>()?;
        expected.sort();
        m_match[k - 1] = computed == expected;
        m.push(computed.iter().map(|w| engine.render(w)).collect());
        if k == 3 {
            m3 = computed;
        }
    }
    let m4_zero = m_set(engine, 4)?.is_empty();
    let mut s4_counterexample = None;
    'outer: for w in Word::all_up_to(cap_len) {
        for x in s_set(&w, 4) {
            if !engine.is_zero(&x)? {
                s4_counterexample = Some(engine.render(&w));
                break 'outer;
            }
        }
    }
    let mut m3_levels = Vec::new();
    for x in &m3 {
        m3_levels.push((engine.render(x), annihilator_depth(engine, x, level_bound)?));
    }
    Ok(PowerSetReport { m, m_match, m4_zero, s4_checked_up_to: cap_len, s4_counterexample, m3_levels, level_bound })
}
