use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recurse_ring::fibonacci::{
    check_delta_lemma, check_fib_facts, delta, kappa_orbit_holds, length_formula, partition_from_delta,
    verify_range_counts, ZetaForm,
};
use recurse_ring::freeness::{escalate, independence_rank, transcendence_check, Verdict};
use recurse_ring::growth::{avoid_factor_count, gk_estimate, growth_table, landmarks, operator_table, GrowthMethod};
use recurse_ring::monomial::{
    annihilator_depth, annihilator_level, classify, verify_power_sets, verify_relators, FormalSum, MonomialEngine,
};
use recurse_ring::{
    parse_polynomial, parse_system, serialize_system, Alphabet, Expander, IdentityVerdict, NcPolynomial, RecursionSystem,
    Word,
};
use serde_json::{json, Map, Value};

use crate::cache;
use crate::cli::{Command, FibCommand, GlobalOpts, Method};
use crate::output::Outcome;

/// Largest level matrix printed in full.
const PRINT_DIM: usize = 64;

pub fn load_system(spec: &str) -> Result<RecursionSystem> {
    if let Some(sys) = RecursionSystem::builtin(spec) {
        return Ok(sys);
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("no built-in system or readable file named {spec:?}"))?;
    parse_system(&text).with_context(|| spec.to_string())
}

/// Whether the command reads `--system` at all.
pub fn uses_system(cmd: &Command) -> bool {
    !matches!(
        cmd,
        Command::Parse { .. }
            | Command::Landmarks { .. }
            | Command::Gk { .. }
            | Command::Fib(_)
            | Command::Freeness { .. }
            | Command::Transcendence { .. }
    ) && !matches!(cmd, Command::Growth { method: Method::Operators, .. })
}

pub fn parameters(cmd: &Command) -> Map<String, Value> {
    let v = match cmd {
        Command::Parse { file } => json!({ "file": file.display().to_string() }),
        Command::Level { poly } => json!({ "poly": poly }),
        Command::Identity { lhs, rhs } => json!({ "lhs": lhs, "rhs": rhs }),
        Command::States { generator } => json!({ "generator": generator.to_string() }),
        Command::Zero { words, nil_cap } => json!({ "words": words, "nil_cap": nil_cap }),
        Command::Nil { poly, cap } => json!({ "poly": poly, "cap": cap }),
        Command::Relators { count } => json!({ "count": count }),
        Command::Annihilator { word, level, depth_cap } => json!({ "word": word, "level": level, "depth_cap": depth_cap }),
        Command::PowerSets { cap_len, level_bound } => json!({ "cap_len": cap_len, "level_bound": level_bound }),
        Command::Growth { n, method } => json!({ "n": n, "method": method_name(*method) }),
        Command::Landmarks { from, to } => json!({ "from": from, "to": to }),
        Command::Avoid { factor, n } => json!({ "factor": factor, "n": n }),
        Command::Gk { n, window } => json!({ "n": n, "window": window }),
        Command::Fib(f) => match f {
            FibCommand::Facts { lo, hi } => json!({ "fib": "facts", "lo": lo, "hi": hi }),
            FibCommand::Orbit { j } => json!({ "fib": "orbit", "j": j }),
            FibCommand::Delta { partition } => json!({ "fib": "delta", "partition": partition }),
            FibCommand::Partition { n, delta } => json!({ "fib": "partition", "n": n, "delta": delta }),
            FibCommand::Length { form, partition } => json!({ "fib": "length", "form": form, "partition": partition }),
            FibCommand::Ranges { n } => json!({ "fib": "ranges", "n": n }),
            FibCommand::Lemma { n } => json!({ "fib": "lemma", "n": n }),
        },
        Command::Freeness { max_len, escalate } => json!({ "L": max_len, "escalate": escalate }),
        Command::Transcendence { d } => json!({ "d": d }),
        Command::Crosscheck { samples, max_len } => json!({ "samples": samples, "max_len": max_len }),
    };
    match v {
        Value::Object(m) => m,
        _ => unreachable!("parameters are objects"),
    }
}

pub fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Parse { .. } => "parse",
        Command::Level { .. } => "level",
        Command::Identity { .. } => "identity",
        Command::States { .. } => "states",
        Command::Zero { .. } => "zero",
        Command::Nil { .. } => "nil",
        Command::Relators { .. } => "relators",
        Command::Annihilator { .. } => "annihilator",
        Command::PowerSets { .. } => "power-sets",
        Command::Growth { .. } => "growth",
        Command::Landmarks { .. } => "landmarks",
        Command::Avoid { .. } => "avoid",
        Command::Gk { .. } => "gk",
        Command::Fib(_) => "fib",
        Command::Freeness { .. } => "freeness",
        Command::Transcendence { .. } => "transcendence",
        Command::Crosscheck { .. } => "crosscheck",
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Enumerate => "enumerate",
        Method::Operators => "operators",
    }
}

fn is_r2(sys: &RecursionSystem) -> bool {
    let r2 = RecursionSystem::builtin("R2").expect("built-in");
    sys.arity() == r2.arity() && sys.generators() == r2.generators()
}

fn require_r2(sys: &RecursionSystem, what: &str) -> Result<()> {
    if !is_r2(sys) {
        bail!("{what} is specific to the system R2; got {}", sys.name());
    }
    Ok(())
}

fn poly(sys: &RecursionSystem, text: &str) -> Result<NcPolynomial> {
    let p = parse_polynomial(text).with_context(|| format!("polynomial {text:?}"))?;
    sys.check_polynomial(&p)?;
    Ok(p)
}

/// Plain letters (`tstts`) or any monomial expression (`tst^2s`, `(tst)^3`).
fn word(alphabet: &Alphabet, text: &str) -> Result<Word> {
    if let Ok(w) = alphabet.parse(text) {
        return Ok(w);
    }
    let p = parse_polynomial(text).with_context(|| format!("word {text:?}"))?;
    let (mono, c) = p.as_single_term().ok_or_else(|| anyhow!("{text:?} is not a single monomial"))?;
    if *c != num_rational::BigRational::from_integer(1.into()) {
        bail!("{text:?} has a coefficient; expected a bare monomial");
    }
    mono.0
        .iter()
        .map(|&ch| alphabet.index_of(ch).ok_or_else(|| anyhow!("unknown letter '{ch}' in {text:?}")))
        .collect::<Result<Vec<u8>>>()
        .map(Word::from_letters)
}

struct EngineSession<'a> {
    sys: &'a RecursionSystem,
    engine: MonomialEngine,
}

impl<'a> EngineSession<'a> {
    fn open(sys: &'a RecursionSystem, opts: &GlobalOpts) -> Result<Self> {
        let mut engine = MonomialEngine::with_caps(sys, opts.cap_memos, opts.cap_states)?;
        cache::load(&mut engine, sys);
        Ok(EngineSession { sys, engine })
    }

    fn close(self) -> Result<()> {
        cache::save(&self.engine, self.sys).context("writing memo cache")
    }
}

pub fn run(cmd: &Command, opts: &GlobalOpts, sys: Option<&RecursionSystem>) -> Result<Outcome> {
    let need = || sys.ok_or_else(|| anyhow!("internal: system not loaded"));
    match cmd {
        Command::Parse { file } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let parsed = parse_system(&text).with_context(|| file.display().to_string())?;
            let normalized = serialize_system(&parsed);
            let results = json!({ "name": parsed.name(), "arity": parsed.arity(), "normalized": normalized });
            Ok(Outcome::new(normalized, results, true))
        }
        Command::Level { poly: text } => level(need()?, opts, text),
        Command::Identity { lhs, rhs } => identity(need()?, opts, lhs, rhs),
        Command::States { generator } => {
            let sys = need()?;
            let ss = Expander::new(sys).state_set(*generator, opts.cap_states.min(1 << 16))?;
            let states: Vec<String> = ss.states.iter().map(|p| p.to_string()).collect();
            let mut text = match ss.exact_count {
                Some(k) => format!("{k} states, span rank {}\n", ss.span_rank),
                None => format!("more than {} states (cap reached), span rank of those found {}\n", states.len(), ss.span_rank),
            };
            for s in &states {
                let _ = writeln!(text, "  {s}");
            }
            let results = json!({ "finite": ss.exact_count.is_some(), "count": ss.exact_count, "span_rank": ss.span_rank, "states": states });
            Ok(Outcome::new(text.trim_end().to_string(), results, true))
        }
        Command::Zero { words, nil_cap } => zero(need()?, opts, words, *nil_cap),
        Command::Nil { poly: text, cap } => {
            let sys = need()?;
            let mut s = EngineSession::open(sys, opts)?;
            let p = poly(sys, text)?;
            let sum = FormalSum::from_polynomial(s.engine.alphabet(), &p)?;
            let d = sum.nil_degree(&mut s.engine, *cap)?;
            s.close()?;
            let text = match d {
                Some(k) => format!("nilpotency degree {k}"),
                None => format!("not nilpotent up to power {cap}"),
            };
            Ok(Outcome::new(text, json!({ "degree": d, "cap": cap }), true))
        }
        Command::Relators { count } => {
            let sys = need()?;
            require_r2(sys, "the relator family")?;
            let mut s = EngineSession::open(sys, opts)?;
            let report = verify_relators(&mut s.engine, *count)?;
            s.close()?;
            let mut text = String::new();
            for r in &report.relators {
                let _ = writeln!(
                    text,
                    "u_{:<2} length {:>4}  {}  {}",
                    r.index,
                    r.length,
                    if r.zero { "zero" } else { "NONZERO" },
                    if r.minimal { "minimal".to_string() } else { format!("zero factor at {:?}", r.zero_factor) }
                );
            }
            let ok = report.all_zero_and_minimal();
            let _ = write!(text, "{}", if ok { "all zero and minimal" } else { "FAILED" });
            Ok(Outcome::new(text, &report, ok))
        }
        Command::Annihilator { word: text, level, depth_cap } => {
            let sys = need()?;
            let mut s = EngineSession::open(sys, opts)?;
            let u = word(s.engine.alphabet(), text)?;
            let depth = annihilator_depth(&mut s.engine, &u, *depth_cap)?;
            let mut out = match depth {
                Some(d) => format!("least level containing {text}: L_{d}\n"),
                None => format!("{text} is in no L_i with i <= {depth_cap}\n"),
            };
            let mut verdict = true;
            let mut report = Value::Null;
            if let Some(i) = level {
                let r = annihilator_level(&mut s.engine, &u, *i)?;
                verdict = r.strict_member();
                let _ = write!(out, "in L_{i}: {}; strictly (not in L_{}): {}", r.member, i.saturating_sub(1), verdict);
                if let Some(c) = &r.counterexample {
                    let _ = write!(out, "\nwitness of non-membership: {text}·{} != 0", s.engine.render(c));
                }
                report = serde_json::to_value(&r)?;
            }
            s.close()?;
            let results = json!({ "least_level": depth, "depth_cap": depth_cap, "level_check": report });
            Ok(Outcome::new(out.trim_end().to_string(), results, verdict))
        }
        Command::PowerSets { cap_len, level_bound } => {
            let sys = need()?;
            require_r2(sys, "the power sets")?;
            let mut s = EngineSession::open(sys, opts)?;
            let r = verify_power_sets(&mut s.engine, *cap_len, *level_bound)?;
            s.close()?;
            let mut text = String::new();
            for (k, m) in r.m.iter().enumerate() {
                let _ = writeln!(text, "M({}) = {{{}}}  matches reference: {}", k + 1, m.join(", "), r.m_match[k]);
            }
            let _ = writeln!(text, "M(4) = {{0}}: {}", r.m4_zero);
            let _ = writeln!(text, "S(w, 4) = {{0}} for |w| <= {}: {}", r.s4_checked_up_to, r.s4_counterexample.is_none());
            for (x, l) in &r.m3_levels {
                let _ = writeln!(text, "  {x} in L_{}", l.map_or("?".to_string(), |l| l.to_string()));
            }
            Ok(Outcome::new(text.trim_end().to_string(), &r, r.holds()))
        }
        Command::Growth { n, method } => growth(sys, opts, *n, *method),
        Command::Landmarks { from, to } => {
            if *from < 2 || from > to || *to > 40 {
                bail!("need 2 <= from <= to <= 40");
            }
            let marks = landmarks(*from..=*to);
            let mut text = String::new();
            for m in &marks {
                let _ = writeln!(text, "n = {:>2}  f({}) = {}  expected {}  {}", m.n, m.length, m.f, m.expected, if m.holds { "ok" } else { "MISMATCH" });
            }
            let ok = marks.iter().all(|m| m.holds);
            Ok(Outcome::new(text.trim_end().to_string(), &marks, ok))
        }
        Command::Avoid { factor, n } => {
            let sys = need()?;
            let mut s = EngineSession::open(sys, opts)?;
            let f = word(s.engine.alphabet(), factor)?;
            let r = avoid_factor_count(&mut s.engine, &f, *n, opts.cap_bytes)?;
            s.close()?;
            let mut text = format!("counts by length 1..{n}: {:?}\n", r.counts);
            let _ = write!(
                text,
                "{}",
                match r.l0 {
                    Some(l) => format!("no nonzero avoiders from length {l} on"),
                    None => format!("avoiders persist up to length {n}"),
                }
            );
            let ok = r.l0.is_some();
            Ok(Outcome::new(text, &r, ok))
        }
        Command::Gk { n, window } => {
            let table = operator_table(*n);
            let est = gk_estimate(&table, *window)?;
            let text = format!(
                "c = {:.6}, target exponent 1 + c = {:.6}\nfitted slope of log F on [{}, {}]: {:.6}\nband 1/8 < f(n)/n^c < 2 for 3 <= n <= {n}: {} (ratio range {:.4}..{:.4})",
                est.c, est.target, est.window.0, est.window.1, est.slope, est.band_holds, est.min_ratio, est.max_ratio
            );
            let ok = est.band_holds;
            Ok(Outcome::new(text, &est, ok))
        }
        Command::Fib(f) => fib(f),
        Command::Freeness { max_len, escalate: cap } => {
            let reports = match cap {
                Some(cap) => escalate(*max_len, *cap)?,
                None => vec![independence_rank(*max_len, opts.levels.unwrap_or(max_len + 2))?],
            };
            let mut text = String::new();
            for r in &reports {
                let _ = writeln!(
                    text,
                    "L = {}, n = {}: rank {} of {} words, {} coefficient bits: {}",
                    r.max_len,
                    r.n,
                    r.rank,
                    r.word_count,
                    r.max_coefficient_bits,
                    verdict_text(r.verdict)
                );
            }
            let ok = reports.last().is_some_and(|r| r.verdict == Verdict::FreeAtScale);
            let results = if cap.is_some() { serde_json::to_value(&reports)? } else { serde_json::to_value(&reports[0])? };
            Ok(Outcome { text: text.trim_end().to_string(), results, verdict: ok, csv: None })
        }
        Command::Transcendence { d } => {
            let r = transcendence_check(*d, opts.levels.unwrap_or(d + 1))?;
            let text = format!("1, s, .., s^{} at n = {}: rank {} of {}: {}", r.d, r.n, r.rank, r.count, verdict_text(r.verdict));
            let ok = r.verdict == Verdict::FreeAtScale;
            Ok(Outcome::new(text, &r, ok))
        }
        Command::Crosscheck { samples, max_len } => crosscheck(need()?, opts, *samples, *max_len),
    }
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::FreeAtScale => "free at this scale",
        Verdict::LevelInsufficient => "level insufficient (inconclusive)",
    }
}

fn level(sys: &RecursionSystem, opts: &GlobalOpts, text: &str) -> Result<Outcome> {
    let p = poly(sys, text)?;
    let n = opts.levels.unwrap_or(2);
    let m = Expander::new(sys).level_matrix(&p, n)?;
    let rank = m.rank();
    let mut out = format!("level {n}, dimension {}, {} nonzero entries, rank {rank}\n", m.dim(), m.nnz());
    let rows: Option<Vec<Vec<String>>> = (m.dim() <= PRINT_DIM)
        .then(|| m.to_dense().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect());
    if rows.is_some() {
        out.push_str(&m.to_string());
    }
    let results = json!({ "level": n, "dim": m.dim(), "nnz": m.nnz(), "rank": rank, "rows": rows });
    Ok(Outcome::new(out.trim_end().to_string(), results, true))
}

fn identity(sys: &RecursionSystem, opts: &GlobalOpts, lhs: &str, rhs: &str) -> Result<Outcome> {
    let (l, r) = (poly(sys, lhs)?, poly(sys, rhs)?);
    let n = opts.levels.unwrap_or(6);
    let v = Expander::new(sys).check_identity(&l, &r, n)?;
    let results = match &v {
        IdentityVerdict::HoldsToLevel(k) => json!({ "holds": true, "levels_checked": k }),
        IdentityVerdict::Fails { level, row, col, lhs, rhs } => json!({
            "holds": false,
            "level": level,
            "row": row,
            "col": col,
            "lhs": lhs.to_string(),
            "rhs": rhs.to_string(),
        }),
    };
    Ok(Outcome::new(format!("{lhs} = {rhs}: {v}"), results, v.holds()))
}

fn zero(sys: &RecursionSystem, opts: &GlobalOpts, words: &[String], nil_cap: usize) -> Result<Outcome> {
    let mut s = EngineSession::open(sys, opts)?;
    let mut text = String::new();
    let mut results = Vec::new();
    for raw in words {
        let w = word(s.engine.alphabet(), raw)?;
        let is_zero = s.engine.is_zero(&w)?;
        let rendered = s.engine.render(&w);
        if is_zero {
            let _ = writeln!(text, "{rendered}: zero");
            results.push(json!({ "word": rendered, "zero": true }));
            continue;
        }
        let bf = s.engine.reduced_block_form(&w)?.render(s.engine.alphabet());
        let ty = if is_r2(sys) && !w.is_empty() { Some(classify(&mut s.engine, &w)?.label()) } else { None };
        let degree = if w.is_empty() { None } else { s.engine.nil_degree(&w, nil_cap)? };
        let _ = writeln!(
            text,
            "{rendered}: nonzero, blocks {bf}{}, nilpotency degree {}",
            ty.map(|t| format!(", type {t}")).unwrap_or_default(),
            degree.map_or(format!("> {nil_cap}"), |d| d.to_string())
        );
        results.push(json!({ "word": rendered, "zero": false, "blocks": bf, "type": ty, "nil_degree": degree }));
    }
    s.close()?;
    Ok(Outcome::new(text.trim_end().to_string(), results, true))
}

fn growth(sys: Option<&RecursionSystem>, opts: &GlobalOpts, n: usize, method: Method) -> Result<Outcome> {
    let (table, compare) = match method {
        Method::Operators => (operator_table(n.max(1)), true),
        Method::Enumerate => {
            let sys = sys.ok_or_else(|| anyhow!("internal: system not loaded"))?;
            let mut s = EngineSession::open(sys, opts)?;
            let t = growth_table(&mut s.engine, n, GrowthMethod::Enumerate, opts.cap_bytes)?;
            s.close()?;
            (t, is_r2(sys))
        }
    };
    if n == 0 {
        bail!("n must be at least 1");
    }
    let mut text = format!("{:>5} {:>12} {:>10} {:>14}\n", "n", "f", "g", "F");
    for r in &table.rows {
        let _ = writeln!(text, "{:>5} {:>12} {:>10} {:>14}", r.n, r.f, r.g, r.big_f);
    }
    let mismatches = if compare { table.reference_mismatches() } else { Vec::new() };
    if compare {
        let upto = n.min(recurse_ring::growth::REFERENCE_F.len());
        if mismatches.is_empty() {
            let _ = write!(text, "f(1..={upto}) matches the reference values");
        } else {
            let _ = write!(text, "MISMATCH against the reference values at n = {mismatches:?}");
        }
    }
    let mut wtr = csv::Writer::from_writer(Vec::new());
    for r in &table.rows {
        wtr.serialize(r)?;
    }
    let csv = wtr.into_inner().map_err(|e| anyhow!("csv: {e}"))?;
    let results = json!({ "rows": table.rows, "reference_checked": compare, "reference_mismatches": mismatches });
    Ok(Outcome { text: text.trim_end().to_string(), results, verdict: mismatches.is_empty(), csv: Some(csv) })
}

fn fib(cmd: &FibCommand) -> Result<Outcome> {
    match cmd {
        FibCommand::Facts { lo, hi } => {
            if lo > hi {
                bail!("need lo <= hi");
            }
            let f = check_fib_facts(*lo, *hi);
            let text = format!(
                "on [{lo}, {hi}]: prefix sums {}, odd-index sums {}, product rule {}",
                f.prefix_sums, f.odd_sums, f.product_rule
            );
            Ok(Outcome::new(text, &f, f.all_hold()))
        }
        FibCommand::Orbit { j } => {
            let failing: Vec<usize> = (0..=*j).filter(|&k| !kappa_orbit_holds(k)).collect();
            let text = format!("(0,1)(κ*)^j = (a_(j+2) - 1, a_(j+3) - 1) for j <= {j}: failing {failing:?}");
            let ok = failing.is_empty();
            Ok(Outcome::new(text, json!({ "j_max": j, "failing": failing }), ok))
        }
        FibCommand::Delta { partition } => {
            let n = partition.iter().sum();
            let d = delta(n, partition)?;
            let text = format!("n = {n}: Δ1 = {}, Δ2 = {}, Δ = {}", d.delta1, d.delta2, d.delta);
            Ok(Outcome::new(text, &d, true))
        }
        FibCommand::Partition { n, delta: value } => {
            let v: BigInt = value.parse().with_context(|| format!("delta {value:?} is not an integer"))?;
            let p = partition_from_delta(*n, &v)?;
            let text = p.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            Ok(Outcome::new(text, json!({ "n": n, "delta": value, "partition": p }), true))
        }
        FibCommand::Length { form, partition } => {
            let z = ZetaForm::from_numeral(form)?;
            let n = partition.iter().sum();
            let f = length_formula(z, n, partition)?;
            let text = format!("form ({}), n = {n}: type ({}, {}), length {}", z.numeral(), f.c, f.d, f.length);
            Ok(Outcome::new(text, &f, true))
        }
        FibCommand::Ranges { n } => {
            let rows = verify_range_counts(*n);
            let mut text = String::new();
            for r in &rows {
                let _ = writeln!(
                    text,
                    "n = {:>2}  lengths [{}, {})  predicted {}  observed {}  {}",
                    r.n,
                    r.lengths.0,
                    r.lengths.1,
                    r.predicted,
                    r.observed,
                    if r.holds() { "ok" } else { "MISMATCH" }
                );
            }
            let ok = rows.iter().all(|r| r.holds());
            Ok(Outcome::new(text.trim_end().to_string(), &rows, ok))
        }
        FibCommand::Lemma { n } => {
            let items = check_delta_lemma(*n);
            let mut text = String::new();
            for i in &items {
                let _ = writeln!(
                    text,
                    "{:<8} {}",
                    i.item,
                    match &i.counterexample {
                        None => "holds".to_string(),
                        Some((n, p)) => format!("fails at n = {n}, partition {p:?}"),
                    }
                );
            }
            let ok = items.iter().all(|i| i.holds);
            Ok(Outcome::new(text.trim_end().to_string(), &items, ok))
        }
    }
}

fn crosscheck(sys: &RecursionSystem, opts: &GlobalOpts, samples: usize, max_len: usize) -> Result<Outcome> {
    let mut s = EngineSession::open(sys, opts)?;
    let ex = Expander::new(sys);
    let cap = ex.cap();
    let alphabet = *s.engine.alphabet();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut mismatches = Vec::new();
    let mut tested = Vec::with_capacity(samples);
    for _ in 0..samples {
        let len = rng.gen_range(0..=max_len);
        let w = Word::from_letters((0..len).map(|_| rng.gen_range(0..2u8)));
        let rendered = alphabet.render(&w);
        let p = if w.is_empty() { NcPolynomial::one() } else { NcPolynomial::word(&rendered) };
        let mut truncated = false;
        for n in 0..=(len + 2).min(cap) {
            if !ex.level_matrix(&p, n)?.is_zero() {
                truncated = true;
                break;
            }
        }
        if s.engine.is_nonzero(&w)? != truncated {
            mismatches.push(rendered.clone());
        }
        tested.push(rendered);
    }
    s.close()?;
    let text = format!("{samples} random words up to length {max_len} (seed {}): {} mismatches {mismatches:?}", opts.seed, mismatches.len());
    let ok = mismatches.is_empty();
    Ok(Outcome::new(text, json!({ "seed": opts.seed, "words": tested, "mismatches": mismatches }), ok))
}
