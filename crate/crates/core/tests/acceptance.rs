//! Exit-gate checks. Each test prints one `PASS`/`FAIL` line and then
//! asserts, so `cargo test --test acceptance -- --nocapture` gives a summary.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use recurse_ring::fibonacci::{
    check_delta_lemma, check_fib_facts, delta, fib, kappa_orbit_holds, partition_from_delta, verify_range_counts,
};
use recurse_ring::freeness::{independence_rank, transcendence_check, Verdict};
use recurse_ring::growth::{
    avoid_factor_count, boundary_filter, boundary_generate, extend_layer, gk_estimate, growth_table, landmarks,
    operator_table, GrowthMethod, DEFAULT_BYTE_CAP, REFERENCE_F,
};
use recurse_ring::monomial::{annihilator_depth, annihilator_level, relator_family, verify_power_sets, y_sequence, FormalSum, MonomialEngine};
use recurse_ring::{parse_polynomial, Alphabet, Expander, LevelMatrix, NcPolynomial, RecursionSystem, Word};

fn r2_engine() -> MonomialEngine {
    MonomialEngine::new(&RecursionSystem::builtin("R2").unwrap()).unwrap()
}

fn w(s: &str) -> Word {
    Alphabet::ST.parse(s).unwrap()
}

fn report(k: u32, pass: bool, started: Instant, detail: impl AsRef<str>) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {k:>2}: {verdict} ({:.2}s) {}", started.elapsed().as_secs_f64(), detail.as_ref());
    assert!(pass, "criterion {k} failed: {}", detail.as_ref());
}

#[test]
fn criterion_01_growth_table() {
    let start = Instant::now();
    let mut e = r2_engine();
    let table = growth_table(&mut e, 60, GrowthMethod::Enumerate, DEFAULT_BYTE_CAP).unwrap();
    let got = table.f_values();
    let pass = got == REFERENCE_F;
    report(1, pass, start, format!("f(1..60) by enumeration; mismatches {:?}", table.reference_mismatches()));
}

#[test]
fn criterion_02_landmarks() {
    let start = Instant::now();
    let marks = landmarks(4..=11);
    let failing: Vec<_> = marks.iter().filter(|m| !m.holds).map(|m| (m.n, m.length, m.f, m.expected)).collect();
    let top = marks.last().unwrap();
    report(2, failing.is_empty(), start, format!("f(a_{{n+1}}-2) = 2^(n-2), n = 4..11, up to length {}; failing {failing:?}", top.length));
}

#[test]
fn criterion_03_block_table() {
    let start = Instant::now();
    let mut e = r2_engine();
    // word, blocks row by row ("0" for zero, "1" for the identity), nil degree
    let table: [(&str, [&str; 4], usize); 9] = [
        ("s", ["0", "0", "1", "0"], 2),
        ("t", ["0", "t", "0", "s"], 3),
        ("ts", ["t", "0", "s", "0"], 4),
        ("st", ["0", "0", "0", "t"], 3),
        ("tt", ["0", "ts", "0", "0"], 2),
        ("tst", ["0", "tt", "0", "st"], 4),
        ("sts", ["0", "0", "t", "0"], 2),
        ("tts", ["ts", "0", "0", "0"], 4),
        ("stt", ["0", "0", "0", "ts"], 4),
    ];
    let mut bad = Vec::new();
    for (word, blocks, degree) in table {
        let x = w(word);
        let bf = e.reduced_block_form(&x).unwrap();
        let cells: Vec<String> = (0..4)
            .map(|i| bf.get(i / 2, i % 2).map(|v| Alphabet::ST.render(v)).unwrap_or_else(|| "0".into()))
            .collect();
        if cells != blocks {
            bad.push(format!("{word}: blocks {cells:?}"));
        }
        let d = e.nil_degree(&x, 16).unwrap();
        if d != Some(degree) {
            bad.push(format!("{word}: degree {d:?}"));
        }
    }
    let tst2s = e.nil_degree(&w("tstts"), 16).unwrap();
    if tst2s != Some(5) {
        bad.push(format!("tst^2s: degree {tst2s:?}"));
    }
    let sum = FormalSum::from_polynomial(&Alphabet::ST, &parse_polynomial("s + t^2").unwrap()).unwrap();
    let sum_degree = sum.nil_degree(&mut e, 16).unwrap();
    if sum_degree != Some(8) {
        bad.push(format!("s+t^2: degree {sum_degree:?}"));
    }
    report(3, bad.is_empty(), start, format!("nine blocks and degrees, tst^2s -> 5, s+t^2 -> {sum_degree:?}; problems {bad:?}"));
}

#[test]
fn criterion_04_nil_degree_five() {
    let start = Instant::now();
    let mut e = r2_engine();
    let mut checked = 0;
    let mut bad = None;
    for x in Word::all_up_to(12) {
        if x.is_empty() || e.is_zero(&x).unwrap() {
            continue;
        }
        checked += 1;
        if !e.is_zero(&x.pow(5)).unwrap() {
            bad = Some(Alphabet::ST.render(&x));
            break;
        }
    }
    let witness = w("tstts");
    let witness_ok = !e.is_zero(&witness.pow(4)).unwrap();
    report(4, bad.is_none() && witness_ok, start, format!("{checked} nonzero words, w^5 = 0; (tst^2s)^4 != 0: {witness_ok}; counterexample {bad:?}"));
}

#[test]
fn criterion_05_presentation() {
    let start = Instant::now();
    let mut e = r2_engine();
    let relators = relator_family(12);
    let mut mismatch = None;
    let mut count = 0;
    for x in Word::all_up_to(14) {
        count += 1;
        let free_of_relators = !relators.iter().any(|u| x.contains(u));
        if e.is_nonzero(&x).unwrap() != free_of_relators {
            mismatch = Some(Alphabet::ST.render(&x));
            break;
        }
    }
    report(5, mismatch.is_none(), start, format!("{count} words up to length 14; mismatch {mismatch:?}"));
}

#[test]
fn criterion_06_annihilator_series() {
    let start = Instant::now();
    let mut e = r2_engine();
    let mut levels = Vec::new();
    for (i, y) in y_sequence(5).iter().enumerate() {
        let r = annihilator_level(&mut e, y, i + 1).unwrap();
        let depth = annihilator_depth(&mut e, y, 16).unwrap();
        levels.push((i + 1, r.strict_member(), depth));
    }
    let pass = levels.iter().all(|l| l.1);
    report(6, pass, start, format!("y_i in L_i \\ L_(i-1), (i, holds, least level containing y_i): {levels:?}"));
}

#[test]
fn criterion_07_power_sets() {
    let start = Instant::now();
    let mut e = r2_engine();
    let r = verify_power_sets(&mut e, 10, 4).unwrap();
    report(
        7,
        r.holds(),
        start,
        format!("M(1..3) match {:?}, M(4) = 0: {}, S(w,4) = 0 to |w| <= 10: {}, M(3) levels {:?}", r.m_match, r.m4_zero, r.s4_counterexample.is_none(), r.m3_levels),
    );
}

#[test]
fn criterion_08_annihilators_of_generators() {
    let start = Instant::now();
    let mut e = r2_engine();
    let (s, t) = (0u8, 1u8);
    let mut ran_bad = None;
    let mut lan_bad = None;
    for u in Word::all_up_to(12) {
        if e.is_zero(&u).unwrap() {
            continue;
        }
        if e.is_zero(&u.prepend(s)).unwrap() && e.is_zero(&u.prepend(t)).unwrap() {
            ran_bad = Some(Alphabet::ST.render(&u));
            break;
        }
        if u.len() <= 10 {
            let mut us = u.clone();
            us.push(s);
            if e.is_zero(&us).unwrap() != (u.last() == Some(s)) {
                lan_bad = Some(Alphabet::ST.render(&u));
            }
        }
    }
    report(8, ran_bad.is_none() && lan_bad.is_none(), start, format!("ran(R) = 0 to length 12: {ran_bad:?}; lan(s) = words ending in s to length 10: {lan_bad:?}"));
}

#[test]
fn criterion_09_boundary_sets() {
    let start = Instant::now();
    let mut e = r2_engine();
    let generated = boundary_generate(25);
    let mut layer = vec![Word::empty()];
    let mut f = vec![0u64];
    let mut filtered = vec![Vec::new()];
    for _ in 0..31 {
        layer = extend_layer(&mut e, &layer).unwrap();
        f.push(layer.len() as u64);
        filtered.push(boundary_filter(&mut e, &layer).unwrap());
    }
    let count_ok = (1..=30).all(|n| filtered[n].len() as u64 == f[n + 1] - f[n]);
    let ops_ok = (1..=25).all(|n| generated[n] == filtered[n]);
    let ranges = verify_range_counts(8);
    let ranges_ok = ranges.iter().all(|r| r.holds());
    let observed: Vec<u64> = ranges.iter().map(|r| r.observed).collect();
    report(9, count_ok && ops_ok && ranges_ok, start, format!("|W(n)| = f(n+1)-f(n): {count_ok}; operators = filter: {ops_ok}; range counts {observed:?}, all equal to images of t: {ranges_ok}"));
}

#[test]
fn criterion_10_fibonacci_calculus() {
    let start = Instant::now();
    let facts = check_fib_facts(-30, 30).all_hold();
    let orbit = (0..=25).all(kappa_orbit_holds);
    let items = check_delta_lemma(14);
    let failing: Vec<String> = items
        .iter()
        .filter(|i| !i.holds)
        .map(|i| format!("{} at {:?}", i.item, i.counterexample.as_ref().unwrap()))
        .collect();
    let mut round_trip = true;
    for n in 1..=15usize {
        let max = i64::try_from(fib(n as i64 + 2) - 2).unwrap();
        for d in 0..=max {
            let d = BigInt::from(d);
            let p = partition_from_delta(n, &d).unwrap();
            round_trip &= delta(n, &p).unwrap().delta == d;
        }
    }
    let pass = facts && orbit && failing.is_empty() && round_trip;
    report(10, pass, start, format!("facts {facts}, orbit {orbit}, round trip {round_trip}; delta-lemma items failing as stated: {failing:?}"));
}

#[test]
fn criterion_11_growth_exponent() {
    let start = Instant::now();
    let table = operator_table(500);
    let gk = gk_estimate(&table, 401).unwrap();
    let slope_ok = (2.2..=2.6).contains(&gk.slope);
    report(
        11,
        gk.band_holds && slope_ok,
        start,
        format!(
            "band 1/8 < f(n)/n^c < 2 on 3..500: {} (ratio range {:.4}..{:.4}); slope {:.4} on [{}, {}], target {:.4}",
            gk.band_holds, gk.min_ratio, gk.max_ratio, gk.slope, gk.window.0, gk.window.1, gk.target
        ),
    );
}

#[test]
fn criterion_12_free_at_scale() {
    let start = Instant::now();
    let r = independence_rank(4, 6).unwrap();
    let tr = transcendence_check(8, 9).unwrap();
    let pass = r.rank == 30 && r.word_count == 30 && tr.verdict == Verdict::FreeAtScale;
    report(12, pass, start, format!("rank {} of {} words (L=4, n=6), {} coefficient bits; 1, s, .., s^8 at n=9: rank {}", r.rank, r.word_count, r.max_coefficient_bits, tr.rank));
}

#[test]
fn criterion_13_tst_cubed_quotient() {
    let start = Instant::now();
    let mut e = r2_engine();
    let factor = w("tst").pow(3);
    let r = avoid_factor_count(&mut e, &factor, 40, DEFAULT_BYTE_CAP).unwrap();
    let peak = r.counts.iter().max().copied().unwrap_or(0);
    let total: u64 = r.counts.iter().sum();
    report(13, r.l0.is_some(), start, format!("L0 = {:?}; {total} nonzero avoiders in all, at most {peak} per length", r.l0));
}

#[test]
fn criterion_14_bartholdi_reznykov_identity() {
    let start = Instant::now();
    let sys = RecursionSystem::builtin("BR").unwrap();
    let ex = Expander::new(&sys);
    let mut bad = None;
    let mut count = 0;
    for x in Word::all_up_to(6).filter(|x| !x.is_empty()) {
        count += 1;
        let p = NcPolynomial::word(&Alphabet::ST.render(&x));
        let v = ex.check_identity(&p.pow(6), &p.pow(4), 6).unwrap();
        if !v.holds() {
            bad = Some(format!("{}: {v}", Alphabet::ST.render(&x)));
            break;
        }
    }
    report(14, bad.is_none(), start, format!("w^6 = w^4 to level 6 for {count} words |w| <= 6; failure {bad:?}"));
}

#[test]
fn criterion_15_zero_test_matches_truncation() {
    let start = Instant::now();
    let sys = RecursionSystem::builtin("R2").unwrap();
    let ex = Expander::new(&sys);
    let max_len = 10;
    // witnessed[w] = some level n <= |w| + 2 where w acts as a nonzero matrix
    let mut witnessed = std::collections::HashSet::new();
    for n in 0..=max_len + 2 {
        let gens = ex.generator_matrices(n).unwrap();
        let dim = gens[0].dim();
        let one = LevelMatrix::scalar(n, dim, BigRational::one());
        let mut stack = vec![(Word::empty(), one)];
        while let Some((x, m)) = stack.pop() {
            if m.is_zero() {
                continue;
            }
            if n <= x.len() + 2 {
                witnessed.insert(x.clone());
            }
            if x.len() < max_len {
                for (l, g) in gens.iter().enumerate() {
                    let mut y = x.clone();
                    y.push(l as u8);
                    stack.push((y, m.mul(g)));
                }
            }
        }
    }
    let mut e = r2_engine();
    let mut mismatch = None;
    let mut count = 0;
    for x in Word::all_up_to(max_len) {
        count += 1;
        if e.is_nonzero(&x).unwrap() != witnessed.contains(&x) {
            mismatch = Some(Alphabet::ST.render(&x));
            break;
        }
    }
    report(15, mismatch.is_none(), start, format!("{count} words up to length {max_len}; mismatch {mismatch:?}"));
}
