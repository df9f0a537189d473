use num_bigint::BigInt;
use proptest::prelude::*;
use recurse_ring::fibonacci::{
    alpha_bounds_hold, compositions, count_range, delta, fib, kappa_orbit_holds, length_formula, partition_from_delta,
    range_bounds, sigma_conjugate, type_apply, OperatorWord, TypeOp, WordType, ZetaForm,
};
use recurse_ring::growth::boundary_generate;
use recurse_ring::monomial::T;
use recurse_ring::Word;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn extended_sequence_values() {
    assert_eq!(fib(10), b(55));
    assert_eq!(fib(0), b(0));
    assert_eq!(fib(-1), b(1));
    assert_eq!(fib(-3), b(2));
    assert_eq!(fib(-6), b(-8));
}

#[test]
fn product_rule_for_negative_indices() {
    for i in -30..=30 {
        let expected = if i % 2 == 0 { -fib(i) } else { fib(i) };
        assert_eq!(fib(-i), expected, "a_{{-{i}}}");
    }
}

#[test]
fn alpha_bounds() {
    for i in 3..=40 {
        assert!(alpha_bounds_hold(i), "i = {i}");
    }
    assert!(!alpha_bounds_hold(2));
}

#[test]
fn kappa_on_t() {
    let op = OperatorWord::new(ZetaForm::Q, vec![1]).unwrap();
    assert_eq!(type_apply(&op, &WordType::new(0, 1)), WordType::new(1, 2));
    for j in 0..40 {
        assert!(kappa_orbit_holds(j), "j = {j}");
    }
}

#[test]
fn delta_examples() {
    for n in 1..12 {
        let d = delta(n, &[n]).unwrap();
        assert_eq!(d.delta, b(0));
    }
    // all-ones partition: Σ_{j≤n−2} a_j and Σ_{1≤j≤n−1} a_j
    for n in 2..12usize {
        let d = delta(n, &vec![1; n]).unwrap();
        let n = n as i64;
        assert_eq!(d.delta1, fib(n) - 1);
        assert_eq!(d.delta2, fib(n + 1) - 1);
    }
    assert!(delta(3, &[1, 1]).is_err());
    assert!(delta(3, &[3, 0]).is_err());
}

#[test]
fn closed_forms_match_operator_application() {
    let t = Word::from_letters([T]);
    for n in 1..=10 {
        for p in compositions(n) {
            for form in ZetaForm::ALL {
                let op = OperatorWord::new(form, p.clone()).unwrap();
                let word = op.apply_to_word(&t);
                let f = length_formula(form, n, &p).unwrap();
                let ty = WordType::of(&word);
                assert_eq!((f.c, f.d), (ty.c.clone(), ty.d.clone()), "{form:?} {p:?}");
                assert_eq!(f.length, b(word.len() as i64));
                assert_eq!(type_apply(&op, &WordType::new(0, 1)), ty);
            }
        }
    }
}

#[test]
fn single_part_lengths() {
    for n in 1..30i64 {
        let nu = n as usize;
        assert_eq!(length_formula(ZetaForm::QSigma, nu, &[nu]).unwrap().length, fib(n + 4) - 1);
        assert_eq!(length_formula(ZetaForm::SigmaQ, nu, &[nu]).unwrap().length, fib(n + 3) * 2 - 2);
    }
}

#[test]
fn every_delta_is_attained() {
    for n in 1..=12usize {
        let max = i64::try_from(fib(n as i64 + 2) - 2).unwrap();
        for v in 0..=max {
            let p = partition_from_delta(n, &b(v)).unwrap();
            assert_eq!(p.iter().sum::<usize>(), n);
            assert_eq!(delta(n, &p).unwrap().delta, b(v), "n = {n}, Δ = {v}");
        }
        assert!(partition_from_delta(n, &b(max + 1)).is_err());
    }
    assert_eq!(partition_from_delta(5, &b(0)).unwrap(), vec![5]);
}

#[test]
fn range_count_values() {
    assert_eq!(count_range(1), b(4));
    assert_eq!(count_range(4), b(32));
    assert_eq!(range_bounds(1), (3, 6));
}

#[test]
fn composition_counts() {
    for n in 1..12 {
        assert_eq!(compositions(n).len(), 1 << (n - 1));
    }
    assert!(compositions(0).is_empty());
}

#[test]
fn boundary_words_reach_their_own_type() {
    let t = Word::from_letters([T]);
    let by_len = boundary_generate(20);
    let mut seen = 0;
    for n in 1..=5 {
        for p in compositions(n) {
            for form in ZetaForm::ALL {
                let w = OperatorWord::new(form, p.clone()).unwrap().apply_to_word(&t);
                if w.len() <= 20 {
                    assert!(by_len[w.len()].binary_search(&w).is_ok());
                    seen += 1;
                }
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn rejects_empty_operator() {
    assert!(OperatorWord::new(ZetaForm::Q, vec![]).is_err());
    assert!(ZetaForm::from_numeral("v").is_err());
    assert_eq!(ZetaForm::from_numeral("iii").unwrap(), ZetaForm::SigmaQSigma);
}

proptest! {
    #[test]
    fn sigma_conjugate_shifts_by_fibonacci(c in -1000i64..1000, d in -1000i64..1000, j in 0usize..25) {
        let got = WordType::new(c, d).apply_all(&sigma_conjugate(j));
        let ji = j as i64;
        prop_assert_eq!(got, WordType::new(fib(-ji - 1) + c, fib(-ji) + d));
    }

    #[test]
    fn lambda_inverse_undoes_lambda(c in -1000i64..1000, d in -1000i64..1000) {
        let x = WordType::new(c, d);
        prop_assert_eq!(x.apply_all(&[TypeOp::Lambda, TypeOp::LambdaInv]), x.clone());
        prop_assert_eq!(x.apply_all(&[TypeOp::Sigma, TypeOp::SigmaInv]), x);
    }
}
