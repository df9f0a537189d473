mod oracle;

use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use recurse_ring::{Expander, IdentityVerdict, LevelMatrix, NcPolynomial, RecursionSystem};

fn sys(name: &str) -> RecursionSystem {
    RecursionSystem::builtin(name).unwrap()
}

fn poly_strategy() -> impl Strategy<Value = NcPolynomial> {
    let term = (-3i64..=3, prop::collection::vec(prop::sample::select(vec!['s', 't']), 0..4));
    prop::collection::vec(term, 1..4).prop_map(|terms| {
        let mut p = NcPolynomial::zero();
        for (c, letters) in terms {
            let w: String = letters.into_iter().collect();
            p = &p + &NcPolynomial::word(&w).scale(&oracle::int(c));
        }
        p
    })
}

#[test]
fn level_matrices_match_direct_application() {
    for name in ["R1", "R2", "BR"] {
        let s = sys(name);
        let ex = Expander::new(&s);
        for w in ["s", "t", "ts", "tst", "stts"] {
            let p = NcPolynomial::word(w);
            for n in 0..5 {
                assert_eq!(ex.level_matrix(&p, n).unwrap().to_dense(), oracle::dense_level_matrix(&s, &p, n), "{name} {w} {n}");
            }
        }
    }
}

#[test]
fn growth_profiles_frozen() {
    // computed by the direct-application oracle with plain Gaussian ranks
    let t = NcPolynomial::letter('t');
    let r2 = sys("R2");
    let r1 = sys("R1");
    assert_eq!(oracle::growth_profile(&r2, &t, 7), vec![0, 1, 1, 1, 1, 1, 1]);
    assert_eq!(oracle::growth_profile(&r1, &t, 7), vec![1; 7]);
    assert_eq!(Expander::new(&r2).growth_profile(&t, 7).unwrap(), vec![0, 1, 1, 1, 1, 1, 1]);
    assert_eq!(Expander::new(&r1).growth_profile(&t, 7).unwrap(), vec![1; 7]);
}

#[test]
fn rank_ratio_of_s_in_r2_is_one_half() {
    let r2 = sys("R2");
    let ex = Expander::new(&r2);
    let half = BigRational::new(1.into(), 2.into());
    let ratios = ex.rank_ratio_sequence(&NcPolynomial::letter('s'), 6).unwrap();
    assert!(ratios[1..].iter().all(|r| *r == half), "{ratios:?}");
}

#[test]
fn lex_form_of_t() {
    let r2 = sys("R2");
    let ex = Expander::new(&r2);
    assert_eq!(ex.lex_block_form(&NcPolynomial::letter('t'), 1).unwrap().to_string(), "(0; [[0, t], [0, s]])");
}

#[test]
fn state_sets() {
    let r2 = sys("R2");
    let ex = Expander::new(&r2);
    let s = ex.state_set('s', 16).unwrap();
    assert_eq!((s.exact_count, s.span_rank), (Some(3), 2));
    let t = ex.state_set('t', 16).unwrap();
    assert_eq!((t.exact_count, t.span_rank), (Some(4), 3));
    let r1 = sys("R1");
    let ex1 = Expander::new(&r1);
    let s1 = ex1.state_set('s', 64).unwrap();
    assert_eq!((s1.exact_count, s1.span_rank), (None, 2));
    let t1 = ex1.state_set('t', 64).unwrap();
    assert_eq!((t1.exact_count, t1.span_rank), (None, 3));
}

#[test]
fn sigma_doubles_by_tensoring() {
    let s = sys("SIGMA");
    let ex = Expander::new(&s);
    let p = NcPolynomial::letter('σ');
    // level 0 is the root value, the swap appears from level 1 on
    for n in 1..6 {
        let next = ex.level_matrix(&p, n + 1).unwrap();
        let kron = ex.level_matrix(&p, n).unwrap().kron_identity(2);
        assert_eq!(next.to_dense(), kron.to_dense());
    }
}

#[test]
fn level_cap_is_a_resource_error() {
    let r2 = sys("R2");
    let ex = Expander::with_cap(&r2, 3);
    let err = ex.level_matrix(&NcPolynomial::letter('s'), 4).unwrap_err();
    assert!(recurse_ring::Error::from(err).is_resource_limit());
}

#[test]
fn identity_failure_is_located() {
    let br = sys("BR");
    let ex = Expander::new(&br);
    let st = NcPolynomial::word("st");
    assert!(ex.check_identity(&st.pow(6), &st.pow(4), 6).unwrap().holds());
    match ex.check_identity(&st.pow(3), &st, 4).unwrap() {
        IdentityVerdict::Fails { lhs, rhs, .. } => assert_ne!(lhs, rhs),
        v => panic!("expected a failure, got {v}"),
    }
}

#[test]
fn unknown_letters_are_rejected() {
    let r2 = sys("R2");
    let ex = Expander::new(&r2);
    assert!(ex.level_matrix(&NcPolynomial::letter('u'), 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn level_map_is_multiplicative(p in poly_strategy(), q in poly_strategy(), n in 0usize..5) {
        for name in ["R1", "R2"] {
            let s = sys(name);
            let ex = Expander::new(&s);
            let pq = &p * &q;
            let lhs = ex.level_matrix(&pq, n).unwrap();
            let rhs = ex.level_matrix(&p, n).unwrap().mul(&ex.level_matrix(&q, n).unwrap());
            prop_assert_eq!(lhs.to_dense(), rhs.to_dense());
        }
    }

    #[test]
    fn level_map_is_additive(p in poly_strategy(), q in poly_strategy(), n in 0usize..5) {
        let s = sys("BR");
        let ex = Expander::new(&s);
        let lhs = ex.level_matrix(&(&p + &q), n).unwrap();
        let rhs = ex.level_matrix(&p, n).unwrap().add(&ex.level_matrix(&q, n).unwrap());
        prop_assert_eq!(lhs.to_dense(), rhs.to_dense());
    }

    #[test]
    fn blocks_are_level_matrices_of_block_entries(p in poly_strategy(), n in 0usize..4) {
        let s = sys("R1");
        let ex = Expander::new(&s);
        let big = ex.level_matrix(&p, n + 1).unwrap();
        let entries = recurse_ring::recursion::block_entries(&s, &p);
        for (y, row) in entries.iter().enumerate() {
            for (y2, e) in row.iter().enumerate() {
                prop_assert_eq!(big.block(2, y, y2).to_dense(), ex.level_matrix(e, n).unwrap().to_dense());
            }
        }
    }

    #[test]
    fn level_matrices_agree_with_oracle(p in poly_strategy(), n in 0usize..4) {
        let s = sys("BR");
        let ex = Expander::new(&s);
        prop_assert_eq!(ex.level_matrix(&p, n).unwrap().to_dense(), oracle::dense_level_matrix(&s, &p, n));
    }

    #[test]
    fn bareiss_rank_agrees_with_gauss(p in poly_strategy(), n in 0usize..4) {
        let s = sys("R1");
        let m = Expander::new(&s).level_matrix(&p, n).unwrap();
        prop_assert_eq!(m.rank(), oracle::gauss_rank(m.to_dense()));
    }
}

#[test]
fn identity_matrix_is_neutral() {
    let one = LevelMatrix::scalar(3, 8, BigRational::one());
    let r2 = sys("R2");
    let ex = Expander::new(&r2);
    let t = ex.level_matrix(&NcPolynomial::letter('t'), 3).unwrap();
    assert_eq!(one.mul(&t), t);
}
