use proptest::prelude::*;
use recurse_ring::{parse_system, serialize_system, DslError, GeneratorDef, NcPolynomial, RecursionSystem};

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../systems/{name}.sys", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn golden_files_parse_to_builtins() {
    for (file, name) in [("r1", "R1"), ("r2", "R2"), ("sigma", "SIGMA"), ("br", "BR")] {
        let parsed = parse_system(&golden(file)).unwrap();
        assert_eq!(parsed, RecursionSystem::builtin(name).unwrap(), "{file}");
    }
}

#[test]
fn builtins_round_trip() {
    for name in RecursionSystem::BUILTIN_NAMES {
        let sys = RecursionSystem::builtin(name).unwrap();
        let text = serialize_system(&sys);
        assert_eq!(parse_system(&text).unwrap(), sys, "{text}");
        assert_eq!(serialize_system(&parse_system(&text).unwrap()), text);
    }
}

#[test]
fn three_entries_under_arity_two() {
    let src = "system X arity 2\ngen s : phi 0 : [[0, 0, 0], [1, 0]]\n";
    assert!(matches!(parse_system(src), Err(DslError::ShapeMismatch { .. })));
}

#[test]
fn undeclared_generator() {
    let src = "system X arity 2\ngen s : phi 0 : [[0, u], [1, 0]]\n";
    match parse_system(src) {
        Err(DslError::UndeclaredGenerator { name, .. }) => assert_eq!(name, 'u'),
        other => panic!("expected undeclared generator, got {other:?}"),
    }
}

fn coeff() -> impl Strategy<Value = (i64, i64)> {
    (-5i64..=5, 1i64..=4)
}

fn entry() -> impl Strategy<Value = NcPolynomial> {
    let term = (coeff(), prop::collection::vec(prop::sample::select(vec!['a', 'b']), 0..3));
    prop::collection::vec(term, 0..3).prop_map(|terms| {
        let mut p = NcPolynomial::zero();
        for ((n, d), letters) in terms {
            let c = num_rational::BigRational::new(n.into(), d.into());
            let w: String = letters.into_iter().collect();
            p = &p + &NcPolynomial::word(&w).scale(&c);
        }
        p
    })
}

proptest! {
    #[test]
    fn random_systems_round_trip(
        blocks in prop::collection::vec(prop::collection::vec(entry(), 2), 4),
        phis in prop::collection::vec(coeff(), 2),
    ) {
        let mk = |i: usize, name: char| {
            let (n, d) = phis[i];
            GeneratorDef::new(name, num_rational::BigRational::new(n.into(), d.into()), blocks[2 * i..2 * i + 2].to_vec())
        };
        let sys = RecursionSystem::new("Random", 2, vec![mk(0, 'a'), mk(1, 'b')]).unwrap();
        let text = serialize_system(&sys);
        let back = parse_system(&text).unwrap();
        prop_assert_eq!(&back, &sys);
        prop_assert_eq!(serialize_system(&back), text);
    }
}
