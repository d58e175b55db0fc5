mod support;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fuzzy_horn::algebra::{check_laws_on_triples, Algebra, TruthValue};
use fuzzy_horn::morphisms::{check_homomorphism, AlgebraMap, StructureMap};
use fuzzy_horn::saturation::{saturate, SaturationConfig};
use fuzzy_horn::semantics::FuzzyStructure;
use fuzzy_horn::syntax::{
    classify_horn, parse_formula, Atom, Connective, Formula, Quantifier, Signature, Substitution, Term,
};

use support::gen::{random_structure, GenParams, GenTheory};

fn signature() -> Signature {
    let mut s = Signature::new().with_equality();
    s.add_predicate("P", 1).unwrap();
    s.add_predicate("R", 2).unwrap();
    s.add_constant("c").unwrap();
    s.add_constant("d").unwrap();
    s.add_function("f", 1).unwrap();
    s.add_function("g", 2).unwrap();
    s
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::var("x")),
        Just(Term::var("y")),
        Just(Term::constant("c")),
        Just(Term::constant("d")),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(a, b)| Term::app("g", vec![a, b])),
        ]
    })
}

fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        term().prop_map(|t| Formula::atom("P", vec![t])),
        (term(), term()).prop_map(|(a, b)| Formula::atom("R", vec![a, b])),
        (term(), term()).prop_map(|(a, b)| Formula::eq(a, b)),
        Just(Formula::Bottom),
        Just(Formula::Top),
    ]
}

fn formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(4, 24, 2, |inner| {
        let conn = prop_oneof![
            Just(Connective::StrongAnd),
            Just(Connective::WeakAnd),
            Just(Connective::Or),
            Just(Connective::Implies),
        ];
        prop_oneof![
            (conn, inner.clone(), inner.clone()).prop_map(|(c, a, b)| Formula::binary(c, a, b)),
            (prop_oneof![Just("x"), Just("y")], any::<bool>(), inner).prop_map(|(x, all, body)| {
                if all {
                    Formula::forall(x, body)
                } else {
                    Formula::exists(x, body)
                }
            }),
        ]
    })
}

fn strip_prefix(phi: &Formula) -> &Formula {
    match phi {
        Formula::Quantified(Quantifier::Forall, _, body) => strip_prefix(body),
        other => other,
    }
}

fn rename_constants(phi: &Formula, map: &dyn Fn(&str) -> String) -> Formula {
    fn t(term: &Term, map: &dyn Fn(&str) -> String) -> Term {
        match term {
            Term::Var(v) => Term::Var(v.clone()),
            Term::App(f, args) if args.is_empty() => Term::constant(map(f)),
            Term::App(f, args) => Term::app(f.clone(), args.iter().map(|a| t(a, map)).collect()),
        }
    }
    match phi {
        Formula::Atom(a) => Formula::Atom(Atom::new(
            a.predicate.clone(),
            a.args.iter().map(|x| t(x, map)).collect(),
        )),
        Formula::Bottom | Formula::Top => phi.clone(),
        Formula::Binary(c, a, b) => Formula::binary(*c, rename_constants(a, map), rename_constants(b, map)),
        Formula::Quantified(q, x, b) => Formula::Quantified(*q, x.clone(), Box::new(rename_constants(b, map))),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_then_parsing_is_identity(phi in formula()) {
        let sig = signature();
        let text = phi.to_string();
        let back = parse_formula(&text, &sig).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, phi);
    }

    #[test]
    fn substitution_keeps_horn_clauses_and_rank(seed in any::<u64>(), s1 in term(), s2 in term()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let th = GenTheory::random(&mut rng, &GenParams::default());
        let clause = &th.clauses[rng.gen_range(0..th.clauses.len())];
        let matrix = strip_prefix(&th.formula(clause)).clone();
        let mut sub = Substitution::new();
        sub.insert("x", s1);
        sub.insert("y", s2);
        let image = matrix.substitute(&sub);
        let (before, after) = (classify_horn(&matrix), classify_horn(&image));
        prop_assert!(before.is_clause());
        prop_assert!(after.is_clause());
        prop_assert_eq!(before.tags(), after.tags());
        prop_assert_eq!(matrix.rank(), image.rank());
        let closed = th.formula(clause);
        prop_assert_eq!(closed.substitute(&sub).rank(), closed.rank());
    }

    #[test]
    fn renaming_constants_renames_the_saturation(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let th = GenTheory::random(&mut rng, &GenParams::default());
        let rename = |c: &str| format!("k{}", c.trim_start_matches('c'));
        let mut renamed_sig = Signature::new();
        for (p, a) in &th.preds {
            renamed_sig.add_predicate(p, *a).unwrap();
        }
        for c in &th.consts {
            renamed_sig.add_constant(&rename(c)).unwrap();
        }
        renamed_sig.set_equality(th.equality);
        let renamed: Vec<Formula> = th.formulas().iter().map(|f| rename_constants(f, &rename)).collect();
        let cfg = SaturationConfig::default();
        let a = saturate(&th.formulas(), &th.signature(), &cfg).unwrap();
        let b = saturate(&renamed, &renamed_sig, &cfg).unwrap();
        prop_assert_eq!(a.is_consistent(), b.is_consistent());
        prop_assert_eq!(a.class_count(), b.class_count());
        let mapped: std::collections::BTreeSet<Formula> = a
            .ground_atoms()
            .into_iter()
            .map(|at| rename_constants(&Formula::Atom(at), &rename))
            .collect();
        let direct: std::collections::BTreeSet<Formula> = b.ground_atoms().into_iter().map(Formula::Atom).collect();
        prop_assert_eq!(mapped, direct);
    }

    #[test]
    fn saturation_is_idempotent(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let th = GenTheory::random(&mut rng, &GenParams::default());
        let cfg = SaturationConfig::default().with_frozen(0);
        let first = saturate(&th.formulas(), &th.signature(), &cfg).unwrap();
        prop_assume!(first.is_consistent());
        let mut again = th.formulas();
        again.extend(first.ground_atoms().into_iter().map(Formula::Atom));
        let second = saturate(&again, &th.signature(), &cfg).unwrap();
        prop_assert_eq!(first.ground_atoms(), second.ground_atoms());
    }

    #[test]
    fn standard_algebras_obey_the_laws(
        triples in prop::collection::vec(((0i64..=24), (0i64..=24), (0i64..=24), (1i64..=24)), 1..64)
    ) {
        let ts: Vec<_> = triples
            .iter()
            .map(|&(a, b, c, d)| {
                let v = |n: i64| TruthValue::real(n.min(d), d);
                (v(a), v(b), v(c))
            })
            .collect();
        for alg in [Algebra::Godel, Algebra::Lukasiewicz, Algebra::Product] {
            let r = check_laws_on_triples(&alg, &ts);
            prop_assert!(r.holds(), "{}: {:?}", alg.name(), r.violation);
        }
    }

    #[test]
    fn structure_files_round_trip(seed in any::<u64>(), which in 0usize..4, size in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alg = [Algebra::Lukasiewicz, Algebra::GodelChain(5), Algebra::Product, Algebra::Boolean][which].clone();
        let m = random_structure(&mut rng, &alg, &signature(), size);
        let text = m.to_text().unwrap();
        let back = FuzzyStructure::parse(&text, None).unwrap();
        prop_assert_eq!(back.to_text().unwrap(), text);
        prop_assert_eq!(back.domain, m.domain);
        prop_assert_eq!(back.predicates, m.predicates);
    }

    #[test]
    fn homomorphisms_compose(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut sig = Signature::new();
        sig.add_predicate("P", 1).unwrap();
        sig.add_predicate("R", 2).unwrap();
        sig.add_constant("c").unwrap();
        let size = rng.gen_range(1..=3);
        let a = random_structure(&mut rng, &Algebra::Boolean, &sig, size);
        let (b, g1) = image(&mut rng, &a);
        let (c, g2) = image(&mut rng, &b);
        let hom = |s: &FuzzyStructure, t: &FuzzyStructure, g: Vec<usize>| {
            check_homomorphism(s, t, &StructureMap { f: AlgebraMap::Identity, g }).unwrap()
        };
        prop_assert!(hom(&a, &b, g1.clone()).is_homomorphism());
        prop_assert!(hom(&b, &c, g2.clone()).is_homomorphism());
        let composite: Vec<usize> = g1.iter().map(|&d| g2[d]).collect();
        prop_assert!(hom(&a, &c, composite).is_homomorphism());
    }
}

/// A Boolean structure receiving a random map from `a` that is a
/// homomorphism by construction: images of true atoms are true and further
/// atoms are switched on at random.
fn image(rng: &mut StdRng, a: &FuzzyStructure) -> (FuzzyStructure, Vec<usize>) {
    let n = rng.gen_range(1..=3);
    let g: Vec<usize> = (0..a.size()).map(|_| rng.gen_range(0..n)).collect();
    let sig = a.signature.clone();
    let mut b = random_structure(rng, &Algebra::Boolean, &sig, n);
    for c in sig.constants().map(str::to_string).collect::<Vec<_>>() {
        let v = a.function_value(&c, &[]).unwrap().unwrap();
        b.set_function(&c, &[], g[v]).unwrap();
    }
    for (p, arity) in sig
        .proper_predicates()
        .map(|(p, a)| (p.to_string(), a))
        .collect::<Vec<_>>()
    {
        for t in a.tuples(arity).collect::<Vec<_>>() {
            if a.predicate_value(&p, &t).unwrap() == &TruthValue::Bit(true) {
                let img: Vec<usize> = t.iter().map(|&d| g[d]).collect();
                b.set_predicate(&p, &img, TruthValue::Bit(true)).unwrap();
            }
        }
    }
    (b, g)
}
