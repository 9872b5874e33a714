use liarlab_core::afs::{check_representation, diagonal_name_set, FormalSystem};
use liarlab_core::quineland::*;
use proptest::prelude::*;

fn f(s: &str) -> QFormula {
    parse_formula(s).unwrap()
}

fn t(s: &str) -> QTerm {
    match parse(s).unwrap() {
        QExpr::Term(t) => t,
        QExpr::Formula(_) => panic!("{s} is a formula"),
    }
}

#[test]
fn parse_examples() {
    assert_eq!(
        f("~Pr(<x>)"),
        QFormula::not(QFormula::Pr(QTerm::quote(QExpr::Term(QTerm::Var))))
    );
    assert_eq!(f("Pr(diag(x))"), QFormula::Pr(QTerm::diag(QTerm::Var)));
    assert!(matches!(parse("Pr(x"), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse_formula("<x>"), Err(ParseError::NotAFormula(_))));
    assert!(parse("Pr(x) junk").is_err());
}

#[test]
fn denote_examples() {
    assert_eq!(denote(&t("diag(<~Pr(diag(x))>)")), Some(QExpr::Formula(f("~Pr(diag(<~Pr(diag(x))>))"))));
    assert_eq!(denote(&t("diag(<Pr(<x>)>)")), Some(QExpr::Formula(f("Pr(<x>)"))));
    assert_eq!(denote(&t("<x>")), Some(QExpr::Term(QTerm::Var)));
    assert_eq!(denote(&t("diag(x)")), None);
    // Nested diagonals unfold from the inside; the outer one then meets a
    // sentence and leaves it alone.
    assert_eq!(denote(&t("diag(diag(<Pr(x)>))")), Some(QExpr::Formula(f("Pr(<Pr(x)>)"))));
    assert_eq!(denote(&t("diag(<diag(x)>)")), Some(QExpr::Term(t("diag(x)"))));
}

#[test]
fn printer_examples() {
    assert!(printable(&f("~Pr(<x>)")));
    assert!(printable(&f("Pr(<~Pr(<x>)>)")));
    assert_eq!(derivation(&f("Pr(<~Pr(<x>)>)")).unwrap().len(), 2);
    assert!(!printable(&f("Pr(diag(<~Pr(diag(x))>))")));
    assert_eq!(min_proof_length(&axiom()), Some(1));
    assert_eq!(min_proof_length(&f("~~~~~Pr(<x>)")), Some(3));
    assert_eq!(min_proof_length(&f("(~Pr(<x>) & ~Pr(<x>))")), Some(2));
    assert_eq!(min_proof_length(&f("(~Pr(<x>) & ~~~Pr(<x>))")), None);
}

#[test]
fn truth_examples() {
    assert!(truth(&f("~Pr(<x>)")));
    assert!(truth(&f("Pr(<~Pr(<x>)>)")));
    assert!(!truth(&f("Pr(<Pr(x)>)")));
    assert!(!truth(&f("Pr(x)")));
}

#[test]
fn printer_soundness_forward_closure() {
    let closure = forward_closure(10_000);
    assert_eq!(closure.len(), 10_000);
    for s in &closure {
        assert!(s.is_sentence());
        assert!(truth(s), "printed but false: {s}");
        assert!(printable(s));
    }
}

#[test]
fn negation_axioms_on_generated_sentences() {
    let q = Quineland::new();
    let mut sentences: Vec<QFormula> = q
        .formulas_up_to(9)
        .into_iter()
        .filter_map(|e| e.as_formula().cloned())
        .filter(QFormula::is_sentence)
        .take(700)
        .collect();
    sentences.extend(forward_closure(300));
    assert!(sentences.len() >= 1000);
    for s in &sentences {
        let neg = QFormula::not(s.clone());
        assert_eq!(truth(&neg), !truth(s), "{s}");
        assert_eq!(printable(&QFormula::not(neg)), printable(s), "{s}");
    }
}

#[test]
fn goedel_facts() {
    let g = Quineland::new().goedel_sentence();
    assert_eq!(g.pi, goedel_pi());
    assert_eq!(g.lambda, f("~Pr(diag(<~Pr(diag(x))>))"));
    assert!(g.facts.diag_fixed_point);
    assert!(g.facts.truth_lambda);
    assert!(!g.facts.printable_lambda);
    assert!(!g.facts.printable_negation);
    assert!(!truth(&QFormula::not(g.lambda.clone())));
}

#[test]
fn printability_represented_on_two_hundred_names() {
    assert!(!Quineland::new().check_printability_representer(200).unwrap().is_refuted());
}

#[test]
fn self_ref_transform_represents_diagonal() {
    let q = Quineland::new();
    let sample = q.enumerate_names(100).unwrap();
    let truth_set = q.truth_set();
    let bold_p = q.printable_names();
    let phi = QExpr::Formula(self_ref_transform_t(&f("Pr(x)")));
    assert_eq!(phi, QExpr::Formula(f("Pr(diag(x))")));
    let d = diagonal_name_set(&q, &bold_p);
    assert!(!check_representation(&q, &phi, &d, &truth_set, &sample).unwrap().is_refuted());

    let not_bold_p = bold_p.complement();
    let psi = QExpr::Formula(self_ref_transform_t(&f("~Pr(x)")));
    let d = diagonal_name_set(&q, &not_bold_p);
    assert!(!check_representation(&q, &psi, &d, &truth_set, &sample).unwrap().is_refuted());
}

#[test]
fn p_n_chain() {
    for n in 1..=12 {
        let s = long_theorem(n);
        let len = min_proof_length(&s).unwrap();
        assert!(len >= n);
        assert!(!in_p_n(&s, n));
        let d = derivation(&s).unwrap();
        assert!(d.verify());
        assert_eq!(d.len(), len);
        assert_eq!(d.conclusion(), Some(&s));
    }
    // P_1 ⊆ P_2 ⊆ ... on the closure
    for s in forward_closure(2000) {
        for n in 1..12 {
            if in_p_n(&s, n) {
                assert!(in_p_n(&s, n + 1));
            }
        }
    }
    assert!(!in_p_n(&axiom(), 1));
    assert!(in_p_n(&axiom(), 2));
}

#[test]
fn decidability_consistency() {
    let q = Quineland::new();
    for e in q.formulas_up_to(9) {
        let s = e.as_formula().unwrap();
        if !s.is_sentence() {
            continue;
        }
        let d = derivation(s);
        assert_eq!(printable(s), d.is_some());
        assert_eq!(d.as_ref().map(Derivation::len), min_proof_length(s));
        if let Some(d) = d {
            assert!(d.verify());
        }
    }
}

#[test]
fn derivation_verifier_rejects_tampering() {
    let mut d = derivation(&long_theorem(5)).unwrap();
    assert!(d.verify());
    d.steps[2] = axiom();
    assert!(!d.verify());
    let mut d = derivation(&long_theorem(3)).unwrap();
    d.justifications[1] = Justification::Rule(Rule::R1, 0);
    assert!(!d.verify());
}

fn arb_formula() -> impl Strategy<Value = QFormula> {
    let leaf = prop_oneof![
        Just(QFormula::Pr(QTerm::Var)),
        Just(axiom()),
        Just(QFormula::Pr(QTerm::diag(QTerm::Var))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(QFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| QFormula::and(a, b)),
            inner.clone().prop_map(|g| QFormula::Pr(QTerm::quote_formula(g))),
            inner.prop_map(|g| QFormula::Pr(QTerm::diag(QTerm::quote_formula(g)))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn prop_round_trip(g in arb_formula()) {
        prop_assert_eq!(parse_formula(&serialize_formula(&g)).unwrap(), g);
    }

    #[test]
    fn prop_rules_preserve_printability(g in arb_formula()) {
        if g.is_sentence() && printable(&g) {
            for r in [Rule::R1, Rule::R2, Rule::R3] {
                let h = r.apply(&g);
                prop_assert!(printable(&h));
                prop_assert_eq!(min_proof_length(&h), min_proof_length(&g).map(|k| k + 1));
            }
        }
    }

    #[test]
    fn prop_printed_is_true(g in arb_formula()) {
        if g.is_sentence() && printable(&g) {
            prop_assert!(truth(&g));
        }
    }

    #[test]
    fn prop_substitution_closes(g in arb_formula(), h in arb_formula()) {
        prop_assert!(g.substitute(&QName(h)).is_sentence());
    }
}
