mod common;

use common::*;
use doxa::formula::{parse, Alphabet, Formula, Model, ModelSet, Var};
use doxa::horn::{
    horn_entails, horn_equiv_negation, horn_equiv_negation_stepwise, least_model, HornClause,
    HornFormula,
};
use doxa::lexredundancy::{lex_seq_leq, lex_steps};
use doxa::{apply_sequence, DoxasticState, Operator};
use proptest::prelude::*;
use rand::SeedableRng;

fn formula(nvars: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => any::<bool>().prop_map(Formula::Const),
        6 => (0..nvars).prop_map(|v| Formula::var(Var(v))),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| !f),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::and),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

fn horn(nvars: u32) -> impl Strategy<Value = HornFormula> {
    let clause = (
        prop::option::of(0..nvars),
        prop::collection::btree_set(0..nvars, 0..4),
    )
        .prop_map(|(h, b)| HornClause::new(h.map(Var), b.into_iter().map(Var)));
    prop::collection::vec(clause, 0..6).prop_map(HornFormula::new)
}

fn operator() -> impl Strategy<Value = Operator> {
    prop::sample::select(Operator::ALL.to_vec())
}

fn state(al: Alphabet) -> impl Strategy<Value = DoxasticState> {
    let n = 1usize << al.len();
    prop::collection::vec(0..4usize, n)
        .prop_map(move |labels| state_from_key(&al, |m| labels[m.0 as usize]))
}

fn al4() -> Alphabet {
    alphabet(4)
}

proptest! {
    #[test]
    fn bitset_models_match_evaluation(f in formula(5)) {
        let al = alphabet(5);
        prop_assert_eq!(f.models(&al).unwrap(), models_by_evaluation(&f, 5));
    }

    #[test]
    fn display_parses_back(f in formula(4)) {
        let al = al4();
        let text = f.display(&al).to_string();
        let back = parse(&text, &al).unwrap();
        prop_assert_eq!(back.normalize(), f.normalize(), "{}", text);
    }

    #[test]
    fn operators_match_reordering_oracle(
        c in state(al4()),
        a in formula(4),
        op in operator(),
    ) {
        let al = al4();
        let models = a.models(&al).unwrap();
        prop_assume!(!models.is_empty());
        let revised = op.apply(&c, &a).unwrap();
        prop_assert!(revised.validate().is_ok());
        prop_assert_eq!(&revised, &revise_by_key(op, &c, &models), "{} by {}", op, a.display(&al));
        // success: the most believed models satisfy the payload
        prop_assert!(revised.classes()[0].is_subset(&models));
    }

    #[test]
    fn flat_revision_is_two_classes(a in formula(4), op in operator()) {
        let al = al4();
        let models = a.models(&al).unwrap();
        prop_assume!(!models.is_empty() && !models.is_full());
        let flat = DoxasticState::flat(&al).unwrap();
        let expected = DoxasticState::from_classes(&al, vec![models.clone(), models.complement()]).unwrap();
        prop_assert_eq!(op.apply(&flat, &a).unwrap(), expected);
    }

    #[test]
    fn strict_comparisons_survive_when_a_meets_the_top(
        c in state(al4()),
        a in formula(4),
        op in prop::sample::select(vec![Operator::Nat, Operator::Sev, Operator::Res]),
    ) {
        let al = al4();
        let models = a.models(&al).unwrap();
        prop_assume!(models.intersects(&c.classes()[0]));
        let revised = op.apply(&c, &a).unwrap();
        for i in 0..16u64 {
            for j in 0..16u64 {
                let (i, j) = (Model(i), Model(j));
                if c.class_of(i) < c.class_of(j) {
                    prop_assert!(revised.class_of(i) < revised.class_of(j));
                }
            }
        }
    }

    #[test]
    fn inconsistent_payload_is_rejected(c in state(al4()), op in operator()) {
        prop_assert!(op.apply(&c, &Formula::bottom()).is_err());
    }

    #[test]
    fn lex_comparison_matches_construction(s in prop::collection::vec(formula(4), 0..5)) {
        let al = al4();
        prop_assume!(s.iter().all(|f| !f.models(&al).unwrap().is_empty()));
        let built = apply_sequence(&DoxasticState::flat(&al).unwrap(), &lex_steps(&s)).unwrap();
        prop_assert_eq!(&built, &lex_state_by_key(&al, &s));
        for i in 0..16u64 {
            for j in 0..16u64 {
                let (i, j) = (Model(i), Model(j));
                prop_assert_eq!(lex_seq_leq(&s, i, j), built.leq(i, j));
            }
        }
    }

    #[test]
    fn horn_entailment_matches_truth_table(f in horn(4), g in horn(4)) {
        let al = al4();
        let mf = f.to_formula().models(&al).unwrap();
        let mg = g.to_formula().models(&al).unwrap();
        prop_assert_eq!(horn_entails(&f, &g), mf.is_subset(&mg));
    }

    #[test]
    fn least_model_is_least(f in horn(4)) {
        let al = al4();
        let models = f.to_formula().models(&al).unwrap();
        match least_model(&f) {
            None => prop_assert!(models.is_empty()),
            Some(vars) => {
                let m = Model(vars.iter().fold(0, |acc, v| acc | 1 << v.0));
                prop_assert!(models.contains(m));
                for other in &models {
                    prop_assert_eq!(other.meet(m), m);
                }
            }
        }
    }

    #[test]
    fn negation_equivalence_matches_truth_table(f in horn(4), g in horn(4)) {
        let al = al4();
        let mf = f.to_formula().models(&al).unwrap();
        let mg = g.to_formula().models(&al).unwrap();
        let fast = horn_equiv_negation(&f, &g);
        let slow = horn_equiv_negation_stepwise(&f, &g);
        prop_assert_eq!(fast.result, mf == mg.complement());
        prop_assert_eq!(slow.result, fast.result);
        prop_assert!(fast.iterations <= fast.distinct_vars);
        prop_assert!(slow.iterations <= slow.distinct_vars);
    }
}

#[test]
fn random_states_have_consistent_ranks() {
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let al = alphabet(3);
    for _ in 0..50 {
        let c = random_state(&mut r, &al, 5);
        let ranks = ranks(&c);
        let rebuilt = state_from_key(&al, |m| ranks[m.0 as usize]);
        assert_eq!(rebuilt, c);
        let union = c
            .classes()
            .iter()
            .fold(ModelSet::empty(3), |a, b| a.union(b));
        assert!(union.is_full());
    }
}
