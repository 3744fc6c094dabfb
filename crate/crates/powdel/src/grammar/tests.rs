use std::collections::BTreeSet;

use super::*;
use crate::known::d22_oracle;
use crate::word::{Alphabet, Word};

fn words(k: usize, names: &[&str]) -> BTreeSet<Word> {
    let ab = Alphabet::new(k).unwrap();
    names.iter().map(|s| ab.parse_word(s).unwrap()).collect()
}

fn enumerated(core: &GrammarCore, maxlen: usize) -> BTreeSet<Word> {
    let result = enumerate_language(core, &EnumerationBounds::for_length(maxlen));
    assert!(
        result.complete,
        "enumeration to {maxlen} should exhaust the space"
    );
    result.words
}

/// All uᵖ with p·|u| ≤ maxlen, by direct construction.
fn direct_powers(k: usize, p: usize, maxlen: usize) -> BTreeSet<Word> {
    let ab = Alphabet::new(k).unwrap();
    ab.words_up_to(maxlen / p).map(|u| u.power(p)).collect()
}

#[test]
fn power_grammar_squares_to_length_four() {
    let g = build_power_grammar(2, 2);
    assert_eq!(
        enumerated(g.core(), 4),
        words(2, &["", "aa", "bb", "aaaa", "abab", "baba", "bbbb"])
    );
}

#[test]
fn power_grammar_cubes_to_length_six() {
    let g = build_power_grammar(2, 3);
    assert_eq!(
        enumerated(g.core(), 6),
        words(
            2,
            &["", "aaa", "bbb", "aaaaaa", "ababab", "bababa", "bbbbbb"]
        )
    );
}

#[test]
fn power_grammar_one_letter_cubes() {
    let g = build_power_grammar(1, 3);
    assert_eq!(
        enumerated(g.core(), 9),
        words(1, &["", "aaa", "aaaaaa", "aaaaaaaaa"])
    );
}

#[test]
fn power_grammar_first_powers_are_all_words() {
    let g = build_power_grammar(2, 1);
    let ab = Alphabet::new(2).unwrap();
    let all: BTreeSet<Word> = ab.words_up_to(3).collect();
    assert_eq!(enumerated(g.core(), 3), all);
}

#[test]
fn power_grammar_matches_direct_powers() {
    for k in 1..=3 {
        for p in 1..=3 {
            let g = build_power_grammar(k, p);
            for maxlen in [0, 1, 5, 6] {
                assert_eq!(
                    enumerated(g.core(), maxlen),
                    direct_powers(k, p, maxlen),
                    "k={k} p={p} maxlen={maxlen}"
                );
            }
        }
    }
}

#[test]
fn square_lig_matches_power_grammar() {
    for k in 1..=3 {
        let lig = build_square_lig(k);
        let indexed = build_power_grammar(k, 2);
        for maxlen in [2, 4, 6] {
            assert_eq!(
                enumerated(lig.core(), maxlen),
                enumerated(indexed.core(), maxlen),
                "k={k} maxlen={maxlen}"
            );
        }
    }
}

#[test]
fn square_lig_small_cases() {
    assert_eq!(
        enumerated(build_square_lig(2).core(), 2),
        words(2, &["", "aa", "bb"])
    );
    assert_eq!(
        enumerated(build_square_lig(1).core(), 4),
        words(1, &["", "aa", "aaaa"])
    );
}

#[test]
fn epsilon_grammars_generate_only_epsilon() {
    for core in [
        build_epsilon_indexed().into_core(),
        build_epsilon_lig().into_core(),
    ] {
        assert_eq!(enumerated(&core, 5), words(1, &[""]));
        let bounds = EnumerationBounds::for_length(5);
        assert_eq!(member(&core, &Word::empty(), &bounds), Ok(true));
        let a = Alphabet::new(1).unwrap().parse_word("a").unwrap();
        assert_eq!(member(&core, &a, &bounds), Ok(false));
    }
}

#[test]
fn successors_of_the_start_form() {
    let g = build_power_grammar(1, 2);
    let start = SententialForm::start(g.core());
    let succs: Vec<String> = derive_successors(g.core(), &start)
        .iter()
        .map(|f| f.display(g.core()))
        .collect();
    assert_eq!(succs, vec!["S[g1]", "T[] T[]"]);
}

#[test]
fn successors_pop_then_emit() {
    let g = build_power_grammar(1, 2);
    let form = SententialForm::from_items(vec![FormItem::Nonterminal(
        NtId(1),
        IndexStack::from_indices(vec![IdxId(0)]),
    )]);
    let succs: Vec<String> = derive_successors(g.core(), &form)
        .iter()
        .map(|f| f.display(g.core()))
        .collect();
    assert_eq!(succs, vec!["a T[]"]);
}

#[test]
fn successors_of_terminal_form_are_empty() {
    let g = build_power_grammar(1, 2);
    let form = SententialForm::from_items(vec![FormItem::Terminal(TermId(0))]);
    assert!(derive_successors(g.core(), &form).is_empty());
}

#[test]
fn successors_rewrite_any_occurrence() {
    // in T[g1] T[g1] either occurrence may fire
    let g = build_power_grammar(1, 2);
    let t = FormItem::Nonterminal(NtId(1), IndexStack::from_indices(vec![IdxId(0)]));
    let form = SententialForm::from_items(vec![t.clone(), t]);
    let succs: Vec<String> = derive_successors(g.core(), &form)
        .iter()
        .map(|f| f.display(g.core()))
        .collect();
    assert_eq!(succs, vec!["a T[] T[g1]", "T[g1] a T[]"]);
}

#[test]
fn membership_in_the_square_language() {
    let g = build_square_lig(3);
    let ab = Alphabet::new(3).unwrap();
    let bounds = EnumerationBounds::for_length(8);
    assert_eq!(
        member(g.core(), &ab.parse_word("abab").unwrap(), &bounds),
        Ok(true)
    );
    assert_eq!(
        member(g.core(), &ab.parse_word("aba").unwrap(), &bounds),
        Ok(false)
    );
    assert_eq!(
        member(g.core(), &ab.parse_word("abcabc").unwrap(), &bounds),
        Ok(true)
    );
}

#[test]
fn membership_in_the_deletable_language() {
    let g = insertion_closure_lig(&build_epsilon_lig(), &build_square_lig(3));
    let ab = Alphabet::new(3).unwrap();
    let bounds = EnumerationBounds::for_length(8);
    assert_eq!(
        member(g.core(), &ab.parse_word("ababbcbc").unwrap(), &bounds),
        Ok(true)
    );
    assert_eq!(
        member(g.core(), &ab.parse_word("abacbc").unwrap(), &bounds),
        Ok(false)
    );
}

#[test]
fn indexed_closure_over_epsilon_gives_even_parity_words() {
    let closure = insertion_closure_indexed(&build_epsilon_indexed(), &build_power_grammar(2, 2));
    let got = enumerated(closure.core(), 6);
    let ab = Alphabet::new(2).unwrap();
    let expected: BTreeSet<Word> = ab
        .words_up_to(6)
        .filter(|w| d22_oracle(w, 2).unwrap())
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn indexed_closure_of_epsilon_into_epsilon() {
    let eps = build_epsilon_indexed();
    let closure = insertion_closure_indexed(&eps, &eps);
    assert_eq!(enumerated(closure.core(), 4), words(1, &[""]));
}

#[test]
fn inserting_epsilon_preserves_the_host_language() {
    let closure = insertion_closure_indexed(&build_power_grammar(2, 2), &build_epsilon_indexed());
    assert_eq!(
        enumerated(closure.core(), 4),
        words(2, &["", "aa", "bb", "aaaa", "abab", "baba", "bbbb"])
    );

    let closure = insertion_closure_lig(&build_square_lig(2), &build_epsilon_lig());
    assert_eq!(
        enumerated(closure.core(), 4),
        enumerated(build_square_lig(2).core(), 4)
    );
}

#[test]
fn lig_closure_over_epsilon_gives_even_parity_words() {
    let closure = insertion_closure_lig(&build_epsilon_lig(), &build_square_lig(2));
    assert_eq!(
        enumerated(closure.core(), 4),
        words(
            2,
            &["", "aa", "bb", "aaaa", "aabb", "abab", "abba", "baab", "baba", "bbaa", "bbbb"]
        )
    );
}

#[test]
fn closure_renames_colliding_symbols() {
    let closure = insertion_closure_indexed(&build_epsilon_indexed(), &build_power_grammar(2, 2));
    let names = closure.core().nonterminals();
    assert_eq!(names, &["S", "S_2", "T", "S'"]);
    assert_eq!(closure.core().nt_name(closure.core().start()), "S");
}

#[test]
fn enumeration_is_stable_under_larger_caps() {
    // the default stack-depth cap does not clip these languages
    let closure = insertion_closure_lig(&build_epsilon_lig(), &build_square_lig(2));
    let defaults = EnumerationBounds::for_length(5);
    let roomy = EnumerationBounds {
        max_stack_depth: defaults.max_stack_depth * 2,
        ..defaults
    };
    let tight = enumerate_language(closure.core(), &defaults);
    let wide = enumerate_language(closure.core(), &roomy);
    assert!(tight.complete && wide.complete);
    assert_eq!(tight.words, wide.words);
}

#[test]
fn json_round_trips_every_builder() {
    let cores = [
        build_power_grammar(3, 2).into_core(),
        build_power_grammar(2, 3).into_core(),
        build_square_lig(3).into_core(),
        build_epsilon_indexed().into_core(),
        insertion_closure_indexed(&build_epsilon_indexed(), &build_power_grammar(2, 2)).into_core(),
        insertion_closure_lig(&build_epsilon_lig(), &build_square_lig(2)).into_core(),
    ];
    for core in cores {
        let doc = core.to_json();
        let reloaded = GrammarCore::from_json(&doc).unwrap();
        assert_eq!(core, reloaded);
        assert_eq!(doc, reloaded.to_json());
    }
}

#[test]
fn json_document_shape() {
    let doc = build_power_grammar(1, 2).core().to_json();
    let v: serde_json::Value = serde_json::from_str(&doc).unwrap();
    assert_eq!(v["nonterminals"], serde_json::json!(["S", "T"]));
    assert_eq!(v["terminals"], serde_json::json!(["a"]));
    assert_eq!(v["indices"], serde_json::json!(["g1"]));
    assert_eq!(v["start"], "S");
    let rules = v["rules"].as_array().unwrap();
    assert_eq!(rules[0]["kind"], "push");
    assert_eq!(rules[0]["rhs"][0]["push"], "g1");
    assert_eq!(rules[1]["kind"], "copy");
    assert!(rules[1].get("lhs_index").is_none());
    assert_eq!(rules[2]["kind"], "pop");
    assert_eq!(rules[2]["lhs_index"], "g1");
    assert_eq!(rules[2]["rhs"][0], serde_json::json!({"t": "a"}));
    assert_eq!(rules[3]["kind"], "empty");
    assert_eq!(rules[3]["rhs"], serde_json::json!([]));
}

#[test]
fn json_rejects_malformed_documents() {
    let missing_index = r#"{
        "nonterminals": ["S"], "terminals": [], "indices": [], "start": "S",
        "rules": [{"kind": "pop", "lhs": "S", "rhs": []}]
    }"#;
    assert!(matches!(
        GrammarCore::from_json(missing_index),
        Err(GrammarError::BadRule { .. })
    ));

    let unknown_symbol = r#"{
        "nonterminals": ["S"], "terminals": [], "indices": [], "start": "S",
        "rules": [{"kind": "copy", "lhs": "S",
                   "rhs": [{"nt": "Q", "carries_stack": true}]}]
    }"#;
    assert_eq!(
        GrammarCore::from_json(unknown_symbol),
        Err(GrammarError::UnknownSymbol("Q".into()))
    );

    let bad_kind = r#"{
        "nonterminals": ["S"], "terminals": [], "indices": [], "start": "S",
        "rules": [{"kind": "swap", "lhs": "S", "rhs": []}]
    }"#;
    assert!(matches!(
        GrammarCore::from_json(bad_kind),
        Err(GrammarError::BadRule { .. })
    ));
}

#[test]
fn construction_rejects_bad_symbol_tables() {
    let dup = GrammarCore::new(
        vec!["S".into(), "S".into()],
        vec![],
        vec![],
        NtId(0),
        vec![],
    );
    assert_eq!(dup.unwrap_err(), GrammarError::DuplicateSymbol("S".into()));

    for name in ["ab", "A", "", "1"] {
        let bad = GrammarCore::new(vec!["S".into()], vec![name.into()], vec![], NtId(0), vec![]);
        assert_eq!(bad.unwrap_err(), GrammarError::BadTerminal(name.into()));
    }
}

#[test]
fn construction_rejects_malformed_rules() {
    // push rule whose carrier names no index
    let r = GrammarCore::new(
        vec!["S".into()],
        vec![],
        vec!["g1".into()],
        NtId(0),
        vec![Rule {
            kind: RuleKind::Push,
            lhs: NtId(0),
            rhs: vec![RhsItem::Nonterminal {
                nt: NtId(0),
                carries_stack: true,
                push: None,
            }],
        }],
    );
    assert!(matches!(
        r.unwrap_err(),
        GrammarError::BadRule { index: 0, .. }
    ));

    // copy rule trying to push
    let r = GrammarCore::new(
        vec!["S".into()],
        vec![],
        vec!["g1".into()],
        NtId(0),
        vec![Rule {
            kind: RuleKind::Copy,
            lhs: NtId(0),
            rhs: vec![RhsItem::Nonterminal {
                nt: NtId(0),
                carries_stack: true,
                push: Some(IdxId(0)),
            }],
        }],
    );
    assert!(matches!(
        r.unwrap_err(),
        GrammarError::BadRule { index: 0, .. }
    ));

    // empty-stack rule with a stack carrier
    let r = GrammarCore::new(
        vec!["S".into()],
        vec![],
        vec![],
        NtId(0),
        vec![Rule {
            kind: RuleKind::Empty,
            lhs: NtId(0),
            rhs: vec![RhsItem::Nonterminal {
                nt: NtId(0),
                carries_stack: true,
                push: None,
            }],
        }],
    );
    assert!(matches!(
        r.unwrap_err(),
        GrammarError::BadRule { index: 0, .. }
    ));
}

#[test]
fn class_validation_separates_the_shapes() {
    // the square grammar's push rules emit a terminal, which the indexed
    // shape forbids
    let lig_core = build_square_lig(2).into_core();
    assert!(matches!(
        IndexedGrammar::new(lig_core),
        Err(GrammarError::NotIndexed(_))
    ));

    // the power grammar at p=2 copies its stack to two nonterminals, which
    // the linear shape forbids
    let indexed_core = build_power_grammar(2, 2).into_core();
    assert!(matches!(
        LinearIndexedGrammar::new(indexed_core),
        Err(GrammarError::NotLinear(_))
    ));

    // at p=1 the copy rule has a single carrier, so both shapes accept it
    let both = build_power_grammar(2, 1).into_core();
    assert!(IndexedGrammar::new(both.clone()).is_ok());
    assert!(LinearIndexedGrammar::new(both).is_ok());
}

#[test]
fn stacks_flow_as_declared() {
    // push from S, then copy splits the stack to both T's, pops drain it
    let g = build_power_grammar(2, 2);
    let core = g.core();
    let start = SententialForm::start(core);
    let after_push = derive_successors(core, &start)
        .into_iter()
        .find(|f| f.display(core) == "S[g1]")
        .unwrap();
    let after_copy = derive_successors(core, &after_push)
        .into_iter()
        .find(|f| f.display(core) == "T[g1] T[g1]")
        .unwrap();
    let after_pop: Vec<String> = derive_successors(core, &after_copy)
        .iter()
        .map(|f| f.display(core))
        .collect();
    assert_eq!(after_pop, vec!["a T[] T[g1]", "T[g1] a T[]"]);
}
