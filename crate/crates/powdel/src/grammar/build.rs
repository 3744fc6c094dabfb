//! The stock grammars: powers, squares, and the ε language.

use super::{
    GrammarCore, IdxId, IndexedGrammar, LinearIndexedGrammar, NtId, RhsItem, Rule, RuleKind, TermId,
};
use crate::word::MAX_ALPHABET;

fn letter_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

fn index_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("g{i}")).collect()
}

const S: NtId = NtId(0);
const T: NtId = NtId(1);

/// Indexed grammar for the p-th powers over k letters:
/// S pushes any sequence of indices (spelling the repeated block in
/// reverse), then splits into p copies of T, each of which pops the
/// stack back into the block.
///
/// ```text
/// S[s]    -> S[g_i s]          for each letter i
/// S[s]    -> T[s] ... T[s]     (p copies)
/// T[g_i s] -> a_i T[s]
/// T[]     -> e
/// ```
pub fn build_power_grammar(k: usize, p: usize) -> IndexedGrammar {
    assert!(
        (1..=MAX_ALPHABET).contains(&k),
        "alphabet size {k} out of range"
    );
    assert!(p >= 1, "exponent must be positive");
    let mut rules = Vec::new();
    for i in 0..k {
        rules.push(Rule {
            kind: RuleKind::Push,
            lhs: S,
            rhs: vec![RhsItem::Nonterminal {
                nt: S,
                carries_stack: true,
                push: Some(IdxId(i as u16)),
            }],
        });
    }
    rules.push(Rule {
        kind: RuleKind::Copy,
        lhs: S,
        rhs: vec![
            RhsItem::Nonterminal {
                nt: T,
                carries_stack: true,
                push: None
            };
            p
        ],
    });
    for i in 0..k {
        rules.push(Rule {
            kind: RuleKind::Pop(IdxId(i as u16)),
            lhs: T,
            rhs: vec![
                RhsItem::Terminal(TermId(i as u16)),
                RhsItem::Nonterminal {
                    nt: T,
                    carries_stack: true,
                    push: None,
                },
            ],
        });
    }
    rules.push(Rule {
        kind: RuleKind::Empty,
        lhs: T,
        rhs: vec![],
    });

    let core = GrammarCore::new(
        vec!["S".into(), "T".into()],
        letter_names(k),
        index_names(k),
        S,
        rules,
    )
    .expect("power grammar is well formed");
    IndexedGrammar::new(core).expect("power grammar is indexed")
}

/// Linear indexed grammar for the squares over k letters: S emits the
/// first half left to right while pushing its letters, T replays the
/// stack right to left, emitting the second half.
///
/// ```text
/// S[s]     -> a_i S[g_i s]
/// S[s]     -> T[s]
/// T[g_i s] -> T[s] a_i
/// T[]      -> e
/// ```
pub fn build_square_lig(k: usize) -> LinearIndexedGrammar {
    assert!(
        (1..=MAX_ALPHABET).contains(&k),
        "alphabet size {k} out of range"
    );
    let mut rules = Vec::new();
    for i in 0..k {
        rules.push(Rule {
            kind: RuleKind::Push,
            lhs: S,
            rhs: vec![
                RhsItem::Terminal(TermId(i as u16)),
                RhsItem::Nonterminal {
                    nt: S,
                    carries_stack: true,
                    push: Some(IdxId(i as u16)),
                },
            ],
        });
    }
    rules.push(Rule {
        kind: RuleKind::Copy,
        lhs: S,
        rhs: vec![RhsItem::Nonterminal {
            nt: T,
            carries_stack: true,
            push: None,
        }],
    });
    for i in 0..k {
        rules.push(Rule {
            kind: RuleKind::Pop(IdxId(i as u16)),
            lhs: T,
            rhs: vec![
                RhsItem::Nonterminal {
                    nt: T,
                    carries_stack: true,
                    push: None,
                },
                RhsItem::Terminal(TermId(i as u16)),
            ],
        });
    }
    rules.push(Rule {
        kind: RuleKind::Empty,
        lhs: T,
        rhs: vec![],
    });

    let core = GrammarCore::new(
        vec!["S".into(), "T".into()],
        letter_names(k),
        index_names(k),
        S,
        rules,
    )
    .expect("square grammar is well formed");
    LinearIndexedGrammar::new(core).expect("square grammar is linear")
}

fn epsilon_core() -> GrammarCore {
    GrammarCore::new(
        vec!["S".into()],
        vec![],
        vec![],
        S,
        vec![Rule {
            kind: RuleKind::Empty,
            lhs: S,
            rhs: vec![],
        }],
    )
    .expect("epsilon grammar is well formed")
}

/// The one-rule grammar S[] -> ε with language {ε}.
pub fn build_epsilon_indexed() -> IndexedGrammar {
    IndexedGrammar::new(epsilon_core()).expect("epsilon grammar is indexed")
}

/// The same grammar packaged as a linear indexed grammar.
pub fn build_epsilon_lig() -> LinearIndexedGrammar {
    LinearIndexedGrammar::new(epsilon_core()).expect("epsilon grammar is linear")
}
