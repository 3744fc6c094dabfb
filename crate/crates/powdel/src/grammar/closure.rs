//! Grammars for iterated insertion.
//!
//! Given grammars for L1 and L2, these build a grammar for the closure of
//! L1 under insertion of L2 words: every word obtained from some L1 word
//! by repeatedly splicing L2 words into arbitrary positions. The combined
//! grammar keeps the rules of both inputs (renaming colliding nonterminal
//! and index names) and adds, for each original rule, variants with one
//! extra "insert here" nonterminal at each right-hand-side position; the
//! variants of L2's own rules are what make the insertion iterate.

use super::{
    GrammarCore, IdxId, IndexedGrammar, LinearIndexedGrammar, NtId, RhsItem, Rule, RuleKind, TermId,
};

struct Merged {
    nonterminals: Vec<String>,
    terminals: Vec<String>,
    indices: Vec<String>,
    rules: Vec<Rule>,
    g2_start: NtId,
}

fn fresh_name(base: &str, suffix: &str, used: &[String]) -> String {
    let mut name = base.to_string();
    while used.iter().any(|n| n == &name) {
        name.push_str(suffix);
    }
    name
}

/// Side-by-side union of two grammars: G1's symbols keep their ids, G2's
/// nonterminals and indices are renamed away from collisions (terminals
/// are letters and merge by identity), and both rule lists are kept.
fn merge(g1: &GrammarCore, g2: &GrammarCore) -> Merged {
    let mut nonterminals = g1.nonterminals().to_vec();
    let nt_map: Vec<NtId> = g2
        .nonterminals()
        .iter()
        .map(|name| {
            let fresh = fresh_name(name, "_2", &nonterminals);
            nonterminals.push(fresh);
            NtId((nonterminals.len() - 1) as u16)
        })
        .collect();

    let mut indices = g1.indices().to_vec();
    let idx_map: Vec<IdxId> = g2
        .indices()
        .iter()
        .map(|name| {
            let fresh = fresh_name(name, "_2", &indices);
            indices.push(fresh);
            IdxId((indices.len() - 1) as u16)
        })
        .collect();

    let mut terminals = g1.terminals().to_vec();
    let term_map: Vec<TermId> = g2
        .terminals()
        .iter()
        .map(|name| {
            if let Some(at) = terminals.iter().position(|t| t == name) {
                TermId(at as u16)
            } else {
                terminals.push(name.clone());
                TermId((terminals.len() - 1) as u16)
            }
        })
        .collect();

    let remap = |rule: &Rule| Rule {
        kind: match rule.kind {
            RuleKind::Pop(idx) => RuleKind::Pop(idx_map[idx.0 as usize]),
            other => other,
        },
        lhs: nt_map[rule.lhs.0 as usize],
        rhs: rule
            .rhs
            .iter()
            .map(|item| match *item {
                RhsItem::Terminal(t) => RhsItem::Terminal(term_map[t.0 as usize]),
                RhsItem::Nonterminal {
                    nt,
                    carries_stack,
                    push,
                } => RhsItem::Nonterminal {
                    nt: nt_map[nt.0 as usize],
                    carries_stack,
                    push: push.map(|i| idx_map[i.0 as usize]),
                },
            })
            .collect(),
    };

    let mut rules = g1.rules().to_vec();
    rules.extend(g2.rules().iter().map(remap));

    Merged {
        nonterminals,
        terminals,
        indices,
        rules,
        g2_start: nt_map[g2.start().0 as usize],
    }
}

fn with_insertion(rule: &Rule, at: usize, item: RhsItem) -> Rule {
    let mut rhs = Vec::with_capacity(rule.rhs.len() + 1);
    rhs.extend_from_slice(&rule.rhs[..at]);
    rhs.push(item);
    rhs.extend_from_slice(&rule.rhs[at..]);
    Rule {
        kind: rule.kind,
        lhs: rule.lhs,
        rhs,
    }
}

/// Closure of L(G1) under insertion of L(G2) words, staying indexed.
///
/// Indexed copy and pop rules hand the whole stack to every right-hand
/// nonterminal, so the inserted symbol S' receives it too; dedicated pop
/// rules let S' shed that inherited stack one index at a time, and once
/// empty it hands over to G2's start. Push rules need no variants: their
/// right-hand side is a lone nonterminal, so every position between
/// terminals of the derived word is already exposed by some copy, pop, or
/// empty rule.
pub fn insertion_closure_indexed(g1: &IndexedGrammar, g2: &IndexedGrammar) -> IndexedGrammar {
    let merged = merge(g1.core(), g2.core());
    let Merged {
        mut nonterminals,
        terminals,
        indices,
        mut rules,
        g2_start,
    } = merged;

    let sprime_name = fresh_name("S'", "'", &nonterminals);
    nonterminals.push(sprime_name);
    let sprime = NtId((nonterminals.len() - 1) as u16);

    let mut variants = Vec::new();
    for rule in &rules {
        let carries = match rule.kind {
            RuleKind::Copy | RuleKind::Pop(_) => true,
            RuleKind::Empty => false,
            RuleKind::Push => continue,
        };
        let item = RhsItem::Nonterminal {
            nt: sprime,
            carries_stack: carries,
            push: None,
        };
        for at in 0..=rule.rhs.len() {
            variants.push(with_insertion(rule, at, item));
        }
    }
    rules.extend(variants);

    for i in 0..indices.len() {
        rules.push(Rule {
            kind: RuleKind::Pop(IdxId(i as u16)),
            lhs: sprime,
            rhs: vec![RhsItem::Nonterminal {
                nt: sprime,
                carries_stack: true,
                push: None,
            }],
        });
    }
    rules.push(Rule {
        kind: RuleKind::Empty,
        lhs: sprime,
        rhs: vec![RhsItem::Nonterminal {
            nt: g2_start,
            carries_stack: false,
            push: None,
        }],
    });

    let core = GrammarCore::new(nonterminals, terminals, indices, g1.core().start(), rules)
        .expect("closure grammar is well formed");
    IndexedGrammar::new(core).expect("closure grammar is indexed")
}

/// Closure of L(G1) under insertion of L(G2) words, staying linear.
///
/// Linear rules thread the stack through a single carrier, so the inserted
/// G2 start goes in directly with an empty stack at every position of
/// every rule. Push rules are included here: in a linear grammar they may
/// produce terminals, so they expose insertion points of their own.
pub fn insertion_closure_lig(
    g1: &LinearIndexedGrammar,
    g2: &LinearIndexedGrammar,
) -> LinearIndexedGrammar {
    let merged = merge(g1.core(), g2.core());
    let Merged {
        nonterminals,
        terminals,
        indices,
        mut rules,
        g2_start,
    } = merged;

    let item = RhsItem::Nonterminal {
        nt: g2_start,
        carries_stack: false,
        push: None,
    };
    let mut variants = Vec::new();
    for rule in &rules {
        for at in 0..=rule.rhs.len() {
            variants.push(with_insertion(rule, at, item));
        }
    }
    rules.extend(variants);

    let core = GrammarCore::new(nonterminals, terminals, indices, g1.core().start(), rules)
        .expect("closure grammar is well formed");
    LinearIndexedGrammar::new(core).expect("closure grammar is linear")
}
