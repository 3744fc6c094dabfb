//! Single derivation steps.

use std::collections::BTreeSet;

use super::{FormItem, GrammarCore, IndexStack, RhsItem, Rule, RuleKind, SententialForm};

/// The right-hand side of `rule` instantiated against a nonterminal whose
/// stack is `stack`, or `None` when the rule does not apply to that stack.
pub(crate) fn instantiate(rule: &Rule, stack: &IndexStack) -> Option<Vec<FormItem>> {
    let carried: IndexStack = match rule.kind {
        RuleKind::Copy | RuleKind::Push => stack.clone(),
        RuleKind::Pop(idx) => {
            if stack.top() != Some(idx) {
                return None;
            }
            stack.popped().unwrap()
        }
        RuleKind::Empty => {
            if !stack.is_empty() {
                return None;
            }
            IndexStack::empty()
        }
    };
    let items = rule
        .rhs
        .iter()
        .map(|item| match *item {
            RhsItem::Terminal(t) => FormItem::Terminal(t),
            RhsItem::Nonterminal {
                nt,
                carries_stack,
                push,
            } => {
                let stack = if !carries_stack {
                    IndexStack::empty()
                } else if let Some(idx) = push {
                    carried.pushed(idx)
                } else {
                    carried.clone()
                };
                FormItem::Nonterminal(nt, stack)
            }
        })
        .collect();
    Some(items)
}

pub(crate) fn splice(
    form: &SententialForm,
    at: usize,
    replacement: Vec<FormItem>,
) -> SententialForm {
    let items = form.items();
    let mut out = Vec::with_capacity(items.len() - 1 + replacement.len());
    out.extend_from_slice(&items[..at]);
    out.extend(replacement);
    out.extend_from_slice(&items[at + 1..]);
    SententialForm::from_items(out)
}

/// Expands the nonterminal at `at` in every applicable way.
pub(crate) fn expand_at(
    grammar: &GrammarCore,
    form: &SententialForm,
    at: usize,
    out: &mut Vec<SententialForm>,
) {
    let FormItem::Nonterminal(nt, stack) = &form.items()[at] else {
        return;
    };
    for rule in grammar.rules_for(*nt) {
        if let Some(items) = instantiate(rule, stack) {
            out.push(splice(form, at, items));
        }
    }
}

/// All forms reachable from `form` in one derivation step, rewriting any
/// one nonterminal occurrence.
pub fn derive_successors(grammar: &GrammarCore, form: &SententialForm) -> BTreeSet<SententialForm> {
    let mut buf = Vec::new();
    for at in 0..form.len() {
        expand_at(grammar, form, at, &mut buf);
    }
    buf.into_iter().collect()
}
