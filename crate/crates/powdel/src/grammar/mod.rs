//! Indexed and linear indexed grammar engine.
//!
//! Both grammar classes are 5-tuples (N, T, I, P, S) whose nonterminals
//! carry stacks of index symbols. Rules come in four kinds:
//!
//! * `copy`  — `A[σ] -> α[σ]`: stack-carrying right-hand nonterminals
//!   receive the whole stack, the rest receive an empty stack.
//! * `push`  — `A[σ] -> ... B[γσ] ...`: the carrying nonterminal receives
//!   the stack with `γ` pushed on top.
//! * `pop`   — `A[γσ] -> α[σ]`: applicable only when the top of the stack
//!   is `γ`; carrying nonterminals receive the popped stack.
//! * `empty` — `A[] -> α`: applicable only when the stack is empty; every
//!   right-hand nonterminal receives an empty stack. The classic rule
//!   forms alone cannot express a rule that fires exclusively on the
//!   empty stack, and the example grammars are wrong without one, so the
//!   engine carries it as an explicit kind.
//!
//! An *indexed* grammar copies the stack to every right-hand nonterminal
//! (its `push` rules have a single nonterminal on the right); a *linear
//! indexed* grammar passes the stack to exactly one. Both shapes share the
//! same rule representation, distinguished by per-occurrence
//! `carries_stack` flags, and the same derivation engine; the
//! [`IndexedGrammar`] and [`LinearIndexedGrammar`] wrappers validate the
//! shape they promise.

mod build;
mod closure;
mod derive;
mod enumerate;
mod json;
#[cfg(test)]
mod tests;

pub use build::{build_epsilon_indexed, build_epsilon_lig, build_power_grammar, build_square_lig};
pub use closure::{insertion_closure_indexed, insertion_closure_lig};
pub use derive::derive_successors;
pub use enumerate::{
    enumerate_language, form_language, member, EnumerationBounds, EnumerationResult,
};

use std::fmt;

use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrammarError {
    #[error("duplicate symbol name {0:?}")]
    DuplicateSymbol(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("terminal {0:?} must be a single lowercase ASCII letter")]
    BadTerminal(String),
    #[error("rule {index}: {reason}")]
    BadRule { index: usize, reason: String },
    #[error("not an indexed grammar: {0}")]
    NotIndexed(String),
    #[error("not a linear indexed grammar: {0}")]
    NotLinear(String),
    #[error("invalid grammar document: {0}")]
    Json(String),
    #[error("search exhausted its budget before deciding membership")]
    IncompleteSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NtId(pub u16);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(pub u16);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdxId(pub u16);

/// A stack of index symbols; position 0 is the top, matching the `γσ`
/// notation where the new symbol is written in front.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexStack(Vec<IdxId>);

impl IndexStack {
    pub fn empty() -> Self {
        IndexStack(Vec::new())
    }

    pub fn from_indices(indices: Vec<IdxId>) -> Self {
        IndexStack(indices)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn top(&self) -> Option<IdxId> {
        self.0.first().copied()
    }

    /// The stack `γσ` obtained by pushing `γ` onto `σ = self`.
    pub fn pushed(&self, idx: IdxId) -> IndexStack {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(idx);
        v.extend_from_slice(&self.0);
        IndexStack(v)
    }

    /// The stack below the top, if any.
    pub fn popped(&self) -> Option<IndexStack> {
        if self.0.is_empty() {
            None
        } else {
            Some(IndexStack(self.0[1..].to_vec()))
        }
    }

    pub fn indices(&self) -> &[IdxId] {
        &self.0
    }
}

impl fmt::Debug for IndexStack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, idx) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", idx.0)?;
        }
        write!(f, "]")
    }
}

/// One right-hand-side symbol of a rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RhsItem {
    Terminal(TermId),
    Nonterminal {
        nt: NtId,
        /// Receives the rule's distinguished stack (per the rule kind);
        /// non-carrying occurrences receive an empty stack.
        carries_stack: bool,
        /// For `push` rules: the index pushed for this occurrence.
        push: Option<IdxId>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    Copy,
    Push,
    Pop(IdxId),
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub kind: RuleKind,
    pub lhs: NtId,
    pub rhs: Vec<RhsItem>,
}

/// The shared 5-tuple behind both grammar classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrammarCore {
    nonterminals: Vec<String>,
    terminals: Vec<String>,
    indices: Vec<String>,
    start: NtId,
    rules: Vec<Rule>,
    rules_by_lhs: Vec<Vec<u32>>,
}

impl GrammarCore {
    pub fn new(
        nonterminals: Vec<String>,
        terminals: Vec<String>,
        indices: Vec<String>,
        start: NtId,
        rules: Vec<Rule>,
    ) -> Result<Self, GrammarError> {
        for set in [&nonterminals, &terminals, &indices] {
            for (i, name) in set.iter().enumerate() {
                if set[..i].contains(name) {
                    return Err(GrammarError::DuplicateSymbol(name.clone()));
                }
            }
        }
        for name in &terminals {
            let mut chars = name.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii_lowercase() => {}
                _ => return Err(GrammarError::BadTerminal(name.clone())),
            }
        }
        if start.0 as usize >= nonterminals.len() {
            return Err(GrammarError::UnknownSymbol(format!("start #{}", start.0)));
        }

        let mut rules_by_lhs = vec![Vec::new(); nonterminals.len()];
        for (i, rule) in rules.iter().enumerate() {
            Self::check_rule(i, rule, nonterminals.len(), terminals.len(), indices.len())?;
            rules_by_lhs[rule.lhs.0 as usize].push(i as u32);
        }
        Ok(GrammarCore {
            nonterminals,
            terminals,
            indices,
            start,
            rules,
            rules_by_lhs,
        })
    }

    fn check_rule(
        index: usize,
        rule: &Rule,
        n_nts: usize,
        n_terms: usize,
        n_indices: usize,
    ) -> Result<(), GrammarError> {
        let bad = |reason: String| GrammarError::BadRule { index, reason };
        if rule.lhs.0 as usize >= n_nts {
            return Err(bad(format!(
                "left-hand nonterminal #{} undeclared",
                rule.lhs.0
            )));
        }
        if let RuleKind::Pop(idx) = rule.kind {
            if idx.0 as usize >= n_indices {
                return Err(bad(format!("pop index #{} undeclared", idx.0)));
            }
        }
        let mut carriers = 0usize;
        for item in &rule.rhs {
            match *item {
                RhsItem::Terminal(t) => {
                    if t.0 as usize >= n_terms {
                        return Err(bad(format!("terminal #{} undeclared", t.0)));
                    }
                }
                RhsItem::Nonterminal {
                    nt,
                    carries_stack,
                    push,
                } => {
                    if nt.0 as usize >= n_nts {
                        return Err(bad(format!("nonterminal #{} undeclared", nt.0)));
                    }
                    if let Some(idx) = push {
                        if idx.0 as usize >= n_indices {
                            return Err(bad(format!("push index #{} undeclared", idx.0)));
                        }
                    }
                    if carries_stack {
                        carriers += 1;
                    }
                    match rule.kind {
                        RuleKind::Push => {
                            if carries_stack && push.is_none() {
                                return Err(bad(
                                    "push rule carrier must name the pushed index".into()
                                ));
                            }
                            if !carries_stack && push.is_some() {
                                return Err(bad(
                                    "only the stack carrier of a push rule may push".into()
                                ));
                            }
                        }
                        _ => {
                            if push.is_some() {
                                return Err(bad("only push rules may push an index".into()));
                            }
                        }
                    }
                }
            }
        }
        match rule.kind {
            RuleKind::Push => {
                if carriers != 1 {
                    return Err(bad(format!(
                        "push rule needs exactly one stack carrier, found {carriers}"
                    )));
                }
            }
            RuleKind::Empty => {
                if carriers != 0 {
                    return Err(bad(
                        "empty-stack rule right-hand side carries no stack".into()
                    ));
                }
            }
            RuleKind::Copy | RuleKind::Pop(_) => {}
        }
        Ok(())
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[String] {
        &self.terminals
    }

    pub fn indices(&self) -> &[String] {
        &self.indices
    }

    pub fn start(&self) -> NtId {
        self.start
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rules_for(&self, nt: NtId) -> impl Iterator<Item = &Rule> {
        self.rules_by_lhs[nt.0 as usize]
            .iter()
            .map(move |&i| &self.rules[i as usize])
    }

    pub fn nt_name(&self, nt: NtId) -> &str {
        &self.nonterminals[nt.0 as usize]
    }

    pub fn terminal_name(&self, t: TermId) -> &str {
        &self.terminals[t.0 as usize]
    }

    pub fn index_name(&self, idx: IdxId) -> &str {
        &self.indices[idx.0 as usize]
    }

    pub fn nt_id(&self, name: &str) -> Option<NtId> {
        self.nonterminals
            .iter()
            .position(|n| n == name)
            .map(|i| NtId(i as u16))
    }

    pub fn terminal_id(&self, name: &str) -> Option<TermId> {
        self.terminals
            .iter()
            .position(|n| n == name)
            .map(|i| TermId(i as u16))
    }

    pub fn index_id(&self, name: &str) -> Option<IdxId> {
        self.indices
            .iter()
            .position(|n| n == name)
            .map(|i| IdxId(i as u16))
    }

    /// Letter index of a terminal (terminals are single `a..=z` letters).
    pub fn terminal_letter(&self, t: TermId) -> u8 {
        self.terminals[t.0 as usize].as_bytes()[0] - b'a'
    }

    /// Checks the indexed-grammar shape: copy and pop rules pass the stack
    /// to every right-hand nonterminal, push rules have a lone carrier.
    pub fn validate_indexed(&self) -> Result<(), GrammarError> {
        for (i, rule) in self.rules.iter().enumerate() {
            let nts: Vec<_> = rule
                .rhs
                .iter()
                .filter_map(|item| match *item {
                    RhsItem::Nonterminal { carries_stack, .. } => Some(carries_stack),
                    RhsItem::Terminal(_) => None,
                })
                .collect();
            match rule.kind {
                RuleKind::Copy | RuleKind::Pop(_) => {
                    if nts.iter().any(|&c| !c) {
                        return Err(GrammarError::NotIndexed(format!(
                            "rule {i} copies the stack to only some nonterminals"
                        )));
                    }
                }
                RuleKind::Push => {
                    if rule.rhs.len() != 1 || nts.len() != 1 {
                        return Err(GrammarError::NotIndexed(format!(
                            "rule {i}: a push rule rewrites to a single nonterminal"
                        )));
                    }
                }
                RuleKind::Empty => {}
            }
        }
        Ok(())
    }

    /// Checks the linear-indexed shape: every stack-manipulating rule has
    /// exactly one stack carrier.
    pub fn validate_linear(&self) -> Result<(), GrammarError> {
        for (i, rule) in self.rules.iter().enumerate() {
            let carriers = rule
                .rhs
                .iter()
                .filter(|item| {
                    matches!(
                        item,
                        RhsItem::Nonterminal {
                            carries_stack: true,
                            ..
                        }
                    )
                })
                .count();
            match rule.kind {
                RuleKind::Copy | RuleKind::Push | RuleKind::Pop(_) => {
                    if carriers != 1 {
                        return Err(GrammarError::NotLinear(format!(
                            "rule {i} has {carriers} stack carriers, expected exactly one"
                        )));
                    }
                }
                RuleKind::Empty => {}
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        json::to_json(self)
    }

    pub fn from_json(doc: &str) -> Result<GrammarCore, GrammarError> {
        json::from_json(doc)
    }

    fn display_rule(&self, rule: &Rule) -> String {
        let mut out = String::new();
        out.push_str(self.nt_name(rule.lhs));
        match rule.kind {
            RuleKind::Copy | RuleKind::Push => out.push_str("[s]"),
            RuleKind::Pop(idx) => out.push_str(&format!("[{} s]", self.index_name(idx))),
            RuleKind::Empty => out.push_str("[]"),
        }
        out.push_str(" ->");
        if rule.rhs.is_empty() {
            out.push_str(" e");
        }
        for item in &rule.rhs {
            out.push(' ');
            match *item {
                RhsItem::Terminal(t) => out.push_str(self.terminal_name(t)),
                RhsItem::Nonterminal {
                    nt,
                    carries_stack,
                    push,
                } => {
                    out.push_str(self.nt_name(nt));
                    match (carries_stack, push) {
                        (true, Some(idx)) => out.push_str(&format!("[{} s]", self.index_name(idx))),
                        (true, None) => out.push_str(match rule.kind {
                            RuleKind::Empty => "[]",
                            _ => "[s]",
                        }),
                        (false, _) => out.push_str("[]"),
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for GrammarCore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start: {}", self.nt_name(self.start))?;
        for rule in &self.rules {
            writeln!(f, "{}", self.display_rule(rule))?;
        }
        Ok(())
    }
}

/// An indexed grammar: a [`GrammarCore`] validated to the indexed shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedGrammar {
    core: GrammarCore,
}

impl IndexedGrammar {
    pub fn new(core: GrammarCore) -> Result<Self, GrammarError> {
        core.validate_indexed()?;
        Ok(IndexedGrammar { core })
    }

    pub fn core(&self) -> &GrammarCore {
        &self.core
    }

    pub fn into_core(self) -> GrammarCore {
        self.core
    }
}

/// A linear indexed grammar: a [`GrammarCore`] validated to pass its stack
/// to exactly one nonterminal per rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearIndexedGrammar {
    core: GrammarCore,
}

impl LinearIndexedGrammar {
    pub fn new(core: GrammarCore) -> Result<Self, GrammarError> {
        core.validate_linear()?;
        Ok(LinearIndexedGrammar { core })
    }

    pub fn core(&self) -> &GrammarCore {
        &self.core
    }

    pub fn into_core(self) -> GrammarCore {
        self.core
    }
}

/// One derivation state: terminals interleaved with stack-carrying
/// nonterminals. A form with no nonterminals is a terminal word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SententialForm {
    items: Vec<FormItem>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormItem {
    Terminal(TermId),
    Nonterminal(NtId, IndexStack),
}

impl SententialForm {
    /// The start form `S[]`.
    pub fn start(grammar: &GrammarCore) -> Self {
        SententialForm {
            items: vec![FormItem::Nonterminal(grammar.start(), IndexStack::empty())],
        }
    }

    pub fn from_items(items: Vec<FormItem>) -> Self {
        SententialForm { items }
    }

    pub fn items(&self) -> &[FormItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn terminal_count(&self) -> usize {
        self.items
            .iter()
            .filter(|i| matches!(i, FormItem::Terminal(_)))
            .count()
    }

    pub fn first_nonterminal(&self) -> Option<usize> {
        self.items
            .iter()
            .position(|i| matches!(i, FormItem::Nonterminal(..)))
    }

    pub fn is_all_terminal(&self) -> bool {
        self.first_nonterminal().is_none()
    }

    /// The word spelled by an all-terminal form.
    pub fn to_word(&self, grammar: &GrammarCore) -> Option<Word> {
        let mut letters = Vec::with_capacity(self.items.len());
        for item in &self.items {
            match item {
                FormItem::Terminal(t) => letters.push(grammar.terminal_letter(*t)),
                FormItem::Nonterminal(..) => return None,
            }
        }
        Some(Word::from_letters(letters))
    }

    pub fn display(&self, grammar: &GrammarCore) -> String {
        if self.items.is_empty() {
            return "e".to_string();
        }
        let mut out = String::new();
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            match item {
                FormItem::Terminal(t) => out.push_str(grammar.terminal_name(*t)),
                FormItem::Nonterminal(nt, stack) => {
                    out.push_str(grammar.nt_name(*nt));
                    out.push('[');
                    for (j, idx) in stack.indices().iter().enumerate() {
                        if j > 0 {
                            out.push(' ');
                        }
                        out.push_str(grammar.index_name(*idx));
                    }
                    out.push(']');
                }
            }
        }
        out
    }
}

impl fmt::Debug for SententialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({:?})", self.items)
    }
}
