//! Grammar (de)serialization.
//!
//! Rules name symbols rather than numbering them, so documents survive
//! symbol reordering and are directly editable:
//!
//! ```json
//! {
//!   "nonterminals": ["S", "T"],
//!   "terminals": ["a"],
//!   "indices": ["g1"],
//!   "start": "S",
//!   "rules": [
//!     { "kind": "push", "lhs": "S",
//!       "rhs": [ { "nt": "S", "carries_stack": true, "push": "g1" } ] },
//!     { "kind": "pop", "lhs": "T", "lhs_index": "g1",
//!       "rhs": [ { "t": "a" }, { "nt": "T", "carries_stack": true } ] }
//!   ]
//! }
//! ```

use serde::{Deserialize, Serialize};

use super::{GrammarCore, GrammarError, RhsItem, Rule, RuleKind};

#[derive(Serialize, Deserialize)]
struct GrammarDoc {
    nonterminals: Vec<String>,
    terminals: Vec<String>,
    indices: Vec<String>,
    start: String,
    rules: Vec<RuleDoc>,
}

#[derive(Serialize, Deserialize)]
struct RuleDoc {
    kind: String,
    lhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lhs_index: Option<String>,
    rhs: Vec<RhsDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RhsDoc {
    Terminal {
        t: String,
    },
    Nonterminal {
        nt: String,
        carries_stack: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        push: Option<String>,
    },
}

pub(super) fn to_json(grammar: &GrammarCore) -> String {
    let doc = GrammarDoc {
        nonterminals: grammar.nonterminals().to_vec(),
        terminals: grammar.terminals().to_vec(),
        indices: grammar.indices().to_vec(),
        start: grammar.nt_name(grammar.start()).to_string(),
        rules: grammar
            .rules()
            .iter()
            .map(|rule| RuleDoc {
                kind: match rule.kind {
                    RuleKind::Copy => "copy",
                    RuleKind::Push => "push",
                    RuleKind::Pop(_) => "pop",
                    RuleKind::Empty => "empty",
                }
                .to_string(),
                lhs: grammar.nt_name(rule.lhs).to_string(),
                lhs_index: match rule.kind {
                    RuleKind::Pop(idx) => Some(grammar.index_name(idx).to_string()),
                    _ => None,
                },
                rhs: rule
                    .rhs
                    .iter()
                    .map(|item| match *item {
                        RhsItem::Terminal(t) => RhsDoc::Terminal {
                            t: grammar.terminal_name(t).to_string(),
                        },
                        RhsItem::Nonterminal {
                            nt,
                            carries_stack,
                            push,
                        } => RhsDoc::Nonterminal {
                            nt: grammar.nt_name(nt).to_string(),
                            carries_stack,
                            push: push.map(|i| grammar.index_name(i).to_string()),
                        },
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("grammar serializes");
    out.push('\n');
    out
}

pub(super) fn from_json(doc: &str) -> Result<GrammarCore, GrammarError> {
    let doc: GrammarDoc =
        serde_json::from_str(doc).map_err(|e| GrammarError::Json(e.to_string()))?;
    let find = |set: &[String], name: &str| -> Result<u16, GrammarError> {
        set.iter()
            .position(|n| n == name)
            .map(|i| i as u16)
            .ok_or_else(|| GrammarError::UnknownSymbol(name.to_string()))
    };
    let start = super::NtId(find(&doc.nonterminals, &doc.start)?);
    let mut rules = Vec::with_capacity(doc.rules.len());
    for (i, rule) in doc.rules.iter().enumerate() {
        let kind = match rule.kind.as_str() {
            "copy" => RuleKind::Copy,
            "push" => RuleKind::Push,
            "pop" => {
                let name = rule
                    .lhs_index
                    .as_deref()
                    .ok_or_else(|| GrammarError::BadRule {
                        index: i,
                        reason: "pop rule needs lhs_index".into(),
                    })?;
                RuleKind::Pop(super::IdxId(find(&doc.indices, name)?))
            }
            "empty" => RuleKind::Empty,
            other => {
                return Err(GrammarError::BadRule {
                    index: i,
                    reason: format!("unknown rule kind {other:?}"),
                })
            }
        };
        if !matches!(kind, RuleKind::Pop(_)) && rule.lhs_index.is_some() {
            return Err(GrammarError::BadRule {
                index: i,
                reason: "lhs_index is only meaningful on pop rules".into(),
            });
        }
        let mut rhs = Vec::with_capacity(rule.rhs.len());
        for item in &rule.rhs {
            rhs.push(match item {
                RhsDoc::Terminal { t } => {
                    RhsItem::Terminal(super::TermId(find(&doc.terminals, t)?))
                }
                RhsDoc::Nonterminal {
                    nt,
                    carries_stack,
                    push,
                } => RhsItem::Nonterminal {
                    nt: super::NtId(find(&doc.nonterminals, nt)?),
                    carries_stack: *carries_stack,
                    push: push
                        .as_deref()
                        .map(|p| find(&doc.indices, p).map(super::IdxId))
                        .transpose()?,
                },
            });
        }
        rules.push(Rule {
            kind,
            lhs: super::NtId(find(&doc.nonterminals, &rule.lhs)?),
            rhs,
        });
    }
    GrammarCore::new(doc.nonterminals, doc.terminals, doc.indices, start, rules)
}
