//! Distinguishing suffixes for the 2-deletable language.
//!
//! The prefixes w_1 ⊂ w_2 ⊂ ... of the square-free generator fall into
//! distinct left-quotient classes of the 2-deletable words: the suffix
//! z = wₘᴿ sends wₘ into the language (wₘwₘᴿ reduces to ε) but wₙ out of
//! it for every n > m (wₙz = wₘ·y·wₘᴿ with wₙ = wₘy square-free). One
//! such suffix per pair, each claim replayed against the deletion engine,
//! demonstrates `count` pairwise-inequivalent words; since `count` is
//! arbitrary, the language has no finite automaton.

use serde::Serialize;

use super::AnalysisError;
use crate::deletion::residues;
use crate::known::squarefree_word;
use crate::word::Word;

#[derive(Debug, Clone, Serialize)]
pub struct MNWitnessSet {
    pub language: String,
    #[serde(serialize_with = "crate::serialize_word_vec")]
    pub prefixes: Vec<Word>,
    /// `separators[m][n]` distinguishes `prefixes[m]` from `prefixes[n]`;
    /// the diagonal is empty. Entry (m,n) equals entry (n,m): the reversal
    /// of the shorter prefix.
    #[serde(serialize_with = "crate::serialize_separators")]
    pub separators: Vec<Vec<Option<Word>>>,
}

struct Budget {
    left: usize,
    spent: usize,
}

impl Budget {
    fn deletable(&mut self, w: &Word) -> Result<bool, AnalysisError> {
        if self.left == 0 {
            return Err(AnalysisError::BudgetExceeded {
                visited: self.spent,
            });
        }
        let report = residues(w, 2, self.left);
        self.spent += report.visited_count;
        self.left -= report.visited_count.min(self.left);
        if report.truncated {
            return Err(AnalysisError::BudgetExceeded {
                visited: self.spent,
            });
        }
        Ok(report.deletable)
    }
}

/// Builds `count` square-free prefixes over Σ_k (k ≥ 3) together with a
/// verified distinguishing suffix for every pair. `oracle_budget` caps the
/// total number of words the deletion engine may visit across all checks.
pub fn mn_witnesses(
    k: usize,
    count: usize,
    oracle_budget: usize,
) -> Result<MNWitnessSet, AnalysisError> {
    if k < 3 {
        return Err(AnalysisError::BadParams(format!(
            "square-free witnesses need at least 3 letters, got {k}"
        )));
    }
    if count == 0 {
        return Err(AnalysisError::BadParams("need at least one prefix".into()));
    }
    let prefixes: Vec<Word> = (1..=count).map(squarefree_word).collect();
    let mut separators = vec![vec![None; count]; count];
    let mut budget = Budget {
        left: oracle_budget,
        spent: 0,
    };

    for m in 0..count {
        for n in (m + 1)..count {
            let z = prefixes[m].reverse();
            let inside = prefixes[m].concat(&z);
            let outside = prefixes[n].concat(&z);
            if !budget.deletable(&inside)? || budget.deletable(&outside)? {
                return Err(AnalysisError::SeparatorUnverified {
                    wm: prefixes[m].to_string(),
                    wn: prefixes[n].to_string(),
                    z: z.to_string(),
                });
            }
            separators[m][n] = Some(z.clone());
            separators[n][m] = Some(z);
        }
    }

    Ok(MNWitnessSet {
        language: format!("2-deletable words over {k} letters"),
        prefixes,
        separators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deletion::is_deletable;
    use crate::word::{is_power_free, Alphabet};

    const BUDGET: usize = 10_000_000;

    #[test]
    fn two_prefixes_split_on_a() {
        let set = mn_witnesses(3, 2, BUDGET).unwrap();
        let ab = Alphabet::new(3).unwrap();
        assert_eq!(
            set.prefixes,
            vec![ab.parse_word("a").unwrap(), ab.parse_word("ab").unwrap()]
        );
        assert_eq!(set.separators[0][1], Some(ab.parse_word("a").unwrap()));
        assert!(is_deletable(&ab.parse_word("aa").unwrap(), 2));
        assert!(!is_deletable(&ab.parse_word("aba").unwrap(), 2));
    }

    #[test]
    fn third_prefix_splits_from_second_on_ba() {
        let set = mn_witnesses(3, 3, BUDGET).unwrap();
        let ab = Alphabet::new(3).unwrap();
        assert_eq!(set.prefixes[1], ab.parse_word("ab").unwrap());
        assert_eq!(set.prefixes[2], ab.parse_word("abc").unwrap());
        assert_eq!(set.separators[1][2], Some(ab.parse_word("ba").unwrap()));
        assert!(is_deletable(&ab.parse_word("abba").unwrap(), 2));
        assert!(!is_deletable(&ab.parse_word("abcba").unwrap(), 2));
    }

    #[test]
    fn single_prefix_has_empty_matrix() {
        let set = mn_witnesses(3, 1, BUDGET).unwrap();
        assert_eq!(set.prefixes.len(), 1);
        assert_eq!(set.separators, vec![vec![None]]);
    }

    #[test]
    fn matrix_is_symmetric_with_empty_diagonal() {
        let set = mn_witnesses(3, 5, BUDGET).unwrap();
        for m in 0..5 {
            assert_eq!(set.separators[m][m], None);
            for n in 0..5 {
                assert_eq!(set.separators[m][n], set.separators[n][m]);
            }
        }
    }

    #[test]
    fn prefixes_are_square_free_and_nested() {
        let set = mn_witnesses(3, 6, BUDGET).unwrap();
        for (i, w) in set.prefixes.iter().enumerate() {
            assert!(is_power_free(w, 2));
            assert_eq!(w.len(), i + 1);
            if i > 0 {
                assert!(w.letters().starts_with(set.prefixes[i - 1].letters()));
            }
        }
    }

    #[test]
    fn tiny_budget_is_reported() {
        match mn_witnesses(3, 4, 3) {
            Err(AnalysisError::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn small_alphabet_is_rejected() {
        assert!(matches!(
            mn_witnesses(2, 3, BUDGET),
            Err(AnalysisError::BadParams(_))
        ));
    }

    #[test]
    fn serializes_with_null_diagonal() {
        let set = mn_witnesses(3, 2, BUDGET).unwrap();
        let json = serde_json::to_value(&set).unwrap();
        assert_eq!(json["prefixes"], serde_json::json!(["a", "ab"]));
        assert_eq!(json["separators"][0][0], serde_json::Value::Null);
        assert_eq!(json["separators"][0][1], "a");
    }
}
