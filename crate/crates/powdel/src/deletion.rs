//! The p-deletion rewrite system.
//!
//! A p-deletion removes one p-th-power factor: `u x^p v -> u v`. Starting
//! from a word and deleting until no p-th power remains always terminates
//! (length strictly decreases), but the terminal power-free word depends on
//! the deletion choices. [`residues`] computes the full set of reachable
//! power-free words; a word is *deletable* when ε is reachable and
//! *strongly deletable* when ε is the only residue.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::word::{find_power_occurrences, PowerOccurrence, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeletionError {
    #[error("occurrence (start={start}, period={period}, exponent={exponent}) is not a valid power in {word:?}")]
    InvalidOccurrence {
        word: Word,
        start: usize,
        period: usize,
        exponent: usize,
    },
}

/// One rewrite step: `after` is `before` with the occurrence's factor removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionStep {
    pub before: Word,
    pub occurrence: PowerOccurrence,
    pub after: Word,
}

/// Outcome of exploring every deletion sequence from `source`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ResidueReport {
    #[serde(serialize_with = "crate::serialize_word")]
    pub source: Word,
    #[serde(rename = "p")]
    pub exponent: usize,
    /// Every reachable p-th-power-free word, lexicographically ordered.
    #[serde(serialize_with = "crate::serialize_word_set")]
    pub residues: BTreeSet<Word>,
    /// ε is reachable. When `truncated`, this is only asserted if ε was
    /// actually found before the cap.
    pub deletable: bool,
    /// The residue set is exactly {ε}. Never asserted when `truncated`.
    pub strongly_deletable: bool,
    /// Distinct words visited by the search, including the source.
    #[serde(rename = "visited")]
    pub visited_count: usize,
    /// True iff the visited-state cap stopped the search early.
    pub truncated: bool,
}

/// Removes the factor described by `occ` from `w`.
pub fn delete_at(w: &Word, occ: &PowerOccurrence) -> Result<Word, DeletionError> {
    if !occ.is_valid_in(w) {
        return Err(DeletionError::InvalidOccurrence {
            word: w.clone(),
            start: occ.start,
            period: occ.period,
            exponent: occ.exponent,
        });
    }
    let mut letters = Vec::with_capacity(w.len() - occ.len());
    letters.extend_from_slice(&w.letters()[..occ.start]);
    letters.extend_from_slice(&w.letters()[occ.end()..]);
    Ok(Word::from_letters(letters))
}

/// All words reachable from `w` by a single p-deletion, deduplicated.
pub fn successors(w: &Word, p: usize) -> BTreeSet<Word> {
    find_power_occurrences(w, p)
        .iter()
        .map(|occ| delete_at(w, occ).expect("occurrence from scan is valid"))
        .collect()
}

/// Exhaustive reachability closure with per-call memoization.
///
/// The reachable set from any word is finite since every deletion strictly
/// shrinks the word, so the search terminates on its own; `limit` caps the
/// visited-state count on adversarial inputs. Truncation is reported in the
/// flag, never thrown.
pub fn residues(w: &Word, p: usize, limit: usize) -> ResidueReport {
    assert!(p >= 1, "exponent must be positive");
    assert!(limit > 0, "visited-state cap must be positive");
    let mut visited: HashSet<Word> = HashSet::new();
    let mut stack: Vec<Word> = vec![w.clone()];
    visited.insert(w.clone());
    let mut residue_set: BTreeSet<Word> = BTreeSet::new();
    let mut truncated = false;

    'search: while let Some(current) = stack.pop() {
        let occurrences = find_power_occurrences(&current, p);
        if occurrences.is_empty() {
            residue_set.insert(current);
            continue;
        }
        for occ in &occurrences {
            let next = delete_at(&current, occ).expect("occurrence from scan is valid");
            if !visited.contains(&next) {
                if visited.len() >= limit {
                    truncated = true;
                    break 'search;
                }
                visited.insert(next.clone());
                stack.push(next);
            }
        }
    }

    let deletable = residue_set.contains(&Word::empty());
    let strongly_deletable = !truncated && residue_set.len() == 1 && deletable;
    ResidueReport {
        source: w.clone(),
        exponent: p,
        residues: residue_set,
        deletable,
        strongly_deletable,
        visited_count: visited.len(),
        truncated,
    }
}

/// True iff some deletion sequence from `w` reaches ε. Exits as soon as ε
/// is found rather than completing the closure.
pub fn is_deletable(w: &Word, p: usize) -> bool {
    assert!(p >= 1, "exponent must be positive");
    if w.is_empty() {
        return true;
    }
    let mut visited: HashSet<Word> = HashSet::new();
    let mut stack: Vec<Word> = vec![w.clone()];
    visited.insert(w.clone());
    while let Some(current) = stack.pop() {
        for occ in find_power_occurrences(&current, p) {
            let next = delete_at(&current, &occ).expect("occurrence from scan is valid");
            if next.is_empty() {
                return true;
            }
            if visited.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    false
}

/// True iff every deletion sequence from `w` can only terminate at ε.
/// Requires the full closure; there is no early exit.
pub fn is_strongly_deletable(w: &Word, p: usize) -> bool {
    let report = residues(w, p, usize::MAX);
    report.strongly_deletable
}

/// A concrete deletion sequence from `w` to ε, if one exists.
///
/// The steps replay through [`delete_at`]: each `after` equals the next
/// `before`, and the last `after` is ε. For ε itself the certificate is the
/// empty sequence.
pub fn deletion_certificate(w: &Word, p: usize) -> Option<Vec<DeletionStep>> {
    assert!(p >= 1, "exponent must be positive");
    if w.is_empty() {
        return Some(Vec::new());
    }
    // breadth-first parent pointers; the first path to ε is reconstructed
    let mut parent: std::collections::HashMap<Word, (Word, PowerOccurrence)> =
        std::collections::HashMap::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    queue.push_back(w.clone());
    let mut seen: HashSet<Word> = HashSet::new();
    seen.insert(w.clone());

    while let Some(current) = queue.pop_front() {
        for occ in find_power_occurrences(&current, p) {
            let next = delete_at(&current, &occ).expect("occurrence from scan is valid");
            if seen.insert(next.clone()) {
                parent.insert(next.clone(), (current.clone(), occ));
                if next.is_empty() {
                    let mut steps = Vec::new();
                    let mut node = next;
                    while let Some((prev, occ)) = parent.get(&node) {
                        steps.push(DeletionStep {
                            before: prev.clone(),
                            occurrence: *occ,
                            after: node.clone(),
                        });
                        node = prev.clone();
                    }
                    steps.reverse();
                    return Some(steps);
                }
                queue.push_back(next);
            }
        }
    }
    None
}
