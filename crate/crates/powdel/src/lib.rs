//! Deleting powers in words.
//!
//! A p-deletion rewrites `u x^p v -> u v`, removing one p-th-power factor.
//! This crate decides which words reduce to ε under such rewrites
//! ([`deletion`]), provides the closed-form oracles that exist for the easy
//! parameter choices ([`known`]), runs indexed and linear indexed grammars
//! under explicit bounds ([`grammar`]) including the insertion-closure
//! construction that generates the deletable words, and packages the
//! exhaustive finite verifications and Myhill–Nerode witness generators
//! ([`analysis`]).
//!
//! Words live over the first `k` lowercase Latin letters and serialize as
//! plain ASCII strings; ε is the empty string.

pub mod analysis;
pub mod deletion;
pub mod grammar;
pub mod known;
pub mod word;

pub use analysis::{
    brute_deletable_set, insert_once, insert_star_bounded, mn_witnesses, verify_theorem,
    AnalysisError, MNWitnessSet, TheoremParams, VerificationReport,
};
pub use deletion::{
    delete_at, deletion_certificate, is_deletable, is_strongly_deletable, residues, successors,
    DeletionError, DeletionStep, ResidueReport,
};
pub use grammar::{
    build_epsilon_indexed, build_epsilon_lig, build_power_grammar, build_square_lig,
    derive_successors, enumerate_language, form_language, insertion_closure_indexed,
    insertion_closure_lig, member, EnumerationBounds, EnumerationResult, GrammarCore, GrammarError,
    IndexedGrammar, LinearIndexedGrammar, SententialForm,
};
pub use known::{
    d22_oracle, enumerate_powerfree, fibonacci_word, modp_filter, oracle_verdict,
    palindromic_double, separated_double, squarefree_word, trivial_oracle, OracleError, OracleRule,
    OracleVerdict,
};
pub use word::{
    find_power_occurrences, is_power, is_power_free, Alphabet, PowerOccurrence, Word, WordError,
};

pub(crate) fn serialize_word<S>(word: &Word, serializer: S) -> Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    serializer.serialize_str(&word.to_string())
}

pub(crate) fn serialize_word_set<S>(
    words: &std::collections::BTreeSet<Word>,
    serializer: S,
) -> Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    use serde::ser::SerializeSeq;
    let mut seq = serializer.serialize_seq(Some(words.len()))?;
    for w in words {
        seq.serialize_element(&w.to_string())?;
    }
    seq.end()
}

pub(crate) fn serialize_word_vec<S>(words: &[Word], serializer: S) -> Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    use serde::ser::SerializeSeq;
    let mut seq = serializer.serialize_seq(Some(words.len()))?;
    for w in words {
        seq.serialize_element(&w.to_string())?;
    }
    seq.end()
}

pub(crate) fn serialize_millis<S>(
    elapsed: &std::time::Duration,
    serializer: S,
) -> Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    serializer.serialize_u64(elapsed.as_millis() as u64)
}

pub(crate) fn serialize_separators<S>(
    matrix: &[Vec<Option<Word>>],
    serializer: S,
) -> Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    use serde::ser::SerializeSeq;
    let mut rows = serializer.serialize_seq(Some(matrix.len()))?;
    for row in matrix {
        let cells: Vec<Option<String>> = row
            .iter()
            .map(|c| c.as_ref().map(|w| w.to_string()))
            .collect();
        rows.serialize_element(&cells)?;
    }
    rows.end()
}
