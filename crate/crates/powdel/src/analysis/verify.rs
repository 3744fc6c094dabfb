//! Exhaustive desk-scale verification sweeps.
//!
//! Each sweep checks one of the library's closed-form claims against the
//! brute-force engines over a bounded universe and reports every
//! counterexample word. A passing report certifies the claim on the swept
//! range only.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::insert::{brute_deletable_set, insert_star_bounded};
use super::AnalysisError;
use crate::deletion::{is_deletable, is_strongly_deletable};
use crate::grammar::{
    build_epsilon_indexed, build_epsilon_lig, build_power_grammar, build_square_lig,
    enumerate_language, insertion_closure_indexed, insertion_closure_lig, EnumerationBounds,
};
use crate::known::{
    d22_oracle, enumerate_powerfree, fibonacci_word, modp_filter, palindromic_double,
    separated_double, squarefree_word,
};
use crate::word::{is_power_free, Alphabet, Word};

/// The registered sweep identifiers, in documentation order.
pub const THEOREMS: &[&str] = &[
    "binsq",
    "modp",
    "sixteen",
    "sqfree",
    "sd-double",
    "d-split",
    "fib",
    "insertion",
    "power-grammar",
    "square-lig",
    "closure-indexed",
    "closure-lig",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremParams {
    pub k: usize,
    pub p: usize,
    pub maxlen: usize,
}

/// Desk-scale defaults for each sweep; `None` for unknown identifiers.
pub fn default_params(theorem: &str) -> Option<TheoremParams> {
    let (k, p, maxlen) = match theorem {
        "binsq" => (2, 2, 10),
        "modp" => (3, 2, 8),
        "sixteen" => (2, 2, 4),
        "sqfree" => (3, 2, 500),
        "sd-double" => (3, 2, 5),
        "d-split" => (3, 2, 5),
        "fib" => (2, 2, 8),
        "insertion" => (2, 2, 6),
        "power-grammar" => (2, 2, 8),
        "square-lig" => (2, 2, 8),
        "closure-indexed" => (2, 2, 6),
        "closure-lig" => (2, 2, 6),
        _ => return None,
    };
    Some(TheoremParams { k, p, maxlen })
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub k: usize,
    pub p: usize,
    pub maxlen: usize,
    pub checked_count: usize,
    #[serde(serialize_with = "crate::serialize_word_vec")]
    pub counterexamples: Vec<Word>,
    pub passed: bool,
    #[serde(rename = "elapsed_ms", serialize_with = "crate::serialize_millis")]
    pub elapsed: Duration,
}

/// Runs the named sweep with the given parameters.
pub fn verify_theorem(
    theorem: &str,
    params: TheoremParams,
) -> Result<VerificationReport, AnalysisError> {
    let started = Instant::now();
    let (checked_count, counterexamples) = match theorem {
        "binsq" => sweep_binary_parity(params)?,
        "modp" => sweep_count_filter(params)?,
        "sixteen" => sweep_length_four_squares()?,
        "sqfree" => sweep_squarefree_generator(params)?,
        "sd-double" => sweep_palindromic_doubles(params)?,
        "d-split" => sweep_separated_doubles(params)?,
        "fib" => sweep_fibonacci(params)?,
        "insertion" => sweep_insertion_closure(params)?,
        "power-grammar" => sweep_power_grammar(params)?,
        "square-lig" => sweep_square_lig(params)?,
        "closure-indexed" => sweep_closure_indexed(params)?,
        "closure-lig" => sweep_closure_lig(params)?,
        other => return Err(AnalysisError::UnknownTheorem(other.to_string())),
    };
    Ok(VerificationReport {
        theorem: theorem.to_string(),
        k: params.k,
        p: params.p,
        maxlen: params.maxlen,
        checked_count,
        passed: counterexamples.is_empty(),
        counterexamples,
        elapsed: started.elapsed(),
    })
}

fn alphabet(k: usize) -> Result<Alphabet, AnalysisError> {
    Alphabet::new(k).map_err(|e| AnalysisError::BadParams(e.to_string()))
}

type Sweep = (usize, Vec<Word>);

/// Both deletability notions coincide with "every letter count even" on
/// two letters with p = 2. Sweeps words of length 1..=maxlen; ε is checked
/// too but not counted.
fn sweep_binary_parity(params: TheoremParams) -> Result<Sweep, AnalysisError> {
    let ab = alphabet(2)?;
    let mut bad = Vec::new();
    let eps = Word::empty();
    if !(is_deletable(&eps, 2) && is_strongly_deletable(&eps, 2)) {
        bad.push(eps);
    }
    let mut checked = 0usize;
    for len in 1..=params.maxlen {
        for w in ab.words_of_length(len) {
            checked += 1;
            let expected = d22_oracle(&w, 2).expect("binary oracle");
            if is_deletable(&w, 2) != expected || is_strongly_deletable(&w, 2) != expected {
                bad.push(w);
            }
        }
    }
    Ok((checked, bad))
}

/// Deletability forces every letter count to be divisible by p.
fn sweep_count_filter(params: TheoremParams) -> Result<Sweep, AnalysisError> {
    let ab = alphabet(params.k)?;
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for len in 1..=params.maxlen {
        for w in ab.words_of_length(len) {
            checked += 1;
            if is_deletable(&w, params.p) && !modp_filter(&w, params.p, &ab) {
                bad.push(w);
            }
        }
    }
    Ok((checked, bad))
}

/// Every binary word of length 4 contains a square.
fn sweep_length_four_squares() -> Result<Sweep, AnalysisError> {
    let ab = alphabet(2)?;
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for w in ab.words_of_length(4) {
        checked += 1;
        if is_power_free(&w, 2) {
            bad.push(w);
        }
    }
    Ok((checked, bad))
}

/// The square-free generator really is square-free and each length extends
/// the previous one.
fn sweep_squarefree_generator(params: TheoremParams) -> Result<Sweep, AnalysisError> {
    let mut bad = Vec::new();
    let mut previous = squarefree_word(0);
    for n in 1..=params.maxlen {
        let w = squarefree_word(n);
        if w.len() != n || !w.letters().starts_with(previous.letters()) {
            bad.push(w.clone());
        }
        previous = w;
    }
    if !is_power_free(&previous, 2) {
        bad.push(previous);
    }
    bad.dedup();
    Ok((params.maxlen, bad))
}

/// For square-free x, the palindromic double x·xᴿ is strongly 2-deletable.
fn sweep_palindromic_doubles(params: TheoremParams) -> Result<Sweep, AnalysisError> {
    alphabet(params.k)?;
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for x in enumerate_powerfree(params.k, 2, params.maxlen) {
        checked += 1;
        let w = palindromic_double(&x);
        if !is_strongly_deletable(&w, 2) {
            bad.push(w);
        }
    }
    Ok((checked, bad))
}

/// For square-free xy with y non-empty, x·y·xᴿ is not 2-deletable.
fn sweep_separated_doubles(params: TheoremParams) -> Result<Sweep, AnalysisError> {
    alphabet(params.k)?;
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for xy in enumerate_powerfree(params.k, 2, params.maxlen) {
        if xy.is_empty() {
            continue;
        }
        let letters = xy.letters();
        for cut in 0..letters.len() {
            checked += 1;
            let x = Word::from_letters(letters[..cut].to_vec());
            let y = Word::from_letters(letters[cut..].to_vec());
            let w = separated_double(&x, &y);
            if is_deletable(&w, 2) {
                bad.push(w);
            }
        }
    }
    Ok((checked, bad))
}

/// Fibonacci words have consecutive Fibonacci letter counts, which are
/// never both divisible by p ≥ 2, so none is p-deletable. The count filter
/// is checked for every n ≤ maxlen and p ∈ {2,3}; the full engine confirms
/// the words short enough to close over.
fn sweep_fibonacci(params: TheoremParams) -> Result<Sweep, AnalysisError> {
    let ab = alphabet(2)?;
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for n in 0..=params.maxlen {
        let w = fibonacci_word(n);
        for p in [2, 3] {
            checked += 1;
            if modp_filter(&w, p, &ab) {
                bad.push(w.clone());
                continue;
            }
            if w.len() <= 13 && is_deletable(&w, p) {
                bad.push(w.clone());
            }
        }
    }
    bad.dedup();
    Ok((checked, bad))
}

fn direct_powers(k: usize, p: usize, maxlen: usize) -> Result<BTreeSet<Word>, AnalysisError> {
    let ab = alphabet(k)?;
    Ok(ab.words_up_to(maxlen / p).map(|u| u.power(p)).collect())
}

fn set_difference_report(expected: &BTreeSet<Word>, actual: &BTreeSet<Word>) -> Sweep {
    let union_size = expected.union(actual).count();
    let bad: Vec<Word> = expected.symmetric_difference(actual).cloned().collect();
    (union_size, bad)
}

/// Iterated insertion of p-th powers into ε yields exactly the p-deletable
/// words, at any length cap.
fn sweep_insertion_closure(params: TheoremParams) -> Result<Sweep, AnalysisError> {
    let cap = params.maxlen;
    let powers = direct_powers(params.k, params.p, cap)?;
    let eps: BTreeSet<Word> = std::iter::once(Word::empty()).collect();
    let star = insert_star_bounded(&eps, &powers, cap);
    let brute = brute_deletable_set(params.k, params.p, cap);
    Ok(set_difference_report(&brute, &star))
}

fn complete_enumeration(
    grammar: &crate::grammar::GrammarCore,
    maxlen: usize,
) -> Result<BTreeSet<Word>, AnalysisError> {
    let result = enumerate_language(grammar, &EnumerationBounds::for_length(maxlen));
    if !result.complete {
        return Err(AnalysisError::BudgetExceeded {
            visited: result.states_explored,
        });
    }
    Ok(result.words)
}

/// The power grammar generates exactly the p-th powers.
fn sweep_power_grammar(params: TheoremParams) -> Result<Sweep, AnalysisError> {
    alphabet(params.k)?;
    let grammar = build_power_grammar(params.k, params.p);
    let enumerated = complete_enumeration(grammar.core(), params.maxlen)?;
    let expected = direct_powers(params.k, params.p, params.maxlen)?;
    Ok(set_difference_report(&expected, &enumerated))
}

/// The square grammar in linear form agrees with the power grammar at p=2.
fn sweep_square_lig(params: TheoremParams) -> Result<Sweep, AnalysisError> {
    alphabet(params.k)?;
    let lig = build_square_lig(params.k);
    let enumerated = complete_enumeration(lig.core(), params.maxlen)?;
    let expected = direct_powers(params.k, 2, params.maxlen)?;
    Ok(set_difference_report(&expected, &enumerated))
}

/// The insertion-closure grammar over the power grammar generates exactly
/// the p-deletable words (indexed construction).
fn sweep_closure_indexed(params: TheoremParams) -> Result<Sweep, AnalysisError> {
    alphabet(params.k)?;
    let closure = insertion_closure_indexed(
        &build_epsilon_indexed(),
        &build_power_grammar(params.k, params.p),
    );
    let enumerated = complete_enumeration(closure.core(), params.maxlen)?;
    let brute = brute_deletable_set(params.k, params.p, params.maxlen);
    Ok(set_difference_report(&brute, &enumerated))
}

/// Same language through the linear construction over the square grammar
/// (p is fixed at 2 by the grammar).
fn sweep_closure_lig(params: TheoremParams) -> Result<Sweep, AnalysisError> {
    alphabet(params.k)?;
    let closure = insertion_closure_lig(&build_epsilon_lig(), &build_square_lig(params.k));
    let enumerated = complete_enumeration(closure.core(), params.maxlen)?;
    let brute = brute_deletable_set(params.k, 2, params.maxlen);
    Ok(set_difference_report(&brute, &enumerated))
}
