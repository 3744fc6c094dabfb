//! Closed-form oracles for the solved cases and the word families used to
//! separate the rest.
//!
//! Deleting 1st powers, deleting over a one-letter alphabet, and deleting
//! squares in binary words all admit letter-count characterizations; beyond
//! those, only the mod-p letter-count filter (a necessary condition) is
//! available. The module also generates the square-free ternary word and the
//! Fibonacci words, and builds the palindromic families `x·xᴿ` / `x·y·xᴿ`.

use serde::Serialize;
use thiserror::Error;

use crate::word::{Alphabet, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle requires a {expected}-letter alphabet, got {got}")]
    WrongAlphabet { expected: usize, got: usize },
}

/// Which closed form produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OracleRule {
    /// Deleting 1st powers: every word qualifies.
    #[serde(rename = "trivial-p1")]
    TrivialP1,
    /// One-letter alphabet: membership iff p divides the length.
    #[serde(rename = "trivial-k1")]
    TrivialK1,
    /// Binary squares: membership iff both letter counts are even.
    #[serde(rename = "parity-22")]
    Parity22,
    /// Mod-p letter-count filter; only ever reports a negative.
    #[serde(rename = "modp-filter")]
    ModpFilter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    #[serde(serialize_with = "crate::serialize_word")]
    pub word: Word,
    pub verdict: bool,
    pub rule: OracleRule,
}

/// Necessary condition for p-deletability: every letter count ≡ 0 (mod p).
pub fn modp_filter(w: &Word, p: usize, alphabet: &Alphabet) -> bool {
    assert!(p >= 1, "exponent must be positive");
    w.letter_counts(alphabet).iter().all(|c| c % p == 0)
}

/// Membership in the binary-squares language: both letter counts even.
/// This equals both deletability and strong deletability for (k, p) = (2, 2).
pub fn d22_oracle(w: &Word, k: usize) -> Result<bool, OracleError> {
    if k != 2 {
        return Err(OracleError::WrongAlphabet {
            expected: 2,
            got: k,
        });
    }
    let alphabet = Alphabet::new(2).expect("binary alphabet");
    Ok(w.letter_counts(&alphabet).iter().all(|c| c % 2 == 0))
}

/// The closed-form verdict for (k, p) when one exists; `None` outside the
/// solved cases.
pub fn trivial_oracle(w: &Word, k: usize, p: usize) -> Option<OracleVerdict> {
    assert!(p >= 1 && k >= 1);
    if p == 1 {
        return Some(OracleVerdict {
            word: w.clone(),
            verdict: true,
            rule: OracleRule::TrivialP1,
        });
    }
    if k == 1 {
        return Some(OracleVerdict {
            word: w.clone(),
            verdict: w.len().is_multiple_of(p),
            rule: OracleRule::TrivialK1,
        });
    }
    if k == 2 && p == 2 {
        let verdict = d22_oracle(w, 2).expect("k = 2");
        return Some(OracleVerdict {
            word: w.clone(),
            verdict,
            rule: OracleRule::Parity22,
        });
    }
    None
}

/// Best available verdict: a closed form when one exists, otherwise the
/// mod-p filter when it rules the word out, otherwise `None`.
pub fn oracle_verdict(w: &Word, k: usize, p: usize) -> Option<OracleVerdict> {
    if let Some(v) = trivial_oracle(w, k, p) {
        return Some(v);
    }
    let alphabet = Alphabet::new(k).ok()?;
    if !modp_filter(w, p, &alphabet) {
        return Some(OracleVerdict {
            word: w.clone(),
            verdict: false,
            rule: OracleRule::ModpFilter,
        });
    }
    None
}

/// First `n` letters of the fixed point of the morphism
/// a → abc, b → ac, c → b, which is square-free.
pub fn squarefree_word(n: usize) -> Word {
    let mut current: Vec<u8> = vec![0];
    while current.len() < n {
        let mut next = Vec::with_capacity(current.len() * 3);
        for &l in &current {
            match l {
                0 => next.extend_from_slice(&[0, 1, 2]),
                1 => next.extend_from_slice(&[0, 2]),
                _ => next.push(1),
            }
            if next.len() >= n {
                break;
            }
        }
        current = next;
    }
    current.truncate(n);
    Word::from_letters(current)
}

/// The n-th Fibonacci word: S_0 = a, S_1 = ab, S_n = S_{n-2} S_{n-1}.
pub fn fibonacci_word(n: usize) -> Word {
    let mut prev = Word::from_letters(vec![0]);
    if n == 0 {
        return prev;
    }
    let mut current = Word::from_letters(vec![0, 1]);
    for _ in 1..n {
        let next = prev.concat(&current);
        prev = current;
        current = next;
    }
    current
}

/// All p-th-power-free words over Σ_k of length ≤ maxlen.
///
/// Extends power-free words letter by letter; power-freeness is inherited
/// by prefixes, so the prefix tree prunes exactly.
pub fn enumerate_powerfree(k: usize, p: usize, maxlen: usize) -> Vec<Word> {
    assert!(p >= 1, "exponent must be positive");
    let mut result = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..maxlen {
        let mut next_frontier = Vec::new();
        for word in &frontier {
            for letter in 0..k as u8 {
                let mut letters = word.letters().to_vec();
                letters.push(letter);
                let candidate = Word::from_letters(letters);
                // only suffix factors ending at the new letter can be new powers
                if new_suffix_is_power_free(&candidate, p) {
                    result.push(candidate.clone());
                    next_frontier.push(candidate);
                }
            }
        }
        frontier = next_frontier;
        if frontier.is_empty() {
            break;
        }
    }
    result
}

fn new_suffix_is_power_free(w: &Word, p: usize) -> bool {
    let n = w.len();
    let s = w.letters();
    for period in 1..=n / p {
        let total = period * p;
        let start = n - total;
        if (0..total - period).all(|t| s[start + t] == s[start + t + period]) {
            return false;
        }
    }
    true
}

/// `x · xᴿ`; strongly 2-deletable whenever `x` is square-free.
pub fn palindromic_double(x: &Word) -> Word {
    x.concat(&x.reverse())
}

/// `x · y · xᴿ`; not 2-deletable whenever `xy` is square-free and `y` is
/// non-empty.
pub fn separated_double(x: &Word, y: &Word) -> Word {
    x.concat(y).concat(&x.reverse())
}
