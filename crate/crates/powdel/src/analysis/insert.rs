//! Insertion on finite word sets.

use std::collections::BTreeSet;

use crate::deletion::successors;
use crate::word::{Alphabet, Word};

fn splice(host: &Word, at: usize, piece: &Word) -> Word {
    let mut letters = Vec::with_capacity(host.len() + piece.len());
    letters.extend_from_slice(&host.letters()[..at]);
    letters.extend_from_slice(piece.letters());
    letters.extend_from_slice(&host.letters()[at..]);
    Word::from_letters(letters)
}

/// One round of insertion: every `xyz` with `xz ∈ l1`, `y ∈ l2`, and
/// `|xyz| ≤ cap`, over every split point of every host word.
pub fn insert_once(l1: &BTreeSet<Word>, l2: &BTreeSet<Word>, cap: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for host in l1 {
        if host.len() > cap {
            continue;
        }
        for piece in l2 {
            if host.len() + piece.len() > cap {
                continue;
            }
            for at in 0..=host.len() {
                out.insert(splice(host, at, piece));
            }
        }
    }
    out
}

/// The closure of `l1` under repeated insertion of `l2` words, restricted
/// to length ≤ cap: iterate [`insert_once`] until no new word appears. The
/// capped universe is finite, so the fixed point is reached.
pub fn insert_star_bounded(l1: &BTreeSet<Word>, l2: &BTreeSet<Word>, cap: usize) -> BTreeSet<Word> {
    let mut closure: BTreeSet<Word> = l1.iter().filter(|w| w.len() <= cap).cloned().collect();
    let mut fresh = closure.clone();
    while !fresh.is_empty() {
        let grown = insert_once(&fresh, l2, cap);
        fresh = grown.difference(&closure).cloned().collect();
        closure.extend(fresh.iter().cloned());
    }
    closure
}

/// Every p-deletable word over Σ_k of length ≤ maxlen, computed by dynamic
/// programming over the whole universe: a word is deletable iff it is ε or
/// some one-step deletion successor is. Successors are strictly shorter,
/// so increasing-length order settles each word after its successors.
pub fn brute_deletable_set(k: usize, p: usize, maxlen: usize) -> BTreeSet<Word> {
    let alphabet = Alphabet::new(k).expect("alphabet size in range");
    let mut deletable: BTreeSet<Word> = BTreeSet::new();
    deletable.insert(Word::empty());
    for len in 1..=maxlen {
        for w in alphabet.words_of_length(len) {
            if successors(&w, p).iter().any(|s| deletable.contains(s)) {
                deletable.insert(w);
            }
        }
    }
    deletable
}
