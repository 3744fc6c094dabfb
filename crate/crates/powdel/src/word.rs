//! Alphabets, finite words, and detection of p-th-power factors.
//!
//! A [`Word`] stores letter indices into an [`Alphabet`] whose letters are
//! the first `k` lowercase Latin letters. A p-th power is a factor of the
//! form `u^p = uu...u` for some non-empty block `u`; [`find_power_occurrences`]
//! reports every such factor, including overlapping and nested ones, since
//! the deletion engine needs every choice point.

use std::fmt;

use thiserror::Error;

/// Largest supported alphabet; letters are drawn from `a..=z`.
pub const MAX_ALPHABET: usize = 26;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet size must be between 1 and {MAX_ALPHABET}, got {0}")]
    AlphabetSize(usize),
    #[error("letter {letter:?} is not in the {size}-letter alphabet")]
    LetterOutOfRange { letter: char, size: usize },
}

/// An ordered alphabet of the first `k` lowercase Latin letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    size: usize,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self, WordError> {
        if size == 0 || size > MAX_ALPHABET {
            return Err(WordError::AlphabetSize(size));
        }
        Ok(Alphabet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The character for letter index `i`.
    pub fn letter(&self, i: u8) -> char {
        debug_assert!((i as usize) < self.size);
        (b'a' + i) as char
    }

    /// Letter indices `0..k` in order.
    pub fn letter_indices(&self) -> impl Iterator<Item = u8> {
        0..self.size as u8
    }

    /// Parses an ASCII string over this alphabet; the empty string is ε.
    pub fn parse_word(&self, s: &str) -> Result<Word, WordError> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            let idx = (c as u32).wrapping_sub('a' as u32);
            if !c.is_ascii_lowercase() || idx as usize >= self.size {
                return Err(WordError::LetterOutOfRange {
                    letter: c,
                    size: self.size,
                });
            }
            letters.push(idx as u8);
        }
        Ok(Word(letters))
    }

    /// All words over this alphabet of exactly `len` letters, in
    /// lexicographic order.
    pub fn words_of_length(&self, len: usize) -> impl Iterator<Item = Word> {
        let k = self.size as u8;
        let mut current: Option<Vec<u8>> = Some(vec![0; len]);
        std::iter::from_fn(move || {
            let word = current.take()?;
            // advance odometer-style; None once the last word is emitted
            let mut next = word.clone();
            for i in (0..len).rev() {
                if next[i] + 1 < k {
                    next[i] += 1;
                    for x in &mut next[i + 1..] {
                        *x = 0;
                    }
                    current = Some(next);
                    break;
                }
            }
            Some(Word(word))
        })
    }

    /// All words of length `0..=maxlen` in (length, lexicographic) order.
    pub fn words_up_to(&self, maxlen: usize) -> impl Iterator<Item = Word> {
        let alphabet = *self;
        (0..=maxlen).flat_map(move |n| alphabet.words_of_length(n))
    }
}

/// A finite word: a sequence of letter indices. The empty word is ε.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Occurrences of each letter of `alphabet`, indexed by letter.
    /// Components sum to the word length.
    pub fn letter_counts(&self, alphabet: &Alphabet) -> Vec<usize> {
        let mut counts = vec![0; alphabet.size()];
        for &l in &self.0 {
            counts[l as usize] += 1;
        }
        counts
    }

    /// The reversal a_n...a_1 of a_1...a_n.
    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self` repeated `p` times.
    pub fn power(&self, p: usize) -> Word {
        Word(self.0.repeat(p))
    }

    /// Largest letter index present, if any.
    pub fn max_letter(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            write!(f, "{}", (b'a' + l) as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// A located p-th-power factor: the factor of length `period * exponent`
/// starting at `start` consists of `exponent` identical blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowerOccurrence {
    pub start: usize,
    pub period: usize,
    pub exponent: usize,
}

impl PowerOccurrence {
    pub fn new(start: usize, period: usize, exponent: usize) -> Self {
        PowerOccurrence {
            start,
            period,
            exponent,
        }
    }

    /// Total length of the factor.
    pub fn len(&self) -> usize {
        self.period * self.exponent
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn end(&self) -> usize {
        self.start + self.len()
    }

    /// Whether `w` really has `exponent` identical blocks of length
    /// `period` at `start`.
    pub fn is_valid_in(&self, w: &Word) -> bool {
        if self.period == 0 || self.exponent == 0 || self.end() > w.len() {
            return false;
        }
        let s = &w.letters()[self.start..self.end()];
        (0..s.len() - self.period).all(|t| s[t] == s[t + self.period])
    }
}

/// True iff `w = u^p` for some non-empty `u`.
pub fn is_power(w: &Word, p: usize) -> bool {
    assert!(p >= 1, "exponent must be positive");
    let n = w.len();
    if n == 0 || !n.is_multiple_of(p) {
        return false;
    }
    let period = n / p;
    let s = w.letters();
    (0..n - period).all(|t| s[t] == s[t + period])
}

/// Every p-th-power factor of `w`, sorted by (start, period).
///
/// Overlapping and nested occurrences are all reported. The scan is the
/// naive quadratic candidate sweep; desk-scale words keep it cheap.
pub fn find_power_occurrences(w: &Word, p: usize) -> Vec<PowerOccurrence> {
    assert!(p >= 1, "exponent must be positive");
    let n = w.len();
    let s = w.letters();
    let mut occurrences = Vec::new();
    for start in 0..n {
        let max_period = (n - start) / p;
        for period in 1..=max_period {
            let total = period * p;
            if (0..total - period).all(|t| s[start + t] == s[start + t + period]) {
                occurrences.push(PowerOccurrence::new(start, period, p));
            }
        }
    }
    occurrences
}

/// True iff `w` contains no p-th power.
pub fn is_power_free(w: &Word, p: usize) -> bool {
    assert!(p >= 1, "exponent must be positive");
    let n = w.len();
    let s = w.letters();
    for start in 0..n {
        let max_period = (n - start) / p;
        for period in 1..=max_period {
            let total = period * p;
            if (0..total - period).all(|t| s[start + t] == s[start + t + period]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Alphabet::new(3).unwrap().parse_word(s).unwrap()
    }

    /// Independent oracle: extract the blocks explicitly and compare them,
    /// instead of the rolling period check used by the implementation.
    fn occurrences_by_block_compare(word: &Word, p: usize) -> Vec<PowerOccurrence> {
        let n = word.len();
        let s = word.letters();
        let mut found = Vec::new();
        for start in 0..n {
            for end in start + 1..=n {
                let len = end - start;
                if len % p != 0 {
                    continue;
                }
                let period = len / p;
                let first = &s[start..start + period];
                if (1..p).all(|c| &s[start + c * period..start + (c + 1) * period] == first) {
                    found.push(PowerOccurrence::new(start, period, p));
                }
            }
        }
        found.sort();
        found
    }

    #[test]
    fn letter_counts_examples() {
        let a3 = Alphabet::new(3).unwrap();
        assert_eq!(w("ababbcbc").letter_counts(&a3), vec![2, 4, 2]);
        assert_eq!(Word::empty().letter_counts(&a3), vec![0, 0, 0]);
        let a2 = Alphabet::new(2).unwrap();
        assert_eq!(
            a2.parse_word("abaab").unwrap().letter_counts(&a2),
            vec![3, 2]
        );
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(w("abc").reverse(), w("cba"));
        assert_eq!(Word::empty().reverse(), Word::empty());
        assert_eq!(w("abab").reverse(), w("baba"));
    }

    #[test]
    fn is_power_examples() {
        assert!(is_power(&w("ababab"), 3));
        assert!(!is_power(&w("aba"), 2));
        assert!(!is_power(&Word::empty(), 2));
        // every non-empty word is a 1st power of itself
        assert!(is_power(&w("abc"), 1));
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(
            find_power_occurrences(&w("ababbcbc"), 2),
            vec![
                PowerOccurrence::new(0, 2, 2),
                PowerOccurrence::new(3, 1, 2),
                PowerOccurrence::new(4, 2, 2),
            ]
        );
        assert_eq!(
            find_power_occurrences(&w("aaa"), 3),
            vec![PowerOccurrence::new(0, 1, 3)]
        );
        assert_eq!(find_power_occurrences(&w("abc"), 2), vec![]);
    }

    #[test]
    fn power_free_examples() {
        assert!(is_power_free(&w("abacbc"), 2));
        assert!(!is_power_free(&w("abab"), 2));
        // no binary word of length >= 4 is square-free
        let a2 = Alphabet::new(2).unwrap();
        for word in a2.words_of_length(4) {
            assert!(!is_power_free(&word, 2), "{word} should contain a square");
        }
    }

    #[test]
    fn occurrence_validity() {
        let word = w("ababbcbc");
        for occ in find_power_occurrences(&word, 2) {
            assert!(occ.is_valid_in(&word));
        }
        assert!(!PowerOccurrence::new(0, 3, 2).is_valid_in(&word));
        assert!(!PowerOccurrence::new(7, 2, 2).is_valid_in(&word));
    }

    #[test]
    fn word_enumeration_counts() {
        let a3 = Alphabet::new(3).unwrap();
        assert_eq!(a3.words_of_length(0).count(), 1);
        assert_eq!(a3.words_of_length(3).count(), 27);
        assert_eq!(a3.words_up_to(4).count(), 1 + 3 + 9 + 27 + 81);
        let all: Vec<_> = a3.words_of_length(2).collect();
        assert_eq!(all[0], w("aa"));
        assert_eq!(all[8], w("cc"));
    }

    #[test]
    fn parse_rejects_out_of_range() {
        let a2 = Alphabet::new(2).unwrap();
        assert_eq!(
            a2.parse_word("abc"),
            Err(WordError::LetterOutOfRange {
                letter: 'c',
                size: 2
            })
        );
        assert!(Alphabet::new(0).is_err());
        assert!(Alphabet::new(27).is_err());
    }

    fn arb_word(k: usize, maxlen: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0..k as u8, 0..=maxlen).prop_map(Word::from_letters)
    }

    proptest! {
        #[test]
        fn occurrences_match_block_compare_oracle(
            word in arb_word(3, 10),
            p in 1usize..=3,
        ) {
            prop_assert_eq!(
                find_power_occurrences(&word, p),
                occurrences_by_block_compare(&word, p)
            );
            prop_assert_eq!(
                is_power_free(&word, p),
                find_power_occurrences(&word, p).is_empty()
            );
        }

        #[test]
        fn constructed_powers_are_powers(
            u in prop::collection::vec(0..3u8, 1..=5).prop_map(Word::from_letters),
            p in 1usize..=4,
        ) {
            prop_assert!(is_power(&u.power(p), p));
        }

        #[test]
        fn reverse_is_involutive_and_power_compatible(
            u in arb_word(3, 6),
            p in 1usize..=3,
        ) {
            prop_assert_eq!(u.reverse().reverse(), u.clone());
            prop_assert_eq!(u.power(p).reverse(), u.reverse().power(p));
            prop_assert_eq!(is_power_free(&u, p), is_power_free(&u.reverse(), p));
        }
    }
}
