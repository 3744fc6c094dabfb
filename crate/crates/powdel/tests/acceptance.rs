//! The advertised guarantees, one test per criterion. Every test prints a
//! single PASS or FAIL line (visible with `--nocapture`) and then asserts,
//! so the whole gate reads as a checklist.

use std::collections::BTreeSet;

use powdel::{
    brute_deletable_set, build_epsilon_indexed, build_epsilon_lig, build_power_grammar,
    build_square_lig, d22_oracle, enumerate_language, insert_star_bounded,
    insertion_closure_indexed, insertion_closure_lig, is_power_free, mn_witnesses, squarefree_word,
    verify_theorem, Alphabet, EnumerationBounds, TheoremParams, Word,
};

fn report(label: &str, ok: bool) {
    println!("criterion {label}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {label} failed");
}

/// ε together with every p-th power of length at most `cap`.
fn powers_up_to(k: usize, p: usize, cap: usize) -> BTreeSet<Word> {
    let alphabet = Alphabet::new(k).unwrap();
    let mut set = BTreeSet::new();
    for u in alphabet.words_up_to(cap / p) {
        set.insert(u.power(p));
    }
    set
}

#[test]
fn criterion_01_two_letter_parity_characterization() {
    let r = verify_theorem(
        "binsq",
        TheoremParams {
            k: 2,
            p: 2,
            maxlen: 12,
        },
    )
    .unwrap();
    report(
        "1 (binary: deletable = strongly deletable = even letter counts, |w| <= 12)",
        r.passed && r.checked_count == 8190,
    );
}

#[test]
fn criterion_02_count_filter_is_necessary() {
    let squares = verify_theorem(
        "modp",
        TheoremParams {
            k: 3,
            p: 2,
            maxlen: 9,
        },
    )
    .unwrap();
    let cubes = verify_theorem(
        "modp",
        TheoremParams {
            k: 3,
            p: 3,
            maxlen: 9,
        },
    )
    .unwrap();
    report(
        "2 (p-deletable words have letter counts divisible by p, 3 letters, |w| <= 9)",
        squares.passed
            && cubes.passed
            && squares.checked_count == 29523
            && cubes.checked_count == 29523,
    );
}

#[test]
fn criterion_03_length_four_squares_and_square_free_generator() {
    let r = verify_theorem(
        "sixteen",
        TheoremParams {
            k: 2,
            p: 2,
            maxlen: 4,
        },
    )
    .unwrap();
    let x = squarefree_word(500);
    report(
        "3 (every binary length-4 word contains a square; 500-letter square-free word)",
        r.passed && r.checked_count == 16 && x.len() == 500 && is_power_free(&x, 2),
    );
}

#[test]
fn criterion_04_palindromic_doubles_strongly_deletable() {
    let r = verify_theorem(
        "sd-double",
        TheoremParams {
            k: 3,
            p: 2,
            maxlen: 7,
        },
    )
    .unwrap();
    report(
        "4 (x square-free, |x| <= 7: x reverse(x) is strongly 2-deletable)",
        r.passed,
    );
}

#[test]
fn criterion_05_separated_doubles_not_deletable() {
    let r = verify_theorem(
        "d-split",
        TheoremParams {
            k: 3,
            p: 2,
            maxlen: 7,
        },
    )
    .unwrap();
    report(
        "5 (xy square-free, y nonempty, |xy| <= 7: x y reverse(x) is not 2-deletable)",
        r.passed,
    );
}

#[test]
fn criterion_06_power_grammars_generate_exactly_the_powers() {
    let mut ok = true;
    for (k, p) in [(2, 2), (3, 2), (2, 3)] {
        let g = build_power_grammar(k, p);
        let r = enumerate_language(g.core(), &EnumerationBounds::for_length(8));
        ok &= r.complete && r.words == powers_up_to(k, p, 8);
    }
    for k in [2, 3] {
        let lig = build_square_lig(k);
        let pow = build_power_grammar(k, 2);
        for bound in 0..=8 {
            let a = enumerate_language(lig.core(), &EnumerationBounds::for_length(bound));
            let b = enumerate_language(pow.core(), &EnumerationBounds::for_length(bound));
            ok &= a.complete && b.complete && a.words == b.words;
        }
    }
    report(
        "6 (power grammars enumerate exactly {u^p}; both grammar classes agree to 8)",
        ok,
    );
}

#[test]
fn criterion_07_indexed_closure_generates_binary_deletable_words() {
    let closure = insertion_closure_indexed(&build_epsilon_indexed(), &build_power_grammar(2, 2));
    let r = enumerate_language(closure.core(), &EnumerationBounds::for_length(8));
    let brute = brute_deletable_set(2, 2, 8);
    let mut counts = [0usize; 9];
    for w in &r.words {
        counts[w.len()] += 1;
    }
    let parity = r.words.iter().all(|w| d22_oracle(w, 2).unwrap());
    report(
        "7 (indexed closure = binary 2-deletable set to 8; counts 1/2/8/32/128)",
        r.complete && r.words == brute && parity && counts == [1, 0, 2, 0, 8, 0, 32, 0, 128],
    );
}

#[test]
fn criterion_08_closures_match_brute_force_on_larger_parameters() {
    let lig = insertion_closure_lig(&build_epsilon_lig(), &build_square_lig(3));
    let a = enumerate_language(lig.core(), &EnumerationBounds::for_length(8));
    let indexed = insertion_closure_indexed(&build_epsilon_indexed(), &build_power_grammar(2, 3));
    let b = enumerate_language(indexed.core(), &EnumerationBounds::for_length(9));
    report(
        "8 (grammar closures match brute force: 3 letters p=2 to 8, binary p=3 to 9)",
        a.complete
            && a.words == brute_deletable_set(3, 2, 8)
            && b.complete
            && b.words == brute_deletable_set(2, 3, 9),
    );
}

#[test]
fn criterion_09_set_level_insertion_closure_matches_brute_force() {
    let mut ok = true;
    for (k, p, cap) in [(2, 2, 8), (3, 2, 8), (2, 3, 8), (2, 3, 9)] {
        let seed = BTreeSet::from([Word::empty()]);
        let star = insert_star_bounded(&seed, &powers_up_to(k, p, cap), cap);
        ok &= star == brute_deletable_set(k, p, cap);
    }
    report(
        "9 (iterated power insertion into ε = brute-force deletable sets)",
        ok,
    );
}

#[test]
fn criterion_10_distinguished_prefixes_with_verified_separators() {
    let set = mn_witnesses(3, 8, 1_000_000_000).unwrap();
    let mut ok = set.prefixes.len() == 8;
    for w in &set.prefixes {
        ok &= is_power_free(w, 2);
    }
    for m in 0..set.prefixes.len() {
        for n in 0..set.prefixes.len() {
            let cell = &set.separators[m][n];
            if m == n {
                ok &= cell.is_none();
            } else {
                ok &= cell.is_some() && set.separators[n][m] == *cell;
            }
        }
    }
    let distinct: BTreeSet<_> = set.prefixes.iter().collect();
    ok &= distinct.len() == set.prefixes.len();
    report(
        "10 (8 square-free prefixes pairwise distinguished, separators verified)",
        ok,
    );
}

#[test]
fn criterion_11_fibonacci_words_never_deletable() {
    let r = verify_theorem(
        "fib",
        TheoremParams {
            k: 2,
            p: 2,
            maxlen: 8,
        },
    )
    .unwrap();
    report(
        "11 (Fibonacci words S_0..S_8 fail the count filter and are never deletable)",
        r.passed && r.checked_count == 18,
    );
}
