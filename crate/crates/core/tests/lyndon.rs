use std::collections::BTreeMap;

use nczeta::coeff::q;
use nczeta::lyndon::{
    cfl_factorize, dual_bases, exp_factorize, exp_factorize_unchecked, is_lyndon, lyndon_words, pairing,
    primitive_basis, reconstruct, standard_factorization, Direction,
};
use nczeta::polylog::h_series;
use nczeta::shuffle::{check_group_like, check_primitive, exact_dist, ProductKind};
use nczeta::word::{words_of_weight, words_up_to};
use nczeta::{Alphabet, Word, Q};
use proptest::prelude::*;

// Lyndon: primitive and strictly smaller than each proper rotation.
fn lyndon_oracle(w: &[u32]) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| w < &[&w[k..], &w[..k]].concat()[..])
}

fn mobius(n: usize) -> i64 {
    let (mut n, mut m, mut p) = (n, 1i64, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        -m
    } else {
        m
    }
}

#[test]
fn necklace_counts() {
    for n in 1..=10 {
        let count = lyndon_words(Alphabet::X, n).iter().filter(|w| w.weight() == n).count() as i64;
        let witt: i64 = (1..=n).filter(|d| n % d == 0).map(|d| mobius(d) * 2i64.pow((n / d) as u32)).sum::<i64>() / n as i64;
        assert_eq!(count, witt, "n = {n}");
    }
}

#[test]
fn generated_words_match_oracle() {
    for a in [Alphabet::X, Alphabet::Y] {
        let listed = lyndon_words(a, 6);
        let brute: Vec<Word> = words_up_to(a, 6).into_iter().filter(|w| lyndon_oracle(w.letters())).collect();
        assert_eq!(listed.len(), brute.len());
        for w in &brute {
            assert!(listed.contains(w), "{w}");
        }
        assert!(listed.windows(2).all(|p| p[0] < p[1]), "graded order");
    }
}

#[test]
fn small_x_listing() {
    let ws: Vec<String> = lyndon_words(Alphabet::X, 3).iter().map(|w| w.to_string()).collect();
    assert_eq!(ws, ["0", "1", "01", "001", "011"]);
}

#[test]
fn standard_factorization_splits_into_lyndon() {
    for l in lyndon_words(Alphabet::X, 7).into_iter().filter(|l| l.len() > 1) {
        let (u, v) = standard_factorization(&l).unwrap();
        assert!(is_lyndon(&u) && is_lyndon(&v));
        assert_eq!(u.concat(&v), l);
        assert_eq!(u.lex_cmp(&v), std::cmp::Ordering::Less);
    }
}

#[test]
fn pbw_dual_pairing() {
    for n in 1..=4 {
        let ws = words_of_weight(Alphabet::X, n);
        let bases: Vec<_> = ws.iter().map(dual_bases).collect();
        for (i, (p, _)) in bases.iter().enumerate() {
            for (j, (_, s)) in bases.iter().enumerate() {
                let expect = if i == j { Q::from_integer(1.into()) } else { q(0, 1) };
                assert_eq!(pairing(p, s), expect, "<P_{}, S_{}>", ws[i], ws[j]);
            }
        }
    }
}

#[test]
fn primitive_bases_are_primitive() {
    for l in lyndon_words(Alphabet::Y, 4) {
        check_primitive(&primitive_basis(&l, ProductKind::Stuffle), ProductKind::Stuffle).unwrap();
        check_primitive(&primitive_basis(&l, ProductKind::Shuffle), ProductKind::Shuffle).unwrap();
    }
}

#[test]
fn harmonic_series_round_trip() {
    for n in [1, 2, 5, 9] {
        let h = h_series(n, 4).unwrap();
        check_group_like(&h, ProductKind::Stuffle, 0.0, exact_dist).unwrap();
        for dir in [Direction::Decreasing, Direction::Increasing] {
            let c = exp_factorize(&h, ProductKind::Stuffle, dir, 0.0, exact_dist).unwrap();
            let back = reconstruct(&c, Alphabet::Y, ProductKind::Stuffle, dir, 4).unwrap();
            assert_eq!(back, h, "N = {n}");
        }
    }
}

#[test]
fn harmonic_letter_coordinate() {
    // The y1 coordinate of H(N) is H_1(N).
    let h = h_series(4, 3).unwrap();
    let c = exp_factorize_unchecked(&h, ProductKind::Stuffle, Direction::Decreasing).unwrap();
    assert_eq!(c[&Word::y(&[1])], q(25, 12));
}

#[test]
fn non_group_like_rejected() {
    let mut h = h_series(3, 3).unwrap();
    h.add_term(Word::y(&[1, 1]), q(1, 1));
    assert!(exp_factorize(&h, ProductKind::Stuffle, Direction::Decreasing, 0.0, exact_dist).is_err());
}

proptest! {
    #[test]
    fn is_lyndon_matches_oracle(w in prop::collection::vec(0u32..2, 1..10)) {
        prop_assert_eq!(is_lyndon(&Word::x(&w)), lyndon_oracle(&w));
    }

    #[test]
    fn cfl_factors(w in prop::collection::vec(1u32..4, 0..8)) {
        let w = Word::y(&w);
        let fs = cfl_factorize(&w);
        let joined = fs.iter().fold(Word::empty(Alphabet::Y), |acc, f| acc.concat(f));
        prop_assert_eq!(joined, w);
        prop_assert!(fs.iter().all(is_lyndon));
        prop_assert!(fs.windows(2).all(|p| p[0].lex_cmp(&p[1]) != std::cmp::Ordering::Less));
    }

    #[test]
    fn shuffle_coordinates_round_trip(cs in prop::collection::vec(-5i64..6, 5)) {
        let ls: Vec<Word> = lyndon_words(Alphabet::X, 3);
        let coeffs: BTreeMap<Word, Q> = ls.iter().cloned().zip(cs.iter().map(|&c| q(c, 2))).collect();
        let s = reconstruct(&coeffs, Alphabet::X, ProductKind::Shuffle, Direction::Decreasing, 3).unwrap();
        check_group_like(&s, ProductKind::Shuffle, 0.0, exact_dist).unwrap();
        let back = exp_factorize_unchecked(&s, ProductKind::Shuffle, Direction::Decreasing).unwrap();
        for (l, c) in &coeffs {
            prop_assert_eq!(back.get(l).cloned().unwrap_or_else(|| q(0, 1)), c.clone());
        }
    }
}
