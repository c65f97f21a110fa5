use std::collections::BTreeMap;

use nczeta::shuffle::{coproduct, product, series_product, shuffle, stuffle, ProductKind};
use nczeta::{Alphabet, Coeff, Error, NCSeries, Word, Q};
use proptest::prelude::*;

// Shuffle by choosing which positions of the result come from u.
fn shuffle_oracle(u: &[u32], v: &[u32]) -> BTreeMap<Vec<u32>, i64> {
    let n = u.len() + v.len();
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != u.len() {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let w: Vec<u32> = (0..n)
            .map(|k| {
                if mask >> k & 1 == 1 {
                    i += 1;
                    u[i - 1]
                } else {
                    j += 1;
                    v[j - 1]
                }
            })
            .collect();
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

fn stuffle_oracle(u: &[u32], v: &[u32]) -> BTreeMap<Vec<u32>, i64> {
    let mut out = BTreeMap::new();
    if u.is_empty() || v.is_empty() {
        out.insert([u, v].concat(), 1);
        return out;
    }
    let mut push = |head: u32, rest: BTreeMap<Vec<u32>, i64>| {
        for (w, c) in rest {
            let mut x = vec![head];
            x.extend(w);
            *out.entry(x).or_insert(0) += c;
        }
    };
    push(u[0], stuffle_oracle(&u[1..], v));
    push(v[0], stuffle_oracle(u, &v[1..]));
    push(u[0] + v[0], stuffle_oracle(&u[1..], &v[1..]));
    out
}

fn as_map(s: &NCSeries<Q>) -> BTreeMap<Vec<u32>, i64> {
    s.terms()
        .map(|(w, c)| {
            assert!(c.is_integer());
            (w.letters().to_vec(), c.to_integer().try_into().unwrap())
        })
        .collect()
}

#[test]
fn small_examples() {
    let s = shuffle(&Word::x(&[0]), &Word::x(&[1])).unwrap();
    assert_eq!(as_map(&s), BTreeMap::from([(vec![0, 1], 1), (vec![1, 0], 1)]));
    let s = stuffle(&Word::y(&[1]), &Word::y(&[1])).unwrap();
    assert_eq!(as_map(&s), BTreeMap::from([(vec![1, 1], 2), (vec![2], 1)]));
    let s = stuffle(&Word::y(&[2]), &Word::y(&[3, 1])).unwrap();
    assert_eq!(as_map(&s), BTreeMap::from([(vec![2, 3, 1], 1), (vec![3, 2, 1], 1), (vec![3, 1, 2], 1), (vec![5, 1], 1), (vec![3, 3], 1)]));
}

#[test]
fn empty_word_is_unit() {
    let w = Word::x(&[0, 1, 1]);
    let s = shuffle(&w, &Word::empty(Alphabet::X)).unwrap();
    assert_eq!(as_map(&s), BTreeMap::from([(vec![0, 1, 1], 1)]));
}

#[test]
fn stuffle_needs_indexed_letters() {
    assert!(matches!(product(ProductKind::Stuffle, &Word::x(&[0]), &Word::x(&[1])), Err(Error::WrongAlphabet(_))));
    assert!(shuffle(&Word::x(&[0]), &Word::y(&[1])).is_err());
}

#[test]
fn coproduct_counit() {
    for kind in [ProductKind::Shuffle, ProductKind::Stuffle] {
        let w = Word::y(&[2, 1, 3]);
        let t = coproduct(&w, kind).unwrap();
        let e = Word::empty(Alphabet::Y);
        assert_eq!(t.get(&(e.clone(), w.clone())), Some(&Q::one()));
        assert_eq!(t.get(&(w.clone(), e)), Some(&Q::one()));
    }
}

#[test]
fn shuffle_coproduct_is_deconcatenation_of_subwords() {
    // Δ(x0 x1) = 1⊗01 + x0⊗x1 + x1⊗x0 + 01⊗1
    let t = coproduct(&Word::x(&[0, 1]), ProductKind::Shuffle).unwrap();
    assert_eq!(t.len(), 4);
    assert_eq!(t.get(&(Word::x(&[1]), Word::x(&[0]))), Some(&Q::one()));
}

fn x_word() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..2, 0..5)
}

fn y_word() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..4, 0..4)
}

proptest! {
    #[test]
    fn shuffle_matches_oracle(u in x_word(), v in x_word()) {
        let s = shuffle(&Word::x(&u), &Word::x(&v)).unwrap();
        prop_assert_eq!(as_map(&s), shuffle_oracle(&u, &v));
    }

    #[test]
    fn stuffle_matches_oracle(u in y_word(), v in y_word()) {
        let s = stuffle(&Word::y(&u), &Word::y(&v)).unwrap();
        prop_assert_eq!(as_map(&s), stuffle_oracle(&u, &v));
    }

    #[test]
    fn products_commute(u in y_word(), v in y_word()) {
        for kind in [ProductKind::Shuffle, ProductKind::Stuffle] {
            let a = product(kind, &Word::y(&u), &Word::y(&v)).unwrap();
            let b = product(kind, &Word::y(&v), &Word::y(&u)).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn products_associate(u in y_word(), v in y_word(), w in y_word()) {
        for kind in [ProductKind::Shuffle, ProductKind::Stuffle] {
            let d = 40;
            let m = |x: &[u32]| NCSeries::monomial(Word::y(x), Q::one(), d);
            let left = series_product(kind, &series_product(kind, &m(&u), &m(&v)).unwrap(), &m(&w)).unwrap();
            let right = series_product(kind, &m(&u), &series_product(kind, &m(&v), &m(&w)).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn shuffle_coefficients_sum_to_binomial(u in x_word(), v in x_word()) {
        let s = shuffle(&Word::x(&u), &Word::x(&v)).unwrap();
        let total: i64 = as_map(&s).values().sum();
        let n = (u.len() + v.len()) as u64;
        let k = u.len() as u64;
        let binom = (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
        prop_assert_eq!(total as u64, binom);
    }
}
