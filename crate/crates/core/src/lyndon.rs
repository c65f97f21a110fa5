//! Lyndon words, Chen-Fox-Lyndon factorization, the PBW basis `P_w` with its
//! dual `S_w`, and factorization of group-like series into ordered products
//! of exponentials indexed by Lyndon words.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::coeff::{factorial, Coeff, Q};
use crate::error::Result;
use crate::series::NCSeries;
use crate::shuffle::{check_group_like, series_product, ProductKind};
use crate::word::{words_up_to, Alphabet, Word};

/// Nonempty and strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &Word) -> bool {
    let l = w.letters();
    !l.is_empty() && (1..l.len()).all(|i| l < &l[i..])
}

/// All Lyndon words of weight `<= max_weight`, in graded order.
pub fn lyndon_words(alphabet: Alphabet, max_weight: usize) -> Vec<Word> {
    words_up_to(alphabet, max_weight).into_iter().filter(is_lyndon).collect()
}

/// Duval's algorithm: the unique non-increasing factorization into Lyndon
/// words. The empty word has no factors.
pub fn cfl_factorize(w: &Word) -> Vec<Word> {
    let s = w.letters();
    let n = s.len();
    let mut out = Vec::new();
    let mut k = 0;
    while k < n {
        let (mut i, mut j) = (k, k + 1);
        while j < n && s[i] <= s[j] {
            i = if s[i] < s[j] { k } else { i + 1 };
            j += 1;
        }
        while k <= i {
            out.push(w.slice(k..k + j - i));
            k += j - i;
        }
    }
    out
}

/// `l = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(l: &Word) -> Option<(Word, Word)> {
    (1..l.len()).map(|i| (l.slice(0..i), l.slice(i..l.len()))).find(|(_, v)| is_lyndon(v))
}

fn letter_series(w: &Word) -> NCSeries<Q> {
    NCSeries::monomial(w.clone(), Q::one(), w.weight())
}

/// The Lyndon bracketing `P_l` of a Lyndon word.
fn p_lyndon(l: &Word) -> NCSeries<Q> {
    match standard_factorization(l) {
        None => letter_series(l),
        Some((u, v)) => {
            let d = l.weight();
            p_lyndon(&u).truncate(d).bracket(&p_lyndon(&v).truncate(d)).expect("same alphabet")
        }
    }
}

/// PBW element `P_w`: product of the bracketings over the CFL factors.
pub fn pbw(w: &Word) -> NCSeries<Q> {
    let d = w.weight();
    let mut acc = NCSeries::one(w.alphabet(), d);
    for f in cfl_factorize(w) {
        acc = acc.concat(&p_lyndon(&f).truncate(d)).expect("same alphabet");
    }
    acc
}

/// Dual PBW element `S_w`, with `<P_u, S_v> = δ_{u,v}`.
pub fn dual_pbw(w: &Word) -> NCSeries<Q> {
    let d = w.weight();
    let a = w.alphabet();
    if w.is_empty() {
        return NCSeries::one(a, d);
    }
    let factors = cfl_factorize(w);
    if factors.len() == 1 {
        let head = Word::letter(a, w.letters()[0]);
        let tail = dual_pbw(&w.slice(1..w.len()));
        return letter_series(&head).truncate(d).concat(&tail.truncate(d)).expect("same alphabet");
    }
    let mut acc = NCSeries::one(a, d);
    let mut denom = Q::one();
    let mut run = 0;
    for (i, f) in factors.iter().enumerate() {
        acc = series_product(ProductKind::Shuffle, &acc, &dual_pbw(f).truncate(d)).expect("same alphabet");
        run += 1;
        if i + 1 == factors.len() || factors[i + 1] != *f {
            denom *= Q::from_integer(factorial(run));
            run = 0;
        }
    }
    acc.scale_q(&(Q::one() / denom))
}

pub fn dual_bases(w: &Word) -> (NCSeries<Q>, NCSeries<Q>) {
    (pbw(w), dual_pbw(w))
}

/// `Σ_w <a|w><b|w>`.
pub fn pairing(a: &NCSeries<Q>, b: &NCSeries<Q>) -> Q {
    a.terms().map(|(w, c)| c * b.coeff(w)).fold(Q::zero(), |acc, x| acc + x)
}

/// `π1(y_k) = Σ_j (-1)^{j-1}/j Σ_{s1+...+sj=k} y_{s1}...y_{sj}`.
fn pi1_letter(alphabet: Alphabet, k: u32, d: usize) -> NCSeries<Q> {
    let mut out = NCSeries::zero(alphabet, d);
    for w in crate::word::words_of_weight(alphabet, k as usize) {
        let j = w.len() as i64;
        let sign = if j % 2 == 1 { 1 } else { -1 };
        out.add_term(Word::from_raw(alphabet, w.letters().to_vec()), Q::new(sign.into(), j.into()));
    }
    out
}

/// Concatenation morphism `y_k -> π1(y_k)`; it carries shuffle-primitive
/// elements to stuffle-primitive ones.
pub fn pi1(s: &NCSeries<Q>) -> NCSeries<Q> {
    let a = s.alphabet();
    let d = s.max_weight();
    let mut out = NCSeries::zero(a, d);
    for (w, c) in s.terms() {
        let mut img = NCSeries::one(a, d);
        for &l in w.letters() {
            img = img.concat(&pi1_letter(a, l, d)).expect("same alphabet");
        }
        out = out.add(&img.scale_q(c)).expect("same alphabet");
    }
    out
}

/// The primitive element attached to a Lyndon word for the given product:
/// `P_l` for shuffle, `π1(P_l)` for stuffle.
pub fn primitive_basis(l: &Word, kind: ProductKind) -> NCSeries<Q> {
    match kind {
        ProductKind::Shuffle => p_lyndon(l),
        ProductKind::Stuffle => pi1(&p_lyndon(l)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Largest Lyndon word leftmost.
    Decreasing,
    Increasing,
}

fn ordered(mut ls: Vec<Word>, direction: Direction) -> Vec<Word> {
    ls.sort_by(|a, b| a.lex_cmp(b));
    if direction == Direction::Decreasing {
        ls.reverse();
    }
    ls
}

/// `∏ exp(c_l B_l)` over the Lyndon words present in `coeffs`, in the given
/// order, where `B_l` is the primitive basis element of `kind`.
pub fn reconstruct<C: Coeff>(
    coeffs: &BTreeMap<Word, C>,
    alphabet: Alphabet,
    kind: ProductKind,
    direction: Direction,
    max_weight: usize,
) -> Result<NCSeries<C>> {
    let mut acc = NCSeries::one(alphabet, max_weight);
    for l in ordered(coeffs.keys().filter(|l| l.weight() <= max_weight).cloned().collect(), direction) {
        let c = &coeffs[&l];
        if c.is_zero() {
            continue;
        }
        let b = primitive_basis(&l, kind).map(|q| c.scale(q));
        let b = NCSeries::from_terms(alphabet, max_weight, b.terms().map(|(w, v)| (w.clone(), v.clone())))?;
        acc = acc.concat(&b.exp()?)?;
    }
    Ok(acc)
}

/// Lyndon coordinates of a group-like series, found degree by degree: the
/// degree-`n` defect of the partial product is a combination of the `B_l`
/// with `weight(l) = n`, solved triangularly.
pub fn exp_factorize_unchecked<C: Coeff>(
    s: &NCSeries<C>,
    kind: ProductKind,
    direction: Direction,
) -> Result<BTreeMap<Word, C>> {
    let a = s.alphabet();
    let d = s.max_weight();
    let mut coeffs: BTreeMap<Word, C> = BTreeMap::new();
    for n in 1..=d {
        let partial = reconstruct(&coeffs, a, kind, direction, n)?;
        let defect = s.truncate(n).sub(&partial)?.component(n);
        let mut ls: Vec<Word> = lyndon_words(a, n).into_iter().filter(|l| l.weight() == n).collect();
        ls.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.lex_cmp(y)));
        let bases: Vec<NCSeries<Q>> = ls.iter().map(|l| primitive_basis(l, kind)).collect();
        for (i, l) in ls.iter().enumerate() {
            let mut c = defect.coeff(l);
            for (j, prev) in ls[..i].iter().enumerate() {
                let k = bases[j].coeff(l);
                if !k.is_zero() {
                    c = c.sub(&coeffs[prev].scale(&k));
                }
            }
            debug_assert!(bases[i].coeff(l) == Q::one());
            coeffs.insert(l.clone(), c);
        }
    }
    Ok(coeffs)
}

/// [`exp_factorize_unchecked`] after checking the character property within
/// `tol` under `dist`.
pub fn exp_factorize<C: Coeff>(
    s: &NCSeries<C>,
    kind: ProductKind,
    direction: Direction,
    tol: f64,
    dist: impl Fn(&C, &C) -> f64,
) -> Result<BTreeMap<Word, C>> {
    check_group_like(s, kind, tol, dist)?;
    exp_factorize_unchecked(s, kind, direction)
}

/// Sorts Lyndon words in pure lexicographic order.
pub fn lex_sorted(mut ws: Vec<Word>) -> Vec<Word> {
    ws.sort_by(|a, b| match a.lex_cmp(b) {
        Ordering::Equal => a.cmp(b),
        o => o,
    });
    ws
}
