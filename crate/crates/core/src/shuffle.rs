//! Shuffle and stuffle products, their dual coproducts, and the letter
//! morphisms between the `X` and `Y` encodings.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;

use crate::coeff::{Coeff, Q};
use crate::error::{Error, Result};
use crate::series::NCSeries;
use crate::word::{words_up_to, Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Shuffle,
    /// Quasi-shuffle on indexed letters, `y_i` and `y_j` merging to `y_{i+j}`.
    Stuffle,
}

impl ProductKind {
    fn check(self, alphabet: Alphabet) -> Result<()> {
        match self {
            ProductKind::Stuffle if !alphabet.is_indexed() => Err(Error::WrongAlphabet(Alphabet::Y)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductKind::Shuffle => write!(f, "shuffle"),
            ProductKind::Stuffle => write!(f, "stuffle"),
        }
    }
}

type Terms = BTreeMap<Vec<u32>, BigInt>;

struct Merger<'a> {
    kind: ProductKind,
    u: &'a [u32],
    v: &'a [u32],
    memo: HashMap<(usize, usize), Terms>,
}

impl Merger<'_> {
    fn run(&mut self, i: usize, j: usize) -> Terms {
        if let Some(t) = self.memo.get(&(i, j)) {
            return t.clone();
        }
        let out = if i == self.u.len() {
            Terms::from([(self.v[j..].to_vec(), BigInt::from(1))])
        } else if j == self.v.len() {
            Terms::from([(self.u[i..].to_vec(), BigInt::from(1))])
        } else {
            let (x, y) = (self.u[i], self.v[j]);
            let mut out = Terms::new();
            prepend(&mut out, x, self.run(i + 1, j));
            prepend(&mut out, y, self.run(i, j + 1));
            if self.kind == ProductKind::Stuffle {
                prepend(&mut out, x + y, self.run(i + 1, j + 1));
            }
            out
        };
        self.memo.insert((i, j), out.clone());
        out
    }
}

fn prepend(out: &mut Terms, letter: u32, tail: Terms) {
    for (w, c) in tail {
        let mut letters = Vec::with_capacity(w.len() + 1);
        letters.push(letter);
        letters.extend(w);
        *out.entry(letters).or_default() += c;
    }
}

/// `u ★ v` for the given product as a list of words with integer
/// multiplicities.
pub fn product_terms(kind: ProductKind, u: &Word, v: &Word) -> Result<Vec<(Word, BigInt)>> {
    u.alphabet().ensure(v.alphabet())?;
    kind.check(u.alphabet())?;
    let mut m = Merger { kind, u: u.letters(), v: v.letters(), memo: HashMap::new() };
    let alphabet = u.alphabet();
    Ok(m.run(0, 0).into_iter().map(|(w, c)| (Word::from_raw(alphabet, w), c)).collect())
}

/// `u ★ v` as an exact series truncated at `weight(u) + weight(v)`.
pub fn product(kind: ProductKind, u: &Word, v: &Word) -> Result<NCSeries<Q>> {
    let terms = product_terms(kind, u, v)?;
    NCSeries::from_terms(u.alphabet(), u.weight() + v.weight(), terms.into_iter().map(|(w, c)| (w, Q::from_integer(c))))
}

pub fn shuffle(u: &Word, v: &Word) -> Result<NCSeries<Q>> {
    product(ProductKind::Shuffle, u, v)
}

pub fn stuffle(u: &Word, v: &Word) -> Result<NCSeries<Q>> {
    product(ProductKind::Stuffle, u, v)
}

/// Bilinear extension of the product to series, truncated at `min(Da, Db)`.
pub fn series_product<C: Coeff>(kind: ProductKind, a: &NCSeries<C>, b: &NCSeries<C>) -> Result<NCSeries<C>> {
    a.alphabet().ensure(b.alphabet())?;
    kind.check(a.alphabet())?;
    let d = a.max_weight().min(b.max_weight());
    let mut out = NCSeries::zero(a.alphabet(), d);
    for (u, ca) in a.terms() {
        for (v, cb) in b.terms() {
            if u.weight() + v.weight() > d {
                continue;
            }
            let c = ca.mul(cb);
            for (w, k) in product_terms(kind, u, v)? {
                out.add_term(w, c.scale(&Q::from_integer(k)));
            }
        }
    }
    Ok(out)
}

/// Sparse element of the tensor square, `u ⊗ v -> coefficient`.
pub type TensorSeries = BTreeMap<(Word, Word), Q>;

/// The coproduct dual to the product: the coefficient of `u ⊗ v` is the
/// coefficient of `w` in `u ★ v`. Both duals are concatenation morphisms,
/// so `Δ(w)` is the product of the letter coproducts.
pub fn coproduct(w: &Word, kind: ProductKind) -> Result<TensorSeries> {
    kind.check(w.alphabet())?;
    let a = w.alphabet();
    let mut acc: Vec<(Vec<u32>, Vec<u32>, BigInt)> = vec![(vec![], vec![], BigInt::from(1))];
    for &l in w.letters() {
        let mut splits = vec![(Some(l), None), (None, Some(l))];
        if kind == ProductKind::Stuffle {
            splits.extend((1..l).map(|i| (Some(i), Some(l - i))));
        }
        let mut next = Vec::with_capacity(acc.len() * splits.len());
        for (u, v, c) in &acc {
            for (lu, lv) in &splits {
                let mut u2 = u.clone();
                let mut v2 = v.clone();
                u2.extend(lu);
                v2.extend(lv);
                next.push((u2, v2, c.clone()));
            }
        }
        acc = next;
    }
    let mut out = TensorSeries::new();
    for (u, v, c) in acc {
        *out.entry((Word::from_raw(a, u), Word::from_raw(a, v))).or_default() += Q::from_integer(c);
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

pub fn format_tensor(t: &TensorSeries) -> String {
    t.iter().map(|((u, v), c)| format!("{c}*{u}⊗{v}")).collect::<Vec<_>>().join("\n")
}

/// Largest character defect `dist(<S|u><S|v>, <S|u★v>)` over nonempty
/// words with `weight(u) + weight(v) <= D`, together with the worst pair.
/// The constant term must equal one.
pub fn character_defect<C: Coeff>(
    s: &NCSeries<C>,
    kind: ProductKind,
    dist: impl Fn(&C, &C) -> f64,
) -> Result<(f64, Option<(Word, Word)>)> {
    kind.check(s.alphabet())?;
    let one_defect = dist(&s.constant_term(), &C::one());
    let mut worst = (one_defect, None);
    let d = s.max_weight();
    let words: Vec<Word> = words_up_to(s.alphabet(), d).into_iter().filter(|w| !w.is_empty()).collect();
    for u in &words {
        for v in &words {
            if u.weight() + v.weight() > d || u > v {
                continue;
            }
            let lhs = s.coeff(u).mul(&s.coeff(v));
            let mut rhs = C::zero();
            for (w, k) in product_terms(kind, u, v)? {
                rhs = rhs.add(&s.coeff(&w).scale(&Q::from_integer(k)));
            }
            let e = dist(&lhs, &rhs);
            if e > worst.0 || (e.is_nan() && !worst.0.is_nan()) {
                worst = (e, Some((u.clone(), v.clone())));
            }
        }
    }
    Ok(worst)
}

/// Checks the character (group-like) property within `tol`.
pub fn check_group_like<C: Coeff>(
    s: &NCSeries<C>,
    kind: ProductKind,
    tol: f64,
    dist: impl Fn(&C, &C) -> f64,
) -> Result<()> {
    let (e, pair) = character_defect(s, kind, dist)?;
    if e <= tol {
        return Ok(());
    }
    match pair {
        Some((u, v)) => Err(Error::NotGroupLike { u, v }),
        None => Err(Error::ConstantTerm { expected: "1", found: s.constant_term().to_string() }),
    }
}

/// Exact distance: zero when equal, infinite otherwise.
pub fn exact_dist<C: Coeff>(a: &C, b: &C) -> f64 {
    if a == b {
        0.0
    } else {
        f64::INFINITY
    }
}

/// `S` is primitive iff its constant term vanishes and `<S|u★v> = 0` for all
/// nonempty `u, v`. Returns the first failing pair.
pub fn check_primitive<C: Coeff>(s: &NCSeries<C>, kind: ProductKind) -> Result<()> {
    kind.check(s.alphabet())?;
    if !s.constant_term().is_zero() {
        return Err(Error::NotPrimitive("constant term".into()));
    }
    let d = s.max_weight();
    let words: Vec<Word> = words_up_to(s.alphabet(), d).into_iter().filter(|w| !w.is_empty()).collect();
    for u in &words {
        for v in &words {
            if u.weight() + v.weight() > d || u > v {
                continue;
            }
            let mut acc = C::zero();
            for (w, k) in product_terms(kind, u, v)? {
                acc = acc.add(&s.coeff(&w).scale(&Q::from_integer(k)));
            }
            if !acc.is_zero() {
                return Err(Error::NotPrimitive(format!("{u} ★ {v}")));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RhoVariant {
    /// `ρ(x0) = -x1`, `ρ(x1) = -x0`, extended multiplicatively.
    Morphism,
    /// The same letter map extended anti-multiplicatively (word reversed).
    Mirror,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    PiX,
    PiY,
    Rho(RhoVariant),
}

/// `y_n -> x0^{n-1} x1`.
pub fn pi_x_word(w: &Word) -> Result<Word> {
    if w.alphabet() != Alphabet::Y {
        return Err(Error::WrongAlphabet(Alphabet::Y));
    }
    let mut letters = Vec::with_capacity(w.weight());
    for &n in w.letters() {
        letters.extend(std::iter::repeat(0).take(n as usize - 1));
        letters.push(1);
    }
    Ok(Word::from_raw(Alphabet::X, letters))
}

/// Inverse of [`pi_x_word`] on `X*x1 ∪ {1}`; `None` for words ending in `x0`.
pub fn pi_y_word(w: &Word) -> Result<Option<Word>> {
    if w.alphabet() != Alphabet::X {
        return Err(Error::WrongAlphabet(Alphabet::X));
    }
    if w.last() == Some(0) {
        return Ok(None);
    }
    let mut out = Vec::new();
    let mut run = 1;
    for &l in w.letters() {
        if l == 0 {
            run += 1;
        } else {
            out.push(run);
            run = 1;
        }
    }
    Ok(Some(Word::from_raw(Alphabet::Y, out)))
}

/// `ρ(w)` as a sign and a word.
pub fn rho_word(w: &Word, variant: RhoVariant) -> Result<(i32, Word)> {
    if w.alphabet() != Alphabet::X {
        return Err(Error::WrongAlphabet(Alphabet::X));
    }
    let mut letters: Vec<u32> = w.letters().iter().map(|l| 1 - l).collect();
    if variant == RhoVariant::Mirror {
        letters.reverse();
    }
    let sign = if w.len() % 2 == 0 { 1 } else { -1 };
    Ok((sign, Word::from_raw(Alphabet::X, letters)))
}

/// Applies a projection to a series. Weights are preserved, so is the
/// truncation degree.
pub fn project<C: Coeff>(s: &NCSeries<C>, mode: Projection) -> Result<NCSeries<C>> {
    let d = s.max_weight();
    match mode {
        Projection::PiX => {
            let mut out = NCSeries::zero(Alphabet::X, d);
            for (w, c) in s.terms() {
                out.add_term(pi_x_word(w)?, c.clone());
            }
            Ok(out)
        }
        Projection::PiY => {
            let mut out = NCSeries::zero(Alphabet::Y, d);
            for (w, c) in s.terms() {
                if let Some(y) = pi_y_word(w)? {
                    out.add_term(y, c.clone());
                }
            }
            Ok(out)
        }
        Projection::Rho(variant) => {
            let mut out = NCSeries::zero(Alphabet::X, d);
            for (w, c) in s.terms() {
                let (sign, w2) = rho_word(w, variant)?;
                out.add_term(w2, if sign < 0 { c.neg() } else { c.clone() });
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::qi;

    fn series(a: Alphabet, terms: &[(&str, i64)]) -> NCSeries<Q> {
        let d = terms.iter().map(|(w, _)| Word::parse(a, w).unwrap().weight()).max().unwrap_or(0);
        NCSeries::from_terms(a, d, terms.iter().map(|(w, c)| (Word::parse(a, w).unwrap(), qi(*c)))).unwrap()
    }

    #[test]
    fn shuffle_examples() {
        let x = |s: &str| Word::parse(Alphabet::X, s).unwrap();
        assert_eq!(shuffle(&x("0"), &x("1")).unwrap(), series(Alphabet::X, &[("01", 1), ("10", 1)]));
        assert_eq!(shuffle(&x("0"), &x("0")).unwrap(), series(Alphabet::X, &[("00", 2)]));
        assert_eq!(shuffle(&x("01"), &x("1")).unwrap(), series(Alphabet::X, &[("011", 2), ("101", 1)]));
    }

    #[test]
    fn stuffle_examples() {
        assert_eq!(stuffle(&Word::y(&[1]), &Word::y(&[1])).unwrap(), series(Alphabet::Y, &[("1,1", 2), ("2", 1)]));
        assert_eq!(
            stuffle(&Word::y(&[2]), &Word::y(&[1])).unwrap(),
            series(Alphabet::Y, &[("2,1", 1), ("1,2", 1), ("3", 1)])
        );
        assert_eq!(stuffle(&Word::empty(Alphabet::Y), &Word::y(&[5])).unwrap(), series(Alphabet::Y, &[("5", 1)]));
        assert!(stuffle(&Word::x(&[0]), &Word::x(&[1])).is_err());
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct(&Word::y(&[2]), ProductKind::Stuffle).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d[&(Word::y(&[1]), Word::y(&[1]))], qi(1));
        let d = coproduct(&Word::x(&[0, 1]), ProductKind::Shuffle).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.values().all(|c| *c == qi(1)));
        assert!(d.contains_key(&(Word::x(&[1]), Word::x(&[0]))));
    }

    #[test]
    fn projections() {
        assert_eq!(pi_x_word(&Word::y(&[2, 1])).unwrap(), Word::x(&[0, 1, 1]));
        assert_eq!(pi_y_word(&Word::x(&[1, 0])).unwrap(), None);
        assert_eq!(pi_y_word(&Word::x(&[0, 1])).unwrap(), Some(Word::y(&[2])));
        assert_eq!(rho_word(&Word::x(&[0, 1]), RhoVariant::Morphism).unwrap(), (1, Word::x(&[1, 0])));
        assert_eq!(rho_word(&Word::x(&[0, 0, 1]), RhoVariant::Mirror).unwrap(), (-1, Word::x(&[0, 1, 1])));
    }

    #[test]
    fn exp_of_letter_is_group_like() {
        let s = NCSeries::monomial(Word::x(&[0]), qi(1), 4).exp().unwrap();
        check_group_like(&s, ProductKind::Shuffle, 0.0, exact_dist).unwrap();
        let bad = series(Alphabet::X, &[("", 1), ("0", 1), ("00", 1)]);
        assert!(matches!(check_group_like(&bad, ProductKind::Shuffle, 0.0, exact_dist), Err(Error::NotGroupLike { .. })));
    }

    #[test]
    fn brackets_are_primitive() {
        check_primitive(&crate::series::ad_power(3), ProductKind::Shuffle).unwrap();
        assert!(check_primitive(&series(Alphabet::X, &[("01", 1)]), ProductKind::Shuffle).is_err());
    }
}
