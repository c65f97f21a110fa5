//! Graded, weight-truncated noncommutative series.
//!
//! An [`NCSeries`] is a finite map `Word -> coefficient` holding only nonzero
//! coefficients of words with weight at most the truncation degree. The
//! concatenation product truncates at the smaller of the two degrees.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{factorial, Coeff, Magnitude, Q};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

#[derive(Clone)]
pub struct NCSeries<C> {
    alphabet: Alphabet,
    max_weight: usize,
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> NCSeries<C> {
    pub fn zero(alphabet: Alphabet, max_weight: usize) -> Self {
        NCSeries { alphabet, max_weight, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: Alphabet, max_weight: usize) -> Self {
        Self::monomial(Word::empty(alphabet), C::one(), max_weight)
    }

    pub fn monomial(word: Word, c: C, max_weight: usize) -> Self {
        let mut s = Self::zero(word.alphabet(), max_weight);
        s.add_term(word, c);
        s
    }

    pub fn from_terms(
        alphabet: Alphabet,
        max_weight: usize,
        terms: impl IntoIterator<Item = (Word, C)>,
    ) -> Result<Self> {
        let mut s = Self::zero(alphabet, max_weight);
        for (w, c) in terms {
            alphabet.ensure(w.alphabet())?;
            s.add_term(w, c);
        }
        Ok(s)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Word::empty(self.alphabet))
    }

    /// Adds `c` to the coefficient of `w`; words above the truncation degree
    /// are dropped.
    pub fn add_term(&mut self, w: Word, c: C) {
        debug_assert_eq!(w.alphabet(), self.alphabet);
        if c.is_zero() || w.weight() > self.max_weight {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn truncate(&self, max_weight: usize) -> Self {
        NCSeries {
            alphabet: self.alphabet,
            max_weight,
            terms: self.terms.iter().filter(|(w, _)| w.weight() <= max_weight).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// The homogeneous component of the given weight.
    pub fn component(&self, weight: usize) -> Self {
        NCSeries {
            alphabet: self.alphabet,
            max_weight: self.max_weight,
            terms: self.terms.iter().filter(|(w, _)| w.weight() == weight).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        self.alphabet.ensure(other.alphabet)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.truncate(self.max_weight.min(other.max_weight));
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero(self.alphabet, self.max_weight);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.mul(k));
        }
        out
    }

    pub fn scale_q(&self, k: &Q) -> Self {
        let mut out = Self::zero(self.alphabet, self.max_weight);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.scale(k));
        }
        out
    }

    /// Concatenation product, truncated at `min(Da, Db)`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.max_weight.min(other.max_weight);
        let mut out = Self::zero(self.alphabet, d);
        for (u, a) in &self.terms {
            let wu = u.weight();
            if wu > d {
                continue;
            }
            for (v, b) in &other.terms {
                if wu + v.weight() > d {
                    continue;
                }
                out.add_term(u.concat(v), a.mul(b));
            }
        }
        Ok(out)
    }

    /// Product of a list of series, left to right.
    pub fn product<'a>(alphabet: Alphabet, max_weight: usize, factors: impl IntoIterator<Item = &'a Self>) -> Result<Self> {
        let mut acc = Self::one(alphabet, max_weight);
        for f in factors {
            acc = acc.concat(f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, n: usize) -> Result<Self> {
        let mut acc = Self::one(self.alphabet, self.max_weight);
        for _ in 0..n {
            acc = acc.concat(self)?;
        }
        Ok(acc)
    }

    /// `exp(s) = Σ s^k / k!` for `s` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm { expected: "0", found: self.constant_term().to_string() });
        }
        let mut acc = Self::one(self.alphabet, self.max_weight);
        let mut power = Self::one(self.alphabet, self.max_weight);
        for k in 1..=self.max_weight {
            power = power.concat(self)?;
            if power.is_empty() {
                break;
            }
            let inv = Q::new(1.into(), factorial(k));
            acc = acc.add(&power.scale_q(&inv))?;
        }
        Ok(acc)
    }

    /// `log(s) = Σ (-1)^{k+1} (s - 1)^k / k` for `s` with constant term 1.
    pub fn log(&self) -> Result<Self> {
        let t = self.sub(&Self::one(self.alphabet, self.max_weight))?;
        if !t.constant_term().is_zero() {
            return Err(Error::ConstantTerm { expected: "1", found: self.constant_term().to_string() });
        }
        let mut acc = Self::zero(self.alphabet, self.max_weight);
        let mut power = Self::one(self.alphabet, self.max_weight);
        for k in 1..=self.max_weight {
            power = power.concat(&t)?;
            if power.is_empty() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale_q(&Q::new(sign.into(), (k as i64).into())))?;
        }
        Ok(acc)
    }

    /// Concatenation inverse `Σ (1 - s)^k` for `s` with constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        let t = Self::one(self.alphabet, self.max_weight).sub(self)?;
        if !t.constant_term().is_zero() {
            return Err(Error::ConstantTerm { expected: "1", found: self.constant_term().to_string() });
        }
        let mut acc = Self::one(self.alphabet, self.max_weight);
        let mut power = Self::one(self.alphabet, self.max_weight);
        for _ in 1..=self.max_weight {
            power = power.concat(&t)?;
            if power.is_empty() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    /// Lie bracket `[a, b] = ab - ba`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.concat(other)?.sub(&other.concat(self)?)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NCSeries<D> {
        let mut out = NCSeries::zero(self.alphabet, self.max_weight);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Applies a word-to-series map linearly (used for letter morphisms).
    pub fn map_words(&self, alphabet: Alphabet, max_weight: usize, f: impl Fn(&Word) -> Vec<(Word, Q)>) -> NCSeries<C> {
        let mut out = NCSeries::zero(alphabet, max_weight);
        for (w, c) in &self.terms {
            for (w2, k) in f(w) {
                out.add_term(w2, c.scale(&k));
            }
        }
        out
    }

    /// Maximum of `dist(a_w, b_w)` over words of weight `<= min(Da, Db)`.
    pub fn max_diff_by(&self, other: &Self, dist: impl Fn(&C, &C) -> f64) -> f64 {
        let d = self.max_weight.min(other.max_weight);
        let zero = C::zero();
        let mut m: f64 = 0.0;
        for w in self.terms.keys().chain(other.terms.keys()) {
            if w.weight() > d {
                continue;
            }
            let a = self.terms.get(w).unwrap_or(&zero);
            let b = other.terms.get(w).unwrap_or(&zero);
            m = m.max(dist(a, b));
        }
        m
    }
}

impl<C: Coeff + Magnitude> NCSeries<C> {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.max_diff_by(other, |a, b| a.sub(b).magnitude())
    }
}

/// Coefficient-wise equality on words of weight `<= min(D1, D2)`.
impl<C: Coeff> PartialEq for NCSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        let d = self.max_weight.min(other.max_weight);
        let a: Vec<_> = self.terms.iter().filter(|(w, _)| w.weight() <= d).collect();
        let b: Vec<_> = other.terms.iter().filter(|(w, _)| w.weight() <= d).collect();
        a == b
    }
}

impl<C: Coeff> fmt::Display for NCSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{c}*{w}")?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for NCSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCSeries({:?}, D={}) {{", self.alphabet, self.max_weight)?;
        for (w, c) in &self.terms {
            write!(f, " {c:?}*{w}")?;
        }
        write!(f, " }}")
    }
}

/// `ad_{x0}^n x1` by iterated bracketing, homogeneous of degree `n + 1`.
pub fn ad_power(n: usize) -> NCSeries<Q> {
    let d = n + 1;
    let x0 = NCSeries::monomial(Word::x(&[0]), Q::one(), d);
    let mut s = NCSeries::monomial(Word::x(&[1]), Q::one(), d);
    for _ in 0..n {
        s = x0.bracket(&s).expect("same alphabet");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{q, qi};

    fn xs(terms: &[(&str, i64)], d: usize) -> NCSeries<Q> {
        NCSeries::from_terms(Alphabet::X, d, terms.iter().map(|(w, c)| (Word::parse(Alphabet::X, w).unwrap(), qi(*c)))).unwrap()
    }

    #[test]
    fn distributivity() {
        let a = xs(&[("0", 1), ("1", 1)], 4);
        let b = xs(&[("1", 1)], 4);
        assert_eq!(a.concat(&b).unwrap(), xs(&[("01", 1), ("11", 1)], 4));
    }

    #[test]
    fn coefficient_lookup() {
        let s = xs(&[("01", 1), ("10", 2)], 3);
        assert_eq!(s.coeff(&Word::x(&[0, 1])), qi(1));
        assert_eq!(s.coeff(&Word::x(&[1, 1])), qi(0));
    }

    #[test]
    fn exp_of_zero_and_letters() {
        let z = NCSeries::<Q>::zero(Alphabet::X, 3);
        assert_eq!(z.exp().unwrap(), NCSeries::one(Alphabet::X, 3));
        let s = xs(&[("0", 1), ("1", 1)], 2);
        let half = q(1, 2);
        let expected = NCSeries::from_terms(
            Alphabet::X,
            2,
            [("", qi(1)), ("0", qi(1)), ("1", qi(1)), ("00", half.clone()), ("01", half.clone()), ("10", half.clone()), ("11", half)]
                .into_iter()
                .map(|(w, c)| (Word::parse(Alphabet::X, w).unwrap(), c)),
        )
        .unwrap();
        assert_eq!(s.exp().unwrap(), expected);
    }

    #[test]
    fn log_inverts_exp() {
        let x0 = xs(&[("0", 1)], 5);
        assert_eq!(x0.exp().unwrap().log().unwrap(), x0);
        assert!(x0.log().is_err());
        assert!(NCSeries::<Q>::one(Alphabet::X, 3).exp().is_err());
    }

    #[test]
    fn inverse() {
        let s = xs(&[("", 1), ("0", 2), ("01", -3)], 4);
        let inv = s.inverse().unwrap();
        assert_eq!(s.concat(&inv).unwrap(), NCSeries::one(Alphabet::X, 4));
        assert_eq!(inv.concat(&s).unwrap(), NCSeries::one(Alphabet::X, 4));
    }

    #[test]
    fn alphabet_mismatch() {
        let a = NCSeries::<Q>::one(Alphabet::X, 2);
        let b = NCSeries::<Q>::one(Alphabet::Y, 2);
        assert!(matches!(a.concat(&b), Err(Error::AlphabetMismatch { .. })));
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn ad_powers() {
        assert_eq!(ad_power(0), xs(&[("1", 1)], 1));
        assert_eq!(ad_power(1), xs(&[("01", 1), ("10", -1)], 2));
        assert_eq!(ad_power(2), xs(&[("001", 1), ("010", -2), ("100", 1)], 3));
    }

    #[test]
    fn truncation_and_equality() {
        let a = xs(&[("0", 1), ("0101", 1)], 4);
        let b = xs(&[("0", 1)], 2);
        assert_eq!(a, b);
        assert_eq!(a.concat(&a).unwrap().max_weight(), 4);
    }
}
