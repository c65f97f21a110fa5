//! Sparse multivariate polynomials over exact rationals.
//!
//! Used for deformation parameters (`qc`, `qs`), symbolic Bell polynomial
//! variables, and zeta polynomials in `γ` and `ζ(w)`. Monomials are kept in
//! a canonical order so equality is structural.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::coeff::{Coeff, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// Euler's constant.
    Gamma,
    /// The convergent polyzeta `ζ(n1,...,nr)`, keyed by its Y-word indices.
    Zeta(Vec<u32>),
    Var(String),
}

impl Symbol {
    pub fn var(name: &str) -> Self {
        Symbol::Var(name.to_string())
    }

    /// Weight: `γ` has weight 1, `ζ(w)` the weight of `w`, plain variables 0.
    pub fn weight(&self) -> usize {
        match self {
            Symbol::Gamma => 1,
            Symbol::Zeta(w) => w.iter().map(|&i| i as usize).sum(),
            Symbol::Var(_) => 0,
        }
    }

    fn latex(&self) -> String {
        match self {
            Symbol::Gamma => "\\gamma".into(),
            Symbol::Zeta(w) => format!("\\zeta({})", join(w)),
            Symbol::Var(s) => s.clone(),
        }
    }
}

fn join(w: &[u32]) -> String {
    w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Gamma => write!(f, "γ"),
            Symbol::Zeta(w) => write!(f, "ζ({})", join(w)),
            Symbol::Var(s) => write!(f, "{s}"),
        }
    }
}

/// A power product of symbols, sorted by symbol with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn symbol(s: Symbol, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(s, e)])
        }
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.0.iter().find(|(t, _)| t == s).map_or(0, |(_, e)| *e)
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|(s, e)| s.weight() * *e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    fn render(&self, sym: impl Fn(&Symbol) -> String, star: &str) -> String {
        self.0
            .iter()
            .map(|(s, e)| if *e == 1 { sym(s) } else { format!("{}^{e}", sym(s)) })
            .collect::<Vec<_>>()
            .join(star)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn constant(c: Q) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn symbol(s: Symbol) -> Self {
        Poly::term(Q::one(), Monomial::symbol(s, 1))
    }

    pub fn var(name: &str) -> Self {
        Poly::symbol(Symbol::var(name))
    }

    pub fn gamma() -> Self {
        Poly::symbol(Symbol::Gamma)
    }

    pub fn zeta(word: &[u32]) -> Self {
        Poly::symbol(Symbol::Zeta(word.to_vec()))
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coefficient(&Monomial::one())
    }

    /// The rational value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.degree_in(s)).max().unwrap_or(0)
    }

    /// Weights of all monomials present (empty for the zero polynomial).
    pub fn weights(&self) -> std::collections::BTreeSet<usize> {
        self.terms.keys().map(Monomial::weight).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weights().len() <= 1
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Symbol> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(s, _)| s.clone())).collect()
    }

    /// Evaluates with `value` supplying each symbol in the target domain.
    pub fn eval<C: Coeff>(&self, mut value: impl FnMut(&Symbol) -> C) -> C {
        let mut cache: BTreeMap<Symbol, C> = BTreeMap::new();
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = C::from_rational(c);
            for (s, e) in &m.0 {
                let v = cache.entry(s.clone()).or_insert_with(|| value(s)).clone();
                t = t.mul(&v.pow(*e));
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Rewrites every monomial through `f`, which maps a monomial to a
    /// polynomial; used for symbol-level normalizations.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Poly) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            for (m2, c2) in f(m).terms {
                out.add_term(m2, c * c2);
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(|s| s.latex(), " ")
    }

    fn render(&self, sym: impl Fn(&Symbol) -> String + Copy, star: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&a.to_string());
            } else if a == Q::one() {
                out.push_str(&m.render(sym, star));
            } else {
                out.push_str(&format!("{a}{star}{}", m.render(sym, star)));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(|s| s.to_string(), "*"))
    }
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn one() -> Self {
        Poly::constant(Q::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn from_rational(q: &Q) -> Self {
        Poly::constant(q.clone())
    }
    fn scale(&self, q: &Q) -> Self {
        if q.is_zero() {
            return Poly::default();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{q, qi};

    #[test]
    fn arithmetic_is_canonical() {
        let a = Poly::var("a");
        let b = Poly::var("b");
        let lhs = a.add(&b).mul(&a.add(&b));
        let rhs = a.mul(&a).add(&a.mul(&b).scale(&qi(2))).add(&b.mul(&b));
        assert_eq!(lhs, rhs);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn display_and_weight() {
        let p = Poly::zeta(&[2, 1]).sub(&Poly::zeta(&[3]));
        assert_eq!(p.to_string(), "ζ(2,1) - ζ(3)");
        assert!(p.is_homogeneous());
        assert_eq!(p.weights().into_iter().collect::<Vec<_>>(), vec![3]);
        let g = Poly::gamma().scale(&q(-1, 2));
        assert_eq!(g.to_string(), "-1/2*γ");
        assert_eq!(g.to_latex(), "-1/2 \\gamma");
    }

    #[test]
    fn evaluation() {
        let p = Poly::var("x").pow(2).add(&Poly::constant(qi(1)));
        let v: Q = p.eval(|_| qi(3));
        assert_eq!(v, qi(10));
    }
}
