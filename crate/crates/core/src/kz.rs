//! Regularized polyzetas, the Drinfel'd associator and its companions.
//!
//! `ζ_⊔⊔` (over `X`, with `ζ(x0) = ζ(x1) = 0`) and `ζ_⧢` (over `Y`, with
//! `ζ(y1) = 0`) are computed by peeling divergent letters: for a word
//! `w = a^k v` with divergent letter `a`, `a ★ a^{k-1} v = k w + (words with
//! fewer leading a's)`, and the character property gives `ζ(w)`. Trailing
//! `x0`s are peeled the same way. Values are [`ZetaPolynomial`]s in the
//! symbols `ζ(w)` (convergent `Y`-words) and `γ`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::bell::bell_polynomial;
use crate::cache::ZetaCache;
use crate::coeff::{factorial, Coeff, Magnitude, Q};
use crate::error::{Error, Result};
use crate::lyndon::{exp_factorize_unchecked, Direction};
use crate::poly::{Monomial, Poly, Symbol};
use crate::polylog::{chen_series, l_series, zeta_value_with};
use crate::real::{Complex, Real, DEFAULT_PRECISION};
use crate::series::{ad_power, NCSeries};
use crate::shuffle::{
    character_defect, check_primitive, pi_x_word, pi_y_word, product_terms, project, series_product, ProductKind,
    Projection, RhoVariant,
};
use crate::word::{words_up_to, Alphabet, Word};

pub type ZetaPolynomial = Poly;

/// Largest truncation degree accepted by the series constructors.
pub const MAX_DEGREE: usize = 8;

const EULER_GAMMA: &str = "0.57721566490153286060651209008240243104215933593992";

/// Euler's constant to `prec` bits.
pub fn euler_gamma(prec: usize) -> Real {
    let digits = EULER_GAMMA.trim_start_matches("0.");
    let n: num_bigint::BigInt = digits.parse().expect("digits");
    let d = num_bigint::BigInt::from(10).pow(digits.len() as u32);
    Real::from_rational_prec(&Q::new(n, d), prec)
}

fn check_degree(d: usize) -> Result<()> {
    if d > MAX_DEGREE {
        return Err(Error::BoundExceeded { what: "degree", value: d, bound: MAX_DEGREE });
    }
    Ok(())
}

/// Memoized regularized character for one product kind.
pub struct Regularizer {
    kind: ProductKind,
    memo: HashMap<Word, Poly>,
}

impl Regularizer {
    pub fn new(kind: ProductKind) -> Self {
        Regularizer { kind, memo: HashMap::new() }
    }

    pub fn value(&mut self, w: &Word) -> Result<Poly> {
        if let Some(p) = self.memo.get(w) {
            return Ok(p.clone());
        }
        let p = match self.kind {
            ProductKind::Stuffle => {
                if w.alphabet() != Alphabet::Y {
                    return Err(Error::WrongAlphabet(Alphabet::Y));
                }
                let lead = w.letters().iter().take_while(|&&l| l == 1).count();
                if w.is_empty() {
                    Poly::one()
                } else if lead == 0 {
                    Poly::zeta(w.letters())
                } else {
                    self.peel(w, 1, w.slice(1..w.len()), lead)?
                }
            }
            ProductKind::Shuffle => {
                if w.alphabet() != Alphabet::X {
                    return Err(Error::WrongAlphabet(Alphabet::X));
                }
                let trail = w.letters().iter().rev().take_while(|&&l| l == 0).count();
                let lead = w.letters().iter().take_while(|&&l| l == 1).count();
                if w.is_empty() {
                    Poly::one()
                } else if trail > 0 {
                    self.peel(w, 0, w.slice(0..w.len() - 1), trail)?
                } else if lead > 0 {
                    self.peel(w, 1, w.slice(1..w.len()), lead)?
                } else {
                    let y = pi_y_word(w)?.expect("ends in x1");
                    Poly::zeta(y.letters())
                }
            }
        };
        self.memo.insert(w.clone(), p.clone());
        Ok(p)
    }

    fn peel(&mut self, w: &Word, letter: u32, rest: Word, k: usize) -> Result<Poly> {
        let a = Word::from_raw(w.alphabet(), vec![letter]);
        let mut acc = Poly::zero();
        for (t, c) in product_terms(self.kind, &a, &rest)? {
            if t == *w {
                debug_assert_eq!(c, (k as i64).into());
                continue;
            }
            acc = acc.add(&self.value(&t)?.scale(&Q::from_integer(c)));
        }
        Ok(acc.scale(&Q::new((-1).into(), (k as i64).into())))
    }

    /// `Σ_w c_w ζ(w)` for a polynomial `Σ c_w w`.
    pub fn linear(&mut self, p: &NCSeries<Q>) -> Result<Poly> {
        let mut acc = Poly::zero();
        for (w, c) in p.terms() {
            acc = acc.add(&self.value(w)?.scale(c));
        }
        Ok(acc)
    }
}

/// `ζ_⊔⊔(w)` for [`ProductKind::Shuffle`] (X-words) or `ζ_⧢(w)` for
/// [`ProductKind::Stuffle`] (Y-words).
pub fn zeta_reg(w: &Word, kind: ProductKind) -> Result<ZetaPolynomial> {
    Regularizer::new(kind).value(w)
}

/// Rewrites products of `ζ` symbols as linear combinations through the
/// given product (valid on convergent words), leaving `γ` and variables in
/// place. Two polynomials are equal modulo the product relations of `kind`
/// iff their linearizations are equal.
pub fn linearize(p: &Poly, kind: ProductKind) -> Result<Poly> {
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let mut rest = Monomial::one();
        let mut words: BTreeMap<Word, Q> = BTreeMap::new();
        let unit = match kind {
            ProductKind::Shuffle => Word::empty(Alphabet::X),
            ProductKind::Stuffle => Word::empty(Alphabet::Y),
        };
        words.insert(unit, Q::one());
        for (s, e) in m.factors() {
            let Symbol::Zeta(z) = s else {
                rest = rest.mul(&Monomial::symbol(s.clone(), *e));
                continue;
            };
            let mut z = Word::y(z);
            if kind == ProductKind::Shuffle {
                z = pi_x_word(&z)?;
            }
            for _ in 0..*e {
                let mut next = BTreeMap::new();
                for (w, k) in &words {
                    for (t, n) in product_terms(kind, w, &z)? {
                        *next.entry(t).or_insert_with(Q::zero) += k * Q::from_integer(n);
                    }
                }
                words = next;
            }
        }
        for (w, k) in words {
            let y = match kind {
                ProductKind::Shuffle => pi_y_word(&w)?.expect("convergent"),
                ProductKind::Stuffle => w,
            };
            let sym = if y.is_empty() { Monomial::one() } else { Monomial::symbol(Symbol::Zeta(y.letters().to_vec()), 1) };
            out = out.add(&Poly::term(c * k, sym.mul(&rest)));
        }
    }
    Ok(out)
}

/// Distance for [`character_defect`] on zeta-polynomial series: zero when
/// the linearizations agree, infinite otherwise.
pub fn symbolic_dist(kind: ProductKind) -> impl Fn(&Poly, &Poly) -> f64 {
    move |a, b| match (linearize(a, kind), linearize(b, kind)) {
        (Ok(x), Ok(y)) if x == y => 0.0,
        _ => f64::INFINITY,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZSeries {
    /// `Σ ζ_⊔⊔(w) w` over `X`.
    ZShuffle,
    /// `Σ ζ_⧢(w) w` over `Y`.
    ZStuffle,
    /// Equal to `ZShuffle`.
    PhiKz,
    /// `exp(γ y1) Z_⧢`.
    PsiKz,
    /// `B(y1) = exp(γ y1 + Σ_{k>=2} (-1)^{k-1} ζ(k) y1^k / k)`.
    B,
    /// `exp(-γ y1) B(y1)`.
    Bprime,
}

fn regularized_series(kind: ProductKind, d: usize) -> Result<NCSeries<Poly>> {
    let alphabet = match kind {
        ProductKind::Shuffle => Alphabet::X,
        ProductKind::Stuffle => Alphabet::Y,
    };
    let mut reg = Regularizer::new(kind);
    let mut out = NCSeries::zero(alphabet, d);
    for w in words_up_to(alphabet, d) {
        let v = reg.value(&w)?;
        out.add_term(w, v);
    }
    Ok(out)
}

fn gamma_exp(sign: i64, d: usize) -> Result<NCSeries<Poly>> {
    NCSeries::monomial(Word::y(&[1]), Poly::gamma().scale(&Q::from_integer(sign.into())), d).exp()
}

/// `Σ_n B_n(t_1..t_n) y1^n / n!` with `t_1 = γ` (or `0`) and
/// `t_l = (-1)^{l-1} (l-1)! ζ(l)`.
fn bell_b(d: usize, gamma: bool) -> Result<NCSeries<Poly>> {
    let mut t = Vec::with_capacity(d);
    for l in 1..=d {
        if l == 1 {
            t.push(if gamma { Poly::gamma() } else { Poly::zero() });
        } else {
            let sign: i64 = if l % 2 == 0 { -1 } else { 1 };
            t.push(Poly::zeta(&[l as u32]).scale(&Q::from_integer(factorial(l - 1) * sign)));
        }
    }
    let mut out = NCSeries::zero(Alphabet::Y, d);
    for n in 0..=d {
        let b = bell_polynomial(n, None, &t)?;
        out.add_term(Word::y(&vec![1; n]), b.scale(&Q::new(1.into(), factorial(n))));
    }
    Ok(out)
}

pub fn z_series(kind: ZSeries, d: usize) -> Result<NCSeries<Poly>> {
    check_degree(d)?;
    match kind {
        ZSeries::ZShuffle | ZSeries::PhiKz => regularized_series(ProductKind::Shuffle, d),
        ZSeries::ZStuffle => regularized_series(ProductKind::Stuffle, d),
        ZSeries::PsiKz => gamma_exp(1, d)?.concat(&regularized_series(ProductKind::Stuffle, d)?),
        ZSeries::B => bell_b(d, true),
        ZSeries::Bprime => gamma_exp(-1, d)?.concat(&bell_b(d, true)?),
    }
}

/// `B'(y1)` directly from its Bell-polynomial expansion with `t_1 = 0`.
pub fn b_prime_direct(d: usize) -> Result<NCSeries<Poly>> {
    check_degree(d)?;
    bell_b(d, false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjointConvention {
    /// `x1 x0^l ∘ P = x1 (x0^l ⊔⊔ P)`, nested from the left.
    Literal,
    /// `D_0 = 1`, `D_j = (D_{j-1} ⊔⊔ x0^{l_j}) x1`.
    Mirror,
}

fn compositions_of_degree(d: usize) -> Vec<Vec<usize>> {
    // sequences (l_1..l_k) with Σ (l_i + 1) <= d
    let mut out = vec![vec![]];
    let mut frontier = vec![(vec![], 0usize)];
    while let Some((seq, used)) = frontier.pop() {
        for l in 0..d.saturating_sub(used) {
            let mut s: Vec<usize> = seq.clone();
            s.push(l);
            out.push(s.clone());
            frontier.push((s, used + l + 1));
        }
    }
    out.sort();
    out
}

fn adjoint_word_poly(ls: &[usize], convention: AdjointConvention, d: usize) -> Result<NCSeries<Q>> {
    let x0 = |l: usize| NCSeries::monomial(Word::x(&vec![0; l]), Q::one(), d);
    let x1 = NCSeries::monomial(Word::x(&[1]), Q::one(), d);
    let mut p = NCSeries::one(Alphabet::X, d);
    match convention {
        AdjointConvention::Literal => {
            for &l in ls.iter().rev() {
                p = x1.concat(&series_product(ProductKind::Shuffle, &x0(l), &p)?)?;
            }
        }
        AdjointConvention::Mirror => {
            for &l in ls {
                p = series_product(ProductKind::Shuffle, &p, &x0(l))?.concat(&x1)?;
            }
        }
    }
    Ok(p)
}

/// `Σ ζ_⊔⊔(x1x0^{l1} ∘ ... ∘ x1x0^{lk}) ad_{x0}^{l1} x1 ... ad_{x0}^{lk} x1`
/// through total degree `d`.
pub fn adjoint_expansion(d: usize, convention: AdjointConvention) -> Result<NCSeries<Poly>> {
    check_degree(d)?;
    let mut reg = Regularizer::new(ProductKind::Shuffle);
    let mut out = NCSeries::zero(Alphabet::X, d);
    for ls in compositions_of_degree(d) {
        let coeff = reg.linear(&adjoint_word_poly(&ls, convention, d)?)?;
        if coeff.is_zero() {
            continue;
        }
        let mut term = NCSeries::one(Alphabet::X, d);
        for &l in &ls {
            let ad = ad_power(l);
            let ad = NCSeries::from_terms(Alphabet::X, d, ad.terms().map(|(w, c)| (w.clone(), c.clone())))?;
            term = term.concat(&ad)?;
        }
        out = out.add(&term.map(|c| Poly::constant(c.clone())).scale(&coeff))?;
    }
    Ok(out)
}

/// Numeric values for the symbols of zeta polynomials.
pub struct Evaluator<'a> {
    pub tol: f64,
    pub prec: usize,
    pub cache: &'a ZetaCache,
}

impl<'a> Evaluator<'a> {
    pub fn new(tol: f64, cache: &'a ZetaCache) -> Self {
        Evaluator { tol, prec: DEFAULT_PRECISION, cache }
    }

    pub fn symbol(&self, s: &Symbol) -> Result<Real> {
        match s {
            Symbol::Gamma => Ok(euler_gamma(self.prec)),
            Symbol::Zeta(w) => Ok(zeta_value_with(&Word::y(w), self.tol, self.prec, self.cache)?.value),
            Symbol::Var(v) => Err(Error::Domain(format!("no numeric value for variable {v}"))),
        }
    }

    pub fn eval(&self, p: &Poly) -> Result<Real> {
        let mut values = BTreeMap::new();
        for s in p.symbols() {
            values.insert(s.clone(), self.symbol(&s)?);
        }
        Ok(p.eval(|s| values[s].clone()))
    }

    pub fn series(&self, s: &NCSeries<Poly>) -> Result<NCSeries<Real>> {
        let mut out = NCSeries::zero(s.alphabet(), s.max_weight());
        for (w, c) in s.terms() {
            out.add_term(w.clone(), self.eval(c)?);
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monodromy {
    /// `exp(2πi x0)`.
    M0,
    /// `Φ^{-1} exp(-2πi x1) Φ`.
    M1,
}

pub fn monodromy_series(which: Monodromy, d: usize, ev: &Evaluator) -> Result<NCSeries<Complex>> {
    check_degree(d)?;
    let two_pi = Real::pi(ev.prec).scale(&Q::from_integer(2.into()));
    match which {
        Monodromy::M0 => NCSeries::monomial(Word::x(&[0]), Complex::imaginary(two_pi), d).exp(),
        Monodromy::M1 => {
            let phi = ev.series(&z_series(ZSeries::PhiKz, d)?)?.map(|r| Complex::from_real(r.clone()));
            let e = NCSeries::monomial(Word::x(&[1]), Complex::imaginary(two_pi.neg()), d).exp()?;
            phi.inverse()?.concat(&e)?.concat(&phi)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Action {
    /// `Φ_KZ e^C`.
    pub phi: NCSeries<Poly>,
    /// `B(y1) Π_Y(Φ)`.
    pub psi: NCSeries<Poly>,
    /// Whether `e^{-γ y1} Ψ = B'(y1) Π_Y(Φ)` holds exactly.
    pub prime_form_agrees: bool,
}

/// The action of `e^C` on the associator pair, for a Lie series `C` without
/// letter terms.
pub fn act_by_exp(c: &NCSeries<Poly>, d: usize) -> Result<Action> {
    check_degree(d)?;
    if c.alphabet() != Alphabet::X {
        return Err(Error::WrongAlphabet(Alphabet::X));
    }
    let c = c.truncate(d);
    check_primitive(&c, ProductKind::Shuffle).map_err(|e| Error::InvalidExponent(e.to_string()))?;
    for l in [0, 1] {
        if !c.coeff(&Word::x(&[l])).is_zero() {
            return Err(Error::InvalidExponent(format!("nonzero coefficient on x{l}")));
        }
    }
    let phi = z_series(ZSeries::PhiKz, d)?.concat(&c.exp()?)?;
    let proj = project(&phi, Projection::PiY)?;
    let psi = z_series(ZSeries::B, d)?.concat(&proj)?;
    let lhs = gamma_exp(-1, d)?.concat(&psi)?;
    let rhs = z_series(ZSeries::Bprime, d)?.concat(&proj)?;
    Ok(Action { phi, psi, prime_form_agrees: lhs == rhs })
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctionalReport {
    pub variant: String,
    pub max_residual: f64,
    pub worst_word: Option<String>,
}

/// Compares `L(z)` with `ρ[L(1-z)] Z_⊔⊔` on all words of weight `<= d`.
pub fn functional_equation_check(z: &Real, d: usize, variant: RhoVariant, ev: &Evaluator) -> Result<FunctionalReport> {
    check_degree(d)?;
    let one = Real::from_i64(1, z.precision());
    let lhs = l_series(z, d, ev.tol)?;
    let mirror = project(&l_series(&one.sub(z), d, ev.tol)?, Projection::Rho(variant))?;
    let rhs = mirror.concat(&ev.series(&z_series(ZSeries::PhiKz, d)?)?)?;
    let mut worst = (0.0, None);
    for w in words_up_to(Alphabet::X, d) {
        let r = lhs.coeff(&w).sub(&rhs.coeff(&w)).magnitude();
        if r > worst.0 || (r.is_nan() && worst.1.is_none()) {
            worst = (r, Some(w.to_string()));
        }
    }
    Ok(FunctionalReport { variant: format!("{variant:?}"), max_residual: worst.0, worst_word: worst.1 })
}

/// Runs both `ρ` variants and returns the first one within `tol` together
/// with both reports.
pub fn select_rho(z: &Real, d: usize, tol: f64, ev: &Evaluator) -> Result<(Option<RhoVariant>, Vec<FunctionalReport>)> {
    let mut passing = None;
    let mut reports = Vec::new();
    for v in [RhoVariant::Morphism, RhoVariant::Mirror] {
        let r = functional_equation_check(z, d, v, ev)?;
        if passing.is_none() && r.max_residual <= tol {
            passing = Some(v);
        }
        reports.push(r);
    }
    Ok((passing, reports))
}

#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub word: String,
    #[serde(serialize_with = "poly_string")]
    pub relation: Poly,
    pub residual: f64,
}

fn poly_string<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    /// `<Z_⧢ - B'(y1) Π_Y Z_⊔⊔ | w>` for each word with a nonzero value.
    pub relations: Vec<Relation>,
    /// Differences of the Lyndon coordinates of both sides.
    pub lyndon_relations: Vec<Relation>,
}

/// Scales a nonzero polynomial so its first coefficient is one.
pub fn normalize(p: &Poly) -> Poly {
    match p.terms().next() {
        Some((_, c)) => {
            let inv = Q::one() / c;
            p.scale(&inv)
        }
        None => p.clone(),
    }
}

fn verified(word: &Word, p: Poly, tol: f64, ev: &Evaluator) -> Result<Option<Relation>> {
    if p.is_zero() {
        return Ok(None);
    }
    if p.degree_in(&Symbol::Gamma) != 0 {
        return Err(Error::Verification { what: format!("γ cancellation at {word}"), residual: f64::INFINITY, tol });
    }
    if !p.is_homogeneous() {
        return Err(Error::Verification { what: format!("homogeneity at {word}"), residual: f64::INFINITY, tol });
    }
    let p = normalize(&p);
    let residual = ev.eval(&p)?.magnitude();
    if !(residual <= tol) {
        return Err(Error::Verification { what: format!("relation at {word}: {p} = 0"), residual, tol });
    }
    Ok(Some(Relation { word: word.to_string(), relation: p, residual }))
}

/// Polyzeta relations from `e^{-γ y1} Ψ_KZ = e^{-γ y1} B(y1) Π_Y Z_⊔⊔`, each
/// checked for `γ`-freeness, homogeneity and numerically within `tol`.
pub fn bridge_relations(max_weight: usize, tol: f64, ev: &Evaluator) -> Result<BridgeReport> {
    check_degree(max_weight)?;
    let d = max_weight;
    let minus = gamma_exp(-1, d)?;
    let lhs = minus.concat(&z_series(ZSeries::PsiKz, d)?)?;
    let proj = project(&z_series(ZSeries::ZShuffle, d)?, Projection::PiY)?;
    let rhs = minus.concat(&z_series(ZSeries::B, d)?)?.concat(&proj)?;
    let mut relations = Vec::new();
    for w in words_up_to(Alphabet::Y, d).into_iter().filter(|w| !w.is_empty()) {
        if let Some(r) = verified(&w, lhs.coeff(&w).sub(&rhs.coeff(&w)), tol, ev)? {
            relations.push(r);
        }
    }
    let a = exp_factorize_unchecked(&lhs, ProductKind::Stuffle, Direction::Decreasing)?;
    let b = exp_factorize_unchecked(&rhs, ProductKind::Stuffle, Direction::Decreasing)?;
    let mut lyndon_relations = Vec::new();
    for (l, c) in &a {
        let other = b.get(l).cloned().unwrap_or_else(Poly::zero);
        if let Some(r) = verified(l, c.sub(&other), tol, ev)? {
            lyndon_relations.push(r);
        }
    }
    Ok(BridgeReport { relations, lyndon_relations })
}

/// Residuals of `Π_X Ψ_KZ = B(x1) Φ_KZ`: the largest on words in the image
/// of `Π_X` and the largest elsewhere.
pub fn projection_check(d: usize, ev: &Evaluator) -> Result<(f64, f64)> {
    check_degree(d)?;
    let psi = ev.series(&project(&z_series(ZSeries::PsiKz, d)?, Projection::PiX)?)?;
    let bx = ev.series(&project(&z_series(ZSeries::B, d)?, Projection::PiX)?)?;
    let rhs = bx.concat(&ev.series(&z_series(ZSeries::PhiKz, d)?)?)?;
    let (mut image, mut other) = (0f64, 0f64);
    for w in words_up_to(Alphabet::X, d) {
        let r = psi.coeff(&w).sub(&rhs.coeff(&w)).magnitude();
        if w.last() != Some(0) {
            image = image.max(r);
        } else {
            other = other.max(r);
        }
    }
    Ok((image, other))
}

/// Distance between `e^{x1 log ε} S_{ε -> 1-ε} e^{x0 log ε}` and `Z_⊔⊔` at
/// degree `d`, for each `ε`.
pub fn regularization_drift(eps: &[f64], d: usize, ev: &Evaluator) -> Result<Vec<f64>> {
    check_degree(d)?;
    let z = ev.series(&z_series(ZSeries::ZShuffle, d)?)?;
    let mut out = Vec::new();
    for &e in eps {
        let er = Real::from_f64(e, ev.prec);
        let one_minus = Real::from_i64(1, ev.prec).sub(&er);
        let log_e = er.ln()?;
        let left = NCSeries::monomial(Word::x(&[1]), log_e.clone(), d).exp()?;
        let right = NCSeries::monomial(Word::x(&[0]), log_e, d).exp()?;
        let s = chen_series(&er, &one_minus, d, ev.tol)?;
        out.push(left.concat(&s)?.concat(&right)?.max_abs_diff(&z));
    }
    Ok(out)
}

/// Largest symbolic character defect of a zeta-polynomial series.
pub fn symbolic_character_defect(s: &NCSeries<Poly>, kind: ProductKind) -> Result<f64> {
    Ok(character_defect(s, kind, symbolic_dist(kind))?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;

    #[test]
    fn regularized_values() {
        assert!(zeta_reg(&Word::y(&[1]), ProductKind::Stuffle).unwrap().is_zero());
        assert_eq!(
            zeta_reg(&Word::y(&[1, 1]), ProductKind::Stuffle).unwrap(),
            Poly::zeta(&[2]).scale(&q(-1, 2))
        );
        assert_eq!(zeta_reg(&Word::x(&[1, 0]), ProductKind::Shuffle).unwrap(), Poly::zeta(&[2]).neg());
        assert_eq!(zeta_reg(&Word::x(&[0, 1]), ProductKind::Shuffle).unwrap(), Poly::zeta(&[2]));
        assert!(zeta_reg(&Word::x(&[0, 0]), ProductKind::Shuffle).unwrap().is_zero());
    }

    #[test]
    fn series_letters() {
        let psi = z_series(ZSeries::PsiKz, 2).unwrap();
        assert_eq!(psi.coeff(&Word::y(&[1])), Poly::gamma());
        let b = z_series(ZSeries::B, 3).unwrap();
        assert_eq!(b.coeff(&Word::y(&[1])), Poly::gamma());
        let bp = z_series(ZSeries::Bprime, 4).unwrap();
        assert!(bp.coeff(&Word::y(&[1])).is_zero());
        assert_eq!(bp, b_prime_direct(4).unwrap());
    }

    #[test]
    fn b_matches_exponential() {
        let d = 4;
        let mut arg = NCSeries::monomial(Word::y(&[1]), Poly::gamma(), d);
        for k in 2..=d {
            let sign: i64 = if k % 2 == 0 { -1 } else { 1 };
            arg.add_term(Word::y(&vec![1; k]), Poly::zeta(&[k as u32]).scale(&Q::new(sign.into(), (k as i64).into())));
        }
        assert_eq!(arg.exp().unwrap(), z_series(ZSeries::B, d).unwrap());
    }

    #[test]
    fn adjoint_low_degree() {
        let phi = z_series(ZSeries::PhiKz, 3).unwrap();
        assert_eq!(adjoint_expansion(3, AdjointConvention::Mirror).unwrap(), phi);
        let a = adjoint_expansion(1, AdjointConvention::Mirror).unwrap();
        assert_eq!(a.constant_term(), Poly::one());
        assert!(a.coeff(&Word::x(&[1])).is_zero());
    }

    #[test]
    fn compositions_counted() {
        // sequences of positive parts (l_i + 1) summing to at most 3: 1 + 1 + 2 + 4
        assert_eq!(compositions_of_degree(3).len(), 8);
    }

    #[test]
    fn linearize_products() {
        let p = Poly::zeta(&[2]).mul(&Poly::zeta(&[2]));
        let st = linearize(&p, ProductKind::Stuffle).unwrap();
        assert_eq!(st, Poly::zeta(&[2, 2]).scale(&q(2, 1)).add(&Poly::zeta(&[4])));
        let sh = linearize(&p, ProductKind::Shuffle).unwrap();
        assert_eq!(sh, Poly::zeta(&[2, 2]).scale(&q(2, 1)).add(&Poly::zeta(&[3, 1]).scale(&q(4, 1))));
    }
}
