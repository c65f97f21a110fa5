//! Multiple polylogarithms, harmonic sums and convergent polyzetas.
//!
//! `Li_{n1..nr}(z) = Σ_{k1>...>kr>0} z^{k1} / (k1^{n1}...kr^{nr})` is
//! evaluated by direct nested summation with an explicit geometric tail
//! bound. Words over `X` ending in `x0` are reduced with the shuffle
//! relation against `Li_{x0}(z) = log z`, which gives
//! `Li_{x0^k}(z) = log^k(z) / k!`.

use std::sync::OnceLock;

use crate::cache::ZetaCache;
use crate::coeff::{Coeff, Q};
use crate::error::{Error, Result};
use crate::real::{Real, DEFAULT_PRECISION};
use crate::series::NCSeries;
use crate::shuffle::{pi_x_word, pi_y_word};
use crate::word::{words_up_to, Alphabet, Word};

/// Iteration cap for every summation loop.
pub const MAX_TERMS: u64 = 20_000_000;

/// A value with a rigorous absolute error bound.
#[derive(Clone, Debug)]
pub struct Estimate {
    pub value: Real,
    pub bound: f64,
    pub terms: u64,
}

impl Estimate {
    fn exact(value: Real) -> Self {
        Estimate { value, bound: 0.0, terms: 0 }
    }
}

fn rounding_slack(terms: u64, prec: usize) -> f64 {
    (terms as f64 + 16.0) * 2f64.powi(-(prec as i32) + 4)
}

/// Upper bound for the nested inner sums: `H_v(k-1) <= (1 + ln k)^{depth}`.
fn inner_bound(k: f64, depth: usize) -> f64 {
    (1.0 + k.ln()).powi(depth as i32)
}

/// `Li_s(z)` for an index list `s` with `0 < z < 1`.
fn nested_li(s: &[u32], z: &Real, tol: f64) -> Result<Estimate> {
    let prec = z.precision();
    if s.is_empty() {
        return Ok(Estimate::exact(Real::from_i64(1, prec)));
    }
    let r = s.len();
    let n1 = s[0] as f64;
    let zf = z.to_f64();
    let one = Real::from_i64(1, prec);
    // sums[j] = H_{s[j..]}(K) for the current K; sums[r] = 1
    let mut sums: Vec<Real> = vec![Real::zero_with(prec); r];
    sums.push(one.clone());
    let mut zk = one.clone();
    let mut acc = Real::zero_with(prec);
    let mut k: u64 = 0;
    loop {
        k += 1;
        if k > MAX_TERMS {
            return Err(Error::Tolerance { tol, cap: MAX_TERMS });
        }
        zk = zk.mul(z);
        let kr = Real::from_i64(k as i64, prec);
        let inner = if r > 1 { &sums[1] } else { &sums[r] };
        acc = acc.add(&zk.mul(inner).div(&kr.powi(s[0] as usize)));
        for j in 1..r {
            let add = sums[j + 1].div(&kr.powi(s[j] as usize));
            sums[j] = sums[j].add(&add);
        }
        let next = (k + 1) as f64;
        let monotone = 1.0 + next.ln() >= (r - 1) as f64 / n1;
        if monotone {
            let tail = zf.powf(next) * inner_bound(next, r - 1) / next.powf(n1) / (1.0 - zf) * 1.01;
            let bound = tail + rounding_slack(k, prec);
            if bound <= tol {
                return Ok(Estimate { value: acc, bound, terms: k });
            }
        }
    }
}

fn check_unit_interval(z: &Real) -> Result<()> {
    let f = z.to_f64();
    if !(f > 0.0 && f < 1.0) {
        return Err(Error::Domain(format!("z = {f} outside (0, 1)")));
    }
    Ok(())
}

/// `Li_w(z)` for an `X`- or `Y`-word.
pub fn polylog(w: &Word, z: &Real, tol: f64) -> Result<Estimate> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    match w.alphabet() {
        Alphabet::Y => {
            check_unit_interval(z)?;
            nested_li(w.letters(), z, tol)
        }
        Alphabet::X => polylog_x(w, z, tol),
        Alphabet::XIndexed => Err(Error::WrongAlphabet(Alphabet::X)),
    }
}

fn polylog_x(w: &Word, z: &Real, tol: f64) -> Result<Estimate> {
    let prec = z.precision();
    let trailing = w.letters().iter().rev().take_while(|&&l| l == 0).count();
    if trailing == 0 {
        if w.is_empty() {
            return Ok(Estimate::exact(Real::from_i64(1, prec)));
        }
        check_unit_interval(z)?;
        let y = pi_y_word(w)?.expect("ends in x1");
        return nested_li(y.letters(), z, tol);
    }
    if !z.is_positive() {
        return Err(Error::Domain(format!("log of z = {z}")));
    }
    let log_z = z.ln()?;
    let k = trailing;
    let u = w.slice(0..w.len() - k);
    if u.is_empty() {
        let fact = Real::from_bigint(&crate::coeff::factorial(k), prec);
        return Ok(Estimate {
            value: log_z.powi(k).div(&fact),
            bound: rounding_slack(k as u64, prec) * log_z.to_f64().abs().max(1.0).powi(k as i32),
            terms: 0,
        });
    }
    check_unit_interval(z)?;
    // k · Li_{u x0^k} = Li_{u x0^{k-1}} log z - Σ_i Li_{ins_i(u) x0^{k-1}},
    // where ins_i inserts x0 before position i < |u|
    let lz = log_z.to_f64().abs();
    let sub_tol = tol / ((lz + 1.0) * (u.len() as f64 + 1.0));
    let zeros = vec![0u32; k - 1];
    let shorter = Word::from_raw(Alphabet::X, [u.letters(), &zeros].concat());
    let head = polylog_x(&shorter, z, sub_tol)?;
    let mut value = head.value.mul(&log_z);
    let mut bound = head.bound * lz + head.value.to_f64().abs() * rounding_slack(1, prec);
    let mut terms = head.terms;
    for i in 0..u.len() {
        let mut letters = u.letters().to_vec();
        letters.insert(i, 0);
        letters.extend(&zeros);
        let e = polylog_x(&Word::from_raw(Alphabet::X, letters), z, sub_tol)?;
        value = value.sub(&e.value);
        bound += e.bound;
        terms = terms.max(e.terms);
    }
    let kr = Real::from_i64(k as i64, prec);
    Ok(Estimate { value: value.div(&kr), bound: bound / k as f64 + rounding_slack(1, prec), terms })
}

/// `H_w(N)` exactly.
pub fn harmonic_sum(w: &Word, n: u64) -> Result<Q> {
    if !w.alphabet().is_indexed() {
        return Err(Error::WrongAlphabet(Alphabet::Y));
    }
    let s = w.letters();
    let r = s.len();
    let mut sums: Vec<Q> = vec![Q::zero(); r];
    sums.push(Q::one());
    for k in 1..=n {
        let kq = Q::from_integer(k.into());
        for j in 0..r {
            let add = &sums[j + 1] / Coeff::pow(&kq, s[j]);
            sums[j] += add;
        }
    }
    Ok(sums[0].clone())
}

/// `H_w(N)` in floating point at the given precision.
pub fn harmonic_sum_real(w: &Word, n: u64, prec: usize) -> Result<Real> {
    if !w.alphabet().is_indexed() {
        return Err(Error::WrongAlphabet(Alphabet::Y));
    }
    let s = w.letters();
    let r = s.len();
    let mut sums = vec![Real::zero_with(prec); r];
    sums.push(Real::from_i64(1, prec));
    for k in 1..=n {
        let kr = Real::from_i64(k as i64, prec);
        for j in 0..r {
            let add = sums[j + 1].div(&kr.powi(s[j] as usize));
            sums[j] = sums[j].add(&add);
        }
    }
    Ok(sums[0].clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaMethod {
    /// `ζ(w) = Σ_{uv=w} Li_{ρ̃(u)}(1/2) Li_v(1/2)` where `ρ̃` reverses the
    /// word and swaps `x0` and `x1` (path composition at `z = 1/2`).
    ChenSplit,
    /// `H_w(N)` with an integral tail bound.
    PartialSum,
}

fn check_convergent(w: &Word) -> Result<Word> {
    let y = match w.alphabet() {
        Alphabet::Y => w.clone(),
        Alphabet::X => pi_y_word(w)?.ok_or_else(|| Error::Divergent(w.clone()))?,
        Alphabet::XIndexed => return Err(Error::WrongAlphabet(Alphabet::Y)),
    };
    if !y.is_convergent() {
        return Err(Error::Divergent(y));
    }
    Ok(y)
}

/// `∫_N^∞ (1 + ln x)^m x^{-s} dx` for `s > 1`.
fn zeta_tail(n: f64, m: usize, s: f64) -> f64 {
    let l = n.ln();
    let a = s - 1.0;
    let mut acc = 0.0;
    let mut falling = 1.0;
    for j in 0..=m {
        if j > 0 {
            falling *= (m - j + 1) as f64;
        }
        acc += falling * (1.0 + l).powi((m - j) as i32) / a.powi(j as i32 + 1);
    }
    (-a * l).exp() * acc
}

/// Uncached `ζ(w)` for a convergent word (over `Y`, or over `X` in
/// `x0X*x1`).
pub fn zeta_compute(w: &Word, tol: f64, prec: usize, method: ZetaMethod) -> Result<Estimate> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let y = check_convergent(w)?;
    match method {
        ZetaMethod::ChenSplit => {
            let x = pi_x_word(&y)?;
            let half = Real::from_rational_prec(&Q::new(1.into(), 2.into()), prec);
            let per = tol / (3.0 * (x.len() as f64 + 1.0));
            let mut value = Real::zero_with(prec);
            let mut bound = 0.0;
            let mut terms = 0;
            for i in 0..=x.len() {
                let u: Vec<u32> = x.letters()[..i].iter().rev().map(|l| 1 - l).collect();
                let v = x.slice(i..x.len());
                let a = polylog_x(&Word::from_raw(Alphabet::X, u), &half, per)?;
                let b = polylog_x(&v, &half, per)?;
                value = value.add(&a.value.mul(&b.value));
                bound += a.bound + b.bound + a.bound * b.bound;
                terms = terms.max(a.terms).max(b.terms);
            }
            Ok(Estimate { value, bound: bound + rounding_slack(x.len() as u64, prec), terms })
        }
        ZetaMethod::PartialSum => {
            let s = y.letters()[0] as f64;
            let m = y.len() - 1;
            let mut n: u64 = 16;
            loop {
                let nf = n as f64;
                if 1.0 + nf.ln() >= m as f64 / s && zeta_tail(nf, m, s) <= tol / 2.0 {
                    break;
                }
                n *= 2;
                if n > MAX_TERMS {
                    return Err(Error::Tolerance { tol, cap: MAX_TERMS });
                }
            }
            let value = harmonic_sum_real(&y, n, prec)?;
            let bound = zeta_tail(n as f64, m, s) * 1.01 + rounding_slack(n, prec);
            Ok(Estimate { value, bound, terms: n })
        }
    }
}

fn default_cache() -> &'static ZetaCache {
    static CACHE: OnceLock<ZetaCache> = OnceLock::new();
    CACHE.get_or_init(ZetaCache::in_memory)
}

/// `ζ(w)` through the process-wide in-memory cache.
pub fn zeta_value(w: &Word, tol: f64) -> Result<Estimate> {
    zeta_value_with(w, tol, DEFAULT_PRECISION, default_cache())
}

/// `ζ(w)` through the given cache; misses are computed with
/// [`ZetaMethod::ChenSplit`] and stored.
pub fn zeta_value_with(w: &Word, tol: f64, prec: usize, cache: &ZetaCache) -> Result<Estimate> {
    let y = check_convergent(w)?;
    if let Some(e) = cache.get(&y, tol, prec) {
        return Ok(e);
    }
    let e = zeta_compute(&y, tol, prec, ZetaMethod::ChenSplit)?;
    cache.insert(&y, &e)?;
    Ok(e)
}

fn real_series(alphabet: Alphabet, d: usize, mut f: impl FnMut(&Word) -> Result<Real>) -> Result<NCSeries<Real>> {
    let mut out = NCSeries::zero(alphabet, d);
    for w in words_up_to(alphabet, d) {
        out.add_term(w.clone(), f(&w)?);
    }
    Ok(out)
}

/// `L(z) = Σ_{|w| <= D} Li_w(z) w` over `X`.
pub fn l_series(z: &Real, d: usize, tol: f64) -> Result<NCSeries<Real>> {
    real_series(Alphabet::X, d, |w| Ok(polylog(w, z, tol)?.value))
}

/// `H(N) = Σ H_w(N) w` over `Y`, up to weight `D`.
pub fn h_series(n: u64, d: usize) -> Result<NCSeries<Q>> {
    let mut out = NCSeries::zero(Alphabet::Y, d);
    for w in words_up_to(Alphabet::Y, d) {
        out.add_term(w.clone(), harmonic_sum(&w, n)?);
    }
    Ok(out)
}

/// `P(z) = Σ P_w(z) w` over `Y`, `P_w(z) = Li_w(z) / (1 - z)`.
pub fn p_series(z: &Real, d: usize, tol: f64) -> Result<NCSeries<Real>> {
    check_unit_interval(z)?;
    let one_minus = Real::from_i64(1, z.precision()).sub(z);
    real_series(Alphabet::Y, d, |w| Ok(polylog(w, z, tol)?.value.div(&one_minus)))
}

fn y1_power(k: usize) -> Word {
    Word::y(&vec![1; k])
}

/// `Mono(z) = Σ_k P_{y1^k}(z) y1^k`.
pub fn mono_series(z: &Real, d: usize, tol: f64) -> Result<NCSeries<Real>> {
    check_unit_interval(z)?;
    let one_minus = Real::from_i64(1, z.precision()).sub(z);
    let mut out = NCSeries::zero(Alphabet::Y, d);
    for k in 0..=d {
        let w = y1_power(k);
        out.add_term(w.clone(), polylog(&w, z, tol)?.value.div(&one_minus));
    }
    Ok(out)
}

/// `Const(N) = Σ_k H_{y1^k}(N) y1^k`.
pub fn const_series(n: u64, d: usize) -> Result<NCSeries<Q>> {
    let mut out = NCSeries::zero(Alphabet::Y, d);
    for k in 0..=d {
        let w = y1_power(k);
        out.add_term(w.clone(), harmonic_sum(&w, n)?);
    }
    Ok(out)
}

/// `exp(-Σ_k H_{y_k}(N) (-y1)^k / k)`, equal to [`const_series`].
pub fn const_series_exp(n: u64, d: usize) -> Result<NCSeries<Q>> {
    let mut arg = NCSeries::zero(Alphabet::Y, d);
    for k in 1..=d {
        let h = harmonic_sum(&Word::y(&[k as u32]), n)?;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        arg.add_term(y1_power(k), h * Q::new(sign.into(), (k as i64).into()));
    }
    arg.exp()
}

/// Chen series `S_{z0 -> z1} = L(z1) L(z0)^{-1}` along the real segment.
pub fn chen_series(z0: &Real, z1: &Real, d: usize, tol: f64) -> Result<NCSeries<Real>> {
    check_unit_interval(z0)?;
    check_unit_interval(z1)?;
    if z0 == z1 {
        return Ok(NCSeries::one(Alphabet::X, d));
    }
    let a = l_series(z1, d, tol)?;
    let b = l_series(z0, d, tol)?;
    a.concat(&b.inverse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;

    fn r(x: Q) -> Real {
        Real::from_rational(&x)
    }

    #[test]
    fn log_two() {
        let e = polylog(&Word::x(&[1]), &r(q(1, 2)), 1e-20).unwrap();
        assert!((e.value.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!(e.bound <= 1e-20);
    }

    #[test]
    fn log_power_normalization() {
        let e = Real::from_i64(1, DEFAULT_PRECISION).exp();
        let v = polylog(&Word::x(&[0]), &e, 1e-12).unwrap().value.to_f64();
        assert!((v - 1.0).abs() < 1e-15);
        let v = polylog(&Word::x(&[0, 0]), &e, 1e-12).unwrap().value.to_f64();
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_sum(&Word::y(&[1]), 3).unwrap(), q(11, 6));
        assert_eq!(harmonic_sum(&Word::y(&[2, 1]), 2).unwrap(), q(1, 4));
        assert_eq!(harmonic_sum(&Word::y(&[3]), 0).unwrap(), q(0, 1));
        assert_eq!(harmonic_sum(&Word::y(&[]), 0).unwrap(), q(1, 1));
    }

    #[test]
    fn divergent_zeta() {
        assert!(matches!(zeta_compute(&Word::y(&[1, 2]), 1e-8, 128, ZetaMethod::ChenSplit), Err(Error::Divergent(_))));
    }

    #[test]
    fn zeta_two_both_methods() {
        let a = zeta_compute(&Word::y(&[2]), 1e-12, 128, ZetaMethod::ChenSplit).unwrap();
        assert!((a.value.to_f64() - 1.6449340668482264).abs() < 1e-12);
        let b = zeta_compute(&Word::y(&[3]), 1e-6, 128, ZetaMethod::PartialSum).unwrap();
        assert!((b.value.to_f64() - 1.2020569031595943).abs() <= b.bound);
    }

    #[test]
    fn chen_identity() {
        let z = r(q(1, 3));
        assert_eq!(chen_series(&z, &z, 3, 1e-12).unwrap(), NCSeries::one(Alphabet::X, 3));
    }
}
