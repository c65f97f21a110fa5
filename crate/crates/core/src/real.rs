//! Arbitrary-precision real and complex floats.
//!
//! [`Real`] wraps an `astro_float::BigFloat`; every value carries its own
//! precision and binary operations round to the larger of the two operand
//! precisions.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::Signed;

use crate::coeff::{Coeff, Magnitude, Q};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: usize = 128;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    pub fn precision(&self) -> usize {
        match self.0.precision() {
            Some(p) if p > 0 => p,
            _ => DEFAULT_PRECISION,
        }
    }

    fn prec2(&self, other: &Real) -> usize {
        self.precision().max(other.precision())
    }

    pub fn zero_with(prec: usize) -> Self {
        Real(BigFloat::from_word(0, prec))
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        Real(BigFloat::from_f64(x, prec))
    }

    pub fn from_i64(x: i64, prec: usize) -> Self {
        Real(BigFloat::from_i64(x, prec))
    }

    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        let (sign, digits) = n.to_u64_digits();
        if digits.is_empty() {
            return Real::zero_with(prec);
        }
        let s = if sign == num_bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
        let exact = BigFloat::from_words(&digits, s, (64 * digits.len()) as i32);
        let mut r = exact;
        if r.precision().unwrap_or(0) != prec {
            r.set_precision(prec, RM).expect("precision");
        }
        Real(r)
    }

    pub fn from_rational_prec(q: &Q, prec: usize) -> Self {
        let work = prec + 64;
        let n = Real::from_bigint(q.numer(), work.max(64 * (q.numer().bits() as usize / 64 + 1)));
        let d = Real::from_bigint(q.denom(), work.max(64 * (q.denom().bits() as usize / 64 + 1)));
        Real(n.0.div(&d.0, prec, RM))
    }

    pub fn with_precision(&self, prec: usize) -> Self {
        let mut v = self.0.clone();
        v.set_precision(prec, RM).expect("precision");
        Real(v)
    }

    pub fn div(&self, other: &Real) -> Real {
        Real(self.0.div(&other.0, self.prec2(other), RM))
    }

    pub fn ln(&self) -> Result<Real> {
        if !self.0.is_positive() || self.0.is_zero() {
            return Err(Error::Domain(format!("log of non-positive value {self}")));
        }
        let p = self.precision();
        Ok(with_consts(|cc| Real(self.0.ln(p, RM, cc))))
    }

    pub fn exp(&self) -> Real {
        let p = self.precision();
        with_consts(|cc| Real(self.0.exp(p, RM, cc)))
    }

    pub fn pi(prec: usize) -> Real {
        with_consts(|cc| Real(cc.pi(prec, RM)))
    }

    pub fn powi(&self, n: usize) -> Real {
        if n == 0 {
            return Real::from_i64(1, self.precision());
        }
        Real(self.0.powi(n, self.precision(), RM))
    }

    pub fn abs(&self) -> Real {
        Real(self.0.abs())
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive() && !self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, exp, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let mut mant = 0.0f64;
        for (k, w) in words.iter().rev().take(2).enumerate() {
            mant += (*w as f64) * 2f64.powi(-64 * (k as i32 + 1));
        }
        let v = mant * 2f64.powi(exp);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Decimal rendering with `digits` significant digits, in positional
    /// notation when the exponent is moderate.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        let s = with_consts(|cc| self.0.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
        scientific_to_positional(&s, digits)
    }

    /// Exact serialization: `sign:exponent:hexword,hexword,...`.
    pub fn to_bits(&self) -> String {
        if self.0.is_zero() {
            return format!("+:0:{}", self.precision());
        }
        let (words, _, sign, exp, _) = self.0.as_raw_parts().expect("finite");
        let s = if sign == Sign::Neg { '-' } else { '+' };
        let hex: Vec<String> = words.iter().map(|w| format!("{w:016x}")).collect();
        format!("{s}:{exp}:{}", hex.join(","))
    }

    pub fn from_bits(text: &str) -> Result<Real> {
        let bad = || Error::Parse(format!("invalid float bits {text:?}"));
        let mut parts = text.splitn(3, ':');
        let s = parts.next().ok_or_else(bad)?;
        let e: i32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let rest = parts.next().ok_or_else(bad)?;
        if !rest.contains(',') && e == 0 && rest.len() < 16 {
            let p: usize = rest.parse().map_err(|_| bad())?;
            return Ok(Real::zero_with(p));
        }
        let words = rest
            .split(',')
            .map(|h| u64::from_str_radix(h, 16).map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let sign = if s == "-" { Sign::Neg } else { Sign::Pos };
        let v = BigFloat::from_raw_parts(&words, 64 * words.len(), sign, e, false);
        if v.is_nan() {
            return Err(bad());
        }
        Ok(Real(v))
    }

    pub fn total_cmp(&self, other: &Real) -> Ordering {
        match self.0.cmp(&other.0) {
            Some(c) if c < 0 => Ordering::Less,
            Some(0) => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

fn scientific_to_positional(s: &str, digits: usize) -> String {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant),
    };
    let ds: String = mant.chars().filter(|c| c.is_ascii_digit()).take(digits.max(1)).collect();
    let sign = if neg { "-" } else { "" };
    if !(-8..=20).contains(&exp) {
        let (head, tail) = ds.split_at(1);
        return format!("{sign}{head}.{tail}e{exp}");
    }
    // mantissa is d.ddd, so the decimal point sits after 1 + exp digits
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), ds)
    } else if point as usize >= ds.len() {
        format!("{}{}", ds, "0".repeat(point as usize - ds.len()))
    } else {
        let (a, b) = ds.split_at(point as usize);
        format!("{a}.{b}")
    };
    format!("{sign}{body}")
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "{}", self.to_decimal(digits))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(25))
    }
}

impl Coeff for Real {
    fn zero() -> Self {
        Real::zero_with(DEFAULT_PRECISION)
    }
    fn one() -> Self {
        Real::from_i64(1, DEFAULT_PRECISION)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Real(self.0.add(&other.0, self.prec2(other), RM))
    }
    fn sub(&self, other: &Self) -> Self {
        Real(self.0.sub(&other.0, self.prec2(other), RM))
    }
    fn mul(&self, other: &Self) -> Self {
        Real(self.0.mul(&other.0, self.prec2(other), RM))
    }
    fn neg(&self) -> Self {
        Real(self.0.neg())
    }
    fn from_rational(q: &Q) -> Self {
        Real::from_rational_prec(q, DEFAULT_PRECISION)
    }
    fn scale(&self, q: &Q) -> Self {
        if q.is_integer() && q.numer().abs().bits() < 63 {
            let n: i64 = q.numer().try_into().expect("small integer");
            return self.mul(&Real::from_i64(n, self.precision()));
        }
        self.mul(&Real::from_rational_prec(q, self.precision()))
    }
}

impl Magnitude for Real {
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let p = re.precision();
        Complex { re, im: Real::zero_with(p) }
    }

    /// `i * x` for real `x`.
    pub fn imaginary(im: Real) -> Self {
        let p = im.precision();
        Complex { re: Real::zero_with(p), im }
    }

    pub fn abs_f64(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let im = self.im.to_decimal(digits);
        if im.starts_with('-') {
            write!(f, "({} - {}i)", self.re.to_decimal(digits), &im[1..])
        } else {
            write!(f, "({} + {}i)", self.re.to_decimal(digits), im)
        }
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Coeff for Complex {
    fn zero() -> Self {
        Complex::from_real(Real::zero())
    }
    fn one() -> Self {
        Complex::from_real(Real::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Complex::new(self.re.add(&o.re), self.im.add(&o.im))
    }
    fn sub(&self, o: &Self) -> Self {
        Complex::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }
    fn mul(&self, o: &Self) -> Self {
        Complex::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }
    fn neg(&self) -> Self {
        Complex::new(self.re.neg(), self.im.neg())
    }
    fn from_rational(q: &Q) -> Self {
        Complex::from_real(Real::from_rational(q))
    }
    fn scale(&self, q: &Q) -> Self {
        Complex::new(self.re.scale(q), self.im.scale(q))
    }
}

impl Magnitude for Complex {
    fn magnitude(&self) -> f64 {
        self.abs_f64()
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;

    #[test]
    fn rational_embedding() {
        let third = Real::from_rational_prec(&q(1, 3), 128);
        assert!((third.to_f64() - 1.0 / 3.0).abs() < 1e-16);
        let big = Real::from_rational_prec(&Q::from_integer(BigInt::from(10).pow(30)), 128);
        assert!((big.to_f64() / 1e30 - 1.0).abs() < 1e-15);
        let neg = Real::from_rational_prec(&q(-7, 2), 128);
        assert_eq!(neg.to_f64(), -3.5);
    }

    #[test]
    fn zero_keeps_working_precision() {
        let z = Real::zero_with(128);
        assert!(z.precision() > 0);
        assert!(z.scale(&q(1, 1)).is_zero());
        assert_eq!(z.scale(&q(3, 7)).to_f64(), 0.0);
    }

    #[test]
    fn ln2_digits() {
        let l = Real::from_i64(2, 128).ln().unwrap();
        assert!(l.to_decimal(30).starts_with("0.69314718055994530941723212145"));
        assert!(Real::from_i64(0, 128).ln().is_err());
    }

    #[test]
    fn bits_roundtrip() {
        let x = Real::pi(128).div(&Real::from_i64(7, 128));
        let back = Real::from_bits(&x.to_bits()).unwrap();
        assert_eq!(x.to_bits(), back.to_bits());
        assert!(x == back);
        let z = Real::zero();
        assert!(Real::from_bits(&z.to_bits()).unwrap().is_zero());
    }

    #[test]
    fn positional_formatting() {
        assert_eq!(scientific_to_positional("1.6449e+0", 5), "1.6449");
        assert_eq!(scientific_to_positional("6.9314e-1", 3), "0.693");
        assert_eq!(scientific_to_positional("-1.25e1", 3), "-12.5");
    }
}
