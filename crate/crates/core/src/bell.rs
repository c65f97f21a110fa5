//! Set partitions, Bell polynomials and the exponential Hadamard product.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::coeff::{binomial, factorial, Coeff, Q};
use crate::error::{Error, Result};

pub const MAX_PARTITION_N: usize = 12;

/// A partition of `{1, ..., n}`; blocks are sorted and ordered by their
/// smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Domain("empty block".into()));
            }
            for &e in b {
                if e == 0 || e > n || seen[e] {
                    return Err(Error::Domain(format!("element {e} repeated or outside 1..={n}")));
                }
                seen[e] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::Domain("blocks do not cover the ground set".into()));
        }
        blocks.sort();
        Ok(SetPartition { n, blocks })
    }

    /// From a restricted-growth string `a` (0-based block labels).
    fn from_rgs(a: &[usize]) -> Self {
        let k = a.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in a.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        SetPartition { n: a.len(), blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Entry `k - 1` counts the blocks of size `k`.
    pub fn type_vector(&self) -> Vec<usize> {
        let mut t = vec![0; self.n];
        for b in &self.blocks {
            t[b.len() - 1] += 1;
        }
        t
    }

    /// Index of the block containing each element, `0`-based, for elements `1..=n`.
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &e in b {
                idx[e - 1] = i;
            }
        }
        idx
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

fn check_bound(n: usize) -> Result<()> {
    if n > MAX_PARTITION_N {
        return Err(Error::BoundExceeded { what: "n", value: n, bound: MAX_PARTITION_N });
    }
    Ok(())
}

/// Calls `f` on every partition of `{1..n}` (with exactly `k` blocks when
/// given), in restricted-growth-string order.
pub fn for_each_partition(n: usize, k: Option<usize>, mut f: impl FnMut(&SetPartition)) -> Result<()> {
    check_bound(n)?;
    let mut a = vec![0usize; n];
    rgs(&mut a, 0, 0, k, &mut |a| f(&SetPartition::from_rgs(a)));
    Ok(())
}

fn rgs(a: &mut [usize], i: usize, max: usize, k: Option<usize>, f: &mut impl FnMut(&[usize])) {
    let n = a.len();
    if i == n {
        let blocks = if n == 0 { 0 } else { max };
        if k.is_none_or(|k| k == blocks) {
            f(a);
        }
        return;
    }
    if let Some(k) = k {
        if max > k || max + (n - i) < k {
            return;
        }
    }
    let limit = if i == 0 { 0 } else { max };
    for b in 0..=limit {
        a[i] = b;
        let m = if i == 0 { 1 } else { max.max(b + 1) };
        rgs(a, i + 1, m, k, f);
    }
}

pub fn set_partitions(n: usize, k: Option<usize>) -> Result<Vec<SetPartition>> {
    let mut out = Vec::new();
    for_each_partition(n, k, |p| out.push(p.clone()))?;
    Ok(out)
}

/// Number of partitions of each type.
pub fn type_counts(n: usize, k: Option<usize>) -> Result<BTreeMap<Vec<usize>, u64>> {
    let mut out = BTreeMap::new();
    for_each_partition(n, k, |p| *out.entry(p.type_vector()).or_insert(0) += 1)?;
    Ok(out)
}

pub fn bell_number(n: usize) -> BigInt {
    (0..=n).map(|k| stirling2(n, k)).sum()
}

pub fn stirling2(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::from(0); k + 1];
    row[0] = BigInt::from(1);
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = &row[j] * BigInt::from(j) + &row[j - 1];
        }
        row[0] = BigInt::from(0);
    }
    row[k].clone()
}

/// `B_n(X1..Xn) = Σ_P X^{Type(P)}`, or the partial polynomial `b_{n,k}` when
/// `k` is given. `vars[i]` holds `X_{i+1}`; missing variables are zero.
pub fn bell_polynomial<C: Coeff>(n: usize, k: Option<usize>, vars: &[C]) -> Result<C> {
    let mut acc = C::zero();
    for (t, count) in type_counts(n, k)? {
        let mut m = C::from_rational(&Q::from_integer(count.into()));
        for (i, &e) in t.iter().enumerate() {
            if e > 0 {
                m = m.mul(&vars.get(i).cloned().unwrap_or_else(C::zero).pow(e as u32));
            }
        }
        acc = acc.add(&m);
    }
    Ok(acc)
}

/// Truncated exponential generating series `Σ a_n z^n / n!`.
#[derive(Clone, Debug, PartialEq)]
pub struct EgfSeries<C> {
    pub coeffs: Vec<C>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HadamardMethod {
    /// `Σ a_n b_n z^n / n!`.
    Componentwise,
    /// `F(z d/dx) G(x)` evaluated at `x = 0`.
    Substitution,
}

impl<C: Coeff> EgfSeries<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        EgfSeries { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    /// `exp(F)` for `F` with zero constant term, by
    /// `y_n = Σ_k C(n-1, k-1) a_k y_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.get(0).is_zero() {
            return Err(Error::ConstantTerm { expected: "0", found: self.get(0).to_string() });
        }
        let d = self.degree();
        let mut y = vec![C::one()];
        for n in 1..=d {
            let mut s = C::zero();
            for k in 1..=n {
                let b = Q::from_integer(binomial(n - 1, k - 1));
                s = s.add(&self.get(k).mul(&y[n - k]).scale(&b));
            }
            y.push(s);
        }
        Ok(EgfSeries { coeffs: y })
    }
}

pub fn hadamard_exp<C: Coeff>(f: &EgfSeries<C>, g: &EgfSeries<C>, method: HadamardMethod) -> EgfSeries<C> {
    let d = f.degree().min(g.degree());
    let coeffs = match method {
        HadamardMethod::Componentwise => (0..=d).map(|n| f.get(n).mul(&g.get(n))).collect(),
        HadamardMethod::Substitution => {
            // (z d/dx)^n / n! applied to g_m x^m / m! leaves
            // z^n / n! · g_m x^{m-n} / (m-n)!, which survives x = 0 only when m = n.
            (0..=d)
                .map(|n| {
                    let mut at_zero = C::zero();
                    for m in n..=g.degree() {
                        let derived = Q::new(1.into(), factorial(m - n));
                        let power_at_zero = if m == n { Q::one() } else { Q::zero() };
                        at_zero = at_zero.add(&g.get(m).scale(&(derived * power_at_zero)));
                    }
                    f.get(n).mul(&at_zero)
                })
                .collect()
        }
    };
    EgfSeries { coeffs }
}
