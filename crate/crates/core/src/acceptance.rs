//! The acceptance suite: thirteen end-to-end checks with independent
//! reference computations, shared by the test target and `nczeta check`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell::bell_number;
use crate::cache::ZetaCache;
use crate::coeff::{Coeff, Q};
use crate::diagram::{
    coproduct_bs_diagram, diagrams_of_size, hadamard_bell, hadamard_expansion_check, multiplicity,
    multiplicity_formula, product, product_sums, single, placements, word_image_sum, DeformParams, Diagram, Placement,
    LabeledDiagram,
};
use crate::error::Result;
use crate::kz::{
    adjoint_expansion, bridge_relations, normalize, regularization_drift, select_rho, z_series, AdjointConvention,
    Evaluator, ZSeries,
};
use crate::lyndon::{exp_factorize, reconstruct, Direction};
use crate::poly::Poly;
use crate::polylog::{chen_series, harmonic_sum, l_series, polylog, zeta_compute, zeta_value_with, ZetaMethod};
use crate::real::Real;
use crate::shuffle::{product_terms, ProductKind};
use crate::word::{words_up_to, Alphabet, Word};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2}. {} ({:.1}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Check = fn(&ZetaCache) -> Result<(bool, String)>;

const CRITERIA: [(&str, u64, Check); 13] = [
    ("deformed product associativity", 120, associativity),
    ("diagram bialgebra axioms", 60, bialgebra),
    ("partition/diagram counting", 120, counting),
    ("Hadamard product consistency", 60, hadamard),
    ("diagram image morphism", 60, morphism),
    ("stuffle character of harmonic sums", 60, harmonic_character),
    ("shuffle character of polylogarithms", 120, polylog_character),
    ("numeric polyzetas", 60, numeric_zeta),
    ("bridge relations", 300, bridge),
    ("Lyndon factorization round trip", 120, factorization),
    ("functional equation", 120, functional),
    ("Chen composition and regularization", 120, chen),
    ("adjoint-basis expansion", 60, adjoint),
];

pub fn criteria_count() -> usize {
    CRITERIA.len()
}

/// Runs one criterion (numbered from 1).
pub fn run_criterion(id: usize, cache: &ZetaCache) -> CriterionResult {
    let (name, limit, check) = CRITERIA[id - 1];
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| check(cache)));
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit);
    let (passed, detail) = match outcome {
        Ok(Ok((_, d))) if elapsed > limit => (false, format!("{d}; exceeded {}s", limit.as_secs())),
        Ok(Ok((ok, d))) => (ok, d),
        Ok(Err(e)) => (false, format!("error: {e}")),
        Err(_) => (false, "panicked".into()),
    };
    CriterionResult { id, name, passed, detail, elapsed, limit }
}

pub fn run_all(cache: &ZetaCache) -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(|i| run_criterion(i, cache)).collect()
}

/// Labelled diagrams with at most `rows` black and `cols` white spots and
/// entries in `1..=max_entry` where nonzero, including the empty diagram.
pub fn labeled_diagrams(rows: usize, cols: usize, max_entry: u32) -> Vec<LabeledDiagram> {
    let mut out = vec![LabeledDiagram::empty()];
    for r in 1..=rows {
        for c in 1..=cols {
            let cells = r * c;
            let base = max_entry as u64 + 1;
            for code in 0..base.pow(cells as u32) {
                let mut x = code;
                let mut m = vec![vec![0u32; c]; r];
                for cell in m.iter_mut().flatten() {
                    *cell = (x % base) as u32;
                    x /= base;
                }
                if let Ok(d) = LabeledDiagram::new(m) {
                    out.push(d);
                }
            }
        }
    }
    out
}

fn canonical_set(ds: &[LabeledDiagram]) -> Result<Vec<Diagram>> {
    let mut set = BTreeSet::new();
    for d in ds {
        set.insert(d.canonical()?);
    }
    Ok(set.into_iter().collect())
}

fn symbolic_params() -> DeformParams<Poly> {
    DeformParams { qc: Poly::var("qc"), qs: Poly::var("qs") }
}

fn associative(a: &LabeledDiagram, b: &LabeledDiagram, c: &LabeledDiagram, p: &DeformParams<Poly>) -> bool {
    let left = product_sums(&product(a, b, p), &single(c), p);
    let right = product_sums(&single(a), &product(b, c, p), p);
    left == right
}

fn random_diagram(rng: &mut ChaCha8Rng) -> LabeledDiagram {
    loop {
        let r = rng.gen_range(1..=3);
        let c = rng.gen_range(1..=3);
        let m = (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..=2)).collect()).collect();
        if let Ok(d) = LabeledDiagram::new(m) {
            return d;
        }
    }
}

type Expanded = HashMap<(LabeledDiagram, u32, u32), i64>;

/// Both bracketings of a triple product as exact sums of
/// `qc^a qs^b · diagram`, keyed by exponents.
fn bracketings(a: &LabeledDiagram, c: &LabeledDiagram, ab: &[Placement], bc: &[Placement]) -> (Expanded, Expanded) {
    let mut left = Expanded::new();
    for p in ab {
        for q in placements(&p.diagram, c) {
            *left.entry((q.diagram, p.crossing + q.crossing, p.superposition + q.superposition)).or_insert(0) += 1;
        }
    }
    let mut right = Expanded::new();
    for p in bc {
        for q in placements(a, &p.diagram) {
            *right.entry((q.diagram, p.crossing + q.crossing, p.superposition + q.superposition)).or_insert(0) += 1;
        }
    }
    (left, right)
}

fn associativity(_: &ZetaCache) -> Result<(bool, String)> {
    let reps: Vec<LabeledDiagram> =
        canonical_set(&labeled_diagrams(2, 2, 2))?.into_iter().map(|d| d.labeled().clone()).collect();
    let pairs: HashMap<(usize, usize), Vec<Placement>> = (0..reps.len())
        .flat_map(|i| (0..reps.len()).map(move |j| (i, j)))
        .map(|(i, j)| ((i, j), placements(&reps[i], &reps[j])))
        .collect();
    let mut failures = 0;
    let mut triples = 0;
    for i in 0..reps.len() {
        for j in 0..reps.len() {
            for k in 0..reps.len() {
                triples += 1;
                let (l, r) = bracketings(&reps[i], &reps[k], &pairs[&(i, j)], &pairs[&(j, k)]);
                if l != r {
                    failures += 1;
                }
            }
        }
    }
    let p = symbolic_params();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let (a, b, c) = (random_diagram(&mut rng), random_diagram(&mut rng), random_diagram(&mut rng));
        if !associative(&a, &b, &c, &p) {
            failures += 1;
        }
    }
    Ok((failures == 0, format!("{triples} exhaustive + 50 random triples, {failures} failures")))
}

type Tensor2 = BTreeMap<(Diagram, Diagram), u64>;

fn bialgebra(_: &ZetaCache) -> Result<(bool, String)> {
    let mut ds = Vec::new();
    for r in 0..=3 {
        for d in labeled_diagrams(r, 3 - r, 2) {
            if d.rows() == r && d.rows() + d.cols() <= 3 {
                ds.push(d);
            }
        }
    }
    let ds = canonical_set(&ds)?;
    let empty = Diagram::empty();
    let mut bad = Vec::new();
    for d in &ds {
        let delta = coproduct_bs_diagram(d);
        let mut left: BTreeMap<(Diagram, Diagram, Diagram), u64> = BTreeMap::new();
        let mut right = BTreeMap::new();
        for ((a, b), c) in &delta {
            for ((a1, a2), c2) in coproduct_bs_diagram(a) {
                *left.entry((a1, a2, b.clone())).or_insert(0) += c * c2;
            }
            for ((b1, b2), c2) in coproduct_bs_diagram(b) {
                *right.entry((a.clone(), b1, b2)).or_insert(0) += c * c2;
            }
        }
        if left != right {
            bad.push(format!("coassociativity at {d}"));
        }
        let counit_left: Vec<_> = delta.iter().filter(|((a, _), _)| *a == empty).collect();
        let counit_right: Vec<_> = delta.iter().filter(|((_, b), _)| *b == empty).collect();
        let ok_l = counit_left.len() == 1 && counit_left[0].0 .1 == *d && *counit_left[0].1 == 1;
        let ok_r = counit_right.len() == 1 && counit_right[0].0 .0 == *d && *counit_right[0].1 == 1;
        if !(ok_l && ok_r) {
            bad.push(format!("counit at {d}"));
        }
    }
    let mut pairs = 0;
    for d1 in &ds {
        for d2 in &ds {
            if d1.labeled().rows() + d1.labeled().cols() + d2.labeled().rows() + d2.labeled().cols() > 3 {
                continue;
            }
            pairs += 1;
            let lhs = coproduct_bs_diagram(&d1.mul(d2));
            let mut rhs: Tensor2 = BTreeMap::new();
            for ((a1, b1), c1) in coproduct_bs_diagram(d1) {
                for ((a2, b2), c2) in coproduct_bs_diagram(d2) {
                    *rhs.entry((a1.mul(&a2), b1.mul(&b2))).or_insert(0) += c1 * c2;
                }
            }
            if lhs != rhs {
                bad.push(format!("multiplicativity at {d1} * {d2}"));
            }
        }
    }
    let detail = format!("{} diagrams, {pairs} products, {} violations", ds.len(), bad.len());
    Ok((bad.is_empty(), detail))
}

fn counting(_: &ZetaCache) -> Result<(bool, String)> {
    let expected: [u64; 5] = [1, 4, 25, 225, 2704];
    let mut ok = true;
    let mut sums = Vec::new();
    for n in 1..=5 {
        let ds = diagrams_of_size(n)?;
        let total: num_bigint::BigInt = ds.iter().map(multiplicity_formula).sum();
        let b = bell_number(n);
        ok &= total == num_bigint::BigInt::from(expected[n - 1]) && total == &b * &b;
        if n <= 4 {
            for d in &ds {
                ok &= num_bigint::BigInt::from(multiplicity(d)?) == multiplicity_formula(d);
            }
        }
        sums.push(total.to_string());
    }
    Ok((ok, format!("sums {}", sums.join(", "))))
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=7).into())
}

fn hadamard(_: &ZetaCache) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut ok = true;
    for _ in 0..5 {
        let l: Vec<Q> = (0..5).map(|_| random_q(&mut rng)).collect();
        let v: Vec<Q> = (0..5).map(|_| random_q(&mut rng)).collect();
        for deg in hadamard_expansion_check(&l, &v, 5)? {
            ok &= deg.agrees() && deg.componentwise == hadamard_bell(&l, &v, deg.n)?;
        }
    }
    Ok((ok, "5 random (L, V) pairs through degree 5".into()))
}

fn morphism(_: &ZetaCache) -> Result<(bool, String)> {
    let ds = labeled_diagrams(2, 2, 2);
    let p = DeformParams { qc: Q::one(), qs: Q::one() };
    let mut failures = 0;
    for a in &ds {
        for b in &ds {
            let image = word_image_sum(&product(a, b, &p), Alphabet::Y)?;
            let (u, v) = (a.word_image(Alphabet::Y)?, b.word_image(Alphabet::Y)?);
            let mut expected: BTreeMap<Word, Q> = BTreeMap::new();
            for (w, k) in stuffle_oracle(u.letters(), v.letters()) {
                *expected.entry(Word::y(&w)).or_insert_with(Q::zero) += Q::from_integer(k.into());
            }
            if image != expected {
                failures += 1;
            }
        }
    }
    let p = DeformParams { qc: Q::one(), qs: Q::zero() };
    let mut shuffle_failures = 0;
    for a in &ds {
        for b in &ds {
            let image = word_image_sum(&product(a, b, &p), Alphabet::XIndexed)?;
            let (u, v) = (a.word_image(Alphabet::XIndexed)?, b.word_image(Alphabet::XIndexed)?);
            let mut expected: BTreeMap<Word, Q> = BTreeMap::new();
            for (w, k) in shuffle_oracle(u.letters(), v.letters()) {
                *expected.entry(Word::new(Alphabet::XIndexed, w)?).or_insert_with(Q::zero) += Q::from_integer(k.into());
            }
            if image != expected {
                shuffle_failures += 1;
            }
        }
    }
    let n = ds.len() * ds.len();
    Ok((
        failures == 0 && shuffle_failures == 0,
        format!("{n} pairs at (1, 1) vs stuffle, {failures} failures; {n} at (1, 0) vs shuffle, {shuffle_failures} failures"),
    ))
}

/// Shuffle by the defining recursion on first letters.
fn shuffle_oracle(u: &[u32], v: &[u32]) -> HashMap<Vec<u32>, i64> {
    let mut out = HashMap::new();
    if u.is_empty() || v.is_empty() {
        out.insert([u, v].concat(), 1);
        return out;
    }
    for (head, rest) in [(u[0], shuffle_oracle(&u[1..], v)), (v[0], shuffle_oracle(u, &v[1..]))] {
        for (w, c) in rest {
            let mut x = vec![head];
            x.extend(w);
            *out.entry(x).or_insert(0) += c;
        }
    }
    out
}

/// Quasi-shuffle by the defining recursion on first letters.
fn stuffle_oracle(u: &[u32], v: &[u32]) -> HashMap<Vec<u32>, i64> {
    let mut out = HashMap::new();
    if u.is_empty() || v.is_empty() {
        out.insert([u, v].concat(), 1);
        return out;
    }
    let mut push = |head: u32, rest: HashMap<Vec<u32>, i64>| {
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

fn nonempty_words(a: Alphabet, d: usize) -> Vec<Word> {
    words_up_to(a, d).into_iter().filter(|w| !w.is_empty()).collect()
}

fn harmonic_character(_: &ZetaCache) -> Result<(bool, String)> {
    let words = nonempty_words(Alphabet::Y, 4);
    let mut checks = 0;
    let mut failures = 0;
    for n in 0..=30u64 {
        let mut memo: HashMap<Word, Q> = HashMap::new();
        let mut h = |w: &Word| -> Result<Q> {
            if let Some(v) = memo.get(w) {
                return Ok(v.clone());
            }
            let v = harmonic_sum(w, n)?;
            memo.insert(w.clone(), v.clone());
            Ok(v)
        };
        for u in &words {
            for v in &words {
                if u > v {
                    continue;
                }
                let lhs = h(u)? * h(v)?;
                let mut rhs = Q::zero();
                for (w, k) in product_terms(ProductKind::Stuffle, u, v)? {
                    rhs += h(&w)? * Q::from_integer(k);
                }
                checks += 1;
                if lhs != rhs {
                    failures += 1;
                }
            }
        }
    }
    Ok((failures == 0, format!("{checks} exact identities, {failures} failures")))
}

fn polylog_character(_: &ZetaCache) -> Result<(bool, String)> {
    let half = Real::from_rational(&Q::new(1.into(), 2.into()));
    let tol = 1e-13;
    let mut memo: HashMap<Word, Real> = HashMap::new();
    let mut li = |w: &Word| -> Result<Real> {
        if let Some(v) = memo.get(w) {
            return Ok(v.clone());
        }
        let v = polylog(w, &half, tol)?.value;
        memo.insert(w.clone(), v.clone());
        Ok(v)
    };
    let words = nonempty_words(Alphabet::X, 4);
    let mut worst: f64 = 0.0;
    for u in &words {
        for v in &words {
            if u > v {
                continue;
            }
            let lhs = li(u)?.mul(&li(v)?);
            let mut rhs = Real::zero();
            for (w, k) in product_terms(ProductKind::Shuffle, u, v)? {
                rhs = rhs.add(&li(&w)?.scale(&Q::from_integer(k)));
            }
            worst = worst.max(lhs.sub(&rhs).to_f64().abs());
        }
    }
    Ok((worst <= 1e-9, format!("max residual {worst:.2e}")))
}

/// `Σ_{k<=N} k^{-s}` plus the midpoint of the integral tail bounds.
fn zeta_oracle(s: i32) -> f64 {
    let n = 200_000u64;
    let mut acc = 0.0;
    for k in (1..=n).rev() {
        acc += (k as f64).powi(-s);
    }
    let tail = |x: f64| x.powi(1 - s) / (s - 1) as f64;
    acc + 0.5 * (tail(n as f64) + tail((n + 1) as f64))
}

/// `Σ_{k<=N} H_{k-1} / k^2` with the tail estimate `(ln N + γ + 1) / N`.
fn zeta21_oracle() -> f64 {
    let n = 1_000_000u64;
    let mut h = 0.0;
    let mut acc = 0.0;
    for k in 1..=n {
        let kf = k as f64;
        acc += h / (kf * kf);
        h += 1.0 / kf;
    }
    let nf = n as f64;
    acc + (nf.ln() + 0.5772156649015329 + 1.0) / nf
}

fn numeric_zeta(cache: &ZetaCache) -> Result<(bool, String)> {
    let z = |w: &[u32], tol: f64| -> Result<f64> { Ok(zeta_value_with(&Word::y(w), tol, 128, cache)?.value.to_f64()) };
    let (z2, z3) = (z(&[2], 1e-10)?, z(&[3], 1e-10)?);
    let (o2, o3) = (zeta_oracle(2), zeta_oracle(3));
    let e2 = (z2 - 1.6449340668482264).abs().max((o2 - 1.6449340668482264).abs()).max((z2 - o2).abs());
    let e3 = (z3 - 1.2020569031595943).abs().max((o3 - 1.2020569031595943).abs()).max((z3 - o3).abs());
    let euler = (z(&[2, 1], 1e-6)? - z(&[3], 1e-6)?).abs();
    let oracle = (zeta21_oracle() - o3).abs();
    let partial = zeta_compute(&Word::y(&[3]), 1e-8, 128, ZetaMethod::PartialSum)?;
    let e_partial = (partial.value.to_f64() - o3).abs();
    let ok = e2 <= 1e-8 && e3 <= 1e-8 && euler <= 2e-6 && oracle <= 2e-6 && e_partial <= 1e-8;
    Ok((
        ok,
        format!(
            "ζ(2) err {e2:.1e}, ζ(3) err {e3:.1e} (partial sums {e_partial:.1e}), ζ(2,1)-ζ(3) = {euler:.1e} (oracle {oracle:.1e})"
        ),
    ))
}

fn bridge(cache: &ZetaCache) -> Result<(bool, String)> {
    let ev = Evaluator::new(1e-8, cache);
    let report = bridge_relations(4, 1e-6, &ev)?;
    let euler = normalize(&Poly::zeta(&[2, 1]).sub(&Poly::zeta(&[3])));
    let has_euler = report.relations.iter().any(|r| r.relation == euler);
    let all = report.relations.iter().chain(&report.lyndon_relations);
    let ok_all = all.clone().all(|r| r.relation.is_homogeneous() && r.residual <= 1e-6);
    let worst = all.map(|r| r.residual).fold(0.0, f64::max);
    Ok((
        has_euler && ok_all,
        format!(
            "{} word relations, {} Lyndon relations, Euler relation {}, max residual {worst:.1e}",
            report.relations.len(),
            report.lyndon_relations.len(),
            if has_euler { "found" } else { "missing" }
        ),
    ))
}

/// `Li_w(z)` for an X-word ending in `x1`, by nested summation in `f64`.
fn li_oracle(w: &Word, z: f64) -> f64 {
    let mut s = Vec::new();
    let mut run = 1;
    for &l in w.letters() {
        if l == 0 {
            run += 1;
        } else {
            s.push(run);
            run = 1;
        }
    }
    // t[j] = Σ over k_j > ... > k_r of the suffix terms, indexed by k_j
    let n = 200;
    let r = s.len();
    let mut inner = vec![1.0; n + 1];
    for j in (0..r).rev() {
        let mut next = vec![0.0; n + 1];
        let mut acc = 0.0;
        for k in 1..=n {
            let term = if j + 1 < r { inner[k - 1] } else { 1.0 } / (k as f64).powi(s[j]);
            acc += if j == 0 { term * z.powi(k as i32) } else { term };
            next[k] = acc;
        }
        inner = next;
    }
    inner[n]
}

fn factorization(_: &ZetaCache) -> Result<(bool, String)> {
    let half = Real::from_rational(&Q::new(1.into(), 2.into()));
    let l = l_series(&half, 4, 1e-14)?;
    let dist = |a: &Real, b: &Real| a.sub(b).to_f64().abs();
    let coeffs = exp_factorize(&l, ProductKind::Shuffle, Direction::Decreasing, 1e-9, dist)?;
    let back = reconstruct(&coeffs, Alphabet::X, ProductKind::Shuffle, Direction::Decreasing, 4)?;
    let round = back.max_abs_diff(&l);
    let mut coord: f64 = 0.0;
    for (w, c) in &coeffs {
        let oracle = if w.last() == Some(0) { 0.5f64.ln().powi(w.len() as i32) } else { li_oracle(w, 0.5) };
        coord = coord.max((c.to_f64() - oracle).abs());
    }
    Ok((
        round <= 1e-9 && coord <= 1e-9,
        format!("{} Lyndon coordinates, round trip {round:.1e}, coordinate error {coord:.1e}", coeffs.len()),
    ))
}

fn functional(cache: &ZetaCache) -> Result<(bool, String)> {
    let ev = Evaluator::new(1e-12, cache);
    let mut chosen = None;
    let mut parts = Vec::new();
    let mut ok = true;
    for z in [0.3, 0.5] {
        let (pass, reports) = select_rho(&Real::from_f64(z, 128), 3, 1e-6, &ev)?;
        ok &= pass.is_some() && (chosen.is_none() || chosen == pass);
        chosen = chosen.or(pass);
        for r in reports {
            parts.push(format!("z={z} {}: {:.1e}", r.variant, r.max_residual));
        }
    }
    let which = chosen.map_or("none".to_string(), |v| format!("{v:?}"));
    Ok((ok, format!("passing variant {which} ({})", parts.join(", "))))
}

fn chen(cache: &ZetaCache) -> Result<(bool, String)> {
    let r = |x: f64| Real::from_f64(x, 128);
    let tol = 1e-14;
    let s01 = chen_series(&r(0.2), &r(0.4), 3, tol)?;
    let s12 = chen_series(&r(0.4), &r(0.6), 3, tol)?;
    let s02 = chen_series(&r(0.2), &r(0.6), 3, tol)?;
    let comp = s12.concat(&s01)?.max_abs_diff(&s02);
    let ev = Evaluator::new(1e-12, cache);
    let drift = regularization_drift(&[1e-2, 1e-3, 1e-4], 2, &ev)?;
    let monotone = drift.windows(2).all(|w| w[1] < w[0]);
    let d: Vec<String> = drift.iter().map(|x| format!("{x:.2e}")).collect();
    Ok((comp <= 1e-8 && monotone, format!("composition residual {comp:.1e}, drift [{}]", d.join(", "))))
}

fn adjoint(_: &ZetaCache) -> Result<(bool, String)> {
    let ok = adjoint_expansion(3, AdjointConvention::Mirror)? == z_series(ZSeries::PhiKz, 3)?;
    Ok((ok, "exact through degree 3".into()))
}
