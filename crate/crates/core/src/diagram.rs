//! Bipartite multigraph diagrams: labelled diagrams (ordered spots) and
//! their classes under spot permutations, the deformed product, the
//! black-spot coproduct and the maps onto words.
//!
//! Rows of the incidence matrix are black spots, columns are white spots.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bell::{bell_polynomial, for_each_partition, hadamard_exp, EgfSeries, HadamardMethod, SetPartition};
use crate::coeff::{factorial, Coeff, Q};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

pub const MAX_MULT_EDGES: usize = 7;
pub const MAX_CANONICAL_SPOTS: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledDiagram {
    rows: usize,
    cols: usize,
    matrix: Vec<Vec<u32>>,
}

impl LabeledDiagram {
    pub fn empty() -> Self {
        LabeledDiagram { rows: 0, cols: 0, matrix: Vec::new() }
    }

    pub fn new(matrix: Vec<Vec<u32>>) -> Result<Self> {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, Vec::len);
        if matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidDiagram("ragged matrix".into()));
        }
        if matrix.iter().any(|r| r.iter().all(|&e| e == 0)) {
            return Err(Error::InvalidDiagram("isolated black spot".into()));
        }
        if (0..cols).any(|j| matrix.iter().all(|r| r[j] == 0)) {
            return Err(Error::InvalidDiagram("isolated white spot".into()));
        }
        Ok(LabeledDiagram { rows, cols, matrix })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    /// Number of edges `|d|`.
    pub fn edges(&self) -> usize {
        self.matrix.iter().flatten().map(|&e| e as usize).sum()
    }

    /// Black spot degrees `I(d, k)`, a composition of `|d|`.
    pub fn row_sums(&self) -> Vec<u32> {
        self.matrix.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.cols).map(|j| self.matrix.iter().map(|r| r[j]).sum()).collect()
    }

    /// White spot type: entry `i - 1` counts white spots of degree `i`.
    pub fn alpha(&self) -> Vec<usize> {
        spot_type(&self.col_sums(), self.edges())
    }

    /// Black spot type.
    pub fn beta(&self) -> Vec<usize> {
        spot_type(&self.row_sums(), self.edges())
    }

    /// Sub-diagram on the given black spots (in order), dropping white spots
    /// left isolated.
    pub fn restrict(&self, black: &[usize]) -> LabeledDiagram {
        let keep: Vec<usize> = (0..self.cols).filter(|&j| black.iter().any(|&i| self.matrix[i][j] > 0)).collect();
        let matrix: Vec<Vec<u32>> = black.iter().map(|&i| keep.iter().map(|&j| self.matrix[i][j]).collect()).collect();
        LabeledDiagram { rows: black.len(), cols: keep.len(), matrix }
    }

    /// Block-diagonal concatenation `[d1|d2]`.
    pub fn concat(&self, other: &LabeledDiagram) -> LabeledDiagram {
        let cols = self.cols + other.cols;
        let mut matrix = Vec::with_capacity(self.rows + other.rows);
        for r in &self.matrix {
            let mut row = r.clone();
            row.resize(cols, 0);
            matrix.push(row);
        }
        for r in &other.matrix {
            let mut row = vec![0; self.cols];
            row.extend_from_slice(r);
            matrix.push(row);
        }
        LabeledDiagram { rows: self.rows + other.rows, cols, matrix }
    }

    pub fn canonical(&self) -> Result<Diagram> {
        Diagram::from_labeled(self)
    }

    /// Image word `x_{I(d,1)}...x_{I(d,p)}` over an indexed alphabet.
    pub fn word_image(&self, target: Alphabet) -> Result<Word> {
        if !target.is_indexed() {
            return Err(Error::WrongAlphabet(Alphabet::XIndexed));
        }
        Word::new(target, self.row_sums())
    }
}

fn spot_type(degrees: &[u32], n: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for &d in degrees {
        t[d as usize - 1] += 1;
    }
    t
}

impl fmt::Display for LabeledDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl fmt::Debug for LabeledDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A diagram up to permutation of black and white spots, stored as the
/// lexicographically least matrix of its class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram(LabeledDiagram);

impl Diagram {
    pub fn from_labeled(d: &LabeledDiagram) -> Result<Self> {
        if d.rows > MAX_CANONICAL_SPOTS || d.cols > MAX_CANONICAL_SPOTS {
            return Err(Error::BoundExceeded {
                what: "spots per side",
                value: d.rows.max(d.cols),
                bound: MAX_CANONICAL_SPOTS,
            });
        }
        Ok(Diagram(canonicalize(d)))
    }

    pub fn empty() -> Self {
        Diagram(LabeledDiagram::empty())
    }

    pub fn labeled(&self) -> &LabeledDiagram {
        &self.0
    }

    /// Commutative product: disjoint union.
    pub fn mul(&self, other: &Diagram) -> Diagram {
        Diagram(canonicalize(&self.0.concat(&other.0)))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut p, &mut out);
    out
}

fn heap_permute(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, p, out);
        if k % 2 == 0 {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

fn transpose(m: &[Vec<u32>], cols: usize) -> Vec<Vec<u32>> {
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Least row-major matrix over all row and column permutations. For a fixed
/// ordering of one side the optimal ordering of the other side is obtained
/// by sorting, so only the smaller side is permuted.
fn canonicalize(d: &LabeledDiagram) -> LabeledDiagram {
    if d.is_empty() {
        return d.clone();
    }
    let mut best: Option<Vec<Vec<u32>>> = None;
    if d.cols <= d.rows {
        for perm in permutations(d.cols) {
            let mut m: Vec<Vec<u32>> = d.matrix.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect();
            m.sort();
            if best.as_ref().is_none_or(|b| m < *b) {
                best = Some(m);
            }
        }
    } else {
        for perm in permutations(d.rows) {
            let rowp: Vec<Vec<u32>> = perm.iter().map(|&i| d.matrix[i].clone()).collect();
            let mut cols = transpose(&rowp, d.cols);
            cols.sort();
            let m = transpose(&cols, d.rows);
            if best.as_ref().is_none_or(|b| m < *b) {
                best = Some(m);
            }
        }
    }
    LabeledDiagram { rows: d.rows, cols: d.cols, matrix: best.expect("nonempty") }
}

/// Labelled incidence matrix of `(P1, P2)`: rows are the blocks of `P1`,
/// columns the blocks of `P2`, in their canonical order.
pub fn labeled_of_pair(p1: &SetPartition, p2: &SetPartition) -> Result<LabeledDiagram> {
    if p1.n() != p2.n() {
        return Err(Error::GroundSetMismatch(p1.n(), p2.n()));
    }
    let col_of = p2.block_index();
    let mut m = vec![vec![0u32; p2.num_blocks()]; p1.num_blocks()];
    for (i, b) in p1.blocks().iter().enumerate() {
        for &e in b {
            m[i][col_of[e - 1]] += 1;
        }
    }
    LabeledDiagram::new(m)
}

pub fn diagram_of_pair(p1: &SetPartition, p2: &SetPartition) -> Result<Diagram> {
    labeled_of_pair(p1, p2)?.canonical()
}

/// `mult(d)` by enumerating all pairs of partitions of `{1..|d|}`.
pub fn multiplicity(d: &Diagram) -> Result<u64> {
    let n = d.0.edges();
    if n > MAX_MULT_EDGES {
        return Err(Error::BoundExceeded { what: "|d|", value: n, bound: MAX_MULT_EDGES });
    }
    let beta = d.0.beta();
    let alpha = d.0.alpha();
    let mut first = Vec::new();
    let mut second = Vec::new();
    for_each_partition(n, Some(d.0.rows), |p| {
        if p.type_vector() == beta {
            first.push(p.clone());
        }
    })?;
    for_each_partition(n, Some(d.0.cols), |p| {
        if p.type_vector() == alpha {
            second.push(p.clone());
        }
    })?;
    let mut count = 0;
    for p1 in &first {
        for p2 in &second {
            if diagram_of_pair(p1, p2)? == *d {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Diagram counts over all pairs of partitions of `{1..n}`.
pub fn multiplicity_table(n: usize) -> Result<BTreeMap<Diagram, u64>> {
    if n > MAX_MULT_EDGES {
        return Err(Error::BoundExceeded { what: "|d|", value: n, bound: MAX_MULT_EDGES });
    }
    let parts = crate::bell::set_partitions(n, None)?;
    let mut out = BTreeMap::new();
    for p1 in &parts {
        for p2 in &parts {
            *out.entry(diagram_of_pair(p1, p2)?).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// `mult(d) = |d|! / (∏ m_ij! · |Stab(M)|)` where the stabilizer is taken in
/// the group of row and column permutations.
pub fn multiplicity_formula(d: &Diagram) -> BigInt {
    let m = &d.0;
    let n = m.edges();
    let mut denom: BigInt = m.matrix.iter().flatten().map(|&e| factorial(e as usize)).product();
    let mut stab = 0u64;
    let col_perms = permutations(m.cols);
    for rp in permutations(m.rows) {
        for cp in &col_perms {
            if rp.iter().enumerate().all(|(i, &ri)| cp.iter().enumerate().all(|(j, &cj)| m.matrix[ri][cj] == m.matrix[i][j])) {
                stab += 1;
            }
        }
    }
    denom *= BigInt::from(stab);
    factorial(n) / denom
}

/// All diagrams with `n` edges, enumerated as matrices with
/// non-increasing rows and then canonicalized.
pub fn diagrams_of_size(n: usize) -> Result<Vec<Diagram>> {
    if n > MAX_CANONICAL_SPOTS {
        return Err(Error::BoundExceeded { what: "|d|", value: n, bound: MAX_CANONICAL_SPOTS });
    }
    let mut out = BTreeSet::new();
    if n == 0 {
        out.insert(Diagram::empty());
    }
    for q in 1..=n {
        let rows = row_vectors(q, n);
        let mut stack: Vec<usize> = Vec::new();
        collect_matrices(&rows, n, q, 0, &mut stack, &mut out);
    }
    Ok(out.into_iter().collect())
}

fn row_vectors(q: usize, max_sum: usize) -> Vec<Vec<u32>> {
    fn go(q: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == q {
            if cur.iter().any(|&e| e > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=left {
            cur.push(e as u32);
            go(q, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(q, max_sum, &mut Vec::new(), &mut out);
    out
}

fn collect_matrices(rows: &[Vec<u32>], left: usize, q: usize, from: usize, stack: &mut Vec<usize>, out: &mut BTreeSet<Diagram>) {
    if left == 0 {
        let m: Vec<Vec<u32>> = stack.iter().map(|&i| rows[i].clone()).collect();
        if let Ok(d) = LabeledDiagram::new(m) {
            if d.cols == q {
                out.insert(Diagram(canonicalize(&d)));
            }
        }
        return;
    }
    for i in from..rows.len() {
        let s: usize = rows[i].iter().map(|&e| e as usize).sum();
        if s <= left {
            stack.push(i);
            collect_matrices(rows, left - s, q, i, stack, out);
            stack.pop();
        }
    }
}

/// Formal sums of labelled diagrams.
pub type DiagramSum<C> = BTreeMap<LabeledDiagram, C>;

pub fn add_to<C: Coeff>(sum: &mut DiagramSum<C>, d: LabeledDiagram, c: C) {
    if c.is_zero() {
        return;
    }
    let v = sum.entry(d.clone()).or_insert_with(C::zero);
    *v = v.add(&c);
    if v.is_zero() {
        sum.remove(&d);
    }
}

#[derive(Clone, Debug)]
pub struct DeformParams<C> {
    pub qc: C,
    pub qs: C,
}

/// One way of placing the black spots of `d2` relative to those of `d1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub diagram: LabeledDiagram,
    /// Exponent of `qc`: `Σ deg(b1) deg(b2)` over pairs with `b2` strictly left of `b1`.
    pub crossing: u32,
    /// Exponent of `qs`: `Σ deg(b1) deg(b2)` over superposed pairs.
    pub superposition: u32,
}

/// All placements: order-preserving merges of the black spot sequences in
/// which a spot of `d2` may be superposed on a spot of `d1`. White spots of
/// `d2` follow those of `d1`.
pub fn placements(d1: &LabeledDiagram, d2: &LabeledDiagram) -> Vec<Placement> {
    let q = d1.cols + d2.cols;
    let r1: Vec<Vec<u32>> = d1.matrix.iter().map(|r| {
        let mut row = r.clone();
        row.resize(q, 0);
        row
    }).collect();
    let r2: Vec<Vec<u32>> = d2.matrix.iter().map(|r| {
        let mut row = vec![0; d1.cols];
        row.extend_from_slice(r);
        row
    }).collect();
    let deg1 = d1.row_sums();
    let deg2 = d2.row_sums();
    let mut suffix1 = vec![0u32; deg1.len() + 1];
    for i in (0..deg1.len()).rev() {
        suffix1[i] = suffix1[i + 1] + deg1[i];
    }
    let mut out = Vec::new();
    let mut rows = Vec::new();
    place(&r1, &r2, &deg2, &deg1, &suffix1, 0, 0, 0, 0, &mut rows, q, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn place(
    r1: &[Vec<u32>],
    r2: &[Vec<u32>],
    deg2: &[u32],
    deg1: &[u32],
    suffix1: &[u32],
    i: usize,
    j: usize,
    cross: u32,
    sup: u32,
    rows: &mut Vec<Vec<u32>>,
    q: usize,
    out: &mut Vec<Placement>,
) {
    if i == r1.len() && j == r2.len() {
        let n = rows.len();
        out.push(Placement {
            diagram: LabeledDiagram { rows: n, cols: if n == 0 { 0 } else { q }, matrix: rows.clone() },
            crossing: cross,
            superposition: sup,
        });
        return;
    }
    if i < r1.len() {
        rows.push(r1[i].clone());
        place(r1, r2, deg2, deg1, suffix1, i + 1, j, cross, sup, rows, q, out);
        rows.pop();
    }
    if j < r2.len() {
        rows.push(r2[j].clone());
        place(r1, r2, deg2, deg1, suffix1, i, j + 1, cross + deg2[j] * suffix1[i], sup, rows, q, out);
        rows.pop();
    }
    if i < r1.len() && j < r2.len() {
        rows.push(r1[i].iter().zip(&r2[j]).map(|(a, b)| a + b).collect());
        place(r1, r2, deg2, deg1, suffix1, i + 1, j + 1, cross + deg2[j] * suffix1[i + 1], sup + deg1[i] * deg2[j], rows, q, out);
        rows.pop();
    }
}

/// Deformed product `[d1|d2]` with weights `qc^crossing qs^superposition`.
pub fn product<C: Coeff>(d1: &LabeledDiagram, d2: &LabeledDiagram, params: &DeformParams<C>) -> DiagramSum<C> {
    let mut out = DiagramSum::new();
    for p in placements(d1, d2) {
        let w = params.qc.pow(p.crossing).mul(&params.qs.pow(p.superposition));
        add_to(&mut out, p.diagram, w);
    }
    out
}

/// Bilinear extension of [`product`] to formal sums.
pub fn product_sums<C: Coeff>(a: &DiagramSum<C>, b: &DiagramSum<C>, params: &DeformParams<C>) -> DiagramSum<C> {
    let mut out = DiagramSum::new();
    for (d1, c1) in a {
        for (d2, c2) in b {
            let k = c1.mul(c2);
            for (d, c) in product(d1, d2, params) {
                add_to(&mut out, d, c.mul(&k));
            }
        }
    }
    out
}

pub fn single<C: Coeff>(d: &LabeledDiagram) -> DiagramSum<C> {
    DiagramSum::from([(d.clone(), C::one())])
}

/// `Δ_BS(d) = Σ_{I+J} d[I] ⊗ d[J]` over the `2^p` splittings of the black
/// spots, with multiplicities.
pub fn coproduct_bs(d: &LabeledDiagram) -> BTreeMap<(LabeledDiagram, LabeledDiagram), u64> {
    let p = d.rows;
    let mut out = BTreeMap::new();
    for mask in 0u64..(1 << p) {
        let (i, j): (Vec<usize>, Vec<usize>) = (0..p).partition(|&k| mask >> k & 1 == 1);
        *out.entry((d.restrict(&i), d.restrict(&j))).or_insert(0) += 1;
    }
    out
}

/// [`coproduct_bs`] on unlabelled diagrams.
pub fn coproduct_bs_diagram(d: &Diagram) -> BTreeMap<(Diagram, Diagram), u64> {
    let mut out = BTreeMap::new();
    for ((a, b), c) in coproduct_bs(&d.0) {
        *out.entry((Diagram(canonicalize(&a)), Diagram(canonicalize(&b)))).or_insert(0) += c;
    }
    out
}

/// Linear image of a formal sum under `d -> x_{I(d,1)}...x_{I(d,p)}`.
pub fn word_image_sum<C: Coeff>(sum: &DiagramSum<C>, target: Alphabet) -> Result<BTreeMap<Word, C>> {
    let mut out: BTreeMap<Word, C> = BTreeMap::new();
    for (d, c) in sum {
        let w = d.word_image(target)?;
        let v = out.entry(w.clone()).or_insert_with(C::zero);
        *v = v.add(c);
        if v.is_zero() {
            out.remove(&w);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HadamardDegree {
    pub n: usize,
    pub componentwise: Q,
    pub substitution: Q,
    pub diagrammatic: Q,
}

impl HadamardDegree {
    pub fn agrees(&self) -> bool {
        self.componentwise == self.substitution && self.componentwise == self.diagrammatic
    }
}

/// Coefficients of `z^n/n!` in `H(F, G)` for `F = exp(Σ L_n z^n/n!)` and
/// `G = exp(Σ V_n z^n/n!)`, computed componentwise, by the substitution
/// formula, and as `Σ_{|d|=n} mult(d) L^{α(d)} V^{β(d)}`.
pub fn hadamard_expansion_check(l: &[Q], v: &[Q], d: usize) -> Result<Vec<HadamardDegree>> {
    let egf = |x: &[Q]| {
        let mut c = vec![Q::zero()];
        c.extend((1..=d).map(|i| x.get(i - 1).cloned().unwrap_or_else(Q::zero)));
        EgfSeries::new(c).exp()
    };
    let f = egf(l)?;
    let g = egf(v)?;
    let comp = hadamard_exp(&f, &g, HadamardMethod::Componentwise);
    let subst = hadamard_exp(&f, &g, HadamardMethod::Substitution);
    let mut out = Vec::new();
    for n in 0..=d {
        let mut diag = Q::zero();
        for dg in diagrams_of_size(n)? {
            let mut mon = Q::from_integer(multiplicity_formula(&dg));
            for (i, &e) in dg.0.alpha().iter().enumerate() {
                mon *= Coeff::pow(&l.get(i).cloned().unwrap_or_else(Q::zero), e as u32);
            }
            for (i, &e) in dg.0.beta().iter().enumerate() {
                mon *= Coeff::pow(&v.get(i).cloned().unwrap_or_else(Q::zero), e as u32);
            }
            diag += mon;
        }
        out.push(HadamardDegree { n, componentwise: comp.get(n), substitution: subst.get(n), diagrammatic: diag });
    }
    Ok(out)
}

/// Degree-`n` coefficient of `H(F, G)` via Bell polynomials, `B_n(L) B_n(V)`.
pub fn hadamard_bell(l: &[Q], v: &[Q], n: usize) -> Result<Q> {
    Ok(bell_polynomial(n, None, l)? * bell_polynomial(n, None, v)?)
}

#[derive(Serialize, Deserialize)]
struct DiagramFile {
    rows: usize,
    cols: usize,
    matrix: Vec<Vec<u32>>,
    labeled: bool,
}

/// Parses the JSON diagram format; unlabelled inputs are canonicalized.
pub fn from_json(text: &str) -> Result<(LabeledDiagram, bool)> {
    let f: DiagramFile = serde_json::from_str(text)?;
    let d = LabeledDiagram::new(f.matrix)?;
    if d.rows != f.rows || d.cols != f.cols {
        return Err(Error::InvalidDiagram(format!(
            "declared {}x{} but matrix is {}x{}",
            f.rows, f.cols, d.rows, d.cols
        )));
    }
    if f.labeled {
        Ok((d, true))
    } else {
        Ok((d.canonical()?.0, false))
    }
}

pub fn to_json(d: &LabeledDiagram, labeled: bool) -> String {
    serde_json::to_string(&DiagramFile { rows: d.rows, cols: d.cols, matrix: d.matrix.clone(), labeled })
        .expect("serializable")
}
