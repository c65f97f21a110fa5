use std::collections::{BTreeMap, BTreeSet};

use nczeta::bell::{
    bell_number, bell_polynomial, set_partitions, stirling2, type_counts, EgfSeries, HadamardMethod, SetPartition,
    hadamard_exp,
};
use nczeta::coeff::{q, qi};
use nczeta::diagram::{
    coproduct_bs, diagram_of_pair, diagrams_of_size, from_json, hadamard_bell, hadamard_expansion_check,
    multiplicity, multiplicity_formula, multiplicity_table, product, to_json, DeformParams, LabeledDiagram,
};
use nczeta::{Alphabet, Coeff, Poly, Word, Q};
use num_bigint::BigInt;
use proptest::prelude::*;

// Bell triangle.
fn bell_oracle(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

fn stirling_oracle(n: usize, k: usize) -> u64 {
    match (n, k) {
        (0, 0) => 1,
        (_, 0) | (0, _) => 0,
        _ => k as u64 * stirling_oracle(n - 1, k) + stirling_oracle(n - 1, k - 1),
    }
}

#[test]
fn bell_and_stirling_numbers() {
    for n in 0..=12 {
        assert_eq!(bell_number(n), BigInt::from(bell_oracle(n)));
        for k in 0..=n {
            assert_eq!(stirling2(n, k), BigInt::from(stirling_oracle(n, k)));
        }
    }
}

#[test]
fn partitions_enumerated_once() {
    for n in 0..=7 {
        let ps = set_partitions(n, None).unwrap();
        assert_eq!(ps.len() as u64, bell_oracle(n));
        let distinct: BTreeSet<Vec<Vec<usize>>> = ps.iter().map(|p| p.blocks().to_vec()).collect();
        assert_eq!(distinct.len(), ps.len());
        for p in &ps {
            SetPartition::new(n, p.blocks().to_vec()).unwrap();
        }
        for k in 0..=n {
            assert_eq!(set_partitions(n, Some(k)).unwrap().len() as u64, stirling_oracle(n, k));
        }
    }
}

#[test]
fn type_counts_formula() {
    // n! / ∏ (i!)^{t_i} t_i!
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    for n in 1..=7 {
        for (t, c) in type_counts(n, None).unwrap() {
            let denom: u64 = t.iter().enumerate().map(|(i, &ti)| fact(i + 1).pow(ti as u32) * fact(ti)).product();
            assert_eq!(c, fact(n) / denom, "type {t:?}");
        }
    }
}

#[test]
fn invalid_partitions_rejected() {
    assert!(SetPartition::new(3, vec![vec![1, 2]]).is_err());
    assert!(SetPartition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
    assert!(SetPartition::new(2, vec![vec![1], vec![], vec![2]]).is_err());
}

#[test]
fn bell_polynomials() {
    let ones = vec![qi(1); 8];
    for n in 0..=8 {
        assert_eq!(bell_polynomial(n, None, &ones).unwrap(), Q::from_integer(bell_number(n)));
        for k in 0..=n {
            assert_eq!(bell_polynomial(n, Some(k), &ones).unwrap(), Q::from_integer(stirling2(n, k)));
        }
    }
    let x: Vec<Poly> = (1..=3).map(|i| Poly::var(&format!("t{i}"))).collect();
    let y3 = bell_polynomial(3, None, &x).unwrap();
    let t = |i: usize| x[i - 1].clone();
    let expect = Coeff::pow(&t(1), 3).add(&t(1).mul(&t(2)).scale(&qi(3))).add(&t(3));
    assert_eq!(y3, expect);
}

#[test]
fn bell_polynomials_are_exponential_coefficients() {
    let t = vec![q(1, 2), q(-3, 1), q(2, 5), q(7, 3), q(0, 1), q(1, 1)];
    let mut c = vec![qi(0)];
    c.extend(t.iter().cloned());
    let e = EgfSeries::new(c).exp().unwrap();
    for n in 0..=6 {
        assert_eq!(e.get(n), bell_polynomial(n, None, &t).unwrap());
    }
}

#[test]
fn hadamard_methods_agree() {
    let f = EgfSeries::new(vec![qi(1), q(1, 2), qi(3), q(-4, 7), qi(2)]);
    let g = EgfSeries::new(vec![qi(2), qi(5), q(1, 3), qi(1), qi(-1)]);
    let a = hadamard_exp(&f, &g, HadamardMethod::Componentwise);
    let b = hadamard_exp(&f, &g, HadamardMethod::Substitution);
    assert_eq!(a, b);
    assert_eq!(a.get(2), q(1, 1));
}

fn ld(m: &[&[u32]]) -> LabeledDiagram {
    LabeledDiagram::new(m.iter().map(|r| r.to_vec()).collect()).unwrap()
}

#[test]
fn multiplicities_match_enumeration() {
    for n in 1..=5 {
        let table = multiplicity_table(n).unwrap();
        let diagrams = diagrams_of_size(n).unwrap();
        assert_eq!(table.len(), diagrams.len());
        let total: u64 = table.values().sum();
        assert_eq!(total, bell_oracle(n) * bell_oracle(n));
        for (d, &c) in &table {
            assert_eq!(multiplicity_formula(d), BigInt::from(c), "{}", d.labeled());
            if n <= 4 {
                assert_eq!(multiplicity(d).unwrap(), c);
            }
        }
    }
}

#[test]
fn diagram_of_pair_types() {
    let p1 = SetPartition::new(4, vec![vec![1, 2], vec![3], vec![4]]).unwrap();
    let p2 = SetPartition::new(4, vec![vec![1, 3], vec![2, 4]]).unwrap();
    let d = diagram_of_pair(&p1, &p2).unwrap();
    assert_eq!(d.labeled().edges(), 4);
    assert_eq!(d.labeled().beta(), p1.type_vector());
    assert_eq!(d.labeled().alpha(), p2.type_vector());
}

#[test]
fn hadamard_product_expansion() {
    let l = [q(1, 2), qi(-1), q(3, 4), qi(2)];
    let v = [qi(3), q(1, 5), qi(0), q(-2, 3)];
    for row in hadamard_expansion_check(&l, &v, 4).unwrap() {
        assert!(row.agrees(), "{row:?}");
        assert_eq!(row.componentwise, hadamard_bell(&l, &v, row.n).unwrap());
    }
}

#[test]
fn product_with_empty_diagram() {
    let d = ld(&[&[1, 2], &[0, 1]]);
    let p = DeformParams { qc: q(2, 3), qs: qi(5) };
    let e = LabeledDiagram::empty();
    assert_eq!(product(&d, &e, &p), BTreeMap::from([(d.clone(), qi(1))]));
    assert_eq!(product(&e, &d, &p), BTreeMap::from([(d.clone(), qi(1))]));
}

#[test]
fn undeformed_product_is_concatenation() {
    let a = ld(&[&[1, 1]]);
    let b = ld(&[&[2], &[1]]);
    let p = DeformParams { qc: qi(0), qs: qi(0) };
    assert_eq!(product(&a, &b, &p), BTreeMap::from([(a.concat(&b), qi(1))]));
}

#[test]
fn single_edge_product() {
    let e = ld(&[&[1]]);
    let p = DeformParams { qc: Poly::var("qc"), qs: Poly::var("qs") };
    let got = product(&e, &e, &p);
    assert_eq!(got.len(), 3);
    assert_eq!(got[&ld(&[&[1, 0], &[0, 1]])], Poly::constant(qi(1)));
    assert_eq!(got[&ld(&[&[0, 1], &[1, 0]])], Poly::var("qc"));
    assert_eq!(got[&ld(&[&[1, 1]])], Poly::var("qs"));
}

#[test]
fn coproduct_splits_black_spots() {
    let d = ld(&[&[1, 0, 2], &[0, 1, 1], &[3, 0, 0]]);
    let cop = coproduct_bs(&d);
    assert_eq!(cop.values().sum::<u64>(), 8);
    assert_eq!(cop[&(LabeledDiagram::empty(), d.clone())], 1);
    assert_eq!(cop[&(d.clone(), LabeledDiagram::empty())], 1);
    for (l, r) in cop.keys() {
        assert_eq!(l.edges() + r.edges(), d.edges());
    }
}

#[test]
fn image_word_is_black_degree_sequence() {
    let d = ld(&[&[1, 0, 2], &[0, 1, 1]]);
    assert_eq!(d.word_image(Alphabet::Y).unwrap(), Word::y(&[3, 2]));
    assert!(d.word_image(Alphabet::X).is_err());
}

#[test]
fn json_round_trip() {
    let d = ld(&[&[0, 2], &[1, 1]]);
    let (back, labeled) = from_json(&to_json(&d, true)).unwrap();
    assert!(labeled);
    assert_eq!(back, d);
    let (canon, labeled) = from_json(&to_json(&d, false)).unwrap();
    assert!(!labeled);
    assert_eq!(canon, *d.canonical().unwrap().labeled());
    assert!(from_json(r#"{"rows":1,"cols":2,"matrix":[[1]],"labeled":true}"#).is_err());
    assert!(from_json(r#"{"rows":1,"cols":1,"matrix":[[0]],"labeled":true}"#).is_err());
}

fn small_diagram() -> impl Strategy<Value = LabeledDiagram> {
    (1usize..4, 1usize..4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(0u32..3, c), r))
        .prop_filter_map("spots need edges", |m| LabeledDiagram::new(m).ok())
}

proptest! {
    #[test]
    fn canonical_form_is_invariant(d in small_diagram(), seed in any::<u64>()) {
        let mut rows: Vec<usize> = (0..d.rows()).collect();
        let mut cols: Vec<usize> = (0..d.cols()).collect();
        let mut s = seed;
        for v in [&mut rows, &mut cols] {
            for i in (1..v.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                v.swap(i, (s >> 33) as usize % (i + 1));
            }
        }
        let m = rows.iter().map(|&i| cols.iter().map(|&j| d.matrix()[i][j]).collect()).collect();
        let p = LabeledDiagram::new(m).unwrap();
        prop_assert_eq!(p.canonical().unwrap(), d.canonical().unwrap());
    }

    #[test]
    fn product_preserves_edges(a in small_diagram(), b in small_diagram()) {
        let p = DeformParams { qc: qi(1), qs: qi(1) };
        for d in product(&a, &b, &p).keys() {
            prop_assert_eq!(d.edges(), a.edges() + b.edges());
        }
    }
}
