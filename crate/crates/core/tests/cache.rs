use std::fs;

use nczeta::cache::{ZetaCache, ZetaCacheEntry};
use nczeta::polylog::{zeta_value_with, Estimate};
use nczeta::{Real, Word};

#[test]
fn empty_file_loads_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.jsonl");
    fs::write(&path, "").unwrap();
    let c = ZetaCache::open(&path).unwrap();
    assert!(c.is_empty());
    assert_eq!(c.warnings(), 0);
}

#[test]
fn missing_file_is_created() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("new.jsonl");
    let c = ZetaCache::open(&path).unwrap();
    assert!(path.exists());
    assert_eq!(c.path(), Some(path.as_path()));
}

#[test]
fn values_reload_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.jsonl");
    let words = [Word::y(&[2]), Word::y(&[3, 1]), Word::y(&[2, 1, 1])];
    let first: Vec<Estimate> = {
        let c = ZetaCache::open(&path).unwrap();
        words.iter().map(|w| zeta_value_with(w, 1e-12, 128, &c).unwrap()).collect()
    };
    let c = ZetaCache::open(&path).unwrap();
    assert_eq!(c.len(), words.len());
    for (w, e) in words.iter().zip(&first) {
        let got = c.get(w, 1e-12, 128).expect("cached");
        assert_eq!(got.value.to_bits(), e.value.to_bits());
        assert_eq!(got.value, e.value);
        assert_eq!(got.bound, e.bound);
        assert_eq!(got.terms, e.terms);
    }
    // A tighter request misses.
    assert!(c.get(&words[0], 1e-30, 128).is_none());
    assert!(c.get(&words[0], 1e-12, 4096).is_none());
}

#[test]
fn corrupt_lines_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.jsonl");
    let e = Estimate { value: Real::from_f64(1.5, 128), bound: 1e-9, terms: 10 };
    let good = serde_json::to_string(&ZetaCacheEntry::new(&Word::y(&[2]), &e)).unwrap();
    fs::write(&path, format!("{good}\n{{\"word\": 3\n\n")).unwrap();
    let c = ZetaCache::open(&path).unwrap();
    assert_eq!(c.warnings(), 1);
    assert_eq!(c.len(), 1);
    assert_eq!(c.get(&Word::y(&[2]), 1e-9, 128).unwrap().value.to_f64(), 1.5);
}

#[test]
fn better_entry_wins() {
    let c = ZetaCache::in_memory();
    let w = Word::y(&[2]);
    let coarse = Estimate { value: Real::from_f64(1.6, 128), bound: 1e-2, terms: 1 };
    let fine = Estimate { value: Real::from_f64(1.64, 128), bound: 1e-4, terms: 2 };
    c.insert(&w, &fine).unwrap();
    c.insert(&w, &coarse).unwrap();
    assert_eq!(c.entry(&w).unwrap().n_used, 2);
}

#[test]
fn bits_round_trip() {
    for x in [0.0, 1.0, -2.5, 1e-300, std::f64::consts::PI] {
        let r = Real::from_f64(x, 192);
        let back = Real::from_bits(&r.to_bits()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_f64(), x);
    }
    assert!(Real::from_bits("garbage").is_err());
}

#[test]
fn shared_between_threads() {
    let c = ZetaCache::in_memory();
    std::thread::scope(|s| {
        for k in 2..6u32 {
            let c = &c;
            s.spawn(move || zeta_value_with(&Word::y(&[k]), 1e-10, 128, c).unwrap());
        }
    });
    assert_eq!(c.len(), 4);
}
