use std::io::Write;

use nczeta::acceptance::run_all;
use nczeta::cache::ZetaCache;

#[test]
fn acceptance_criteria() {
    let cache = ZetaCache::in_memory();
    let results = run_all(&cache);
    // Written to the raw handle so the report shows without --nocapture.
    let mut out = std::io::stdout().lock();
    for r in &results {
        writeln!(out, "{r}").unwrap();
    }
    out.flush().unwrap();
    let failed: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
