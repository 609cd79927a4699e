//! Runs a parallel sweep through an on-disk cache and writes the CSV
//! exports next to it.
//!
//! cargo run --release --example sweep_cached -- [cache-dir]

use fixprime::analysis::sweep_with;
use fixprime::store::{export_figure2, export_table2, export_table3, Cache, CachedRuns};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = std::env::args().nth(1).unwrap_or_else(|| "fixprime-cache".into());
    let cache = Cache::new(&root);
    let family = [3, 5, 7, 11, 41, 97, 199];

    let started = std::time::Instant::now();
    let report = sweep_with(&family, 10_000, 4, &CachedRuns { cache: &cache })?;
    println!("sweep finished in {:.2?}; rerun to hit the cache", started.elapsed());
    println!("saved {}", cache.save_sweep(&report)?.display());

    for (name, csv) in [
        ("table2.csv", export_table2(&report)?),
        ("table3.csv", export_table3(&report)?),
        ("figure2.csv", export_figure2(&report)?),
    ] {
        let path = cache.root().join("reports").join(name);
        std::fs::write(&path, &csv)?;
        println!("wrote {}", path.display());
    }
    print!("{}", export_table2(&report)?);
    println!("missed by every p: {:?}", report.union_missed);
    Ok(())
}
