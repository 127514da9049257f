//! Inversion histograms of A(n,2) and the largest level sets.
//!
//!     cargo run --example inversion_histogram -- 6 > a62.csv
//!
//! With an argument, prints the `nu,count` CSV for that order. Without one,
//! recomputes the largest level for n = 3..=7 against the published values.

use std::time::Instant;

use bruhat::poset_metrics::{inversion_histogram, reproduce_table1, HistogramOptions};

fn main() -> bruhat::Result<()> {
    let options = HistogramOptions::default();
    if let Some(n) = std::env::args().nth(1) {
        let n: usize = n.parse().expect("order must be an integer");
        let report = inversion_histogram(n, options)?;
        print!("{}", report.to_csv());
        eprintln!(
            "|A({n},2)| = {}, largest level |nu^-1({})| = {}",
            report.total, report.max_bucket.0, report.max_bucket.1
        );
        return Ok(());
    }

    let start = Instant::now();
    let table = reproduce_table1(&[3, 4, 5, 6, 7], options)?;
    for row in &table.rows {
        println!(
            "n={}  max level {:>8} at nu={:?}  published {:>8}  {}",
            row.n,
            row.computed_max,
            row.argmax,
            row.published,
            if row.matches { "ok" } else { "DIFFERS" }
        );
    }
    if let Some(n6) = &table.n6 {
        println!(
            "n=6: computed {} (|nu^-1(27)| = {}); table says {}, text says {} -> matches {}",
            n6.computed_max, n6.level_27, n6.table_value, n6.text_value, n6.matches
        );
    }
    println!("elapsed {:.2?}", start.elapsed());
    Ok(())
}
