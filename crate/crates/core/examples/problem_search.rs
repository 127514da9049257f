//! Looks for comparable pairs with equal inversion counts.
//!
//!     cargo run --example problem_search

use bruhat::poset_metrics::nu_problem_search;
use bruhat::Margins;

fn main() -> bruhat::Result<()> {
    let classes = [
        Margins::new(vec![1, 1, 2], vec![2, 1, 1]),
        Margins::regular(4, 2),
        Margins::regular(5, 2),
        Margins::new(vec![2, 2, 1, 1], vec![2, 2, 1, 1]),
        Margins::new(vec![3, 2, 2, 1], vec![2, 2, 2, 2]),
    ];
    for m in &classes {
        match nu_problem_search(m, 5_000_000)? {
            None => println!("{m}: none"),
            Some(w) => println!(
                "{m}: nu={} {} <_B {}",
                w.nu,
                w.lower.row_strings().join("/"),
                w.upper.row_strings().join("/")
            ),
        }
    }
    Ok(())
}
