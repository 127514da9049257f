//! The even and odd antichains in A(n,2), verified pair by pair.
//!
//!     cargo run --example constructions -- 8

use std::time::Instant;

use bruhat::constructions::{even_antichain, odd_antichain};
use bruhat::order::verify_antichain;
use bruhat::VerifyMode;

fn main() -> bruhat::Result<()> {
    let max: usize = std::env::args()
        .nth(1)
        .map_or(8, |s| s.parse().expect("n must be an integer"));
    for n in 3..=max {
        let built = if n % 2 == 0 {
            even_antichain(n)?
        } else {
            odd_antichain(n)?
        };
        let start = Instant::now();
        let cert = verify_antichain(&built.members, VerifyMode::Exhaustive)?;
        println!(
            "n={n}: {} members (predicted {}), nu={:?}, {:?} over {} pairs in {:.2?}; audit: {:?}",
            built.len(),
            built.predicted_size,
            built.predicted_nu,
            cert.status,
            cert.checked_pairs,
            start.elapsed(),
            built.audit()
        );
    }
    Ok(())
}
