//! Block products in A(2k,k): the half-regular family and the larger one
//! for k divisible by 4, with random access into the member index.
//!
//!     cargo run --example product_construction

use bruhat::constructions::{half_regular_product, remark_improved_product};
use bruhat::order::{verify_antichain, verify_sampled_by_index};
use bruhat::{Error, VerifyMode};

fn main() -> bruhat::Result<()> {
    for k in 2..=4 {
        let p = half_regular_product(k)?;
        let members = p.materialize(10_000)?;
        let cert = verify_antichain(&members, VerifyMode::Exhaustive)?;
        println!(
            "half-regular k={k}: {} members in {}, {:?}",
            p.len(),
            p.margins(),
            cert.status
        );
    }

    let p = remark_improved_product(4)?;
    let cert = verify_antichain(&p.materialize(1000)?, VerifyMode::Exhaustive)?;
    println!("larger product k=4: {} members, {:?}", p.len(), cert.status);

    match remark_improved_product(8) {
        Err(e @ Error::Hypothesis(_)) => println!("k=8 refused: {e}"),
        other => println!("k=8: unexpected {:?}", other.map(|p| p.len().clone())),
    }

    let p = remark_improved_product(12)?;
    println!("k=12: {} members", p.len());
    let x = p.member_u128(123_456_789)?;
    println!(
        "member 123456789 has {} inversions, margins ok: {}",
        x.inversions(),
        x.margins() == *p.margins()
    );
    let cert = verify_sampled_by_index(p.len_u128().unwrap_or(u128::MAX), 200, 0, |i| {
        p.member_u128(i)
    })?;
    println!("200 sampled pairs: {:?}", cert.status);
    Ok(())
}
