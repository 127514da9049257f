//! Exact width (via bipartite matching) and height (longest chain) of small
//! classes, against the closed-form height and the width lower bounds.
//!
//!     cargo run --example exact_width_height

use bruhat::class_enum::class_members;
use bruhat::poset_metrics::{exact_height, exact_width, height_an2, HEIGHT_CAP, WIDTH_CAP};
use bruhat::Margins;

fn main() -> bruhat::Result<()> {
    for n in 3..=5 {
        let members = class_members(&Margins::regular(n, 2))?;
        let w = exact_width(&members, WIDTH_CAP)?;
        let h = exact_height(&members, HEIGHT_CAP)?;
        println!(
            "A({n},2): {} members, width {}, height {} (formula {})",
            members.len(),
            w.width,
            h.height,
            height_an2(n as u64)
        );
        let nus: Vec<u64> = h.chain.iter().map(|&i| members[i].inversions()).collect();
        println!("  longest chain inversion counts: {nus:?}");
    }
    Ok(())
}
