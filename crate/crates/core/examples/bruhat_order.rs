//! Comparing matrices in the Bruhat order, and the interchange (secondary)
//! order it contains.
//!
//!     cargo run --example bruhat_order

use bruhat::order::{bruhat_compare, interchange_successors, secondary_leq};
use bruhat::BinaryMatrix;

fn main() -> bruhat::Result<()> {
    let i3 = BinaryMatrix::identity(3)?;
    let l3 = BinaryMatrix::anti_identity(3)?;
    println!("I3 vs L3: {:?}", bruhat_compare(&i3, &l3)?);
    println!(
        "inversions: I3 = {}, L3 = {}",
        i3.inversions(),
        l3.inversions()
    );

    let a = BinaryMatrix::from_strs(&["1100", "1010", "0011", "0101"])?;
    println!("\nA =\n{a}");
    println!("Sigma(A) = {:?}", a.sigma_table().values());
    println!(
        "nu(A) = {}, nu(conjugate) = {}",
        a.inversions(),
        a.conjugate().inversions()
    );
    let (sum, expected) = a.nu_conjugate_identity()?;
    println!("nu(A) + nu(A~) = {sum} (margin formula gives {expected})");

    println!("\none interchange above A:");
    for c in interchange_successors(&a) {
        println!(
            "{}  nu={}  relation={:?}  secondary={}",
            c.row_strings().join("/"),
            c.inversions(),
            bruhat_compare(&a, &c)?,
            secondary_leq(&a, &c)?
        );
    }
    Ok(())
}
