//! Feasibility, counting and enumeration of a class A(R,S).
//!
//!     cargo run --example class_enumeration -- 3,2,1 2,2,1,1

use bruhat::class_enum::{count_class, enumerate_class, feasible, oneil_estimate};
use bruhat::Margins;

fn parse(list: &str) -> Vec<u32> {
    list.split(',')
        .map(|x| x.trim().parse().expect("sums must be integers"))
        .collect()
}

fn main() -> bruhat::Result<()> {
    let mut args = std::env::args().skip(1);
    let margins = match (args.next(), args.next()) {
        (Some(r), Some(s)) => Margins::new(parse(&r), parse(&s)),
        _ => Margins::new(vec![3, 2, 1], vec![2, 2, 1, 1]),
    };
    println!("{margins}");
    if !feasible(&margins) {
        println!("no matrices (Gale-Ryser fails)");
        return Ok(());
    }
    println!("|A(R,S)| = {}", count_class(&margins)?);
    let mut shown = 0;
    enumerate_class(&margins, |a| {
        if shown < 5 {
            println!("{}  nu={}", a.row_strings().join("/"), a.inversions());
            shown += 1;
        }
    })?;

    println!("\nregular classes A(n,2): exact vs estimate");
    for n in 3..=9 {
        let exact = count_class(&Margins::regular(n, 2))?;
        let est = oneil_estimate(n as u64, 2)?;
        println!(
            "n={n}: {exact:>12}  ~{est:>14.1}  ratio {:.4}",
            exact.0 as f64 / est
        );
    }
    Ok(())
}
