//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons
//! throughout. Runs without the libtest harness so the report is the output.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bruhat::class_enum::{class_members, count_class, enumerate_class, factorial, oneil_estimate};
use bruhat::constructions::{
    complement_antichain, even_antichain, half_regular_antichain, half_regular_product,
    odd_antichain, product_antichain, remark_improved_antichain, remark_improved_product,
    ProductOptions,
};
use bruhat::matrix::choose2;
use bruhat::order::{bruhat_compare, interchange_successors, secondary_leq, verify_antichain};
use bruhat::poset_metrics::{
    exact_height, exact_width, height_an2, inversion_histogram, nu_level, resolve_n6,
    HistogramOptions, HEIGHT_CAP, WIDTH_CAP,
};
use bruhat::{BinaryMatrix, Error, Margins, OrderRelation, VerifyMode};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: bruhat::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn options(shards: usize) -> HistogramOptions {
    HistogramOptions {
        shards,
        budget: 5_000_000,
    }
}

fn shards() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed <= limit, || {
        format!("{what} took {elapsed:.2?}, limit {limit:?}")
    })
}

fn c1_table1() -> Outcome {
    let expected = [(3, 2u128), (4, 13), (5, 161), (7, 142468)];
    let mut notes = Vec::new();
    for (n, max) in expected {
        let start = Instant::now();
        let h = lib(inversion_histogram(n, options(shards())))?;
        let elapsed = start.elapsed();
        ensure(h.max_bucket.1 == max, || {
            format!("n={n}: max level {} != {max}", h.max_bucket.1)
        })?;
        if n == 7 {
            within(elapsed, Duration::from_secs(120), "n=7 histogram")?;
        }
        notes.push(format!("n={n}:{max}"));
        if n == 7 {
            notes.push(format!("n=7 in {elapsed:.2?}"));
        }
    }
    Ok(notes.join(" "))
}

fn c2_n6() -> Outcome {
    let h = lib(inversion_histogram(6, options(shards())))?;
    let r = resolve_n6(&h);
    ensure(h.argmax() == vec![27], || {
        format!("argmax {:?}, expected [27]", h.argmax())
    })?;
    ensure(h.count(27) == h.max_bucket.1, || {
        "level 27 is not the maximum".into()
    })?;
    ensure(r.matches == "table" || r.matches == "text", || {
        format!(
            "computed {} matches {} of 4086/4108",
            r.computed_max, r.matches
        )
    })?;
    Ok(format!(
        "max = |nu^-1(27)| = {}, matches the {} value ({} table / {} text)",
        r.computed_max, r.matches, r.table_value, r.text_value
    ))
}

fn c3_levels() -> Outcome {
    let a3 = Margins::regular(3, 2);
    let a4 = Margins::regular(4, 2);
    let got = [
        lib(nu_level(&a3, 3))?.len(),
        lib(nu_level(&a3, 6))?.len(),
        lib(nu_level(&a4, 8))?.len(),
        lib(nu_level(&a4, 12))?.len(),
    ];
    ensure(got == [2, 2, 13, 13], || format!("level sizes {got:?}"))?;
    for level in [lib(nu_level(&a4, 8))?, lib(nu_level(&a4, 12))?] {
        ensure(
            lib(verify_antichain(&level, VerifyMode::Exhaustive))?.is_verified(),
            || "a level set of A(4,2) is not an antichain".into(),
        )?;
    }
    Ok(format!("levels {got:?}"))
}

fn c4_widths() -> Outcome {
    let mut notes = Vec::new();
    for (n, w) in [(3, 2), (4, 13)] {
        let members = lib(class_members(&Margins::regular(n, 2)))?;
        let r = lib(exact_width(&members, WIDTH_CAP))?;
        ensure(r.width == w, || format!("w({n},2) = {} != {w}", r.width))?;
        let witness: Vec<BinaryMatrix> = r.antichain.iter().map(|&i| members[i].clone()).collect();
        ensure(witness.len() == w, || {
            format!("witness has {} members", witness.len())
        })?;
        ensure(
            lib(verify_antichain(&witness, VerifyMode::Exhaustive))?.is_verified(),
            || format!("w({n},2) witness is not an antichain"),
        )?;
        notes.push(format!("w({n},2)={w}"));
    }
    Ok(notes.join(" ") + ", witnesses verified")
}

fn c5_heights() -> Outcome {
    let mut notes = Vec::new();
    for (n, h) in [(4usize, 17usize), (5, 30)] {
        let start = Instant::now();
        let members = lib(class_members(&Margins::regular(n, 2)))?;
        let r = lib(exact_height(&members, HEIGHT_CAP))?;
        let elapsed = start.elapsed();
        ensure(r.height == h, || format!("h({n},2) = {} != {h}", r.height))?;
        ensure(height_an2(n as u64) == h as u64, || {
            format!("formula gives {}", height_an2(n as u64))
        })?;
        ensure(r.equal_nu_comparable == 0, || {
            "comparable pair with equal nu".into()
        })?;
        for w in r.chain.windows(2) {
            ensure(
                lib(bruhat_compare(&members[w[0]], &members[w[1]]))? == OrderRelation::Less,
                || "witness chain is not increasing".into(),
            )?;
        }
        if n == 5 {
            within(elapsed, Duration::from_secs(60), "n=5 height")?;
        }
        notes.push(format!("h({n},2)={h} in {elapsed:.2?}"));
    }
    Ok(notes.join(" "))
}

fn c6_conjugate_identity() -> Outcome {
    let mut checked = 0;
    for n in [4usize, 5] {
        let target = lib(choose2(2 * n as u64))? - 2 * n as u64;
        let mut bad = None;
        lib(enumerate_class(&Margins::regular(n, 2), |a| {
            checked += 1;
            match a.nu_conjugate_identity() {
                Ok((sum, expected)) if sum == expected && expected == target => {}
                _ => {
                    bad.get_or_insert_with(|| a.clone());
                }
            }
        }))?;
        if let Some(a) = bad {
            return Err(format!("identity fails for {}", a.row_strings().join("/")));
        }
    }
    ensure(checked == 90 + 2040, || {
        format!("checked {checked} matrices")
    })?;
    Ok(format!("{checked} matrices (90 + 2040)"))
}

fn c7_even() -> Outcome {
    let mut notes = Vec::new();
    for (n, size, nu) in [(4usize, 6usize, 10u64), (6, 90, 27), (8, 2520, 52)] {
        let c = lib(even_antichain(n))?;
        ensure(c.len() == size, || format!("n={n}: {} members", c.len()))?;
        ensure(
            c.members
                .iter()
                .all(|a| a.is_self_conjugate() && a.inversions() == nu),
            || format!("n={n}: member not self-conjugate with nu={nu}"),
        )?;
        ensure(c.audit().is_empty(), || {
            format!("n={n}: audit {:?}", c.audit())
        })?;
        let start = Instant::now();
        let cert = lib(verify_antichain(&c.members, VerifyMode::Exhaustive))?;
        let elapsed = start.elapsed();
        ensure(cert.is_verified(), || {
            format!("n={n}: refuted at {:?}", cert.witness)
        })?;
        let pairs = (size * (size - 1) / 2) as u64;
        ensure(cert.checked_pairs == pairs, || {
            format!("n={n}: checked {}", cert.checked_pairs)
        })?;
        if n == 8 {
            within(elapsed, Duration::from_secs(60), "n=8 verification")?;
            notes.push(format!("n=8 {pairs} pairs in {elapsed:.2?}"));
        }
    }
    Ok(format!("sizes 6/90/2520, nu 10/27/52; {}", notes.join("")))
}

fn c8_odd() -> Outcome {
    for (n, size, nu) in [(5usize, 12usize, 14u64), (7, 180, 33)] {
        let c = lib(odd_antichain(n))?;
        ensure(c.len() == size, || format!("n={n}: {} members", c.len()))?;
        ensure(c.members.iter().all(|a| a.inversions() == nu), || {
            format!("n={n}: nu != {nu}")
        })?;
        ensure(c.audit().is_empty(), || {
            format!("n={n}: audit {:?}", c.audit())
        })?;
        let cert = lib(verify_antichain(&c.members, VerifyMode::Exhaustive))?;
        ensure(cert.is_verified(), || {
            format!("n={n}: refuted at {:?}", cert.witness)
        })?;
    }
    Ok("sizes 12/180, nu 14/33, verified".into())
}

fn c9_self_conjugate() -> Outcome {
    let mut notes = Vec::new();
    for n in 3..=7usize {
        let mut found = BTreeSet::new();
        lib(enumerate_class(&Margins::regular(n, 2), |a| {
            if a.is_self_conjugate() {
                found.insert(a.clone());
            }
        }))?;
        if n % 2 == 0 {
            let expected: BTreeSet<BinaryMatrix> =
                lib(even_antichain(n))?.members.into_iter().collect();
            ensure(found == expected, || {
                format!(
                    "n={n}: {} self-conjugate, construction has {}",
                    found.len(),
                    expected.len()
                )
            })?;
        } else {
            ensure(found.is_empty(), || {
                format!("n={n}: {} self-conjugate matrices", found.len())
            })?;
        }
        notes.push(format!("n={n}:{}", found.len()));
    }
    Ok(notes.join(" "))
}

fn c10_half_regular() -> Outcome {
    for (k, size) in [(3usize, 16usize), (4, 1296)] {
        let c = lib(half_regular_antichain(k))?;
        ensure(c.len() == size, || format!("k={k}: {} members", c.len()))?;
        ensure(c.margins == Margins::regular(2 * k, k as u32), || {
            format!("k={k}: class {}", c.margins)
        })?;
        ensure(c.members.iter().all(|a| a.margins() == c.margins), || {
            format!("k={k}: margins differ")
        })?;
        ensure(c.audit().is_empty(), || {
            format!("k={k}: audit {:?}", c.audit())
        })?;
        let distinct: BTreeSet<&BinaryMatrix> = c.members.iter().collect();
        ensure(distinct.len() == size, || {
            format!("k={k}: duplicate members")
        })?;
        let cert = lib(verify_antichain(&c.members, VerifyMode::Exhaustive))?;
        ensure(cert.is_verified(), || {
            format!("k={k}: refuted at {:?}", cert.witness)
        })?;
    }
    Ok("16 in A(6,3), 1296 in A(8,4), verified".into())
}

fn c11_hypothesis() -> Outcome {
    let d1 = lib(nu_level(&Margins::regular(4, 2), 8))?;
    let d2 = lib(even_antichain(4))?.members;
    let d3 = complement_antichain(&d2);
    match product_antichain(&d1, &d2, &d3, ProductOptions::default()) {
        Err(Error::Hypothesis(8)) => {}
        other => {
            return Err(format!(
                "|D1|=13 product: {:?}",
                other.map(|p| p.len().clone())
            ))
        }
    }
    // the override only applies to a single pattern
    match product_antichain(
        &d1,
        &d2,
        &d3,
        ProductOptions {
            allow_degenerate_case1: true,
        },
    ) {
        Err(Error::Hypothesis(8)) => {}
        other => {
            return Err(format!(
                "override accepted |D1|=13: {:?}",
                other.map(|p| p.len().clone())
            ))
        }
    }
    match remark_improved_antichain(8) {
        Err(Error::Hypothesis(8)) => {}
        other => return Err(format!("k=8: {:?}", other.map(|c| c.len()))),
    }
    let c = lib(remark_improved_antichain(4))?;
    ensure(c.len() == 13, || format!("k=4: {} members", c.len()))?;
    ensure(c.audit().is_empty(), || {
        format!("k=4: audit {:?}", c.audit())
    })?;
    let cert = lib(verify_antichain(&c.members, VerifyMode::Exhaustive))?;
    ensure(cert.is_verified(), || "k=4 refuted".into())?;
    Ok("u'=u''=8 refused for |D1|=13 and k=8; k=4 gives 13, verified".into())
}

fn c12_product_identities() -> Outcome {
    let p = lib(half_regular_product(3))?;
    let len = p.len_u128().ok_or("product too large")?;
    let dims = p.margins().dims();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for probe in 0..1000 {
        let xi = rng.gen_range(0..len);
        let x = lib(p.member_u128(xi))?;
        let (pattern, _) = lib(p.decompose(&xi.into()))?;
        if let Some((k, l)) = p.check_corner_identity(&x, pattern) {
            return Err(format!(
                "corner identity fails: probe {probe}, member {xi}, block ({k},{l})"
            ));
        }
        let yi = rng.gen_range(0..len);
        let alpha = rng.gen_range(0..dims.0);
        let beta = rng.gen_range(0..dims.1);
        ensure(
            lib(p.check_block_difference(&xi.into(), &yi.into(), alpha, beta))?,
            || format!("difference identity fails: members {xi},{yi} at ({alpha},{beta})"),
        )?;
    }
    // The k=3 product has one pattern; the 13-pattern product also exercises
    // the corner identity across different patterns.
    let q = lib(remark_improved_product(4))?;
    let qlen = q.len_u128().ok_or("product too large")?;
    for _ in 0..1000 {
        let xi = rng.gen_range(0..qlen);
        let (pattern, _) = lib(q.decompose(&xi.into()))?;
        if let Some((k, l)) = q.check_corner_identity(&lib(q.member_u128(xi))?, pattern) {
            return Err(format!(
                "corner identity fails on the 13-pattern product, block ({k},{l})"
            ));
        }
    }
    Ok(
        "1000 corner + 1000 difference probes on k=3, 1000 corner probes on the 13-pattern product"
            .into(),
    )
}

fn c13_order_properties() -> Outcome {
    let mut steps = 0u64;
    for n in [4usize, 5] {
        let members = lib(class_members(&Margins::regular(n, 2)))?;
        for a in &members {
            for c in interchange_successors(a) {
                steps += 1;
                ensure(c.inversions() > a.inversions(), || {
                    "interchange did not raise nu".into()
                })?;
                ensure(lib(bruhat_compare(a, &c))? == OrderRelation::Less, || {
                    "interchange did not move up".into()
                })?;
            }
        }
    }
    let a42 = lib(class_members(&Margins::regular(4, 2)))?;
    let mut comparable = 0u64;
    let mut ordered = 0u64;
    for a in &a42 {
        for c in &a42 {
            if a == c {
                continue;
            }
            ordered += 1;
            let rel = lib(bruhat_compare(a, c))?;
            if rel.is_comparable() {
                comparable += 1;
                let crel = lib(bruhat_compare(&a.complement(), &c.complement()))?;
                ensure(crel == rel.reverse(), || {
                    "complement does not reverse the order".into()
                })?;
            }
            let secondary = lib(secondary_leq(a, c))?;
            ensure(secondary == (rel == OrderRelation::Less), || {
                format!(
                    "secondary {secondary} vs Bruhat {rel:?} for {} / {}",
                    a.row_strings().join(""),
                    c.row_strings().join("")
                )
            })?;
        }
    }
    ensure(ordered == 8010, || format!("{ordered} ordered pairs"))?;
    Ok(format!(
        "{steps} interchanges; {comparable} comparable ordered pairs reversed; secondary = Bruhat on {ordered} pairs"
    ))
}

fn c14_oneil() -> Outcome {
    let mut ratios = Vec::new();
    for n in 4..=7u64 {
        let exact = lib(count_class(&Margins::regular(n as usize, 2)))?.0 as f64;
        let ratio = lib(oneil_estimate(n, 2))? / exact;
        ensure((0.9..=1.1).contains(&ratio), || {
            format!("n={n}: ratio {ratio}")
        })?;
        ratios.push(format!("{ratio:.4}"));
    }
    for n in 1..=10u64 {
        let est = lib(oneil_estimate(n, 1))?;
        let fact: f64 = factorial(n).to_string().parse().unwrap();
        ensure(est == fact, || format!("k=1, n={n}: {est} != {fact}"))?;
    }
    Ok(format!(
        "ratios {} ; k=1 equals n! for n<=10",
        ratios.join(" ")
    ))
}

fn c15_determinism() -> Outcome {
    let csvs: Vec<String> = [1, 4, 16]
        .iter()
        .map(|&s| lib(inversion_histogram(6, options(s))).map(|h| h.to_csv()))
        .collect::<Result<_, _>>()?;
    ensure(csvs.iter().all(|c| c == &csvs[0]), || {
        "CSV differs between shard counts".into()
    })?;
    Ok(format!(
        "{} bytes identical for 1/4/16 shards",
        csvs[0].len()
    ))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 15] = [
        (1, "largest inversion levels of A(n,2)", c1_table1),
        (2, "n=6 largest level", c2_n6),
        (3, "level-set sizes", c3_levels),
        (4, "exact widths", c4_widths),
        (5, "exact heights", c5_heights),
        (6, "conjugate inversion identity", c6_conjugate_identity),
        (7, "even construction", c7_even),
        (8, "odd construction", c8_odd),
        (9, "self-conjugate census", c9_self_conjugate),
        (10, "half-regular product", c10_half_regular),
        (11, "product hypothesis", c11_hypothesis),
        (12, "product structural identities", c12_product_identities),
        (13, "order properties", c13_order_properties),
        (14, "asymptotic estimate", c14_oneil),
        (15, "shard determinism", c15_determinism),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!(
                "criterion {id:>2}: PASS  {name}: {detail} [{:.2?}]",
                start.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 15 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
