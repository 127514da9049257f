//! Inversion histograms, exact width and height of small Bruhat posets, and
//! closed-form width bounds.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::class_enum::{
    check_budget, class_members, count_class, enumeration_budget, par_map_shards, ClassCount,
};
use crate::constructions::{f_bound, g_bound};
use crate::error::{Error, Result};
use crate::matching::{alternating_reach, hopcroft_karp};
use crate::matrix::{BinaryMatrix, Margins};
use crate::order::{OrderRelation, SigmaBatch};

/// Largest `|nu^-1(t)|` over `A(n,2)` as published, `n = 3..=9`.
pub const TABLE1: [(usize, u128); 7] = [
    (3, 2),
    (4, 13),
    (5, 161),
    (6, 4086),
    (7, 142468),
    (8, 7033816),
    (9, 450066504),
];

/// The two published values for `n = 6`: the table's, and `|nu^-1(27)|` as
/// stated alongside the histograms.
pub const N6_PUBLISHED: [u128; 2] = [4086, 4108];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HistogramReport {
    pub n: usize,
    pub class: Margins,
    pub total: ClassCount,
    /// inversion count -> number of members
    pub buckets: BTreeMap<u64, u128>,
    /// Largest bucket, smallest inversion count on ties.
    pub max_bucket: (u64, u128),
}

impl HistogramReport {
    fn from_buckets(class: Margins, buckets: BTreeMap<u64, u128>) -> Self {
        let total = buckets.values().sum();
        let max_bucket = buckets.iter().fold(
            (0, 0),
            |best, (&t, &c)| if c > best.1 { (t, c) } else { best },
        );
        HistogramReport {
            n: class.rows.len(),
            class,
            total: ClassCount(total),
            buckets,
            max_bucket,
        }
    }

    pub fn count(&self, nu: u64) -> u128 {
        self.buckets.get(&nu).copied().unwrap_or(0)
    }

    /// All inversion counts attaining the largest bucket.
    pub fn argmax(&self) -> Vec<u64> {
        self.buckets
            .iter()
            .filter(|(_, &c)| c == self.max_bucket.1)
            .map(|(&t, _)| t)
            .collect()
    }

    /// `nu,count` rows sorted by inversion count.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("nu,count\n");
        for (t, c) in &self.buckets {
            writeln!(out, "{t},{c}").unwrap();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HistogramOptions {
    pub shards: usize,
    /// Largest class that may be enumerated.
    pub budget: u128,
}

impl Default for HistogramOptions {
    fn default() -> Self {
        HistogramOptions {
            shards: std::thread::available_parallelism().map_or(1, |n| n.get()),
            budget: enumeration_budget(),
        }
    }
}

/// Histogram of inversion counts over an arbitrary class.
pub fn class_histogram(margins: &Margins, options: HistogramOptions) -> Result<HistogramReport> {
    check_budget(margins, options.budget)?;
    let parts = par_map_shards(margins, options.shards, |plan| {
        let mut local: BTreeMap<u64, u128> = BTreeMap::new();
        plan.enumerate(|a| *local.entry(a.inversions()).or_default() += 1)?;
        Ok(local)
    })?;
    let mut buckets = BTreeMap::new();
    for part in parts {
        for (t, c) in part {
            *buckets.entry(t).or_default() += c;
        }
    }
    Ok(HistogramReport::from_buckets(margins.clone(), buckets))
}

/// Histogram of inversion counts over `A(n,2)`; the largest bucket is a
/// lower bound for the width since every level set is an antichain there.
pub fn inversion_histogram(n: usize, options: HistogramOptions) -> Result<HistogramReport> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "A(n,2) needs n >= 2, got {n}"
        )));
    }
    class_histogram(&Margins::regular(n, 2), options)
}

/// Members of the class with exactly `nu` inversions, in enumeration order.
pub fn nu_level(margins: &Margins, nu: u64) -> Result<Vec<BinaryMatrix>> {
    check_budget(margins, enumeration_budget())?;
    let mut out = Vec::new();
    crate::class_enum::enumerate_class(margins, |a| {
        if a.inversions() == nu {
            out.push(a.clone());
        }
    })?;
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub n: usize,
    pub computed_max: String,
    pub argmax: Vec<u64>,
    pub published: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Report {
    pub rows: Vec<Table1Row>,
    pub n6: Option<N6Resolution>,
}

/// Which of the two published `n = 6` figures the enumeration supports.
#[derive(Clone, Debug, Serialize)]
pub struct N6Resolution {
    pub computed_max: String,
    pub argmax: Vec<u64>,
    pub level_27: String,
    pub table_value: String,
    pub text_value: String,
    /// `"table"`, `"text"`, `"both"` or `"neither"`.
    pub matches: &'static str,
}

pub fn resolve_n6(report: &HistogramReport) -> N6Resolution {
    let computed = report.max_bucket.1;
    let matches = match (computed == N6_PUBLISHED[0], computed == N6_PUBLISHED[1]) {
        (true, true) => "both",
        (true, false) => "table",
        (false, true) => "text",
        (false, false) => "neither",
    };
    N6Resolution {
        computed_max: computed.to_string(),
        argmax: report.argmax(),
        level_27: report.count(27).to_string(),
        table_value: N6_PUBLISHED[0].to_string(),
        text_value: N6_PUBLISHED[1].to_string(),
        matches,
    }
}

/// Recomputes the published table rows for the given orders.
pub fn reproduce_table1(orders: &[usize], options: HistogramOptions) -> Result<Table1Report> {
    let mut rows = Vec::new();
    let mut n6 = None;
    for &n in orders {
        let published = TABLE1
            .iter()
            .find(|(m, _)| *m == n)
            .map(|&(_, v)| v)
            .ok_or_else(|| Error::InvalidParameter(format!("no published value for n = {n}")))?;
        let report = inversion_histogram(n, options)?;
        if n == 6 {
            n6 = Some(resolve_n6(&report));
        }
        rows.push(Table1Row {
            n,
            computed_max: report.max_bucket.1.to_string(),
            argmax: report.argmax(),
            published: published.to_string(),
            matches: report.max_bucket.1 == published,
        });
    }
    Ok(Table1Report { rows, n6 })
}

/// Default member cap for the exact width computation.
pub const WIDTH_CAP: usize = 5000;
/// Default member cap for the exact height computation.
pub const HEIGHT_CAP: usize = 3000;
/// Member cap for the exact height computation in long-running mode.
pub const HEIGHT_CAP_LONG: usize = 70_000;

#[derive(Clone, Debug)]
pub struct WidthResult {
    pub width: usize,
    /// Size of a maximum matching in the split graph of the strict order.
    pub matching: usize,
    /// Member indices of a maximum antichain, ascending.
    pub antichain: Vec<usize>,
}

fn reject_duplicates(batch: &SigmaBatch) -> Result<()> {
    let dup = (0..batch.len()).into_par_iter().find_map_any(|i| {
        (i + 1..batch.len())
            .find(|&j| batch.compare(i, j) == OrderRelation::Equal)
            .map(|j| (i, j))
    });
    match dup {
        Some((i, j)) => Err(Error::InvalidParameter(format!(
            "members {} and {} are equal",
            i + 1,
            j + 1
        ))),
        None => Ok(()),
    }
}

/// Width of the Bruhat order restricted to `members` (distinct, one class).
///
/// Dilworth: the minimum chain cover has `N - M` chains, `M` a maximum
/// matching in the bipartite split graph of the strict order. A maximum
/// antichain is read off the König cover.
pub fn exact_width(members: &[BinaryMatrix], cap: usize) -> Result<WidthResult> {
    if members.len() > cap {
        return Err(Error::ResourceLimit {
            what: "exact width members",
            limit: cap as u128,
        });
    }
    let batch = SigmaBatch::new(members)?;
    reject_duplicates(&batch)?;
    let n = batch.len();
    let adj: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && batch.compare(i, j) == OrderRelation::Less)
                .map(|j| j as u32)
                .collect()
        })
        .collect();
    let matching = hopcroft_karp(n, &adj);
    let (reach_left, reach_right) = alternating_reach(&adj, &matching);
    let antichain: Vec<usize> = (0..n)
        .filter(|&v| reach_left[v] && !reach_right[v])
        .collect();
    debug_assert_eq!(antichain.len(), n - matching.size);
    Ok(WidthResult {
        width: n - matching.size,
        matching: matching.size,
        antichain,
    })
}

#[derive(Clone, Debug)]
pub struct HeightResult {
    pub height: usize,
    /// Member indices of a longest chain, bottom to top.
    pub chain: Vec<usize>,
    /// Comparable pairs sharing an inversion count met during the sweep.
    pub equal_nu_comparable: u64,
}

/// Height of the Bruhat order restricted to `members` (distinct, one class).
///
/// Longest chain by dynamic programming over members sorted by increasing
/// inversion count (ties: decreasing total Sigma weight). Fails if a later
/// member is found below an earlier one, i.e. the sort is not topological.
/// Predecessor ties resolve to the smallest member index.
pub fn exact_height(members: &[BinaryMatrix], cap: usize) -> Result<HeightResult> {
    if members.len() > cap {
        return Err(Error::ResourceLimit {
            what: "exact height members",
            limit: cap as u128,
        });
    }
    let batch = SigmaBatch::new(members)?;
    let n = batch.len();
    let nus: Vec<u64> = members.iter().map(BinaryMatrix::inversions).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (nus[i], std::cmp::Reverse(batch.sigma(i).weight()), i));

    let mut best = vec![1usize; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut equal_nu_comparable = 0u64;
    for q in 0..n {
        let b = order[q];
        // (length, -member index) maximized, plus equal-nu and bad-order counts
        let (cand, eq, bad) = (0..q)
            .into_par_iter()
            .map(|p| {
                let a = order[p];
                match batch.compare(a, b) {
                    OrderRelation::Less => (
                        Some((best[a], std::cmp::Reverse(a))),
                        u64::from(nus[a] == nus[b]),
                        None,
                    ),
                    OrderRelation::Greater | OrderRelation::Equal => (None, 0, Some(a)),
                    OrderRelation::Incomparable => (None, 0, None),
                }
            })
            .reduce(
                || (None, 0, None),
                |x, y| (x.0.max(y.0), x.1 + y.1, x.2.or(y.2)),
            );
        if let Some(a) = bad {
            return Err(Error::InvalidParameter(format!(
                "member {} is not above member {} in the sweep order (duplicate or non-monotone inversion count)",
                b + 1,
                a + 1
            )));
        }
        equal_nu_comparable += eq;
        if let Some((len, std::cmp::Reverse(a))) = cand {
            best[b] = len + 1;
            pred[b] = Some(a);
        }
    }
    let top = (0..n)
        .max_by_key(|&i| (best[i], std::cmp::Reverse(i)))
        .unwrap_or(0);
    let mut chain = vec![top];
    while let Some(p) = pred[*chain.last().unwrap()] {
        chain.push(p);
    }
    chain.reverse();
    Ok(HeightResult {
        height: if n == 0 { 0 } else { best[top] },
        chain,
        equal_nu_comparable,
    })
}

/// Which family a bounds report is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `A(n,2)`
    An2(usize),
    /// `A(2k,k)`
    A2kk(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetSummary {
    pub class: Margins,
    pub class_size: String,
    pub width: Option<u64>,
    pub height: Option<u64>,
    /// Known height used in the average bound.
    pub height_formula: String,
    pub width_lower_bounds: BTreeMap<String, String>,
}

impl PosetSummary {
    /// `w h >= |P|` and every lower bound at most the exact width, where
    /// exact values are present.
    pub fn consistency_problems(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let size: u128 = self.class_size.parse().unwrap_or(0);
        if let (Some(w), Some(h)) = (self.width, self.height) {
            if u128::from(w) * u128::from(h) < size {
                problems.push(format!("width {w} * height {h} < class size {size}"));
            }
        }
        if let Some(w) = self.width {
            for (name, value) in &self.width_lower_bounds {
                if name.ends_with("_exact") {
                    continue;
                }
                if value.parse::<u128>().is_ok_and(|v| v > u128::from(w)) {
                    problems.push(format!("{name} = {value} exceeds exact width {w}"));
                }
            }
        }
        problems
    }
}

/// `h(n,2) = 2n(n-2) + [n even]` for `n >= 4`. The closed form overshoots
/// at `n = 3`, where the class is the reversed Bruhat order of `S_3` with
/// height 4.
pub fn height_an2(n: u64) -> u64 {
    if n == 3 {
        return 4;
    }
    2 * n * (n - 2) + u64::from(n % 2 == 0)
}

/// `h(2k,k) = k^4 + 1`.
pub fn height_a2kk(k: u64) -> u64 {
    k.pow(4) + 1
}

/// Lower bounds on the width: `|A| / h` (floor, ceiling and exact
/// fraction), the construction bound `f(n)` or `g(k)`, and the largest
/// inversion level when a histogram is supplied.
pub fn width_bounds_report(
    family: Family,
    histogram: Option<&HistogramReport>,
) -> Result<PosetSummary> {
    let (class, height, formula_name, formula_value) = match family {
        Family::An2(n) => {
            if n < 3 {
                return Err(Error::InvalidParameter(format!(
                    "A(n,2) bounds need n >= 3, got {n}"
                )));
            }
            let n64 = n as u64;
            (
                Margins::regular(n, 2),
                height_an2(n64),
                "f_n",
                f_bound(n64)?,
            )
        }
        Family::A2kk(k) => {
            if k < 2 {
                return Err(Error::InvalidParameter(format!(
                    "A(2k,k) bounds need k >= 2, got {k}"
                )));
            }
            let k64 = k as u64;
            (
                Margins::regular(2 * k, k as u32),
                height_a2kk(k64),
                "g_k",
                g_bound(k64)?,
            )
        }
    };
    let size = count_class(&class)?.0;
    let h = u128::from(height);
    let mut bounds = BTreeMap::new();
    bounds.insert("average_bound_floor".to_string(), (size / h).to_string());
    bounds.insert(
        "average_bound_ceil".to_string(),
        size.div_ceil(h).to_string(),
    );
    bounds.insert("average_bound_exact".to_string(), format!("{size}/{h}"));
    bounds.insert(formula_name.to_string(), formula_value.to_string());
    if let Some(hist) = histogram {
        if hist.class != class {
            return Err(Error::ClassMismatch(format!(
                "histogram is for {}, report for {class}",
                hist.class
            )));
        }
        bounds.insert("max_nu_level".to_string(), hist.max_bucket.1.to_string());
    }
    Ok(PosetSummary {
        class,
        class_size: size.to_string(),
        width: None,
        height: None,
        height_formula: height.to_string(),
        width_lower_bounds: bounds,
    })
}

/// Exact width and height of a whole class, with the bounds report when the
/// class is `A(n,2)` or `A(2k,k)`.
pub fn class_summary(
    margins: &Margins,
    want_width: bool,
    want_height: bool,
    height_cap: usize,
) -> Result<PosetSummary> {
    let members = class_members_budgeted(margins)?;
    let width = if want_width {
        Some(exact_width(&members, WIDTH_CAP)?.width as u64)
    } else {
        None
    };
    let height = if want_height {
        Some(exact_height(&members, height_cap)?.height as u64)
    } else {
        None
    };
    let (m, n) = margins.dims();
    let regular_k = (m == n
        && margins
            .rows
            .iter()
            .chain(&margins.cols)
            .all(|&x| x == margins.rows[0]))
    .then(|| margins.rows[0] as usize);
    let family = match regular_k {
        Some(2) if n >= 3 => Some(Family::An2(n)),
        Some(k) if k >= 2 && n == 2 * k => Some(Family::A2kk(k)),
        _ => None,
    };
    let mut summary = match family {
        Some(f) => width_bounds_report(f, None)?,
        None => PosetSummary {
            class: margins.clone(),
            class_size: members.len().to_string(),
            width: None,
            height: None,
            height_formula: String::new(),
            width_lower_bounds: BTreeMap::new(),
        },
    };
    if regular_k == Some(2) && n >= 3 {
        let hist = histogram_of(margins, &members);
        summary
            .width_lower_bounds
            .insert("max_nu_level".to_string(), hist.max_bucket.1.to_string());
    }
    summary.width = width;
    summary.height = height;
    Ok(summary)
}

fn class_members_budgeted(margins: &Margins) -> Result<Vec<BinaryMatrix>> {
    check_budget(margins, enumeration_budget())?;
    class_members(margins)
}

fn histogram_of(margins: &Margins, members: &[BinaryMatrix]) -> HistogramReport {
    let mut buckets = BTreeMap::new();
    for a in members {
        *buckets.entry(a.inversions()).or_default() += 1u128;
    }
    HistogramReport::from_buckets(margins.clone(), buckets)
}

/// A pair with equal inversion counts that is nonetheless comparable.
#[derive(Clone, Debug)]
pub struct ProblemWitness {
    pub lower: BinaryMatrix,
    pub upper: BinaryMatrix,
    pub nu: u64,
}

/// Looks for `A, C` in the class with `nu(A) = nu(C)` and `A <_B C`.
///
/// `None` means the class has no such pair.
pub fn nu_problem_search(margins: &Margins, budget: u128) -> Result<Option<ProblemWitness>> {
    check_budget(margins, budget)?;
    let mut levels: BTreeMap<u64, Vec<BinaryMatrix>> = BTreeMap::new();
    crate::class_enum::enumerate_class(margins, |a| {
        levels.entry(a.inversions()).or_default().push(a.clone())
    })?;
    for (nu, level) in levels {
        if level.len() < 2 {
            continue;
        }
        let batch = SigmaBatch::new(&level)?;
        let hit = (0..level.len()).into_par_iter().find_map_first(|i| {
            (i + 1..level.len()).find_map(|j| match batch.compare(i, j) {
                OrderRelation::Less => Some((i, j)),
                OrderRelation::Greater => Some((j, i)),
                _ => None,
            })
        });
        if let Some((lo, hi)) = hit {
            return Ok(Some(ProblemWitness {
                lower: level[lo].clone(),
                upper: level[hi].clone(),
                nu,
            }));
        }
    }
    Ok(None)
}
