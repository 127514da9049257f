//! Feasibility, exhaustive enumeration and counting for classes `A(R,S)`.
//!
//! Members are produced row by row. Each row's support is a subset of the
//! columns with positive residual sum; a column whose residual equals the
//! number of rows still to fill is forced into every remaining row. Within a
//! row, candidate supports are visited in lexicographic order of their
//! column-index sets, which makes the overall order row-lexicographic.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, Margins, MAX_COLS};

/// Exact number of members of a class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassCount(pub u128);

impl fmt::Display for ClassCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for ClassCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// Number of members an enumeration may visit unless overridden.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 5_000_000;

/// Enumeration budget, overridable through `BRUHAT_BUDGET`.
pub fn enumeration_budget() -> u128 {
    std::env::var("BRUHAT_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_BUDGET)
}

/// Errors with [`Error::BudgetExceeded`] when the class is larger than `budget`.
pub fn check_budget(margins: &Margins, budget: u128) -> Result<ClassCount> {
    let count = count_class(margins)?;
    if count.0 > budget {
        return Err(Error::BudgetExceeded {
            needed: count.0,
            budget,
        });
    }
    Ok(count)
}

/// Gale–Ryser: `A(R,S)` is nonempty iff the sums agree and the sorted column
/// sums are majorized by the conjugate of the row sums.
pub fn feasible(margins: &Margins) -> bool {
    let (m, n) = margins.dims();
    if margins.row_total() != margins.col_total() {
        return false;
    }
    if margins.rows.iter().any(|&r| r as usize > n) || margins.cols.iter().any(|&s| s as usize > m)
    {
        return false;
    }
    let mut cols: Vec<u32> = margins.cols.clone();
    cols.sort_unstable_by(|a, b| b.cmp(a));
    // conjugate of R: r*_j = #{i : r_i > j}
    let mut partial_s = 0u64;
    let mut partial_conj = 0u64;
    for (j, &s) in cols.iter().enumerate() {
        partial_s += u64::from(s);
        partial_conj += margins.rows.iter().filter(|&&r| r as usize > j).count() as u64;
        if partial_s > partial_conj {
            return false;
        }
    }
    true
}

fn validate(margins: &Margins) -> Result<()> {
    let (m, n) = margins.dims();
    if m == 0 || n == 0 {
        return Err(Error::EmptyDimensions { rows: m, cols: n });
    }
    if n > MAX_COLS {
        return Err(Error::TooWide {
            cols: n,
            max: MAX_COLS,
        });
    }
    if !feasible(margins) {
        return Err(Error::Infeasible(margins.to_string()));
    }
    Ok(())
}

/// What to enumerate: a class, optionally restricted to one shard.
///
/// Shard `s` of `c` holds the members whose first row is the `p`-th candidate
/// support with `p % c == s`, so shards partition the class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationPlan {
    pub margins: Margins,
    pub shard: Option<(usize, usize)>,
}

impl EnumerationPlan {
    pub fn new(margins: Margins) -> Self {
        EnumerationPlan {
            margins,
            shard: None,
        }
    }

    pub fn sharded(margins: Margins, shard: usize, shard_count: usize) -> Result<Self> {
        if shard_count == 0 || shard >= shard_count {
            return Err(Error::InvalidParameter(format!(
                "shard {shard} of {shard_count} is out of range"
            )));
        }
        Ok(EnumerationPlan {
            margins,
            shard: Some((shard, shard_count)),
        })
    }

    /// Visits every member of the plan once, in row-lexicographic order.
    pub fn enumerate<F: FnMut(&BinaryMatrix)>(&self, visitor: F) -> Result<ClassCount> {
        validate(&self.margins)?;
        let (m, n) = self.margins.dims();
        let mut search = Search {
            row_sums: &self.margins.rows,
            residual: self.margins.cols.clone(),
            current: BinaryMatrix::zeros(m, n)?,
            visitor,
            count: 0,
            shard: self.shard,
        };
        search.descend(0);
        Ok(ClassCount(search.count))
    }
}

struct Search<'a, F> {
    row_sums: &'a [u32],
    residual: Vec<u32>,
    current: BinaryMatrix,
    visitor: F,
    count: u128,
    shard: Option<(usize, usize)>,
}

/// Forced and optional columns for the next row, or `None` on a dead end.
fn row_candidates(
    residual: &[u32],
    remaining_rows: u32,
    row_sum: u32,
) -> Option<(u64, Vec<usize>, usize)> {
    let mut forced = 0u64;
    let mut optional = Vec::new();
    for (j, &res) in residual.iter().enumerate() {
        if res > remaining_rows {
            return None;
        }
        if res == remaining_rows && res > 0 {
            forced |= 1 << j;
        } else if res > 0 {
            optional.push(j);
        }
    }
    let f = forced.count_ones();
    if f > row_sum {
        return None;
    }
    let need = (row_sum - f) as usize;
    if need > optional.len() {
        return None;
    }
    Some((forced, optional, need))
}

/// Calls `f` with the bit mask of each `k`-subset of `items`, in
/// lexicographic order.
fn for_each_subset(items: &[usize], k: usize, mut f: impl FnMut(u64)) {
    let n = items.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(idx.iter().fold(0u64, |acc, &p| acc | (1 << items[p])));
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

impl<F: FnMut(&BinaryMatrix)> Search<'_, F> {
    fn descend(&mut self, i: usize) {
        let m = self.row_sums.len();
        if i == m {
            debug_assert!(self.residual.iter().all(|&r| r == 0));
            self.count += 1;
            (self.visitor)(&self.current);
            return;
        }
        let remaining = (m - i) as u32;
        let Some((forced, optional, need)) =
            row_candidates(&self.residual, remaining, self.row_sums[i])
        else {
            return;
        };
        let shard = if i == 0 { self.shard } else { None };
        let mut supports = Vec::new();
        for_each_subset(&optional, need, |mask| supports.push(forced | mask));
        for (p, row) in supports.into_iter().enumerate() {
            if let Some((s, c)) = shard {
                if p % c != s {
                    continue;
                }
            }
            self.apply(row, false);
            self.current.set_row_bits(i, row);
            self.descend(i + 1);
            self.apply(row, true);
        }
        self.current.set_row_bits(i, 0);
    }

    #[inline]
    fn apply(&mut self, row: u64, undo: bool) {
        let mut r = row;
        while r != 0 {
            let j = r.trailing_zeros() as usize;
            r &= r - 1;
            if undo {
                self.residual[j] += 1;
            } else {
                self.residual[j] -= 1;
            }
        }
    }
}

/// Visits every member of `A(R,S)` once, in row-lexicographic order.
pub fn enumerate_class<F: FnMut(&BinaryMatrix)>(
    margins: &Margins,
    visitor: F,
) -> Result<ClassCount> {
    EnumerationPlan::new(margins.clone()).enumerate(visitor)
}

/// Collects every member of `A(R,S)`.
pub fn class_members(margins: &Margins) -> Result<Vec<BinaryMatrix>> {
    let mut out = Vec::new();
    enumerate_class(margins, |a| out.push(a.clone()))?;
    Ok(out)
}

/// Runs `per_shard` on each of `shards` shards in parallel and returns the
/// results in shard order.
pub fn par_map_shards<T, F>(margins: &Margins, shards: usize, per_shard: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(EnumerationPlan) -> Result<T> + Sync,
{
    validate(margins)?;
    let shards = shards.max(1);
    (0..shards)
        .into_par_iter()
        .map(|s| per_shard(EnumerationPlan::sharded(margins.clone(), s, shards)?))
        .collect()
}

/// Size of `A(R,S)` without materializing members; zero for empty classes.
///
/// Same row-by-row search, memoized on the multiset of residual column sums
/// (the count is invariant under column permutations).
pub fn count_class(margins: &Margins) -> Result<ClassCount> {
    let (m, n) = margins.dims();
    if m == 0 || n == 0 {
        return Err(Error::EmptyDimensions { rows: m, cols: n });
    }
    if n > MAX_COLS {
        return Err(Error::TooWide {
            cols: n,
            max: MAX_COLS,
        });
    }
    if !feasible(margins) {
        return Ok(ClassCount(0));
    }
    let mut memo = HashMap::new();
    let total = count_rec(&margins.rows, 0, margins.cols.clone(), &mut memo)?;
    Ok(ClassCount(total))
}

fn count_rec(
    row_sums: &[u32],
    i: usize,
    mut residual: Vec<u32>,
    memo: &mut HashMap<(usize, Vec<u32>), u128>,
) -> Result<u128> {
    if i == row_sums.len() {
        return Ok(u128::from(residual.iter().all(|&r| r == 0)));
    }
    residual.sort_unstable();
    if let Some(&c) = memo.get(&(i, residual.clone())) {
        return Ok(c);
    }
    let remaining = (row_sums.len() - i) as u32;
    let mut total = 0u128;
    if let Some((forced, optional, need)) = row_candidates(&residual, remaining, row_sums[i]) {
        let mut supports = Vec::new();
        for_each_subset(&optional, need, |mask| supports.push(forced | mask));
        for row in supports {
            let next: Vec<u32> = residual
                .iter()
                .enumerate()
                .map(|(j, &r)| r - (row >> j & 1) as u32)
                .collect();
            total = total
                .checked_add(count_rec(row_sums, i + 1, next, memo)?)
                .ok_or_else(|| Error::Overflow("class count exceeds 128 bits".into()))?;
        }
    }
    memo.insert((i, residual), total);
    Ok(total)
}

/// Margins of the seed class: `2k x k`, row sums 1, column sums 2.
pub fn seed_margins(k: usize) -> Margins {
    Margins::new(vec![1; 2 * k], vec![2; k])
}

/// Visits every `2k x k` matrix with row sums 1 and column sums 2.
pub fn enumerate_seed_c<F: FnMut(&BinaryMatrix)>(k: usize, visitor: F) -> Result<ClassCount> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "seed order k must be positive".into(),
        ));
    }
    enumerate_class(&seed_margins(k), visitor)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, x| acc * x)
}

/// Largest `k*n` accepted by [`oneil_estimate`].
pub const ONEIL_MAX_KN: u64 = 5000;

/// Asymptotic size of `A(n,k)`: `(kn)! / (k!)^(2n) * exp(-(k-1)^2 / 2)`.
///
/// The factorial ratio is formed exactly and rounded once to `f64`.
pub fn oneil_estimate(n: u64, k: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let kn = k
        .checked_mul(n)
        .filter(|&v| v <= ONEIL_MAX_KN)
        .ok_or_else(|| Error::Overflow(format!("k*n beyond {ONEIL_MAX_KN}")))?;
    let num = BigInt::from(factorial(kn));
    let den = BigInt::from(factorial(k).pow(2 * n as u32));
    let ratio = BigRational::new(num, den)
        .to_f64()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Overflow(format!("estimate for n={n}, k={k} exceeds f64 range")))?;
    let km1 = (k as f64) - 1.0;
    let value = ratio * (-(km1 * km1) / 2.0).exp();
    if !value.is_finite() {
        return Err(Error::Overflow(format!("estimate for n={n}, k={k}")));
    }
    Ok(value)
}
