//! Dense (0,1)-matrices and their elementary transforms.
//!
//! A [`BinaryMatrix`] stores each row as a `u64` bit mask (bit `j` is column
//! `j`, counted from the left), so every matrix handled here has at most
//! [`MAX_COLS`] columns. Indices are 0-based in the API; error messages and
//! docs speak of rows and columns 1-based, as in the literature.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Widest matrix representable with one machine word per row.
pub const MAX_COLS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
}

#[inline]
fn col_mask(cols: usize) -> u64 {
    if cols >= 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    }
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyDimensions { rows, cols });
    }
    if cols > MAX_COLS {
        return Err(Error::TooWide {
            cols,
            max: MAX_COLS,
        });
    }
    Ok(())
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        check_dims(rows, cols)?;
        Ok(BinaryMatrix {
            rows,
            cols,
            bits: vec![0; rows],
        })
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        check_dims(rows, cols)?;
        Ok(BinaryMatrix {
            rows,
            cols,
            bits: vec![col_mask(cols); rows],
        })
    }

    /// `I_n`.
    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| i == j)
    }

    /// `L_n`, the anti-identity.
    pub fn anti_identity(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| i + j + 1 == n)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        check_dims(rows, cols)?;
        let bits = (0..rows)
            .map(|i| {
                (0..cols)
                    .filter(|&j| f(i, j))
                    .fold(0u64, |acc, j| acc | (1 << j))
            })
            .collect();
        Ok(BinaryMatrix { rows, cols, bits })
    }

    /// Builds a matrix from per-row bit masks (bit `j` = column `j`).
    pub fn from_row_bits(cols: usize, bits: Vec<u64>) -> Result<Self> {
        check_dims(bits.len(), cols)?;
        let mask = col_mask(cols);
        if let Some(i) = bits.iter().position(|&b| b & !mask != 0) {
            return Err(Error::InvalidParameter(format!(
                "row {} has bits set beyond column {cols}",
                i + 1
            )));
        }
        Ok(BinaryMatrix {
            rows: bits.len(),
            cols,
            bits,
        })
    }

    /// Parses rows written as strings over `{0,1}`, e.g. `["10", "01"]`.
    pub fn from_strs<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().trim().len());
        check_dims(rows.len(), cols)?;
        let mut bits = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref().trim();
            if row.len() != cols {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("row has {} entries, expected {cols}", row.len()),
                });
            }
            let mut b = 0u64;
            for (j, c) in row.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => b |= 1 << j,
                    other => {
                        return Err(Error::Parse {
                            line: i + 1,
                            msg: format!("unexpected character {other:?} in column {}", j + 1),
                        })
                    }
                }
            }
            bits.push(b);
        }
        Ok(BinaryMatrix {
            rows: rows.len(),
            cols,
            bits,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.bits[i] >> j & 1 == 1
    }

    pub(crate) fn set_row_bits(&mut self, i: usize, bits: u64) {
        self.bits[i] = bits;
    }

    /// Bit mask of row `i`.
    #[inline]
    pub fn row_bits(&self, i: usize) -> u64 {
        self.bits[i]
    }

    /// Packed rows, one word per row.
    pub fn as_row_bits(&self) -> &[u64] {
        &self.bits
    }

    pub fn count_ones(&self) -> u64 {
        self.bits.iter().map(|b| u64::from(b.count_ones())).sum()
    }

    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| if self.get(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    pub fn margins(&self) -> Margins {
        let rows = self.bits.iter().map(|b| b.count_ones()).collect();
        let cols = (0..self.cols)
            .map(|j| self.bits.iter().filter(|&&b| b >> j & 1 == 1).count() as u32)
            .collect();
        Margins { rows, cols }
    }

    pub fn sigma_table(&self) -> SigmaTable {
        SigmaTable::of(self)
    }

    /// Number of inversions: unordered pairs of 1-entries one of which lies
    /// strictly to the top-right of the other.
    ///
    /// Row sweep keeping, per column, the number of ones seen in earlier rows;
    /// each 1 at `(i, j)` pairs with every earlier 1 in a column right of `j`.
    pub fn inversions(&self) -> u64 {
        let mut above = [0u64; MAX_COLS];
        let mut total = 0u64;
        for &row in &self.bits {
            let mut right = 0u64;
            for j in (0..self.cols).rev() {
                if row >> j & 1 == 1 {
                    total += right;
                }
                right += above[j];
            }
            let mut r = row;
            while r != 0 {
                above[r.trailing_zeros() as usize] += 1;
                r &= r - 1;
            }
        }
        total
    }

    /// Left/right reflection: `b_ij = a_{i, n-j+1}`.
    pub fn conjugate(&self) -> Self {
        let shift = 64 - self.cols as u32;
        BinaryMatrix {
            rows: self.rows,
            cols: self.cols,
            bits: self
                .bits
                .iter()
                .map(|b| b.reverse_bits() >> shift)
                .collect(),
        }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// `J - A`.
    pub fn complement(&self) -> Self {
        let mask = col_mask(self.cols);
        BinaryMatrix {
            rows: self.rows,
            cols: self.cols,
            bits: self.bits.iter().map(|b| !b & mask).collect(),
        }
    }

    /// Moves the last column to the left-most position.
    pub fn rotate_last_column_to_front(&self) -> Self {
        let last = self.cols - 1;
        let mask = col_mask(self.cols);
        BinaryMatrix {
            rows: self.rows,
            cols: self.cols,
            bits: self
                .bits
                .iter()
                .map(|&b| ((b << 1) & mask) | (b >> last & 1))
                .collect(),
        }
    }

    /// Both sides of `nu(A) + nu(conj A) = C(u,2) - sum C(r_i,2) - sum C(s_j,2)`.
    ///
    /// The right-hand side is evaluated from the margins alone with checked
    /// arithmetic.
    pub fn nu_conjugate_identity(&self) -> Result<(u64, u64)> {
        let lhs = self
            .inversions()
            .checked_add(self.conjugate().inversions())
            .ok_or_else(|| Error::Overflow("inversion sum".into()))?;
        let rhs = self.margins().nu_conjugate_sum()?;
        Ok((lhs, rhs))
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.row_strings().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str(row)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix{:?}", self.row_strings())
    }
}

/// `C(x, 2)`, zero for `x < 2`.
pub fn choose2(x: u64) -> Result<u64> {
    if x < 2 {
        return Ok(0);
    }
    x.checked_mul(x - 1)
        .map(|v| v / 2)
        .ok_or_else(|| Error::Overflow(format!("C({x}, 2)")))
}

/// Row and column sum vectors `(R, S)` naming a class `A(R,S)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Margins {
    #[serde(rename = "R")]
    pub rows: Vec<u32>,
    #[serde(rename = "S")]
    pub cols: Vec<u32>,
}

impl Margins {
    pub fn new(rows: Vec<u32>, cols: Vec<u32>) -> Self {
        Margins { rows, cols }
    }

    /// Margins of `A(n,k)`.
    pub fn regular(n: usize, k: u32) -> Self {
        Margins {
            rows: vec![k; n],
            cols: vec![k; n],
        }
    }

    pub fn row_total(&self) -> u64 {
        self.rows.iter().map(|&r| u64::from(r)).sum()
    }

    pub fn col_total(&self) -> u64 {
        self.cols.iter().map(|&s| u64::from(s)).sum()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    /// Closed form for `nu(A) + nu(conj A)` over the class.
    pub fn nu_conjugate_sum(&self) -> Result<u64> {
        let mut total = choose2(self.row_total())?;
        for &x in self.rows.iter().chain(&self.cols) {
            total = total
                .checked_sub(choose2(u64::from(x))?)
                .ok_or_else(|| Error::Overflow(format!("negative identity value for {self}")))?;
        }
        Ok(total)
    }
}

impl fmt::Display for Margins {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(v: &[u32]) -> String {
            v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        }
        write!(f, "R=<{}>, S=<{}>", join(&self.rows), join(&self.cols))
    }
}

/// Top-left partial sums: entry `(i, j)` is the number of ones in rows
/// `0..=i` and columns `0..=j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaTable {
    rows: usize,
    cols: usize,
    values: Vec<u32>,
}

impl SigmaTable {
    pub fn of(a: &BinaryMatrix) -> Self {
        let (m, n) = a.dims();
        let mut values = vec![0u32; m * n];
        for i in 0..m {
            let mut run = 0u32;
            let row = a.row_bits(i);
            for j in 0..n {
                run += (row >> j & 1) as u32;
                let above = if i > 0 { values[(i - 1) * n + j] } else { 0 };
                values[i * n + j] = above + run;
            }
        }
        SigmaTable {
            rows: m,
            cols: n,
            values,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `sigma_{i+1, j+1}` in 1-based terms.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.values[i * self.cols + j]
    }

    /// Value at 1-based `(i, j)`, reading index 0 as the empty sum.
    pub fn get_1based(&self, i: usize, j: usize) -> u32 {
        if i == 0 || j == 0 {
            0
        } else {
            self.get(i - 1, j - 1)
        }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn total(&self) -> u32 {
        self.values.last().copied().unwrap_or(0)
    }

    /// Sum of all table entries; strictly decreases along the Bruhat order.
    pub fn weight(&self) -> u64 {
        self.values.iter().map(|&v| u64::from(v)).sum()
    }
}

/// Assembles the block matrix whose block `(i, j)` is `pick_one(i, j)` when
/// `pattern[i][j] = 1` and `pick_zero(i, j)` otherwise.
///
/// All blocks must share one shape.
pub fn block_compose<'a, F, G>(
    pattern: &BinaryMatrix,
    mut pick_one: F,
    mut pick_zero: G,
) -> Result<BinaryMatrix>
where
    F: FnMut(usize, usize) -> &'a BinaryMatrix,
    G: FnMut(usize, usize) -> &'a BinaryMatrix,
{
    let (a, b) = pattern.dims();
    let mut blocks: Vec<&BinaryMatrix> = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            blocks.push(if pattern.get(i, j) {
                pick_one(i, j)
            } else {
                pick_zero(i, j)
            });
        }
    }
    let shape = blocks[0].dims();
    if let Some(bad) = blocks.iter().find(|blk| blk.dims() != shape) {
        return Err(Error::DimensionMismatch {
            expected: shape,
            found: bad.dims(),
        });
    }
    let (m, n) = shape;
    check_dims(a * m, b * n)?;
    let mut bits = vec![0u64; a * m];
    for i in 0..a {
        for j in 0..b {
            let blk = blocks[i * b + j];
            for k in 0..m {
                bits[i * m + k] |= blk.row_bits(k) << (j * n);
            }
        }
    }
    Ok(BinaryMatrix {
        rows: a * m,
        cols: b * n,
        bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BinaryMatrix {
        BinaryMatrix::from_strs(rows).unwrap()
    }

    /// Pair-scan oracle for inversions.
    fn naive_inversions(a: &BinaryMatrix) -> u64 {
        let ones: Vec<(i64, i64)> = (0..a.rows())
            .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
            .filter(|&(i, j)| a.get(i, j))
            .map(|(i, j)| (i as i64, j as i64))
            .collect();
        let mut count = 0;
        for x in 0..ones.len() {
            for y in x + 1..ones.len() {
                let (i, j) = ones[x];
                let (k, l) = ones[y];
                if (i - k) * (j - l) < 0 {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn margins_examples() {
        let i2 = BinaryMatrix::identity(2).unwrap();
        assert_eq!(i2.margins(), Margins::new(vec![1, 1], vec![1, 1]));
        let j2 = BinaryMatrix::ones(2, 2).unwrap();
        assert_eq!(j2.margins(), Margins::regular(2, 2));
        let c = BinaryMatrix::identity(3).unwrap().complement();
        assert_eq!(c.margins(), Margins::regular(3, 2));
    }

    #[test]
    fn sigma_examples() {
        let s = BinaryMatrix::identity(2).unwrap().sigma_table();
        assert_eq!(s.values(), &[1, 1, 1, 2]);
        let s = BinaryMatrix::anti_identity(2).unwrap().sigma_table();
        assert_eq!(s.values(), &[0, 1, 1, 2]);
        let s = BinaryMatrix::zeros(2, 3).unwrap().sigma_table();
        assert!(s.values().iter().all(|&v| v == 0));
        assert_eq!(s.get_1based(0, 3), 0);
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(BinaryMatrix::identity(2).unwrap().inversions(), 0);
        assert_eq!(BinaryMatrix::anti_identity(2).unwrap().inversions(), 1);
        let j2 = BinaryMatrix::ones(2, 2).unwrap();
        assert_eq!(naive_inversions(&j2), 1);
        assert_eq!(j2.inversions(), 1);
    }

    #[test]
    fn conjugate_examples() {
        let i2 = BinaryMatrix::identity(2).unwrap();
        assert_eq!(i2.conjugate(), BinaryMatrix::anti_identity(2).unwrap());
        let col = m(&["1", "0", "1"]);
        assert_eq!(col.conjugate(), col);
        assert_eq!(m(&["100", "011"]).conjugate(), m(&["001", "110"]));
    }

    #[test]
    fn complement_examples() {
        let i2 = BinaryMatrix::identity(2).unwrap();
        assert_eq!(i2.complement(), BinaryMatrix::anti_identity(2).unwrap());
        assert_eq!(
            BinaryMatrix::ones(2, 2).unwrap().complement(),
            BinaryMatrix::zeros(2, 2).unwrap()
        );
        let a = m(&["1100", "0110", "0011", "1001"]);
        assert_eq!(a.complement().margins(), Margins::regular(4, 2));
    }

    #[test]
    fn full_width_rows() {
        let a = BinaryMatrix::from_fn(2, 64, |i, j| (i + j) % 3 == 0).unwrap();
        assert_eq!(a.conjugate().conjugate(), a);
        assert_eq!(a.complement().complement(), a);
        assert_eq!(a.inversions(), naive_inversions(&a));
        assert!(BinaryMatrix::zeros(1, 65).is_err());
    }

    #[test]
    fn identity_on_i2() {
        let (lhs, rhs) = BinaryMatrix::identity(2)
            .unwrap()
            .nu_conjugate_identity()
            .unwrap();
        assert_eq!((lhs, rhs), (1, 1));
    }

    #[test]
    fn choose2_small() {
        assert_eq!(choose2(0).unwrap(), 0);
        assert_eq!(choose2(1).unwrap(), 0);
        assert_eq!(choose2(8).unwrap(), 28);
        assert!(choose2(u64::MAX).is_err());
    }

    #[test]
    fn rotate_last_column() {
        assert_eq!(
            m(&["101", "110", "011"]).rotate_last_column_to_front(),
            m(&["110", "011", "101"])
        );
    }

    #[test]
    fn block_compose_examples() {
        let i2 = BinaryMatrix::identity(2).unwrap();
        let z2 = BinaryMatrix::zeros(2, 2).unwrap();
        let x = block_compose(&i2, |_, _| &i2, |_, _| &z2).unwrap();
        assert_eq!(x, m(&["1000", "0100", "0010", "0001"]));

        let one = BinaryMatrix::ones(1, 1).unwrap();
        let a = m(&["110", "011", "101"]);
        assert_eq!(block_compose(&one, |_, _| &a, |_, _| &z2).unwrap(), a);

        let z3 = BinaryMatrix::zeros(3, 3).unwrap();
        let err = block_compose(&i2, |_, _| &a, |_, _| &z2).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
        assert!(block_compose(&i2, |_, _| &a, |_, _| &z3).is_ok());
    }

    #[test]
    fn parse_errors() {
        assert!(BinaryMatrix::from_strs(&["10", "1"]).is_err());
        assert!(BinaryMatrix::from_strs(&["1x"]).is_err());
        assert!(BinaryMatrix::from_strs::<&str>(&[]).is_err());
        assert!(BinaryMatrix::from_row_bits(2, vec![0b100]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = BinaryMatrix> {
            (1usize..=12, 1usize..=12).prop_flat_map(|(r, c)| {
                proptest::collection::vec(any::<u64>(), r).prop_map(move |rows| {
                    let mask = (1u64 << c) - 1;
                    BinaryMatrix::from_row_bits(c, rows.into_iter().map(|b| b & mask).collect())
                        .unwrap()
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(10_000))]

            #[test]
            fn inversions_match_pair_scan(a in matrix()) {
                prop_assert_eq!(a.inversions(), naive_inversions(&a));
            }

            #[test]
            fn involutions_commute(a in matrix()) {
                prop_assert_eq!(a.conjugate().conjugate(), a.clone());
                prop_assert_eq!(a.complement().complement(), a.clone());
                prop_assert_eq!(a.conjugate().complement(), a.complement().conjugate());
            }

            #[test]
            fn sigma_unit_increments(a in matrix()) {
                let s = a.sigma_table();
                let at = |i: usize, j: usize| i64::from(s.get_1based(i, j));
                for i in 1..=a.rows() {
                    for j in 1..=a.cols() {
                        let d = at(i, j) - at(i - 1, j) - at(i, j - 1) + at(i - 1, j - 1);
                        prop_assert_eq!(d, i64::from(a.get(i - 1, j - 1)));
                        prop_assert!(at(i, j) >= at(i - 1, j) && at(i, j) >= at(i, j - 1));
                    }
                }
                prop_assert_eq!(u64::from(s.total()), a.count_ones());
            }

            #[test]
            fn conjugate_identity_holds(a in matrix()) {
                let (lhs, rhs) = a.nu_conjugate_identity().unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
