//! Antichain constructions in `A(n,2)` and `A(2k,k)`.
//!
//! Every builder returns its members together with independently computed
//! predictions (size, common inversion count, margins). The predictions are
//! never derived from the members, so [`ConstructedAntichain::audit`] and the
//! pairwise verifier test the construction rather than restate it.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::class_enum::{enumerate_seed_c, factorial};
use crate::error::{Error, Result};
use crate::matrix::{block_compose, BinaryMatrix, Margins, MAX_COLS};
use crate::poset_metrics::nu_level;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Even,
    Odd,
    Product,
    Complement,
    HalfRegular,
    RemarkImproved,
}

#[derive(Clone, Debug)]
pub struct ConstructedAntichain {
    pub members: Vec<BinaryMatrix>,
    pub margins: Margins,
    pub predicted_size: BigUint,
    /// Common inversion count, when the construction guarantees one.
    pub predicted_nu: Option<u64>,
    pub provenance: Provenance,
}

/// Predictions as emitted next to constructed members.
#[derive(Clone, Debug, Serialize)]
pub struct Predictions {
    pub provenance: Provenance,
    pub size: String,
    pub nu: Option<u64>,
    pub class: Margins,
}

impl ConstructedAntichain {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn predictions(&self) -> Predictions {
        Predictions {
            provenance: self.provenance,
            size: self.predicted_size.to_string(),
            nu: self.predicted_nu,
            class: self.margins.clone(),
        }
    }

    /// Checks members against the predictions; returns one message per
    /// violated invariant.
    pub fn audit(&self) -> Vec<String> {
        let mut problems = Vec::new();
        if BigUint::from(self.members.len()) != self.predicted_size {
            problems.push(format!(
                "size {} differs from predicted {}",
                self.members.len(),
                self.predicted_size
            ));
        }
        let distinct: HashSet<&BinaryMatrix> = self.members.iter().collect();
        if distinct.len() != self.members.len() {
            problems.push(format!(
                "{} duplicate members",
                self.members.len() - distinct.len()
            ));
        }
        for (idx, a) in self.members.iter().enumerate() {
            if a.margins() != self.margins {
                problems.push(format!("member {} has margins {}", idx + 1, a.margins()));
            }
            if let Some(nu) = self.predicted_nu {
                let actual = a.inversions();
                if actual != nu {
                    problems.push(format!(
                        "member {} has {actual} inversions, predicted {nu}",
                        idx + 1
                    ));
                }
            }
        }
        problems
    }
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

fn exact_div(num: BigUint, den: BigUint) -> BigUint {
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero(), "inexact division in size formula");
    q
}

/// `f(n)`: `n!/2^(n/2)` for even `n`, `(n-1)!/2^((n-3)/2)` for odd `n >= 3`.
pub fn f_bound(n: u64) -> Result<BigUint> {
    match n {
        0 | 1 => Err(Error::InvalidParameter(format!(
            "f(n) needs n >= 2, got {n}"
        ))),
        n if n % 2 == 0 => Ok(exact_div(factorial(n), pow2(n / 2))),
        n => Ok(exact_div(factorial(n - 1), pow2((n - 3) / 2))),
    }
}

/// `g(k)`: `(k!)^4/4^k` for even `k`, `((k-1)!)^4/4^(k-3)` for odd `k >= 3`.
pub fn g_bound(k: u64) -> Result<BigUint> {
    match k {
        0 | 1 => Err(Error::InvalidParameter(format!(
            "g(k) needs k >= 2, got {k}"
        ))),
        k if k % 2 == 0 => Ok(exact_div(factorial(k).pow(4), pow2(2 * k))),
        k => Ok(exact_div(factorial(k - 1).pow(4), pow2(2 * (k - 3)))),
    }
}

/// `13 [(k/2)!]^16 / 16^k`.
pub fn remark_bound(k: u64) -> BigUint {
    exact_div(BigUint::from(13u32) * factorial(k / 2).pow(16), pow2(4 * k))
}

fn seeds(k: usize) -> Result<Vec<BinaryMatrix>> {
    let mut out = Vec::new();
    enumerate_seed_c(k, |c| out.push(c.clone()))?;
    Ok(out)
}

/// Self-conjugate members `[C | conj C]` of `A(n,2)`, one per seed `C`.
pub fn even_antichain(n: usize) -> Result<ConstructedAntichain> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Parity {
            what: "even construction",
            expected: "an even",
            n,
        });
    }
    let k = n / 2;
    let members = seeds(k)?
        .iter()
        .map(|c| {
            let conj = c.conjugate();
            BinaryMatrix::from_fn(n, n, |i, j| {
                if j < k {
                    c.get(i, j)
                } else {
                    conj.get(i, j - k)
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let n64 = n as u64;
    Ok(ConstructedAntichain {
        members,
        margins: Margins::regular(n, 2),
        predicted_size: f_bound(n64)?,
        predicted_nu: Some(n64 * n64 - 3 * n64 / 2),
        provenance: Provenance::Even,
    })
}

/// The two-per-seed family `A_C`, `A_C'` in `A(n,2)` for odd `n`.
///
/// `A_C` carries `C` in rows `1..2k`, columns `1..k`, `conj C` in rows
/// `2..2k+1`, columns `k+1..2k`, and ones at `(1,n)` and `(n,n)`; `A_C'` moves
/// the last column of `A_C` to the front.
pub fn odd_antichain(n: usize) -> Result<ConstructedAntichain> {
    if n < 3 || n % 2 != 1 {
        return Err(Error::Parity {
            what: "odd construction",
            expected: "an odd",
            n,
        });
    }
    let k = (n - 1) / 2;
    let mut members = Vec::new();
    for c in seeds(k)? {
        let conj = c.conjugate();
        let a = BinaryMatrix::from_fn(n, n, |i, j| {
            if j == n - 1 {
                i == 0 || i == n - 1
            } else if j < k {
                i < 2 * k && c.get(i, j)
            } else {
                i >= 1 && conj.get(i - 1, j - k)
            }
        })?;
        let rotated = a.rotate_last_column_to_front();
        members.push(a);
        members.push(rotated);
    }
    let k64 = k as u64;
    Ok(ConstructedAntichain {
        members,
        margins: Margins::regular(n, 2),
        predicted_size: f_bound(n as u64)?,
        predicted_nu: Some(k64 * (4 * k64 - 1)),
        provenance: Provenance::Odd,
    })
}

/// Entrywise complements; complementation reverses the Bruhat order.
pub fn complement_antichain(members: &[BinaryMatrix]) -> Vec<BinaryMatrix> {
    members.iter().map(BinaryMatrix::complement).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProductOptions {
    /// Accept `u' = u''` when the pattern antichain is a singleton, where
    /// pairs with different patterns never occur.
    pub allow_degenerate_case1: bool,
}

/// Lazily enumerated product antichain.
///
/// Member index is mixed radix: the pattern index is most significant, then
/// one digit per pattern cell in row-major order, each with radix `|D2|`
/// (cell value 1) or `|D3|` (cell value 0); the last cell is least
/// significant.
#[derive(Clone, Debug)]
pub struct ProductAntichain {
    patterns: Vec<BinaryMatrix>,
    one_blocks: Vec<BinaryMatrix>,
    zero_blocks: Vec<BinaryMatrix>,
    margins: Margins,
    pattern_ones: u64,
    u_one: u64,
    u_zero: u64,
    per_pattern: BigUint,
    len: BigUint,
}

fn common_margins(set: &[BinaryMatrix], name: &str) -> Result<Margins> {
    let first = set
        .first()
        .ok_or_else(|| Error::EmptyInput(format!("{name} has no members")))?;
    let margins = first.margins();
    for (idx, a) in set.iter().enumerate() {
        if a.dims() != first.dims() || a.margins() != margins {
            return Err(Error::ClassMismatch(format!(
                "{name} member {} has margins {}, member 1 has {margins}",
                idx + 1,
                a.margins()
            )));
        }
    }
    Ok(margins)
}

/// Block product of three antichains.
///
/// Each member of `patterns` (`a x b`, margins `(R1,S1)`) is expanded by
/// putting a member of `one_blocks` (margins `(R2,S2)`) into every cell
/// holding 1 and a member of `zero_blocks` (margins `(R3,S3)`) into every cell
/// holding 0, over all independent per-cell choices. The result lies in the
/// class with `R = R1 (x) R2 + (b - R1) (x) R3` and
/// `S = S1 (x) S2 + (a - S1) (x) S3`.
///
/// Requires `u' != u''` (total ones of the two block classes) unless
/// `allow_degenerate_case1` is set and there is a single pattern.
pub fn product_antichain(
    patterns: &[BinaryMatrix],
    one_blocks: &[BinaryMatrix],
    zero_blocks: &[BinaryMatrix],
    options: ProductOptions,
) -> Result<ProductAntichain> {
    let m1 = common_margins(patterns, "D1")?;
    let m2 = common_margins(one_blocks, "D2")?;
    let m3 = common_margins(zero_blocks, "D3")?;
    let (a, b) = patterns[0].dims();
    let block_dims = one_blocks[0].dims();
    if zero_blocks[0].dims() != block_dims {
        return Err(Error::DimensionMismatch {
            expected: block_dims,
            found: zero_blocks[0].dims(),
        });
    }
    let (m, n) = block_dims;
    if b * n > MAX_COLS {
        return Err(Error::TooWide {
            cols: b * n,
            max: MAX_COLS,
        });
    }
    let u_one = m2.row_total();
    let u_zero = m3.row_total();
    if u_one == u_zero && !(options.allow_degenerate_case1 && patterns.len() == 1) {
        return Err(Error::Hypothesis(u_one));
    }

    let mut rows = Vec::with_capacity(a * m);
    for &r in &m1.rows {
        for k in 0..m {
            rows.push(r * m2.rows[k] + (b as u32 - r) * m3.rows[k]);
        }
    }
    let mut cols = Vec::with_capacity(b * n);
    for &s in &m1.cols {
        for l in 0..n {
            cols.push(s * m2.cols[l] + (a as u32 - s) * m3.cols[l]);
        }
    }

    let pattern_ones = m1.row_total();
    let cells = (a * b) as u64;
    let per_pattern = BigUint::from(one_blocks.len()).pow(pattern_ones as u32)
        * BigUint::from(zero_blocks.len()).pow((cells - pattern_ones) as u32);
    let len = BigUint::from(patterns.len()) * &per_pattern;
    Ok(ProductAntichain {
        patterns: patterns.to_vec(),
        one_blocks: one_blocks.to_vec(),
        zero_blocks: zero_blocks.to_vec(),
        margins: Margins::new(rows, cols),
        pattern_ones,
        u_one,
        u_zero,
        per_pattern,
        len,
    })
}

/// Default largest product that will be materialized in memory.
pub const DEFAULT_MATERIALIZE_CAP: u64 = 2_000_000;

impl ProductAntichain {
    pub fn len(&self) -> &BigUint {
        &self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len.is_zero()
    }

    pub fn len_u128(&self) -> Option<u128> {
        self.len.to_u128()
    }

    /// Predicted size `|D1| |D2|^u |D3|^(ab-u)`.
    pub fn predicted_size(&self) -> BigUint {
        self.len.clone()
    }

    /// Margins from the Kronecker/translation formula.
    pub fn margins(&self) -> &Margins {
        &self.margins
    }

    pub fn patterns(&self) -> &[BinaryMatrix] {
        &self.patterns
    }

    /// Total ones of a value-1 block (`u'`) and of a value-0 block (`u''`).
    pub fn block_totals(&self) -> (u64, u64) {
        (self.u_one, self.u_zero)
    }

    /// Number of ones in each pattern (`u`).
    pub fn pattern_ones(&self) -> u64 {
        self.pattern_ones
    }

    pub fn block_dims(&self) -> (usize, usize) {
        self.one_blocks[0].dims()
    }

    fn radix(&self, pattern: usize, cell: usize) -> usize {
        let b = self.patterns[pattern].cols();
        if self.patterns[pattern].get(cell / b, cell % b) {
            self.one_blocks.len()
        } else {
            self.zero_blocks.len()
        }
    }

    /// Splits a member index into its pattern index and per-cell choices.
    pub fn decompose(&self, index: &BigUint) -> Result<(usize, Vec<usize>)> {
        if *index >= self.len {
            return Err(Error::InvalidParameter(format!(
                "member index {index} out of range (size {})",
                self.len
            )));
        }
        let (p, mut rest) = index.div_rem(&self.per_pattern);
        let p = p.to_usize().expect("pattern index fits usize");
        let cells = self.patterns[p].rows() * self.patterns[p].cols();
        let mut choices = vec![0usize; cells];
        for cell in (0..cells).rev() {
            let radix = BigUint::from(self.radix(p, cell));
            let (q, r) = rest.div_rem(&radix);
            choices[cell] = r.to_usize().expect("digit fits usize");
            rest = q;
        }
        Ok((p, choices))
    }

    /// Block placed in cell `(i, j)` for the given choices.
    pub fn block(&self, pattern: usize, choices: &[usize], i: usize, j: usize) -> &BinaryMatrix {
        let b = self.patterns[pattern].cols();
        let choice = choices[i * b + j];
        if self.patterns[pattern].get(i, j) {
            &self.one_blocks[choice]
        } else {
            &self.zero_blocks[choice]
        }
    }

    pub fn compose(&self, pattern: usize, choices: &[usize]) -> Result<BinaryMatrix> {
        let p = &self.patterns[pattern];
        let b = p.cols();
        block_compose(
            p,
            |i, j| &self.one_blocks[choices[i * b + j]],
            |i, j| &self.zero_blocks[choices[i * b + j]],
        )
    }

    pub fn member(&self, index: &BigUint) -> Result<BinaryMatrix> {
        let (p, choices) = self.decompose(index)?;
        self.compose(p, &choices)
    }

    pub fn member_u128(&self, index: u128) -> Result<BinaryMatrix> {
        self.member(&BigUint::from(index))
    }

    /// Members in index order, one at a time.
    pub fn iter(&self) -> ProductIter<'_> {
        ProductIter {
            product: self,
            pattern: 0,
            choices: vec![0; self.patterns[0].rows() * self.patterns[0].cols()],
            done: false,
        }
    }

    /// Members `[start, end)` in index order.
    pub fn range(
        &self,
        start: &BigUint,
        end: &BigUint,
    ) -> Result<impl Iterator<Item = BinaryMatrix> + '_> {
        let end = end.min(&self.len).clone();
        let count = if *start >= end {
            0
        } else {
            (&end - start)
                .to_usize()
                .ok_or_else(|| Error::ResourceLimit {
                    what: "product range length",
                    limit: usize::MAX as u128,
                })?
        };
        let mut it = ProductIter {
            product: self,
            pattern: 0,
            choices: Vec::new(),
            done: count == 0,
        };
        if count > 0 {
            let (p, choices) = self.decompose(start)?;
            it.pattern = p;
            it.choices = choices;
        }
        Ok(it.take(count))
    }

    pub fn materialize(&self, cap: u64) -> Result<Vec<BinaryMatrix>> {
        let len = self
            .len
            .to_u64()
            .filter(|&l| l <= cap)
            .ok_or(Error::ResourceLimit {
                what: "materialized product members",
                limit: u128::from(cap),
            })?;
        let mut out = Vec::with_capacity(len as usize);
        for x in self.iter() {
            if x.margins() != self.margins {
                return Err(Error::ClassMismatch(format!(
                    "product member has margins {}, formula gives {}",
                    x.margins(),
                    self.margins
                )));
            }
            out.push(x);
        }
        Ok(out)
    }

    pub fn into_constructed(
        &self,
        provenance: Provenance,
        predicted_size: BigUint,
        cap: u64,
    ) -> Result<ConstructedAntichain> {
        Ok(ConstructedAntichain {
            members: self.materialize(cap)?,
            margins: self.margins.clone(),
            predicted_size,
            predicted_nu: None,
            provenance,
        })
    }

    /// Block-grid corner identity for patterns: the Sigma entry of `x` at the
    /// bottom-right of block `(k, l)` (1-based) equals
    /// `u'' k l + (u' - u'') sigma_kl(P)`. Returns the first failing `(k, l)`.
    pub fn check_corner_identity(
        &self,
        x: &BinaryMatrix,
        pattern: usize,
    ) -> Option<(usize, usize)> {
        let p = &self.patterns[pattern];
        let (m, n) = self.block_dims();
        let sx = x.sigma_table();
        let sp = p.sigma_table();
        let (u1, u0) = (self.u_one as i64, self.u_zero as i64);
        for k in 1..=p.rows() {
            for l in 1..=p.cols() {
                let psi = i64::from(sx.get_1based(k * m, l * n));
                let predicted = u0 * (k * l) as i64 + (u1 - u0) * i64::from(sp.get_1based(k, l));
                if psi != predicted {
                    return Some((k, l));
                }
            }
        }
        None
    }

    /// Same-pattern difference identity: for members `x`, `y` sharing a
    /// pattern and a global position `(alpha, beta)` (0-based) inside block
    /// `(i, j)` at local `(k, l)`,
    /// `sigma(X) - sigma(Y)` there equals `sigma_kl(X_ij) - sigma_kl(Y_ij)`.
    pub fn check_block_difference(
        &self,
        x: &BigUint,
        y: &BigUint,
        alpha: usize,
        beta: usize,
    ) -> Result<bool> {
        let (px, cx) = self.decompose(x)?;
        let (py, cy) = self.decompose(y)?;
        if px != py {
            return Err(Error::InvalidParameter(
                "block difference identity needs members with the same pattern".into(),
            ));
        }
        let (m, n) = self.block_dims();
        let (i, k) = (alpha / m, alpha % m);
        let (j, l) = (beta / n, beta % n);
        let global = |choices: &[usize]| -> Result<i64> {
            Ok(i64::from(
                self.compose(px, choices)?.sigma_table().get(alpha, beta),
            ))
        };
        let local =
            |choices: &[usize]| i64::from(self.block(px, choices, i, j).sigma_table().get(k, l));
        Ok(global(&cx)? - global(&cy)? == local(&cx) - local(&cy))
    }
}

pub struct ProductIter<'a> {
    product: &'a ProductAntichain,
    pattern: usize,
    choices: Vec<usize>,
    done: bool,
}

impl Iterator for ProductIter<'_> {
    type Item = BinaryMatrix;

    fn next(&mut self) -> Option<BinaryMatrix> {
        if self.done {
            return None;
        }
        let out = self
            .product
            .compose(self.pattern, &self.choices)
            .expect("product blocks were validated");
        // odometer step, least significant cell last
        let mut cell = self.choices.len();
        loop {
            if cell == 0 {
                self.pattern += 1;
                if self.pattern == self.product.patterns.len() {
                    self.done = true;
                } else {
                    self.choices.iter_mut().for_each(|c| *c = 0);
                }
                break;
            }
            cell -= 1;
            self.choices[cell] += 1;
            if self.choices[cell] < self.product.radix(self.pattern, cell) {
                break;
            }
            self.choices[cell] = 0;
        }
        Some(out)
    }
}

/// Product with `D1 = {I2}`, `D2` the even or odd `A(k,2)` antichain and
/// `D3` its complements; lands in `A(2k,k)`.
pub fn half_regular_product(k: usize) -> Result<ProductAntichain> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "half-regular construction needs k >= 2, got {k}"
        )));
    }
    let inner = if k % 2 == 0 {
        even_antichain(k)?
    } else {
        odd_antichain(k)?
    };
    let zeros = complement_antichain(&inner.members);
    product_antichain(
        &[BinaryMatrix::identity(2)?],
        &inner.members,
        &zeros,
        ProductOptions {
            allow_degenerate_case1: true,
        },
    )
}

pub fn half_regular_antichain(k: usize) -> Result<ConstructedAntichain> {
    let product = half_regular_product(k)?;
    product.into_constructed(
        Provenance::HalfRegular,
        g_bound(k as u64)?,
        DEFAULT_MATERIALIZE_CAP,
    )
}

/// Product with `D1` the 13-member level `nu = 8` of `A(4,2)`, `D2` the even
/// `A(k/2,2)` antichain and `D3` its complements; lands in `A(2k,k)`.
pub fn remark_improved_product(k: usize) -> Result<ProductAntichain> {
    if k == 0 || k % 4 != 0 {
        return Err(Error::Parity {
            what: "improved half-regular construction",
            expected: "a positive multiple of 4 as",
            n: k,
        });
    }
    let patterns = nu_level(&Margins::regular(4, 2), 8)?;
    let inner = even_antichain(k / 2)?;
    let zeros = complement_antichain(&inner.members);
    product_antichain(&patterns, &inner.members, &zeros, ProductOptions::default())
}

pub fn remark_improved_antichain(k: usize) -> Result<ConstructedAntichain> {
    let product = remark_improved_product(k)?;
    product.into_constructed(
        Provenance::RemarkImproved,
        remark_bound(k as u64),
        DEFAULT_MATERIALIZE_CAP,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{verify_antichain, VerifyMode};

    fn pair_scan_nu(a: &BinaryMatrix) -> u64 {
        let ones: Vec<(i64, i64)> = (0..a.rows())
            .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
            .filter(|&(i, j)| a.get(i, j))
            .map(|(i, j)| (i as i64, j as i64))
            .collect();
        let mut c = 0;
        for x in 0..ones.len() {
            for y in x + 1..ones.len() {
                if (ones[x].0 - ones[y].0) * (ones[x].1 - ones[y].1) < 0 {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn even_examples() {
        let d = even_antichain(2).unwrap();
        assert_eq!(d.members, vec![BinaryMatrix::ones(2, 2).unwrap()]);
        assert_eq!(d.predicted_nu, Some(1));

        let d = even_antichain(4).unwrap();
        assert_eq!(d.len(), 6);
        assert!(d.members.iter().all(|a| pair_scan_nu(a) == 10));
        assert!(d.audit().is_empty());

        let d = even_antichain(6).unwrap();
        assert_eq!(d.len(), 90);
        assert_eq!(d.predicted_nu, Some(27));
        assert!(d.audit().is_empty());
        assert!(d.members.iter().all(BinaryMatrix::is_self_conjugate));

        assert!(matches!(even_antichain(5), Err(Error::Parity { .. })));
        assert!(even_antichain(0).is_err());
    }

    #[test]
    fn odd_examples() {
        let d = odd_antichain(3).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(
            d.members[0],
            BinaryMatrix::from_strs(&["101", "110", "011"]).unwrap()
        );
        assert!(d.members.iter().all(|a| pair_scan_nu(a) == 3));

        let d = odd_antichain(5).unwrap();
        assert_eq!(d.len(), 12);
        assert!(d.members.iter().all(|a| pair_scan_nu(a) == 14));
        assert!(d.audit().is_empty());

        let d = odd_antichain(7).unwrap();
        assert_eq!(d.len(), 180);
        assert!(d.members.iter().all(|a| pair_scan_nu(a) == 33));
        assert!(d.audit().is_empty());

        assert!(matches!(odd_antichain(4), Err(Error::Parity { .. })));
        assert!(odd_antichain(1).is_err());
    }

    #[test]
    fn odd_families_are_disjoint() {
        for n in [3, 5, 7] {
            let d = odd_antichain(n).unwrap();
            let plain: HashSet<_> = d.members.iter().step_by(2).collect();
            let rotated: HashSet<_> = d.members.iter().skip(1).step_by(2).collect();
            assert!(plain.is_disjoint(&rotated));
            // A_C has its last column equal to e_1 + e_n; A_C' has that in column 1
            assert!(d
                .members
                .iter()
                .step_by(2)
                .all(|a| a.get(0, n - 1) && a.get(n - 1, n - 1)));
            assert!(d
                .members
                .iter()
                .skip(1)
                .step_by(2)
                .all(|a| a.get(0, 0) && a.get(n - 1, 0)));
        }
    }

    #[test]
    fn complement_examples() {
        let i2 = BinaryMatrix::identity(2).unwrap();
        assert_eq!(
            complement_antichain(&[i2.clone()]),
            vec![BinaryMatrix::anti_identity(2).unwrap()]
        );
        let d = odd_antichain(3).unwrap();
        let c = complement_antichain(&d.members);
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|a| a.margins() == Margins::regular(3, 1)));
        assert_eq!(complement_antichain(&c), d.members);
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(f_bound(3).unwrap(), BigUint::from(2u32));
        assert_eq!(f_bound(4).unwrap(), BigUint::from(6u32));
        assert_eq!(f_bound(6).unwrap(), BigUint::from(90u32));
        assert_eq!(f_bound(7).unwrap(), BigUint::from(180u32));
        assert_eq!(g_bound(2).unwrap(), BigUint::from(1u32));
        assert_eq!(g_bound(3).unwrap(), BigUint::from(16u32));
        assert_eq!(g_bound(4).unwrap(), BigUint::from(1296u32));
        assert_eq!(remark_bound(4), BigUint::from(13u32));
        assert_eq!(
            remark_bound(12),
            BigUint::from(13u32) * BigUint::from(90u32).pow(16)
        );
    }

    #[test]
    fn product_of_i2_with_odd_three() {
        let d2 = odd_antichain(3).unwrap().members;
        let d3 = complement_antichain(&d2);
        let prod = product_antichain(
            &[BinaryMatrix::identity(2).unwrap()],
            &d2,
            &d3,
            ProductOptions::default(),
        )
        .unwrap();
        assert_eq!(prod.block_totals(), (6, 3));
        assert_eq!(prod.pattern_ones(), 2);
        assert_eq!(prod.len(), &BigUint::from(16u32));
        assert_eq!(prod.margins(), &Margins::regular(6, 3));
        let members = prod.materialize(100).unwrap();
        assert_eq!(members.len(), 16);
        assert!(verify_antichain(&members, VerifyMode::Exhaustive)
            .unwrap()
            .is_verified());
        for (idx, x) in members.iter().enumerate() {
            assert_eq!(&prod.member_u128(idx as u128).unwrap(), x);
        }
    }

    #[test]
    fn degenerate_singleton_product() {
        let one = BinaryMatrix::ones(1, 1).unwrap();
        let a = BinaryMatrix::from_strs(&["110", "011", "101"]).unwrap();
        let z = BinaryMatrix::zeros(3, 3).unwrap();
        let prod =
            product_antichain(&[one], &[a.clone()], &[z], ProductOptions::default()).unwrap();
        assert_eq!(prod.materialize(10).unwrap(), vec![a]);
    }

    #[test]
    fn hypothesis_is_enforced() {
        let d2 = even_antichain(4).unwrap().members;
        let d3 = complement_antichain(&d2);
        let i2 = BinaryMatrix::identity(2).unwrap();
        let l2 = BinaryMatrix::anti_identity(2).unwrap();
        let err = product_antichain(
            &[i2.clone(), l2.clone()],
            &d2,
            &d3,
            ProductOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Hypothesis(8)));
        // the override only applies to singleton patterns
        let opts = ProductOptions {
            allow_degenerate_case1: true,
        };
        assert!(matches!(
            product_antichain(&[i2.clone(), l2], &d2, &d3, opts),
            Err(Error::Hypothesis(8))
        ));
        assert!(matches!(
            product_antichain(&[i2.clone()], &d2, &d3, ProductOptions::default()),
            Err(Error::Hypothesis(8))
        ));
        assert!(product_antichain(&[i2], &d2, &d3, opts).is_ok());
    }

    #[test]
    fn product_input_errors() {
        let i2 = BinaryMatrix::identity(2).unwrap();
        let j3 = BinaryMatrix::ones(3, 3).unwrap();
        let z2 = BinaryMatrix::zeros(2, 2).unwrap();
        assert!(matches!(
            product_antichain(
                &[i2.clone()],
                &[j3],
                &[z2.clone()],
                ProductOptions::default()
            ),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            product_antichain(&[], &[i2.clone()], &[z2.clone()], ProductOptions::default()),
            Err(Error::EmptyInput(_))
        ));
        let j2 = BinaryMatrix::ones(2, 2).unwrap();
        assert!(matches!(
            product_antichain(
                &[i2.clone(), j2.clone()],
                &[j2],
                &[z2],
                ProductOptions::default()
            ),
            Err(Error::ClassMismatch(_))
        ));
    }

    #[test]
    fn half_regular_examples() {
        let d = half_regular_antichain(2).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.margins, Margins::regular(4, 2));
        assert!(d.audit().is_empty());

        let d = half_regular_antichain(3).unwrap();
        assert_eq!(d.len(), 16);
        assert_eq!(d.margins, Margins::regular(6, 3));
        assert!(d.audit().is_empty());

        assert!(half_regular_antichain(1).is_err());
        assert!(half_regular_antichain(0).is_err());
    }

    #[test]
    fn remark_examples() {
        let d = remark_improved_antichain(4).unwrap();
        assert_eq!(d.len(), 13);
        assert_eq!(d.margins, Margins::regular(8, 4));
        assert!(d.audit().is_empty());
        assert!(verify_antichain(&d.members, VerifyMode::Exhaustive)
            .unwrap()
            .is_verified());

        assert!(matches!(
            remark_improved_antichain(8),
            Err(Error::Hypothesis(8))
        ));
        assert!(matches!(
            remark_improved_antichain(6),
            Err(Error::Parity { .. })
        ));

        let big = remark_improved_product(12).unwrap();
        assert_eq!(big.predicted_size(), remark_bound(12));
        assert!(big.materialize(1000).is_err());
        let x = big.member(&(remark_bound(12) - 1u32)).unwrap();
        assert_eq!(x.margins(), Margins::regular(24, 12));
    }

    #[test]
    fn iteration_matches_random_access_and_ranges() {
        let prod = half_regular_product(3).unwrap();
        let all: Vec<_> = prod.iter().collect();
        let part: Vec<_> = prod
            .range(&BigUint::from(5u32), &BigUint::from(11u32))
            .unwrap()
            .collect();
        assert_eq!(part, all[5..11].to_vec());
        assert!(prod.member(&BigUint::from(16u32)).is_err());
    }

    #[test]
    fn corner_and_difference_identities_small() {
        let prod = half_regular_product(3).unwrap();
        for idx in 0..16u32 {
            let x = prod.member(&BigUint::from(idx)).unwrap();
            assert_eq!(prod.check_corner_identity(&x, 0), None);
        }
        for (x, y) in [(0u32, 15u32), (3, 9)] {
            for alpha in 0..6 {
                for beta in 0..6 {
                    assert!(prod
                        .check_block_difference(&BigUint::from(x), &BigUint::from(y), alpha, beta)
                        .unwrap());
                }
            }
        }
    }
}
