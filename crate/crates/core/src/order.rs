//! Bruhat and secondary Bruhat orders on a class `A(R,S)`, plus antichain
//! certificates.
//!
//! `A <=_B C` iff `sigma_ij(A) >= sigma_ij(C)` for every position: matrices
//! lower in the order have their ones pushed towards the top-left.

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, Margins, SigmaTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderRelation {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl OrderRelation {
    pub fn is_comparable(self) -> bool {
        self != OrderRelation::Incomparable
    }

    pub fn reverse(self) -> Self {
        match self {
            OrderRelation::Less => OrderRelation::Greater,
            OrderRelation::Greater => OrderRelation::Less,
            other => other,
        }
    }
}

/// Compares two Sigma tables in one fused pass, stopping as soon as both
/// domination directions have been violated.
///
/// Equal tables mean equal matrices, since entries are recovered from Sigma
/// by inclusion-exclusion.
#[inline]
pub fn compare_sigma(a: &SigmaTable, c: &SigmaTable) -> OrderRelation {
    let mut a_ge = true;
    let mut c_ge = true;
    for (&x, &y) in a.values().iter().zip(c.values()) {
        if x < y {
            a_ge = false;
            if !c_ge {
                return OrderRelation::Incomparable;
            }
        } else if x > y {
            c_ge = false;
            if !a_ge {
                return OrderRelation::Incomparable;
            }
        }
    }
    match (a_ge, c_ge) {
        (true, true) => OrderRelation::Equal,
        (true, false) => OrderRelation::Less,
        (false, true) => OrderRelation::Greater,
        (false, false) => OrderRelation::Incomparable,
    }
}

fn ensure_same_class(a: &BinaryMatrix, c: &BinaryMatrix) -> Result<()> {
    if a.dims() != c.dims() {
        return Err(Error::ClassMismatch(format!(
            "dimensions {:?} vs {:?}",
            a.dims(),
            c.dims()
        )));
    }
    let (ma, mc) = (a.margins(), c.margins());
    if ma != mc {
        return Err(Error::ClassMismatch(format!("{ma} vs {mc}")));
    }
    Ok(())
}

/// Relation of `a` to `c` in the Bruhat order of their common class.
pub fn bruhat_compare(a: &BinaryMatrix, c: &BinaryMatrix) -> Result<OrderRelation> {
    ensure_same_class(a, c)?;
    Ok(compare_sigma(&a.sigma_table(), &c.sigma_table()))
}

/// All matrices reachable from `a` by one `I2 -> L2` interchange.
///
/// Rows `i < k`, columns `j < l` with ones at `(i,j), (k,l)` and zeros at
/// `(i,l), (k,j)` become ones at `(i,l), (k,j)`.
pub fn interchange_successors(a: &BinaryMatrix) -> Vec<BinaryMatrix> {
    let (m, n) = a.dims();
    let mut out = Vec::new();
    for i in 0..m {
        let ri = a.row_bits(i);
        for k in i + 1..m {
            let rk = a.row_bits(k);
            // j: one in row i, zero in row k; l > j: zero in row i, one in row k.
            let js = ri & !rk;
            let ls = rk & !ri;
            let mut jm = js;
            while jm != 0 {
                let j = jm.trailing_zeros() as usize;
                jm &= jm - 1;
                let mut lm = if j + 1 >= 64 {
                    0
                } else {
                    ls & !((1u64 << (j + 1)) - 1)
                };
                while lm != 0 {
                    let l = lm.trailing_zeros() as usize;
                    lm &= lm - 1;
                    debug_assert!(l < n);
                    let mut b = a.clone();
                    let swap = (1u64 << j) | (1u64 << l);
                    b.set_row_bits(i, ri ^ swap);
                    b.set_row_bits(k, rk ^ swap);
                    out.push(b);
                }
            }
        }
    }
    out
}

/// Default node cap for the secondary-order closure search.
pub const DEFAULT_SECONDARY_NODE_CAP: usize = 10_000_000;

/// Decides `a <=_B^ c`: is `c` reachable from `a` by `I2 -> L2` interchanges?
///
/// Breadth-first closure. Intermediates with more inversions than `c`, or not
/// Bruhat-below `c`, are discarded since every interchange moves strictly up
/// in both.
pub fn secondary_leq(a: &BinaryMatrix, c: &BinaryMatrix) -> Result<bool> {
    secondary_leq_capped(a, c, DEFAULT_SECONDARY_NODE_CAP)
}

pub fn secondary_leq_capped(a: &BinaryMatrix, c: &BinaryMatrix, node_cap: usize) -> Result<bool> {
    ensure_same_class(a, c)?;
    if a == c {
        return Ok(true);
    }
    let target_sigma = c.sigma_table();
    let target_nu = c.inversions();
    if compare_sigma(&a.sigma_table(), &target_sigma) != OrderRelation::Less {
        return Ok(false);
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(a.as_row_bits().to_vec());
    queue.push_back(a.clone());
    while let Some(x) = queue.pop_front() {
        for y in interchange_successors(&x) {
            if y == *c {
                return Ok(true);
            }
            if y.inversions() >= target_nu {
                continue;
            }
            if compare_sigma(&y.sigma_table(), &target_sigma) != OrderRelation::Less {
                continue;
            }
            if seen.insert(y.as_row_bits().to_vec()) {
                if seen.len() > node_cap {
                    return Err(Error::ResourceLimit {
                        what: "secondary Bruhat closure nodes",
                        limit: node_cap as u128,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    /// Check this many uniformly random unordered pairs, drawn from the seed.
    Sampled {
        pairs: u64,
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateStatus {
    Verified,
    Refuted,
    Sampled,
}

/// Outcome of an antichain check. Serializes as
/// `{"members", "checked_pairs", "status", "witness", "seed"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntichainCertificate {
    pub members: u64,
    pub checked_pairs: u64,
    pub status: CertificateStatus,
    /// Indices `[i, j]` (`i < j`) of a comparable pair when refuted.
    pub witness: Option<[u64; 2]>,
    pub seed: Option<u64>,
    /// Relation of `witness[0]` to `witness[1]`.
    #[serde(skip)]
    pub witness_relation: Option<OrderRelation>,
}

impl AntichainCertificate {
    pub fn is_verified(&self) -> bool {
        self.status == CertificateStatus::Verified
    }

    pub fn is_refuted(&self) -> bool {
        self.status == CertificateStatus::Refuted
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

/// Members together with their cached Sigma tables, all in one class.
pub struct SigmaBatch {
    margins: Margins,
    sigmas: Vec<SigmaTable>,
}

impl SigmaBatch {
    pub fn new(members: &[BinaryMatrix]) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::EmptyInput("no members".into()))?;
        let margins = first.margins();
        for (idx, a) in members.iter().enumerate().skip(1) {
            if a.dims() != first.dims() || a.margins() != margins {
                return Err(Error::ClassMismatch(format!(
                    "member {} has margins {} but member 1 has {margins}",
                    idx + 1,
                    a.margins()
                )));
            }
        }
        let sigmas = members.par_iter().map(SigmaTable::of).collect();
        Ok(SigmaBatch { margins, sigmas })
    }

    pub fn margins(&self) -> &Margins {
        &self.margins
    }

    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigmas.is_empty()
    }

    pub fn sigma(&self, i: usize) -> &SigmaTable {
        &self.sigmas[i]
    }

    #[inline]
    pub fn compare(&self, i: usize, j: usize) -> OrderRelation {
        compare_sigma(&self.sigmas[i], &self.sigmas[j])
    }
}

/// Certifies that `members` are pairwise incomparable.
///
/// Exhaustive mode walks pairs in lexicographic index order in parallel and
/// reports the lexicographically first comparable pair; `checked_pairs` is
/// then the number of pairs up to and including the witness. Duplicates
/// refute with relation `Equal`.
pub fn verify_antichain(
    members: &[BinaryMatrix],
    mode: VerifyMode,
) -> Result<AntichainCertificate> {
    let batch = SigmaBatch::new(members)?;
    Ok(verify_batch(&batch, mode))
}

pub fn verify_batch(batch: &SigmaBatch, mode: VerifyMode) -> AntichainCertificate {
    let n = batch.len() as u64;
    let total_pairs = n * n.saturating_sub(1) / 2;
    match mode {
        VerifyMode::Exhaustive => {
            let found = (0..batch.len()).into_par_iter().find_map_first(|i| {
                (i + 1..batch.len()).find_map(|j| {
                    let rel = batch.compare(i, j);
                    rel.is_comparable().then_some((i, j, rel))
                })
            });
            match found {
                None => AntichainCertificate {
                    members: n,
                    checked_pairs: total_pairs,
                    status: CertificateStatus::Verified,
                    witness: None,
                    seed: None,
                    witness_relation: None,
                },
                Some((i, j, rel)) => {
                    let (i64_, j64) = (i as u64, j as u64);
                    // pairs (p, q) with p < i, plus (i, i+1..=j)
                    let before = i64_ * n - i64_ * (i64_ + 1) / 2;
                    AntichainCertificate {
                        members: n,
                        checked_pairs: before + (j64 - i64_),
                        status: CertificateStatus::Refuted,
                        witness: Some([i64_, j64]),
                        seed: None,
                        witness_relation: Some(rel),
                    }
                }
            }
        }
        VerifyMode::Sampled { pairs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut checked = 0u64;
            let mut status = CertificateStatus::Sampled;
            let mut witness = None;
            let mut witness_relation = None;
            if n >= 2 {
                for _ in 0..pairs {
                    let i = rng.gen_range(0..n as usize);
                    let mut j = rng.gen_range(0..n as usize - 1);
                    if j >= i {
                        j += 1;
                    }
                    let (i, j) = (i.min(j), i.max(j));
                    checked += 1;
                    let rel = batch.compare(i, j);
                    if rel.is_comparable() {
                        status = CertificateStatus::Refuted;
                        witness = Some([i as u64, j as u64]);
                        witness_relation = Some(rel);
                        break;
                    }
                }
            }
            AntichainCertificate {
                members: n,
                checked_pairs: checked,
                status,
                witness,
                seed: Some(seed),
                witness_relation,
            }
        }
    }
}

/// Sampled check over a member source with random access, for antichains too
/// large to materialize.
pub fn verify_sampled_by_index<F>(
    len: u128,
    pairs: u64,
    seed: u64,
    mut member: F,
) -> Result<AntichainCertificate>
where
    F: FnMut(u128) -> Result<BinaryMatrix>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0u64;
    let mut cert = AntichainCertificate {
        members: u64::try_from(len).unwrap_or(u64::MAX),
        checked_pairs: 0,
        status: CertificateStatus::Sampled,
        witness: None,
        seed: Some(seed),
        witness_relation: None,
    };
    if len < 2 {
        return Ok(cert);
    }
    for _ in 0..pairs {
        let i = rng.gen_range(0..len);
        let mut j = rng.gen_range(0..len - 1);
        if j >= i {
            j += 1;
        }
        let (i, j) = (i.min(j), i.max(j));
        let a = member(i)?;
        let c = member(j)?;
        let rel = bruhat_compare(&a, &c)?;
        checked += 1;
        if rel.is_comparable() {
            cert.status = CertificateStatus::Refuted;
            cert.witness = Some([
                u64::try_from(i).unwrap_or(u64::MAX),
                u64::try_from(j).unwrap_or(u64::MAX),
            ]);
            cert.witness_relation = Some(rel);
            break;
        }
    }
    cert.checked_pairs = checked;
    Ok(cert)
}
