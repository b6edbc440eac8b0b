//! Brute-force ground truth: enumerate every `n × r` biadjacency matrix and
//! count equivalence classes directly.
//!
//! Two graphs are unlabeled-equivalent when one is a row-and-column permutation
//! of the other. The labeled families further require equal supports (the sets
//! of non-isolated vertices on the fixed side). Any isomorphism maps isolated
//! vertices to isolated vertices, so under a fixed support the class is
//! determined by the unlabeled class of the submatrix on that support; that
//! pair is the [`CanonicalKey`].

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Count;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::{permute_row, Biadjacency};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `n·r` that will be enumerated.
    pub max_bits: u32,
    /// Largest side whose permutations are tried during canonicalization.
    pub max_perm_side: usize,
    /// Number of disjoint index ranges the enumeration is split into.
    pub workers: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_bits: 16,
            max_perm_side: 6,
            workers: rayon::current_num_threads().max(1),
        }
    }
}

/// Permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..k).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

// Per-permutation lookup tables are used while k! · 2^k stays small.
const TABLE_SIDE: usize = 7;

/// Canonicalizer for matrices whose smaller side is at most `max_side`.
/// Permutation lists are built lazily per side length and reused.
#[derive(Debug)]
pub struct Canonicalizer {
    max_side: usize,
    perms: Vec<Option<Vec<Vec<usize>>>>,
    tables: Vec<Option<Vec<u64>>>,
    scratch: Vec<u64>,
}

impl Canonicalizer {
    pub fn new(max_side: usize) -> Self {
        Canonicalizer {
            max_side,
            perms: vec![None; max_side + 1],
            tables: vec![None; max_side.min(TABLE_SIDE) + 1],
            scratch: Vec::new(),
        }
    }

    /// Minimum over permutations of the smaller side of the row-sorted matrix.
    ///
    /// A matrix with fewer rows than columns is transposed first, so the
    /// result always has at least as many rows as columns.
    pub fn canonical_form(&mut self, m: &Biadjacency) -> Result<Biadjacency> {
        let m = if m.n() < m.r() { m.transpose() } else { m.clone() };
        let k = m.r();
        if k > self.max_side {
            return Err(Error::LimitExceeded(format!(
                "canonicalizing {}x{} needs {}! permutations; side budget is {}",
                m.n(),
                k,
                k,
                self.max_side
            )));
        }
        if m.n() == 0 || k == 0 {
            return Ok(m);
        }
        if self.perms[k].is_none() {
            self.perms[k] = Some(permutations(k));
        }
        let perms = self.perms[k].as_ref().unwrap();
        let mut best: Option<Vec<u64>> = None;
        let scratch = &mut self.scratch;

        if k <= TABLE_SIDE {
            if self.tables[k].is_none() {
                let width = 1usize << k;
                let mut table = vec![0u64; perms.len() * width];
                for (p, perm) in perms.iter().enumerate() {
                    for row in 0..width {
                        table[p * width + row] = permute_row(row as u64, k, perm);
                    }
                }
                self.tables[k] = Some(table);
            }
            let table = self.tables[k].as_ref().unwrap();
            let width = 1usize << k;
            for p in 0..perms.len() {
                let base = p * width;
                scratch.clear();
                scratch.extend(m.rows().iter().map(|&row| table[base + row as usize]));
                keep_min(&mut best, scratch);
            }
        } else {
            for perm in perms {
                scratch.clear();
                scratch.extend(m.rows().iter().map(|&row| permute_row(row, k, perm)));
                keep_min(&mut best, scratch);
            }
        }
        Biadjacency::from_rows(m.n(), k, best.unwrap())
    }

    pub fn classify(&mut self, m: &Biadjacency, family: Family) -> Result<CanonicalKey> {
        let all_rows = full_mask(m.n());
        let all_cols = full_mask(m.r());
        let support_rows = family.fixes_left_support().then(|| m.row_support());
        let support_cols = family.fixes_right_support().then(|| m.col_support());
        let sub = if support_rows.is_some() || support_cols.is_some() {
            m.restrict(support_rows.unwrap_or(all_rows), support_cols.unwrap_or(all_cols))
        } else {
            m.clone()
        };
        Ok(CanonicalKey {
            family,
            n: m.n(),
            r: m.r(),
            support_rows,
            support_cols,
            canon: self.canonical_form(&sub)?,
        })
    }
}

fn keep_min(best: &mut Option<Vec<u64>>, candidate: &mut [u64]) {
    candidate.sort_unstable();
    match best {
        Some(b) if b.as_slice() <= &*candidate => {}
        _ => *best = Some(candidate.to_vec()),
    }
}

fn full_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Class identity of a matrix under one family's equivalence.
///
/// Two matrices of the same shape are equivalent exactly when their keys are
/// equal. Supports are bitmasks (bit `i` = vertex `i`) and are present only for
/// the sides the family fixes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub family: Family,
    pub n: usize,
    pub r: usize,
    pub support_rows: Option<u64>,
    pub support_cols: Option<u64>,
    pub canon: Biadjacency,
}

/// Canonical form with the default side budget.
pub fn canonical_form(m: &Biadjacency) -> Result<Biadjacency> {
    Canonicalizer::new(OracleConfig::default().max_perm_side).canonical_form(m)
}

/// Class key with the default side budget.
pub fn classify(m: &Biadjacency, family: Family) -> Result<CanonicalKey> {
    Canonicalizer::new(OracleConfig::default().max_perm_side).classify(m, family)
}

/// Which matrices [`enumerate_reduced`] keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedKind {
    /// No zero row.
    Left,
    /// No zero row and no zero column.
    Both,
}

fn check_budget(n: usize, r: usize, cfg: &OracleConfig) -> Result<()> {
    let bits = n * r;
    if bits > cfg.max_bits as usize || bits > 62 {
        return Err(Error::LimitExceeded(format!(
            "enumerating {n}x{r} needs 2^{bits} matrices; bit budget is {}",
            cfg.max_bits
        )));
    }
    if n.min(r) > cfg.max_perm_side {
        return Err(Error::LimitExceeded(format!(
            "canonicalizing {n}x{r} needs {}! permutations; side budget is {}",
            n.min(r),
            cfg.max_perm_side
        )));
    }
    Ok(())
}

/// Splits `0..total` into `parts` contiguous ranges.
fn ranges(total: u64, parts: usize) -> Vec<(u64, u64)> {
    let parts = (parts.max(1) as u64).min(total.max(1));
    let step = total.div_ceil(parts);
    (0..parts)
        .map(|p| (p * step, ((p + 1) * step).min(total)))
        .filter(|(a, b)| a < b)
        .collect()
}

/// Runs `visit` over every matrix index, one canonicalizer per range, and
/// unions the per-range key sets.
fn collect_keys<F>(n: usize, r: usize, cfg: &OracleConfig, visit: F) -> Result<HashSet<CanonicalKey>>
where
    F: Fn(&mut Canonicalizer, &Biadjacency) -> Result<Option<CanonicalKey>> + Sync,
{
    check_budget(n, r, cfg)?;
    let total = 1u64 << (n * r);
    ranges(total, cfg.workers)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut canon = Canonicalizer::new(cfg.max_perm_side);
            let mut keys = HashSet::new();
            for index in lo..hi {
                let m = Biadjacency::from_index(n, r, index);
                if let Some(key) = visit(&mut canon, &m)? {
                    keys.insert(key);
                }
            }
            Ok(keys)
        })
        .try_reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            Ok(a)
        })
}

/// Number of classes of `n × r` matrices under the family's equivalence.
pub fn enumerate_counts(n: usize, r: usize, family: Family, cfg: &OracleConfig) -> Result<Count> {
    let keys = collect_keys(n, r, cfg, |canon, m| canon.classify(m, family).map(Some))?;
    Ok(Count::from(keys.len() as u64))
}

/// Number of unlabeled classes among matrices with no zero row (`Left`) or with
/// no zero row and no zero column (`Both`).
pub fn enumerate_reduced(i: usize, j: usize, kind: ReducedKind, cfg: &OracleConfig) -> Result<Count> {
    let keys = collect_keys(i, j, cfg, |canon, m| {
        let keep = match kind {
            ReducedKind::Left => !m.has_zero_row(),
            ReducedKind::Both => !m.has_zero_row() && !m.has_zero_col(),
        };
        if keep {
            canon.classify(m, Family::U).map(Some)
        } else {
            Ok(None)
        }
    })?;
    Ok(Count::from(keys.len() as u64))
}

/// One class, represented by its lexicographically smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassRepresentative {
    pub family: Family,
    pub n: usize,
    pub r: usize,
    pub support_rows: Option<Vec<usize>>,
    pub support_cols: Option<Vec<usize>>,
    /// Row-major bit string of the representative.
    pub bits: String,
}

/// Every class of `n × r` matrices under the family's equivalence, ordered by
/// representative bit string.
pub fn enumerate_classes(
    n: usize,
    r: usize,
    family: Family,
    cfg: &OracleConfig,
) -> Result<Vec<ClassRepresentative>> {
    check_budget(n, r, cfg)?;
    let total = 1u64 << (n * r);
    let firsts: BTreeMap<CanonicalKey, u64> = ranges(total, cfg.workers)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut canon = Canonicalizer::new(cfg.max_perm_side);
            let mut firsts = BTreeMap::new();
            for index in lo..hi {
                let key = canon.classify(&Biadjacency::from_index(n, r, index), family)?;
                firsts.entry(key).or_insert(index);
            }
            Ok(firsts)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (key, index) in b {
                let slot = a.entry(key).or_insert(index);
                *slot = (*slot).min(index);
            }
            Ok(a)
        })?;

    let mut indices: Vec<u64> = firsts.into_values().collect();
    indices.sort_unstable();
    Ok(indices
        .into_iter()
        .map(|index| {
            let m = Biadjacency::from_index(n, r, index);
            ClassRepresentative {
                family,
                n,
                r,
                support_rows: family.fixes_left_support().then(|| mask_indices(m.row_support())),
                support_cols: family.fixes_right_support().then(|| mask_indices(m.col_support())),
                bits: m.bit_string(),
            }
        })
        .collect())
}

fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    fn m(s: &str) -> Biadjacency {
        Biadjacency::parse(s).unwrap()
    }

    #[test]
    fn permutation_lists() {
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(5).len(), 120);
    }

    #[test]
    fn canonical_form_examples() {
        assert_eq!(canonical_form(&m("01/10")).unwrap(), m("01/10"));
        assert_eq!(canonical_form(&m("10/01")).unwrap(), m("01/10"));
        assert_eq!(canonical_form(&m("000/000")).unwrap(), m("00/00/00"));
        assert_eq!(canonical_form(&m("11/00")).unwrap(), m("00/11"));
    }

    #[test]
    fn side_budget_is_enforced() {
        let big = Biadjacency::zero(8, 8).unwrap();
        assert!(matches!(
            Canonicalizer::new(6).canonical_form(&big),
            Err(Error::LimitExceeded(_))
        ));
        // Large side beyond the lookup-table size still works.
        let mut wide = Biadjacency::zero(8, 8).unwrap();
        wide.set(0, 7, true);
        let canon = Canonicalizer::new(8).canonical_form(&wide).unwrap();
        assert_eq!(canon.rows().iter().filter(|&&row| row != 0).count(), 1);
        assert_eq!(*canon.rows().last().unwrap(), 1);
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        assert!(matches!(
            enumerate_counts(4, 5, Family::U, &cfg()),
            Err(Error::LimitExceeded(_))
        ));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_counts(2, 2, Family::U, &cfg()).unwrap(), 7);
        assert_eq!(enumerate_counts(3, 2, Family::X, &cfg()).unwrap(), 25);
        assert_eq!(enumerate_counts(3, 2, Family::XY, &cfg()).unwrap(), 32);
        assert_eq!(enumerate_counts(0, 3, Family::XY, &cfg()).unwrap(), 1);
    }

    #[test]
    fn enumerate_reduced_examples() {
        assert_eq!(enumerate_reduced(2, 2, ReducedKind::Left, &cfg()).unwrap(), 4);
        assert_eq!(enumerate_reduced(2, 2, ReducedKind::Both, &cfg()).unwrap(), 3);
        for j in 1..=8 {
            assert_eq!(enumerate_reduced(1, j, ReducedKind::Both, &cfg()).unwrap(), 1);
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        for workers in [1, 2, 3, 7, 64] {
            let c = OracleConfig { workers, ..cfg() };
            assert_eq!(enumerate_counts(3, 3, Family::XY, &c).unwrap(), 108);
            assert_eq!(enumerate_counts(3, 3, Family::U, &c).unwrap(), 36);
            assert_eq!(enumerate_classes(2, 2, Family::X, &c).unwrap().len(), 9);
        }
    }

    #[test]
    fn class_dump_for_two_by_two() {
        let classes = enumerate_classes(2, 2, Family::U, &cfg()).unwrap();
        let bits: Vec<_> = classes.iter().map(|c| c.bits.as_str()).collect();
        assert_eq!(bits, ["0000", "0001", "0011", "0101", "0110", "0111", "1111"]);
        assert!(classes.iter().all(|c| c.support_rows.is_none()));

        let xy = enumerate_classes(1, 2, Family::XY, &cfg()).unwrap();
        assert_eq!(xy.len(), 4);
        assert_eq!(xy[1].support_rows, Some(vec![0]));
        assert_eq!(xy[1].support_cols, Some(vec![1]));
        let json = serde_json::to_string(&xy[1]).unwrap();
        assert_eq!(
            json,
            r#"{"family":"xy","n":1,"r":2,"supportRows":[0],"supportCols":[1],"bits":"01"}"#
        );
    }
}
