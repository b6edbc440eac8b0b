//! Orbit counting for `S_n × S_r` acting on the `n·r` cells of a biadjacency
//! matrix.
//!
//! A pair of permutations with cycle types `λ ⊢ n` and `μ ⊢ r` splits the cells
//! into `Σ_{k,l} gcd(k,l)·c_k(λ)·c_l(μ)` cycles, so it fixes `2^that` matrices.
//! Averaging over the group, conjugacy class by conjugacy class, gives the
//! number of unlabeled bipartite graphs.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{factorial_big, Count};
use crate::error::{Error, Result};

/// Largest `n + r` accepted by [`burnside_unlabeled`].
pub const DEFAULT_PARTITION_LIMIT: u64 = 60;

/// A partition of `m`, viewed as the cycle type of a permutation in `S_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleType {
    /// Parts in non-increasing order.
    parts: Vec<usize>,
    /// `(k, c_k)` for every distinct part size `k`, ascending in `k`.
    multiplicities: Vec<(usize, usize)>,
    class_size: BigUint,
}

impl CycleType {
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "cycle lengths must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in &parts {
            *counts.entry(p).or_default() += 1;
        }
        let multiplicities: Vec<(usize, usize)> = counts.into_iter().collect();
        let m: usize = parts.iter().sum();
        // m! / Π k^{c_k} c_k!
        let mut centralizer = BigUint::from(1u32);
        for &(k, c) in &multiplicities {
            centralizer *= BigUint::from(k).pow(c as u32);
            centralizer *= factorial_big(c as u64);
        }
        let (class_size, rem) = factorial_big(m as u64).div_rem(&centralizer);
        debug_assert!(rem.is_zero());
        CycleType {
            parts,
            multiplicities,
            class_size,
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn multiplicities(&self) -> &[(usize, usize)] {
        &self.multiplicities
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of permutations in `S_m` with this cycle type.
    pub fn class_size(&self) -> &BigUint {
        &self.class_size
    }
}

/// All partitions of `m` in reverse lexicographic order, `[m]` first.
pub fn partitions(m: usize) -> Vec<CycleType> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(m, m, &mut current, &mut |parts| {
        out.push(CycleType::from_parts(parts.to_vec()))
    });
    out
}

fn fill_partitions(rest: usize, max_part: usize, current: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if rest == 0 {
        emit(current);
        return;
    }
    for part in (1..=max_part.min(rest)).rev() {
        current.push(part);
        fill_partitions(rest - part, part, current, emit);
        current.pop();
    }
}

/// `|B_u(n, r)|` by Burnside's lemma, with the default size limit.
pub fn burnside_unlabeled(n: u64, r: u64) -> Result<Count> {
    burnside_unlabeled_with_limit(n, r, DEFAULT_PARTITION_LIMIT)
}

pub fn burnside_unlabeled_with_limit(n: u64, r: u64, limit: u64) -> Result<Count> {
    if n.saturating_add(r) > limit {
        return Err(Error::LimitExceeded(format!(
            "Burnside sum for ({n},{r}) needs n + r <= {limit}"
        )));
    }
    let (n, r) = (n as usize, r as usize);
    let left = partitions(n);
    let right = partitions(r);
    let gcd = gcd_table(n.max(r));

    // Fixed points are grouped by exponent of two so each outer class does a
    // single round of big shifts.
    let total: BigUint = left
        .par_iter()
        .map(|lam| {
            let mut by_exponent: BTreeMap<usize, BigUint> = BTreeMap::new();
            for mu in &right {
                let e = cell_cycles(lam, mu, &gcd);
                *by_exponent.entry(e).or_default() += mu.class_size();
            }
            let inner = by_exponent
                .into_iter()
                .fold(BigUint::zero(), |acc, (e, w)| acc + (w << e));
            inner * lam.class_size()
        })
        .reduce(BigUint::zero, |a, b| a + b);

    let group_order = factorial_big(n as u64) * factorial_big(r as u64);
    let (q, rem) = total.div_rem(&group_order);
    if !rem.is_zero() {
        // Burnside's lemma guarantees divisibility; landing here is a bug.
        return Err(Error::NonIntegerResult(format!("{total}/{group_order}")));
    }
    Ok(Count::new(q))
}

/// Number of cycles the pair (λ, μ) induces on the grid of cells.
fn cell_cycles(lam: &CycleType, mu: &CycleType, gcd: &[Vec<usize>]) -> usize {
    let mut e = 0;
    for &(k, ck) in lam.multiplicities() {
        let row = &gcd[k];
        for &(l, cl) in mu.multiplicities() {
            e += row[l] * ck * cl;
        }
    }
    e
}

fn gcd_table(max: usize) -> Vec<Vec<usize>> {
    (0..=max)
        .map(|a| (0..=max).map(|b| a.gcd(&b)).collect())
        .collect()
}
