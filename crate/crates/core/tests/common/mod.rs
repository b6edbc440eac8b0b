#![allow(dead_code)]

use std::collections::BTreeSet;

use bipartite_count::{Biadjacency, Family};
use proptest::prelude::*;

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for slot in 0..k {
            let mut q = p.clone();
            q.insert(slot, k - 1);
            out.push(q);
        }
    }
    out
}

/// Every matrix reachable from `m` by some row and column permutation whose
/// result has the supports the family requires, as row-major indices.
pub fn explicit_orbit(m: &Biadjacency, family: Family) -> BTreeSet<String> {
    let mut orbit = BTreeSet::new();
    for alpha in permutations(m.n()) {
        for beta in permutations(m.r()) {
            let p = m.permute(&alpha, &beta);
            let rows_ok = !family.fixes_left_support() || p.row_support() == m.row_support();
            let cols_ok = !family.fixes_right_support() || p.col_support() == m.col_support();
            if rows_ok && cols_ok {
                orbit.insert(p.bit_string());
            }
        }
    }
    orbit
}

/// A permutation of `0..k` that maps the set bits of `mask` onto themselves.
pub fn support_preserving(k: usize, mask: u64) -> impl Strategy<Value = Vec<usize>> {
    let inside: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
    let outside: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 0).collect();
    (Just(inside.clone()).prop_shuffle(), Just(outside.clone()).prop_shuffle()).prop_map(
        move |(a, b)| {
            let mut perm = vec![0; k];
            for (slot, src) in inside.iter().zip(a) {
                perm[*slot] = src;
            }
            for (slot, src) in outside.iter().zip(b) {
                perm[*slot] = src;
            }
            perm
        },
    )
}

/// A matrix with up to `max_side` rows and columns.
pub fn matrix(max_side: usize) -> impl Strategy<Value = Biadjacency> {
    (1..=max_side, 1..=max_side).prop_flat_map(|(n, r)| {
        (0..1u64 << (n * r)).prop_map(move |index| Biadjacency::from_index(n, r, index))
    })
}

/// A matrix together with an arbitrary row and column permutation.
pub fn matrix_with_perms(max_side: usize) -> impl Strategy<Value = (Biadjacency, Vec<usize>, Vec<usize>)> {
    matrix(max_side).prop_flat_map(|m| {
        let rows = Just((0..m.n()).collect::<Vec<_>>()).prop_shuffle();
        let cols = Just((0..m.r()).collect::<Vec<_>>()).prop_shuffle();
        (Just(m), rows, cols)
    })
}

/// A matrix together with a permutation pair that fixes both supports.
pub fn matrix_with_support_perms(max_side: usize) -> impl Strategy<Value = (Biadjacency, Vec<usize>, Vec<usize>)> {
    matrix(max_side).prop_flat_map(|m| {
        let rows = support_preserving(m.n(), m.row_support());
        let cols = support_preserving(m.r(), m.col_support());
        (Just(m), rows, cols)
    })
}
