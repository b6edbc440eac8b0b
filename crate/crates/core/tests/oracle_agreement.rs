mod common;

use bipartite_count::arith::choose;
use bipartite_count::formulas::{self, count_via_burnside};
use bipartite_count::oracle::{enumerate_classes, enumerate_counts, enumerate_reduced, Canonicalizer, ReducedKind};
use bipartite_count::{classify, Biadjacency, Count, Family, OracleConfig};
use num_bigint::BigUint;

fn cells(max_bits: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 0..=max_bits {
        for r in 0..=max_bits {
            if n * r <= max_bits && n.max(r) <= 6 {
                out.push((n as usize, r as usize));
            }
        }
    }
    out
}

#[test]
fn classify_matches_explicit_permutation_search() {
    let mut canon = Canonicalizer::new(6);
    for n in 1..=3usize {
        for r in 1..=3usize {
            let all: Vec<Biadjacency> = (0..1u64 << (n * r)).map(|i| Biadjacency::from_index(n, r, i)).collect();
            for family in Family::ALL {
                let keys: Vec<_> = all.iter().map(|m| canon.classify(m, family).unwrap()).collect();
                for (a, m) in all.iter().enumerate() {
                    let orbit = common::explicit_orbit(m, family);
                    for (b, other) in all.iter().enumerate() {
                        assert_eq!(
                            keys[a] == keys[b],
                            orbit.contains(&other.bit_string()),
                            "{family} {m:?} vs {other:?}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn oracle_matches_formulas() {
    let cfg = OracleConfig::default();
    for (n, r) in cells(12) {
        for family in Family::ALL {
            let brute = enumerate_counts(n, r, family, &cfg).unwrap();
            let (count, _) = formulas::count(family, n as u64, r as u64).unwrap();
            assert_eq!(brute, count, "{family} ({n},{r})");
            assert_eq!(brute, count_via_burnside(family, n as u64, r as u64).unwrap());
        }
    }
}

#[test]
fn oracle_reduced_counts_match() {
    let cfg = OracleConfig::default();
    for (i, j) in cells(12) {
        if i == 0 || j == 0 {
            continue;
        }
        let left = enumerate_reduced(i, j, ReducedKind::Left, &cfg).unwrap();
        assert_eq!(left, formulas::reduced_left(i as u64, j as u64).unwrap(), "({i},{j})");
        let both = enumerate_reduced(i, j, ReducedKind::Both, &cfg).unwrap();
        assert_eq!(both, formulas::reduced_both(i as u64, j as u64).unwrap(), "({i},{j})");
    }
}

#[test]
fn decomposition_identities_hold_on_oracle_values() {
    let cfg = OracleConfig::default();
    for (n, r) in cells(12) {
        let mut left = BigUint::from(1u32);
        let mut both = BigUint::from(1u32);
        for i in 1..=n {
            let reduced = enumerate_reduced(i, r, ReducedKind::Left, &cfg).unwrap();
            left += choose(n as u64, i as u64) * reduced.value();
            for j in 1..=r {
                let reduced = enumerate_reduced(i, j, ReducedKind::Both, &cfg).unwrap();
                both += choose(n as u64, i as u64) * choose(r as u64, j as u64) * reduced.value();
            }
        }
        assert_eq!(enumerate_counts(n, r, Family::X, &cfg).unwrap(), Count::new(left), "x ({n},{r})");
        assert_eq!(enumerate_counts(n, r, Family::XY, &cfg).unwrap(), Count::new(both), "xy ({n},{r})");
    }
}

#[test]
fn transposition_on_oracle_values() {
    let cfg = OracleConfig::default();
    for (n, r) in cells(12) {
        let count = |f| enumerate_counts(n, r, f, &cfg).unwrap();
        let swapped = |f| enumerate_counts(r, n, f, &cfg).unwrap();
        assert_eq!(count(Family::Y), swapped(Family::X), "({n},{r})");
        assert_eq!(count(Family::U), swapped(Family::U), "({n},{r})");
        assert_eq!(count(Family::XY), swapped(Family::XY), "({n},{r})");
    }
}

#[test]
fn transposed_matrix_swaps_x_and_y_keys() {
    for index in 0..1u64 << 6 {
        let m = Biadjacency::from_index(2, 3, index);
        for other in 0..1u64 << 6 {
            let o = Biadjacency::from_index(2, 3, other);
            let same_x = classify(&m, Family::X).unwrap() == classify(&o, Family::X).unwrap();
            let same_y = classify(&m.transpose(), Family::Y).unwrap() == classify(&o.transpose(), Family::Y).unwrap();
            assert_eq!(same_x, same_y, "{m:?} {o:?}");
        }
    }
}

#[test]
fn class_dump_has_one_line_per_class() {
    let cfg = OracleConfig::default();
    for family in Family::ALL {
        for (n, r) in [(2, 2), (2, 3), (3, 3)] {
            let classes = enumerate_classes(n, r, family, &cfg).unwrap();
            assert_eq!(Count::from(classes.len() as u64), enumerate_counts(n, r, family, &cfg).unwrap());
            for class in &classes {
                let m = Biadjacency::parse(
                    &class.bits.as_bytes().chunks(r).map(|c| std::str::from_utf8(c).unwrap()).collect::<Vec<_>>().join("/"),
                )
                .unwrap();
                // The representative is the smallest member of its orbit.
                let orbit = common::explicit_orbit(&m, family);
                assert_eq!(orbit.first().unwrap(), &class.bits);
            }
        }
    }
}

#[test]
fn worker_count_does_not_change_results() {
    for workers in [1, 2, 3, 7] {
        let cfg = OracleConfig {
            workers,
            ..OracleConfig::default()
        };
        assert_eq!(enumerate_counts(4, 4, Family::XY, &cfg).unwrap(), 1336);
        assert_eq!(enumerate_counts(2, 8, Family::XY, &cfg).unwrap(), 2655);
        let dump = enumerate_classes(2, 3, Family::X, &cfg).unwrap();
        assert_eq!(dump, enumerate_classes(2, 3, Family::X, &OracleConfig::default()).unwrap());
    }
}
