//! Cross-checks between closed forms, recurrences, the Burnside engine, the
//! brute-force oracle and the bounds.
//!
//! Each check walks a fixed grid in a fixed order and stops at the first
//! failing cell, so reports are deterministic whatever the thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::arith::{rational_to_count, Count, ExactRational};
use crate::bounds::{
    bbar_x_interval, interval_case, lower_x, lower_x_at_imax, lower_x_term, lower_xy, sandwich_u,
    upper_x_general, upper_x_small_n, upper_xy, IntervalCase,
};
use crate::error::Result;
use crate::family::Family;
use crate::formulas::{
    self, closed, count_via_burnside, left_labeled_closed_forms, reduced_both_closed_forms,
    reduced_left_closed_forms, set_labeled_closed_forms, unlabeled_closed_form, UnlabeledSource,
    UnlabeledTable,
};
use crate::graph::Biadjacency;
use crate::oracle::{enumerate_counts, enumerate_reduced, Canonicalizer, OracleConfig, ReducedKind};
use crate::polya::burnside_unlabeled;

/// Anything that can produce family counts. The harness checks one of these
/// against everything else.
pub trait CountSource: Sync {
    fn count(&self, family: Family, n: u64, r: u64) -> Result<Count>;
}

/// The production counting path.
#[derive(Clone, Copy, Debug, Default)]
pub struct FormulaSource;

impl CountSource for FormulaSource {
    fn count(&self, family: Family, n: u64, r: u64) -> Result<Count> {
        formulas::count(family, n, r).map(|(c, _)| c)
    }
}

/// Wraps a source and adds one to a single cell. Used to confirm that the
/// harness notices a wrong value.
#[derive(Clone, Copy, Debug)]
pub struct Perturbed<S> {
    pub inner: S,
    pub family: Family,
    pub n: u64,
    pub r: u64,
}

impl<S: CountSource> CountSource for Perturbed<S> {
    fn count(&self, family: Family, n: u64, r: u64) -> Result<Count> {
        let c = self.inner.count(family, n, r)?;
        if (family, n, r) == (self.family, self.n, self.r) {
            Ok(Count::new(c.into_inner() + 1u32))
        } else {
            Ok(c)
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub oracle: OracleConfig,
    /// Largest smaller side for the oracle grid.
    pub oracle_min_side: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            oracle: OracleConfig::default(),
            oracle_min_side: 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    /// Number of individual comparisons made.
    pub cases: usize,
    /// First failing cell, if any.
    pub failure: Option<String>,
    pub note: Option<String>,
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} ({} cases, {:.2}s)",
            self.name,
            self.cases,
            self.elapsed.as_secs_f64()
        )?;
        if let Some(note) = &self.note {
            write!(f, " [{note}]")?;
        }
        if let Some(failure) = &self.failure {
            write!(f, ": {failure}")?;
        }
        Ok(())
    }
}

/// Accumulates comparisons for one check.
struct Tally {
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn eq<T: PartialEq + fmt::Display>(&mut self, what: &str, cell: &str, expected: &T, got: &T) {
        self.check(expected == got, || {
            format!("{what} at {cell}: expected {expected}, got {got}")
        });
    }

    fn result<T: PartialEq + fmt::Display>(&mut self, what: &str, cell: &str, expected: &T, got: Result<T>) {
        match got {
            Ok(v) => self.eq(what, cell, expected, &v),
            Err(e) => self.check(false, || format!("{what} at {cell}: {e}")),
        }
    }

    fn ok<T>(&mut self, what: &str, cell: &str, got: Result<T>) -> Option<T> {
        match got {
            Ok(v) => {
                self.cases += 1;
                Some(v)
            }
            Err(e) => {
                self.check(false, || format!("{what} at {cell}: {e}"));
                None
            }
        }
    }

    fn finish(self, name: &'static str, note: Option<String>, start: Instant) -> CheckResult {
        CheckResult {
            name,
            cases: self.cases,
            failure: self.failure,
            note,
            elapsed: start.elapsed(),
        }
    }
}

fn cell(family: Family, n: u64, r: u64) -> String {
    format!("family={family} n={n} r={r}")
}

fn in_budget(n: u64, r: u64, cfg: &OracleConfig) -> bool {
    n * r <= cfg.max_bits as u64 && n.min(r) as usize <= cfg.max_perm_side
}

/// Published small values, each reproduced by a closed form, by the count
/// source and by brute force.
pub const PUBLISHED_VALUES: [(Family, u64, u64, u64); 7] = [
    (Family::X, 2, 1, 4),
    (Family::X, 2, 2, 9),
    (Family::X, 2, 3, 16),
    (Family::X, 3, 2, 25),
    (Family::XY, 1, 2, 4),
    (Family::XY, 2, 2, 12),
    (Family::XY, 3, 2, 32),
];

pub fn published_values(source: &dyn CountSource, cfg: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut skipped = 0;
    for (family, n, r, expected) in PUBLISHED_VALUES {
        let at = cell(family, n, r);
        let expected = Count::from(expected);
        match formulas::closed_form(family, n, r) {
            Some(v) => t.result("closed form", &at, &expected, v),
            None => t.check(false, || format!("no closed form at {at}")),
        }
        t.result("count", &at, &expected, source.count(family, n, r));
        if in_budget(n, r, &cfg.oracle) {
            let brute = enumerate_counts(n as usize, r as usize, family, &cfg.oracle);
            t.result("brute force", &at, &expected, brute);
        } else {
            skipped += 1;
        }
    }
    let note = (skipped > 0).then(|| format!("{skipped} brute-force cells outside budget"));
    t.finish("published_values", note, start)
}

/// Cells `(n, r)` with `n, r >= 1`, `n·r <= max_bits` and a small enough
/// smaller side, in row-major order.
pub fn oracle_grid(cfg: &VerifyConfig) -> Vec<(u64, u64)> {
    let bits = cfg.oracle.max_bits as u64;
    let side = (cfg.oracle_min_side.min(cfg.oracle.max_perm_side)) as u64;
    let mut cells = Vec::new();
    for n in 1..=bits {
        for r in 1..=bits {
            if n * r <= bits && n.min(r) <= side {
                cells.push((n, r));
            }
        }
    }
    cells
}

/// Source, Burnside-only recurrences and brute force agree on every family
/// and on both reduced counts across the oracle grid. Also checks the
/// decomposition of the left-set-labeled count into reduced counts and the
/// transpose relation between families `x` and `y`, on oracle values alone.
pub fn cross_method(source: &dyn CountSource, cfg: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let grid = oracle_grid(cfg);
    let per_cell: Vec<Tally> = grid
        .par_iter()
        .map(|&(n, r)| {
            let mut t = Tally::new();
            let oc = &cfg.oracle;
            let (nu, ru) = (n as usize, r as usize);
            let mut brute = BTreeMap::new();
            for family in Family::ALL {
                let at = cell(family, n, r);
                let Some(b) = t.ok("brute force", &at, enumerate_counts(nu, ru, family, oc)) else {
                    continue;
                };
                t.result("count", &at, &b, source.count(family, n, r));
                t.result("Burnside recurrence", &at, &b, count_via_burnside(family, n, r));
                brute.insert(family, b);
            }
            let at = format!("reduced i={n} j={r}");
            if let Some(b) = t.ok("brute force", &at, enumerate_reduced(nu, ru, ReducedKind::Left, oc)) {
                t.result("reduced_left", &at, &b, formulas::reduced_left(n, r));
            }
            if let Some(b) = t.ok("brute force", &at, enumerate_reduced(nu, ru, ReducedKind::Both, oc)) {
                t.result("reduced_both", &at, &b, formulas::reduced_both(n, r));
            }

            // 1 + Σ C(n,i) · #(i×r classes without zero rows), oracle only.
            let mut sum = num_bigint::BigUint::from(1u32);
            for i in 1..=n {
                if let Some(b) = t.ok("brute force", &at, enumerate_reduced(i as usize, ru, ReducedKind::Left, oc)) {
                    sum += crate::arith::choose(n, i) * b.into_inner();
                }
            }
            if let Some(x) = brute.get(&Family::X) {
                t.eq("left decomposition", &cell(Family::X, n, r), x, &Count::new(sum));
            }
            if let Some(y) = brute.get(&Family::Y) {
                let at = cell(Family::Y, n, r);
                t.result("x/y transpose", &at, y, enumerate_counts(ru, nu, Family::X, oc));
            }
            t
        })
        .collect();
    merge("cross_method", per_cell, Some(format!("{} cells", grid.len())), start)
}

fn merge(name: &'static str, parts: Vec<Tally>, note: Option<String>, start: Instant) -> CheckResult {
    let mut t = Tally::new();
    for part in parts {
        t.cases += part.cases;
        if t.failure.is_none() {
            t.failure = part.failure;
        }
    }
    t.finish(name, note, start)
}

/// Counts evaluations of each branched closed form per residue class.
#[derive(Default)]
struct BranchCoverage(BTreeMap<(&'static str, u64), usize>);

impl BranchCoverage {
    fn hit(&mut self, formula: &'static str, arg: u64) {
        *self.0.entry((formula, arg % 3)).or_default() += 1;
    }

    fn check(&self, t: &mut Tally, formulas: &[&'static str], minimum: usize) {
        for &formula in formulas {
            for residue in 0..3 {
                let hits = self.0.get(&(formula, residue)).copied().unwrap_or(0);
                t.check(hits >= minimum, || {
                    format!("branch {formula} with argument = {residue} mod 3 exercised {hits} times")
                });
            }
        }
    }
}

/// Largest free side in the closed-form sweeps.
pub const FREE_SIDE: u64 = 12;
/// The `n`-indexed `r = 3` forms start at `n = 2`, so their sweep runs one
/// further to reach every residue four times.
pub const N3_FREE_SIDE: u64 = 13;

/// Closed forms against Burnside-only recurrences wherever both exist.
pub fn closed_vs_recurrence() -> CheckResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut cov = BranchCoverage::default();

    let compare = |t: &mut Tally, what: &str, at: &str, forms: Vec<(&'static str, ExactRational)>, value: &ExactRational| {
        for (name, form) in forms {
            t.check(form == *value, || format!("{what} {name} at {at}: closed form {form}, recurrence {value}"));
        }
    };

    // Unlabeled, both orientations.
    for small in 1..=3u64 {
        for large in 0..=20u64 {
            for (n, r) in [(small, large), (large, small)] {
                let at = cell(Family::U, n, r);
                let Some(b) = t.ok("Burnside", &at, burnside_unlabeled(n, r)) else { continue };
                let form = unlabeled_closed_form(n, r).unwrap();
                t.check(form == b.to_rational(), || format!("unlabeled closed form at {at}: {form} vs {b}"));
            }
            if small == 3 {
                cov.hit("unlabeled(3,r)", large);
            }
        }
    }

    let table = match UnlabeledTable::build(UnlabeledSource::BurnsideOnly, N3_FREE_SIDE, N3_FREE_SIDE) {
        Ok(table) => table,
        Err(e) => {
            t.check(false, || format!("building Burnside table: {e}"));
            return t.finish("closed_vs_recurrence", None, start);
        }
    };
    let as_rat = |v: num_bigint::BigInt| ExactRational::from_integer(v);

    for i in 1..=N3_FREE_SIDE {
        for j in 0..=N3_FREE_SIDE {
            let small_i = i <= 3;
            let small_j = j <= 3;
            let free_ok = (small_i && j <= FREE_SIDE) || (small_j && (i <= FREE_SIDE || j == 3));
            if !free_ok {
                continue;
            }
            let at = format!("i={i} j={j}");
            compare(&mut t, "reduced_left", &at, reduced_left_closed_forms(i, j), &as_rat(table.reduced_left(i, j)));
            if j == 3 {
                cov.hit("reduced_left(i,3)", i);
            }
            if i == 3 {
                cov.hit("reduced_left(3,r)", j);
            }
            if j >= 1 {
                compare(&mut t, "reduced_both", &at, reduced_both_closed_forms(i, j), &as_rat(table.reduced_both(i, j)));
            }
        }
    }

    for n in 1..=N3_FREE_SIDE {
        for r in 1..=N3_FREE_SIDE {
            let n_small = n <= 3 && r <= FREE_SIDE;
            let r_small = r <= 2 && n <= FREE_SIDE;
            let r_three = r == 3;
            if !(n_small || r_small || r_three) {
                continue;
            }
            let at = cell(Family::X, n, r);
            compare(&mut t, "left_labeled", &at, left_labeled_closed_forms(n, r), &as_rat(table.left_labeled(n, r)));
            if n == 3 {
                cov.hit("left_labeled(3,r)", r);
            }
            if r == 3 && n >= 2 {
                cov.hit("left_labeled(n,3)", n);
            }
            let at = cell(Family::XY, n, r);
            let set_value = as_rat(table.set_labeled(n, r));
            compare(&mut t, "set_labeled", &at, set_labeled_closed_forms(n, r), &set_value);
            if r == 3 && n >= 2 {
                cov.hit("set_labeled(n,3)", n);
            }
        }
    }
    cov.check(
        &mut t,
        &[
            "unlabeled(3,r)",
            "reduced_left(3,r)",
            "reduced_left(i,3)",
            "left_labeled(3,r)",
            "left_labeled(n,3)",
            "set_labeled(n,3)",
        ],
        4,
    );
    t.finish("closed_vs_recurrence", None, start)
}

/// Two-sided estimate for unlabeled counts with `n < r <= 12` and the diagonal
/// lower bound for `n <= 8`.
pub fn sandwich(source: &dyn CountSource) -> CheckResult {
    let start = Instant::now();
    let mut t = Tally::new();
    for n in 1..=12u64 {
        for r in n + 1..=12 {
            let at = cell(Family::U, n, r);
            let (Some(exact), Some(iv)) = (t.ok("count", &at, source.count(Family::U, n, r)), t.ok("sandwich", &at, sandwich_u(n, r))) else {
                continue;
            };
            t.check(iv.contains(&exact.to_rational()), || {
                format!("sandwich at {at}: {exact} outside [{:?}, {:?}]", iv.lower, iv.upper)
            });
        }
    }
    for n in 1..=8u64 {
        let at = cell(Family::U, n, n);
        let (Some(exact), Some(iv)) = (t.ok("count", &at, source.count(Family::U, n, n)), t.ok("sandwich", &at, sandwich_u(n, n))) else {
            continue;
        };
        let lower = iv.lower.clone().unwrap();
        t.check(lower <= exact.to_rational(), || format!("diagonal lower bound at {at}: {lower} > {exact}"));
        t.check(iv.contains(&exact.to_rational()), || format!("diagonal interval at {at} misses {exact}"));
    }
    t.finish("sandwich_u", None, start)
}

/// Left-set-labeled and set-labeled bounds on their stated grids, plus the
/// reduced-count intervals across all four shapes.
pub fn bounds_validity(source: &dyn CountSource) -> CheckResult {
    let start = Instant::now();
    let mut t = Tally::new();

    for n in 1..=6u64 {
        for r in 1..=12u64 {
            let at = cell(Family::X, n, r);
            let Some(exact) = t.ok("count", &at, source.count(Family::X, n, r)) else { continue };
            let exact = exact.to_rational();
            if n >= 3 && r >= 3 {
                if let Some(lower) = t.ok("lower_x", &at, lower_x(n, r)) {
                    t.check(lower <= exact, || format!("lower_x at {at}: {lower} > {exact}"));
                }
                if let Some(imax) = t.ok("lower_x_at_imax", &at, lower_x_at_imax(n, r)) {
                    t.check(imax.term <= exact, || format!("lower_x_at_imax at {at}: {} > {exact}", imax.term));
                    for i in 1..=n {
                        if let Some(term) = t.ok("lower_x_term", &at, lower_x_term(n, r, i)) {
                            t.check(imax.term >= term, || format!("i_star at {at} is not an argmax (i={i})"));
                        }
                    }
                }
                if n < r {
                    if let Some(upper) = t.ok("upper_x_small_n", &at, upper_x_small_n(n, r)) {
                        t.check(exact <= upper, || format!("upper_x_small_n at {at}: {exact} > {upper}"));
                    }
                }
            }
            if n >= 2 && r >= 2 {
                if let Some(upper) = t.ok("upper_x_general", &at, upper_x_general(n, r)) {
                    t.check(exact <= upper, || format!("upper_x_general at {at}: {exact} > {upper}"));
                    if let Ok(lower) = lower_x(n, r) {
                        t.check(lower <= upper, || format!("upper_x_general below lower_x at {at}"));
                    }
                }
            }

            let at = cell(Family::XY, n, r);
            let Some(exact) = t.ok("count", &at, source.count(Family::XY, n, r)) else { continue };
            let exact = exact.to_rational();
            if let Some(lower) = t.ok("lower_xy", &at, lower_xy(n, r)) {
                t.check(lower <= exact, || format!("lower_xy at {at}: {lower} > {exact}"));
            }
            if let Some(upper) = t.ok("upper_xy", &at, upper_xy(n, r)) {
                t.check(exact <= upper, || format!("upper_xy at {at}: {exact} > {upper}"));
            }
        }
    }

    let mut cases: BTreeMap<IntervalCase, usize> = BTreeMap::new();
    for i in 1..=6u64 {
        for j in 1..=6u64 {
            let at = format!("reduced i={i} j={j}");
            // |B̄_x(i,j)| = |B_u(i,j)| - |B_u(i-1,j)| from the source.
            let (Some(a), Some(b)) = (
                t.ok("count", &at, source.count(Family::U, i, j)),
                t.ok("count", &at, source.count(Family::U, i - 1, j)),
            ) else {
                continue;
            };
            let value = a.to_rational() - b.to_rational();
            if let Some(iv) = t.ok("bbar_x_interval", &at, bbar_x_interval(i, j)) {
                t.check(iv.contains(&value), || {
                    format!("bbar_x_interval at {at} ({:?}): {value} outside", interval_case(i, j))
                });
            }
            *cases.entry(interval_case(i, j)).or_default() += 1;
        }
    }
    for case in [IntervalCase::Wide, IntervalCase::Tall, IntervalCase::SubDiagonal, IntervalCase::Diagonal] {
        let hits = cases.get(&case).copied().unwrap_or(0);
        t.check(hits >= 4, || format!("interval case {case:?} exercised {hits} times"));
    }
    t.finish("bounds_validity", None, start)
}

/// Inclusion chain, transpose symmetry, monotonicity, integrality of every
/// closed form up to side 40, and exhaustive permutation invariance of the
/// canonical form on matrices up to 3 × 3.
pub fn structural(source: &dyn CountSource, cfg: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let mut t = Tally::new();

    let mut grid: BTreeMap<(Family, u64, u64), Count> = BTreeMap::new();
    for family in Family::ALL {
        for n in 0..=8u64 {
            for r in 0..=8u64 {
                if let Some(c) = t.ok("count", &cell(family, n, r), source.count(family, n, r)) {
                    grid.insert((family, n, r), c);
                }
            }
        }
    }
    let get = |f, n, r| grid.get(&(f, n, r));
    for n in 0..=8u64 {
        for r in 0..=8u64 {
            let at = format!("n={n} r={r}");
            if let (Some(u), Some(x), Some(y), Some(xy)) = (
                get(Family::U, n, r),
                get(Family::X, n, r),
                get(Family::Y, n, r),
                get(Family::XY, n, r),
            ) {
                t.check(u <= x && x <= xy, || format!("inclusion u <= x <= xy fails at {at}: {u}, {x}, {xy}"));
                t.check(u <= y && y <= xy, || format!("inclusion u <= y <= xy fails at {at}: {u}, {y}, {xy}"));
            }
            for family in [Family::U, Family::XY] {
                if let (Some(a), Some(b)) = (get(family, n, r), get(family, r, n)) {
                    t.check(a == b, || format!("transpose symmetry fails for {family} at {at}: {a} vs {b}"));
                }
            }
            if let (Some(x), Some(y)) = (get(Family::X, n, r), get(Family::Y, r, n)) {
                t.check(x == y, || format!("x/y mirror fails at {at}: {x} vs {y}"));
            }
            for family in Family::ALL {
                let here = get(family, n, r);
                for (nn, rr) in [(n + 1, r), (n, r + 1)] {
                    if let (Some(a), Some(b)) = (here, get(family, nn, rr)) {
                        t.check(a <= b, || format!("{family} not monotone from ({n},{r}) to ({nn},{rr})"));
                    }
                }
            }
        }
    }

    integrality(&mut t);
    canonical_invariance(&mut t, cfg);
    t.finish("structural", None, start)
}

fn integrality(t: &mut Tally) {
    let mut forms: Vec<(String, ExactRational)> = Vec::new();
    for k in 0..=40u64 {
        forms.push((format!("unlabeled_two({k})"), closed::unlabeled_two(k)));
        forms.push((format!("unlabeled_three({k})"), closed::unlabeled_three(k)));
        forms.push((format!("reduced_left_two({k})"), closed::reduced_left_two(k)));
        forms.push((format!("reduced_left_three({k})"), closed::reduced_left_three(k)));
        forms.push((format!("left_labeled_two({k})"), closed::left_labeled_two(k)));
        forms.push((format!("left_labeled_three({k})"), closed::left_labeled_three(k)));
        forms.push((format!("left_labeled_n1({k})"), closed::left_labeled_n1(k)));
        if k >= 1 {
            forms.push((format!("reduced_left_i2({k})"), closed::reduced_left_i2(k)));
            forms.push((format!("reduced_left_i3({k})"), closed::reduced_left_i3(k)));
            forms.push((format!("left_labeled_n2({k})"), closed::left_labeled_n2(k)));
            forms.push((format!("reduced_both_i2({k})"), closed::reduced_both_i2(k)));
            forms.push((format!("reduced_both_i3({k})"), closed::reduced_both_i3(k)));
            forms.push((format!("set_labeled_n2({k})"), closed::set_labeled_n2(k)));
        }
        if k >= 2 {
            forms.push((format!("left_labeled_n3({k})"), closed::left_labeled_n3(k)));
            forms.push((format!("set_labeled_n3({k})"), closed::set_labeled_n3(k)));
        }
    }
    for (name, value) in forms {
        let converted = rational_to_count(&value);
        t.check(converted.is_ok(), || format!("{name} = {value} is not a count"));
    }
}

fn canonical_invariance(t: &mut Tally, cfg: &VerifyConfig) {
    let mut canon = Canonicalizer::new(cfg.oracle.max_perm_side);
    let perms = |k: usize| -> Vec<Vec<usize>> {
        let mut all = vec![Vec::new()];
        for _ in 0..k {
            all = all
                .into_iter()
                .flat_map(|p| {
                    (0..k)
                        .filter(|x| !p.contains(x))
                        .map(|x| {
                            let mut q = p.clone();
                            q.push(x);
                            q
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        all
    };
    for n in 1..=3usize {
        for r in 1..=3usize {
            let row_perms = perms(n);
            let col_perms = perms(r);
            for index in 0..1u64 << (n * r) {
                let m = Biadjacency::from_index(n, r, index);
                let at = format!("{m:?}");
                let Some(c) = t.ok("canonical_form", &at, canon.canonical_form(&m)) else { continue };
                let again = canon.canonical_form(&c);
                t.check(again.ok().as_ref() == Some(&c), || format!("canonical form not idempotent at {at}"));
                let keys: Vec<_> = Family::ALL.iter().map(|&f| canon.classify(&m, f).ok()).collect();
                for rp in &row_perms {
                    for cp in &col_perms {
                        let p = m.permute(rp, cp);
                        t.check(canon.canonical_form(&p).ok().as_ref() == Some(&c), || {
                            format!("canonical form changes under permutation of {at}")
                        });
                        // The labeled keys are invariant only under permutations that fix supports.
                        let fixes_rows = (0..n).all(|i| (m.row_support() >> rp[i] & 1) == (m.row_support() >> i & 1));
                        let fixes_cols = (0..r).all(|c| (m.col_support() >> cp[c] & 1) == (m.col_support() >> c & 1));
                        for (family, key) in Family::ALL.iter().zip(&keys) {
                            let applies = (!family.fixes_left_support() || fixes_rows)
                                && (!family.fixes_right_support() || fixes_cols);
                            if applies {
                                t.check(canon.classify(&p, *family).ok().as_ref() == key.as_ref(), || {
                                    format!("{family} key changes under support-preserving permutation of {at}")
                                });
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Runs every check in order.
pub fn run_all(source: &dyn CountSource, cfg: &VerifyConfig) -> Vec<CheckResult> {
    vec![
        published_values(source, cfg),
        cross_method(source, cfg),
        closed_vs_recurrence(),
        sandwich(source),
        bounds_validity(source),
        structural(source, cfg),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            oracle: OracleConfig {
                max_bits: 6,
                ..OracleConfig::default()
            },
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn oracle_grid_respects_budgets() {
        let grid = oracle_grid(&VerifyConfig::default());
        assert!(grid.contains(&(4, 4)));
        assert!(grid.contains(&(1, 16)));
        assert!(grid.contains(&(2, 8)));
        assert!(!grid.contains(&(3, 6)));
        assert!(grid.iter().all(|&(n, r)| n * r <= 16 && n.min(r) <= 4));
        assert_eq!(oracle_grid(&small()).len(), 14);
    }

    #[test]
    fn small_run_passes() {
        let results = run_all(&FormulaSource, &small());
        for r in &results {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn perturbation_is_caught() {
        let bad = Perturbed {
            inner: FormulaSource,
            family: Family::X,
            n: 3,
            r: 2,
        };
        let result = published_values(&bad, &small());
        assert!(!result.passed());
        assert!(result.failure.unwrap().contains("family=x n=3 r=2"));
        let result = cross_method(&bad, &small());
        assert!(result.failure.unwrap().contains("family=x n=3 r=2"));
    }
}
