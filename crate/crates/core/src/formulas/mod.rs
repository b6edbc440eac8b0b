//! Exact counts for all four families.
//!
//! Unlabeled counts come from the closed forms when the smaller side is at most
//! three and from the Burnside engine otherwise. The labeled families are
//! assembled from unlabeled counts by the decompositions
//!
//! ```text
//! |B̄_x(i,r)|     = |B_u(i,r)| - |B_u(i-1,r)|
//! |B_x(n,r)|     = 1 + Σ_i C(n,i) |B̄_x(i,r)|
//! |B̄_xy(i,j)|    = |B̄_x(i,j)| - |B̄_x(i,j-1)|
//! |B_xy(n,r)|    = 1 + Σ_i Σ_j C(n,i) C(r,j) |B̄_xy(i,j)|
//! ```
//!
//! and every closed form that applies at the requested point is evaluated as
//! well; a disagreement surfaces as [`Error::Inconsistent`].

pub mod closed;

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{choose, int, rational_to_count, Count, ExactRational};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::polya::burnside_unlabeled;

/// How a count was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Recurrence,
    Burnside,
    BruteForce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Recurrence => "recurrence",
            Method::Burnside => "burnside",
            Method::BruteForce => "brute_force",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where the unlabeled counts feeding the recurrences come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnlabeledSource {
    /// Closed forms when `min(n, r) <= 3`, Burnside otherwise.
    Preferred,
    /// Burnside for every cell, no closed forms involved.
    BurnsideOnly,
}

/// Closed-form value of `|B_u(n, r)|`, if the smaller side is at most three.
pub fn unlabeled_closed_form(n: u64, r: u64) -> Option<ExactRational> {
    let (small, large) = if n <= r { (n, r) } else { (r, n) };
    match small {
        0 => Some(int(1)),
        1 => Some(closed::unlabeled_one(large)),
        2 => Some(closed::unlabeled_two(large)),
        3 => Some(closed::unlabeled_three(large)),
        _ => None,
    }
}

pub fn unlabeled_with(source: UnlabeledSource, n: u64, r: u64) -> Result<Count> {
    match (source, unlabeled_closed_form(n, r)) {
        (UnlabeledSource::Preferred, Some(value)) => rational_to_count(&value),
        _ => burnside_unlabeled(n, r),
    }
}

/// `|B_u(n, r)|`.
pub fn count_unlabeled(n: u64, r: u64) -> Result<Count> {
    unlabeled_with(UnlabeledSource::Preferred, n, r)
}

/// `|B_u(i, j)|` for `0 <= i <= n`, `0 <= j <= r`, indexed `[i][j]`.
#[derive(Clone, Debug)]
pub struct UnlabeledTable {
    cells: Vec<Vec<BigInt>>,
}

impl UnlabeledTable {
    pub fn build(source: UnlabeledSource, n: u64, r: u64) -> Result<Self> {
        Self::build_columns(source, n, 0..=r)
    }

    /// Only the columns in `cols` are filled; the rest stay zero.
    fn build_columns(
        source: UnlabeledSource,
        n: u64,
        cols: std::ops::RangeInclusive<u64>,
    ) -> Result<Self> {
        let width = *cols.end() as usize + 1;
        let mut cells = vec![vec![BigInt::from(0); width]; n as usize + 1];
        for i in 0..=n {
            for j in cols.clone() {
                cells[i as usize][j as usize] = unlabeled_with(source, i, j)?.to_bigint();
            }
        }
        Ok(UnlabeledTable { cells })
    }

    pub fn unlabeled(&self, i: u64, j: u64) -> &BigInt {
        &self.cells[i as usize][j as usize]
    }

    /// `|B̄_x(i, j)|` for `i >= 1`.
    pub fn reduced_left(&self, i: u64, j: u64) -> BigInt {
        self.unlabeled(i, j) - self.unlabeled(i - 1, j)
    }

    /// `|B̄_xy(i, j)|` for `i, j >= 1`.
    pub fn reduced_both(&self, i: u64, j: u64) -> BigInt {
        self.reduced_left(i, j) - self.reduced_left(i, j - 1)
    }

    /// `1 + Σ_i C(n,i) |B̄_x(i, r)|`.
    pub fn left_labeled(&self, n: u64, r: u64) -> BigInt {
        (1..=n).fold(BigInt::from(1), |acc, i| acc + binom(n, i) * self.reduced_left(i, r))
    }

    /// `1 + Σ_i Σ_j C(n,i) C(r,j) |B̄_xy(i, j)|`.
    pub fn set_labeled(&self, n: u64, r: u64) -> BigInt {
        let mut acc = BigInt::from(1);
        for i in 1..=n {
            for j in 1..=r {
                acc += binom(n, i) * binom(r, j) * self.reduced_both(i, j);
            }
        }
        acc
    }
}

fn binom(a: u64, b: u64) -> BigInt {
    BigInt::from_biguint(Sign::Plus, choose(a, b))
}

fn to_count(v: BigInt) -> Result<Count> {
    if v.is_negative() {
        return Err(Error::NegativeResult(v.to_string()));
    }
    Ok(Count::new(v.magnitude().clone()))
}

/// Closed forms for `|B̄_x(i, r)|` that apply at this point, by name.
pub fn reduced_left_closed_forms(i: u64, r: u64) -> Vec<(&'static str, ExactRational)> {
    let mut forms = Vec::new();
    match i {
        1 => forms.push(("reduced_left(1,r)", int(r as i64))),
        2 => forms.push(("reduced_left(2,r)", closed::reduced_left_two(r))),
        3 => forms.push(("reduced_left(3,r)", closed::reduced_left_three(r))),
        _ => {}
    }
    if i >= 1 {
        match r {
            0 => forms.push(("reduced_left(i,0)", int(0))),
            1 => forms.push(("reduced_left(i,1)", int(1))),
            2 => forms.push(("reduced_left(i,2)", closed::reduced_left_i2(i))),
            3 => forms.push(("reduced_left(i,3)", closed::reduced_left_i3(i))),
            _ => {}
        }
    }
    forms
}

/// Closed forms for `|B_x(n, r)|` that apply at this point, by name.
pub fn left_labeled_closed_forms(n: u64, r: u64) -> Vec<(&'static str, ExactRational)> {
    let mut forms = Vec::new();
    if n == 0 || r == 0 {
        forms.push(("empty", int(1)));
        return forms;
    }
    match n {
        1 => forms.push(("left_labeled(1,r)", int(r as i64 + 1))),
        2 => forms.push(("left_labeled(2,r)", closed::left_labeled_two(r))),
        3 => forms.push(("left_labeled(3,r)", closed::left_labeled_three(r))),
        _ => {}
    }
    match r {
        1 => forms.push(("left_labeled(n,1)", closed::left_labeled_n1(n))),
        2 => forms.push(("left_labeled(n,2)", closed::left_labeled_n2(n))),
        3 if n >= 2 => forms.push(("left_labeled(n,3)", closed::left_labeled_n3(n))),
        _ => {}
    }
    forms
}

/// Closed forms for `|B̄_xy(i, j)|` that apply at this point, by name.
pub fn reduced_both_closed_forms(i: u64, j: u64) -> Vec<(&'static str, ExactRational)> {
    let mut forms = Vec::new();
    if i == 1 || j == 1 {
        forms.push(("reduced_both(1,*)", int(1)));
    }
    // B̄_xy is symmetric, so the j-indexed forms also serve with the roles swapped.
    for (a, b) in [(i, j), (j, i)] {
        match b {
            2 => forms.push(("reduced_both(i,2)", closed::reduced_both_i2(a))),
            3 => forms.push(("reduced_both(i,3)", closed::reduced_both_i3(a))),
            _ => {}
        }
    }
    forms
}

/// Closed forms for `|B_xy(n, r)|` that apply at this point, by name.
pub fn set_labeled_closed_forms(n: u64, r: u64) -> Vec<(&'static str, ExactRational)> {
    let mut forms = Vec::new();
    if n == 0 || r == 0 {
        forms.push(("empty", int(1)));
        return forms;
    }
    for (a, b) in [(n, r), (r, n)] {
        match b {
            1 => forms.push(("set_labeled(n,1)", closed::left_labeled_n1(a))),
            2 => forms.push(("set_labeled(n,2)", closed::set_labeled_n2(a))),
            3 if a >= 2 => {
                forms.push(("set_labeled(n,3)", closed::set_labeled_n3(a)));
                let via_left = closed::left_labeled_n3(a);
                forms.push((
                    "set_labeled(n,3) via left_labeled(n,3)",
                    closed::set_labeled_n3_from_left(a, &via_left),
                ));
            }
            _ => {}
        }
    }
    forms
}

fn check_forms(
    family: Family,
    n: u64,
    r: u64,
    value: &BigInt,
    forms: &[(&'static str, ExactRational)],
) -> Result<()> {
    let expected = ExactRational::from_integer(value.clone());
    for (name, form) in forms {
        if *form != expected {
            return Err(Error::Inconsistent {
                route: name,
                family,
                n,
                r,
                left: form.to_string(),
                right: value.to_string(),
            });
        }
    }
    Ok(())
}

/// `|B̄_x(i, r)|`: unlabeled `(i, r)` graphs with no isolated left vertex.
pub fn reduced_left(i: u64, r: u64) -> Result<Count> {
    if i == 0 {
        return Err(Error::Domain("reduced_left needs i >= 1".into()));
    }
    let value = count_unlabeled(i, r)?.to_bigint() - count_unlabeled(i - 1, r)?.to_bigint();
    check_forms(Family::X, i, r, &value, &reduced_left_closed_forms(i, r))?;
    to_count(value)
}

/// `|B̄_xy(i, j)|`: unlabeled `(i, j)` graphs with no isolated vertex at all.
pub fn reduced_both(i: u64, j: u64) -> Result<Count> {
    if i == 0 || j == 0 {
        return Err(Error::Domain("reduced_both needs i, j >= 1".into()));
    }
    let table = UnlabeledTable::build_columns(UnlabeledSource::Preferred, i, j - 1..=j)?;
    let value = table.reduced_both(i, j);
    check_forms(Family::XY, i, j, &value, &reduced_both_closed_forms(i, j))?;
    to_count(value)
}

/// `|B_x(n, r)|`, left-set-labeled graphs.
pub fn count_left_labeled(n: u64, r: u64) -> Result<Count> {
    let table = UnlabeledTable::build_columns(UnlabeledSource::Preferred, n, r..=r)?;
    let value = table.left_labeled(n, r);
    for i in 1..=n {
        let reduced = table.reduced_left(i, r);
        check_forms(Family::X, i, r, &reduced, &reduced_left_closed_forms(i, r))?;
    }
    check_forms(Family::X, n, r, &value, &left_labeled_closed_forms(n, r))?;
    to_count(value)
}

/// `|B_y(n, r)| = |B_x(r, n)|`: transposing swaps the roles of the two sides.
pub fn count_right_labeled(n: u64, r: u64) -> Result<Count> {
    count_left_labeled(r, n)
}

/// `|B_xy(n, r)|`, set-labeled graphs.
pub fn count_set_labeled(n: u64, r: u64) -> Result<Count> {
    let table = UnlabeledTable::build(UnlabeledSource::Preferred, n, r)?;
    for i in 1..=n {
        for j in 1..=r {
            let reduced = table.reduced_both(i, j);
            check_forms(Family::XY, i, j, &reduced, &reduced_both_closed_forms(i, j))?;
        }
    }
    let value = table.set_labeled(n, r);
    check_forms(Family::XY, n, r, &value, &set_labeled_closed_forms(n, r))?;
    to_count(value)
}

/// Count for any family, with the method that produced it.
pub fn count(family: Family, n: u64, r: u64) -> Result<(Count, Method)> {
    let empty = n == 0 || r == 0;
    match family {
        Family::U => {
            let method = if n.min(r) <= 3 { Method::ClosedForm } else { Method::Burnside };
            Ok((count_unlabeled(n, r)?, method))
        }
        Family::X => Ok((count_left_labeled(n, r)?, labeled_method(empty))),
        Family::Y => Ok((count_right_labeled(n, r)?, labeled_method(empty))),
        Family::XY => Ok((count_set_labeled(n, r)?, labeled_method(empty))),
    }
}

fn labeled_method(empty: bool) -> Method {
    if empty {
        Method::ClosedForm
    } else {
        Method::Recurrence
    }
}

/// The first closed form that applies to `(family, n, r)`, or `None`.
pub fn closed_form(family: Family, n: u64, r: u64) -> Option<Result<Count>> {
    let value = match family {
        Family::U => unlabeled_closed_form(n, r),
        Family::X => left_labeled_closed_forms(n, r).into_iter().next().map(|f| f.1),
        Family::Y => left_labeled_closed_forms(r, n).into_iter().next().map(|f| f.1),
        Family::XY => set_labeled_closed_forms(n, r).into_iter().next().map(|f| f.1),
    };
    value.map(|v| rational_to_count(&v))
}

/// Count for any family using only Burnside-derived unlabeled values, with no
/// closed form anywhere on the path.
pub fn count_via_burnside(family: Family, n: u64, r: u64) -> Result<Count> {
    match family {
        Family::U => burnside_unlabeled(n, r),
        Family::X => {
            let table = UnlabeledTable::build_columns(UnlabeledSource::BurnsideOnly, n, r..=r)?;
            to_count(table.left_labeled(n, r))
        }
        Family::Y => count_via_burnside(Family::X, r, n),
        Family::XY => {
            let table = UnlabeledTable::build(UnlabeledSource::BurnsideOnly, n, r)?;
            to_count(table.set_labeled(n, r))
        }
    }
}
