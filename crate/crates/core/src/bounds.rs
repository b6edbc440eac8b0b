//! Lower and upper bounds for the unlabeled, left-set-labeled and set-labeled
//! counts, all evaluated as exact rationals.
//!
//! Every bound can be evaluated outside the domain on which it is claimed to
//! hold; [`BoundReport::in_stated_domain`] records whether it applies.

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{choose_over, factorial_big, int, Count, ExactRational};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::formulas;

/// A two-sided estimate. A missing side is unbounded.
///
/// The lower end is not required to sit below the upper end; both are stored
/// exactly as computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundInterval {
    pub lower: Option<ExactRational>,
    pub upper: Option<ExactRational>,
}

impl BoundInterval {
    pub fn new(lower: ExactRational, upper: ExactRational) -> Self {
        BoundInterval {
            lower: Some(lower),
            upper: Some(upper),
        }
    }

    pub fn lower_only(lower: ExactRational) -> Self {
        BoundInterval {
            lower: Some(lower),
            upper: None,
        }
    }

    pub fn upper_only(upper: ExactRational) -> Self {
        BoundInterval {
            lower: None,
            upper: Some(upper),
        }
    }

    pub fn contains(&self, value: &ExactRational) -> bool {
        self.lower.as_ref().is_none_or(|l| l <= value) && self.upper.as_ref().is_none_or(|u| value <= u)
    }
}

fn pow2(e: u64) -> Result<u64> {
    if e >= 62 {
        return Err(Error::LimitExceeded(format!("2^{e} is too large for a bound argument")));
    }
    Ok(1u64 << e)
}

fn fact(k: u64) -> BigUint {
    factorial_big(k)
}

/// `C(a, b) / d!`
fn cf(a: u64, b: u64, d: u64) -> ExactRational {
    choose_over(a, b, &fact(d))
}

fn binom(a: u64, b: u64) -> ExactRational {
    choose_over(a, b, &BigUint::from(1u32))
}

fn require_positive(name: &str, n: u64, r: u64) -> Result<()> {
    if n == 0 || r == 0 {
        return Err(Error::Domain(format!("{name} needs n, r >= 1")));
    }
    Ok(())
}

/// The `i`-th summand of [`lower_x`]: `C(n,i) C(i + 2^r - 2, i) / r!`.
pub fn lower_x_term(n: u64, r: u64, i: u64) -> Result<ExactRational> {
    Ok(binom(n, i) * cf(i + pow2(r)? - 2, i, r))
}

/// `1 + Σ_{i=1}^{n} C(n,i) C(i + 2^r - 2, i) / r!`, a lower bound on `|B_x(n, r)|`.
pub fn lower_x(n: u64, r: u64) -> Result<ExactRational> {
    require_positive("lower_x", n, r)?;
    (1..=n).try_fold(int(1), |acc, i| Ok(acc + lower_x_term(n, r, i)?))
}

/// Largest single summand of [`lower_x`].
#[derive(Clone, Debug, PartialEq)]
pub struct ImaxBound {
    pub term: ExactRational,
    /// Argmax over `1..=n`; ties go to the larger `i`.
    pub i_star: u64,
    /// Stationary point of the continuous relaxation,
    /// `((a² + 6an + n²)^{1/2} - a - n)/4 + n/2` with `a = 2^r - 2`.
    /// Reported for reference only.
    pub i_estimate: f64,
}

pub fn lower_x_at_imax(n: u64, r: u64) -> Result<ImaxBound> {
    require_positive("lower_x_at_imax", n, r)?;
    let mut best: Option<(ExactRational, u64)> = None;
    for i in 1..=n {
        let term = lower_x_term(n, r, i)?;
        if best.as_ref().is_none_or(|(b, _)| term >= *b) {
            best = Some((term, i));
        }
    }
    let (term, i_star) = best.unwrap();
    let a = pow2(r)? as f64 - 2.0;
    let nf = n as f64;
    let i_estimate = ((a * a + 6.0 * a * nf + nf * nf).sqrt() - a - nf) / 4.0 + nf / 2.0;
    Ok(ImaxBound {
        term,
        i_star,
        i_estimate,
    })
}

/// Upper bound on `|B_x(n, r)|` for `n < r`:
/// `1 + Σ_i C(n,i) [2 C(r + 2^i - 1, r)/i! - C(r + 2^{i-1} - 1, r)/(i-1)!]`.
pub fn upper_x_small_n(n: u64, r: u64) -> Result<ExactRational> {
    if n == 0 || n >= r {
        return Err(Error::Domain(format!("upper_x_small_n needs 1 <= n < r, got ({n},{r})")));
    }
    (1..=n).try_fold(int(1), |acc, i| {
        let upper_i = int(2) * cf(r + pow2(i)? - 1, r, i);
        let lower_prev = cf(r + pow2(i - 1)? - 1, r, i - 1);
        Ok(acc + binom(n, i) * (upper_i - lower_prev))
    })
}

/// Upper bound on `|B_x(n, r)|` for `n, r >= 2`; the `i = r` term uses
/// `|B_u(r, r)| <= |B_u(r + 1, r)|`.
pub fn upper_x_general(n: u64, r: u64) -> Result<ExactRational> {
    if n < 2 || r < 2 {
        return Err(Error::Domain(format!("upper_x_general needs n, r >= 2, got ({n},{r})")));
    }
    let mut sum = int(0);
    for i in 1..r {
        sum += binom(n, i) * cf(r + pow2(i)? - 1, r, i);
    }
    sum += binom(n, r) * cf(r + pow2(r)?, r + 1, r);
    for i in r + 1..=n {
        sum += binom(n, i) * cf(i + pow2(r)? - 1, i, r);
    }
    Ok(int(1) + int(2) * sum)
}

/// Which of the four shapes of `(i, j)` an interval for `|B̄_x(i, j)|` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntervalCase {
    /// `i < j`
    Wide,
    /// `j < i - 1`
    Tall,
    /// `j = i - 1`
    SubDiagonal,
    /// `j = i`
    Diagonal,
}

pub fn interval_case(i: u64, j: u64) -> IntervalCase {
    if i < j {
        IntervalCase::Wide
    } else if j + 1 < i {
        IntervalCase::Tall
    } else if j + 1 == i {
        IntervalCase::SubDiagonal
    } else {
        IntervalCase::Diagonal
    }
}

/// Interval for `|B̄_x(i, j)| = |B_u(i, j)| - |B_u(i-1, j)|` built from the
/// two-sided estimates of the unlabeled counts. The lower end may be negative.
pub fn bbar_x_interval(i: u64, j: u64) -> Result<BoundInterval> {
    require_positive("bbar_x_interval", i, j)?;
    let two = int(2);
    let interval = match interval_case(i, j) {
        IntervalCase::Wide => {
            let cur = cf(j + pow2(i)? - 1, j, i);
            let prev = cf(j + pow2(i - 1)? - 1, j, i - 1);
            BoundInterval::new(&cur - &two * &prev, &two * &cur - &prev)
        }
        IntervalCase::Tall => {
            let cur = cf(i + pow2(j)? - 1, i, j);
            let prev = cf(i + pow2(j)? - 2, i - 1, j);
            BoundInterval::new(&cur - &two * &prev, &two * &cur - &prev)
        }
        IntervalCase::SubDiagonal => {
            let lower = cf(i + pow2(i - 2)? - 1, i, i - 2) - &two * cf(i + pow2(i - 2)? - 2, i - 1, i - 2);
            let upper = &two * cf(i + pow2(i - 1)? - 1, i, i - 1)
                - cf(i + pow2(i - 1)? - 2, i - 1, i - 1) / &two;
            BoundInterval::new(lower, upper)
        }
        IntervalCase::Diagonal => {
            let lower = cf(i + pow2(i)? - 2, i - 1, i) - &two * cf(i + pow2(i - 1)? - 2, i - 1, i - 1);
            let upper = &two * cf(i + pow2(i)?, i + 1, i) - cf(i + pow2(i - 1)? - 1, i, i - 1);
            BoundInterval::new(lower, upper)
        }
    };
    Ok(interval)
}

/// Lower bound on `|B_xy(n, r)|`. For each `i`, the `j` with
/// `i - 1 <= j <= i + 1` are skipped; the remaining summands use the lower end
/// for `|B̄_x(i, j)|` and the upper end for `|B̄_x(i, j - 1)|`.
pub fn lower_xy(n: u64, r: u64) -> Result<ExactRational> {
    require_positive("lower_xy", n, r)?;
    let two = int(2);
    let mut total = int(1);
    for i in 1..=n {
        let mut inner = int(0);
        for j in 1..=i.saturating_sub(2) {
            let t = cf(i + pow2(j)? - 1, i, j) - &two * cf(i + pow2(j)? - 2, i - 1, j)
                - &two * cf(i + pow2(j - 1)? - 1, i, j - 1)
                + cf(i + pow2(j - 1)? - 2, i - 1, j - 1);
            inner += binom(r, j) * t;
        }
        for j in i + 2..=r {
            let t = cf(j + pow2(i)? - 1, j, i) - &two * cf(j + pow2(i - 1)? - 1, j, i - 1)
                - &two * cf(j + pow2(i)? - 2, j - 1, i)
                + cf(j + pow2(i - 1)? - 2, j - 1, i - 1);
            inner += binom(r, j) * t;
        }
        total += binom(n, i) * inner;
    }
    Ok(total)
}

/// Upper bound on `|B_xy(n, r)|` from `|B̄_xy(i, j)| <= |B_u(i, j)|`, with the
/// diagonal `j = i` term replaced by its `j = i + 1` counterpart.
pub fn upper_xy(n: u64, r: u64) -> Result<ExactRational> {
    require_positive("upper_xy", n, r)?;
    let mut total = int(0);
    for i in 1..=n {
        let mut inner = int(0);
        for j in 1..i {
            inner += binom(r, j) * cf(i + pow2(j)? - 1, i, j);
        }
        inner += binom(r, i) * cf(i + pow2(i)?, i + 1, i);
        for j in i + 1..=r {
            inner += binom(r, j) * cf(j + pow2(i)? - 1, j, i);
        }
        total += binom(n, i) * inner;
    }
    Ok(int(1) + int(2) * total)
}

/// Two-sided estimate of `|B_u(n, r)|` for `1 <= n <= r`.
///
/// For `n < r`: `[C(r + 2^n - 1, r)/n!, 2 C(r + 2^n - 1, r)/n!]`.
/// For `n = r`: `[C(n + 2^n - 1, n)/(2 n!), 2 C(n + 2^n, n + 1)/n!]`.
pub fn sandwich_u(n: u64, r: u64) -> Result<BoundInterval> {
    if n == 0 || n > r {
        return Err(Error::Domain(format!(
            "sandwich_u needs 1 <= n <= r, got ({n},{r}); swap the sides"
        )));
    }
    let base = cf(r + pow2(n)? - 1, r, n);
    if n < r {
        Ok(BoundInterval::new(base.clone(), int(2) * base))
    } else {
        let upper = int(2) * cf(n + pow2(n)?, n + 1, n);
        Ok(BoundInterval::new(base / int(2), upper))
    }
}

/// One evaluated bound, with the exact count alongside when it is available.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub family: Family,
    pub n: u64,
    pub r: u64,
    /// Which bound this is, e.g. `"lower_x"`.
    pub bound: &'static str,
    pub interval: BoundInterval,
    /// Whether `(n, r)` lies where the bound is claimed to hold.
    pub in_stated_domain: bool,
    pub exact: Option<Count>,
    /// Argmax index, for `lower_x_at_imax` only.
    pub i_star: Option<u64>,
    pub i_estimate: Option<f64>,
}

impl BoundReport {
    /// `Some(true)` when the exact value is known and inside the interval.
    pub fn holds(&self) -> Option<bool> {
        self.exact.as_ref().map(|e| self.interval.contains(&e.to_rational()))
    }
}

/// Every bound defined for the family at `(n, r)`. Family `u` is evaluated
/// with the smaller side first. Family `y` has no bounds.
pub fn bound_reports(family: Family, n: u64, r: u64) -> Result<Vec<BoundReport>> {
    let exact = formulas::count(family, n, r).ok().map(|(c, _)| c);
    let report = |bound, interval, in_stated_domain| BoundReport {
        family,
        n,
        r,
        bound,
        interval,
        in_stated_domain,
        exact: exact.clone(),
        i_star: None,
        i_estimate: None,
    };
    let mut out = Vec::new();
    match family {
        Family::U => {
            let (a, b) = (n.min(r), n.max(r));
            out.push(report("sandwich_u", sandwich_u(a, b)?, true));
        }
        Family::X => {
            let stated = n >= 3 && r >= 3;
            out.push(report("lower_x", BoundInterval::lower_only(lower_x(n, r)?), stated));
            let imax = lower_x_at_imax(n, r)?;
            let mut entry = report("lower_x_at_imax", BoundInterval::lower_only(imax.term), stated);
            entry.i_star = Some(imax.i_star);
            entry.i_estimate = Some(imax.i_estimate);
            out.push(entry);
            if n < r {
                out.push(report("upper_x_small_n", BoundInterval::upper_only(upper_x_small_n(n, r)?), true));
            }
            if n >= 2 && r >= 2 {
                out.push(report("upper_x_general", BoundInterval::upper_only(upper_x_general(n, r)?), true));
            }
        }
        Family::XY => {
            out.push(report("lower_xy", BoundInterval::lower_only(lower_xy(n, r)?), true));
            out.push(report("upper_xy", BoundInterval::upper_only(upper_xy(n, r)?), true));
        }
        Family::Y => {
            return Err(Error::Domain("no bounds defined for family y".into()));
        }
    }
    Ok(out)
}

/// JSON-facing view of a [`BoundReport`]; rationals are `"p/q"` strings.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRecord {
    pub bound: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i_star: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i_estimate: Option<f64>,
    pub in_stated_domain: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
}

impl From<&BoundReport> for BoundRecord {
    fn from(r: &BoundReport) -> Self {
        BoundRecord {
            bound: r.bound,
            lower: r.interval.lower.as_ref().map(ToString::to_string),
            upper: r.interval.upper.as_ref().map(ToString::to_string),
            i_star: r.i_star,
            i_estimate: r.i_estimate,
            in_stated_domain: r.in_stated_domain,
            holds: r.holds(),
        }
    }
}
