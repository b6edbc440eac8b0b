//! Closed-form expressions for the counts, evaluated in exact rationals.
//!
//! These are plain evaluators: they compute the expression at any argument.
//! The domain on which each one equals the true count is noted on the
//! function; callers in [`super`] only use them inside that domain.

use num_bigint::BigInt;

use crate::arith::{choose, int, pow2, rat, sign_pow, ExactRational};

fn horner(x: i64, coeffs: &[i64]) -> ExactRational {
    let x = BigInt::from(x);
    let acc = coeffs
        .iter()
        .fold(BigInt::from(0), |acc, &c| acc * &x + BigInt::from(c));
    ExactRational::from_integer(acc)
}

fn binom_rat(a: u64, b: u64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(choose(a, b)))
}

/// `|B_u(1, r)| = r + 1`.
pub fn unlabeled_one(r: u64) -> ExactRational {
    int(r as i64 + 1)
}

/// `|B_u(2, r)| = (2r³ + 15r² + 34r + 45/2 + (3/2)(-1)^r) / 24`, all `r ≥ 0`.
pub fn unlabeled_two(r: u64) -> ExactRational {
    let r = r as i64;
    (horner(r, &[2, 15, 34, 0]) + rat(45, 2) + rat(3, 2) * int(sign_pow(r))) / int(24)
}

/// `C(r+7, r) + 3(r+4)(2r⁴ + 32r³ + 172r² + 352r + 15(-1)^r + 225) / 960`.
fn three_row_core(r: u64) -> ExactRational {
    let ri = r as i64;
    let quartic = horner(ri, &[2, 32, 172, 352, 225]) + int(15 * sign_pow(ri));
    binom_rat(r + 7, r) + int(3) * int(ri + 4) * quartic / int(960)
}

/// The `r mod 3` dependent correction `2(r³ + 12r² + br + c) / 54`.
fn three_row_branch(r: u64) -> ExactRational {
    let ri = r as i64;
    let cubic = match r % 3 {
        0 => horner(ri, &[1, 12, 45, 54]),
        1 => horner(ri, &[1, 12, 45, 50]),
        _ => horner(ri, &[1, 12, 39, 28]),
    };
    int(2) * cubic / int(54)
}

/// `|B_u(3, r)|`, three branches on `r mod 3`, all `r ≥ 0`.
pub fn unlabeled_three(r: u64) -> ExactRational {
    (three_row_core(r) + three_row_branch(r)) / int(6)
}

/// `|B̄_x(2, r)| = |B_u(2, r)| - (r + 1)`.
pub fn reduced_left_two(r: u64) -> ExactRational {
    unlabeled_two(r) - unlabeled_one(r)
}

/// `|B̄_x(3, r)| = |B_u(3, r)| - |B_u(2, r)|`.
pub fn reduced_left_three(r: u64) -> ExactRational {
    unlabeled_three(r) - unlabeled_two(r)
}

/// `|B_x(2, r)| = (2r³ + 15r² + 58r + 45/2 + (3/2)(-1)^r) / 24`, all `r ≥ 0`.
pub fn left_labeled_two(r: u64) -> ExactRational {
    let r = r as i64;
    (horner(r, &[2, 15, 58, 0]) + rat(45, 2) + rat(3, 2) * int(sign_pow(r))) / int(24)
}

/// `|B_x(3, r)|`, three branches on `r mod 3`, all `r ≥ 0`.
pub fn left_labeled_three(r: u64) -> ExactRational {
    let ri = r as i64;
    let tail = (horner(ri, &[4, 30, 68, -3]) + int(3 * sign_pow(ri))) / int(24);
    unlabeled_three(r) + tail
}

/// `|B_x(n, 1)| = 2^n`.
pub fn left_labeled_n1(n: u64) -> ExactRational {
    pow2(n as i64)
}

/// `|B̄_x(i, 2)| = (6i² + 24i + 21 + 3(-1)^i) / 24`, `i ≥ 1`.
pub fn reduced_left_i2(i: u64) -> ExactRational {
    let i = i as i64;
    (horner(i, &[6, 24, 21]) + int(3 * sign_pow(i))) / int(24)
}

/// `|B_x(n, 2)| = n(n+1)2^{n-4} + n 2^{n-1} + 7·2^{n-3}`, `n ≥ 1`.
///
/// For `n < 4` the powers of two are fractional; the sum is still an integer.
pub fn left_labeled_n2(n: u64) -> ExactRational {
    let ni = n as i64;
    int(ni * (ni + 1)) * pow2(ni - 4) + int(ni) * pow2(ni - 1) + int(7) * pow2(ni - 3)
}

/// `|B̄_x(i, 3)|` in its simplified three-branch form, `i ≥ 1`.
pub fn reduced_left_i3(i: u64) -> ExactRational {
    let ii = i as i64;
    let s = sign_pow(ii);
    let quartic = horner(ii, &[10, 140, 680, 1330, 855]) + int(30 * ii * s + 105 * s);
    let quadratic = match i % 3 {
        0 => horner(ii, &[6, 54, 108]),
        1 => horner(ii, &[6, 42, 60]),
        _ => horner(ii, &[6, 30, 24]),
    };
    (binom_rat(i + 6, 6) + quartic / int(320) + quadratic / int(54)) / int(6)
}

/// The part shared by both `n`-indexed `r = 3` closed forms:
/// `(3n⁶ + 171n⁵ + 3765n⁴ + 41265n³) 2^n + q·2^{n+4} n²`.
fn sextic_head(n: i64, quadratic_coeff: i64) -> ExactRational {
    horner(n, &[3, 171, 3765, 41265, 0, 0, 0]) * pow2(n)
        + int(quadratic_coeff) * pow2(n + 4) * int(n * n)
}

/// `|B_x(n, 3)|`, three branches on `n mod 3`, valid for `n ≥ 2`.
///
/// The sign exponents `n/3`, `(n+2)/3`, `(n+1)/3` are integral exactly in the
/// branch where they appear.
pub fn left_labeled_n3(n: u64) -> ExactRational {
    let ni = n as i64;
    let p = pow2(ni);
    let head = sextic_head(ni, 14787);
    let tail = match n % 3 {
        0 => {
            let s = int(sign_pow(ni / 3));
            int(12) * (int(2560) * &s + int(55077) * &p) * int(ni)
                + int(880) * (int(128) * &s + int(763) * &p)
        }
        1 => {
            let s = int(sign_pow((ni + 2) / 3));
            int(165231) * pow2(ni + 2) * int(ni) - int(80) * (int(1280) * &s - int(8393) * &p)
        }
        _ => {
            let s = int(sign_pow((ni + 1) / 3));
            int(12) * (int(2560) * &s + int(55077) * &p) * int(ni)
                + int(80) * (int(128) * &s + int(8393) * &p)
        }
    };
    (head + tail) / int(829440)
}

/// `|B̄_{x,y}(i, 2)| = (6i² + 24i - 3 + 3(-1)^i) / 24`, `i ≥ 1`.
pub fn reduced_both_i2(i: u64) -> ExactRational {
    let i = i as i64;
    (horner(i, &[6, 24, -3]) + int(3 * sign_pow(i))) / int(24)
}

/// `|B̄_{x,y}(i, 3)| = |B̄_x(i, 3)| - |B̄_x(i, 2)|`, `i ≥ 1`.
pub fn reduced_both_i3(i: u64) -> ExactRational {
    reduced_left_i3(i) - reduced_left_i2(i)
}

/// `|B_{x,y}(n, 2)| = (15/8) 2^n + 2^{n-1} n + 2^{n-4} n(n+1) - 1`, `n ≥ 1`.
pub fn set_labeled_n2(n: u64) -> ExactRational {
    let ni = n as i64;
    rat(15, 8) * pow2(ni) + pow2(ni - 1) * int(ni) + pow2(ni - 4) * int(ni * (ni + 1)) - int(1)
}

/// `|B_{x,y}(n, 3)| = 2^{n-3} n² + 9·2^{n-3} n + 7·2^{n-2} - 2 + |B_x(n, 3)|`,
/// given the value of `|B_x(n, 3)|`. Valid for `n ≥ 1`.
pub fn set_labeled_n3_from_left(n: u64, left_labeled: &ExactRational) -> ExactRational {
    let ni = n as i64;
    pow2(ni - 3) * int(ni * ni) + int(9) * pow2(ni - 3) * int(ni) + int(7) * pow2(ni - 2) - int(2)
        + left_labeled
}

/// `|B_{x,y}(n, 3)|`, three branches on `n mod 3`, valid for `n ≥ 2`.
pub fn set_labeled_n3(n: u64) -> ExactRational {
    let ni = n as i64;
    let p = pow2(ni);
    let head = sextic_head(ni, 21267);
    let tail = match n % 3 {
        0 => {
            let s = int(sign_pow(ni / 3));
            int(12) * (int(2560) * &s + int(132837) * &p) * int(ni)
                + int(80) * (int(1408) * &s + int(26537) * &p - int(20736))
        }
        1 => {
            let s = int(sign_pow((ni + 2) / 3));
            int(398511) * pow2(ni + 2) * int(ni)
                - int(80) * (int(1280) * &s - int(26537) * &p + int(20736))
        }
        _ => {
            let s = int(sign_pow((ni + 1) / 3));
            int(12) * (int(2560) * &s + int(132837) * &p) * int(ni)
                + int(80) * (int(128) * &s + int(26537) * &p - int(20736))
        }
    };
    (head + tail) / int(829440)
}
