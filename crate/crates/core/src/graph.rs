use std::fmt;

use crate::error::{Error, Result};

/// Largest side length a [`Biadjacency`] can hold.
pub const MAX_SIDE: usize = 64;

/// An `n × r` 0/1 biadjacency matrix.
///
/// Row `i` is stored as a `u64` with column `c` at bit `r - 1 - c`, so comparing
/// two rows as integers compares them as left-to-right bit strings, and
/// comparing the row vectors compares the row-major bit strings.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Biadjacency {
    n: usize,
    r: usize,
    rows: Vec<u64>,
}

impl Biadjacency {
    pub fn zero(n: usize, r: usize) -> Result<Self> {
        check_dims(n, r)?;
        Ok(Biadjacency {
            n,
            r,
            rows: vec![0; n],
        })
    }

    /// Builds a matrix from packed rows; bits outside the `r` columns are rejected.
    pub fn from_rows(n: usize, r: usize, rows: Vec<u64>) -> Result<Self> {
        check_dims(n, r)?;
        if rows.len() != n {
            return Err(Error::Domain(format!("expected {n} rows, got {}", rows.len())));
        }
        let mask = col_mask(r);
        if rows.iter().any(|&row| row & !mask != 0) {
            return Err(Error::Domain(format!("row wider than {r} columns")));
        }
        Ok(Biadjacency { n, r, rows })
    }

    /// Parses rows like `"01/10"`.
    pub fn parse(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s.split('/').map(str::trim).collect();
        let r = lines.first().map_or(0, |l| l.len());
        let mut rows = Vec::with_capacity(lines.len());
        for line in &lines {
            if line.len() != r {
                return Err(Error::Domain(format!("ragged matrix '{s}'")));
            }
            let mut row = 0u64;
            for ch in line.chars() {
                row <<= 1;
                match ch {
                    '0' => {}
                    '1' => row |= 1,
                    _ => return Err(Error::Domain(format!("bad bit '{ch}' in '{s}'"))),
                }
            }
            rows.push(row);
        }
        Biadjacency::from_rows(lines.len(), r, rows)
    }

    /// The matrix whose row-major bit string, read as a binary number, is `index`.
    /// Requires `n·r <= 64`.
    pub fn from_index(n: usize, r: usize, index: u64) -> Self {
        debug_assert!(n * r <= 64);
        let mask = col_mask(r);
        let rows = (0..n)
            .map(|i| {
                let shift = r * (n - 1 - i);
                if shift >= 64 {
                    0
                } else {
                    (index >> shift) & mask
                }
            })
            .collect();
        Biadjacency { n, r, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, c: usize) -> bool {
        self.rows[i] >> (self.r - 1 - c) & 1 == 1
    }

    pub fn set(&mut self, i: usize, c: usize, value: bool) {
        let bit = 1u64 << (self.r - 1 - c);
        if value {
            self.rows[i] |= bit;
        } else {
            self.rows[i] &= !bit;
        }
    }

    pub fn transpose(&self) -> Biadjacency {
        let mut t = Biadjacency {
            n: self.r,
            r: self.n,
            rows: vec![0; self.r],
        };
        for i in 0..self.n {
            for c in 0..self.r {
                if self.get(i, c) {
                    t.set(c, i, true);
                }
            }
        }
        t
    }

    /// Bitmask of non-zero rows; row `i` is bit `i`.
    pub fn row_support(&self) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, &row)| row != 0)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Bitmask of non-zero columns; column `c` is bit `c`.
    pub fn col_support(&self) -> u64 {
        let union = self.rows.iter().fold(0, |acc, &row| acc | row);
        (0..self.r)
            .filter(|&c| union >> (self.r - 1 - c) & 1 == 1)
            .fold(0, |acc, c| acc | 1 << c)
    }

    /// Submatrix on the rows and columns whose bits are set in the masks.
    pub fn restrict(&self, row_mask: u64, col_mask_bits: u64) -> Biadjacency {
        let rows_kept: Vec<usize> = (0..self.n).filter(|&i| row_mask >> i & 1 == 1).collect();
        let cols_kept: Vec<usize> = (0..self.r).filter(|&c| col_mask_bits >> c & 1 == 1).collect();
        let mut out = Biadjacency {
            n: rows_kept.len(),
            r: cols_kept.len(),
            rows: vec![0; rows_kept.len()],
        };
        for (ni, &i) in rows_kept.iter().enumerate() {
            for (nc, &c) in cols_kept.iter().enumerate() {
                if self.get(i, c) {
                    out.set(ni, nc, true);
                }
            }
        }
        out
    }

    /// Row `i` of the result is row `row_perm[i]` of `self`, and column `c` of
    /// the result is column `col_perm[c]` of `self`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Biadjacency {
        assert_eq!(row_perm.len(), self.n);
        assert_eq!(col_perm.len(), self.r);
        let rows = row_perm
            .iter()
            .map(|&src| permute_row(self.rows[src], self.r, col_perm))
            .collect();
        Biadjacency {
            n: self.n,
            r: self.r,
            rows,
        }
    }

    pub fn has_zero_row(&self) -> bool {
        self.rows.contains(&0)
    }

    pub fn has_zero_col(&self) -> bool {
        self.col_support().count_ones() as usize != self.r
    }

    /// Row-major `'0'`/`'1'` string of length `n·r`.
    pub fn bit_string(&self) -> String {
        let mut s = String::with_capacity(self.n * self.r);
        for i in 0..self.n {
            for c in 0..self.r {
                s.push(if self.get(i, c) { '1' } else { '0' });
            }
        }
        s
    }
}

impl fmt::Debug for Biadjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Biadjacency({}x{}: ", self.n, self.r)?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str("/")?;
            }
            for c in 0..self.r {
                f.write_str(if self.get(i, c) { "1" } else { "0" })?;
            }
        }
        f.write_str(")")
    }
}

pub(crate) fn col_mask(r: usize) -> u64 {
    if r >= 64 {
        u64::MAX
    } else {
        (1u64 << r) - 1
    }
}

/// Column `c` of the output row is column `col_perm[c]` of `row`.
pub(crate) fn permute_row(row: u64, r: usize, col_perm: &[usize]) -> u64 {
    let mut out = 0u64;
    for (c, &src) in col_perm.iter().enumerate() {
        out |= (row >> (r - 1 - src) & 1) << (r - 1 - c);
    }
    out
}

fn check_dims(n: usize, r: usize) -> Result<()> {
    if n > MAX_SIDE || r > MAX_SIDE {
        return Err(Error::LimitExceeded(format!(
            "matrix {n}x{r} exceeds side limit {MAX_SIDE}"
        )));
    }
    Ok(())
}
