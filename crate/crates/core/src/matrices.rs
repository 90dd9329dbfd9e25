//! Partial permutation matrices and partial alternating sign matrices:
//! validation, enumeration, counting and one-line notation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::binomial;

/// An `m x n` integer matrix stored row-major.
///
/// The derived ordering compares dimensions first and then entries in
/// row-major order, which is the enumeration order used throughout.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        IntMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        IntMatrix::new(m, n, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.cols)
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Column partial sums `c[i][j] = sum_{i' <= i} M[i'][j]`, row-major.
    pub fn column_prefix_sums(&self) -> Vec<i64> {
        let mut out = self.entries.clone();
        for i in 1..self.rows {
            for j in 0..self.cols {
                out[i * self.cols + j] += out[(i - 1) * self.cols + j];
            }
        }
        out
    }

    /// Row partial sums `r[i][j] = sum_{j' <= j} M[i][j']`, row-major.
    pub fn row_prefix_sums(&self) -> Vec<i64> {
        let mut out = self.entries.clone();
        for i in 0..self.rows {
            for j in 1..self.cols {
                out[i * self.cols + j] += out[i * self.cols + j - 1];
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(deserializer)?;
        IntMatrix::from_rows(&rows).map_err(de::Error::custom)
    }
}

/// One-line notation of a partial permutation matrix: letter `i` is the
/// (1-based) column of the 1 in row `i`, or 0 for an empty row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let multi_digit = self.0.iter().any(|&l| l > 9);
        for (k, l) in self.0.iter().enumerate() {
            if multi_digit && k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub fn is_partial_permutation(m: &IntMatrix) -> bool {
    if m.entries.iter().any(|&e| e != 0 && e != 1) {
        return false;
    }
    let rows_ok = (0..m.rows).all(|i| m.row(i).iter().sum::<i64>() <= 1);
    let cols_ok = (0..m.cols).all(|j| (0..m.rows).map(|i| m.get(i, j)).sum::<i64>() <= 1);
    rows_ok && cols_ok
}

pub fn is_pasm(m: &IntMatrix) -> bool {
    m.entries.iter().all(|e| (-1..=1).contains(e))
        && m.row_prefix_sums().iter().all(|s| (0..=1).contains(s))
        && m.column_prefix_sums().iter().all(|s| (0..=1).contains(s))
}

/// Depth-first walk over `PASM_{m,n}` in lexicographic row-major order
/// (entries ordered -1 < 0 < 1). Every branch that keeps all prefix sums in
/// {0,1} extends to a full matrix, so no leaf is wasted.
pub fn for_each_pasm(m: usize, n: usize, mut visit: impl FnMut(&IntMatrix)) {
    assert!(m > 0 && n > 0, "matrix dimensions must be positive");
    let mut current = IntMatrix::zero(m, n);
    let mut col_sums = vec![0i64; n];
    pasm_dfs(&mut current, &mut col_sums, 0, 0, &[-1, 0, 1], &mut visit);
}

/// Same walk restricted to entries in {0,1}, which yields `P_{m,n}`.
pub fn for_each_partial_perm(m: usize, n: usize, mut visit: impl FnMut(&IntMatrix)) {
    assert!(m > 0 && n > 0, "matrix dimensions must be positive");
    let mut current = IntMatrix::zero(m, n);
    let mut col_sums = vec![0i64; n];
    pasm_dfs(&mut current, &mut col_sums, 0, 0, &[0, 1], &mut visit);
}

fn pasm_dfs(
    current: &mut IntMatrix,
    col_sums: &mut [i64],
    cell: usize,
    row_sum: i64,
    alphabet: &[i64],
    visit: &mut impl FnMut(&IntMatrix),
) {
    let n = current.cols;
    if cell == current.entries.len() {
        visit(current);
        return;
    }
    let j = cell % n;
    // row prefix restarts at every new row
    let row_sum = if j == 0 { 0 } else { row_sum };
    for &e in alphabet {
        let r = row_sum + e;
        let c = col_sums[j] + e;
        if !(0..=1).contains(&r) || !(0..=1).contains(&c) {
            continue;
        }
        current.entries[cell] = e;
        col_sums[j] = c;
        pasm_dfs(current, col_sums, cell + 1, r, alphabet, visit);
        col_sums[j] -= e;
    }
    current.entries[cell] = 0;
}

pub fn enumerate_pasms(m: usize, n: usize) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for_each_pasm(m, n, |x| out.push(x.clone()));
    out
}

pub fn enumerate_partial_perms(m: usize, n: usize) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for_each_partial_perm(m, n, |x| out.push(x.clone()));
    out
}

/// `|PASM_{m,n}|` by the same walk, without materializing the matrices.
pub fn count_pasms(m: usize, n: usize) -> u64 {
    let mut count = 0u64;
    for_each_pasm(m, n, |_| count += 1);
    count
}

/// `|P_{m,n}| = sum_k C(a,k) (b)_k` with `a = min(m,n)`, `b = max(m,n)`.
pub fn count_partial_perms(m: usize, n: usize) -> BigInt {
    let (a, b) = (m.min(n) as u64, m.max(n) as u64);
    let mut total = BigInt::zero();
    for k in 0..=a {
        let falling: BigInt = (0..k).map(|i| BigInt::from(b - i)).product();
        total += binomial(a, k) * falling;
    }
    total
}

pub fn one_line_notation(m: &IntMatrix) -> Result<Word> {
    if !is_partial_permutation(m) {
        return Err(Error::NotPartialPermutation);
    }
    let letters = (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .position(|&e| e == 1)
                .map_or(0, |j| j as u32 + 1)
        })
        .collect();
    Ok(Word(letters))
}

/// Inverse of [`one_line_notation`] for an `m x n` target.
pub fn from_one_line_notation(word: &Word, n: usize) -> Result<IntMatrix> {
    let m = word.len();
    let mut out = IntMatrix::new(m, n, vec![0; m * n])?;
    for (i, &l) in word.0.iter().enumerate() {
        if l as usize > n {
            return Err(Error::DimensionMismatch(format!(
                "letter {l} exceeds column count {n}"
            )));
        }
        if l > 0 {
            out.set(i, l as usize - 1, 1);
        }
    }
    if !is_partial_permutation(&out) {
        return Err(Error::NotPartialPermutation);
    }
    Ok(out)
}
