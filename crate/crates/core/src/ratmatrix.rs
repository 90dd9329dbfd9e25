//! Dense exact-rational matrices and vectors: the carriers of polytope points.

use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::matrices::IntMatrix;

/// A point of `R^k` with exact coordinates.
pub type RatVector = Vec<Rational>;

/// An `m x n` rational matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
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
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        RatMatrix::new(m, n, rows.concat())
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fracs(rows: &[&[(i64, i64)]]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&(p, q)| Rational::frac(p, q)).collect())
            .collect();
        RatMatrix::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.entries
            .chunks(self.cols)
            .map(<[Rational]>::to_vec)
            .collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        RatMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// `r[i][j] = sum_{j' <= j} X[i][j']`, row-major.
    pub fn row_prefix_sums(&self) -> Vec<Rational> {
        let mut out = self.entries.clone();
        for i in 0..self.rows {
            for j in 1..self.cols {
                let prev = out[i * self.cols + j - 1].clone();
                out[i * self.cols + j] += &prev;
            }
        }
        out
    }

    /// `c[i][j] = sum_{i' <= i} X[i'][j]`, row-major.
    pub fn column_prefix_sums(&self) -> Vec<Rational> {
        let mut out = self.entries.clone();
        for i in 1..self.rows {
            for j in 0..self.cols {
                let prev = out[(i - 1) * self.cols + j].clone();
                out[i * self.cols + j] += &prev;
            }
        }
        out
    }

    /// `Some(M)` when every entry is an integer.
    pub fn to_int_matrix(&self) -> Option<IntMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| if e.is_integer() { e.to_i64() } else { None })
            .collect::<Option<Vec<_>>>()?;
        IntMatrix::new(self.rows, self.cols, entries).ok()
    }

    pub fn scale(&self, factor: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// `self + factor * other`; dimensions must agree.
    pub fn add_scaled(&self, other: &RatMatrix, factor: &Rational) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + &(b * factor))
                .collect(),
        }
    }
}

impl From<&IntMatrix> for RatMatrix {
    fn from(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(|&e| Rational::from(e)).collect(),
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        RatMatrix::from_rows(&rows).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_sums_and_transpose() {
        let x = RatMatrix::from_fracs(&[&[(1, 2), (1, 3)], &[(-1, 2), (2, 3)]]).unwrap();
        let r = x.row_prefix_sums();
        assert_eq!(r[1], Rational::frac(5, 6));
        let c = x.column_prefix_sums();
        assert_eq!(c[2], Rational::zero());
        assert_eq!(c[3], Rational::one());
        assert_eq!(x.transpose().transpose(), x);
        assert_eq!(x.transpose().get(0, 1), &Rational::frac(-1, 2));
    }

    #[test]
    fn json_accepts_integers_and_fractions() {
        let x: RatMatrix = serde_json::from_str(r#"[[1,"1/2"],["-3/6",0]]"#).unwrap();
        assert_eq!(x.get(1, 0), &Rational::frac(-1, 2));
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"[["1","1/2"],["-1/2","0"]]"#
        );
    }

    #[test]
    fn integrality() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, -1]]).unwrap();
        assert_eq!(RatMatrix::from(&m).to_int_matrix(), Some(m));
        let x = RatMatrix::from_fracs(&[&[(1, 2)]]).unwrap();
        assert_eq!(x.to_int_matrix(), None);
    }
}
