//! Dense linear inequalities and hyperplanes over exact rationals.
//!
//! Coordinates are flat indices; for matrix polytopes index `i * n + j`
//! addresses `X[i][j]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

/// `coeffs · x (<= | >=) rhs` with a nonzero coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearInequality {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl LinearInequality {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Result<Self> {
        if coeffs.iter().all(Rational::is_zero) {
            return Err(Error::ZeroNormal);
        }
        Ok(LinearInequality {
            coeffs,
            relation,
            rhs,
        })
    }

    /// `sum_{k in support} x_k (<= | >=) rhs` in `R^dim`.
    pub fn indicator(
        dim: usize,
        support: impl IntoIterator<Item = usize>,
        relation: Relation,
        rhs: i64,
    ) -> Self {
        let mut coeffs = vec![Rational::zero(); dim];
        for k in support {
            coeffs[k] = Rational::one();
        }
        LinearInequality::new(coeffs, relation, Rational::from(rhs))
            .expect("indicator inequality needs a nonempty support")
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x)
    }

    /// Distance to the bound, oriented so that satisfied means `>= 0`.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        let v = self.value(x);
        match self.relation {
            Relation::Le => &self.rhs - &v,
            Relation::Ge => &v - &self.rhs,
        }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.value(x) == self.rhs
    }

    /// The same half-space written as `a · x <= b`.
    pub fn as_le(&self) -> (Vec<Rational>, Rational) {
        match self.relation {
            Relation::Le => (self.coeffs.clone(), self.rhs.clone()),
            Relation::Ge => (self.coeffs.iter().map(|c| -c).collect(), -&self.rhs),
        }
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            match (first, sign) {
                (true, "-") => f.write_str("-")?,
                (true, _) => {}
                (false, s) => write!(f, " {s} ")?,
            }
            if mag != Rational::one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "x{k}")?;
            first = false;
        }
        let rel = match self.relation {
            Relation::Le => "<=",
            Relation::Ge => ">=",
        };
        write!(f, " {rel} {}", self.rhs)
    }
}

impl fmt::Debug for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The affine hyperplane `coeffs · x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Result<Self> {
        if coeffs.iter().all(Rational::is_zero) {
            return Err(Error::ZeroNormal);
        }
        Ok(Hyperplane { coeffs, rhs })
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(
        a.len(),
        b.len(),
        "dot product of vectors of different length"
    );
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}
