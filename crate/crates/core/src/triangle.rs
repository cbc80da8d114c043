//! Finite truncations of infinite lower-triangular matrices.
//!
//! Only the lower triangle is stored: row `n` holds `n+1` rationals.
//! Multiplication and entrywise materialization are data-parallel over
//! rows when the `parallel` feature is enabled; the `*_seq` kernels are
//! always available and produce identical results.

use std::fmt;

use num::traits::{One, Zero};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fps::{format_rational, frac, rat, Rational, Series};

/// Lower-triangular matrix of exact rationals; `dim = N + 1` rows.
#[derive(Clone, PartialEq, Eq)]
pub struct LowerTriangular {
    rows: Vec<Vec<Rational>>,
}

impl LowerTriangular {
    /// Identity of the given dimension.
    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1);
        LowerTriangular {
            rows: (0..dim)
                .map(|n| {
                    let mut row = vec![Rational::zero(); n + 1];
                    row[n] = Rational::one();
                    row
                })
                .collect(),
        }
    }

    /// Materialize entries from a function of `(row, col)`, `col <= row`.
    pub fn from_fn<F>(dim: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> Rational + Sync,
    {
        assert!(dim >= 1);
        #[cfg(feature = "parallel")]
        {
            LowerTriangular {
                rows: (0..dim)
                    .into_par_iter()
                    .map(|n| (0..=n).map(|m| f(n, m)).collect())
                    .collect(),
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            Self::from_fn_seq(dim, f)
        }
    }

    /// Sequential variant of [`LowerTriangular::from_fn`].
    pub fn from_fn_seq<F>(dim: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Rational,
    {
        assert!(dim >= 1);
        LowerTriangular {
            rows: (0..dim).map(|n| (0..=n).map(|m| f(n, m)).collect()).collect(),
        }
    }

    /// Build from explicit rows; row `n` must hold exactly `n+1` entries.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidSpec("matrix needs at least one row".into()));
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::InvalidSpec(format!(
                    "row {n} holds {} entries, expected {}",
                    row.len(),
                    n + 1
                )));
            }
        }
        Ok(LowerTriangular { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(n, m)`; exactly zero above the diagonal.
    pub fn entry(&self, n: usize, m: usize) -> Rational {
        if m > n {
            Rational::zero()
        } else {
            self.rows[n][m].clone()
        }
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(n, row)| {
            row.iter()
                .enumerate()
                .all(|(m, e)| if m == n { e.is_one() } else { e.is_zero() })
        })
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimMismatch { left: self.dim(), right: rhs.dim() });
        }
        Ok(())
    }

    fn mul_row(&self, rhs: &Self, n: usize) -> Vec<Rational> {
        (0..=n)
            .map(|m| {
                let mut acc = Rational::zero();
                for k in m..=n {
                    let a = &self.rows[n][k];
                    if !a.is_zero() {
                        let b = &rhs.rows[k][m];
                        if !b.is_zero() {
                            acc += a * b;
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix product; both operands must have equal dimension.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        #[cfg(feature = "parallel")]
        {
            Ok(LowerTriangular {
                rows: (0..self.dim())
                    .into_par_iter()
                    .map(|n| self.mul_row(rhs, n))
                    .collect(),
            })
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.mul_seq(rhs)
        }
    }

    /// Sequential variant of [`LowerTriangular::mul`].
    pub fn mul_seq(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(LowerTriangular {
            rows: (0..self.dim()).map(|n| self.mul_row(rhs, n)).collect(),
        })
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(LowerTriangular {
            rows: self
                .rows
                .iter()
                .zip(&rhs.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x * y).collect())
                .collect(),
        })
    }

    /// Group inverse by forward substitution; all diagonal entries must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        for n in 0..self.dim() {
            if self.rows[n][n].is_zero() {
                return Err(Error::SingularDiagonal { index: n });
            }
        }
        let dim = self.dim();
        let solve_col = |j: usize| -> Vec<Rational> {
            let mut col = vec![Rational::zero(); dim];
            col[j] = self.rows[j][j].recip();
            for i in j + 1..dim {
                let mut s = Rational::zero();
                for (k, c) in col.iter().enumerate().take(i).skip(j) {
                    let a = &self.rows[i][k];
                    if !a.is_zero() && !c.is_zero() {
                        s += a * c;
                    }
                }
                col[i] = -s / &self.rows[i][i];
            }
            col
        };
        #[cfg(feature = "parallel")]
        let cols: Vec<Vec<Rational>> = (0..dim).into_par_iter().map(solve_col).collect();
        #[cfg(not(feature = "parallel"))]
        let cols: Vec<Vec<Rational>> = (0..dim).map(solve_col).collect();
        Ok(LowerTriangular {
            rows: (0..dim).map(|n| (0..=n).map(|m| cols[m][n].clone()).collect()).collect(),
        })
    }

    fn check_unit_diagonal(&self) -> Result<()> {
        for n in 0..self.dim() {
            if !self.rows[n][n].is_one() {
                return Err(Error::NonUnitDiagonal { index: n });
            }
        }
        Ok(())
    }

    fn sub_identity(&self) -> Self {
        let mut m = self.clone();
        for n in 0..m.dim() {
            m.rows[n][n] -= Rational::one();
        }
        m
    }

    fn add_scaled(&mut self, rhs: &Self, c: &Rational) {
        for (row, other) in self.rows.iter_mut().zip(&rhs.rows) {
            for (e, o) in row.iter_mut().zip(other) {
                if !o.is_zero() {
                    *e += o * c;
                }
            }
        }
    }

    /// Matrix logarithm `sum_{k>=1} (-1)^(k-1)/k (A-I)^k`.
    ///
    /// Exact: `A - I` is nilpotent at finite dimension, so the sum stops at
    /// `dim - 1` terms. Requires a unit diagonal.
    pub fn log(&self) -> Result<Self> {
        self.check_unit_diagonal()?;
        let dim = self.dim();
        let m = self.sub_identity();
        let mut out = LowerTriangular {
            rows: (0..dim).map(|n| vec![Rational::zero(); n + 1]).collect(),
        };
        let mut p = LowerTriangular::identity(dim);
        for k in 1..dim {
            p = p.mul(&m)?;
            out.add_scaled(&p, &frac(if k % 2 == 1 { 1 } else { -1 }, k as i64));
        }
        Ok(out)
    }

    /// Real (rational) matrix power `sum_k C(phi, k) (A-I)^k`.
    ///
    /// Finite binomial series in the nilpotent part; requires a unit diagonal.
    pub fn pow(&self, phi: &Rational) -> Result<Self> {
        self.check_unit_diagonal()?;
        let dim = self.dim();
        let m = self.sub_identity();
        let mut out = LowerTriangular::identity(dim);
        let mut p = LowerTriangular::identity(dim);
        let mut binom = Rational::one();
        for k in 1..dim {
            p = p.mul(&m)?;
            binom *= (phi - rat(k as i64 - 1)) / rat(k as i64);
            out.add_scaled(&p, &binom);
        }
        Ok(out)
    }

    /// Exponential `sum_k B^k / k!` of a strictly-lower matrix (unit diagonal
    /// minus identity); here `B` is taken as given and must be nilpotent,
    /// i.e. have an all-zero diagonal.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        for n in 0..self.dim() {
            if !self.rows[n][n].is_zero() {
                return Err(Error::InvalidSpec(format!("nonzero diagonal at {n}")));
            }
        }
        let dim = self.dim();
        let mut out = LowerTriangular::identity(dim);
        let mut p = LowerTriangular::identity(dim);
        let mut fact = Rational::one();
        for k in 1..dim {
            p = p.mul(self)?;
            fact *= rat(k as i64);
            out.add_scaled(&p, &fact.recip());
        }
        Ok(out)
    }

    /// Generating function of row `n` as a series of order `dim - 1`.
    pub fn row_gf(&self, n: usize) -> Result<Series> {
        if n >= self.dim() {
            return Err(Error::IndexOutOfRange { index: n, limit: self.dim() - 1 });
        }
        let order = self.dim() - 1;
        Ok(Series::from_fn(order, |m| self.entry(n, m)))
    }

    /// Generating function of column `n` as a series of order `dim - 1`.
    pub fn col_gf(&self, n: usize) -> Result<Series> {
        if n >= self.dim() {
            return Err(Error::IndexOutOfRange { index: n, limit: self.dim() - 1 });
        }
        let order = self.dim() - 1;
        Ok(Series::from_fn(order, |k| self.entry(k, n)))
    }

    /// Conjugation `|c|^-1 A |c|` by the diagonal matrix of the weights `c`;
    /// every weight up to `dim - 1` must be nonzero.
    pub fn conjugate_by_diagonal(&self, weights: &Series) -> Result<Self> {
        if weights.order() + 1 < self.dim() {
            return Err(Error::IndexOutOfRange {
                index: self.dim() - 1,
                limit: weights.order(),
            });
        }
        for n in 0..self.dim() {
            if weights.coeff(n).is_zero() {
                return Err(Error::InvalidSequence(format!("zero weight at index {n}")));
            }
        }
        Ok(LowerTriangular {
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(n, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(m, e)| e * weights.coeff(m) / weights.coeff(n))
                        .collect()
                })
                .collect(),
        })
    }

    /// `{"dim": .., "rows": [[..strings..]]}` with rows cut at the diagonal.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim(),
            "rows": self
                .rows
                .iter()
                .map(|row| row.iter().map(format_rational).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    /// CSV with full zero padding above the diagonal.
    pub fn to_csv(&self) -> String {
        let dim = self.dim();
        let mut out = String::new();
        for n in 0..dim {
            for m in 0..dim {
                if m > 0 {
                    out.push(',');
                }
                out.push_str(&format_rational(&self.entry(n, m)));
            }
            out.push('\n');
        }
        out
    }

    /// Column-aligned plain text of the lower triangle.
    pub fn to_pretty(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect();
        let mut widths = vec![0usize; self.dim()];
        for row in &cells {
            for (m, c) in row.iter().enumerate() {
                widths[m] = widths[m].max(c.len());
            }
        }
        let mut out = String::new();
        for row in &cells {
            for (m, c) in row.iter().enumerate() {
                if m > 0 {
                    out.push(' ');
                }
                out.push_str(&" ".repeat(widths[m] - c.len()));
                out.push_str(c);
            }
            out.push('\n');
        }
        out
    }
}

// Debug prints the pretty triangle; handy in test failures.
impl fmt::Debug for LowerTriangular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LowerTriangular(dim {})\n{}", self.dim(), self.to_pretty())
    }
}

/// Integer binomial coefficient as a rational.
pub fn binom_int(n: usize, m: usize) -> Rational {
    if m > n {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for k in 0..m.min(n - m) {
        acc *= rat((n - k) as i64);
        acc /= rat(k as i64 + 1);
    }
    acc
}
