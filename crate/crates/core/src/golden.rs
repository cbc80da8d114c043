//! Hand-checked reference matrices used by the verification suites.
//!
//! Each fixture is a plain-text lower triangle, one row per line, entries
//! whitespace-separated. Scale-parameterized patterns carry the literal
//! token `phi` and are instantiated at a concrete rational before any
//! comparison; all comparisons against these fixtures are bit-exact.

use crate::error::{Error, Result};
use crate::fps::{parse_rational, Rational};
use crate::triangle::LowerTriangular;

/// Period-2 block pattern, 10 rows, symbolic scale.
pub const BLOCK_Q2: &str = include_str!("golden/block_q2.txt");
/// Period-3 block pattern, 10 rows, symbolic scale.
pub const BLOCK_Q3: &str = include_str!("golden/block_q3.txt");
/// The signless q-binomial triangle at q = -1 (7 rows).
pub const QBINOMIAL_NEG1: &str = include_str!("golden/qbinomial_neg1.txt");
/// Binary Sierpinski triangle (Pascal mod 2), 16 rows.
pub const SIERPINSKI16: &str = include_str!("golden/sierpinski16.txt");
/// Lagrange-part matrix of the even geometric series over the period-2
/// zero block (7 rows).
pub const LAGRANGE_EVEN: &str = include_str!("golden/lagrange_even.txt");
/// Lagrange-part matrix of the geometric series over the period-2 zero
/// block (7 rows).
pub const LAGRANGE_GEOM: &str = include_str!("golden/lagrange_geom.txt");
/// Their product: Lagrange-part matrix of the Fibonacci series (7 rows).
pub const LAGRANGE_FIB: &str = include_str!("golden/lagrange_fib.txt");
/// Bell pair of the even geometric series (6 rows).
pub const BELL_EVEN: &str = include_str!("golden/bell_even.txt");
/// Bell pair of the geometric series (6 rows).
pub const BELL_GEOM: &str = include_str!("golden/bell_geom.txt");
/// Their product: Bell pair of the Fibonacci series (6 rows).
pub const BELL_FIB: &str = include_str!("golden/bell_fib.txt");
/// The worked pseudo-involution over the period-3 zero block (9 rows).
pub const PSEUDO_INVOLUTION_Q3: &str = include_str!("golden/pseudo_involution_q3.txt");

/// Parse a numeric fixture (no symbolic tokens).
pub fn parse_numeric(text: &str) -> Result<LowerTriangular> {
    parse_with(text, parse_rational)
}

/// Parse a fixture, substituting the concrete `phi` for the symbolic token.
pub fn instantiate(text: &str, phi: &Rational) -> Result<LowerTriangular> {
    parse_with(text, |tok| {
        if tok == "phi" {
            Ok(phi.clone())
        } else {
            parse_rational(tok)
        }
    })
}

fn parse_with(
    text: &str,
    mut tok: impl FnMut(&str) -> Result<Rational>,
) -> Result<LowerTriangular> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<Rational>> = line.split_whitespace().map(&mut tok).collect();
        rows.push(row?);
    }
    if rows.is_empty() {
        return Err(Error::Parse("empty fixture".into()));
    }
    LowerTriangular::from_rows(rows)
}
