//! Truncated formal power series over exact rationals.
//!
//! [`Series`] is the universal value type of the crate: a vector of
//! [`Rational`] coefficients up to an inclusive truncation order N.
//! Operations never extend a series; binary operations first align both
//! sides to the smaller order and the result records that order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `num/den`. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `"p"` or `"p/q"` (with optional sign) into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((_, den)) = s.split_once('/') {
        if BigInt::from_str(den.trim()).map(|d| d.is_zero()).unwrap_or(false) {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
    }
    Rational::from_str(s).map_err(|_| Error::Parse(format!("bad rational literal {s:?}")))
}

/// Render a rational as `"p"` or `"p/q"` in lowest terms.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `base^exp` for possibly negative `exp`; requires nonzero base when `exp < 0`.
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let mut acc = Rational::one();
    let b = if exp > 0 {
        base.clone()
    } else {
        assert!(!base.is_zero(), "negative power of zero");
        base.recip()
    };
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    acc
}

/// Generalized binomial coefficient `phi (phi-1) ... (phi-n+1) / n!`.
pub fn gen_binom(phi: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    for k in 0..n {
        acc *= phi - rat(k as i64);
        acc /= rat(k as i64 + 1);
    }
    acc
}

/// Pochhammer symbol `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        acc *= a + rat(j as i64);
    }
    acc
}

/// A formal power series truncated at an inclusive order N:
/// coefficient `n` holds `[x^n] a(x)` for `0 <= n <= N`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Build from explicit coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the constant term");
        Series { coeffs }
    }

    /// Zero series of the given order.
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![Rational::zero(); order + 1] }
    }

    /// Constant 1.
    pub fn one(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Constant series.
    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * x^k`, zero elsewhere. Requires `k <= order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        assert!(k <= order);
        let mut s = Series::zero(order);
        s.coeffs[k] = c;
        s
    }

    /// Geometric series `1/(1-x)`: all coefficients 1.
    pub fn geometric(order: usize) -> Self {
        Series { coeffs: vec![Rational::one(); order + 1] }
    }

    /// Exponential series: coefficient `1/n!`.
    pub fn exponential(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut f = Rational::one();
        for n in 0..=order {
            if n > 0 {
                f /= rat(n as i64);
            }
            coeffs.push(f.clone());
        }
        Series { coeffs }
    }

    /// Coefficients from integer literals, padded with zeros to `order`.
    pub fn from_ints(values: &[i64], order: usize) -> Self {
        let mut s = Series::zero(order);
        for (i, v) in values.iter().enumerate().take(order + 1) {
            s.coeffs[i] = rat(*v);
        }
        s
    }

    /// Coefficients from `"p/q"` literals, padded with zeros to `order`.
    pub fn from_strs(values: &[&str], order: usize) -> Result<Self> {
        let mut s = Series::zero(order);
        for (i, v) in values.iter().enumerate() {
            if i > order {
                break;
            }
            s.coeffs[i] = parse_rational(v)?;
        }
        Ok(s)
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Series { coeffs: (0..=order).map(f).collect() }
    }

    /// Inclusive truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `[x^n]`; panics beyond the truncation order.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Copy truncated to `order` (which must not exceed the current order).
    pub fn truncated(&self, order: usize) -> Series {
        assert!(order <= self.order(), "truncation cannot extend a series");
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    fn aligned_len(&self, rhs: &Series) -> usize {
        self.coeffs.len().min(rhs.coeffs.len())
    }

    /// Cauchy product, aligned to the smaller order.
    pub fn mul(&self, rhs: &Series) -> Series {
        let n = self.aligned_len(rhs);
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if !rhs.coeffs[j].is_zero() {
                    out[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
                }
            }
        }
        Series { coeffs: out }
    }

    /// Coefficientwise (Hadamard) product.
    pub fn hadamard(&self, rhs: &Series) -> Series {
        let n = self.aligned_len(rhs);
        Series { coeffs: (0..n).map(|i| &self.coeffs[i] * &rhs.coeffs[i]).collect() }
    }

    /// Scalar multiple.
    pub fn scale(&self, k: &Rational) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    ///
    /// Solves the triangular system `sum_{j<=k} a_j b_{k-j} = [k=0]` coefficientwise.
    pub fn inv(&self) -> Result<Series> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        let a0_inv = self.coeffs[0].recip();
        out[0] = a0_inv.clone();
        for k in 1..n {
            let mut s = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -s * &a0_inv;
        }
        Ok(Series { coeffs: out })
    }

    /// Composition `a(h(x))`; requires `h(0) = 0`.
    pub fn compose(&self, h: &Series) -> Result<Series> {
        if !h.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantInner);
        }
        let n = self.aligned_len(h);
        let mut out = vec![Rational::zero(); n];
        out[0] = self.coeffs[0].clone();
        // h^k has valuation >= k, so k ranges over 1..n only.
        let mut hp = Series::one(n - 1);
        for k in 1..n {
            hp = hp.mul(h);
            if self.coeffs[k].is_zero() {
                continue;
            }
            for (i, c) in hp.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    out[i] += c * &self.coeffs[k];
                }
            }
        }
        Ok(Series { coeffs: out })
    }

    /// Mercator series `sum (-1)^(n-1)/n (a-1)^n`; requires `a(0) = 1`.
    pub fn log(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let order = self.order();
        let d = self - &Series::one(order);
        let mut out = Series::zero(order);
        let mut p = Series::one(order);
        for k in 1..=order {
            p = p.mul(&d);
            let c = frac(if k % 2 == 1 { 1 } else { -1 }, k as i64);
            out = &out + &p.scale(&c);
        }
        Ok(out)
    }

    /// `sum b^n / n!`; requires `b(0) = 0`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut out = Series::one(order);
        let mut p = Series::one(order);
        let mut fact = Rational::one();
        for k in 1..=order {
            p = p.mul(self);
            fact *= rat(k as i64);
            out = &out + &p.scale(&fact.recip());
        }
        Ok(out)
    }

    /// Binomial series `sum C(phi, n) (a-1)^n` for rational `phi`; requires `a(0) = 1`.
    ///
    /// Each coefficient is a finite sum because `a - 1` has positive valuation.
    pub fn pow(&self, phi: &Rational) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let order = self.order();
        let d = self - &Series::one(order);
        let mut out = Series::one(order);
        let mut p = Series::one(order);
        let mut binom = Rational::one();
        for k in 1..=order {
            p = p.mul(&d);
            binom *= (phi - rat(k as i64 - 1)) / rat(k as i64);
            out = &out + &p.scale(&binom);
        }
        Ok(out)
    }

    /// Integer power by repeated squaring; negative exponents go through `inv`.
    pub fn powi(&self, k: i64) -> Result<Series> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Series::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Zero out all coefficients at index `q` and above (the q-block head).
    pub fn block_truncate(&self, q: usize) -> Series {
        let mut out = self.clone();
        for i in q..out.coeffs.len() {
            out.coeffs[i] = Rational::zero();
        }
        out
    }

    /// `a(x^q)` truncated at `order`.
    pub fn stretch(&self, q: usize, order: usize) -> Series {
        assert!(q >= 1);
        let mut out = Series::zero(order);
        for k in 0..=order / q {
            if k < self.coeffs.len() {
                out.coeffs[q * k] = self.coeffs[k].clone();
            }
        }
        out
    }

    /// `a(kx)`: coefficient `n` scaled by `k^n`.
    pub fn scale_arg(&self, k: &Rational) -> Series {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut p = Rational::one();
        for c in &self.coeffs {
            out.push(c * &p);
            p *= k;
        }
        Series { coeffs: out }
    }

    /// `a(-x)`.
    pub fn alternate(&self) -> Series {
        self.scale_arg(&rat(-1))
    }

    /// `x^k * a(x)` at the same order (high coefficients fall off).
    pub fn shift_up(&self, k: usize) -> Series {
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        if k < n {
            out[k..].clone_from_slice(&self.coeffs[..n - k]);
        }
        Series { coeffs: out }
    }

    /// `x a'(x)`: coefficient `n` times `n`.
    pub fn x_derivative(&self) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * rat(n as i64))
                .collect(),
        }
    }

    /// `a'(x)` at order N-1.
    pub fn derivative(&self) -> Series {
        assert!(self.order() >= 1);
        Series {
            coeffs: (1..self.coeffs.len()).map(|n| &self.coeffs[n] * rat(n as i64)).collect(),
        }
    }

    /// Coefficients as `"p/q"` strings (shared JSON format).
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.to_strings().into_iter().map(serde_json::Value::String).collect(),
        )
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}]", self.to_strings().join(", "))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff = format_rational(&mag);
            match n {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    if n == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{n}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.aligned_len(rhs);
        Series { coeffs: (0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.aligned_len(rhs);
        Series { coeffs: (0..n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

/// A polynomial in a formal scalar with rational coefficients, kept at
/// canonical degree (no trailing zero coefficients; the zero polynomial
/// stores nothing).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPolynomial {
    coeffs: Vec<Rational>,
}

impl ParamPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        ParamPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        ParamPolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Exact division by the variable; requires a zero constant term.
    pub fn div_var(&self) -> Result<ParamPolynomial> {
        if self.is_zero() {
            return Ok(ParamPolynomial::zero());
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidSequence(
                "polynomial has a nonzero constant term".into(),
            ));
        }
        Ok(ParamPolynomial { coeffs: self.coeffs[1..].to_vec() })
    }
}
