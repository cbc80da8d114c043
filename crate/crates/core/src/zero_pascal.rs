//! Zero and nonzero special Pascal systems and their twisted convolution
//! algebra.
//!
//! A [`ZeroPascalSpec`] describes a generalized Pascal matrix as a Hadamard
//! product of primitive factors, evaluated entrywise without materializing
//! the factors:
//!
//! - `Block(q, phi)`: entry 1 when `n mod q >= m mod q`, else `phi`;
//! - `Fractal(q, phi)`: the block rule applied at every scale `q^k`
//!   (at `phi = 0` this is the generalized Sierpinski pattern);
//! - `CParam(c)`: the generalized binomial entry `c_m c_(n-m) / c_n`.
//!
//! The spec is "zero" when some factor has `phi = 0`. A [`CircSeries`]
//! couples a series to such a spec and multiplies by the convolution
//! twisted with the spec's entries, which is exactly the product of the
//! matrices `(a | P)` with entries `a_(n-m) P_(n,m)`.

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fps::{frac, parse_rational, rat, Rational, Series};
use crate::riordan::GroupParameter;
use crate::triangle::LowerTriangular;

/// One Hadamard factor of a (zero) generalized Pascal matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Block { q: usize, phi: Rational },
    Fractal { q: usize, phi: Rational },
    CParam(GroupParameter),
}

impl Factor {
    fn check(&self) -> Result<()> {
        match self {
            Factor::Block { q, .. } | Factor::Fractal { q, .. } if *q < 2 => {
                Err(Error::InvalidSpec(format!("factor base q = {q} must be >= 2")))
            }
            _ => Ok(()),
        }
    }

    /// Entry of this factor at `(n, m)` with `m <= n`.
    fn entry(&self, n: usize, m: usize) -> Rational {
        match self {
            Factor::Block { q, phi } => {
                if n % q >= m % q {
                    Rational::one()
                } else {
                    phi.clone()
                }
            }
            Factor::Fractal { q, phi } => {
                // scales q^k > n contribute 1 because then n mod q^k = n >= m
                let mut acc = Rational::one();
                let mut qk = *q;
                while qk <= n {
                    if n % qk < m % qk {
                        if phi.is_zero() {
                            return Rational::zero();
                        }
                        acc *= phi;
                    }
                    qk *= q;
                }
                acc
            }
            Factor::CParam(c) => {
                let s = c.series();
                s.coeff(m) * s.coeff(n - m) / s.coeff(n)
            }
        }
    }
}

/// A (possibly zero) generalized Pascal matrix as a Hadamard product of
/// primitive factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPascalSpec {
    factors: Vec<Factor>,
}

impl ZeroPascalSpec {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidSpec("at least one factor is required".into()));
        }
        for f in &factors {
            f.check()?;
        }
        Ok(ZeroPascalSpec { factors })
    }

    pub fn block(q: usize, phi: Rational) -> Result<Self> {
        Self::new(vec![Factor::Block { q, phi }])
    }

    pub fn fractal(q: usize, phi: Rational) -> Result<Self> {
        Self::new(vec![Factor::Fractal { q, phi }])
    }

    pub fn cparam(c: GroupParameter) -> Self {
        ZeroPascalSpec { factors: vec![Factor::CParam(c)] }
    }

    /// Extend the Hadamard product by one more factor.
    pub fn times(mut self, factor: Factor) -> Result<Self> {
        factor.check()?;
        self.factors.push(factor);
        Ok(self)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// True when some factor carries `phi = 0`.
    pub fn is_zero(&self) -> bool {
        self.factors.iter().any(|f| match f {
            Factor::Block { phi, .. } | Factor::Fractal { phi, .. } => phi.is_zero(),
            Factor::CParam(_) => false,
        })
    }

    /// Largest row index the spec can evaluate (bounded by CParam orders).
    pub fn max_order(&self) -> Option<usize> {
        self.factors
            .iter()
            .filter_map(|f| match f {
                Factor::CParam(c) => Some(c.order()),
                _ => None,
            })
            .min()
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if let Some(limit) = self.max_order() {
            if n > limit {
                return Err(Error::IndexOutOfRange { index: n, limit });
            }
        }
        Ok(())
    }

    /// Base `q` of the first zero Block/Fractal factor, if any.
    pub fn leading_zero_base(&self) -> Option<usize> {
        self.factors.iter().find_map(|f| match f {
            Factor::Block { q, phi } | Factor::Fractal { q, phi } if phi.is_zero() => Some(*q),
            _ => None,
        })
    }

    /// Does the Hadamard product contain a zero block (or zero fractal,
    /// which includes the block at scale q) with this base?
    pub fn has_zero_base(&self, q: usize) -> bool {
        self.factors.iter().any(|f| match f {
            Factor::Block { q: fq, phi } | Factor::Fractal { q: fq, phi } => {
                *fq == q && phi.is_zero()
            }
            Factor::CParam(_) => false,
        })
    }

    pub(crate) fn entry_unchecked(&self, n: usize, m: usize) -> Rational {
        if m > n {
            return Rational::zero();
        }
        let mut acc = Rational::one();
        for f in &self.factors {
            let e = f.entry(n, m);
            if e.is_zero() {
                return Rational::zero();
            }
            acc *= e;
        }
        acc
    }

    /// Entry `(n, m)` of the realized matrix; zero above the diagonal.
    pub fn entry(&self, n: usize, m: usize) -> Result<Rational> {
        self.check_order(n)?;
        Ok(self.entry_unchecked(n, m))
    }

    /// Materialize to dimension `n + 1`.
    pub fn matrix(&self, n: usize) -> Result<LowerTriangular> {
        self.check_order(n)?;
        Ok(LowerTriangular::from_fn(n + 1, |i, j| self.entry_unchecked(i, j)))
    }

    /// Sequential variant of [`ZeroPascalSpec::matrix`].
    pub fn matrix_seq(&self, n: usize) -> Result<LowerTriangular> {
        self.check_order(n)?;
        Ok(LowerTriangular::from_fn_seq(n + 1, |i, j| self.entry_unchecked(i, j)))
    }

    /// Parse a Hadamard-product literal such as
    /// `"block:q=2,phi=0 * fractal:q=3,phi=1/2 * cparam:exp"`.
    ///
    /// CParam factors accept `exp`, `geom`, or a `;`-separated coefficient
    /// list (`cparam:1;1;1/2`), materialized at `order`.
    pub fn parse(literal: &str, order: usize) -> Result<Self> {
        let mut factors = Vec::new();
        for part in literal.split('*') {
            let part = part.trim();
            let (kind, args) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("factor {part:?} lacks a ':'")))?;
            match kind.trim() {
                "block" | "fractal" => {
                    let mut q = None;
                    let mut phi = None;
                    for kv in args.split(',') {
                        let (k, v) = kv
                            .split_once('=')
                            .ok_or_else(|| Error::Parse(format!("bad key=value {kv:?}")))?;
                        match k.trim() {
                            "q" => {
                                q = Some(v.trim().parse::<usize>().map_err(|_| {
                                    Error::Parse(format!("bad q value {v:?}"))
                                })?)
                            }
                            "phi" => phi = Some(parse_rational(v)?),
                            other => {
                                return Err(Error::Parse(format!("unknown key {other:?}")))
                            }
                        }
                    }
                    let q = q.ok_or_else(|| Error::Parse("missing q".into()))?;
                    let phi = phi.ok_or_else(|| Error::Parse("missing phi".into()))?;
                    factors.push(if kind.trim() == "block" {
                        Factor::Block { q, phi }
                    } else {
                        Factor::Fractal { q, phi }
                    });
                }
                "cparam" => {
                    let c = match args.trim() {
                        "exp" => GroupParameter::exponential(order),
                        "geom" => GroupParameter::geometric(order),
                        list => {
                            let coeffs: Vec<&str> = list.split(';').collect();
                            let s = Series::from_strs(&coeffs, coeffs.len() - 1)
                                .map_err(|e| Error::Parse(e.to_string()))?;
                            GroupParameter::new(s)
                                .map_err(|e| Error::Parse(e.to_string()))?
                        }
                    };
                    factors.push(Factor::CParam(c));
                }
                other => return Err(Error::Parse(format!("unknown factor kind {other:?}"))),
            }
        }
        ZeroPascalSpec::new(factors)
    }
}

/// The group parameter `c(phi,q,x) = (1 + x + ... + x^(q-1)) / (1 - x^q/phi)`
/// whose Pascal matrix carries the block rule; requires `phi != 0`.
pub fn block_parameter(q: usize, phi: &Rational, order: usize) -> Result<GroupParameter> {
    if q < 2 {
        return Err(Error::InvalidSpec("q must be >= 2".into()));
    }
    if phi.is_zero() {
        return Err(Error::ConstraintViolation(
            "phi = 0 has no group parameter; use the zero spec directly".into(),
        ));
    }
    let inv_phi = phi.recip();
    GroupParameter::new(Series::from_fn(order, |n| {
        crate::fps::rat_pow(&inv_phi, (n / q) as i64)
    }))
}

/// Block replication `c_q(x) = [1/(1-x)]_q c(x^q)`: coefficient `c_n` on the
/// whole n-th block of q consecutive indices.
pub fn cq_parameter(c: &GroupParameter, q: usize, order: usize) -> Result<GroupParameter> {
    if q < 2 {
        return Err(Error::InvalidSpec("q must be >= 2".into()));
    }
    if c.order() < order / q {
        return Err(Error::IndexOutOfRange { index: order / q, limit: c.order() });
    }
    GroupParameter::new(Series::from_fn(order, |n| c.series().coeff(n / q).clone()))
}

/// First column of the fractal matrix at `phi = q`: coefficient `q^k` at
/// index `n`, where `q^k` is the largest power of `q` dividing `n`
/// (the distribution of divisors `q^k` over the naturals).
pub fn fractal_first_column(q: usize, n: usize) -> Result<Series> {
    if q < 2 {
        return Err(Error::InvalidSpec("q must be >= 2".into()));
    }
    Ok(Series::from_fn(n, |i| {
        if i == 0 {
            return Rational::zero();
        }
        let mut acc = Rational::one();
        let mut v = i;
        while v % q == 0 {
            acc *= rat(q as i64);
            v /= q;
        }
        acc
    }))
}

/// A series attached to a zero-Pascal spec; products are twisted by the
/// spec's entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircSeries {
    series: Series,
    spec: ZeroPascalSpec,
}

impl CircSeries {
    pub fn new(series: Series, spec: ZeroPascalSpec) -> Result<Self> {
        if let Some(limit) = spec.max_order() {
            if series.order() > limit {
                return Err(Error::IndexOutOfRange { index: series.order(), limit });
            }
        }
        Ok(CircSeries { series, spec })
    }

    pub fn one(spec: ZeroPascalSpec, order: usize) -> Result<Self> {
        Self::new(Series::one(order), spec)
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn spec(&self) -> &ZeroPascalSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    fn check_spec(&self, rhs: &CircSeries) -> Result<()> {
        if self.spec != rhs.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    /// Twisted convolution `[x^n](a o b) = sum_m P_(n,m) a_(n-m) b_m`.
    pub fn mul(&self, rhs: &CircSeries) -> Result<CircSeries> {
        self.check_spec(rhs)?;
        Ok(CircSeries {
            series: circ_mul_raw(&self.series, &rhs.series, &self.spec),
            spec: self.spec.clone(),
        })
    }

    /// `n`-fold twisted product (`n >= 0`).
    pub fn pow_int(&self, n: usize) -> CircSeries {
        let mut acc = Series::one(self.series.order());
        for _ in 0..n {
            acc = circ_mul_raw(&acc, &self.series, &self.spec);
        }
        CircSeries { series: acc, spec: self.spec.clone() }
    }

    /// Binomial series `sum C(phi, k) (a - 1)^(o k)` for rational `phi`;
    /// requires `a_0 = 1`.
    pub fn pow(&self, phi: &Rational) -> Result<CircSeries> {
        if !self.series.coeff(0).is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let order = self.series.order();
        let d = &self.series - &Series::one(order);
        let mut out = Series::one(order);
        let mut p = Series::one(order);
        let mut binom = Rational::one();
        for k in 1..=order {
            p = circ_mul_raw(&p, &d, &self.spec);
            binom *= (phi - rat(k as i64 - 1)) / rat(k as i64);
            out = &out + &p.scale(&binom);
        }
        Ok(CircSeries { series: out, spec: self.spec.clone() })
    }

    /// Twisted Mercator series; requires `a_0 = 1`.
    pub fn log(&self) -> Result<CircSeries> {
        if !self.series.coeff(0).is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let order = self.series.order();
        let d = &self.series - &Series::one(order);
        let mut out = Series::zero(order);
        let mut p = Series::one(order);
        for k in 1..=order {
            p = circ_mul_raw(&p, &d, &self.spec);
            out = &out + &p.scale(&frac(if k % 2 == 1 { 1 } else { -1 }, k as i64));
        }
        Ok(CircSeries { series: out, spec: self.spec.clone() })
    }

    /// Twisted exponential; requires `b_0 = 0`.
    pub fn exp(&self) -> Result<CircSeries> {
        if !self.series.coeff(0).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.series.order();
        let mut out = Series::one(order);
        let mut p = Series::one(order);
        let mut fact = Rational::one();
        for k in 1..=order {
            p = circ_mul_raw(&p, &self.series, &self.spec);
            fact *= rat(k as i64);
            out = &out + &p.scale(&fact.recip());
        }
        Ok(CircSeries { series: out, spec: self.spec.clone() })
    }

    /// The matrix `(a | P)` with entries `a_(n-m) P_(n,m)`, `dim = n + 1`.
    pub fn matrix(&self, n: usize) -> Result<LowerTriangular> {
        if n > self.series.order() {
            return Err(Error::IndexOutOfRange { index: n, limit: self.series.order() });
        }
        self.spec.check_order(n)?;
        let series = self.series.clone();
        let spec = self.spec.clone();
        Ok(LowerTriangular::from_fn(n + 1, move |i, j| {
            let a = series.coeff(i - j);
            if a.is_zero() {
                Rational::zero()
            } else {
                a * spec.entry_unchecked(i, j)
            }
        }))
    }

    /// A guaranteed square-zero element: nonzero coefficients may sit only
    /// on residues `q - floor(q/2) <= i mod q < q` of the spec's leading
    /// zero base `q`.
    pub fn nilpotent(spec: ZeroPascalSpec, series: Series) -> Result<Self> {
        let q = spec.leading_zero_base().ok_or_else(|| {
            Error::InvalidSpec("nilpotents need a zero Block/Fractal factor".into())
        })?;
        check_support(&series, q)?;
        Self::new(series, spec)
    }

    /// Is this `1 + eta` with `eta` supported on the allowed residues of
    /// base `q`?
    pub fn is_unipotent(&self, q: usize) -> bool {
        if !self.series.coeff(0).is_one() {
            return false;
        }
        let lo = q - q / 2;
        (1..=self.series.order())
            .all(|i| self.series.coeff(i).is_zero() || i % q >= lo)
    }
}

/// Support check for square-zero elements of base `q`.
pub(crate) fn check_support(series: &Series, q: usize) -> Result<()> {
    let lo = q - q / 2;
    for i in 0..=series.order() {
        if !series.coeff(i).is_zero() && i % q < lo {
            return Err(Error::SupportViolation { index: i });
        }
    }
    Ok(())
}

pub(crate) fn circ_mul_raw(a: &Series, b: &Series, spec: &ZeroPascalSpec) -> Series {
    let order = a.order().min(b.order());
    Series::from_fn(order, |n| {
        let mut acc = Rational::zero();
        for m in 0..=n {
            let av = a.coeff(n - m);
            if av.is_zero() {
                continue;
            }
            let bv = b.coeff(m);
            if bv.is_zero() {
                continue;
            }
            let e = spec.entry_unchecked(n, m);
            if !e.is_zero() {
                acc += av * bv * e;
            }
        }
        acc
    })
}
