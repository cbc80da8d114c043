//! Ordinary and generalized Riordan matrices, generalized binomial
//! coefficients, Pascal matrices, the six families of group parameters
//! compatible with a plain Riordan pair, and Hadamard factorization.
//!
//! A generalized Riordan matrix is materialized as the diagonal
//! conjugation `|c|^-1 (f, xg) |c|` of the ordinary matrix whose column m
//! has generating function `f x^m g^m`.

use std::collections::BTreeMap;

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fps::{frac, pochhammer, rat, rat_pow, Rational, Series};
use crate::triangle::LowerTriangular;

/// The parameter sequence of a generalized Riordan group: a series with
/// `c_0 = c_1 = 1` and every coefficient nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupParameter {
    c: Series,
}

impl GroupParameter {
    pub fn new(c: Series) -> Result<Self> {
        if !c.coeff(0).is_one() {
            return Err(Error::InvalidSequence("c_0 must be 1".into()));
        }
        if c.order() >= 1 && !c.coeff(1).is_one() {
            return Err(Error::InvalidSequence("c_1 must be 1 (normalization)".into()));
        }
        if let Some(n) = (0..=c.order()).find(|&n| c.coeff(n).is_zero()) {
            return Err(Error::InvalidSequence(format!("c_{n} is zero")));
        }
        Ok(GroupParameter { c })
    }

    /// All-ones parameter (the ordinary Riordan group).
    pub fn geometric(order: usize) -> Self {
        GroupParameter { c: Series::geometric(order) }
    }

    /// `c_n = 1/n!` (the exponential Riordan group).
    pub fn exponential(order: usize) -> Self {
        GroupParameter { c: Series::exponential(order) }
    }

    /// Rescale the argument so that `c_1 = 1` (`c_n -> c_n / c_1^n`), then
    /// validate. The attached Pascal matrix is unchanged by this rescaling.
    pub fn normalized(c: Series) -> Result<Self> {
        if c.order() >= 1 && !c.coeff(1).is_zero() && !c.coeff(1).is_one() {
            let s = c.coeff(1).recip();
            GroupParameter::new(c.scale_arg(&s))
        } else {
            GroupParameter::new(c)
        }
    }

    pub fn series(&self) -> &Series {
        &self.c
    }

    pub fn order(&self) -> usize {
        self.c.order()
    }

    pub fn is_ordinary(&self) -> bool {
        (0..=self.order()).all(|n| self.c.coeff(n).is_one())
    }

    /// Generalized binomial coefficient `c_m c_(n-m) / c_n`; zero for `m > n`.
    pub fn binomial(&self, n: usize, m: usize) -> Result<Rational> {
        if n > self.order() {
            return Err(Error::IndexOutOfRange { index: n, limit: self.order() });
        }
        if m > n {
            return Ok(Rational::zero());
        }
        Ok(self.c.coeff(m) * self.c.coeff(n - m) / self.c.coeff(n))
    }

    /// The generalized Pascal matrix of this parameter, `dim = n + 1`.
    pub fn pascal_matrix(&self, n: usize) -> Result<LowerTriangular> {
        if n > self.order() {
            return Err(Error::IndexOutOfRange { index: n, limit: self.order() });
        }
        let c = self.c.clone();
        Ok(LowerTriangular::from_fn(n + 1, move |i, j| {
            c.coeff(j) * c.coeff(i - j) / c.coeff(i)
        }))
    }

    /// The associated b-sequence `b_n = c_1 c_(n-1) / c_n` (the first-column
    /// generating function of the Pascal matrix).
    pub fn b_sequence(&self) -> BSequence {
        let c = &self.c;
        BSequence {
            b: Series::from_fn(self.order(), |n| {
                if n == 0 {
                    Rational::zero()
                } else {
                    c.coeff(1) * c.coeff(n - 1) / c.coeff(n)
                }
            }),
        }
    }

    /// `|c| a`: coefficientwise weight by `c_n`.
    pub fn weight(&self, a: &Series) -> Series {
        a.hadamard(&self.c)
    }

    /// `|c|^-1 a`: coefficientwise division by `c_n`.
    pub fn unweight(&self, a: &Series) -> Series {
        let n = a.order().min(self.order());
        Series::from_fn(n, |i| a.coeff(i) / self.c.coeff(i))
    }

    /// The product of the algebra attached to this Pascal matrix:
    /// `a * b = |c|^-1 (|c|a)(|c|b)`.
    pub fn star_mul(&self, a: &Series, b: &Series) -> Series {
        self.unweight(&self.weight(a).mul(&self.weight(b)))
    }

    /// Logarithm in the same algebra: `|c|^-1 log(|c|a)`; requires `a_0 = 1`.
    pub fn star_log(&self, a: &Series) -> Result<Series> {
        Ok(self.unweight(&self.weight(a).log()?))
    }
}

/// A series with `b_0 = 0` and `b_n != 0` for `n >= 1`; carries generalized
/// factorials and binomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSequence {
    b: Series,
}

impl BSequence {
    pub fn new(b: Series) -> Result<Self> {
        if !b.coeff(0).is_zero() {
            return Err(Error::InvalidSequence("b_0 must be 0".into()));
        }
        if let Some(n) = (1..=b.order()).find(|&n| b.coeff(n).is_zero()) {
            return Err(Error::InvalidSequence(format!("b_{n} is zero")));
        }
        Ok(BSequence { b })
    }

    pub fn series(&self) -> &Series {
        &self.b
    }

    pub fn order(&self) -> usize {
        self.b.order()
    }

    /// Generalized factorial `b_n! = b_1 b_2 ... b_n`.
    pub fn factorial(&self, n: usize) -> Rational {
        let mut acc = Rational::one();
        for k in 1..=n {
            acc *= self.b.coeff(k);
        }
        acc
    }

    /// `b_n! / (b_m! b_(n-m)!)`; zero for `m > n`.
    pub fn binomial(&self, n: usize, m: usize) -> Rational {
        if m > n {
            return Rational::zero();
        }
        self.factorial(n) / (self.factorial(m) * self.factorial(n - m))
    }

    /// Recover the group parameter: `c_n = c_1^n / b_n! = 1/b_n!`.
    pub fn to_parameter(&self) -> Result<GroupParameter> {
        let order = self.order();
        let c = Series::from_fn(order, |n| self.factorial(n).recip());
        GroupParameter::new(c)
    }
}

/// A (generalized) Riordan pair `(f, xg)_c` with `f_0 != 0`, `g_0 != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiordanSpec {
    f: Series,
    g: Series,
    parameter: GroupParameter,
}

impl RiordanSpec {
    pub fn new(f: Series, g: Series, parameter: GroupParameter) -> Result<Self> {
        if f.coeff(0).is_zero() || g.coeff(0).is_zero() {
            return Err(Error::InvalidSpec("f and g need nonzero constant terms".into()));
        }
        Ok(RiordanSpec { f, g, parameter })
    }

    /// Ordinary pair (parameter all ones at the common order of `f`, `g`).
    pub fn ordinary(f: Series, g: Series) -> Result<Self> {
        let order = f.order().min(g.order());
        Self::new(f, g, GroupParameter::geometric(order))
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn parameter(&self) -> &GroupParameter {
        &self.parameter
    }

    /// Materialize to dimension `n + 1` via diagonal conjugation of the
    /// ordinary column construction.
    pub fn matrix(&self, n: usize) -> Result<LowerTriangular> {
        let m = ordinary_matrix(&self.f, &self.g, n + 1);
        if self.parameter.is_ordinary() {
            return Ok(m);
        }
        if self.parameter.order() < n {
            return Err(Error::IndexOutOfRange { index: n, limit: self.parameter.order() });
        }
        m.conjugate_by_diagonal(self.parameter.series())
    }

    /// Group law `(f1, xg1)(f2, xg2) = (f1 f2(xg1), xg1 g2(xg1))`.
    pub fn mul(&self, rhs: &RiordanSpec) -> Result<RiordanSpec> {
        if self.parameter != rhs.parameter {
            return Err(Error::ParameterMismatch);
        }
        let xg1 = self.g.shift_up(1);
        let f = self.f.mul(&rhs.f.compose(&xg1)?);
        let g = self.g.mul(&rhs.g.compose(&xg1)?);
        RiordanSpec::new(f, g, self.parameter.clone())
    }
}

/// Ordinary Riordan matrix: column m has generating function `f x^m g^m`.
fn ordinary_matrix(f: &Series, g: &Series, dim: usize) -> LowerTriangular {
    let mut cols: Vec<Series> = Vec::with_capacity(dim);
    let mut col = f.clone();
    for _ in 0..dim {
        cols.push(col.clone());
        col = col.mul(g);
    }
    LowerTriangular::from_fn_seq(dim, |n, m| {
        if n - m <= cols[m].order() {
            cols[m].coeff(n - m).clone()
        } else {
            Rational::zero()
        }
    })
}

/// Entrywise comparison report of two matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub equal: bool,
    /// First differing entry `(row, col, left, right)` in row-major order.
    pub first_mismatch: Option<(usize, usize, Rational, Rational)>,
}

/// Check `|c|^-1 (f1, xg1) |c| = (f2, xg2)` entrywise up to order `n`.
pub fn verify_equivalence(
    f1: &Series,
    g1: &Series,
    c: &GroupParameter,
    f2: &Series,
    g2: &Series,
    n: usize,
) -> Result<EquivalenceReport> {
    let left = RiordanSpec::new(f1.clone(), g1.clone(), c.clone())?.matrix(n)?;
    let right = ordinary_matrix(f2, g2, n + 1);
    Ok(compare_matrices(&left, &right))
}

fn compare_matrices(left: &LowerTriangular, right: &LowerTriangular) -> EquivalenceReport {
    for i in 0..left.dim() {
        for j in 0..=i {
            if left.entry(i, j) != right.entry(i, j) {
                return EquivalenceReport {
                    equal: false,
                    first_mismatch: Some((i, j, left.entry(i, j), right.entry(i, j))),
                };
            }
        }
    }
    EquivalenceReport { equal: true, first_mismatch: None }
}

/// The six families of group parameters for which a displayed Riordan pair
/// stays an ordinary Riordan pair under conjugation. Block values are the
/// free sequence `c_1, ..., c_m` (with `c_0 = 1` implicit); the resulting
/// sequence must satisfy the `GroupParameter` invariants, in particular the
/// caller supplies `c_1 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// 1: purely periodic pattern `c_(km+i) = c_m^k c_i`.
    Periodic { m: usize, block: Vec<Rational> },
    /// 2: periodic pattern with one scaled position `n0` (scale `phi`);
    /// for `n0 = 0` the whole tail is scaled instead.
    ScaledTerm { m: usize, n0: usize, phi: Rational, block: Vec<Rational> },
    /// 3: periodic pattern broken from position `n0 + m` on, restarting at
    /// `break_value`.
    BrokenPeriodic { m: usize, n0: usize, block: Vec<Rational>, break_value: Rational },
    /// 4: `c_(km+i) = (alpha c_m)^k c_i / (alpha + i/m)_k`.
    Pochhammer { m: usize, alpha: Rational, block: Vec<Rational> },
    /// 5: `c_(km+i) = ((beta + i/m)_k / (alpha + i/m)_k) (alpha c_m / beta)^k c_i`.
    PochhammerRatio { m: usize, alpha: Rational, beta: Rational, block: Vec<Rational> },
    /// 6: `c_(km+i) = ((beta + i/m) / (beta + k + i/m)) ((beta+1) c_m / beta)^k c_i`.
    ShiftedRatio { m: usize, beta: Rational, block: Vec<Rational> },
}

/// Free inputs for a family's defining identity: a scale `phi` for families
/// 3-5 and free series for families 1, 2 and 6.
#[derive(Clone, Debug, Default)]
pub struct FamilyProbe {
    pub phi: Option<Rational>,
    pub f: Option<Series>,
    pub g: Option<Series>,
}

impl FamilyProbe {
    pub fn phi(phi: Rational) -> Self {
        FamilyProbe { phi: Some(phi), f: None, g: None }
    }

    pub fn lagrange(g: Series) -> Self {
        FamilyProbe { phi: None, f: None, g: Some(g) }
    }

    pub fn pair(f: Series, g: Series) -> Self {
        FamilyProbe { phi: None, f: Some(f), g: Some(g) }
    }
}

fn check_block(m: usize, block: &[Rational]) -> Result<()> {
    if m == 0 {
        return Err(Error::ConstraintViolation("period m must be >= 1".into()));
    }
    if block.len() != m {
        return Err(Error::ConstraintViolation(format!(
            "expected {m} block values c_1..c_m, got {}",
            block.len()
        )));
    }
    if let Some(i) = block.iter().position(|v| v.is_zero()) {
        return Err(Error::ConstraintViolation(format!("block value c_{} is zero", i + 1)));
    }
    Ok(())
}

/// `1 + phi x^m` at the given order (just 1 when `m` exceeds the order).
fn one_plus(phi: &Rational, m: usize, order: usize) -> Series {
    if m > order {
        Series::one(order)
    } else {
        &Series::one(order) + &Series::monomial(phi.clone(), m, order)
    }
}

/// `c_(km+i) = c_m^k c_i` from block values `c_1..c_m`.
fn periodic_sequence(m: usize, block: &[Rational], order: usize) -> Series {
    let cm = &block[m - 1];
    Series::from_fn(order, |n| {
        let (k, i) = (n / m, n % m);
        let ci = if i == 0 { Rational::one() } else { block[i - 1].clone() };
        rat_pow(cm, k as i64) * ci
    })
}

impl Family {
    /// Period of the pattern.
    pub fn period(&self) -> usize {
        match self {
            Family::Periodic { m, .. }
            | Family::ScaledTerm { m, .. }
            | Family::BrokenPeriodic { m, .. }
            | Family::Pochhammer { m, .. }
            | Family::PochhammerRatio { m, .. }
            | Family::ShiftedRatio { m, .. } => *m,
        }
    }

    /// Materialize the parameter as a normalized group parameter. Pascal
    /// matrices are insensitive to the rescaling `c(x) -> c(x/c_1)` used for
    /// normalization, so this is the canonical representative.
    pub fn parameter(&self, order: usize) -> Result<GroupParameter> {
        let c = self.sequence(order)?;
        GroupParameter::normalized(c).map_err(|e| match e {
            Error::InvalidSequence(msg) => Error::ConstraintViolation(msg),
            other => other,
        })
    }

    /// The raw parameter sequence of the family pattern (not rescaled to
    /// `c_1 = 1`; the defining identities hold for this representative).
    pub fn sequence(&self, order: usize) -> Result<Series> {
        match self {
            Family::Periodic { m, block } => {
                check_block(*m, block)?;
                Ok(periodic_sequence(*m, block, order))
            }
            Family::ScaledTerm { m, n0, phi, block } => {
                check_block(*m, block)?;
                if phi.is_zero() {
                    return Err(Error::ConstraintViolation("phi must be nonzero".into()));
                }
                let base = periodic_sequence(*m, block, order);
                Ok(Series::from_fn(order, |n| {
                    let v = base.coeff(n).clone();
                    if *n0 == 0 {
                        if n == 0 { v } else { v * phi }
                    } else if n == *n0 {
                        v * phi
                    } else {
                        v
                    }
                }))
            }
            Family::BrokenPeriodic { m, n0, block, break_value } => {
                check_block(*m, block)?;
                if *n0 == 0 {
                    return Err(Error::ConstraintViolation("n0 must be positive".into()));
                }
                if break_value.is_zero() {
                    return Err(Error::ConstraintViolation("break value is zero".into()));
                }
                let (k0, i0) = (*n0 / *m, *n0 % *m);
                let cm = &block[*m - 1];
                Ok(Series::from_fn(order, |n| {
                    let (k, i) = (n / *m, n % *m);
                    let ci = if i == 0 { Rational::one() } else { block[i - 1].clone() };
                    if i != i0 || k <= k0 {
                        rat_pow(cm, k as i64) * ci
                    } else {
                        rat_pow(cm, (k - k0 - 1) as i64) * break_value
                    }
                }))
            }
            Family::Pochhammer { m, alpha, block } => {
                check_block(*m, block)?;
                let cm = &block[*m - 1];
                let mut out = Vec::with_capacity(order + 1);
                for n in 0..=order {
                    let (k, i) = (n / *m, n % *m);
                    let ci = if i == 0 { Rational::one() } else { block[i - 1].clone() };
                    let den = pochhammer(&(alpha + frac(i as i64, *m as i64)), k);
                    if den.is_zero() {
                        return Err(Error::ConstraintViolation(
                            "alpha = -n/m within the truncation range".into(),
                        ));
                    }
                    out.push(rat_pow(&(alpha * cm), k as i64) * ci / den);
                }
                Ok(Series::new(out))
            }
            Family::PochhammerRatio { m, alpha, beta, block } => {
                check_block(*m, block)?;
                if alpha == beta {
                    return Err(Error::ConstraintViolation("alpha must differ from beta".into()));
                }
                if beta.is_zero() {
                    return Err(Error::ConstraintViolation("beta must be nonzero".into()));
                }
                let cm = &block[*m - 1];
                let ratio = alpha * cm / beta;
                let mut out = Vec::with_capacity(order + 1);
                for n in 0..=order {
                    let (k, i) = (n / *m, n % *m);
                    let ci = if i == 0 { Rational::one() } else { block[i - 1].clone() };
                    let num = pochhammer(&(beta + frac(i as i64, *m as i64)), k);
                    let den = pochhammer(&(alpha + frac(i as i64, *m as i64)), k);
                    if den.is_zero() || num.is_zero() {
                        return Err(Error::ConstraintViolation(
                            "alpha or beta equals -n/m within the truncation range".into(),
                        ));
                    }
                    out.push(num / den * rat_pow(&ratio, k as i64) * ci);
                }
                Ok(Series::new(out))
            }
            Family::ShiftedRatio { m, beta, block } => {
                check_block(*m, block)?;
                if beta.is_zero() {
                    return Err(Error::ConstraintViolation("beta must be nonzero".into()));
                }
                let cm = &block[*m - 1];
                let base = (beta + rat(1)) * cm / beta;
                let mut out = Vec::with_capacity(order + 1);
                for n in 0..=order {
                    let (k, i) = (n / *m, n % *m);
                    let ci = if i == 0 { Rational::one() } else { block[i - 1].clone() };
                    let den = beta + rat(k as i64) + frac(i as i64, *m as i64);
                    if den.is_zero() {
                        return Err(Error::ConstraintViolation(
                            "beta = -n/m within the truncation range".into(),
                        ));
                    }
                    let num = beta + frac(i as i64, *m as i64);
                    out.push(num / den * rat_pow(&base, k as i64) * ci);
                }
                Ok(Series::new(out))
            }
        }
    }

    /// The two sides `(f1, g1, f2, g2)` of the family's defining identity,
    /// instantiated from the probe, so that `|c|^-1 (f1, xg1) |c| = (f2, xg2)`.
    pub fn identity_sides(
        &self,
        probe: &FamilyProbe,
        order: usize,
    ) -> Result<(Series, Series, Series, Series)> {
        let need_phi = || {
            probe
                .phi
                .clone()
                .ok_or_else(|| Error::ConstraintViolation("this family needs a probe phi".into()))
        };
        let need_g = || {
            probe
                .g
                .clone()
                .ok_or_else(|| Error::ConstraintViolation("this family needs a probe g".into()))
        };
        let c = self.sequence(order)?;
        match self {
            Family::Periodic { m, .. } => {
                let f = probe
                    .f
                    .clone()
                    .ok_or_else(|| Error::ConstraintViolation("family 1 needs a probe f".into()))?;
                let g = need_g()?;
                let inv_cm = c.coeff(*m).recip();
                Ok((
                    f.stretch(*m, order),
                    g.stretch(*m, order),
                    f.scale_arg(&inv_cm).stretch(*m, order),
                    g.scale_arg(&inv_cm).stretch(*m, order),
                ))
            }
            Family::ScaledTerm { m, n0, block, .. } => {
                let g = need_g()?;
                // g = 1 + sum_{n >= q} g_n x^n with n0 < q m; the scaling uses
                // the unscaled periodic block value c*_m.
                if !g.coeff(0).is_one() {
                    return Err(Error::ConstraintViolation("probe g must have g_0 = 1".into()));
                }
                let q = (1..=g.order())
                    .find(|&n| !g.coeff(n).is_zero())
                    .ok_or_else(|| {
                        Error::ConstraintViolation("probe g must differ from 1".into())
                    })?;
                if *n0 >= q * *m {
                    return Err(Error::ConstraintViolation(format!(
                        "n0 = {n0} must be < q*m = {}",
                        q * *m
                    )));
                }
                let inv_cm = block[*m - 1].recip();
                let f = g.powi(-(*n0 as i64))?;
                Ok((
                    f.stretch(*m, order),
                    g.stretch(*m, order),
                    f.scale_arg(&inv_cm).stretch(*m, order),
                    g.scale_arg(&inv_cm).stretch(*m, order),
                ))
            }
            Family::BrokenPeriodic { m, n0, .. } => {
                let phi = need_phi()?;
                let cm = c.coeff(*m).clone();
                let e = frac(*n0 as i64, *m as i64);
                let u = one_plus(&phi, *m, order);
                let v = one_plus(&(&phi / &cm), *m, order);
                Ok((
                    u.pow(&e)?,
                    u.pow(&frac(-1, *m as i64))?,
                    v.pow(&e)?,
                    v.pow(&frac(-1, *m as i64))?,
                ))
            }
            Family::Pochhammer { m, alpha, .. } => {
                let phi = need_phi()?;
                let cm = c.coeff(*m).clone();
                let f1 = Series::monomial(&phi / rat(*m as i64), *m, order).exp()?;
                let lam = -&phi / (rat(*m as i64) * alpha * &cm);
                let v = one_plus(&lam, *m, order);
                Ok((
                    f1,
                    Series::one(order),
                    v.pow(&-alpha.clone())?,
                    v.pow(&frac(-1, *m as i64))?,
                ))
            }
            Family::PochhammerRatio { m, alpha, beta, .. } => {
                // the b = m*beta instance of the family identity
                let phi = need_phi()?;
                let cm = c.coeff(*m).clone();
                let u = one_plus(&phi, *m, order);
                let lam = &phi * beta / (alpha * &cm);
                let v = one_plus(&lam, *m, order);
                Ok((
                    u.pow(&-beta.clone())?,
                    u.pow(&frac(-1, *m as i64))?,
                    v.pow(&-alpha.clone())?,
                    v.pow(&frac(-1, *m as i64))?,
                ))
            }
            Family::ShiftedRatio { m, beta, .. } => {
                let g = need_g()?;
                if !g.coeff(0).is_one() {
                    return Err(Error::ConstraintViolation("probe g must have g_0 = 1".into()));
                }
                // work one x-degree higher so the derivative keeps full order
                let work = order + 1;
                let cm = c.coeff(*m).clone();
                let beta_star = (beta + rat(1)) / beta;
                let lam = (beta_star * &cm).recip();
                let mb = rat(*m as i64) * beta;
                let g1 = g.stretch(*m, work);
                let f1 = g1.pow(&mb)?;
                let gs = g.scale_arg(&lam).stretch(*m, work);
                let xgs = gs.shift_up(1);
                let f2 = xgs.derivative().mul(&gs.pow(&(&mb - rat(1)))?);
                Ok((
                    f1.truncated(order),
                    g1.truncated(order),
                    f2.truncated(order),
                    gs.truncated(order),
                ))
            }
        }
    }

    /// Build both sides of the identity and compare their matrices. The
    /// conjugation uses the raw family sequence (the identities are stated
    /// for that representative, which may have `c_1 != 1`).
    pub fn verify(&self, probe: &FamilyProbe, order: usize) -> Result<EquivalenceReport> {
        let (f1, g1, f2, g2) = self.identity_sides(probe, order)?;
        let c = self.sequence(order)?;
        let left = ordinary_matrix(&f1, &g1, order + 1).conjugate_by_diagonal(&c)?;
        let right = ordinary_matrix(&f2, &g2, order + 1);
        Ok(compare_matrices(&left, &right))
    }
}

/// Is the ordinary Pascal matrix an element of the generalized Riordan group
/// with parameter `(1 + phi x)^(1/phi)`, `phi = -1/alpha`? Checks the
/// identity entrywise to order `n`.
pub fn pascal_membership(alpha: &Rational, n: usize) -> Result<bool> {
    if alpha.is_zero() {
        return Err(Error::ConstraintViolation("alpha must be nonzero".into()));
    }
    for k in 0..=n {
        if (alpha + rat(k as i64)).is_zero() {
            return Err(Error::ConstraintViolation(format!(
                "alpha = -{k} degenerates the parameter within the truncation"
            )));
        }
    }
    let phi = -alpha.recip();
    let u = one_plus(&phi, 1, n);
    let c = GroupParameter::new(u.pow(&phi.recip())?)
        .map_err(|e| Error::ConstraintViolation(e.to_string()))?;
    let f = c.series().clone();
    let g = u.inv()?;
    let pascal = LowerTriangular::from_fn(n + 1, crate::triangle::binom_int);
    let m = RiordanSpec::new(f, g, c)?.matrix(n)?;
    Ok(m == pascal)
}

/// Expand the b-sequence of a parameter over divisor scales: returns
/// `phi_q` for `2 <= q <= qmax` such that `b_n = prod_(q | n, q > 1) phi_q`
/// for every `n <= qmax`, via `phi_q = b_q / prod_(d | q, 1 < d < q) phi_d`.
pub fn hadamard_factorize(c: &GroupParameter, qmax: usize) -> Result<BTreeMap<usize, Rational>> {
    if qmax > c.order() {
        return Err(Error::IndexOutOfRange { index: qmax, limit: c.order() });
    }
    let b = c.b_sequence();
    let mut phi: BTreeMap<usize, Rational> = BTreeMap::new();
    for q in 2..=qmax {
        let mut acc = b.series().coeff(q).clone();
        for d in 2..q {
            if q % d == 0 {
                acc /= &phi[&d];
            }
        }
        phi.insert(q, acc);
    }
    Ok(phi)
}
