//! Block groups over period-q zero Pascal matrices and fractal series
//! groups over the Sierpinski-type matrices.
//!
//! A [`BlockElement`] is the series `[b(x)]_q a(x^q)` viewed inside the
//! algebra of a zero block spec: its matrix is block-structured, products
//! multiply the inner head and the outer part separately, and the
//! logarithm has a closed form. A [`FractalSeries`] stores only the `q`
//! base coefficients of a series whose coefficients are multiplicative
//! over base-q digits; such series form a group under the twisted product.

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fps::{Rational, Series};
use crate::riordan::GroupParameter;
use crate::triangle::LowerTriangular;
use crate::zero_pascal::{circ_mul_raw, cq_parameter, CircSeries, Factor, ZeroPascalSpec};

/// `[b(x)]_q a(x^q)` over `Block(q, 0)`, optionally decorated by a
/// block-replicated parameter `c_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockElement {
    q: usize,
    inner: Series,
    outer: Series,
    /// Undecorated parameter `c` (the spec factor carries `c_q`).
    c: Option<GroupParameter>,
    spec: ZeroPascalSpec,
    order: usize,
}

impl BlockElement {
    /// Element of the plain block group over `Block(q, 0)`.
    pub fn plain(q: usize, inner: Series, outer: Series, order: usize) -> Result<Self> {
        let spec = ZeroPascalSpec::block(q, Rational::zero())?;
        Self::build(q, inner, outer, None, spec, order)
    }

    /// Element of the block group over `Block(q, 0) x CParam(c_q)`.
    pub fn decorated(
        q: usize,
        inner: Series,
        outer: Series,
        c: &GroupParameter,
        order: usize,
    ) -> Result<Self> {
        let cq = cq_parameter(c, q, order)?;
        let spec = ZeroPascalSpec::block(q, Rational::zero())?.times(Factor::CParam(cq))?;
        Self::build(q, inner, outer, Some(c.clone()), spec, order)
    }

    fn build(
        q: usize,
        inner: Series,
        outer: Series,
        c: Option<GroupParameter>,
        spec: ZeroPascalSpec,
        order: usize,
    ) -> Result<Self> {
        if inner.coeff(0).is_zero() || outer.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        if inner.order() < (q - 1).min(order) {
            return Err(Error::IndexOutOfRange { index: (q - 1).min(order), limit: inner.order() });
        }
        if outer.order() < order / q {
            return Err(Error::IndexOutOfRange { index: order / q, limit: outer.order() });
        }
        if let Some(c) = &c {
            if c.order() < order / q {
                return Err(Error::IndexOutOfRange { index: order / q, limit: c.order() });
            }
        }
        Ok(BlockElement { q, inner, outer, c, spec, order })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn inner(&self) -> &Series {
        &self.inner
    }

    pub fn outer(&self) -> &Series {
        &self.outer
    }

    pub fn spec(&self) -> &ZeroPascalSpec {
        &self.spec
    }

    /// The realized series `[b]_q a(x^q)` attached to the spec.
    pub fn realize(&self) -> CircSeries {
        let head = Series::from_fn(self.order, |i| {
            if i < self.q && i <= self.inner.order() {
                self.inner.coeff(i).clone()
            } else {
                Rational::zero()
            }
        });
        let series = head.mul(&self.outer.stretch(self.q, self.order));
        CircSeries::new(series, self.spec.clone()).expect("orders validated at construction")
    }

    /// Matrix of the realized series, `dim = n + 1`.
    pub fn matrix(&self, n: usize) -> Result<LowerTriangular> {
        self.realize().matrix(n)
    }

    /// Group law: inner heads multiply as truncated ordinary products, outer
    /// parts in the parameter algebra (plain product, or the conjugated
    /// `*`-product for the decorated case).
    pub fn mul(&self, rhs: &BlockElement) -> Result<BlockElement> {
        if self.q != rhs.q || self.spec != rhs.spec {
            return Err(Error::SpecMismatch);
        }
        let inner = self.inner.mul(&rhs.inner).block_truncate(self.q);
        let outer = match &self.c {
            None => self.outer.mul(&rhs.outer),
            Some(c) => c.star_mul(&self.outer, &rhs.outer),
        };
        Self::build(
            self.q,
            inner,
            outer,
            self.c.clone(),
            self.spec.clone(),
            self.order.min(rhs.order),
        )
    }

    /// Closed-form logarithm `[log b]_q + log a(x^q)` (plain) or
    /// `[log b]_q + |c_q|^-1 log a(c, x^q)` (decorated); requires
    /// `b_0 = a_0 = 1`. Equals the matrix logarithm of the realization.
    pub fn log(&self) -> Result<CircSeries> {
        let inner_log = self.inner.log()?;
        let head = Series::from_fn(self.order, |i| {
            if i < self.q && i <= inner_log.order() {
                inner_log.coeff(i).clone()
            } else {
                Rational::zero()
            }
        });
        let tail = match &self.c {
            None => self.outer.log()?.stretch(self.q, self.order),
            Some(c) => {
                let weighted = c.weight(&self.outer).log()?.stretch(self.q, self.order);
                let cq = cq_parameter(c, self.q, self.order)?;
                cq.unweight(&weighted)
            }
        };
        CircSeries::new(&head + &tail, self.spec.clone())
    }

    /// Real power: `([b]_q a(x^q))^phi = [b^phi]_q a^phi(x^q)` componentwise
    /// (with the `*`-power of the outer part in the decorated case).
    pub fn pow(&self, phi: &Rational) -> Result<BlockElement> {
        let inner = self.inner.pow(phi)?;
        let outer = match &self.c {
            None => self.outer.pow(phi)?,
            Some(c) => c.unweight(&c.weight(&self.outer).pow(phi)?),
        };
        Self::build(self.q, inner, outer, self.c.clone(), self.spec.clone(), self.order)
    }
}

/// A series whose coefficients are digit-multiplicative in base `q`:
/// `a_n = prod_i base[n_i]` over the base-q digits of `n`. Only the `q`
/// base coefficients are stored; expansion is on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractalSeries {
    q: usize,
    base: Vec<Rational>,
    order: usize,
}

impl FractalSeries {
    pub fn new(q: usize, base: Vec<Rational>, order: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidSpec("q must be >= 2".into()));
        }
        if base.len() != q {
            return Err(Error::InvalidSpec(format!(
                "expected {q} base coefficients, got {}",
                base.len()
            )));
        }
        if !base[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        Ok(FractalSeries { q, base, order })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn base(&self) -> &[Rational] {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The attached zero spec `Fractal(q, 0)`.
    pub fn spec(&self) -> ZeroPascalSpec {
        ZeroPascalSpec::fractal(self.q, Rational::zero()).expect("q validated")
    }

    /// Expand to coefficients via base-q digit products.
    pub fn expand(&self) -> Series {
        self.expand_to(self.order)
    }

    pub fn expand_to(&self, order: usize) -> Series {
        Series::from_fn(order, |n| {
            let mut acc = Rational::one();
            let mut v = n;
            while v > 0 {
                let d = v % self.q;
                if d > 0 {
                    acc *= &self.base[d];
                    if acc.is_zero() {
                        return acc;
                    }
                }
                v /= self.q;
            }
            acc
        })
    }

    /// Twisted product of the expansions, returned through its base
    /// coefficients. The group is closed, so the product's expansion must
    /// match the full twisted product; a mismatch is a `ClosureViolation`.
    pub fn mul(&self, rhs: &FractalSeries) -> Result<FractalSeries> {
        if self.q != rhs.q {
            return Err(Error::SpecMismatch);
        }
        let order = self.order.min(rhs.order).max(self.q - 1);
        let spec = self.spec();
        let prod = circ_mul_raw(&self.expand_to(order), &rhs.expand_to(order), &spec);
        let base: Vec<Rational> = (0..self.q).map(|i| prod.coeff(i).clone()).collect();
        let out = FractalSeries::new(self.q, base, order)?;
        if out.expand_to(order) != prod {
            return Err(Error::ClosureViolation);
        }
        Ok(out)
    }

    /// Closed-form twisted logarithm: with `l_n = [x^n] log a(x)` for
    /// `1 <= n < q`, the result is `sum_n l_n sum_k x^(n q^k)`.
    pub fn log(&self) -> Series {
        let head = self
            .expand_to(self.q - 1)
            .log()
            .expect("base[0] = 1 by construction");
        let mut out = Series::zero(self.order);
        for n in 1..self.q {
            let l = head.coeff(n);
            if l.is_zero() {
                continue;
            }
            let mut idx = n;
            while idx <= self.order {
                out = &out + &Series::monomial(l.clone(), idx, self.order);
                idx *= self.q;
            }
        }
        out
    }

    /// The same series seen as digit-multiplicative in base `q^k`: base
    /// coefficients are the first `q^k` expansion coefficients.
    pub fn rebase(&self, k: u32) -> Result<FractalSeries> {
        let qk = self.q.pow(k);
        let base = self.expand_to(qk - 1).coeffs().to_vec();
        FractalSeries::new(qk, base, self.order)
    }
}

/// Consistency report for the scale-substitution isomorphism.
#[derive(Clone, Debug)]
pub struct SubstitutionReport {
    pub q: usize,
    pub k: u32,
    pub checked: usize,
    /// `(n, stretched-product coefficient, plain-product coefficient)`.
    pub mismatches: Vec<(usize, Rational, Rational)>,
}

impl SubstitutionReport {
    pub fn all_equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Check `[x^(q^k n)] a(x^(q^k)) o b(x^(q^k)) = [x^n] a o b` over the given
/// fractal spec, for all `n` up to the order divided by `q^k`.
pub fn substitute_q_power(
    a: &Series,
    b: &Series,
    k: u32,
    spec: &ZeroPascalSpec,
) -> Result<SubstitutionReport> {
    let q = spec.leading_zero_base().ok_or_else(|| {
        Error::InvalidSpec("substitution check needs a zero Block/Fractal factor".into())
    })?;
    let order = a.order().min(b.order());
    let qk = q.pow(k);
    let plain = circ_mul_raw(a, b, spec);
    let stretched = circ_mul_raw(&a.stretch(qk, order), &b.stretch(qk, order), spec);
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for n in 0..=order / qk {
        checked += 1;
        if stretched.coeff(qk * n) != plain.coeff(n) {
            mismatches.push((n, stretched.coeff(qk * n).clone(), plain.coeff(n).clone()));
        }
    }
    Ok(SubstitutionReport { q, k, checked, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fps::{frac, rat, rat_pow};
    use crate::riordan::RiordanSpec;

    #[test]
    fn block_matrix_layout() {
        // ([b]_3 a(x^3) | Block(3,0)): entry (3n+i, 3m+j) = a_(n-m) b_(i-j)
        // inside blocks, 0 when j > i
        let b = Series::from_ints(&[2, 3, 5], 8);
        let a = Series::from_ints(&[1, 7, 11], 8);
        let e = BlockElement::plain(3, b.clone(), a.clone(), 8).unwrap();
        let m = e.matrix(8).unwrap();
        for bn in 0..3usize {
            for bm in 0..=bn {
                for i in 0..3usize {
                    for j in 0..3usize {
                        let (row, col) = (3 * bn + i, 3 * bm + j);
                        if row > 8 || col > row {
                            continue;
                        }
                        let expect = if j > i {
                            Rational::zero()
                        } else {
                            a.coeff(bn - bm) * b.coeff(i - j)
                        };
                        assert_eq!(m.entry(row, col), expect, "({row},{col})");
                    }
                }
            }
        }
    }

    #[test]
    fn block_mul_is_matrix_mul() {
        let order = 9;
        let e1 = BlockElement::plain(
            3,
            Series::from_ints(&[1, 2, -1], order),
            Series::from_ints(&[1, 3, 1, 2], order),
            order,
        )
        .unwrap();
        let e2 = BlockElement::plain(
            3,
            Series::from_ints(&[2, 1, 1], order),
            Series::from_ints(&[1, 1, 4, 1], order),
            order,
        )
        .unwrap();
        let lhs = e1.mul(&e2).unwrap().matrix(order).unwrap();
        let rhs = e1.matrix(order).unwrap().mul(&e2.matrix(order).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn decorated_mul_is_matrix_mul() {
        let order = 8;
        let c = GroupParameter::exponential(order);
        let e1 = BlockElement::decorated(
            2,
            Series::from_ints(&[1, 5], order),
            Series::from_ints(&[1, 2, 1, 1, 3], order),
            &c,
            order,
        )
        .unwrap();
        let e2 = BlockElement::decorated(
            2,
            Series::from_ints(&[1, -1], order),
            Series::from_ints(&[2, 1, 1, 4, 1], order),
            &c,
            order,
        )
        .unwrap();
        let lhs = e1.mul(&e2).unwrap().matrix(order).unwrap();
        let rhs = e1.matrix(order).unwrap().mul(&e2.matrix(order).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_element_is_neutral() {
        let order = 8;
        let id = BlockElement::plain(2, Series::one(order), Series::one(order), order).unwrap();
        assert!(id.matrix(order).unwrap().is_identity());
        let e = BlockElement::plain(
            2,
            Series::from_ints(&[1, 4], order),
            Series::from_ints(&[1, 1, 2], order),
            order,
        )
        .unwrap();
        assert_eq!(e.mul(&id).unwrap().realize(), e.realize());
    }

    #[test]
    fn pure_outer_part_is_an_ordinary_riordan_matrix() {
        // (a(x^q) | Block(q,0)) = (a(x^q), x)
        let order = 9;
        let a = Series::from_ints(&[1, 3, 1, 2], order);
        let e = BlockElement::plain(3, Series::one(order), a.clone(), order).unwrap();
        let riordan = RiordanSpec::ordinary(a.stretch(3, order), Series::one(order))
            .unwrap()
            .matrix(order)
            .unwrap();
        assert_eq!(e.matrix(order).unwrap(), riordan);
    }

    #[test]
    fn closed_form_log_plain() {
        let order = 12;
        for q in [2usize, 3] {
            let b = Series::from_strs(&["1", "2", "-1", "1/2", "3"], order).unwrap();
            let a = Series::from_strs(&["1", "1/3", "4", "-2"], order).unwrap();
            let e = BlockElement::plain(q, b, a, order).unwrap();
            let closed = e.log().unwrap().matrix(order).unwrap();
            let direct = e.matrix(order).unwrap().log().unwrap();
            assert_eq!(closed, direct, "q = {q}");
        }
        // b = a = 1 gives 0
        let id = BlockElement::plain(2, Series::one(6), Series::one(6), 6).unwrap();
        assert!(id.log().unwrap().series().is_zero());
    }

    #[test]
    fn closed_form_log_decorated() {
        let order = 12;
        for q in [2usize, 3] {
            let c = GroupParameter::exponential(order);
            let b = Series::from_strs(&["1", "2", "-1", "1/2", "3"], order).unwrap();
            let a = Series::from_strs(&["1", "1/3", "4", "-2"], order).unwrap();
            let e = BlockElement::decorated(q, b, a, &c, order).unwrap();
            let closed = e.log().unwrap().matrix(order).unwrap();
            let direct = e.matrix(order).unwrap().log().unwrap();
            assert_eq!(closed, direct, "q = {q}");
        }
    }

    #[test]
    fn log_of_geometric_block_element() {
        // b = a = 1/(1-x): realization is the zero block matrix itself and
        // the log collapses to sum_(m<q) x^m/m + sum_m x^(qm)/m
        let order = 10;
        let q = 3usize;
        let e = BlockElement::plain(q, Series::geometric(order), Series::geometric(order), order)
            .unwrap();
        assert_eq!(e.realize().matrix(order).unwrap(), e.spec().matrix(order).unwrap());
        let l = e.log().unwrap();
        let expect = Series::from_fn(order, |n| {
            if n == 0 {
                Rational::zero()
            } else if n < q {
                frac(1, n as i64)
            } else if n % q == 0 {
                frac(q as i64, n as i64)
            } else {
                Rational::zero()
            }
        });
        assert_eq!(l.series(), &expect);
        // decorated with c = e^x: sum_(m<q) x^m/m + x^q
        let c = GroupParameter::exponential(order);
        let e = BlockElement::decorated(
            q,
            Series::geometric(order),
            Series::geometric(order),
            &c,
            order,
        )
        .unwrap();
        let l = e.log().unwrap();
        let expect = Series::from_fn(order, |n| {
            if n == 0 {
                Rational::zero()
            } else if n < q {
                frac(1, n as i64)
            } else if n == q {
                rat(1)
            } else {
                Rational::zero()
            }
        });
        assert_eq!(l.series(), &expect);
    }

    #[test]
    fn componentwise_power_matches_matrix_power() {
        let order = 9;
        let e = BlockElement::plain(
            3,
            Series::from_ints(&[1, 2, 1], order),
            Series::from_ints(&[1, 1, 3], order),
            order,
        )
        .unwrap();
        for phi in [rat(2), frac(1, 2), rat(-1)] {
            let lhs = e.pow(&phi).unwrap().matrix(order).unwrap();
            let rhs = e.matrix(order).unwrap().pow(&phi).unwrap();
            assert_eq!(lhs, rhs, "phi = {phi}");
        }
        let c = GroupParameter::exponential(order);
        let d = BlockElement::decorated(
            2,
            Series::from_ints(&[1, 2], order),
            Series::from_ints(&[1, 1, 3, 1, 1], order),
            &c,
            order,
        )
        .unwrap();
        for phi in [rat(3), frac(-1, 2)] {
            let lhs = d.pow(&phi).unwrap().matrix(order).unwrap();
            let rhs = d.matrix(order).unwrap().pow(&phi).unwrap();
            assert_eq!(lhs, rhs, "decorated phi = {phi}");
        }
    }

    #[test]
    fn fractal_expansion_digit_products() {
        let t = rat(3);
        let f = FractalSeries::new(2, vec![Rational::one(), t.clone()], 16).unwrap();
        let e = f.expand();
        for n in 0..=16usize {
            assert_eq!(*e.coeff(n), rat_pow(&t, n.count_ones() as i64));
        }
        let ones = FractalSeries::new(2, vec![rat(1), rat(1)], 12).unwrap();
        assert_eq!(ones.expand(), Series::geometric(12));
    }

    #[test]
    fn fractal_product_closure_and_unit() {
        let f = FractalSeries::new(2, vec![rat(1), rat(1)], 16).unwrap();
        let unit = FractalSeries::new(2, vec![rat(1), rat(0)], 16).unwrap();
        assert_eq!(f.mul(&unit).unwrap(), f);
        let sq = f.mul(&f).unwrap();
        assert_eq!(sq.base(), &[rat(1), rat(2)]);
        for n in 0..=16usize {
            assert_eq!(*sq.expand().coeff(n), rat_pow(&rat(2), n.count_ones() as i64));
        }
        // base product = product of the first-q-rows matrices, read as the
        // q x q Toeplitz heads
        let g = FractalSeries::new(3, vec![rat(1), rat(2), frac(1, 2)], 18).unwrap();
        let h = FractalSeries::new(3, vec![rat(1), rat(-1), rat(3)], 18).unwrap();
        let gh = g.mul(&h).unwrap();
        let head =
            |f: &FractalSeries| LowerTriangular::from_fn_seq(f.q(), |n, m| f.base()[n - m].clone());
        let prod_head = head(&g).mul(&head(&h)).unwrap();
        for i in 0..3usize {
            assert_eq!(prod_head.entry(i, 0), gh.base()[i]);
        }
    }

    #[test]
    fn fractal_log_closed_form() {
        let f = FractalSeries::new(2, vec![rat(1), rat(1)], 16).unwrap();
        let l = f.log();
        let expect = Series::from_fn(16, |n| {
            if n >= 1 && n.is_power_of_two() { rat(1) } else { Rational::zero() }
        });
        assert_eq!(l, expect);
        let unit = FractalSeries::new(3, vec![rat(1), rat(0), rat(0)], 9).unwrap();
        assert!(unit.log().is_zero());
        // equals the twisted log of the expansion
        let g = FractalSeries::new(3, vec![rat(1), rat(2), frac(1, 2)], 15).unwrap();
        let via_circ = CircSeries::new(g.expand(), g.spec()).unwrap().log().unwrap();
        assert_eq!(g.log(), *via_circ.series());
    }

    #[test]
    fn rebase_preserves_expansion() {
        let f = FractalSeries::new(2, vec![rat(1), rat(3)], 31).unwrap();
        let f4 = f.rebase(2).unwrap();
        assert_eq!(f4.q(), 4);
        assert_eq!(f4.base(), f.expand_to(3).coeffs());
        assert_eq!(f4.expand(), f.expand());
    }

    #[test]
    fn substitution_isomorphism() {
        let spec = ZeroPascalSpec::fractal(2, Rational::zero()).unwrap();
        let a = Series::from_ints(&[1, 3, 1, 2, 1, 5, 1, 1, 2, 1, 1, 4, 1, 1, 1, 2, 1], 16);
        let b = Series::from_ints(&[2, 1, 4, 1, 1, 1, 3, 1, 1, 2, 1, 1, 1, 1, 5, 1, 1], 16);
        let r = substitute_q_power(&a, &b, 1, &spec).unwrap();
        assert!(r.all_equal(), "{:?}", r.mismatches);
        assert_eq!(r.checked, 9);
        let trivial = substitute_q_power(&Series::one(8), &Series::one(8), 2, &spec).unwrap();
        assert!(trivial.all_equal());
        let spec3 = ZeroPascalSpec::fractal(3, Rational::zero()).unwrap();
        let f = FractalSeries::new(3, vec![rat(1), rat(2), rat(1)], 15).unwrap();
        let g = FractalSeries::new(3, vec![rat(1), rat(1), rat(4)], 15).unwrap();
        let r3 = substitute_q_power(&f.expand(), &g.expand(), 1, &spec3).unwrap();
        assert!(r3.all_equal());
    }

    #[test]
    fn row_generating_functions_factor_over_scales() {
        // rows of (a | Fractal(q,0)) satisfy u_(q^k n + i) = u_n(x^(q^k)) u_i
        let order = 31;
        let f = FractalSeries::new(2, vec![rat(1), frac(3, 2)], order).unwrap();
        let m = CircSeries::new(f.expand(), f.spec()).unwrap().matrix(order).unwrap();
        let rows: Vec<Series> = (0..=order).map(|n| m.row_gf(n).unwrap()).collect();
        for k in 1..=3u32 {
            let qk = 2usize.pow(k);
            for n in 0..=order {
                for i in 0..qk {
                    let idx = qk * n + i;
                    if idx > order {
                        break;
                    }
                    let lhs = &rows[idx];
                    let rhs = rows[n].stretch(qk, order).mul(&rows[i]);
                    assert_eq!(*lhs, rhs, "k={k} n={n} i={i}");
                }
            }
        }
    }

    #[test]
    fn entry_multiplicativity_of_fractal_series_matrices() {
        for (q, order) in [(2usize, 27usize), (3, 27)] {
            let base: Vec<Rational> =
                (0..q).map(|i| if i == 0 { rat(1) } else { rat(i as i64 + 1) }).collect();
            let f = FractalSeries::new(q, base, order).unwrap();
            let m = CircSeries::new(f.expand(), f.spec()).unwrap().matrix(order).unwrap();
            for n in 0..=(order / q) {
                for bm in 0..=n {
                    for i in 0..q {
                        for j in 0..=i {
                            let (row, col) = (q * n + i, q * bm + j);
                            if row > order || col > row {
                                continue;
                            }
                            assert_eq!(
                                m.entry(row, col),
                                m.entry(n, bm) * m.entry(i, j),
                                "q={q} ({row},{col})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sierpinski_is_kronecker_square_of_its_head() {
        // at dim q^2 the zero fractal matrix equals the Kronecker square of
        // its first q rows (the all-ones lower triangle)
        for q in [2usize, 3] {
            let spec = ZeroPascalSpec::fractal(q, Rational::zero()).unwrap();
            let dim = q * q;
            let m = spec.matrix(dim - 1).unwrap();
            for n in 0..dim {
                for c in 0..=n {
                    let (n1, n0) = (n / q, n % q);
                    let (m1, m0) = (c / q, c % q);
                    let kron = if m1 <= n1 && m0 <= n0 { rat(1) } else { rat(0) };
                    assert_eq!(m.entry(n, c), kron, "q={q} ({n},{c})");
                }
            }
        }
    }
}
