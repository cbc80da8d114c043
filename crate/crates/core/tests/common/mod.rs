//! Deterministic generators shared by the integration suites.
// Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use zpascal::fps::{frac, Rational, Series};
use zpascal::riordan::GroupParameter;

/// splitmix64: small, seedable, reproducible across platforms.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Integer in `[lo, hi]` inclusive.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }

    /// Small rational with numerator in `[-5, 5]` and denominator in `[1, 4]`.
    pub fn rational(&mut self) -> Rational {
        frac(self.int(-5, 5), self.int(1, 4))
    }

    /// Small nonzero rational.
    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !num::traits::Zero::is_zero(&r) {
                return r;
            }
        }
    }

    /// Random series of the given order.
    pub fn series(&mut self, order: usize) -> Series {
        Series::from_fn(order, |_| self.rational())
    }

    /// Random series with constant term 1.
    pub fn unit_series(&mut self, order: usize) -> Series {
        Series::from_fn(order, |n| if n == 0 { frac(1, 1) } else { self.rational() })
    }

    /// Random series with a nonzero constant term.
    pub fn invertible_series(&mut self, order: usize) -> Series {
        Series::from_fn(order, |n| {
            if n == 0 {
                self.nonzero_rational()
            } else {
                self.rational()
            }
        })
    }

    /// Random group parameter: c_0 = c_1 = 1, all later values nonzero.
    pub fn parameter(&mut self, order: usize) -> GroupParameter {
        GroupParameter::new(Series::from_fn(order, |n| {
            if n <= 1 {
                frac(1, 1)
            } else {
                self.nonzero_rational()
            }
        }))
        .expect("nonzero by construction")
    }

    /// Random square-zero support series for base `q`: nonzero coefficients
    /// only on residues `q - floor(q/2) .. q-1`.
    pub fn eta(&mut self, q: usize, order: usize) -> Series {
        let lo = q - q / 2;
        Series::from_fn(order, |n| {
            if n % q >= lo && self.int(0, 2) > 0 {
                self.rational()
            } else {
                frac(0, 1)
            }
        })
    }
}
