//! Exact-arithmetic library for generalized Riordan groups and the groups
//! attached to zero generalized Pascal matrices.
//!
//! Everything is computed over arbitrary-precision rationals at an explicit
//! truncation order, so every identity the crate verifies is bit-exact.
//! The main layers:
//!
//! - [`fps`] — truncated formal power series, the universal value type;
//! - [`triangle`] — finite lower-triangular matrices with exact entries,
//!   matrix log and real powers for unit-diagonal matrices;
//! - [`riordan`] — ordinary/generalized Riordan matrices, generalized
//!   binomial coefficients, Pascal matrices, the six parameter families,
//!   and Hadamard factorization;
//! - [`zero_pascal`] — the block (`P_{phi,q}`) and fractal (`P_[phi,q]`)
//!   Pascal systems, their Hadamard combinations, and the twisted
//!   convolution algebra they induce;
//! - [`block_fractal`] — block groups and fractal series groups with their
//!   closed-form logarithms;
//! - [`rgroup`] — the Riordan-like group over a zero Pascal matrix, its
//!   Lagrange-inversion analog, pseudo-involutions, and digit-arithmetic
//!   binomial identities;
//! - [`golden`] — hand-checked reference matrices used by verification
//!   suites.
//!
//! With the default `parallel` feature, triangular-matrix kernels run on
//! rayon; disabling it falls back to the sequential kernels with identical
//! (deterministic, exact) results.

pub mod error;
pub mod fps;
pub mod triangle;
pub mod riordan;
pub mod zero_pascal;
pub mod block_fractal;
pub mod rgroup;
pub mod golden;

pub use error::{Error, Result};
pub use fps::{frac, parse_rational, rat, ParamPolynomial, Rational, Series};
pub use triangle::LowerTriangular;
