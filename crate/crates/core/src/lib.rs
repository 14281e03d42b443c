//! Exact computation of Tutte-type polynomials of ranked sets with
//! multiplicities (matroids, arithmetic matroids, polymatroids,
//! delta-matroids), the convolution formulas relating them, and
//! brute-force counting oracles that confirm those formulas on small inputs.
//!
//! Everything is exact: exponents are half-integers, coefficients and
//! multiplicities are arbitrary-precision rationals, and all integer linear
//! algebra goes through a big-integer Smith normal form.

pub mod abelian;
pub mod axioms;
pub mod builders;
pub mod corpus;
pub mod error;
pub mod formats;
pub mod oracles;
pub mod poly;
pub mod ranked;

pub use error::{Error, Result};
pub use poly::{BiLaurent, HalfInt};
pub use ranked::{aritutte, tutte, RankedSet, SubsetMask, TutteFunction};
