//! Integer linear algebra over finitely generated abelian groups: Smith
//! normal form, quotients, and the arithmetic matroid of a vector list.

mod group;
mod snf;
mod vectors;

pub use group::{quotient, FGGroup, Projection};
pub use snf::{invariant_factors, snf, IntMatrix, SnfResult};
pub use vectors::{build_arithmetic_matroid, torsion_of_quotient, VectorList};
