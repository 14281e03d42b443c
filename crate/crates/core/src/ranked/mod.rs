//! Ranked sets with multiplicities, their minors, Tutte-type functions and
//! the convolution algebra.

mod conv;
mod mask;
mod set;
mod tutte;

pub use conv::{
    convolve, convolve_pair, standard_functionals, verify_associativity, verify_associativity_all, verify_lemma13,
    verify_theorem1, verify_theorem2, verify_zeta_inverse, ConvFunctional, ConvolutionReport, IdentityReport, Pin,
};
pub use mask::{SubsetMask, MAX_GROUND};
pub use set::RankedSet;
pub(crate) use set::check_ground_size;
pub use tutte::{aritutte, tutte, TutteFunction};
