//! Brute-force counters (zonotope lattice points, arithmetic colorings and
//! flows) and the identities they confirm.

mod counting;
mod identities;
mod zonotope;

pub use counting::{count_colorings, count_flows, qsets, QSets, MAX_ENUMERATION};
pub use identities::{interpolate, verify_corollary7, verify_corollary8, verify_theorem6, OracleReport};
pub use zonotope::{
    count_lattice_points, ehrhart, ehrhart_via_aritutte, eval_univariate, scale_list, verify_face_decomposition,
    zonotope_hrep, Facet, FaceDecompositionReport, FlatContribution, ZonotopeHRep, MAX_BOX,
};
