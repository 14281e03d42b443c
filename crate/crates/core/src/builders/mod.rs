//! Ranked sets from labeled graphs and delta-matroids.

mod delta;
mod graph;

pub use delta::{
    bollobas_riordan, check_symmetric_exchange, delta_rank, is_even, to_ranked_set, DeltaMatroid, DeltaMatroidJson,
};
pub use graph::{graph_multiplicity_formula, graph_to_vectorlist, Edge, LabeledGraph};
