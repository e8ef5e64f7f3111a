//! Seidel switching on weighted multi-digraphs, Laplacian and signless
//! Laplacian cospectral constructions, graph density matrices, and the
//! operator Schmidt strength of Seidel unitaries.
//!
//! Vertex indices are 0-based throughout.

pub mod error;
pub mod graph;
pub mod io;
pub mod isomorphism;
pub mod quantum;
pub mod seidel;
pub mod spectrum;
pub mod starlike;
pub mod strength;

pub use error::{Error, Result};
pub use graph::{
    adjacency_matrix, degree_matrix, directed_laplacian, directed_signless_laplacian, laplacian,
    signless_laplacian, DenseMatrix, WeightedDigraph,
};
pub use io::{parse_document, read_document, write_document, GraphDocument};
pub use isomorphism::{brute_force_isomorphic, find_isomorphism};
pub use quantum::{density_from_graph, is_pure, von_neumann_entropy, DensityMatrix};
pub use seidel::{
    block_seidel, lemma1_transform, lemma2_transform, seidel_matrix, switch, switch_verified,
    validate_seidel, Category, CategoryReport, SeidelOperator, SeidelPartition,
};
pub use spectrum::{cospectral, spectral_gap, spectrum, Spectrum};
pub use starlike::{lq_switch, lq_switch_forced, validate_starlike, SpectralKind};
pub use strength::{
    is_local, k_sch, k_wz, realignment, schmidt_coefficients, strength_scan, vec_row, Bipartition,
    SchmidtProfile,
};
