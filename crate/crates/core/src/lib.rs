//! Exact analysis of positively weighted generalized Petersen and Kneser
//! graphs: family generators, rational distance matrices, geodesic and
//! useful-edge analysis, and the converse direction — deciding whether a
//! symmetric positive matrix is the distance matrix of such a graph in which
//! every edge is useful, and reconstructing that graph when it is.
//!
//! All arithmetic is exact rational; verdicts rest on strict inequalities
//! that floating point could flip.

#![forbid(unsafe_code)]

pub mod characterize;
pub mod error;
pub mod family;
pub mod girth;
pub mod graph;
pub mod harness;
pub mod io;
pub mod iso;
pub mod metric;
pub mod rational;

pub use characterize::{
    check_condition_a, check_condition_b, check_condition_c, check_condition_d, classify, realize,
    verify_realization, ConditionId, ConditionResult, FrameCertificate, RealizationReport, Verdict,
    Witness,
};
pub use error::{Error, Result, StructuralIssue};
pub use family::{
    generate_generalized_petersen, generate_kneser, generate_odd_graph, gp_girth_precondition,
    FamilyRegistry, GeneralizedPetersen, GraphFamily, Kneser, Mode,
};
pub use girth::{girth, Girth};
pub use graph::{Edge, WeightedGraph};
pub use harness::{
    fuzz_roundtrip, mutate_matrix, oracle_distance_floyd, oracle_useful_edge, sample_weights,
    sample_weights_for_trial, FuzzFailure, FuzzReport, FuzzStage, SampleConfig,
    ORACLE_VERTEX_LIMIT,
};
pub use io::NumberStyle;
pub use iso::are_isomorphic;
pub use metric::{
    all_pairs_distances, geodesics, is_indecomposable, profile, useful_edges,
    usefulness_indecomposability_consistency, ConsistencyReport, DistanceMatrix, EdgeStatus,
    EdgeUsefulness, IndecomposabilityProfile, DEFAULT_GEODESIC_CAP,
};
pub use rational::Rational;
