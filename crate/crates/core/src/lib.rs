//! Snake-graph expansions of type A and D cluster variables and the lattice
//! geometry of their Newton polytopes.

mod cover;
pub mod error;
pub mod laurent;
pub mod lp;
pub mod matching;
pub mod polytope;
pub mod predicates;
pub mod snake;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
pub use laurent::{expand, expand_notched, expand_plain, LaurentPolynomial, Namespace, Variable};
pub use matching::{
    bottom_matching, enclosed_tiles, enumerate_matchings, lifted_vector, reduced_weight_vector,
    rho_symmetric_matchings, weight_vector, LiftedVector, Mode, PerfectMatching, WeightVector,
};
pub use polytope::{
    lifted_matching_polytope, matching_polytope, newton_polytope, project_pi, LiftedPolytope, RationalPolytope,
};
pub use predicates::{expectation, Expectation};
pub use snake::{build_snake_graph, RawSnakeGraph, SnakeGraph, Step, TileSide};
pub use surface::{
    EdgeLabel, Fan, IdealTriangulation, MarkedSurface, RadialDecomposition, Side, SurfaceKind, Tag, TaggedArc,
    TaggedTriangulation,
};
pub use verify::{
    check_instance, explain_instance, instance_graph, run_corpus, run_counterexample, run_lifted_sweep, CorpusConfig,
    CounterexampleReport, LiftedVerdict, Report, Summary, Verdict,
};
