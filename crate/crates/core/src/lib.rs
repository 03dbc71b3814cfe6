//! Stable marriage with complete strict preferences: Gale-Shapley in both
//! orientations, the extended variant that reduces preference lists, and a
//! linear-time procedure returning a maximum set of pairwise edge-disjoint
//! stable matchings as a strict dominance chain.
//!
//! Alongside the engine sit a brute-force oracle for small instances,
//! seeded instance generators, and scaling instrumentation.
//!
//! ```
//! use disjoint_sm::{disjoint_stable_matchings, Instance};
//!
//! let inst = Instance::parse("3\n1 2 3\n2 3 1\n3 1 2\n2 3 1\n3 1 2\n1 2 3\n").unwrap();
//! let chain = disjoint_stable_matchings(&inst);
//! assert_eq!(chain.len(), 3);
//! ```

pub mod engine;
pub mod error;
pub mod gen;
pub mod instance;
pub mod lists;
pub mod matching;
pub mod oracle;
pub mod scaling;
pub mod verify;

pub use engine::{
    decide_k_disjoint, disjoint_stable_matchings, disjoint_stable_matchings_with_work, gale_shapley, gs_extended,
    gs_lists, Decision,
};
pub use error::{EngineError, GenError, MatchingError, OracleError, ParseError};
pub use gen::{gen_cyclic, gen_random, GenKind, GenSpec};
pub use instance::{Instance, RankMatrix, Side};
pub use lists::{ReducedLists, Work};
pub use matching::{
    blocking_pairs, dominates, fixed_pairs, is_stable, ChainJson, Matching, MatchingChain, MatchingJson, Pair,
};
pub use oracle::{enumerate_stable, max_disjoint_bruteforce, teo_sethuraman_transform, StableSetReport};
pub use scaling::{BenchRecord, Workload, WORK_BOUND_C};
pub use verify::{verify_instance, VerifyReport};
