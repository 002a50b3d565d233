//! Builds polynomial systems for realizability questions and rewrites
//! them down to ring-level equations.

pub mod automorphism;
pub mod galois;
pub mod logic;
pub mod passes;
pub mod serialize;
pub mod subgroup;
pub mod system;

pub use automorphism::{encode_automorphism_problem, AutomorphismCaps, AutomorphismEncoding};
pub use galois::{encode_galois_set, encode_group_realization};
pub use logic::{lower_formula, Formula, LowerCaps};
pub use passes::{
    conjoin_single, disjoin, eliminate_generator, encode_disequation, exhaustive_irreducible_definition,
    field_nonzero_definition, integer_nonzero_definition, nonzero_definition, splice_definition, ZeroForm,
    MAX_SINGLE_TERMS,
};
pub use serialize::{parse_poly, system_from_text, system_to_text, Witness};
pub use subgroup::{encode_subgroup_problem, SubgroupCaps};
pub use system::{Disequation, DiophSystem, InverseLink, PredicateConstraint, Registry, Role, Variable};
