//! Finite groups given by multiplication tables.

pub mod library;
pub mod subgroups;
pub mod table;

pub use subgroups::{
    all_subgroups, candidate_tuple_count, conjugate_by, conjugates_of_subgroup, enumerate_injections,
    normalizer, subgroups_of_order, SubgroupRef, SubsetCaps,
};
pub use table::{Diagnostic, GroupTable};
