//! Finite permutation groups and the structural queries the rest of the crate
//! is built on: orders, conjugacy classes, normalizers of cyclic subgroups,
//! Sylow subgroups, normal subgroups, the Fitting subgroup and quotients.
//!
//! Groups up to the enumeration bound are handled by listing their elements;
//! the order itself always comes from a stabilizer chain.

mod chain;
mod classes;
mod group;
mod permutation;
mod subgroup;

pub use chain::StabChain;
pub use classes::{ConjClass, RationalityReport};
pub use group::{
    enumeration_bound_from_env, Elements, GroupFile, PermGroup, DEFAULT_ENUMERATION_BOUND,
    ENUMERATION_BOUND_ENV,
};
pub use permutation::Permutation;
pub use subgroup::{QuotientMap, Subgroup, SubgroupSummary};
