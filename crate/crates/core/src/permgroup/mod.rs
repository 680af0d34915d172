//! Permutation groups with stabilizer chains, and the subgroup
//! constructions used on 2-groups.

mod chain;
mod group;
mod hom;
mod ops;
mod perm;

use thiserror::Error;

pub use group::PermutationGroup;
pub use hom::{hom_extends, GroupHom};
pub use ops::{
    agemo, derived_subgroup, frattini_2group, frattini_by_maximal_subgroups, intersection, is_elementary_abelian, is_normal, lower_central_term,
    normal_closure, omega, quotient,
};
pub use perm::Permutation;

pub(crate) use ops::{framed_signature, same_frame};

/// Element-enumeration limit used when the caller does not choose one.
pub const DEFAULT_ELEMENT_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("permutation acts on {found} points, expected {expected}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("element is not in the group")]
    NotAMember,
    #[error("group of order {order} exceeds the element cap {cap}")]
    CapExceeded { order: u128, cap: usize },
    #[error("group of order {order} is not a 2-group")]
    NotPGroup { order: u128 },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup of the given group")]
    NotSubgroup,
    #[error("expected {expected} generator images, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("generator images do not extend to a homomorphism")]
    NotAHomomorphism,
    #[error("not a permutation")]
    InvalidPermutation,
    #[error("invalid value {value} for `{name}`")]
    InvalidParameter { name: &'static str, value: usize },
    #[error("malformed group text: {0}")]
    Malformed(String),
}
