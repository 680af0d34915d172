//! String C-groups of 2-power order: finitely presented groups, permutation
//! groups, the subgroup structure of such groups, and their polytopes.

pub mod cd_construction;
pub mod fpgroup;
pub mod permgroup;
pub mod polytope;
pub mod string_cgroup;
