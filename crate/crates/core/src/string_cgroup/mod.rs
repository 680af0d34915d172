//! String C-groups: validation, Schläfli types, the rotation subgroup and
//! its relatives, the structure theorem checks, quotients and coverings.

mod report;
mod structure;
mod theorem;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::permgroup::{
    framed_signature, hom_extends, intersection, is_normal, quotient, same_frame, GroupError, Permutation,
    PermutationGroup,
};

pub use report::{Assertion, AssertionClass, VerificationReport};
pub use structure::{
    a_subgroup, b_chain, c_chain, core_subgroups, minimal_generating_size, rotation_subgroup, Dissection,
};
pub use theorem::theorem_check;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StringCError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("a string C-group needs at least one generator")]
    NoGenerators,
    #[error("ρ{index} is not in the group")]
    NotAMember { index: usize },
    #[error("the distinguished generators generate a subgroup of order {generated}, not the group of order {order}")]
    NotGenerating { generated: u128, order: u128 },
    #[error("ρ{index} is not an involution")]
    NotInvolution { index: usize },
    #[error("string condition fails: ρ{i}ρ{j} does not have order 2")]
    StringCondition { i: usize, j: usize },
    #[error("intersection condition fails for K = {k:?}, J = {j:?}; witness {witness}")]
    IntersectionCondition { k: Vec<usize>, j: Vec<usize>, witness: Permutation },
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("{what}: expected {expected}, observed {observed}")]
    Contract { what: String, expected: String, observed: String },
    #[error("index {index} is outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
}

/// Orders of `ρ_{i−1}ρ_i` for `i = 1..d−1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchlafliType(pub Vec<u64>);

impl SchlafliType {
    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.0.iter().all(|&p| p != 2)
    }
}

impl fmt::Display for SchlafliType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A permutation group with distinguished involutions `ρ_0..ρ_{d−1}`
/// satisfying the string and intersection conditions. The underlying group
/// has exactly the `ρ_i` as generators.
#[derive(Debug, Clone)]
pub struct StringCGroup {
    group: PermutationGroup,
    schlafli: SchlafliType,
    parabolics: Vec<PermutationGroup>,
}

fn mask_indices(mask: usize, d: usize) -> Vec<usize> {
    (0..d).filter(|i| mask >> i & 1 == 1).collect()
}

/// Checks the string C-group axioms for `rho` in `group`. The intersection
/// condition is tested on every pair of index subsets.
pub fn validate(group: &PermutationGroup, rho: &[Permutation]) -> Result<StringCGroup, StringCError> {
    let d = rho.len();
    if d == 0 {
        return Err(StringCError::NoGenerators);
    }
    for (index, r) in rho.iter().enumerate() {
        if !group.contains(r)? {
            return Err(StringCError::NotAMember { index });
        }
    }
    let g = group.subgroup_unchecked(rho.to_vec());
    if g.order() != group.order() {
        return Err(StringCError::NotGenerating { generated: g.order(), order: group.order() });
    }
    for (index, r) in rho.iter().enumerate() {
        if !r.is_involution() {
            return Err(StringCError::NotInvolution { index });
        }
    }
    for i in 0..d {
        for j in i + 2..d {
            if !rho[i].commutes_with(&rho[j]) {
                return Err(StringCError::StringCondition { i, j });
            }
        }
    }

    let parabolics: Vec<PermutationGroup> = (0..1usize << d)
        .map(|mask| g.subgroup_unchecked(mask_indices(mask, d).into_iter().map(|i| rho[i].clone()).collect()))
        .collect();
    check_intersections(&g, &parabolics, d)?;

    let schlafli = SchlafliType((1..d).map(|i| rho[i - 1].compose(&rho[i]).order()).collect());
    Ok(StringCGroup { group: g, schlafli, parabolics })
}

fn check_intersections(g: &PermutationGroup, parabolics: &[PermutationGroup], d: usize) -> Result<(), StringCError> {
    let full = parabolics.len();
    let violation = |k: usize, j: usize, witness: Permutation| StringCError::IntersectionCondition {
        k: mask_indices(k, d),
        j: mask_indices(j, d),
        witness,
    };
    if g.frame().is_some() {
        let sigs: Vec<Vec<u64>> = parabolics.iter().map(|h| framed_signature(h).expect("framed")).collect();
        for k in 0..full {
            for j in k + 1..full {
                let meet = &sigs[k & j];
                for (w, ((a, b), m)) in sigs[k].iter().zip(&sigs[j]).zip(meet).enumerate() {
                    let extra = a & b & !m;
                    if extra != 0 {
                        let point = (w * 64) as u32 + extra.trailing_zeros();
                        return Err(violation(k, j, parabolics[k].element_at(point)));
                    }
                }
            }
        }
        return Ok(());
    }
    for k in 0..full {
        for j in k + 1..full {
            let both = intersection(&parabolics[k], &parabolics[j], usize::MAX)?;
            let meet = &parabolics[k & j];
            if both.order() != meet.order() {
                let witness =
                    both.generators().iter().find(|x| !meet.contains(x).unwrap_or(false)).cloned().unwrap_or_else(
                        || Permutation::identity(g.degree()),
                    );
                return Err(violation(k, j, witness));
            }
        }
    }
    Ok(())
}

impl StringCGroup {
    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn rho(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn rank(&self) -> usize {
        self.rho().len()
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn schlafli_type(&self) -> &SchlafliType {
        &self.schlafli
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.schlafli.is_nondegenerate()
    }

    /// `⟨ρ_i : i ∈ mask⟩`, with bit `i` of `mask` selecting `ρ_i`.
    pub fn parabolic(&self, mask: usize) -> &PermutationGroup {
        &self.parabolics[mask]
    }

    /// `⟨ρ_j : j ≠ i⟩`.
    pub fn face_stabilizer(&self, i: usize) -> &PermutationGroup {
        let all = (1 << self.rank()) - 1;
        &self.parabolics[all & !(1 << i)]
    }
}

/// The quotient by a normal subgroup, with induced generators `ρ_iN`.
pub fn quotient_stringc(s: &StringCGroup, n: &PermutationGroup, cap: usize) -> Result<StringCGroup, StringCError> {
    if !is_normal(s.group(), n)? {
        return Err(GroupError::NotNormal.into());
    }
    let (q, hom) = quotient(s.group(), n, cap)?;
    for (index, r) in hom.images().iter().enumerate() {
        if !r.is_involution() {
            return Err(StringCError::NotInvolution { index });
        }
    }
    validate(&q, hom.images())
}

/// Whether `ρ_i ↦ σ_i` extends to a homomorphism from `p` onto `q`.
pub fn covers(p: &StringCGroup, q: &StringCGroup) -> bool {
    p.rank() == q.rank() && hom_extends(p.group(), q.rho()).unwrap_or(false)
}

/// Whether two string C-groups share a regular root (so point-wise
/// subgroup arithmetic applies between them).
pub fn share_frame(a: &StringCGroup, b: &StringCGroup) -> bool {
    same_frame(a.group(), b.group())
}
