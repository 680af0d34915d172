//! The tight polytope `C_d` of type `{4,…,4}`: its group presentation,
//! the group itself, and its central subgroup `K`.

use thiserror::Error;

use crate::fpgroup::{
    coxeter_string, regular_representation, EnumerationError, Presentation, PresentationError, Word,
};
use crate::permgroup::{
    derived_subgroup, is_normal, lower_central_term, quotient, PermutationGroup, DEFAULT_ELEMENT_CAP,
};
use crate::string_cgroup::{validate, StringCError, StringCGroup, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Validation(#[from] StringCError),
    #[error("G(C_{d}) has order {observed}, expected {expected}")]
    OrderMismatch { d: usize, expected: u128, observed: u128 },
    #[error("G(C_{d}) has type {observed}, expected all 4s")]
    TypeMismatch { d: usize, observed: String },
}

/// `[4,…,4]` on `d` generators plus `[(ρ_iρ_{i+1})², ρ_j]` for
/// `0 ≤ i < d−1` and every `0 ≤ j ≤ d−1`, including the redundant ones.
pub fn cd_presentation(d: usize) -> Result<Presentation, PresentationError> {
    if d < 2 {
        return Err(PresentationError::RankTooSmall { rank: d });
    }
    let coxeter = coxeter_string(&vec![4; d - 1])?;
    let mut extra = Vec::with_capacity(d * (d - 1));
    for i in 0..d - 1 {
        let square = Word::gens(&[i, i + 1]).pow(2);
        for j in 0..d {
            extra.push(Word::commutator(&square, &Word::gens(&[j])));
        }
    }
    coxeter.with_relators(extra)
}

#[derive(Debug, Clone)]
pub struct CdGroup {
    pub d: usize,
    pub presentation: Presentation,
    pub group: StringCGroup,
    /// `K = ⟨(ρ_iρ_{i+1})² : 0 ≤ i < d−1⟩`
    pub k: PermutationGroup,
}

/// Builds `G(C_d)` by coset enumeration and checks its order `2^{2d−1}` and
/// type `{4,…,4}`.
pub fn cd_group(d: usize, max_cosets: usize) -> Result<CdGroup, CdError> {
    let presentation = cd_presentation(d)?;
    let g = regular_representation(&presentation, max_cosets)?;
    let expected = 1u128 << (2 * d - 1);
    if g.order() != expected {
        return Err(CdError::OrderMismatch { d, expected, observed: g.order() });
    }
    let group = validate(&g, g.generators())?;
    if group.schlafli_type().entries().iter().any(|&p| p != 4) {
        return Err(CdError::TypeMismatch { d, observed: group.schlafli_type().to_string() });
    }
    let rho = group.rho();
    let k_gens = (0..d - 1).map(|i| rho[i].compose(&rho[i + 1]).pow(2)).collect();
    let k = group.group().subgroup_unchecked(k_gens);
    Ok(CdGroup { d, presentation, group, k })
}

/// `K` abelian, normal and central; `G/K` abelian; `G` non-abelian;
/// nilpotency class exactly 2.
pub fn verify_cd_structure(c: &CdGroup) -> VerificationReport {
    let g = c.group.group();
    let mut report = VerificationReport::new(format!("cd{}", c.d), g.order(), c.d);
    let kg = c.k.generators();
    report.expect_true("K abelian", kg.iter().all(|x| kg.iter().all(|y| x.commutes_with(y))));
    report.expect_true("K ⊴ G", is_normal(g, &c.k).unwrap_or(false));
    report.expect_true("K central", kg.iter().all(|x| g.generators().iter().all(|r| x.commutes_with(r))));
    match quotient(g, &c.k, DEFAULT_ELEMENT_CAP) {
        Ok((q, _)) => report.expect_true("G/K abelian", derived_subgroup(&q).is_trivial()),
        Err(e) => report.record("G/K abelian", true, e, false),
    }
    report.expect_true("G non-abelian", !derived_subgroup(g).is_trivial());
    let g2 = lower_central_term(g, 2).expect("k >= 1");
    let g3 = lower_central_term(g, 3).expect("k >= 1");
    report.expect_eq("|G_2|", "> 1".to_string(), if g2.order() > 1 { "> 1".into() } else { "1".into() });
    report.expect_eq("|G_3|", 1, g3.order());
    report.note(format!("|K| = {}", c.k.order()));
    report
}

/// The flag-count lower bound `2·p_1⋯p_{d−1}`.
pub fn flag_bound(s: &StringCGroup) -> u128 {
    2 * s.schlafli_type().entries().iter().map(|&p| p as u128).product::<u128>()
}

/// Whether the group attains the flag-count bound. Errors if the order is
/// below the bound, which the bound rules out for string C-groups.
pub fn tightness_check(s: &StringCGroup) -> Result<bool, StringCError> {
    let bound = flag_bound(s);
    if s.order() < bound {
        return Err(StringCError::Contract {
            what: "|G| >= 2·p_1⋯p_{d−1}".into(),
            expected: format!(">= {bound}"),
            observed: s.order().to_string(),
        });
    }
    Ok(s.order() == bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{coset_enumerate, DEFAULT_MAX_COSETS};

    #[test]
    fn relator_counts() {
        for d in 2..=5 {
            let p = cd_presentation(d).unwrap();
            let commuting = (d - 1) * (d - 2) / 2;
            assert_eq!(p.relators().len(), d + (d - 1) + commuting + d * (d - 1), "d = {d}");
        }
        assert!(matches!(cd_presentation(1), Err(PresentationError::RankTooSmall { rank: 1 })));
    }

    #[test]
    fn presentation_round_trip() {
        let p = cd_presentation(3).unwrap();
        let text = p.to_text();
        assert_eq!(Presentation::parse(&text).unwrap(), p);
    }

    #[test]
    fn orders_by_enumeration() {
        for (d, order) in [(2, 8), (3, 32), (4, 128)] {
            let t = coset_enumerate(&cd_presentation(d).unwrap(), &[], DEFAULT_MAX_COSETS).unwrap();
            assert_eq!(t.coset_count(), order);
        }
    }

    #[test]
    fn structure_and_tightness() {
        for d in 2..=4 {
            let c = cd_group(d, DEFAULT_MAX_COSETS).unwrap();
            let report = verify_cd_structure(&c);
            assert!(report.overall, "{report}");
            assert!(tightness_check(&c.group).unwrap());
        }
    }
}
