use std::collections::HashSet;

use polyforge_core::fpgroup::{
    coset_enumerate, coxeter_string, parse_presentation, permutation_action, regular_representation, Word,
    DEFAULT_MAX_COSETS,
};
use polyforge_core::permgroup::{
    derived_subgroup, frattini_2group, frattini_by_maximal_subgroups, hom_extends, quotient, Permutation,
    PermutationGroup,
};
use polyforge_core::string_cgroup::{covers, theorem_check, validate, AssertionClass};
use proptest::prelude::*;

const CAP: usize = 1 << 16;

/// Closure under multiplication by the generators.
fn brute_order(degree: usize, gens: &[Permutation]) -> usize {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut stack = vec![Permutation::identity(degree)];
    seen.insert(stack[0].clone());
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

fn perm(images: Vec<u32>) -> Permutation {
    Permutation::from_images(images).unwrap()
}

proptest! {
    #[test]
    fn chain_order_matches_closure(
        a in Just((0u32..7).collect::<Vec<_>>()).prop_shuffle(),
        b in Just((0u32..7).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let gens = vec![perm(a), perm(b)];
        let g = PermutationGroup::new(7, gens.clone()).unwrap();
        prop_assert_eq!(g.schreier_sims_order(), brute_order(7, &gens) as u128);
        prop_assert_eq!(g.order(), g.schreier_sims_order());
        let d = derived_subgroup(&g);
        prop_assert_eq!(g.order() % d.order(), 0);
    }
}

#[test]
fn finite_coxeter_orders() {
    // A_3, B_3, H_3, A_4, B_4 and the dihedral groups
    let cases: [(&[u32], usize); 7] =
        [(&[3, 3], 24), (&[4, 3], 48), (&[5, 3], 120), (&[3, 3, 3], 120), (&[4, 3, 3], 384), (&[6], 12), (&[2], 4)];
    for (labels, order) in cases {
        let p = coxeter_string(labels).unwrap();
        let t = coset_enumerate(&p, &[], DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.coset_count(), order, "{labels:?}");
        assert_eq!(permutation_action(&t).schreier_sims_order(), order as u128);
    }
}

#[test]
fn coset_index_times_subgroup() {
    let p = coxeter_string(&[5, 3]).unwrap();
    let cosets = coset_enumerate(&p, &[Word::gens(&[0]), Word::gens(&[1])], DEFAULT_MAX_COSETS).unwrap();
    assert_eq!(cosets.coset_count(), 12);
    assert!(cosets.relators_close(&p));
}

#[test]
fn quotient_by_derived() {
    let g = regular_representation(&coxeter_string(&[4, 3]).unwrap(), DEFAULT_MAX_COSETS).unwrap();
    let d = derived_subgroup(&g);
    assert_eq!(d.order(), 12);
    let (q, hom) = quotient(&g, &d, CAP).unwrap();
    assert_eq!(q.order(), 4);
    assert_eq!(hom.images().len(), 3);
}

#[test]
fn frattini_oracle_on_toroidal_maps() {
    for b in [2, 4] {
        let text = format!("gens r0 r1 r2\nrel r0^2, r1^2, r2^2, (r0 r1)^4, (r1 r2)^4, (r0 r2)^2, (r0 r1 r2 r1)^{b}");
        let g = regular_representation(&parse_presentation(&text).unwrap(), DEFAULT_MAX_COSETS).unwrap();
        let phi = frattini_2group(&g).unwrap();
        assert!(phi.same_elements(&frattini_by_maximal_subgroups(&g, CAP).unwrap()));
        assert_eq!(g.order() / phi.order(), 8);
    }
}

#[test]
fn theorem_on_rank_three() {
    let text = "gens r0 r1 r2\nrel r0^2, r1^2, r2^2, (r0 r1)^4, (r1 r2)^4, (r0 r2)^2, (r0 r1 r2 r1)^4";
    let g = regular_representation(&parse_presentation(text).unwrap(), DEFAULT_MAX_COSETS).unwrap();
    let s = validate(&g, g.generators()).unwrap();
    let report = theorem_check(&s, "t128", CAP);
    assert!(report.overall, "{report}");
    assert!(report.assertions.iter().any(|a| a.name == "|C|" && a.observed == "4"));
}

#[test]
fn theorem_refuses_degenerate() {
    let text = "gens r0 r1 r2 r3\nrel r0^2, r1^2, r2^2, r3^2, (r0 r1)^4, (r1 r2)^2, (r2 r3)^4\nrel (r0 r2)^2, (r0 r3)^2, (r1 r3)^2";
    let g = regular_representation(&parse_presentation(text).unwrap(), DEFAULT_MAX_COSETS).unwrap();
    let s = validate(&g, g.generators()).unwrap();
    let report = theorem_check(&s, "degenerate", CAP);
    assert!(!report.overall);
    assert!(report.failures().all(|a| a.class == AssertionClass::Hypothesis));
}

#[test]
fn covers_needs_matching_relations() {
    let square = regular_representation(&coxeter_string(&[4]).unwrap(), 64).unwrap();
    let octagon = regular_representation(&coxeter_string(&[8]).unwrap(), 64).unwrap();
    let (s, o) = (validate(&square, square.generators()).unwrap(), validate(&octagon, octagon.generators()).unwrap());
    assert!(covers(&o, &s));
    assert!(!covers(&s, &o));
    assert!(covers(&s, &s));
    assert!(hom_extends(&octagon, square.generators()).unwrap());
}
