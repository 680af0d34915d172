//! Subgroup constructions: normal closure, commutator subgroups, Frattini,
//! agemo/omega, intersection and quotients.

use std::collections::HashMap;
use std::sync::Arc;

use super::group::PermutationGroup;
use super::hom::GroupHom;
use super::perm::Permutation;
use super::GroupError;

fn check_members(g: &PermutationGroup, gens: &[Permutation]) -> Result<(), GroupError> {
    for x in gens {
        if !g.contains(x)? {
            return Err(GroupError::NotAMember);
        }
    }
    Ok(())
}

/// Smallest normal subgroup of `g` containing `gens`.
pub fn normal_closure(g: &PermutationGroup, gens: &[Permutation]) -> Result<PermutationGroup, GroupError> {
    check_members(g, gens)?;
    Ok(normal_closure_unchecked(g, gens.iter().cloned()))
}

pub(crate) fn normal_closure_unchecked(
    g: &PermutationGroup,
    gens: impl IntoIterator<Item = Permutation>,
) -> PermutationGroup {
    let mut n = g.span_of(gens);
    let mut queue: Vec<Permutation> = n.generators().to_vec();
    let mut k = 0;
    while k < queue.len() {
        let h = queue[k].clone();
        k += 1;
        for s in g.generators() {
            let c = h.conjugate_by(s);
            if !n.contains_from(&c, g) {
                let mut next = n.generators().to_vec();
                next.push(c.clone());
                n = g.subgroup_unchecked(next);
                queue.push(c);
            }
        }
    }
    n
}

fn generator_commutators(g: &PermutationGroup) -> Vec<Permutation> {
    let gens = g.generators();
    let mut out = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            out.push(gens[i].commutator(&gens[j]));
        }
    }
    out
}

/// `G′ = [G, G]`.
pub fn derived_subgroup(g: &PermutationGroup) -> PermutationGroup {
    normal_closure_unchecked(g, generator_commutators(g))
}

/// Term `k` of the lower central series, with term 1 equal to `G`.
pub fn lower_central_term(g: &PermutationGroup, k: usize) -> Result<PermutationGroup, GroupError> {
    if k == 0 {
        return Err(GroupError::InvalidParameter { name: "k", value: k });
    }
    let mut term = g.span_of(g.generators().iter().cloned());
    for _ in 1..k {
        if term.is_trivial() {
            break;
        }
        let comms: Vec<Permutation> = term
            .generators()
            .iter()
            .flat_map(|x| g.generators().iter().map(move |s| x.commutator(s)))
            .collect();
        term = normal_closure_unchecked(g, comms);
    }
    Ok(term)
}

fn require_two_group(g: &PermutationGroup) -> Result<(), GroupError> {
    let order = g.order();
    if order.is_power_of_two() {
        Ok(())
    } else {
        Err(GroupError::NotPGroup { order })
    }
}

/// Φ(G) for a 2-group, as the normal closure of squares and commutators of
/// the generators.
pub fn frattini_2group(g: &PermutationGroup) -> Result<PermutationGroup, GroupError> {
    require_two_group(g)?;
    let squares = g.generators().iter().map(|s| s.compose(s));
    let gens: Vec<Permutation> = squares.chain(generator_commutators(g)).collect();
    Ok(normal_closure_unchecked(g, gens))
}

fn pow2_mod(j: u32, m: usize) -> usize {
    let mut r = 1 % m;
    for _ in 0..j.min(200) {
        r = r * 2 % m;
    }
    r
}

fn divides_pow2(order: usize, j: u32) -> bool {
    order.is_power_of_two() && order.trailing_zeros() <= j
}

/// For a framed group: for each element (named by its frame-point image),
/// the cycle of the frame point under it, in orbit order.
fn point_cycles(g: &PermutationGroup) -> Option<Vec<(u32, Vec<u32>)>> {
    let (f, level) = g.frame_level()?;
    let p = f.point;
    Some(
        level
            .orbit
            .iter()
            .map(|&q| {
                let path = level.path_to(q);
                let mut cycle = vec![p];
                let mut r = q;
                while r != p {
                    cycle.push(r);
                    r = level.apply_path(&path, r);
                }
                (q, cycle)
            })
            .collect(),
    )
}

enum PowerFilter {
    Agemo,
    Omega,
}

fn power_subgroup(g: &PermutationGroup, j: u32, cap: usize, kind: PowerFilter) -> Result<PermutationGroup, GroupError> {
    if j == 0 {
        return Err(GroupError::InvalidParameter { name: "j", value: 0 });
    }
    require_two_group(g)?;
    let order = g.order();
    if order > cap as u128 {
        return Err(GroupError::CapExceeded { order, cap });
    }
    if let Some(cycles) = point_cycles(g) {
        let points = cycles.into_iter().filter_map(|(q, cycle)| match kind {
            PowerFilter::Agemo => Some(cycle[pow2_mod(j, cycle.len())]),
            PowerFilter::Omega => divides_pow2(cycle.len(), j).then_some(q),
        });
        return Ok(g.span_of_points(points.collect::<Vec<_>>()));
    }
    let elements = g.elements(cap)?;
    let picked: Vec<Permutation> = match kind {
        PowerFilter::Agemo => elements
            .into_iter()
            .map(|x| (0..j.min(200)).fold(x, |y, _| y.compose(&y)))
            .collect(),
        PowerFilter::Omega => elements.into_iter().filter(|x| divides_pow2(x.order() as usize, j)).collect(),
    };
    Ok(g.span_of(picked))
}

/// `℧_j(G) = ⟨x^{2^j} : x ∈ G⟩` for a 2-group, over all elements.
pub fn agemo(g: &PermutationGroup, j: u32, cap: usize) -> Result<PermutationGroup, GroupError> {
    power_subgroup(g, j, cap, PowerFilter::Agemo)
}

/// `Ω_j(G) = ⟨x ∈ G : x^{2^j} = 1⟩` for a 2-group, over all elements.
pub fn omega(g: &PermutationGroup, j: u32, cap: usize) -> Result<PermutationGroup, GroupError> {
    power_subgroup(g, j, cap, PowerFilter::Omega)
}

fn orbit_bits(g: &PermutationGroup) -> Vec<u64> {
    let (_, level) = g.frame_level().expect("framed group");
    let mut bits = vec![0u64; g.degree().div_ceil(64)];
    for &x in &level.orbit {
        bits[x as usize / 64] |= 1 << (x % 64);
    }
    bits
}

/// For subgroups of one framed root: the set of frame-point images, which
/// determines the subgroup.
pub(crate) fn framed_signature(g: &PermutationGroup) -> Option<Vec<u64>> {
    g.frame()?;
    Some(orbit_bits(g))
}

/// `H1 ∩ H2`, by enumerating the smaller group and testing membership in the
/// other. Subgroups of a common regular group are intersected point-wise.
pub fn intersection(h1: &PermutationGroup, h2: &PermutationGroup, cap: usize) -> Result<PermutationGroup, GroupError> {
    if h1.degree() != h2.degree() {
        return Err(GroupError::DomainMismatch { expected: h1.degree(), found: h2.degree() });
    }
    let (small, large) = if h2.order() < h1.order() { (h2, h1) } else { (h1, h2) };
    let order = small.order();
    if order > cap as u128 {
        return Err(GroupError::CapExceeded { order, cap });
    }
    if small.shares_frame(large) {
        let other = orbit_bits(large);
        let (_, level) = small.frame_level().expect("framed");
        let points: Vec<u32> =
            level.orbit.iter().copied().filter(|&x| other[x as usize / 64] >> (x % 64) & 1 == 1).collect();
        return Ok(small.span_of_points(points));
    }
    let common: Vec<Permutation> =
        small.elements(cap)?.into_iter().filter(|x| large.contains(x).unwrap_or(false)).collect();
    Ok(small.span_of(common))
}

/// Whether `h ⊴ g`. Fails when `h` is not a subgroup of `g`.
pub fn is_normal(g: &PermutationGroup, h: &PermutationGroup) -> Result<bool, GroupError> {
    if !h.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup);
    }
    Ok(h.generators().iter().all(|x| g.generators().iter().all(|s| h.contains_from(&x.conjugate_by(s), g))))
}

/// Generators pairwise commute and square to the identity.
pub fn is_elementary_abelian(g: &PermutationGroup) -> bool {
    let gens = g.generators();
    gens.iter().all(|a| a.compose(a).is_identity())
        && gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
}

/// Cosets of `n` in `g` as labelled blocks, numbered in breadth-first order
/// from the coset of the identity using `g`'s generator order. Returns the
/// action of each generator on the coset numbers.
fn coset_action(g: &PermutationGroup, n: &PermutationGroup, cap: usize) -> Result<Vec<Vec<u32>>, GroupError> {
    let gens = g.generators();
    if g.shares_frame(n) {
        let (f, level) = g.frame_level().expect("framed");
        let mut block = vec![u32::MAX; g.degree()];
        let mut blocks = 0u32;
        for &x in &level.orbit {
            if block[x as usize] != u32::MAX {
                continue;
            }
            block[x as usize] = blocks;
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                for s in n.generators() {
                    let z = s.apply(y);
                    if block[z as usize] == u32::MAX {
                        block[z as usize] = blocks;
                        stack.push(z);
                    }
                }
            }
            blocks += 1;
        }
        if blocks as usize > cap {
            return Err(GroupError::CapExceeded { order: blocks as u128, cap });
        }
        let mut number = vec![u32::MAX; blocks as usize];
        let mut reps = vec![f.point];
        number[block[f.point as usize] as usize] = 0;
        let mut k = 0;
        while k < reps.len() {
            let r = reps[k];
            k += 1;
            for s in gens {
                let y = s.apply(r);
                let b = block[y as usize] as usize;
                if number[b] == u32::MAX {
                    number[b] = reps.len() as u32;
                    reps.push(y);
                }
            }
        }
        return Ok(gens
            .iter()
            .map(|s| reps.iter().map(|&r| number[block[s.apply(r) as usize] as usize]).collect())
            .collect());
    }

    let index = g.order() / n.order();
    if index > cap as u128 {
        return Err(GroupError::CapExceeded { order: index, cap });
    }
    // an element of g is determined by its base image; a coset xN by the
    // least base image over xN
    let base = g.base();
    let n_elements = n.elements(cap)?;
    let key = |t: &[u32]| -> Vec<u32> {
        n_elements.iter().map(|e| t.iter().map(|&b| e.apply(b)).collect::<Vec<u32>>()).min().expect("identity")
    };
    let mut number: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut reps: Vec<Vec<u32>> = vec![base.clone()];
    number.insert(key(&base), 0);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut k = 0;
    while k < reps.len() {
        let r = reps[k].clone();
        k += 1;
        for (i, s) in gens.iter().enumerate() {
            let t: Vec<u32> = r.iter().map(|&b| s.apply(b)).collect();
            let next = number.len() as u32;
            let c = *number.entry(key(&t)).or_insert_with(|| {
                reps.push(t.clone());
                next
            });
            images[i].push(c);
        }
    }
    Ok(images)
}

/// `G/N` as the action of `G` on the right cosets of `N`, with the
/// quotient map. Generator `i` of the quotient is the image of generator `i`.
pub fn quotient(
    g: &PermutationGroup,
    n: &PermutationGroup,
    cap: usize,
) -> Result<(PermutationGroup, GroupHom), GroupError> {
    if !n.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup);
    }
    if !is_normal(g, n)? {
        return Err(GroupError::NotNormal);
    }
    let action = coset_action(g, n, cap)?;
    let degree = (g.order() / n.order()) as usize;
    let images: Vec<Permutation> = action.into_iter().map(Permutation::from_images_unchecked).collect();
    let q = PermutationGroup::regular_unchecked(degree, images.clone());
    let hom = GroupHom::from_parts(g.clone(), q.clone(), images);
    Ok((q, hom))
}

/// Φ(G) for a 2-group as the intersection of its maximal subgroups, which
/// are the kernels of the nonzero homomorphisms onto `Z_2`. Each candidate
/// assignment of generator parities is tested on the whole Cayley graph.
pub fn frattini_by_maximal_subgroups(g: &PermutationGroup, cap: usize) -> Result<PermutationGroup, GroupError> {
    require_two_group(g)?;
    let elements = g.elements(cap)?;
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let gens = g.generators();
    let edges: Vec<Vec<usize>> =
        elements.iter().map(|x| gens.iter().map(|s| index[&x.compose(s)]).collect()).collect();
    let identity = index[&Permutation::identity(g.degree())];
    if gens.len() >= usize::BITS as usize {
        return Err(GroupError::InvalidParameter { name: "generator count", value: gens.len() });
    }
    let mut in_all_kernels = vec![true; elements.len()];
    for assignment in 1usize..1 << gens.len() {
        let mut parity: Vec<Option<bool>> = vec![None; elements.len()];
        parity[identity] = Some(false);
        let mut queue = vec![identity];
        let mut consistent = true;
        let mut k = 0;
        'walk: while k < queue.len() {
            let x = queue[k];
            k += 1;
            let px = parity[x].expect("visited");
            for (s, &y) in edges[x].iter().enumerate() {
                let py = px ^ (assignment >> s & 1 == 1);
                match parity[y] {
                    Some(q) if q != py => {
                        consistent = false;
                        break 'walk;
                    }
                    Some(_) => {}
                    None => {
                        parity[y] = Some(py);
                        queue.push(y);
                    }
                }
            }
        }
        if consistent {
            for (keep, p) in in_all_kernels.iter_mut().zip(&parity) {
                *keep &= *p == Some(false);
            }
        }
    }
    let members = elements.into_iter().zip(in_all_kernels).filter_map(|(x, keep)| keep.then_some(x));
    Ok(g.span_of(members.collect::<Vec<_>>()))
}

/// Shared handle comparison for frames, exposed to sibling modules.
pub(crate) fn same_frame(a: &PermutationGroup, b: &PermutationGroup) -> bool {
    match (a.frame(), b.frame()) {
        (Some(x), Some(y)) => Arc::ptr_eq(x, y),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::DEFAULT_ELEMENT_CAP;

    const CAP: usize = DEFAULT_ELEMENT_CAP;

    fn dihedral8() -> PermutationGroup {
        let r = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let s = Permutation::from_cycles(4, &[&[1, 3]]).unwrap();
        PermutationGroup::new(4, vec![r, s]).unwrap()
    }

    fn cyclic(n: u32) -> PermutationGroup {
        let c: Vec<u32> = (0..n).collect();
        PermutationGroup::new(n as usize, vec![Permutation::from_cycles(n as usize, &[&c]).unwrap()]).unwrap()
    }

    fn klein() -> PermutationGroup {
        let a = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap();
        PermutationGroup::new(4, vec![a, b]).unwrap()
    }

    #[test]
    fn dihedral_subgroups() {
        let g = dihedral8();
        assert_eq!(derived_subgroup(&g).order(), 2);
        assert_eq!(frattini_2group(&g).unwrap().order(), 2);
        assert_eq!(agemo(&g, 1, CAP).unwrap().order(), 2);
        assert_eq!(omega(&g, 1, CAP).unwrap().order(), 8);
        assert!(!is_elementary_abelian(&g));
        assert_eq!(lower_central_term(&g, 3).unwrap().order(), 1);
        assert_eq!(lower_central_term(&g, 1).unwrap().order(), 8);
    }

    #[test]
    fn frattini_oracle_agrees() {
        for g in [dihedral8(), cyclic(8), klein(), cyclic(16)] {
            let phi = frattini_2group(&g).unwrap();
            let oracle = frattini_by_maximal_subgroups(&g, CAP).unwrap();
            assert!(phi.same_elements(&oracle));
        }
    }

    #[test]
    fn cyclic_powers() {
        let g = cyclic(8);
        assert_eq!(agemo(&g, 1, CAP).unwrap().order(), 4);
        assert_eq!(omega(&g, 1, CAP).unwrap().order(), 2);
        assert_eq!(omega(&g, 3, CAP).unwrap().order(), 8);
        assert_eq!(derived_subgroup(&g).order(), 1);
    }

    #[test]
    fn elementary_abelian_cases() {
        let k = klein();
        assert!(is_elementary_abelian(&k));
        assert_eq!(frattini_2group(&k).unwrap().order(), 1);
        assert_eq!(agemo(&k, 1, CAP).unwrap().order(), 1);
        assert!(is_elementary_abelian(&PermutationGroup::trivial(3)));
    }

    #[test]
    fn non_two_group_rejected() {
        let g = cyclic(3);
        assert_eq!(frattini_2group(&g).unwrap_err(), GroupError::NotPGroup { order: 3 });
    }

    #[test]
    fn reflection_subgroup_not_normal() {
        let g = dihedral8();
        let s = g.subgroup(vec![g.generators()[1].clone()]).unwrap();
        assert!(!is_normal(&g, &s).unwrap());
        assert!(is_normal(&g, &derived_subgroup(&g)).unwrap());
        assert_eq!(is_normal(&s, &g).unwrap_err(), GroupError::NotSubgroup);
    }

    #[test]
    fn quotient_by_frattini_is_elementary() {
        let g = dihedral8();
        let phi = frattini_2group(&g).unwrap();
        let (q, hom) = quotient(&g, &phi, CAP).unwrap();
        assert_eq!(q.order(), 4);
        assert!(is_elementary_abelian(&q));
        assert_eq!(hom.images().len(), 2);
        let (t, _) = quotient(&g, &g, CAP).unwrap();
        assert_eq!(t.order(), 1);
        let (copy, _) = quotient(&g, &PermutationGroup::trivial(4), CAP).unwrap();
        assert_eq!(copy.order(), 8);
        assert_eq!(copy.degree(), 8);
    }

    #[test]
    fn intersections_generic_and_framed() {
        let g = dihedral8();
        let rot = g.subgroup(vec![g.generators()[0].clone()]).unwrap();
        let refl = g.subgroup(vec![g.generators()[1].clone(), g.generators()[0].pow(2)]).unwrap();
        assert_eq!(intersection(&rot, &refl, CAP).unwrap().order(), 2);
        assert_eq!(intersection(&rot, &rot, CAP).unwrap().order(), 4);

        let c = cyclic(12);
        let gen = c.generators()[0].clone();
        let a = c.subgroup(vec![gen.pow(2)]).unwrap();
        let b = c.subgroup(vec![gen.pow(3)]).unwrap();
        assert!(same_frame(&a, &b));
        let ab = intersection(&a, &b, CAP).unwrap();
        assert_eq!(ab.order(), 2);
        assert!(ab.contains(&gen.pow(6)).unwrap());
    }
}
