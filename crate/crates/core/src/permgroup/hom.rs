use std::collections::HashMap;

use super::chain::StabChain;
use super::group::PermutationGroup;
use super::perm::Permutation;
use super::{GroupError, DEFAULT_ELEMENT_CAP};

/// Whether `g_i ↦ images[i]` extends to a homomorphism on `G`.
///
/// The diagonal group `D = ⟨g_i ⊕ images[i]⟩` on the disjoint union of the
/// two domains projects onto `G`; the map is a homomorphism iff `|D| = |G|`.
pub fn hom_extends(g: &PermutationGroup, images: &[Permutation]) -> Result<bool, GroupError> {
    let gens = g.generators();
    if images.len() != gens.len() {
        return Err(GroupError::ArityMismatch { expected: gens.len(), found: images.len() });
    }
    let Some(m) = images.first().map(Permutation::degree) else {
        return Ok(true);
    };
    if let Some(bad) = images.iter().find(|h| h.degree() != m) {
        return Err(GroupError::DomainMismatch { expected: m, found: bad.degree() });
    }

    if let Some((f, _)) = g.frame_level() {
        // D is semiregular at the frame point exactly when |D| = |G|; walk
        // the orbit and compare the second components of the Schreier
        // generators with the identity.
        let mut second: Vec<Option<Permutation>> = vec![None; g.degree()];
        second[f.point as usize] = Some(Permutation::identity(m));
        let mut queue = vec![f.point];
        let mut k = 0;
        while k < queue.len() {
            let q = queue[k];
            k += 1;
            let hq = second[q as usize].clone().expect("visited");
            for (s, h) in gens.iter().zip(images) {
                let y = s.apply(q);
                let next = hq.compose(h);
                match &second[y as usize] {
                    Some(existing) if *existing != next => return Ok(false),
                    Some(_) => {}
                    None => {
                        second[y as usize] = Some(next);
                        queue.push(y);
                    }
                }
            }
        }
        return Ok(true);
    }

    let n = g.degree();
    let diagonal: Vec<Permutation> = gens.iter().zip(images).map(|(s, h)| s.direct_sum(h)).collect();
    Ok(StabChain::schreier_sims(n + m, &diagonal).order() == g.order())
}

/// A homomorphism given by generator images, verified on construction.
#[derive(Debug, Clone)]
pub struct GroupHom {
    source: PermutationGroup,
    target: PermutationGroup,
    images: Vec<Permutation>,
}

impl GroupHom {
    pub fn new(source: PermutationGroup, target: PermutationGroup, images: Vec<Permutation>) -> Result<Self, GroupError> {
        if images.len() != source.generators().len() {
            return Err(GroupError::ArityMismatch { expected: source.generators().len(), found: images.len() });
        }
        for h in &images {
            if !target.contains(h)? {
                return Err(GroupError::NotAMember);
            }
        }
        if !hom_extends(&source, &images)? {
            return Err(GroupError::NotAHomomorphism);
        }
        Ok(GroupHom { source, target, images })
    }

    pub(crate) fn from_parts(source: PermutationGroup, target: PermutationGroup, images: Vec<Permutation>) -> Self {
        GroupHom { source, target, images }
    }

    pub fn source(&self) -> &PermutationGroup {
        &self.source
    }

    pub fn target(&self) -> &PermutationGroup {
        &self.target
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    /// Image of an element of the source.
    pub fn image(&self, x: &Permutation) -> Result<Permutation, GroupError> {
        if !self.source.contains(x)? {
            return Err(GroupError::NotAMember);
        }
        let m = self.target.degree();
        if let Some((f, level)) = self.source.frame_level() {
            let mut out = Permutation::identity(m);
            for s in level.path_to(x.apply(f.point)) {
                out.compose_in_place(&self.images[s]);
            }
            return Ok(out);
        }
        // breadth-first over the source, words in generator order
        let mut seen: HashMap<Permutation, Permutation> = HashMap::new();
        let id = Permutation::identity(self.source.degree());
        seen.insert(id.clone(), Permutation::identity(m));
        let mut queue = vec![id];
        let mut k = 0;
        while k < queue.len() {
            let y = queue[k].clone();
            k += 1;
            if &y == x {
                return Ok(seen[&y].clone());
            }
            if seen.len() > DEFAULT_ELEMENT_CAP {
                break;
            }
            let hy = seen[&y].clone();
            for (s, h) in self.source.generators().iter().zip(&self.images) {
                let z = y.compose(s);
                if !seen.contains_key(&z) {
                    seen.insert(z.clone(), hy.compose(h));
                    queue.push(z);
                }
            }
        }
        Err(GroupError::CapExceeded { order: self.source.order(), cap: DEFAULT_ELEMENT_CAP })
    }
}
