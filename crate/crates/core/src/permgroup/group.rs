use std::fmt;
use std::sync::{Arc, OnceLock};

use super::chain::{Level, StabChain};
use super::perm::Permutation;
use super::GroupError;

/// A root group acting semiregularly on the orbit of `point`. Every subgroup
/// of the root inherits the frame, so its elements are determined by the
/// image of `point` and its order is the length of that orbit.
pub(crate) struct Frame {
    pub point: u32,
    pub root: Arc<StabChain>,
}

impl Frame {
    fn root_contains(&self, g: &Permutation) -> bool {
        self.root.contains(g)
    }
}

/// A permutation group on `0..degree`, given by generators. The stabilizer
/// chain is built on first use and cached.
#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    frame: OnceLock<Option<Arc<Frame>>>,
    chain: OnceLock<Arc<StabChain>>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DomainMismatch { expected: degree, found: g.degree() });
            }
        }
        Ok(PermutationGroup { degree, generators, frame: OnceLock::new(), chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup { degree, generators: Vec::new(), frame: OnceLock::new(), chain: OnceLock::new() }
    }

    /// A group already known to act regularly (for instance on its own
    /// cosets of the trivial subgroup), framed at point 0.
    pub(crate) fn regular_unchecked(degree: usize, generators: Vec<Permutation>) -> Self {
        let chain = Arc::new(StabChain::single_level(degree, &generators, 0));
        let frame = Arc::new(Frame { point: 0, root: chain.clone() });
        PermutationGroup { degree, generators, frame: OnceLock::from(Some(frame)), chain: OnceLock::from(chain) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub(crate) fn chain(&self) -> &Arc<StabChain> {
        self.chain.get_or_init(|| match self.frame.get() {
            Some(Some(f)) => Arc::new(StabChain::single_level(self.degree, &self.generators, f.point)),
            _ => Arc::new(StabChain::schreier_sims(self.degree, &self.generators)),
        })
    }

    pub(crate) fn frame(&self) -> Option<&Arc<Frame>> {
        self.frame
            .get_or_init(|| {
                let chain = self.chain();
                (chain.levels.len() == 1)
                    .then(|| Arc::new(Frame { point: chain.levels[0].base, root: chain.clone() }))
            })
            .as_ref()
    }

    /// The single chain level of a framed group.
    pub(crate) fn frame_level(&self) -> Option<(&Arc<Frame>, &Level)> {
        let f = self.frame()?;
        Some((f, &self.chain().levels[0]))
    }

    pub(crate) fn shares_frame(&self, other: &PermutationGroup) -> bool {
        match (self.frame(), other.frame()) {
            (Some(a), Some(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    /// Order from a fresh Schreier–Sims run that ignores any known framing.
    pub fn schreier_sims_order(&self) -> u128 {
        StabChain::schreier_sims(self.degree, &self.generators).order()
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain().base()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn is_two_group(&self) -> bool {
        self.order().is_power_of_two()
    }

    /// `log2 |G|` for groups of 2-power order.
    pub fn two_exponent(&self) -> Option<u32> {
        let o = self.order();
        o.is_power_of_two().then(|| o.trailing_zeros())
    }

    fn check_degree(&self, g: &Permutation) -> Result<(), GroupError> {
        if g.degree() == self.degree {
            Ok(())
        } else {
            Err(GroupError::DomainMismatch { expected: self.degree, found: g.degree() })
        }
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool, GroupError> {
        self.check_degree(g)?;
        Ok(match self.frame_level() {
            Some((f, level)) => f.root_contains(g) && level.in_orbit(g.apply(f.point)),
            None => self.chain().contains(g),
        })
    }

    /// Membership for an element already known to lie in `ambient`.
    pub(crate) fn contains_from(&self, g: &Permutation, ambient: &PermutationGroup) -> bool {
        if self.shares_frame(ambient) {
            let (f, level) = self.frame_level().expect("framed");
            level.in_orbit(g.apply(f.point))
        } else {
            self.contains(g).unwrap_or(false)
        }
    }

    /// Every element exactly once. The order is deterministic: it follows
    /// the chain's transversals.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>, GroupError> {
        let order = self.order();
        if order > cap as u128 {
            return Err(GroupError::CapExceeded { order, cap });
        }
        Ok(self.chain().elements())
    }

    /// The element of a framed group sending the frame point to `x`.
    pub(crate) fn element_at(&self, x: u32) -> Permutation {
        let (_, level) = self.frame_level().expect("framed group");
        debug_assert!(level.in_orbit(x));
        level.transversal(x)
    }

    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermutationGroup, GroupError> {
        for g in &gens {
            if !self.contains(g)? {
                return Err(GroupError::NotAMember);
            }
        }
        Ok(self.subgroup_unchecked(gens))
    }

    pub(crate) fn subgroup_unchecked(&self, gens: Vec<Permutation>) -> PermutationGroup {
        let frame = OnceLock::new();
        if let Some(f) = self.frame() {
            let _ = frame.set(Some(f.clone()));
        }
        PermutationGroup { degree: self.degree, generators: gens, frame, chain: OnceLock::new() }
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree
            && self.generators.iter().all(|g| other.contains(g).unwrap_or(false))
    }

    /// Equality as sets of permutations.
    pub fn same_elements(&self, other: &PermutationGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Smallest subgroup of `self` containing `candidates`, built by adding
    /// a candidate as a generator only when it is not yet a member.
    pub(crate) fn span_of(&self, candidates: impl IntoIterator<Item = Permutation>) -> PermutationGroup {
        let mut gens = Vec::new();
        let mut sub = self.subgroup_unchecked(Vec::new());
        for c in candidates {
            if !c.is_identity() && !sub.contains_from(&c, self) {
                gens.push(c);
                sub = self.subgroup_unchecked(gens.clone());
            }
        }
        sub
    }

    /// Like `span_of`, for a framed group, with elements named by the image
    /// of the frame point. Points must lie in this group's orbit.
    pub(crate) fn span_of_points(&self, points: impl IntoIterator<Item = u32>) -> PermutationGroup {
        let mut gens = Vec::new();
        let mut sub = self.subgroup_unchecked(Vec::new());
        for x in points {
            let in_sub = sub.frame_level().is_some_and(|(_, level)| level.in_orbit(x));
            if !in_sub {
                gens.push(self.element_at(x));
                sub = self.subgroup_unchecked(gens.clone());
            }
        }
        sub
    }

    /// Text form: a `degree N` line, then one `p: …` line per generator.
    pub fn to_text(&self) -> String {
        let mut out = format!("degree {}\n", self.degree);
        for g in &self.generators {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, GroupError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let degree = lines
            .next()
            .and_then(|l| l.strip_prefix("degree"))
            .and_then(|d| d.trim().parse::<usize>().ok())
            .ok_or_else(|| GroupError::Malformed("expected `degree N` first".into()))?;
        let gens = lines.map(str::parse::<Permutation>).collect::<Result<Vec<_>, _>>()?;
        PermutationGroup::new(degree, gens)
    }
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral8() -> PermutationGroup {
        let r = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let s = Permutation::from_cycles(4, &[&[1, 3]]).unwrap();
        PermutationGroup::new(4, vec![r, s]).unwrap()
    }

    #[test]
    fn trivial_group() {
        let t = PermutationGroup::trivial(5);
        assert_eq!(t.order(), 1);
        assert!(t.contains(&Permutation::identity(5)).unwrap());
        assert_eq!(t.elements(1).unwrap(), vec![Permutation::identity(5)]);
    }

    #[test]
    fn generators_are_members() {
        let g = dihedral8();
        assert_eq!(g.order(), 8);
        for s in g.generators() {
            assert!(g.contains(s).unwrap());
        }
        assert!(!g.contains(&Permutation::from_cycles(4, &[&[0, 1]]).unwrap()).unwrap());
        assert!(g.contains(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn subgroup_membership_is_checked() {
        let g = dihedral8();
        let bad = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        assert_eq!(g.subgroup(vec![bad]).unwrap_err(), GroupError::NotAMember);
        assert_eq!(g.subgroup(vec![]).unwrap().order(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(dihedral8().elements(7), Err(GroupError::CapExceeded { order: 8, cap: 7 })));
    }

    #[test]
    fn regular_groups_are_framed() {
        // cyclic group of order 6 acting on itself
        let c = Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        let g = PermutationGroup::new(6, vec![c.clone()]).unwrap();
        assert!(g.frame().is_some());
        let h = g.subgroup(vec![c.pow(2)]).unwrap();
        assert!(h.shares_frame(&g));
        assert_eq!(h.order(), 3);
        assert!(h.contains(&c.pow(4)).unwrap());
        assert!(!h.contains(&c).unwrap());
        assert_eq!(h.schreier_sims_order(), 3);
    }

    #[test]
    fn text_round_trip() {
        let g = dihedral8();
        let back = PermutationGroup::from_text(&g.to_text()).unwrap();
        assert_eq!(back.generators(), g.generators());
        assert!(PermutationGroup::from_text("p: 0 1").is_err());
    }
}
