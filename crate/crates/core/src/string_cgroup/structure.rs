use crate::permgroup::{
    agemo, derived_subgroup, frattini_2group, intersection, is_normal, lower_central_term, Permutation,
    PermutationGroup,
};

use super::{StringCError, StringCGroup};

/// Hypotheses under which the subgroup orders below are known: 2-power
/// order, rank at least 2, and no Schläfli entry equal to 2. Each entry is
/// `(name, expected, observed, holds)`.
pub(crate) fn hypotheses(s: &StringCGroup) -> Vec<(&'static str, String, String, bool)> {
    let order = s.order();
    let ty = s.schlafli_type();
    vec![
        ("order is a power of 2", "2^n".into(), order.to_string(), order.is_power_of_two()),
        ("rank at least 2", ">= 2".into(), s.rank().to_string(), s.rank() >= 2),
        (
            "Schläfli entries are 2^s with s >= 2",
            "all >= 4".into(),
            ty.to_string(),
            ty.entries().iter().all(|&p| p.is_power_of_two() && p >= 4),
        ),
    ]
}

fn require_hypotheses(s: &StringCGroup) -> Result<u32, StringCError> {
    if let Some((name, _, observed, _)) = hypotheses(s).into_iter().find(|h| !h.3) {
        return Err(StringCError::Hypothesis(format!("{name} (observed {observed})")));
    }
    Ok(s.order().trailing_zeros())
}

fn contract(what: impl Into<String>, expected: impl ToString, observed: impl ToString) -> StringCError {
    StringCError::Contract { what: what.into(), expected: expected.to_string(), observed: observed.to_string() }
}

fn rotations(s: &StringCGroup) -> Vec<Permutation> {
    s.rho().windows(2).map(|w| w[0].compose(&w[1])).collect()
}

fn rotation_group(s: &StringCGroup) -> PermutationGroup {
    s.group().subgroup_unchecked(rotations(s))
}

/// `A_i`: the rotation generators with `ρ_{i−1}ρ_i` replaced by its square.
fn a_group(s: &StringCGroup, i: usize) -> PermutationGroup {
    let mut gens = rotations(s);
    gens[i - 1] = gens[i - 1].compose(&gens[i - 1]);
    s.group().subgroup_unchecked(gens)
}

fn pow2(e: i64) -> String {
    if e >= 0 {
        (1u128 << e).to_string()
    } else {
        format!("2^{e}")
    }
}

/// `A = ⟨ρ_0ρ_1, …, ρ_{d−2}ρ_{d−1}⟩`. For non-degenerate groups of 2-power
/// order its index must be 2.
pub fn rotation_subgroup(s: &StringCGroup) -> Result<PermutationGroup, StringCError> {
    let a = rotation_group(s);
    if s.order().is_power_of_two() && s.is_nondegenerate() && s.rank() >= 2 {
        let index = s.order() / a.order();
        if index != 2 {
            return Err(contract("|G : A|", 2, index));
        }
    }
    Ok(a)
}

/// `A_i` for `1 ≤ i ≤ d−1`, checked normal in `G` with order `2^{n−2}`.
pub fn a_subgroup(s: &StringCGroup, i: usize) -> Result<PermutationGroup, StringCError> {
    let n = require_hypotheses(s)? as i64;
    let d = s.rank();
    if i == 0 || i >= d {
        return Err(StringCError::IndexOutOfRange { index: i, max: d - 1 });
    }
    let a = a_group(s, i);
    if a.order().to_string() != pow2(n - 2) {
        return Err(contract(format!("|A_{i}|"), pow2(n - 2), a.order()));
    }
    if !is_normal(s.group(), &a)? {
        return Err(contract(format!("A_{i} normal in G"), true, false));
    }
    Ok(a)
}

/// `B_1, …, B_{d−2}` with `B_i = A_1 ∩ … ∩ A_{i+1}`.
pub fn b_chain(s: &StringCGroup, cap: usize) -> Result<Vec<PermutationGroup>, StringCError> {
    let dis = Dissection::compute(s, cap)?;
    for (k, b) in dis.b_chain.iter().enumerate() {
        let i = k as i64 + 1;
        if b.order().to_string() != pow2(dis.n as i64 - (i + 2)) {
            return Err(contract(format!("|B_{i}|"), pow2(dis.n as i64 - (i + 2)), b.order()));
        }
    }
    Ok(dis.b_chain)
}

/// `C_1, …, C_{d−2}` with `C_i = Φ(A_1) ∩ … ∩ Φ(A_{i+1})`, each normal in `G`.
pub fn c_chain(s: &StringCGroup, cap: usize) -> Result<Vec<PermutationGroup>, StringCError> {
    let dis = Dissection::compute(s, cap)?;
    let (n, d) = (dis.n as i64, dis.d as i64);
    for (k, c) in dis.c_chain.iter().enumerate() {
        let i = k as i64 + 1;
        let want = pow2(n - d - (i + 1));
        if c.order().to_string() != want {
            return Err(contract(format!("|C_{i}|"), want, c.order()));
        }
        if !is_normal(s.group(), c)? {
            return Err(contract(format!("C_{i} normal in G"), true, false));
        }
    }
    Ok(dis.c_chain)
}

/// `B = ⋂ A_i` and `C = ⋂ Φ(A_i)`, of orders `2^{n−d}` and `2^{n−2d+1}`.
pub fn core_subgroups(s: &StringCGroup, cap: usize) -> Result<(PermutationGroup, PermutationGroup), StringCError> {
    let dis = Dissection::compute(s, cap)?;
    let (n, d) = (dis.n as i64, dis.d as i64);
    if dis.b.order().to_string() != pow2(n - d) {
        return Err(contract("|B|", pow2(n - d), dis.b.order()));
    }
    if dis.c.order().to_string() != pow2(n - 2 * d + 1) {
        return Err(contract("|C|", pow2(n - 2 * d + 1), dis.c.order()));
    }
    Ok((dis.b, dis.c))
}

/// `log2 |G : Φ(G)|`, which must equal the rank.
pub fn minimal_generating_size(s: &StringCGroup) -> Result<u32, StringCError> {
    let phi = frattini_2group(s.group())?;
    let size = (s.order() / phi.order()).trailing_zeros();
    if size as usize != s.rank() {
        return Err(contract("minimal generating size", s.rank(), size));
    }
    Ok(size)
}

/// Every subgroup used by the structure checks, computed once.
#[derive(Debug, Clone)]
pub struct Dissection {
    pub n: u32,
    pub d: usize,
    pub a: PermutationGroup,
    /// `A_1, …, A_{d−1}`
    pub a_i: Vec<PermutationGroup>,
    pub phi_a_i: Vec<PermutationGroup>,
    pub b_chain: Vec<PermutationGroup>,
    pub c_chain: Vec<PermutationGroup>,
    pub b: PermutationGroup,
    pub c: PermutationGroup,
    pub frattini: PermutationGroup,
    pub derived: PermutationGroup,
    pub agemo1: PermutationGroup,
    pub g3: PermutationGroup,
}

fn chain_of_intersections(
    terms: &[PermutationGroup],
    cap: usize,
) -> Result<(Vec<PermutationGroup>, PermutationGroup), StringCError> {
    let mut chain = Vec::new();
    let mut acc = terms[0].clone();
    for t in &terms[1..] {
        acc = intersection(&acc, t, cap)?;
        chain.push(acc.clone());
    }
    Ok((chain, acc))
}

impl Dissection {
    /// Fails only on unmet hypotheses or resource limits; orders are not
    /// checked here.
    pub fn compute(s: &StringCGroup, cap: usize) -> Result<Self, StringCError> {
        let n = require_hypotheses(s)?;
        let d = s.rank();
        let g = s.group();
        let a_i: Vec<PermutationGroup> = (1..d).map(|i| a_group(s, i)).collect();
        let phi_a_i = a_i.iter().map(frattini_2group).collect::<Result<Vec<_>, _>>()?;
        let (b_chain, b) = chain_of_intersections(&a_i, cap)?;
        let (c_chain, c) = chain_of_intersections(&phi_a_i, cap)?;
        Ok(Dissection {
            n,
            d,
            a: rotation_group(s),
            a_i,
            phi_a_i,
            b_chain,
            c_chain,
            b,
            c,
            frattini: frattini_2group(g)?,
            derived: derived_subgroup(g),
            agemo1: agemo(g, 1, cap)?,
            g3: lower_central_term(g, 3)?,
        })
    }

    /// Every computed subgroup with a label.
    pub fn subgroups(&self) -> Vec<(String, &PermutationGroup)> {
        let mut out = vec![("A".to_string(), &self.a)];
        for (k, h) in self.a_i.iter().enumerate() {
            out.push((format!("A_{}", k + 1), h));
        }
        for (k, h) in self.phi_a_i.iter().enumerate() {
            out.push((format!("Φ(A_{})", k + 1), h));
        }
        for (k, h) in self.b_chain.iter().enumerate() {
            out.push((format!("B_{}", k + 1), h));
        }
        for (k, h) in self.c_chain.iter().enumerate() {
            out.push((format!("C_{}", k + 1), h));
        }
        out.push(("B".into(), &self.b));
        out.push(("C".into(), &self.c));
        out.push(("Φ(G)".into(), &self.frattini));
        out.push(("G′".into(), &self.derived));
        out.push(("℧_1(G)".into(), &self.agemo1));
        out.push(("G_3".into(), &self.g3));
        out
    }
}
