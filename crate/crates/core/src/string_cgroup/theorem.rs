use crate::cd_construction::cd_presentation;
use crate::fpgroup::evaluate;
use crate::permgroup::{is_normal, quotient, Permutation};

use super::structure::{hypotheses, Dissection};
use super::{validate, StringCGroup, VerificationReport};

fn pow2(e: i64) -> String {
    if e >= 0 {
        (1u128 << e).to_string()
    } else {
        format!("2^{e}")
    }
}

/// Checks the structure of a non-degenerate string C-group of order `2^n`
/// and rank `d`: the Frattini and commutator subgroups, the subgroups
/// `A`, `A_i`, `B_i`, `C_i`, `B`, `C`, and the quotient `G/C`.
///
/// Unmet hypotheses produce a report whose failures are all of class
/// `Hypothesis`; nothing else is computed in that case.
pub fn theorem_check(s: &StringCGroup, group_id: &str, cap: usize) -> VerificationReport {
    let d = s.rank();
    let mut report = VerificationReport::new(group_id, s.order(), d);
    let hyps = hypotheses(s);
    let refused = hyps.iter().any(|h| !h.3);
    for (name, expected, observed, holds) in hyps {
        report.hypothesis(name, expected, observed, holds);
    }
    if refused {
        report.note("hypotheses not met; structure checks skipped");
        return report;
    }
    let dis = match Dissection::compute(s, cap) {
        Ok(dis) => dis,
        Err(e) => {
            report.record("subgroup computation", "completes", e, false);
            return report;
        }
    };
    let g = s.group();
    let (n, di) = (dis.n as i64, d as i64);
    let order = |h: &crate::permgroup::PermutationGroup| h.order().to_string();

    report.expect_eq("|G : Φ(G)|", pow2(di), (g.order() / dis.frattini.order()).to_string());
    report.expect_eq("|Φ(G)|", pow2(n - di), order(&dis.frattini));
    report.expect_true("Φ(G) = G′", dis.frattini.same_elements(&dis.derived));
    report.expect_true("Φ(G) = ℧_1(G)", dis.frattini.same_elements(&dis.agemo1));
    report.expect_eq("|A|", pow2(n - 1), order(&dis.a));

    for (k, a) in dis.a_i.iter().enumerate() {
        let i = k + 1;
        report.expect_eq(format!("|A_{i}|"), pow2(n - 2), order(a));
        report.expect_true(format!("A_{i} ⊴ G"), is_normal(g, a).unwrap_or(false));
    }
    for (k, phi) in dis.phi_a_i.iter().enumerate() {
        let i = k + 1;
        report.expect_eq(format!("|Φ(A_{i})|"), pow2(n - di - 1), order(phi));
        let others: Vec<Permutation> =
            dis.a_i[k].generators().iter().enumerate().filter(|&(m, _)| m != k).map(|(_, x)| x.clone()).collect();
        if g.subgroup_unchecked(others).order() == dis.a_i[k].order() {
            report.note(format!("(ρ_{}ρ_{i})^2 is redundant in the listed generators of A_{i}", i - 1));
        }
        report.expect_true(format!("Φ(A_{i}) ⊴ G"), is_normal(g, phi).unwrap_or(false));
    }
    for (k, b) in dis.b_chain.iter().enumerate() {
        let i = k as i64 + 1;
        report.expect_eq(format!("|B_{i}|"), pow2(n - (i + 2)), order(b));
    }
    for (k, c) in dis.c_chain.iter().enumerate() {
        let i = k as i64 + 1;
        report.expect_eq(format!("|C_{i}|"), pow2(n - di - (i + 1)), order(c));
        report.expect_true(format!("C_{i} ⊴ G"), is_normal(g, c).unwrap_or(false));
    }
    report.expect_eq("|B|", pow2(n - di), order(&dis.b));
    report.expect_true("G′ = B", dis.derived.same_elements(&dis.b));
    report.expect_eq("|C|", pow2(n - 2 * di + 1), order(&dis.c));

    let rho = s.rho();
    let c = &dis.c;
    let mut fourth_powers = (0, 0);
    let mut commutators = (0, 0);
    for i in 0..d - 1 {
        let r = rho[i].compose(&rho[i + 1]);
        fourth_powers.1 += 1;
        fourth_powers.0 += c.contains_from(&r.pow(4), g) as usize;
        let sq = r.pow(2);
        for rj in rho {
            commutators.1 += 1;
            commutators.0 += c.contains_from(&sq.commutator(rj), g) as usize;
        }
    }
    report.expect_eq("(ρ_iρ_{i+1})^4 ∈ C", format!("{0} of {0}", fourth_powers.1), format!("{} of {}", fourth_powers.0, fourth_powers.1));
    report.expect_eq("[(ρ_iρ_{i+1})^2, ρ_j] ∈ C", format!("{0} of {0}", commutators.1), format!("{} of {}", commutators.0, commutators.1));

    match quotient(g, c, cap) {
        Ok((q, hom)) => {
            report.expect_eq("|G/C|", pow2(2 * di - 1), q.order().to_string());
            let images: Vec<Permutation> = hom.images().to_vec();
            let presentation = cd_presentation(d).expect("rank at least 2");
            let failing = presentation
                .relators()
                .iter()
                .filter(|w| !evaluate(w, &images, q.degree()).is_identity())
                .count();
            report.expect_eq(
                "G/C satisfies the relators of G(C_d)",
                format!("0 of {} fail", presentation.relators().len()),
                format!("{failing} of {} fail", presentation.relators().len()),
            );
            match validate(&q, &images) {
                Ok(qs) => {
                    report.record("G/C is a string C-group", "valid", format!("valid, type {}", qs.schlafli_type()), true)
                }
                Err(e) => report.record("G/C is a string C-group", "valid", e, false),
            }
        }
        Err(e) => report.record("|G/C|", pow2(2 * di - 1), e, false),
    }
    report.expect_true("C = G_3", dis.c.same_elements(&dis.g3));
    if !dis.c.same_elements(&dis.g3) {
        let g3_note = match quotient(g, &dis.g3, cap) {
            Ok((q, hom)) => {
                let presentation = cd_presentation(d).expect("rank at least 2");
                let holds =
                    presentation.relators().iter().all(|w| evaluate(w, hom.images(), q.degree()).is_identity());
                format!(
                    "|C| = {}, |G_3| = {}, |G/G_3| = {}, G/G_3 satisfies the relators of G(C_d): {holds}",
                    dis.c.order(),
                    dis.g3.order(),
                    q.order()
                )
            }
            Err(e) => format!("|G_3| = {}; quotient by G_3 failed: {e}", dis.g3.order()),
        };
        report.note(g3_note);
    }

    let rank = (g.order() / dis.frattini.order()).trailing_zeros() as usize;
    report.expect_eq("minimal generating size", d, rank);

    let subgroups = dis.subgroups();
    let lagrange = subgroups.iter().filter(|(_, h)| g.order().is_multiple_of(h.order())).count();
    report.expect_eq(
        "Lagrange divisibility",
        format!("{0} of {0}", subgroups.len()),
        format!("{lagrange} of {}", subgroups.len()),
    );
    report
}
