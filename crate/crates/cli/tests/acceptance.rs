//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use polyforge::corpus::default_corpus;
use polyforge::{check_corpus, group_from_text, Limits};
use polyforge_core::cd_construction::{cd_group, cd_presentation, tightness_check, CdGroup};
use polyforge_core::fpgroup::{coset_enumerate, permutation_action, Presentation, Word, DEFAULT_MAX_COSETS};
use polyforge_core::permgroup::{
    agemo, derived_subgroup, frattini_2group, frattini_by_maximal_subgroups, lower_central_term, PermutationGroup,
    DEFAULT_ELEMENT_CAP,
};
use polyforge_core::polytope::{build_polytope, check_diamond, check_strong_flag_connected, face_counts};
use polyforge_core::string_cgroup::{covers, Dissection, StringCGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn cd(d: usize) -> CdGroup {
    cd_group(d, DEFAULT_MAX_COSETS).expect("G(C_d) builds")
}

fn corpus_groups() -> Vec<(String, StringCGroup)> {
    default_corpus()
        .into_iter()
        .map(|e| {
            let s = group_from_text(&e.text, &e.file, Limits::default()).expect("corpus group loads");
            (e.id, s)
        })
        .collect()
}

fn order_family() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for d in 2..=6 {
        let expected = 1u128 << (2 * d - 1);
        let cosets = coset_enumerate(&cd_presentation(d).unwrap(), &[], DEFAULT_MAX_COSETS).unwrap().coset_count();
        let chain = cd(d).group.group().schreier_sims_order();
        if cosets as u128 != expected || chain != expected {
            bad.push(format!("d={d}: cosets {cosets}, chain {chain}, expected {expected}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 30.0 {
        bad.push(format!("took {secs:.1}s"));
    }
    if bad.is_empty() {
        Ok(format!("orders 8, 32, 128, 512, 2048 by both methods in {secs:.2}s"))
    } else {
        Err(bad.join("; "))
    }
}

fn face_count_family() -> Verdict {
    let mut bad = Vec::new();
    for d in 3..=5 {
        let p = build_polytope(&cd(d).group, DEFAULT_ELEMENT_CAP).unwrap();
        let mut expected = vec![8; d];
        expected[0] = 4;
        expected[d - 1] = 4;
        let counts = face_counts(&p);
        if counts != expected || !check_diamond(&p) || !check_strong_flag_connected(&p) {
            bad.push(format!("d={d}: counts {counts:?}"));
        }
    }
    if bad.is_empty() {
        Ok("C_3, C_4, C_5: 4 vertices, 4 facets, 8 middle faces; diamond and flag-connected".into())
    } else {
        Err(bad.join("; "))
    }
}

fn nilpotency_class() -> Verdict {
    let bad: Vec<String> = (2..=5)
        .filter(|&d| {
            let g = cd(d).group.group().clone();
            !(lower_central_term(&g, 3).unwrap().is_trivial() && !lower_central_term(&g, 2).unwrap().is_trivial())
        })
        .map(|d| format!("d={d}"))
        .collect();
    if bad.is_empty() {
        Ok("class 2 for d = 2..5".into())
    } else {
        Err(bad.join("; "))
    }
}

fn structure_suite() -> Verdict {
    let start = Instant::now();
    let entries = default_corpus();
    let reports = check_corpus(&entries, Limits::default());
    let secs = start.elapsed().as_secs_f64();
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| !r.overall)
        .map(|r| {
            let names: Vec<&str> = r.failures().map(|a| a.name.as_str()).collect();
            format!("{} ({})", r.group_id, names.join(", "))
        })
        .collect();
    if failing.is_empty() && secs < 120.0 {
        Ok(format!("{} groups pass in {secs:.2}s", reports.len()))
    } else {
        Err(format!("{} of {} groups fail: {}", failing.len(), reports.len(), failing.join("; ")))
    }
}

fn projection() -> Verdict {
    let groups = corpus_groups();
    let targets: Vec<CdGroup> = (2..=5).map(cd).collect();
    let mut bad = Vec::new();
    let mut obstructed = 0;
    for (id, p) in &groups {
        let q = &targets[p.rank() - 2].group;
        if p.is_nondegenerate() && !covers(p, q) {
            bad.push(format!("{id} does not cover cd{}", p.rank()));
        }
        if q.order() < p.order() {
            if covers(q, p) {
                bad.push(format!("cd{} covers {id}", p.rank()));
            } else {
                obstructed += 1;
            }
        }
    }
    if obstructed < 3 {
        bad.push(format!("only {obstructed} obstructed pairs"));
    }
    if bad.is_empty() {
        Ok(format!("{} groups cover G(C_d); {obstructed} reverse pairs refused", groups.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn burnside() -> Verdict {
    let mut bad = Vec::new();
    let mut oracle = 0;
    for (id, s) in corpus_groups() {
        let g = s.group();
        let phi = frattini_2group(g).unwrap();
        if !phi.same_elements(&agemo(g, 1, DEFAULT_ELEMENT_CAP).unwrap()) {
            bad.push(format!("{id}: Φ ≠ ℧_1"));
        }
        if g.order() <= 1 << 10 {
            oracle += 1;
            if !phi.same_elements(&frattini_by_maximal_subgroups(g, DEFAULT_ELEMENT_CAP).unwrap()) {
                bad.push(format!("{id}: Φ differs from the maximal-subgroup oracle"));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("Φ = ℧_1 everywhere; oracle agrees on {oracle} groups of order <= 1024"))
    } else {
        Err(bad.join("; "))
    }
}

fn tightness() -> Verdict {
    let mut bad: Vec<String> =
        (2..=5).filter(|&d| !tightness_check(&cd(d).group).unwrap()).map(|d| format!("cd{d} not tight")).collect();
    let t128 = corpus_groups().into_iter().find(|(id, _)| id == "t128").expect("t128 in corpus").1;
    if tightness_check(&t128).unwrap() {
        bad.push("{4,4}_(4,0) reported tight".into());
    }
    if bad.is_empty() {
        Ok("C_2..C_5 tight; {4,4}_(4,0) not tight".into())
    } else {
        Err(bad.join("; "))
    }
}

fn random_presentation(rng: &mut ChaCha8Rng) -> Option<Presentation> {
    let k = rng.gen_range(2..=3);
    let mut relators: Vec<Word> = (0..k).map(|g| Word::gens(&[g]).pow(rng.gen_range(2..=4))).collect();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(2..=4);
        let gens: Vec<usize> = (0..len).map(|_| rng.gen_range(0..k)).collect();
        relators.push(Word::gens(&gens).pow(rng.gen_range(2..=4)));
    }
    Presentation::with_default_names(k, relators).ok()
}

fn lagrange(g: &PermutationGroup, h: &PermutationGroup) -> bool {
    g.order().is_multiple_of(h.order()) && h.is_subgroup_of(g)
}

fn engine_properties() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad = Vec::new();
    let mut closed = 0;
    let mut subgroups = 0;
    let mut attempts = 0;
    while closed < 10 && attempts < 1000 {
        attempts += 1;
        let Some(p) = random_presentation(&mut rng) else { continue };
        let Ok(table) = coset_enumerate(&p, &[], 4096) else { continue };
        if table.coset_count() < 4 {
            continue;
        }
        closed += 1;
        let g = permutation_action(&table);
        if g.schreier_sims_order() != table.coset_count() as u128 {
            bad.push(format!("{}: cosets {} vs chain {}", p.to_text().replace('\n', "; "), table.coset_count(), g.schreier_sims_order()));
        }
        for h in [derived_subgroup(&g), lower_central_term(&g, 3).unwrap()] {
            subgroups += 1;
            if !lagrange(&g, &h) {
                bad.push("Lagrange fails on a random group".into());
            }
        }
    }
    if closed < 10 {
        bad.push(format!("only {closed} closing presentations in {attempts} attempts"));
    }
    for (id, s) in corpus_groups() {
        let g = s.group();
        if let Ok(dis) = Dissection::compute(&s, DEFAULT_ELEMENT_CAP) {
            for (name, h) in dis.subgroups() {
                subgroups += 1;
                if !lagrange(g, h) {
                    bad.push(format!("{id}: Lagrange fails for {name}"));
                }
            }
        }
        for mask in 0..1usize << s.rank() {
            subgroups += 1;
            if !lagrange(g, s.parabolic(mask)) {
                bad.push(format!("{id}: Lagrange fails for parabolic {mask:b}"));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{closed} random presentations agree; Lagrange holds for {subgroups} subgroups"))
    } else {
        Err(bad.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("order family", order_family),
        ("face counts", face_count_family),
        ("nilpotency class", nilpotency_class),
        ("structure suite", structure_suite),
        ("projection", projection),
        ("Burnside cross-check", burnside),
        ("tightness", tightness),
        ("engine properties", engine_properties),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: pass ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", k + 1);
            }
        }
    }
    println!("{} of 8 criteria pass", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
