use polyforge_core::cd_construction::cd_group;
use polyforge_core::fpgroup::{
    coset_enumerate, coxeter_string, parse_presentation, permutation_action, regular_representation, Word,
    DEFAULT_MAX_COSETS,
};
use polyforge_core::polytope::{
    build_polytope, check_diamond, check_strong_flag_connected, export_flag_graph, face_counts, flag_map, is_flat,
    section_type_rank3, Polytope,
};
use polyforge_core::string_cgroup::{covers, validate, StringCGroup};

const CAP: usize = 1 << 16;

fn from_text(text: &str) -> StringCGroup {
    let g = regular_representation(&parse_presentation(text).unwrap(), DEFAULT_MAX_COSETS).unwrap();
    validate(&g, g.generators()).unwrap()
}

fn coxeter(labels: &[u32]) -> StringCGroup {
    let g = regular_representation(&coxeter_string(labels).unwrap(), DEFAULT_MAX_COSETS).unwrap();
    validate(&g, g.generators()).unwrap()
}

fn toroidal(b: u32) -> StringCGroup {
    from_text(&format!(
        "gens r0 r1 r2\nrel r0^2, r1^2, r2^2, (r0 r1)^4, (r1 r2)^4, (r0 r2)^2\nrel (r0 r1 r2 r1)^{b}"
    ))
}

#[test]
fn cd_face_counts() {
    let c3 = build_polytope(&cd_group(3, DEFAULT_MAX_COSETS).unwrap().group, CAP).unwrap();
    assert_eq!(face_counts(&c3), vec![4, 8, 4]);
    assert_eq!(c3.flag_count(), 32);
    let c4 = build_polytope(&cd_group(4, DEFAULT_MAX_COSETS).unwrap().group, CAP).unwrap();
    assert_eq!(face_counts(&c4), vec![4, 8, 8, 4]);
    assert_eq!(c4.flag_count(), 128);
}

#[test]
fn tight_face_formula() {
    // [p_1, p_1p_2/2, ..., p_{d-1}] for tight polytopes
    let t = toroidal(2);
    let p = build_polytope(&t, CAP).unwrap();
    assert_eq!(t.order(), 32);
    assert_eq!(face_counts(&p), vec![4, 8, 4]);
}

#[test]
fn toroidal_maps() {
    // {4,4}_(b,0) has b² vertices, 2b² edges and b² faces
    for b in [2u32, 4, 8] {
        let p = build_polytope(&toroidal(b), CAP).unwrap();
        let v = (b * b) as usize;
        assert_eq!(face_counts(&p), vec![v, 2 * v, v], "b = {b}");
        assert!(check_diamond(&p));
        assert!(check_strong_flag_connected(&p));
    }
}

#[test]
fn sections() {
    let c3 = build_polytope(&cd_group(3, DEFAULT_MAX_COSETS).unwrap().group, CAP).unwrap();
    assert_eq!(section_type_rank3(&c3).unwrap(), vec![32]);
    let c4 = build_polytope(&cd_group(4, DEFAULT_MAX_COSETS).unwrap().group, CAP).unwrap();
    assert_eq!(section_type_rank3(&c4).unwrap(), vec![32, 32]);
    let t = build_polytope(&toroidal(4), CAP).unwrap();
    assert_eq!(section_type_rank3(&t).unwrap(), vec![128]);
}

#[test]
fn flatness() {
    let c3 = build_polytope(&cd_group(3, DEFAULT_MAX_COSETS).unwrap().group, CAP).unwrap();
    assert!(is_flat(&c3, 0, 2).unwrap());
    let cube = build_polytope(&coxeter(&[4, 3]), CAP).unwrap();
    assert!(!is_flat(&cube, 0, 2).unwrap());
    let square = build_polytope(&coxeter(&[4]), CAP).unwrap();
    assert!(!is_flat(&square, 0, 1).unwrap());
    assert!(is_flat(&square, 1, 0).is_err());
    assert!(is_flat(&c3, 0, 3).is_err());
}

#[test]
fn platonic_counts() {
    let cases: [(&[u32], [usize; 3]); 3] = [(&[3, 3], [4, 6, 4]), (&[4, 3], [8, 12, 6]), (&[5, 3], [20, 30, 12])];
    for (labels, counts) in cases {
        let p = build_polytope(&coxeter(labels), CAP).unwrap();
        assert_eq!(face_counts(&p), counts.to_vec(), "{labels:?}");
        assert!(check_diamond(&p) && check_strong_flag_connected(&p));
    }
}

#[test]
fn dot_export() {
    let c3 = build_polytope(&cd_group(3, DEFAULT_MAX_COSETS).unwrap().group, CAP).unwrap();
    let dot = export_flag_graph(&c3);
    assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("--")).count(), 32);
    for i in 0..3 {
        assert_eq!(dot.matches(&format!("[label={i}]")).count(), 16);
    }
    assert_eq!(dot, export_flag_graph(&c3));
    let tiny = build_polytope(&coxeter(&[2]), CAP).unwrap();
    assert_eq!(tiny.flag_count(), 4);
    assert!(export_flag_graph(&tiny).starts_with("graph flags {\n"));
}

#[test]
fn unframed_build_matches_framed() {
    // the cube group acting on its 6 facets is not regular
    let g = regular_representation(&coxeter_string(&[4, 3]).unwrap(), DEFAULT_MAX_COSETS).unwrap();
    let s = validate(&g, g.generators()).unwrap();
    let text = "gens r0 r1 r2\nrel r0^2, r1^2, r2^2, (r0 r1)^4, (r1 r2)^3, (r0 r2)^2";
    let table =
        coset_enumerate(&parse_presentation(text).unwrap(), &[Word::gens(&[0]), Word::gens(&[1])], DEFAULT_MAX_COSETS)
            .unwrap();
    let action = permutation_action(&table);
    let t = validate(&action, action.generators()).unwrap();
    let (p, q) = (build_polytope(&s, CAP).unwrap(), build_polytope(&t, CAP).unwrap());
    assert_eq!(face_counts(&p), face_counts(&q));
    assert!(check_diamond(&q) && check_strong_flag_connected(&q));
    assert!(flag_map(&p, &q).is_some() && flag_map(&q, &p).is_some());
}

#[test]
fn coverings_respect_adjacency() {
    let cd3 = cd_group(3, DEFAULT_MAX_COSETS).unwrap().group;
    let q = build_polytope(&cd3, CAP).unwrap();
    for b in [2, 4, 8] {
        let t = toroidal(b);
        assert!(covers(&t, &cd3));
        let p = build_polytope(&t, CAP).unwrap();
        let map = flag_map(&p, &q).expect("covering induces a flag map");
        for f in 0..p.flag_count() {
            for i in 0..3 {
                assert_eq!(map[p.adjacent(f, i).unwrap()] as usize, q.adjacent(map[f] as usize, i).unwrap());
            }
        }
    }
    assert!(flag_map(&q, &build_polytope(&toroidal(4), CAP).unwrap()).is_none());
}

#[test]
fn fixtures() {
    let mut flags = Vec::new();
    for e in 0..4u32 {
        flags.push(vec![e, e]);
        flags.push(vec![(e + 1) % 4, e]);
    }
    let square = Polytope::from_flags(2, &flags).unwrap();
    assert!(check_diamond(&square) && check_strong_flag_connected(&square));

    let mut doubled = flags.clone();
    doubled.extend(flags.iter().map(|f| vec![f[0] + 4, f[1] + 4]));
    let doubled = Polytope::from_flags(2, &doubled).unwrap();
    assert!(check_diamond(&doubled));
    assert!(!check_strong_flag_connected(&doubled));

    // a path of three edges: its end vertices lie on one edge only
    let corrupted = vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 1], vec![2, 2], vec![3, 2]];
    assert!(!check_diamond(&Polytope::from_flags(2, &corrupted).unwrap()));
    assert!(Polytope::from_flags(2, &[vec![0]]).is_err());
}
