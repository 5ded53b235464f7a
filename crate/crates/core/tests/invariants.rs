use eqlef::fixtures::{circle_power_scene, fixture, FIXTURES, MAX_CIRCLE_POWER};
use eqlef::lefschetz::{
    classes_equal_mod_relations, pointevals_relations, smooth_submanifold_lefschetz, smooth_transverse_lefschetz,
    SubgroupPolicy,
};
use eqlef::report::{combinatorial_class, run, smooth_class, Command, Status};
use eqlef::scene::parse_scene;
use eqlef::simplicial::homology_trace_oracle;
use num_bigint::BigInt;

#[test]
fn relation_generators_have_index_zero() {
    for (name, text) in FIXTURES {
        let s = parse_scene(text).unwrap();
        let Some(t) = s.tower() else { continue };
        let gx = t.base();
        for policy in [SubgroupPolicy::All, SubgroupPolicy::CyclicAndStabilizers] {
            let rel = pointevals_relations(gx, policy).unwrap();
            for g in rel.generators() {
                assert_eq!(g.index(gx), BigInt::from(0), "{name}");
            }
        }
    }
}

#[test]
fn circle_powers_agree() {
    for n in (0..=MAX_CIRCLE_POWER).filter(|&n| n != 1) {
        let s = parse_scene(&circle_power_scene(n).unwrap()).unwrap();
        let t = s.tower().unwrap();
        let comb = combinatorial_class(&s).unwrap();
        let smooth = smooth_class(&s).unwrap();
        let expected = 1 - n as i64;
        assert_eq!(homology_trace_oracle(t, s.map().unwrap()).unwrap(), expected, "n={n}");
        assert_eq!(comb.index(t.base()), BigInt::from(expected), "n={n}");
        assert_eq!(smooth.index(t.base()), BigInt::from(expected), "n={n}");
        for policy in [SubgroupPolicy::All, SubgroupPolicy::CyclicAndStabilizers] {
            let rel = pointevals_relations(t.base(), policy).unwrap();
            assert!(classes_equal_mod_relations(&comb, &smooth, &rel).unwrap().is_equal(), "n={n} {policy}");
        }
    }
}

#[test]
fn point_submanifold_matches_transverse_point() {
    let base = fixture("circle_z2").unwrap().split("[smooth]").next().unwrap().to_string();
    let point = parse_scene(&format!("{base}[smooth]\npoint 1\nrho c = [-1]\ndphi = [2]\n")).unwrap();
    let sub = parse_scene(&format!("{base}[smooth]\nsubmanifold\nsimplex 1\ncomponent 1\nrho c = [-1]\ndnu = [2]\n")).unwrap();
    let t = point.tower().unwrap();
    let a = smooth_transverse_lefschetz(t, point.fixed_points()).unwrap();
    let b = smooth_submanifold_lefschetz(sub.tower().unwrap().base(), sub.submanifold().unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn attracting_fixed_point_has_trivial_sign() {
    let base = fixture("circle_z2").unwrap().split("[smooth]").next().unwrap().to_string();
    let s = parse_scene(&format!("{base}[smooth]\npoint 1\nrho c = [-1]\ndphi = [0]\n")).unwrap();
    let c = smooth_class(&s).unwrap();
    let gx = s.tower().unwrap().base();
    assert_eq!(c.lines(gx), vec!["site={1} stab=2 cf=[1,1]"]);
}

#[test]
fn smooth_errors() {
    let base = fixture("circle_z2").unwrap().split("[smooth]").next().unwrap().to_string();
    // I - dphi singular
    let s = parse_scene(&format!("{base}[smooth]\npoint 1\nrho c = [-1]\ndphi = [1]\n")).unwrap();
    assert!(smooth_class(&s).is_err());
    // wrong tangent dimension for the action
    assert!(parse_scene(&format!("{base}[smooth]\npoint 1\nrho c = [-1]\ndphi = [1 0; 0 2]\n")).is_err());
    // non-invariant submanifold
    let s = parse_scene(&format!("{base}[smooth]\nsubmanifold\nsimplex 1 i\ncomponent 1\ndnu = [2]\n"));
    assert!(s.is_err() || smooth_class(&s.unwrap()).is_err());
}

#[test]
fn dihedral_octagon_euler() {
    let s = parse_scene(fixture("octagon_d4").unwrap()).unwrap();
    let r = run(&s, Command::Euler, None).unwrap();
    assert_eq!(r.status, Status::Success);
    assert!(r.lines.contains(&"  atom site={p0} stab=2 cf=[1,1]".to_string()), "{:?}", r.lines);
    assert!(r.lines.contains(&"  index 0".to_string()));
}
