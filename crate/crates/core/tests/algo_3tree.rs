use std::collections::{BTreeMap, BTreeSet};

use biarc_core::algo_3tree::*;
use biarc_core::diagram::*;
use biarc_core::graph::*;
use proptest::prelude::*;

fn seq(steps: &[(usize, [usize; 3])]) -> ConstructionSequence {
    ConstructionSequence { base: [0, 1, 2], steps: steps.to_vec() }
}

fn sorted(f: [usize; 3]) -> [usize; 3] {
    let mut k = f;
    k.sort_unstable();
    k
}

/// Grand-degree of every stacked vertex's face, computed straight from the
/// sequence: the number of its three child faces that are stacked into later.
fn gd_by_hand(s: &ConstructionSequence) -> BTreeMap<usize, u8> {
    let targets: BTreeSet<[usize; 3]> = s.steps.iter().map(|&(_, f)| sorted(f)).collect();
    s.steps
        .iter()
        .map(|&(x, [p, q, r])| {
            let gd = [[p, q, x], [q, r, x], [r, p, x]].iter().filter(|c| targets.contains(&sorted(**c))).count();
            (x, gd as u8)
        })
        .collect()
}

fn k4_seq() -> ConstructionSequence {
    seq(&[(3, [0, 1, 2])])
}

/// Root stacked with 3, then 4 and 5 in two of its children and 6 below 4.
fn gd2_root_seq() -> ConstructionSequence {
    seq(&[(3, [0, 1, 2]), (4, [0, 1, 3]), (5, [1, 2, 3]), (6, [0, 1, 4])])
}

fn check_drawing(s: &ConstructionSequence, dr: &ThreeTreeDrawing) {
    let d = &dr.diagram;
    assert!(validate(d, &Context::structural()).pass());
    assert!(d.has_exactly_edges(&s.replay().unwrap().edges()));
    assert!(d.edges().all(|(_, sh)| sh != Shape::BiarcUpDown));
    let n = s.n();
    assert!(d.biarc_count() <= three_tree_bound(n), "n={n} biarcs={}", d.biarc_count());
    assert!(dr.charges.values().all(|&c| c <= credit(3, 4) && c >= credit(0, 1)));
    let total: Credit = dr.charges.values().copied().sum();
    assert!(Credit::from_integer(d.biarc_count() as i64) <= total);
    assert!(dr.charges.len() <= n - 3);
    for st in dr.ledger.steps() {
        assert!(st.balance <= total, "{st:?}");
    }
}

#[test]
fn bound_values() {
    assert_eq!(three_tree_bound(3), 0);
    assert_eq!(three_tree_bound(4), 0);
    assert_eq!(three_tree_bound(7), 3);
    assert_eq!(three_tree_bound(11), 6);
    assert_eq!(three_tree_bound(203), 150);
}

#[test]
fn k4_root_is_a_leaf_parent() {
    let t = build_face_tree(&k4_seq()).unwrap();
    assert_eq!(t.grand_degree[t.root()], 0);
    assert_eq!(t.face_vertex[t.root()], Some(3));
    let cs = t.children[t.root()].unwrap();
    assert!(cs.iter().all(|&c| t.face_vertex[c].is_none() && t.children[c].is_none()));
    assert_eq!(t.vertex_gd(3), Some(0));
    assert_eq!(t.vertex_gd(0), None);
    assert_eq!(t.gd0_vertices(), vec![3]);
}

#[test]
fn three_stacked_children_give_gd3() {
    let s = seq(&[(3, [0, 1, 2]), (4, [0, 1, 3]), (5, [1, 2, 3]), (6, [2, 0, 3])]);
    let t = build_face_tree(&s).unwrap();
    assert_eq!(t.grand_degree[t.root()], 3);
    assert_eq!((t.count_gd(3), t.count_gd(0)), (1, 3));
    assert_eq!(t.node([3, 1, 0]), t.face_of[4]);
    let pre: Vec<usize> = t.pre_order().iter().map(|&f| t.face_vertex[f].unwrap()).collect();
    assert_eq!(pre, vec![3, 4, 5, 6]);
}

#[test]
fn tree_grand_degrees_match_the_sequence() {
    for seed in 0..50 {
        let s = random_3tree(10 + seed as usize * 3, seed);
        let t = build_face_tree(&s).unwrap();
        for (x, gd) in gd_by_hand(&s) {
            assert_eq!(t.vertex_gd(x), Some(gd));
        }
        // each face with a vertex has three children; leaves have none
        for f in 0..t.nodes.len() {
            assert_eq!(t.face_vertex[f].is_some(), t.children[f].is_some());
        }
        assert_eq!(t.nodes.len(), 1 + 3 * (s.n() - 3));
    }
}

#[test]
fn enough_gd0_vertices_for_the_slots() {
    for seed in 0..200 {
        let s = random_3tree(50, seed);
        let gd = gd_by_hand(&s);
        let count = |g: u8| gd.values().filter(|&&x| x == g).count();
        assert!(count(0) >= 2 * count(3) + count(2), "seed {seed}");
        // the internal tree's leaves are exactly the gd-0 faces
        assert_eq!(count(0), 1 + count(2) + 2 * count(3));
    }
}

#[test]
fn preferred_map_single_gd2() {
    let t = build_face_tree(&gd2_root_seq()).unwrap();
    assert_eq!(t.vertex_gd(3), Some(2));
    let p = preferred_ancestor_map(&t).unwrap();
    assert_eq!(p, BTreeMap::from([(5, 3), (6, 3)]));
}

#[test]
fn preferred_map_gd3_gets_multiplicity_two() {
    let s = seq(&[(3, [0, 1, 2]), (4, [0, 1, 3]), (5, [1, 2, 3]), (6, [2, 0, 3])]);
    let p = preferred_ancestor_map(&build_face_tree(&s).unwrap()).unwrap();
    assert_eq!(p, BTreeMap::from([(4, 3), (5, 3), (6, 3)]));
}

#[test]
fn preferred_map_empty_without_branching() {
    let path = seq(&[(3, [0, 1, 2]), (4, [0, 1, 3]), (5, [0, 1, 4])]);
    assert!(preferred_ancestor_map(&build_face_tree(&path).unwrap()).unwrap().is_empty());
}

#[test]
fn preferred_map_is_surjective_with_multiplicity() {
    for seed in 0..100 {
        let s = random_3tree(20 + seed as usize, seed);
        let t = build_face_tree(&s).unwrap();
        let p = preferred_ancestor_map(&t).unwrap();
        let gd = gd_by_hand(&s);
        let mut hits: BTreeMap<usize, usize> = BTreeMap::new();
        for (&z, &a) in &p {
            assert_eq!(gd[&z], 0);
            assert!(gd[&a] >= 2);
            *hits.entry(a).or_default() += 1;
        }
        for (&x, &g) in &gd {
            match g {
                2 => assert!(hits.get(&x).copied().unwrap_or(0) >= 1),
                3 => assert!(hits.get(&x).copied().unwrap_or(0) >= 2),
                _ => assert!(!hits.contains_key(&x)),
            }
        }
        if gd.values().any(|&g| g >= 2) {
            assert_eq!(p.len(), gd.values().filter(|&&g| g == 0).count());
        }
    }
}

#[test]
fn gd2_drawings_are_proper() {
    for s in [k4_seq(), seq(&[(3, [0, 1, 2]), (4, [0, 1, 3]), (5, [0, 1, 4]), (6, [0, 5, 4]), (7, [0, 5, 6])]), gd2_root_seq()] {
        let d = draw_3tree_gd2(&s).unwrap();
        assert_eq!(d.biarc_count(), 0);
        assert!(d.edges().all(|(_, sh)| sh.is_proper()));
        assert!(d.has_exactly_edges(&s.replay().unwrap().edges()));
    }
}

#[test]
fn gd2_drawing_refuses_gd3() {
    let s = seq(&[(3, [0, 1, 2]), (4, [0, 1, 3]), (5, [1, 2, 3]), (6, [2, 0, 3])]);
    assert!(matches!(draw_3tree_gd2(&s), Err(ThreeTreeError::GdTooHigh(_))));
}

#[test]
fn gd2_generator_output_has_no_biarcs() {
    for seed in 0..100 {
        let s = random_3tree_gd2(4 + seed as usize * 2, seed);
        let t = build_face_tree(&s).unwrap();
        assert_eq!(t.count_gd(3), 0);
        assert_eq!(draw_3tree_gd2(&s).unwrap().biarc_count(), 0);
        assert_eq!(draw_3tree(&s).unwrap().diagram.biarc_count(), 0);
    }
}

#[test]
fn drop_shape() {
    let d = draw_3tree_gd2(&k4_seq()).unwrap();
    // base: 0-1 mountain, 1-2 pocket, 0-2 mountain
    let mut base = ArcDiagram::new();
    for v in 0..3 {
        base.insert_vertex_at(v, v).unwrap();
    }
    base.mountain(0, 1).unwrap();
    base.pocket(1, 2).unwrap();
    base.mountain(0, 2).unwrap();
    assert!(is_drop(&base, [2, 0, 1]));
    let mut flat = base.clone();
    flat.to_proper(Edge::new(1, 2), Shape::Mountain).unwrap();
    assert!(!is_drop(&flat, [0, 1, 2]));
    assert!(validate(&d, &Context::structural()).pass());
}

#[test]
fn k4_draws_without_biarcs() {
    let s = k4_seq();
    let dr = draw_3tree(&s).unwrap();
    check_drawing(&s, &dr);
    assert_eq!(dr.diagram.biarc_count(), 0);
    let dr = draw_3tree_ottifant(&s).unwrap();
    check_drawing(&s, &dr);
    assert_eq!(dr.diagram.biarc_count(), 0);
    assert_eq!(dr.cases, BTreeMap::from([("gd0", 1)]));
}

#[test]
fn gd2_root_within_three() {
    let s = gd2_root_seq();
    let dr = draw_3tree_ottifant(&s).unwrap();
    check_drawing(&s, &dr);
    assert!(dr.diagram.biarc_count() <= 3);
    assert_eq!(dr.preferred, BTreeMap::from([(5, 3), (6, 3)]));
    // without a gd-3 face the proper drawing is used
    assert_eq!(draw_3tree(&s).unwrap().diagram.biarc_count(), 0);
}

#[test]
fn ottifant_descriptor() {
    let mut d = ArcDiagram::new();
    for v in 0..3 {
        d.insert_vertex_at(v, v).unwrap();
    }
    d.mountain(0, 2).unwrap();
    d.pocket(0, 1).unwrap();
    d.mountain(1, 2).unwrap();
    let arcs = gap_arcs(&d);
    let o = Ottifant { u: 0, v: 1, w: 2, turned: false, reserve: credit(0, 1) };
    assert!(is_ottifant(&d, &arcs, &o));
    assert!(o.relaxed_top(&d));
    assert_eq!(o.belly(), Edge::new(1, 2));
    assert_eq!(o.set(), [0, 1, 2]);
    assert!(!is_ottifant(&d, &arcs, &Ottifant { turned: true, ..o }));
    assert!(!is_ottifant(&d, &arcs, &Ottifant { v: 2, w: 1, ..o }));
    assert_eq!(belly_cost(&d, &o), Some(1));
    // the rotated diagram is described by the turned descriptor
    let r = d.rotated_pi();
    assert!(is_ottifant(&r, &gap_arcs(&r), &Ottifant { turned: true, ..o }));
    assert_eq!(belly_cost(&r, &Ottifant { turned: true, ..o }), Some(1));
    // a belly that is already a biarc costs nothing
    let mut b = d.clone();
    b.to_biarc(Edge::new(1, 2), 2).unwrap();
    assert_eq!(belly_cost(&b, &o), Some(0));
}

#[test]
fn every_case_kind_occurs_in_a_sweep() {
    let mut cases: BTreeMap<&str, usize> = BTreeMap::new();
    for seed in 0..300 {
        let s = random_3tree(4 + (seed as usize * 7) % 100, seed);
        let dr = draw_3tree_ottifant(&s).unwrap();
        check_drawing(&s, &dr);
        for (k, c) in dr.cases {
            *cases.entry(k).or_default() += c;
        }
    }
    for k in ["gd0", "gd2", "gd1-uvx", "gd1-uxw-0", "gd1-xvw-0"] {
        assert!(cases.contains_key(k), "{k} missing from {cases:?}");
    }
}

#[test]
fn drawing_is_deterministic() {
    let s = random_3tree(120, 9);
    let a = draw_3tree(&s).unwrap();
    let b = draw_3tree(&s).unwrap();
    assert_eq!(a.diagram, b.diagram);
    assert_eq!(a.charges, b.charges);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_3trees_meet_the_bound(n in 4usize..150, seed in 0u64..1_000_000) {
        let s = random_3tree(n, seed);
        check_drawing(&s, &draw_3tree(&s).unwrap());
        check_drawing(&s, &draw_3tree_ottifant(&s).unwrap());
    }

    #[test]
    fn charging_construction_handles_gd2_sequences(n in 4usize..80, seed in 0u64..1_000_000) {
        let s = random_3tree_gd2(n, seed);
        check_drawing(&s, &draw_3tree_ottifant(&s).unwrap());
    }

    #[test]
    fn gd2_sequences_agree(n in 4usize..80, seed in 0u64..1_000_000) {
        let s = random_3tree_gd2(n, seed);
        prop_assert_eq!(draw_3tree_gd2(&s).unwrap().biarc_count(), 0);
        prop_assert_eq!(draw_3tree(&s).unwrap().diagram.biarc_count(), 0);
    }
}
