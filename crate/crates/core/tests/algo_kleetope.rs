use biarc_core::algo_kleetope::*;
use biarc_core::diagram::*;
use biarc_core::graph::*;
use proptest::prelude::*;

fn degree3_count(g: &PlaneTriangulation) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) == 3).count()
}

fn check(g: &PlaneTriangulation, dr: &Degree3Drawing) {
    let d = &dr.diagram;
    let rep = validate(d, &Context::structural());
    assert!(rep.pass(), "{:?}", rep.violations);
    assert!(d.has_exactly_edges(&g.edges()));
    assert!(d.edges().all(|(_, s)| s != Shape::BiarcUpDown));
    // the second phase only adds proper arcs
    assert_eq!(d.biarc_count(), dr.base.biarc_count());
    assert!(faces_missing_spine(&dr.base, &dr.base_faces).is_empty());
    assert!(validate(&dr.base, &Context::structural()).pass());
    let k = g.n() - dr.removed;
    assert_eq!(dr.base.vertex_count(), k);
    assert_eq!(dr.base_faces.len(), 2 * k - 5);
    assert!(d.biarc_count() <= k.saturating_sub(4), "n={} removed={} biarcs={}", g.n(), dr.removed, d.biarc_count());
}

#[test]
fn bound_values() {
    assert_eq!(kleetope_bound(8), Ok(0));
    assert_eq!(kleetope_bound(14), Ok(2));
    assert_eq!(kleetope_bound(20), Ok(4));
    assert_eq!(kleetope_bound(32), Ok(8));
    for n in [0, 5, 7, 9, 13] {
        assert_eq!(kleetope_bound(n), Err(KleetopeError::NotKleetopeSize(n)));
    }
    // equals n - d - 4 with d = (2n - 4) / 3
    for k in 4..40 {
        let n = 3 * k - 4;
        assert_eq!(kleetope_bound(n).unwrap(), n - (2 * n - 4) / 3 - 4);
    }
}

#[test]
fn kleetope_of_k4_has_no_biarcs() {
    let g = kleetope(&k4());
    assert_eq!(g.n(), 8);
    let dr = draw_degree3_aware(&g).unwrap();
    check(&g, &dr);
    assert_eq!(dr.removed, 4);
    assert_eq!(dr.diagram.biarc_count(), 0);
}

#[test]
fn platonic_kleetopes() {
    for (t, n, bound) in [(octahedron(), 14, 2), (icosahedron(), 32, 8)] {
        let g = kleetope(&t);
        assert_eq!(g.n(), n);
        let dr = draw_degree3_aware(&g).unwrap();
        check(&g, &dr);
        assert!(dr.diagram.biarc_count() <= bound);
        assert_eq!(kleetope_bound(n), Ok(bound));
    }
}

#[test]
fn enumerated_kleetopes_meet_the_bound() {
    for k in 4..=8 {
        for t in enumerate_triangulations(k).unwrap() {
            let g = kleetope(&t);
            let dr = draw_degree3_aware(&g).unwrap();
            check(&g, &dr);
            assert!(dr.diagram.biarc_count() <= kleetope_bound(g.n()).unwrap());
        }
    }
}

#[test]
fn plain_triangulations_use_n_minus_d_minus_4() {
    for seed in 0..60 {
        let g = random_triangulation(6 + seed as usize * 2, seed);
        let dr = draw_degree3_aware(&g).unwrap();
        check(&g, &dr);
        assert!(dr.removed <= degree3_count(&g));
    }
}

#[test]
fn first_phase_faces_cross_the_spine() {
    for seed in 0..40 {
        let t = random_triangulation(5 + seed as usize * 3, seed);
        let sc = draw_spine_crossing(&t).unwrap();
        let d = &sc.diagram;
        assert!(validate(d, &Context::structural()).pass());
        assert!(d.has_exactly_edges(&t.edges()));
        let [a, b, c] = t.outer_face();
        let inner: Vec<[Vertex; 3]> = t
            .faces()
            .into_iter()
            .filter(|f| {
                let mut x = *f;
                x.sort_unstable();
                let mut o = [a, b, c];
                o.sort_unstable();
                x != o
            })
            .collect();
        assert!(faces_missing_spine(d, &inner).is_empty());
        assert!(d.biarc_count() <= t.n() - 4);
    }
}

#[test]
fn ledger_spends_at_most_one_per_vertex() {
    for seed in 0..30 {
        let t = random_triangulation(10 + seed as usize * 4, seed);
        let sc = draw_spine_crossing(&t).unwrap();
        for s in sc.ledger.steps() {
            assert!(s.spend <= s.allowance, "{s:?}");
        }
        assert!(Credit::from_integer(sc.diagram.biarc_count() as i64) <= sc.ledger.balance());
    }
}

#[test]
fn adjacent_degree_three_vertices_are_rejected_but_iterated_kleetopes_work() {
    // in K4 every vertex has degree 3 and they are pairwise adjacent
    assert!(matches!(
        draw_degree3_aware(&k4()),
        Err(KleetopeError::Graph(GraphError::AdjacentDegreeThree(_, _)))
    ));
    let g = kleetope(&k4());
    let twice = kleetope(&g);
    let dr = draw_degree3_aware(&twice).unwrap();
    check(&twice, &dr);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_kleetopes_meet_the_bound(k in 4usize..60, seed in 0u64..1_000_000) {
        let g = kleetope(&random_triangulation(k, seed));
        let dr = draw_degree3_aware(&g).unwrap();
        check(&g, &dr);
        prop_assert!(dr.diagram.biarc_count() <= kleetope_bound(g.n()).unwrap());
    }
}
