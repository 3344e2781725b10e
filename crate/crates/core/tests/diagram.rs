use std::collections::BTreeMap;

use biarc_core::diagram::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn chi() -> Credit {
    credit(1, 5)
}

/// Spine `0 2 1`, all three edges pockets.
fn base() -> ArcDiagram {
    let mut d = ArcDiagram::new();
    for (i, v) in [0, 2, 1].into_iter().enumerate() {
        d.insert_vertex_at(i, v).unwrap();
    }
    d.pocket(0, 1).unwrap();
    d.pocket(0, 2).unwrap();
    d.pocket(2, 1).unwrap();
    Context::extensible(&[0, 2, 1], chi()).normalize(&mut d);
    d
}

/// Spine `path` then `1`, consecutive path vertices joined by mountains, `0 1` a pocket.
fn mountain_path(inner: &[usize]) -> (ArcDiagram, Vec<usize>) {
    let mut path = vec![0];
    path.extend_from_slice(inner);
    path.push(1);
    let mut d = ArcDiagram::new();
    for (i, &v) in path.iter().enumerate() {
        d.insert_vertex_at(i, v).unwrap();
    }
    d.pocket(0, 1).unwrap();
    for w in path.windows(2) {
        d.mountain(w[0], w[1]).unwrap();
    }
    Context::extensible(&path, chi()).normalize(&mut d);
    (d, path)
}

#[test]
fn base_diagram_passes_with_cost_two_chi() {
    let d = base();
    let r = validate(&d, &Context::extensible(&[0, 2, 1], chi()));
    assert!(r.pass(), "{r:?}");
    assert_eq!(d.cost(), credit(2, 5));
    let mut bare = d.clone();
    bare.set_credit(Edge::new(0, 2), credit(0, 1));
    bare.set_credit(Edge::new(2, 1), credit(0, 1));
    let r = validate(&bare, &Context::extensible(&[0, 2, 1], chi()));
    assert!(!r.i4 && r.i1 && r.i5 && r.planar);
}

#[test]
fn envelopes_of_base_diagram() {
    let d = base();
    let up = envelope(&d, Side::Upper).unwrap();
    let arcs: Vec<Edge> = up
        .iter()
        .filter_map(|e| match e {
            EnvElem::Arc(e) => Some(*e),
            _ => None,
        })
        .collect();
    assert_eq!(arcs, vec![Edge::new(0, 2), Edge::new(2, 1)]);
    let low = envelope(&d, Side::Lower).unwrap();
    assert_eq!(
        low,
        vec![EnvElem::Item(Item::Vertex(0)), EnvElem::Arc(Edge::new(0, 1)), EnvElem::Item(Item::Vertex(1))]
    );
    let mut single = ArcDiagram::new();
    single.insert_vertex_at(0, 3).unwrap();
    single.insert_vertex_at(1, 4).unwrap();
    single.mountain(3, 4).unwrap();
    assert!(envelope(&single, Side::Upper).unwrap().contains(&EnvElem::Arc(Edge::new(3, 4))));
}

#[test]
fn up_down_biarc_is_rejected() {
    let mut spine = vec![Item::Vertex(0), Item::Vertex(2), Item::Crossing(Edge::new(0, 1)), Item::Vertex(1)];
    let mut shapes = BTreeMap::from([(Edge::new(0, 1), Shape::BiarcUpDown), (Edge::new(0, 2), Shape::Pocket)]);
    let d = ArcDiagram::from_parts(spine.clone(), shapes.clone(), BTreeMap::new()).unwrap();
    let r = validate(&d, &Context::structural());
    assert!(!r.down_up && !r.i1 && !r.pass());
    shapes.insert(Edge::new(0, 1), Shape::Biarc);
    let d = ArcDiagram::from_parts(spine.clone(), shapes.clone(), BTreeMap::new()).unwrap();
    assert!(validate(&d, &Context::structural()).pass());
    spine.swap(2, 3);
    assert!(ArcDiagram::from_parts(spine, shapes, BTreeMap::new()).is_err());
}

#[test]
fn push_down_single_and_twice() {
    let (d, _) = mountain_path(&[2]);
    let m = Edge::new(0, 2);
    let p = push_down(&d, m).unwrap();
    assert_eq!(p.biarc_count(), 1);
    assert_eq!(p.crossing_count(), 1);
    assert_eq!(p.spine()[1], Item::Crossing(m));
    assert_eq!(push_down(&p, m), Err(DiagramError::NotAMountain(m)));
}

#[test]
fn push_down_nests_outermost_crossing_first() {
    // three mountains from 0 over 2, 3 and 4
    let mut d = ArcDiagram::new();
    for (i, v) in [0, 2, 3, 4].into_iter().enumerate() {
        d.insert_vertex_at(i, v).unwrap();
    }
    for w in [2, 3, 4] {
        d.mountain(0, w).unwrap();
    }
    let p = push_down(&d, Edge::new(0, 3)).unwrap();
    assert_eq!(p.biarc_count(), 3);
    assert_eq!(
        &p.spine()[1..4],
        &[Item::Crossing(Edge::new(0, 4)), Item::Crossing(Edge::new(0, 3)), Item::Crossing(Edge::new(0, 2))]
    );
    // the opposite order interleaves the upper halves
    let mut spine = p.spine().to_vec();
    spine[1..4].reverse();
    let shapes: BTreeMap<Edge, Shape> = p.edges().collect();
    let q = ArcDiagram::from_parts(spine, shapes, BTreeMap::new()).unwrap();
    assert!(!q.is_planar());
}

#[test]
fn insert_into_pocket() {
    let d = base();
    let d2 = insert_vertex_in_pocket(&d, 3, Edge::new(0, 2), &[], &[]).unwrap();
    let new: Vec<Shape> = d2.edges().filter(|(e, _)| e.has(3)).map(|(_, s)| s).collect();
    assert_eq!(new, vec![Shape::Pocket, Shape::Pocket]);
    let mut d3 = insert_vertex_in_pocket(&d2, 4, Edge::new(2, 1), &[], &[]).unwrap();
    // path 0 3 2 4 1; vertex 5 into pocket 2-4 with extra neighbors 3 and 1
    Context::extensible(&[0, 3, 2, 4, 1], chi()).normalize(&mut d3);
    assert!(validate(&d3, &Context::extensible(&[0, 3, 2, 4, 1], chi())).pass());
    let mut d4 = insert_vertex_in_pocket(&d3, 5, Edge::new(2, 4), &[3], &[1]).unwrap();
    let mountains = d4.edges().filter(|(e, s)| e.has(5) && *s == Shape::Mountain).count();
    assert_eq!(mountains, 2);
    let ctx = Context::extensible(&[0, 3, 5, 1], chi());
    ctx.normalize(&mut d4);
    assert!(validate(&d4, &ctx).pass(), "{:?}", validate(&d4, &ctx));
    assert_eq!(
        insert_vertex_in_pocket(&d4, 6, Edge::new(3, 5), &[], &[]),
        Err(DiagramError::NotAPocket(Edge::new(3, 5)))
    );
}

fn pushed_mountain_step(inner: &[usize], v: usize) -> (ArcDiagram, Credit) {
    let (d, path) = mountain_path(inner);
    let before = d.cost();
    let d_i = path.len() - 1;
    let nb = &path[..d_i];
    let m = Edge::new(nb[d_i - 2], nb[d_i - 1]);
    let p = push_down(&d, m).unwrap();
    let mut q = insert_vertex_over_pushed_mountain(&p, v, nb[d_i - 2], nb).unwrap();
    let new_path = [0, v, nb[d_i - 1], 1];
    let ctx = Context::extensible(&new_path, chi());
    ctx.normalize(&mut q);
    assert!(validate(&q, &ctx).pass(), "{:?}", validate(&q, &ctx));
    (q.clone(), q.cost() - before)
}

#[test]
fn insertion_over_pushed_mountain() {
    // d_i = 5: neighbors 0 2 3 4 5
    let (q, spend) = pushed_mountain_step(&[2, 3, 4, 5], 9);
    let pockets = q.edges().filter(|(e, s)| e.has(9) && *s == Shape::Pocket).count();
    let mountains = q.edges().filter(|(e, s)| e.has(9) && *s == Shape::Mountain).count();
    assert_eq!((pockets, mountains), (1, 4));
    assert_eq!(spend, credit(0, 1));
    // d_i = 6 gains one credit
    let (_, spend) = pushed_mountain_step(&[2, 3, 4, 5, 6], 9);
    assert_eq!(spend, credit(-1, 1));
}

#[test]
fn rotation_keeps_biarcs_down_up() {
    let (d, _) = mountain_path(&[2]);
    let p = push_down(&d, Edge::new(0, 2)).unwrap();
    let r = p.rotated_pi();
    assert_eq!(r.biarc_count(), 1);
    assert!(validate(&r, &Context::structural()).pass());
    assert_eq!(r.rotated_pi(), p);
}

#[test]
fn plugging_a_triangle_matches_direct_drawing() {
    let mut host = ArcDiagram::new();
    for (i, v) in [0, 1, 2].into_iter().enumerate() {
        host.insert_vertex_at(i, v).unwrap();
    }
    let mut sub = host.clone();
    sub.pocket(0, 1).unwrap();
    sub.mountain(1, 2).unwrap();
    sub.mountain(0, 2).unwrap();
    let spec = PlugSpec { boundary: vec![0, 1, 2], anchors: vec![None, None, None, None] };
    let plugged = plug_subdiagram(&host, &spec, &sub, Orientation::AsIs).unwrap();
    assert_eq!(plugged, sub);
    let bad = PlugSpec { boundary: vec![0, 1, 2], anchors: vec![None; 3] };
    assert!(plug_subdiagram(&host, &bad, &sub, Orientation::AsIs).is_err());
}

/// Random spine of vertices and crossings with random shapes; not necessarily planar.
fn random_diagram(rng: &mut ChaCha8Rng) -> ArcDiagram {
    let k = rng.gen_range(2..9);
    let mut d = ArcDiagram::new();
    for v in 0..k {
        d.insert_vertex_at(v, v).unwrap();
    }
    let m = rng.gen_range(1..2 * k);
    for _ in 0..m {
        let a = rng.gen_range(0..k);
        let b = rng.gen_range(0..k);
        if a == b || d.shape_of(a, b).is_some() {
            continue;
        }
        match rng.gen_range(0..3) {
            0 => drop(d.mountain(a, b)),
            1 => drop(d.pocket(a, b)),
            _ => {
                let (lo, hi) = (d.vpos(a.min(b)).min(d.vpos(a.max(b))), d.vpos(a).max(d.vpos(b)));
                let at = rng.gen_range(lo + 1..=hi);
                d.add_biarc(a, b, at).unwrap();
            }
        }
    }
    d
}

#[test]
fn planarity_agrees_with_semicircles() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut planar = 0;
    for _ in 0..1000 {
        let d = random_diagram(&mut rng);
        let mut x = credit(0, 1);
        let coords: Vec<Credit> = (0..d.len())
            .map(|_| {
                x += credit(rng.gen_range(1..7), rng.gen_range(1..4));
                x
            })
            .collect();
        let geo = semicircle_conflict(&d, &coords).is_none();
        assert_eq!(d.is_planar(), geo, "{d:?}");
        planar += geo as usize;
    }
    assert!(planar > 100 && planar < 900);
}

#[test]
fn faces_missing_spine_on_base() {
    let d = base();
    // nothing is drawn above the spine, so no gap is enclosed
    assert_eq!(faces_missing_spine(&d, &[[0, 2, 1]]), vec![[0, 2, 1]]);
    let (m, _) = mountain_path(&[2]);
    // gap 0..2 lies under mountain 0-2 and above pocket 0-1
    assert!(faces_missing_spine(&m, &[[0, 2, 1]]).is_empty());
}

proptest! {
    #[test]
    fn push_down_preserves_planarity(seed in 0u64..5000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_diagram(&mut rng);
        prop_assume!(d.is_planar());
        let ms: Vec<Edge> = d.edges().filter(|(_, s)| *s == Shape::Mountain).map(|(e, _)| e).collect();
        for m in ms {
            let p = push_down(&d, m).unwrap();
            prop_assert!(p.is_planar());
            prop_assert_eq!(p.biarc_count(), p.crossing_count());
        }
    }
}
