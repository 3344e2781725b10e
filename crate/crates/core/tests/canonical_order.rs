use biarc_core::canonical_order::*;
use biarc_core::diagram::{ArcDiagram, Shape};
use biarc_core::graph::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Spine = outer path; path edges get the given shapes.
fn path_diagram(path: &[usize], shapes: &[Shape]) -> ArcDiagram {
    let mut d = ArcDiagram::new();
    for (i, &v) in path.iter().enumerate() {
        d.insert_vertex_at(i, v).unwrap();
    }
    for (w, &s) in path.windows(2).zip(shapes) {
        d.add_proper(w[0], w[1], s).unwrap();
    }
    d
}

fn random_shapes(rng: &mut ChaCha8Rng, k: usize) -> Vec<Shape> {
    (0..k).map(|_| if rng.gen_bool(0.6) { Shape::Mountain } else { Shape::Pocket }).collect()
}

/// Walks a random canonical ordering, calling `f` on every state.
fn random_walk(g: &PlaneTriangulation, seed: u64, mut f: impl FnMut(&OrderingState)) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = OrderingState::new(g);
    loop {
        f(&s);
        if s.is_complete() {
            break;
        }
        let el = s.eligible_set();
        assert!(!el.is_empty());
        let v = el[rng.gen_range(0..el.len())];
        s.advance_mut(v).unwrap();
    }
}

#[test]
fn k4_base_state() {
    let g = k4();
    let s = OrderingState::new(&g);
    let [v1, v2, vn] = g.outer_face();
    assert_eq!(s.eligible_set(), vec![vn]);
    let t = s.advance(vn).unwrap();
    assert_eq!(t.path(), &[v1, vn, v2]);
    assert!(t.is_complete());
}

#[test]
fn eligibility_matches_region_test() {
    let graphs = [octahedron(), icosahedron(), random_triangulation(40, 3), kleetope(&octahedron())];
    for (k, g) in graphs.iter().enumerate() {
        for seed in 0..5 {
            random_walk(g, seed * 31 + k as u64, |s| {
                assert!(s.is_extensible());
                let brute: Vec<usize> =
                    s.unplaced().filter(|&v| s.degree_in(v) >= 2 && s.region_vertices(v).is_empty()).collect();
                let mut fast = s.eligible_set();
                fast.sort();
                assert_eq!(fast, brute);
                if s.i() + 1 == g.n() {
                    assert_eq!(fast.len(), 1);
                }
            });
        }
    }
}

#[test]
fn random_orders_replay() {
    let g = random_triangulation(60, 9);
    let mut order = Vec::new();
    random_walk(&g, 4, |s| order = s.placed().to_vec());
    let again = OrderingState::from_order(&g, &order).unwrap();
    assert!(again.is_complete());
    let [v1, v2, vn] = g.outer_face();
    assert_eq!(again.path(), &[v1, vn, v2]);
    assert_eq!(*order.last().unwrap(), vn);
}

#[test]
fn problem_types() {
    use Shape::{Mountain as M, Pocket as P};
    assert_eq!(ProblemType::classify(&[P]), ProblemType::NotProblematic);
    assert_eq!(ProblemType::classify(&[M]), ProblemType::T2M);
    assert_eq!(ProblemType::classify(&[M, M]), ProblemType::T3MM);
    assert_eq!(ProblemType::classify(&[M, M, M]), ProblemType::T4MMM);
    assert_eq!(ProblemType::classify(&[M, P]), ProblemType::T3MP);
    assert_eq!(ProblemType::classify(&[P, M]), ProblemType::NotProblematic);
    assert_eq!(ProblemType::classify(&[M; 4]), ProblemType::NotProblematic);
    assert_eq!(ProblemType::T3MP.pivot_side(), Some(PivotSide::Right));
    assert_eq!(ProblemType::T2M.pivot_side(), Some(PivotSide::Left));
}

#[test]
fn profile_pivots() {
    let g = random_triangulation(30, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    random_walk(&g, 8, |s| {
        if s.i() + 1 >= g.n() {
            return;
        }
        let shapes = random_shapes(&mut rng, s.path().len() - 1);
        let d = path_diagram(s.path(), &shapes);
        for v in s.eligible_set() {
            let p = s.profile(&d, v).unwrap();
            assert_eq!(p.shapes.len() + 1, p.degree());
            match p.kind.pivot_side() {
                Some(PivotSide::Right) => {
                    assert_eq!(p.pivot, Some(p.r()));
                    assert_eq!(p.degree(), 3);
                }
                Some(PivotSide::Left) => assert_eq!(p.pivot, Some(p.ell())),
                None => assert_eq!(p.pivot, None),
            }
            if let Some(c) = p.pivot_cover {
                // after placing v the pivot edge is on the path and c covers it
                let t = s.advance(v).unwrap();
                let (a, b) = if p.kind == ProblemType::T3MP { (v, p.r()) } else { (p.ell(), v) };
                let pos = t.path_pos(a).unwrap();
                assert_eq!(t.path()[pos + 1], b);
                assert_eq!(t.cover(pos), c);
            }
        }
    });
}

/// States where every eligible vertex is problematic and neither two-vertex
/// shortcut applies; checks the region structure around the selected `u`.
#[test]
fn region_structure_around_u() {
    let mut hits = 0;
    for seed in 0..400u64 {
        let n = 12 + (seed as usize % 30);
        let g = random_triangulation(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        random_walk(&g, seed, |s| {
            if s.i() + 1 >= g.n() {
                return;
            }
            for _ in 0..4 {
                let shapes = random_shapes(&mut rng, s.path().len() - 1);
                let d = path_diagram(s.path(), &shapes);
                let el = s.eligible_set();
                let profs: Vec<Profile> = el.iter().map(|&v| s.profile(&d, v).unwrap()).collect();
                if profs.iter().any(|p| !p.kind.is_problematic()) {
                    continue;
                }
                let pc_single = profs.iter().any(|p| s.degree_in(p.pivot_cover.unwrap()) == 1);
                let same_pivot = profs.iter().any(|p| {
                    let c = p.pivot_cover.unwrap();
                    el.contains(&c)
                        && (p.kind == ProblemType::T3MP
                            || profs.iter().any(|q| q.v == c && q.kind == ProblemType::T3MP))
                });
                if pc_single || same_pivot {
                    continue;
                }
                hits += 1;
                let u = s.select_u(&d).unwrap();
                assert!(!el.contains(&u));
                assert!(s.degree_in(u) >= 2);
                // minimality: no other candidate inside R(u)
                let inside = s.region_vertices(u);
                for p in &profs {
                    let c = p.pivot_cover.unwrap();
                    if c != u && !el.contains(&c) {
                        assert!(!inside.contains(&c));
                    }
                }
                let regions = s.decompose_regions(&d, u).unwrap();
                let mut all: Vec<usize> = regions.iter().flat_map(|r| r.vertices.clone()).collect();
                all.sort();
                assert_eq!(all, inside);
                for r in &regions {
                    // covers of the region's path edges are u or eligible
                    for t in r.span.0..r.span.1 {
                        let c = s.cover(t);
                        assert!(c == u || el.contains(&c));
                    }
                    let rp: Vec<&Profile> =
                        r.eligible.iter().map(|c| profs.iter().find(|p| p.v == *c).unwrap()).collect();
                    let rights: Vec<&&Profile> = rp.iter().filter(|p| p.kind == ProblemType::T3MP).collect();
                    assert!(rights.len() <= 1);
                    for q in &rights {
                        assert_eq!(q.pivot_cover, Some(u));
                        assert_eq!(q.v, *r.eligible.last().unwrap());
                    }
                    let lefts: Vec<&&Profile> = rp.iter().filter(|p| p.kind != ProblemType::T3MP).collect();
                    for (h, q) in lefts.iter().enumerate() {
                        let want = if h == 0 { u } else { lefts[h - 1].v };
                        assert_eq!(q.pivot_cover, Some(want));
                    }
                }
            }
        });
    }
    assert!(hits > 20, "only {hits} qualifying states");
}
