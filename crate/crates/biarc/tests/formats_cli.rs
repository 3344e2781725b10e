use std::path::PathBuf;
use std::process::Command;

use biarc::*;
use biarc_core::diagram::{credit, ArcDiagram, Edge, Item, Shape};
use biarc_core::graph::{icosahedron, k4, octahedron, random_3tree, random_triangulation};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("biarc-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_biarc"))
}

#[test]
fn rot_round_trip() {
    for g in [k4(), octahedron(), icosahedron(), random_triangulation(40, 2)] {
        let s = write_rot(&g);
        let h = parse_rot(&s).unwrap();
        assert_eq!(h, g);
        assert_eq!(write_rot(&h), s);
    }
}

#[test]
fn three_tree_round_trip() {
    let seq = random_3tree(30, 5);
    let s = write_3t(&seq);
    assert_eq!(parse_3t(&s).unwrap(), seq);
    assert!(s.starts_with("base 0 1 2\n3 : 0 1 2\n"));
}

#[test]
fn arc_round_trip_keeps_crossings_and_credits() {
    let mut d = ArcDiagram::new();
    for (i, v) in [0, 1, 2].into_iter().enumerate() {
        d.insert_vertex_at(i, v).unwrap();
    }
    d.pocket(0, 1).unwrap();
    d.mountain(1, 2).unwrap();
    d.add_biarc(0, 2, 1).unwrap();
    d.set_credit(Edge::new(0, 1), credit(1, 5));
    let s = write_arc(&d);
    assert_eq!(s, "v0 x:0-2 v1 v2\n0 1 pocket 1/5\n0 2 biarc 0\n1 2 mountain 0\n");
    assert_eq!(parse_arc(&s).unwrap(), d);
    let drawn = draw(&write_rot(&random_triangulation(60, 4)), Algo::General, credit(1, 5), None, 0).unwrap();
    assert_eq!(parse_arc(&write_arc(&drawn.diagram)).unwrap(), drawn.diagram);
}

#[test]
fn parse_errors_carry_line_numbers() {
    assert_eq!(parse_rot("").unwrap_err().line, 0);
    let e = parse_rot("4\nouter 0 1\n").unwrap_err();
    assert_eq!(e.line, 2);
    let e = parse_rot("4\nouter 0 1 2\n0: 1 3 2\n9: 1\n").unwrap_err();
    assert_eq!(e.line, 4);
    assert!(parse_3t("base 0 1 2\n3 : 0 1 5\n").is_err());
    let e = parse_arc("v0 v1\n0 1 arch 0\n").unwrap_err();
    assert_eq!(e.line, 2);
    assert!(e.msg.contains("arch"));
    assert!(parse_arc("v0 v1 q\n").is_err());
    // comments and blank lines are skipped
    assert!(parse_3t("# stacked\n\nbase 0 1 2\n3 : 0 1 2\n").is_ok());
}

#[test]
fn svg_counts_and_sweep_flags() {
    let o = draw(&write_rot(&octahedron()), Algo::General, credit(1, 5), None, 0).unwrap();
    let svg = render_svg(&o.diagram, &SvgOptions::default());
    assert_eq!(svg.matches(r#"<circle class="vertex""#).count(), 6);
    assert_eq!(svg.matches(r#"<path class="edge"#).count(), 12);
    assert_eq!(svg.matches(r#"<circle class="crossing""#).count(), o.biarcs);
    assert_eq!(svg.matches("<text ").count(), 6);
    let bare = render_svg(&o.diagram, &SvgOptions { unit: 40, labels: false });
    assert_eq!(bare.matches("<text ").count(), 0);

    let mut d = ArcDiagram::new();
    d.insert_vertex_at(0, 0).unwrap();
    d.insert_vertex_at(1, 1).unwrap();
    d.add_biarc(0, 1, 1).unwrap();
    let svg = render_svg(&d, &SvgOptions::default());
    // lower half first (sweep 0), then the upper half (sweep 1)
    assert!(svg.contains(r#"d="M 0 0 A 20 20 0 0 0 40 0 A 20 20 0 0 1 80 0""#), "{svg}");
    let mut m = ArcDiagram::new();
    m.insert_vertex_at(0, 0).unwrap();
    m.insert_vertex_at(1, 1).unwrap();
    m.add_proper(0, 1, Shape::Mountain).unwrap();
    assert!(render_svg(&m, &SvgOptions::default()).contains("A 20 20 0 0 1 40 0"));
    assert_eq!(d.pos(Item::Crossing(Edge::new(0, 1))), Some(1));
}

#[test]
fn outer_face_parsing() {
    assert_eq!("1,2,3".parse::<Outer>(), Ok(Outer::Face([1, 2, 3])));
    assert_eq!("random".parse::<Outer>(), Ok(Outer::Random));
    assert!("1,2".parse::<Outer>().is_err());
    assert_eq!(parse_chi("1/10"), Ok(credit(1, 10)));
    assert!(parse_chi("1/0").is_err());
}

#[test]
fn library_errors_map_to_exit_codes() {
    let rot = write_rot(&k4());
    assert_eq!(draw(&rot, Algo::General, credit(1, 4), None, 0).unwrap_err().exit_code(), 2);
    assert_eq!(draw("garbage", Algo::General, credit(1, 5), None, 0).unwrap_err().exit_code(), 2);
    assert_eq!(draw(&rot, Algo::General, credit(1, 5), Some(Outer::Face([0, 1, 9])), 0).unwrap_err().exit_code(), 2);
    let gd3 = "base 0 1 2\n3 : 0 1 2\n4 : 0 1 3\n5 : 1 2 3\n6 : 2 0 3\n";
    assert_eq!(draw(gd3, Algo::Gd2, credit(1, 5), None, 0).unwrap_err().exit_code(), 3);
    assert!(draw(gd3, Algo::ThreeTree, credit(1, 5), None, 0).is_ok());
    assert_eq!(oracle(&write_rot(&random_triangulation(8, 0)), 7).unwrap_err().exit_code(), 2);
    let bad_arc = "v0 v1 v2 v3\n0 2 mountain 0\n1 3 mountain 0\n";
    assert_eq!(validate_file(bad_arc, None).unwrap_err().exit_code(), 3);
}

#[test]
fn every_outer_face_of_the_icosahedron() {
    let rot = write_rot(&icosahedron());
    for seed in 0..20 {
        let o = draw(&rot, Algo::General, credit(1, 5), Some(Outer::Random), seed).unwrap();
        assert!(o.biarcs <= o.bound);
    }
}

#[test]
fn generators() {
    let f = generate(GenKind::Enum, Some(6), 0, None).unwrap();
    assert_eq!(f.len(), 2);
    let f = generate(GenKind::Kleetope, None, 0, Some("octahedron")).unwrap();
    assert_eq!(f[0].0, "kleetope-n14.rot");
    assert_eq!(parse_rot(&f[0].1).unwrap().n(), 14);
    let f = generate(GenKind::ThreeTreeGd2, Some(20), 3, None).unwrap();
    assert_eq!(parse_3t(&f[0].1).unwrap().n(), 20);
    assert_eq!(generate(GenKind::Tri, None, 0, None).unwrap_err().exit_code(), 2);
    assert_eq!(generate(GenKind::Tri, Some(3), 0, None).unwrap_err().exit_code(), 2);
}

#[test]
fn sweep_reports_every_instance() {
    let spec = biarc::sweep::SweepSpec {
        algo: Algo::Kleetope,
        lo: 4,
        hi: 6,
        count: 0,
        seed: 0,
        source: biarc::sweep::Source::Enum,
        chi: credit(1, 5),
    };
    let rows = biarc::sweep::sweep(&spec).unwrap();
    assert_eq!(rows.len(), 1 + 1 + 2);
    assert!(rows.iter().all(|r| r.pass() && r.biarcs <= r.bound));
    let rep = biarc::sweep::report(&rows);
    assert!(rep.ends_with("# instances=4 failed=0\n"));
    assert_eq!(biarc::sweep::parse_range("3..=9"), Ok((3, 9)));
    assert!(biarc::sweep::parse_range("9..3").is_err());
}

#[test]
fn binary_draw_round_trip() {
    let rot = scratch("oct.rot");
    let arc = scratch("oct.arc");
    let svg = scratch("oct.svg");
    std::fs::write(&rot, write_rot(&octahedron())).unwrap();
    let out = bin().arg("draw").arg(&rot).arg("--out").arg(&arc).arg("--svg").arg(&svg).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("n=6") && summary.contains("valid=yes"), "{summary}");
    let d = parse_arc(&std::fs::read_to_string(&arc).unwrap()).unwrap();
    let out = bin().arg("validate").arg(&arc).arg("--graph").arg(&rot).output().unwrap();
    assert!(out.status.success());
    let line = String::from_utf8(out.stdout).unwrap();
    assert_eq!(line, format!("valid vertices=6 edges=12 biarcs={}\n", d.biarc_count()));
    let rendered = bin().arg("render").arg(&arc).output().unwrap();
    assert_eq!(rendered.stdout, std::fs::read(&svg).unwrap());
}

#[test]
fn binary_exit_codes() {
    let bad = scratch("bad.rot");
    std::fs::write(&bad, "4\nouter 0 1 2\n0: 1\n").unwrap();
    assert_eq!(bin().arg("draw").arg(&bad).output().unwrap().status.code(), Some(2));
    let missing = scratch("missing.rot");
    assert_eq!(bin().arg("draw").arg(&missing).output().unwrap().status.code(), Some(2));
    let gd3 = scratch("gd3.3t");
    std::fs::write(&gd3, "base 0 1 2\n3 : 0 1 2\n4 : 0 1 3\n5 : 1 2 3\n6 : 2 0 3\n").unwrap();
    assert_eq!(bin().args(["draw", "--algo", "gd2"]).arg(&gd3).output().unwrap().status.code(), Some(3));
    assert_eq!(bin().args(["draw", "--algo", "3tree"]).arg(&gd3).output().unwrap().status.code(), Some(0));
    let big = scratch("big.rot");
    std::fs::write(&big, write_rot(&random_triangulation(9, 1))).unwrap();
    assert_eq!(bin().arg("oracle").arg(&big).output().unwrap().status.code(), Some(2));
    let k = scratch("k4.rot");
    std::fs::write(&k, write_rot(&k4())).unwrap();
    let out = bin().arg("oracle").arg(&k).output().unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("# min_biarcs=0\n"));
    assert_eq!(bin().args(["sweep", "--algo", "gd2", "--n-range", "4..30", "--count", "5"]).output().unwrap().status.code(), Some(0));
}
