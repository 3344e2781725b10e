//! Text formats: `.rot` rotation systems, `.3t` construction sequences and
//! `.arc` diagrams.
//!
//! ```text
//! .rot   4             .3t   base 0 1 2      .arc   v0 v3 x:1-2 v1 v2
//!        outer 0 1 2         3 : 0 1 2              0 1 mountain 0
//!        0: 1 3 2                                   1 2 biarc 1/5
//!        ...                                        ...
//! ```

use std::collections::BTreeMap;
use std::fmt::Write;

use biarc_core::diagram::{ArcDiagram, Credit, Edge, Item, Shape};
use biarc_core::graph::{ConstructionSequence, PlaneTriangulation, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

/// Non-empty lines that are not `#` comments, with 1-based line numbers.
fn lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn num(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| err(line, format!("expected a vertex id, got {tok:?}")))
}

fn triple(line: usize, toks: &[&str]) -> Result<[Vertex; 3], ParseError> {
    if toks.len() != 3 {
        return Err(err(line, format!("expected three vertices, got {}", toks.len())));
    }
    Ok([num(line, toks[0])?, num(line, toks[1])?, num(line, toks[2])?])
}

pub fn parse_rot(s: &str) -> Result<PlaneTriangulation, ParseError> {
    let mut it = lines(s);
    let (l1, first) = it.next().ok_or_else(|| err(0, "empty input"))?;
    let n = num(l1, first)?;
    let (l2, second) = it.next().ok_or_else(|| err(l1, "missing outer line"))?;
    let toks: Vec<&str> = second.split_whitespace().collect();
    if toks.first() != Some(&"outer") {
        return Err(err(l2, "expected \"outer a b c\""));
    }
    let outer = triple(l2, &toks[1..])?;
    let mut rot: Vec<Option<Vec<Vertex>>> = vec![None; n];
    let mut last = l2;
    for (l, line) in it {
        last = l;
        let (head, rest) = line.split_once(':').ok_or_else(|| err(l, "expected \"v: u1 u2 ...\""))?;
        let v = num(l, head.trim())?;
        if v >= n {
            return Err(err(l, format!("vertex {v} out of range")));
        }
        if rot[v].is_some() {
            return Err(err(l, format!("rotation of {v} given twice")));
        }
        let nb = rest.split_whitespace().map(|t| num(l, t)).collect::<Result<Vec<_>, _>>()?;
        rot[v] = Some(nb);
    }
    let rot: Vec<Vec<Vertex>> = rot
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| err(last, format!("missing rotation of {v}"))))
        .collect::<Result<_, _>>()?;
    PlaneTriangulation::new(rot, outer).map_err(|e| err(last, e.to_string()))
}

pub fn write_rot(g: &PlaneTriangulation) -> String {
    let mut s = String::new();
    let [a, b, c] = g.outer_face();
    let _ = writeln!(s, "{}", g.n());
    let _ = writeln!(s, "outer {a} {b} {c}");
    for v in 0..g.n() {
        let nb: Vec<String> = g.rotation(v).iter().map(|u| u.to_string()).collect();
        let _ = writeln!(s, "{v}: {}", nb.join(" "));
    }
    s
}

pub fn parse_3t(s: &str) -> Result<ConstructionSequence, ParseError> {
    let mut it = lines(s);
    let (l1, first) = it.next().ok_or_else(|| err(0, "empty input"))?;
    let toks: Vec<&str> = first.split_whitespace().collect();
    if toks.first() != Some(&"base") {
        return Err(err(l1, "expected \"base a b c\""));
    }
    let base = triple(l1, &toks[1..])?;
    let mut steps = Vec::new();
    let mut last = l1;
    for (l, line) in it {
        last = l;
        let (head, rest) = line.split_once(':').ok_or_else(|| err(l, "expected \"v : a b c\""))?;
        let v = num(l, head.trim())?;
        let f = triple(l, &rest.split_whitespace().collect::<Vec<_>>())?;
        steps.push((v, f));
    }
    let seq = ConstructionSequence { base, steps };
    seq.check().map_err(|e| err(last, e.to_string()))?;
    Ok(seq)
}

pub fn write_3t(seq: &ConstructionSequence) -> String {
    let [a, b, c] = seq.base;
    let mut s = format!("base {a} {b} {c}\n");
    for &(v, [p, q, r]) in &seq.steps {
        let _ = writeln!(s, "{v} : {p} {q} {r}");
    }
    s
}

fn shape_name(s: Shape) -> &'static str {
    match s {
        Shape::Mountain => "mountain",
        Shape::Pocket => "pocket",
        Shape::Biarc => "biarc",
        Shape::BiarcUpDown => "biarc-updown",
    }
}

fn parse_shape(line: usize, tok: &str) -> Result<Shape, ParseError> {
    Ok(match tok {
        "mountain" => Shape::Mountain,
        "pocket" => Shape::Pocket,
        "biarc" => Shape::Biarc,
        "biarc-updown" => Shape::BiarcUpDown,
        _ => return Err(err(line, format!("unknown edge type {tok:?}"))),
    })
}

fn parse_credit(line: usize, tok: &str) -> Result<Credit, ParseError> {
    let bad = || err(line, format!("expected a rational, got {tok:?}"));
    match tok.split_once('/') {
        Some((p, q)) => {
            let (p, q): (i64, i64) = (p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?);
            if q == 0 {
                return Err(bad());
            }
            Ok(Credit::new(p, q))
        }
        None => Ok(Credit::from_integer(tok.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_arc(s: &str) -> Result<ArcDiagram, ParseError> {
    let mut it = lines(s);
    let (l1, first) = it.next().ok_or_else(|| err(0, "empty input"))?;
    let mut spine = Vec::new();
    for tok in first.split_whitespace() {
        let item = if let Some(rest) = tok.strip_prefix("x:") {
            let (a, b) = rest.split_once('-').ok_or_else(|| err(l1, format!("bad crossing {tok:?}")))?;
            Item::Crossing(Edge::new(num(l1, a)?, num(l1, b)?))
        } else if let Some(rest) = tok.strip_prefix('v') {
            Item::Vertex(num(l1, rest)?)
        } else {
            return Err(err(l1, format!("bad spine item {tok:?}")));
        };
        spine.push(item);
    }
    let mut shapes = BTreeMap::new();
    let mut credits = BTreeMap::new();
    let mut last = l1;
    for (l, line) in it {
        last = l;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(err(l, "expected \"u v TYPE credits\""));
        }
        let e = Edge::new(num(l, toks[0])?, num(l, toks[1])?);
        if shapes.insert(e, parse_shape(l, toks[2])?).is_some() {
            return Err(err(l, format!("edge {}-{} given twice", e.0, e.1)));
        }
        let c = parse_credit(l, toks[3])?;
        if c != Credit::default() {
            credits.insert(e, c);
        }
    }
    ArcDiagram::from_parts(spine, shapes, credits).map_err(|e| err(last, e.to_string()))
}

pub fn write_arc(d: &ArcDiagram) -> String {
    let items: Vec<String> = d
        .spine()
        .iter()
        .map(|it| match *it {
            Item::Vertex(v) => format!("v{v}"),
            Item::Crossing(e) => format!("x:{}-{}", e.0, e.1),
        })
        .collect();
    let mut s = items.join(" ");
    s.push('\n');
    for (e, sh) in d.edges() {
        let _ = writeln!(s, "{} {} {} {}", e.0, e.1, shape_name(sh), d.credit(e));
    }
    s
}
