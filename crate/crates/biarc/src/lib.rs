//! File formats, SVG output and the command implementations behind the
//! `biarc` binary. Commands return their output as strings so that the
//! binary only does argument parsing and IO.

pub mod formats;
pub mod svg;
pub mod sweep;

use std::fmt::Write;

use biarc_core::algo_3tree::{draw_3tree, draw_3tree_gd2, three_tree_bound};
use biarc_core::algo_general::{biarc_bound, draw_with, Options};
use biarc_core::algo_kleetope::draw_degree3_aware;
use biarc_core::diagram::{credit, validate, ArcDiagram, Context, Credit, Shape};
use biarc_core::graph::{
    enumerate_triangulations, icosahedron, ConstructionSequence, k4, kleetope, octahedron, random_3tree, random_3tree_gd2,
    random_triangulation, PlaneTriangulation, Vertex,
};
use biarc_core::oracle::min_biarcs_bruteforce;

pub use formats::{parse_3t, parse_arc, parse_rot, write_3t, write_arc, write_rot, ParseError};
pub use svg::{render_svg, SvgOptions};

/// Command failure, split by exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CmdError {
    /// Unreadable input or invalid parameters (exit code 2).
    #[error("{0}")]
    Input(String),
    /// The result failed validation or its bound (exit code 3).
    #[error("{0}")]
    Failed(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Input(_) => 2,
            CmdError::Failed(_) => 3,
        }
    }
}

impl From<ParseError> for CmdError {
    fn from(e: ParseError) -> Self {
        CmdError::Input(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Algo {
    General,
    Kleetope,
    #[value(name = "3tree")]
    ThreeTree,
    Gd2,
}

/// Outer face selection for triangulation inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outer {
    Face([Vertex; 3]),
    /// A face picked by the seed.
    Random,
}

impl std::str::FromStr for Outer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "random" {
            return Ok(Outer::Random);
        }
        let v: Vec<Vertex> = s.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>().map_err(|_| format!("bad outer face {s:?}"))?;
        let f: [Vertex; 3] = v.try_into().map_err(|_| String::from("outer face needs three vertices"))?;
        Ok(Outer::Face(f))
    }
}

pub fn parse_chi(s: &str) -> Result<Credit, String> {
    let bad = || format!("bad rational {s:?}");
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (i64, i64) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
            if q == 0 {
                return Err(bad());
            }
            Ok(Credit::new(p, q))
        }
        None => Ok(Credit::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug)]
pub struct DrawOutcome {
    pub diagram: ArcDiagram,
    pub n: usize,
    pub biarcs: usize,
    pub bound: usize,
    pub trace: String,
}

impl DrawOutcome {
    pub fn summary(&self) -> String {
        format!("n={} biarcs={} bound={} valid=yes", self.n, self.biarcs, self.bound)
    }
}

/// Biarc bound for the general algorithm: `floor(4n/5) - 2` for chi = 1/5,
/// else the ledger bound `n(1 - chi) + 7 chi - 3` less the paid mountain.
pub fn general_bound(n: usize, chi: Credit) -> usize {
    if chi == credit(1, 5) {
        return biarc_bound(n);
    }
    let b = (Credit::from_integer(1) - chi) * n as i64 + chi * 7 - Credit::from_integer(4);
    b.floor().to_integer().max(0) as usize
}

fn with_outer(g: PlaneTriangulation, outer: Option<Outer>, seed: u64) -> Result<PlaneTriangulation, CmdError> {
    let face = match outer {
        None => return Ok(g),
        Some(Outer::Face(f)) => f,
        Some(Outer::Random) => {
            let faces = g.faces();
            faces[(seed % faces.len() as u64) as usize]
        }
    };
    g.with_outer(face).map_err(|e| CmdError::Input(e.to_string()))
}

/// Structural validity plus the drawn edge set.
fn check_diagram(d: &ArcDiagram, edges: &[(Vertex, Vertex)]) -> Result<(), CmdError> {
    let rep = validate(d, &Context::structural());
    if !rep.pass() {
        return Err(CmdError::Failed(format!("validator: {:?}", rep.violations)));
    }
    if !d.has_exactly_edges(edges) {
        return Err(CmdError::Failed(String::from("diagram edges differ from the input graph")));
    }
    Ok(())
}

/// Draws a triangulation with the general or degree-3 algorithm.
pub fn draw_graph(g: &PlaneTriangulation, algo: Algo, chi: Credit) -> Result<DrawOutcome, CmdError> {
    let n = g.n();
    let fail = |e: &dyn std::fmt::Display| CmdError::Failed(e.to_string());
    let (diagram, bound, trace) = match algo {
        Algo::General => {
            let dr = draw_with(g, &Options::new(chi)).map_err(|e| match e {
                biarc_core::algo_general::AlgoError::InvalidChi(_) => CmdError::Input(e.to_string()),
                e => fail(&e),
            })?;
            (dr.diagram, general_bound(n, chi), dr.ledger.trace())
        }
        Algo::Kleetope => {
            let dr = draw_degree3_aware(g).map_err(|e| fail(&e))?;
            let bound = (n - dr.removed).saturating_sub(4);
            (dr.diagram, bound, dr.ledger.trace())
        }
        Algo::ThreeTree | Algo::Gd2 => {
            return Err(CmdError::Input(String::from("3-tree algorithms take a .3t construction sequence")));
        }
    };
    finish(diagram, n, bound, trace, &g.edges())
}

fn finish(diagram: ArcDiagram, n: usize, bound: usize, trace: String, edges: &[(Vertex, Vertex)]) -> Result<DrawOutcome, CmdError> {
    check_diagram(&diagram, edges)?;
    if diagram.edges().any(|(_, s)| s == Shape::BiarcUpDown) {
        return Err(CmdError::Failed(String::from("up-down biarc in the output")));
    }
    let biarcs = diagram.biarc_count();
    if biarcs > bound {
        return Err(CmdError::Failed(format!("{biarcs} biarcs exceed the bound {bound}")));
    }
    Ok(DrawOutcome { diagram, n, biarcs, bound, trace })
}

/// Draws the contents of an input file.
pub fn draw(input: &str, algo: Algo, chi: Credit, outer: Option<Outer>, seed: u64) -> Result<DrawOutcome, CmdError> {
    match algo {
        Algo::General | Algo::Kleetope => {
            let g = with_outer(parse_rot(input)?, outer, seed)?;
            draw_graph(&g, algo, chi)
        }
        Algo::ThreeTree | Algo::Gd2 => finish_sequence(&parse_3t(input)?, algo),
    }
}

/// Draws a 3-tree construction sequence with one of the 3-tree algorithms.
pub fn finish_sequence(seq: &ConstructionSequence, algo: Algo) -> Result<DrawOutcome, CmdError> {
    let edges = seq.replay().map_err(|e| CmdError::Input(e.to_string()))?.edges();
    let n = seq.n();
    match algo {
        Algo::Gd2 => {
            let d = draw_3tree_gd2(seq).map_err(|e| CmdError::Failed(e.to_string()))?;
            finish(d, n, 0, String::new(), &edges)
        }
        Algo::ThreeTree => {
            let dr = draw_3tree(seq).map_err(|e| CmdError::Failed(e.to_string()))?;
            finish(dr.diagram, n, three_tree_bound(n), dr.ledger.trace(), &edges)
        }
        _ => Err(CmdError::Input(String::from("triangulation algorithms take a .rot file"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GenKind {
    Tri,
    Kleetope,
    #[value(name = "3tree")]
    ThreeTree,
    #[value(name = "3tree-gd2")]
    ThreeTreeGd2,
    Enum,
}

/// A named built-in triangulation.
pub fn named_graph(name: &str) -> Option<PlaneTriangulation> {
    match name {
        "k4" => Some(k4()),
        "octahedron" => Some(octahedron()),
        "icosahedron" => Some(icosahedron()),
        _ => None,
    }
}

/// Generated files as `(file name, contents)`. `base` is the contents of a
/// `.rot` file or the name of a built-in graph.
pub fn generate(kind: GenKind, n: Option<usize>, seed: u64, base: Option<&str>) -> Result<Vec<(String, String)>, CmdError> {
    let need_n = |lo: usize| -> Result<usize, CmdError> {
        let n = n.ok_or_else(|| CmdError::Input(String::from("--n is required")))?;
        if n < lo {
            return Err(CmdError::Input(format!("--n must be at least {lo}")));
        }
        Ok(n)
    };
    Ok(match kind {
        GenKind::Tri => {
            let n = need_n(4)?;
            vec![(format!("tri-n{n}-s{seed}.rot"), write_rot(&random_triangulation(n, seed)))]
        }
        GenKind::Kleetope => {
            let t = match base {
                Some(b) => match named_graph(b) {
                    Some(g) => g,
                    None => parse_rot(b)?,
                },
                None => random_triangulation(need_n(4)?, seed),
            };
            let g = kleetope(&t);
            vec![(format!("kleetope-n{}.rot", g.n()), write_rot(&g))]
        }
        GenKind::ThreeTree => {
            let n = need_n(3)?;
            vec![(format!("3tree-n{n}-s{seed}.3t"), write_3t(&random_3tree(n, seed)))]
        }
        GenKind::ThreeTreeGd2 => {
            let n = need_n(3)?;
            vec![(format!("3tree-gd2-n{n}-s{seed}.3t"), write_3t(&random_3tree_gd2(n, seed)))]
        }
        GenKind::Enum => {
            let n = need_n(4)?;
            let gs = enumerate_triangulations(n).map_err(|e| CmdError::Input(e.to_string()))?;
            gs.iter().enumerate().map(|(i, g)| (format!("enum-n{n}-{i}.rot"), write_rot(g))).collect()
        }
    })
}

/// Validates a diagram, optionally against the graph it should draw.
/// Returns a one-line report.
pub fn validate_file(arc: &str, graph: Option<&str>) -> Result<String, CmdError> {
    let d = parse_arc(arc)?;
    let rep = validate(&d, &Context::structural());
    if !rep.pass() {
        return Err(CmdError::Failed(format!("invalid: {:?}", rep.violations)));
    }
    if let Some(g) = graph {
        let g = parse_rot(g)?;
        if !d.has_exactly_edges(&g.edges()) {
            return Err(CmdError::Failed(String::from("invalid: edges differ from the graph")));
        }
    }
    Ok(format!("valid vertices={} edges={} biarcs={}", d.vertex_count(), d.edge_count(), d.biarc_count()))
}

/// Minimum number of biarcs and a witness diagram in `.arc` format.
pub fn oracle(rot: &str, max_n: usize) -> Result<String, CmdError> {
    let g = parse_rot(rot)?;
    let r = min_biarcs_bruteforce(&g, max_n).map_err(|e| CmdError::Input(e.to_string()))?;
    let mut s = String::new();
    let _ = writeln!(s, "# min_biarcs={}", r.min_biarcs);
    s.push_str(&write_arc(&r.witness));
    Ok(s)
}

pub fn render(arc: &str, opts: &SvgOptions) -> Result<String, CmdError> {
    Ok(render_svg(&parse_arc(arc)?, opts))
}
