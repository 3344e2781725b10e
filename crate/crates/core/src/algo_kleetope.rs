//! Drawings of triangulations with many degree-3 vertices.
//!
//! The degree-3 vertices are removed first. The remaining triangulation `T`
//! is drawn with modified default insertions that keep every triangle
//! crossing the spine; each removed vertex then goes onto the spine segment
//! inside its triangle and is joined by three proper arcs.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::canonical_order::{OrderError, OrderingState};
use crate::diagram::{
    faces_missing_spine, gap_arcs, gap_in_face, validate, ArcDiagram, Context, Credit, CreditLedger, DiagramError,
    Edge, Shape, StepRecord, Violation,
};
use crate::graph::{peel_degree_three, GraphError, PlaneTriangulation, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KleetopeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{0} is not the size of a Kleetope (3k - 4 with k >= 4)")]
    NotKleetopeSize(usize),
    #[error("two degree-3 vertices lie in face {0:?}")]
    SharedFace([Vertex; 3]),
    #[error("face {0:?} does not cross the spine")]
    FaceMissesSpine([Vertex; 3]),
    #[error("no proper arcs join {0} to face {1:?}")]
    NoProperPlacement(Vertex, [Vertex; 3]),
    #[error("diagram invalid after inserting {vertex:?}: {violations:?}")]
    Invalid { vertex: Option<Vertex>, violations: Vec<Violation> },
    #[error("step {} on {:?} spent {} but only {} is allowed", .0.kind, .0.vertices, .0.spend, .0.allowance)]
    OverBudget(StepRecord),
    #[error("bound violated: {0}")]
    Bound(String),
}

/// Both phases of the drawing, in the vertex ids of the input graph.
#[derive(Clone, Debug)]
pub struct Degree3Drawing {
    /// Final diagram of the whole graph.
    pub diagram: ArcDiagram,
    /// Diagram of `T` after the first phase.
    pub base: ArcDiagram,
    /// Inner faces of `T`.
    pub base_faces: Vec<[Vertex; 3]>,
    pub ledger: CreditLedger,
    /// Canonical ordering used for `T`.
    pub order: Vec<Vertex>,
    /// Number of removed degree-3 vertices.
    pub removed: usize,
}

/// `floor((n - 8) / 3)` for Kleetope sizes `n = 3k - 4`.
pub fn kleetope_bound(n: usize) -> Result<usize, KleetopeError> {
    if n < 8 || n % 3 != 2 {
        return Err(KleetopeError::NotKleetopeSize(n));
    }
    Ok((n - 8) / 3)
}

/// Draws `g` with at most `n - d - 4` down-up biarcs, `d` being the number
/// of degree-3 vertices (no two of which may be adjacent).
pub fn draw_degree3_aware(g: &PlaneTriangulation) -> Result<Degree3Drawing, KleetopeError> {
    let peeled = peel_degree_three(g)?;
    let old_of = &peeled.old_of;
    let step1 = draw_spine_crossing(&peeled.base)?;
    let base = step1.diagram.relabel(|v| old_of[v]);
    let base_faces: Vec<[Vertex; 3]> = inner_faces(&peeled.base).iter().map(|f| f.map(|v| old_of[v])).collect();
    let outer: [Vertex; 3] = peeled.base.outer_face().map(|v| old_of[v]);

    let mut d = base.clone();
    let mut used: Vec<[Vertex; 3]> = Vec::new();
    for &(x, f) in &peeled.removed {
        let f = f.map(|v| old_of[v]);
        let mut key = f;
        key.sort_unstable();
        if used.contains(&key) {
            return Err(KleetopeError::SharedFace(f));
        }
        used.push(key);
        d = place_in_face(&d, x, f, same_triangle(f, outer))?;
    }
    let n = g.n();
    if !d.has_exactly_edges(&g.edges()) {
        return Err(KleetopeError::Bound(String::from("diagram does not draw every edge of the graph")));
    }
    let rep = validate(&d, &Context::structural());
    if !rep.pass() {
        return Err(KleetopeError::Invalid { vertex: None, violations: rep.violations });
    }
    if d.biarc_count() != base.biarc_count() {
        return Err(KleetopeError::Bound(format!(
            "degree-3 phase changed the biarc count from {} to {}",
            base.biarc_count(),
            d.biarc_count()
        )));
    }
    let k = n - peeled.removed.len();
    if d.biarc_count() + 4 > k {
        return Err(KleetopeError::Bound(format!("{} biarcs for {} remaining vertices", d.biarc_count(), k)));
    }
    Ok(Degree3Drawing {
        diagram: d,
        base,
        base_faces,
        ledger: step1.ledger,
        order: step1.order.iter().map(|&v| old_of[v]).collect(),
        removed: peeled.removed.len(),
    })
}

fn same_triangle(a: [Vertex; 3], b: [Vertex; 3]) -> bool {
    a.iter().all(|v| b.contains(v))
}

fn inner_faces(t: &PlaneTriangulation) -> Vec<[Vertex; 3]> {
    let outer = t.outer_face();
    t.faces().into_iter().filter(|&f| !same_triangle(f, outer)).collect()
}

/// Puts `x` on the spine inside face `f` (right of everything for the outer
/// face) and joins it to the corners by proper arcs.
fn place_in_face(d: &ArcDiagram, x: Vertex, f: [Vertex; 3], outer: bool) -> Result<ArcDiagram, KleetopeError> {
    let slots: Vec<usize> = if outer {
        alloc::vec![d.len()]
    } else {
        gap_arcs(d)
            .iter()
            .enumerate()
            .filter(|(_, g)| g.is_some_and(|g| gap_in_face(g, f)))
            .map(|(i, _)| i + 1)
            .collect()
    };
    if slots.is_empty() {
        return Err(KleetopeError::FaceMissesSpine(f));
    }
    for &i in &slots {
        for mask in 0..8u32 {
            let mut e = d.clone();
            e.insert_vertex_at(i, x)?;
            for (b, &w) in f.iter().enumerate() {
                let s = if mask >> b & 1 == 0 { Shape::Mountain } else { Shape::Pocket };
                e.add_proper(w, x, s)?;
            }
            if e.is_planar() {
                return Ok(e);
            }
        }
    }
    Err(KleetopeError::NoProperPlacement(x, f))
}

/// Output of the first phase.
#[derive(Clone, Debug)]
pub struct SpineCrossing {
    pub diagram: ArcDiagram,
    pub ledger: CreditLedger,
    pub order: Vec<Vertex>,
}

/// Draws `t` with at most `k - 4` down-up biarcs such that every inner face
/// crosses the spine. Each vertex after `v3` pays at most one credit; the
/// two credits left on the outer mountains at `vk` are taken back at the end.
pub fn draw_spine_crossing(t: &PlaneTriangulation) -> Result<SpineCrossing, KleetopeError> {
    let k = t.n();
    let one = Credit::from_integer(1);
    let mut st = OrderingState::new(t);
    let [v1, v2, _] = t.outer_face();
    let v3 = st.path()[1];
    let mut d = ArcDiagram::new();
    for (i, v) in [v1, v3, v2].into_iter().enumerate() {
        d.insert_vertex_at(i, v)?;
    }
    d.pocket(v1, v3)?;
    d.mountain(v3, v2)?;
    d.pocket(v1, v2)?;
    let ctx = |st: &OrderingState<'_>| Context::extensible(st.path(), Credit::default()).without_i4();
    ctx(&st).normalize(&mut d);
    let mut ledger = CreditLedger::new(Credit::default(), Credit::default());
    ledger.record("klee-base", alloc::vec![v1, v2, v3], d.cost(), one).map_err(KleetopeError::OverBudget)?;
    let faces = inner_faces(t);
    check_step(&d, &ctx(&st), &st, &faces, None)?;

    while !st.is_complete() {
        let v = *st.eligible_set().iter().min().expect("an eligible vertex exists until complete");
        let nb = st.path_neighbors(v);
        let shapes: Vec<Option<Shape>> = nb.windows(2).map(|w| d.shape(Edge::new(w[0], w[1]))).collect();
        let kind = match shapes.iter().rposition(|&s| s == Some(Shape::Pocket)) {
            Some(j) => {
                into_pocket(&mut d, v, &nb, j)?;
                "klee-pocket"
            }
            None if st.i() + 1 == k => {
                last_outside(&mut d, v, &nb)?;
                "klee-last"
            }
            None => {
                over_mountains(&mut d, v, &nb)?;
                "klee-mountain"
            }
        };
        st.advance_mut(v)?;
        let mut c = ctx(&st);
        // with `vk` right of `v2` the lower envelope is no longer `v1 v2`
        c.check_i5 = kind != "klee-last";
        c.normalize(&mut d);
        check_step(&d, &c, &st, &faces, Some(v))?;
        ledger.record(kind, alloc::vec![v], d.cost(), one).map_err(KleetopeError::OverBudget)?;
    }
    // the finished diagram only needs credits on its biarcs
    let biarcs = Credit::from_integer(d.biarc_count() as i64);
    let reclaimed = d.cost() - biarcs;
    ledger
        .record("klee-reclaim", Vec::new(), biarcs, -reclaimed)
        .map_err(KleetopeError::OverBudget)?;
    if k >= 4 && d.biarc_count() + 4 > k {
        return Err(KleetopeError::Bound(format!("{} biarcs for k = {k}", d.biarc_count())));
    }
    Ok(SpineCrossing { diagram: d, ledger, order: st.placed().to_vec() })
}

fn check_step(
    d: &ArcDiagram,
    ctx: &Context,
    st: &OrderingState<'_>,
    faces: &[[Vertex; 3]],
    vertex: Option<Vertex>,
) -> Result<(), KleetopeError> {
    let rep = validate(d, ctx);
    if !rep.pass() {
        return Err(KleetopeError::Invalid { vertex, violations: rep.violations });
    }
    let drawn: Vec<[Vertex; 3]> = faces.iter().copied().filter(|f| f.iter().all(|&v| st.is_placed(v))).collect();
    if let Some(&f) = faces_missing_spine(d, &drawn).first() {
        return Err(KleetopeError::FaceMissesSpine(f));
    }
    Ok(())
}

/// `v` goes into the rightmost covered pocket `c_j c_{j+1}`. Edges to the
/// left become mountains (covered mountains there are pushed down), the edge
/// to `c_{j+1}` a pocket, the edge to the rightmost neighbour a mountain and
/// the edges in between biarcs crossing just right of `v`.
fn into_pocket(d: &mut ArcDiagram, v: Vertex, nb: &[Vertex], j: usize) -> Result<(), KleetopeError> {
    for m in 0..j {
        if d.shape(Edge::new(nb[m], nb[m + 1])) == Some(Shape::Mountain) {
            d.push_down_at(nb[m]);
        }
    }
    d.insert_vertex_at(d.vpos(nb[j]) + 1, v)?;
    for &w in &nb[..=j] {
        d.mountain(w, v)?;
    }
    d.pocket(v, nb[j + 1])?;
    right_side(d, v, &nb[j + 1..])
}

/// Every covered edge is a mountain: the leftmost one is pushed down and
/// `v` goes right after its left end, joined to it by a pocket.
fn over_mountains(d: &mut ArcDiagram, v: Vertex, nb: &[Vertex]) -> Result<(), KleetopeError> {
    d.push_down_at(nb[0]);
    d.insert_vertex_at(d.vpos(nb[0]) + 1, v)?;
    d.pocket(nb[0], v)?;
    right_side(d, v, nb)
}

/// The last vertex when every covered edge is a mountain: `v` goes right of
/// `v2`, joined to it by a pocket and to the other neighbours by mountains.
/// Every covered mountain except the one at `v2` is pushed down; the credit
/// on that one is never spent.
fn last_outside(d: &mut ArcDiagram, v: Vertex, nb: &[Vertex]) -> Result<(), KleetopeError> {
    let last = nb.len() - 1;
    for m in 0..last - 1 {
        d.push_down_at(nb[m]);
    }
    d.insert_vertex_at(d.len(), v)?;
    for &w in &nb[..last] {
        d.mountain(w, v)?;
    }
    d.pocket(nb[last], v)?;
    Ok(())
}

/// Edges from `v` to `nb[1..]`: biarcs to all but the last, which gets a
/// mountain. Later biarcs cross closer to `v` so that they nest.
fn right_side(d: &mut ArcDiagram, v: Vertex, nb: &[Vertex]) -> Result<(), KleetopeError> {
    if nb.len() < 2 {
        return Ok(());
    }
    let last = nb.len() - 1;
    for &w in &nb[1..last] {
        d.add_biarc(v, w, d.vpos(v) + 1)?;
    }
    d.mountain(v, nb[last])?;
    Ok(())
}
