//! Planar 3-trees: proper arc diagrams when no face of the face tree has
//! three subdivided children, and drawings with at most `3(n-3)/4` down-up
//! biarcs in general.
//!
//! Both algorithms replay a construction sequence. The general one keeps a
//! descriptor for every face that still has to receive its vertex: the roles
//! `u, v, w` (spine order `u < v < w`, or reversed when the face is drawn
//! turned by 180 degrees), and the charge set aside for redrawing the belly
//! `vw` as a biarc. Biarcs are paid for by charges on the vertices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{
    credit, gap_arcs, validate, ArcDiagram, Context, Credit, CreditLedger, DiagramError, Edge, Item, Shape,
    Violation,
};
use crate::graph::{ConstructionSequence, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThreeTreeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("face {0:?} has grand-degree 3")]
    GdTooHigh([Vertex; 3]),
    #[error("{gd0} gd-0 vertices cannot cover {slots} preferred-ancestor slots")]
    InsufficientGd0 { gd0: usize, slots: usize },
    #[error("case not matched: {0}")]
    CaseNotMatched(String),
    #[error("{rule} violated after placing {vertex}: {detail}")]
    Invariant { rule: &'static str, vertex: Vertex, detail: String },
    #[error("diagram invalid after placing {vertex:?}: {violations:?}")]
    Invalid { vertex: Option<Vertex>, violations: Vec<Violation> },
    #[error("bound violated: {0}")]
    Bound(String),
}

fn key(f: [Vertex; 3]) -> [Vertex; 3] {
    let mut k = f;
    k.sort_unstable();
    k
}

/// The dual tree of all faces that ever occur while replaying a
/// construction sequence. Node 0 is the base triangle; a node's children
/// are the three faces created by its face vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTree {
    /// Faces as sorted vertex triples.
    pub nodes: Vec<[Vertex; 3]>,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Option<[usize; 3]>>,
    /// The vertex stacked into the face, if any.
    pub face_vertex: Vec<Option<Vertex>>,
    /// Number of children that receive a vertex themselves.
    pub grand_degree: Vec<u8>,
    /// For every vertex, the node it is stacked into (`None` for the base).
    pub face_of: Vec<Option<usize>>,
    index: BTreeMap<[Vertex; 3], usize>,
}

impl FaceTree {
    pub fn root(&self) -> usize {
        0
    }

    pub fn node(&self, f: [Vertex; 3]) -> Option<usize> {
        self.index.get(&key(f)).copied()
    }

    /// Grand-degree of the face `v` is stacked into.
    pub fn vertex_gd(&self, v: Vertex) -> Option<u8> {
        self.face_of.get(v).copied().flatten().map(|f| self.grand_degree[f])
    }

    /// Nodes with a face vertex, parents before children, children in
    /// creation order.
    pub fn pre_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self.root()];
        while let Some(f) = stack.pop() {
            if self.face_vertex[f].is_none() {
                continue;
            }
            out.push(f);
            if let Some(cs) = self.children[f] {
                stack.extend(cs.iter().rev());
            }
        }
        out
    }

    /// Number of faces with a face vertex and grand-degree `g`.
    pub fn count_gd(&self, g: u8) -> usize {
        (0..self.nodes.len()).filter(|&f| self.face_vertex[f].is_some() && self.grand_degree[f] == g).count()
    }

    /// Face vertices of grand-degree 0 faces, in pre-order.
    pub fn gd0_vertices(&self) -> Vec<Vertex> {
        self.pre_order().into_iter().filter(|&f| self.grand_degree[f] == 0).filter_map(|f| self.face_vertex[f]).collect()
    }
}

pub fn build_face_tree(seq: &ConstructionSequence) -> Result<FaceTree, ThreeTreeError> {
    seq.check()?;
    let n = seq.n();
    let mut t = FaceTree {
        nodes: vec![key(seq.base)],
        parent: vec![None],
        children: vec![None],
        face_vertex: vec![None],
        grand_degree: Vec::new(),
        face_of: vec![None; n],
        index: BTreeMap::new(),
    };
    t.index.insert(key(seq.base), 0);
    for &(x, [p, q, r]) in &seq.steps {
        let f = t.index[&key([p, q, r])];
        t.face_vertex[f] = Some(x);
        t.face_of[x] = Some(f);
        let mut cs = [0; 3];
        for (i, c) in [[p, q, x], [q, r, x], [r, p, x]].into_iter().enumerate() {
            cs[i] = t.nodes.len();
            t.index.insert(key(c), t.nodes.len());
            t.nodes.push(key(c));
            t.parent.push(Some(f));
            t.children.push(None);
            t.face_vertex.push(None);
        }
        t.children[f] = Some(cs);
    }
    t.grand_degree = (0..t.nodes.len())
        .map(|f| t.children[f].map_or(0, |cs| cs.iter().filter(|&&c| t.face_vertex[c].is_some()).count() as u8))
        .collect();
    Ok(t)
}

/// Maps every gd-0 vertex to a gd-2 or gd-3 vertex such that each gd-2
/// vertex is hit at least once and each gd-3 vertex at least twice. Slots
/// are filled in pre-order; surplus gd-0 vertices go to the last slot.
/// Empty if there is no gd-2 or gd-3 vertex.
pub fn preferred_ancestor_map(t: &FaceTree) -> Result<BTreeMap<Vertex, Vertex>, ThreeTreeError> {
    let mut slots: Vec<Vertex> = Vec::new();
    for f in t.pre_order() {
        let x = t.face_vertex[f].expect("pre-order visits faces with a vertex");
        match t.grand_degree[f] {
            2 => slots.push(x),
            3 => slots.extend([x, x]),
            _ => {}
        }
    }
    let gd0 = t.gd0_vertices();
    if gd0.len() < slots.len() {
        return Err(ThreeTreeError::InsufficientGd0 { gd0: gd0.len(), slots: slots.len() });
    }
    let Some(&last) = slots.last() else { return Ok(BTreeMap::new()) };
    Ok(gd0.iter().enumerate().map(|(i, &z)| (z, slots.get(i).copied().unwrap_or(last))).collect())
}

/// Whether face `abc` is a drop: its two short edges are proper arcs on
/// different sides of the spine and its long edge is proper too.
pub fn is_drop(d: &ArcDiagram, f: [Vertex; 3]) -> bool {
    let mut f = f;
    f.sort_by_key(|&v| d.vpos(v));
    let [a, b, c] = f;
    let (ab, bc, ac) = (d.shape_of(a, b), d.shape_of(b, c), d.shape_of(a, c));
    match (ab, bc, ac) {
        (Some(s), Some(t), Some(l)) => s.is_proper() && t.is_proper() && l.is_proper() && s != t,
        _ => false,
    }
}

fn initial_triangle(base: [Vertex; 3], shapes: [Shape; 3]) -> Result<ArcDiagram, ThreeTreeError> {
    let [a, b, c] = base;
    let mut d = ArcDiagram::new();
    for (i, v) in base.into_iter().enumerate() {
        d.insert_vertex_at(i, v)?;
    }
    d.add_proper(a, b, shapes[0])?;
    d.add_proper(b, c, shapes[1])?;
    d.add_proper(a, c, shapes[2])?;
    Ok(d)
}

fn check_final(seq: &ConstructionSequence, d: &ArcDiagram) -> Result<(), ThreeTreeError> {
    let g = seq.replay()?;
    if !d.has_exactly_edges(&g.edges()) {
        return Err(ThreeTreeError::CaseNotMatched(String::from("drawn edges differ from the 3-tree")));
    }
    let rep = validate(d, &Context::structural());
    if !rep.pass() {
        return Err(ThreeTreeError::Invalid { vertex: None, violations: rep.violations });
    }
    Ok(())
}

/// A proper arc diagram of a 3-tree whose face tree has grand-degree at
/// most 2 everywhere. Every face that receives a vertex is a drop when it
/// does.
pub fn draw_3tree_gd2(seq: &ConstructionSequence) -> Result<ArcDiagram, ThreeTreeError> {
    let t = build_face_tree(seq)?;
    if let Some(f) = (0..t.nodes.len()).find(|&f| t.grand_degree[f] == 3) {
        return Err(ThreeTreeError::GdTooHigh(t.nodes[f]));
    }
    let mut d = initial_triangle(seq.base, [Shape::Mountain, Shape::Pocket, Shape::Mountain])?;
    const SHAPES: [Shape; 2] = [Shape::Mountain, Shape::Pocket];
    for &(x, f) in &seq.steps {
        let node = t.face_of[x].expect("stacked vertex has a face");
        if !is_drop(&d, f) {
            return Err(ThreeTreeError::CaseNotMatched(format!("face {f:?} of {x} is not a drop")));
        }
        let arcs = gap_arcs(&d);
        let [a, b, c] = f;
        let es = [Edge::new(a, b), Edge::new(b, c), Edge::new(c, a)];
        let g = arcs
            .iter()
            .position(|g| g.is_some_and(|(p, q)| p != q && es.contains(&p) && es.contains(&q)))
            .ok_or_else(|| ThreeTreeError::CaseNotMatched(format!("face {f:?} meets no spine gap")))?;
        let inner: Vec<[Vertex; 3]> = t.children[node]
            .expect("stacked face has children")
            .iter()
            .filter(|&&c| t.face_vertex[c].is_some())
            .map(|&c| t.nodes[c])
            .collect();
        let mut found = None;
        'combos: for sa in SHAPES {
            for sb in SHAPES {
                for sc in SHAPES {
                    let mut e = d.clone();
                    e.insert_vertex_at(g + 1, x)?;
                    e.add_proper(x, a, sa)?;
                    e.add_proper(x, b, sb)?;
                    e.add_proper(x, c, sc)?;
                    if e.is_planar() && inner.iter().all(|&h| is_drop(&e, h)) {
                        found = Some(e);
                        break 'combos;
                    }
                }
            }
        }
        d = found.ok_or_else(|| ThreeTreeError::CaseNotMatched(format!("no drop placement for {x} in {f:?}")))?;
    }
    check_final(seq, &d)?;
    if d.biarc_count() != 0 {
        return Err(ThreeTreeError::Bound(format!("{} biarcs in a gd<=2 drawing", d.biarc_count())));
    }
    Ok(d)
}

/// An active face with its roles. Unturned, the spine order is `u, v, w`,
/// the edge `uw` bounds the face from above and the face meets the spine
/// between `u` and `v` just above `uv`. Turned, everything is rotated by
/// 180 degrees. `vw` is the belly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ottifant {
    pub u: Vertex,
    pub v: Vertex,
    pub w: Vertex,
    pub turned: bool,
    /// Charge set aside for redrawing the belly as a biarc.
    pub reserve: Credit,
}

impl Ottifant {
    fn same(&self, u: Vertex, v: Vertex, w: Vertex) -> Ottifant {
        Ottifant { u, v, w, turned: self.turned, reserve: Credit::default() }
    }

    fn opposite(&self, u: Vertex, v: Vertex, w: Vertex) -> Ottifant {
        Ottifant { u, v, w, turned: !self.turned, reserve: Credit::default() }
    }

    pub fn set(&self) -> [Vertex; 3] {
        key([self.u, self.v, self.w])
    }

    pub fn belly(&self) -> Edge {
        Edge::new(self.v, self.w)
    }

    /// Whether the top boundary `uw` is a proper arc treated as a biarc.
    pub fn relaxed_top(&self, d: &ArcDiagram) -> bool {
        d.shape_of(self.u, self.w).is_some_and(Shape::is_proper)
    }
}

/// Whether `o` describes an ottifant-shaped face of `d`. `arcs` is
/// `gap_arcs(d)`.
pub fn is_ottifant(d: &ArcDiagram, arcs: &[Option<(Edge, Edge)>], o: &Ottifant) -> bool {
    let (uw, uv) = (Edge::new(o.u, o.w), Edge::new(o.u, o.v));
    let (Some(su), Some(sv)) = (d.shape(uw), d.shape(uv)) else { return false };
    if d.shape(o.belly()).is_none() {
        return false;
    }
    let (pu, pv, pw) = (d.vpos(o.u), d.vpos(o.v), d.vpos(o.w));
    let (top, side) = if o.turned { (Shape::Pocket, Shape::Mountain) } else { (Shape::Mountain, Shape::Pocket) };
    let shapes_ok = matches!(su, Shape::Biarc) || su == top;
    let shapes_ok = shapes_ok && (matches!(sv, Shape::Biarc) || sv == side);
    if !shapes_ok {
        return false;
    }
    if o.turned {
        pw < pv && pv < pu && (pv..pu).any(|g| arcs[g] == Some((uv, uw)))
    } else {
        pu < pv && pv < pw && (pu..pv).any(|g| arcs[g] == Some((uw, uv)))
    }
}

/// Runs `f` on `d` seen in the frame of a face: turned by 180 degrees if
/// the face is.
fn in_frame<R>(d: &mut ArcDiagram, turned: bool, f: impl FnOnce(&mut ArcDiagram) -> R) -> R {
    if turned {
        *d = d.rotated_pi();
    }
    let r = f(d);
    if turned {
        *d = d.rotated_pi();
    }
    r
}

/// Insertion index of the gap where the face meets the spine, in the face's
/// own frame.
fn slot(d: &ArcDiagram, o: &Ottifant) -> Option<usize> {
    let arcs = gap_arcs(d);
    let (uw, uv) = (Edge::new(o.u, o.w), Edge::new(o.u, o.v));
    (d.vpos(o.u)..d.vpos(o.v)).find(|&g| arcs[g] == Some((uw, uv))).map(|g| g + 1)
}

/// Redraws the belly as a down-up biarc, in the face's own frame. A
/// mountain belly takes every mountain from `v` below it along (crossings
/// right of `v`), a pocket belly every pocket into `w` below it (crossings
/// left of `w`). Returns the number of new biarcs.
fn transform_belly(d: &mut ArcDiagram, o: &Ottifant) -> Result<usize, ThreeTreeError> {
    let (v, w) = (o.v, o.w);
    let (pv, pw) = (d.vpos(v), d.vpos(w));
    let moved = match d.shape_of(v, w) {
        Some(Shape::Biarc) => return Ok(0),
        Some(Shape::Mountain) => {
            let ms: Vec<Edge> = d.mountains_from(v).into_iter().filter(|e| d.vpos(e.other(v)) <= pw).collect();
            for (k, &e) in ms.iter().enumerate() {
                d.to_biarc(e, d.vpos(v) + 1 + k)?;
            }
            ms.len()
        }
        Some(Shape::Pocket) => {
            let mut ps: Vec<(usize, Edge)> = d
                .edges()
                .filter(|&(e, s)| s == Shape::Pocket && e.has(w))
                .map(|(e, _)| (d.vpos(e.other(w)), e))
                .filter(|&(p, _)| pv <= p && p < pw)
                .collect();
            ps.sort_by(|a, b| b.0.cmp(&a.0));
            for &(_, e) in &ps {
                d.to_biarc(e, d.vpos(w))?;
            }
            ps.len()
        }
        _ => {
            return Err(ThreeTreeError::CaseNotMatched(format!("belly {v}{w} cannot be made a down-up biarc")));
        }
    };
    if !d.is_planar() {
        return Err(ThreeTreeError::CaseNotMatched(format!("redrawing belly {v}{w} is not planar")));
    }
    Ok(moved)
}

/// Cost of redrawing the belly of `o` as a biarc, if that is possible.
pub fn belly_cost(d: &ArcDiagram, o: &Ottifant) -> Option<usize> {
    let mut e = d.clone();
    in_frame(&mut e, o.turned, |e| transform_belly(e, o)).ok()
}

/// Whether the belly is a mountain in the face's frame.
fn mountain_belly(d: &ArcDiagram, o: &Ottifant) -> bool {
    let want = if o.turned { Shape::Pocket } else { Shape::Mountain };
    d.shape(o.belly()) == Some(want)
}

/// How the edge from a new vertex `x` to `v` is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ToV {
    Mountain,
    Biarc,
    Pocket,
}

/// Puts `x` into the face: `ux` a pocket, `xw` a mountain and `xv` as
/// given. Returns the child faces that are ottifant-shaped by construction.
fn place(d: &mut ArcDiagram, o: &Ottifant, x: Vertex, to_v: ToV) -> Result<Vec<Ottifant>, ThreeTreeError> {
    let (u, v, w) = (o.u, o.v, o.w);
    in_frame(d, o.turned, |d| -> Result<(), ThreeTreeError> {
        let i = slot(d, o).ok_or_else(|| ThreeTreeError::CaseNotMatched(format!("face {:?} meets no spine gap", o.set())))?;
        d.insert_vertex_at(i, x)?;
        d.pocket(u, x)?;
        d.mountain(x, w)?;
        match to_v {
            ToV::Mountain => d.mountain(x, v)?,
            ToV::Pocket => d.pocket(x, v)?,
            ToV::Biarc => d.add_biarc(x, v, i + 1)?,
        };
        Ok(())
    })?;
    let mut inner = o.same(x, v, w);
    inner.reserve = o.reserve;
    Ok(match to_v {
        ToV::Mountain => vec![o.same(u, x, w), o.opposite(v, x, u)],
        ToV::Biarc => vec![o.same(u, x, w), o.opposite(v, x, u), inner],
        ToV::Pocket => vec![o.same(u, x, w), inner],
    })
}

/// The belly goes down first; then `x` joins `u, v, w` and `y` (right of
/// `v`, below the belly's crossing) joins `x, v, w`, all by proper arcs.
fn place_around_belly(d: &mut ArcDiagram, o: &Ottifant, x: Vertex, y: Vertex) -> Result<(usize, Vec<Ottifant>), ThreeTreeError> {
    let (u, v, w) = (o.u, o.v, o.w);
    let cost = in_frame(d, o.turned, |d| -> Result<usize, ThreeTreeError> {
        let cost = transform_belly(d, o)?;
        let i = slot(d, o).ok_or_else(|| ThreeTreeError::CaseNotMatched(format!("face {:?} meets no spine gap", o.set())))?;
        d.insert_vertex_at(i, x)?;
        d.pocket(u, x)?;
        d.mountain(x, v)?;
        d.mountain(x, w)?;
        let c = d.pos(Item::Crossing(o.belly())).expect("belly is a biarc");
        for j in d.vpos(v) + 1..=c {
            let mut e = d.clone();
            e.insert_vertex_at(j, y)?;
            e.pocket(v, y)?;
            e.mountain(y, w)?;
            e.mountain(x, y)?;
            if e.is_planar() {
                *d = e;
                return Ok(cost);
            }
        }
        Err(ThreeTreeError::CaseNotMatched(format!("no place for {y} between {v} and the belly crossing")))
    })?;
    Ok((cost, vec![o.opposite(w, y, v)]))
}

/// Charges with the rights they were granted under.
#[derive(Clone, Debug, Default)]
struct Charges {
    ch: BTreeMap<Vertex, Credit>,
    by_parent: BTreeMap<Vertex, Credit>,
    by_preferred: BTreeMap<Vertex, Credit>,
}

impl Charges {
    fn add(&mut self, v: Vertex, c: Credit) {
        *self.ch.entry(v).or_default() += c;
    }

    fn total(&self) -> Credit {
        self.ch.values().copied().sum()
    }
}

/// Result of [`draw_3tree`].
#[derive(Clone, Debug)]
pub struct ThreeTreeDrawing {
    pub diagram: ArcDiagram,
    pub tree: FaceTree,
    pub preferred: BTreeMap<Vertex, Vertex>,
    /// Final charge of every charged vertex.
    pub charges: BTreeMap<Vertex, Credit>,
    /// Per step: new balance is biarcs plus reserves, allowance is the
    /// charge assigned in the step.
    pub ledger: CreditLedger,
    /// How often each case was used.
    pub cases: BTreeMap<&'static str, usize>,
}

/// `floor(3(n - 3) / 4)`.
pub fn three_tree_bound(n: usize) -> usize {
    3 * n.saturating_sub(3) / 4
}

struct Run<'t> {
    t: &'t FaceTree,
    pref: &'t BTreeMap<Vertex, Vertex>,
    d: ArcDiagram,
    active: BTreeMap<usize, Ottifant>,
    placed: BTreeSet<Vertex>,
    charges: Charges,
    ledger: CreditLedger,
    cases: BTreeMap<&'static str, usize>,
}

impl Run<'_> {
    fn node(&self, f: [Vertex; 3]) -> usize {
        self.t.node(f).expect("child faces are tree nodes")
    }

    fn has_vertex(&self, f: usize) -> bool {
        self.t.face_vertex[f].is_some()
    }

    fn take(&mut self, x: Vertex) -> Result<(usize, Ottifant), ThreeTreeError> {
        let f = self.t.face_of[x].expect("stacked vertex has a face");
        let o = self
            .active
            .remove(&f)
            .ok_or_else(|| ThreeTreeError::CaseNotMatched(format!("face {:?} of {x} has no descriptor", self.t.nodes[f])))?;
        Ok((f, o))
    }

    /// Registers the children of `f` after its vertex was drawn. Every child
    /// that will receive a vertex must be among `shaped`.
    fn settle(&mut self, f: usize, x: Vertex, shaped: Vec<Ottifant>) -> Result<(), ThreeTreeError> {
        self.placed.insert(x);
        for c in self.t.children[f].expect("stacked face has children") {
            if !self.has_vertex(c) {
                continue;
            }
            let o = shaped.iter().find(|o| o.set() == self.t.nodes[c]).ok_or_else(|| {
                ThreeTreeError::CaseNotMatched(format!("active face {:?} is not ottifant-shaped", self.t.nodes[c]))
            })?;
            self.active.insert(c, *o);
        }
        Ok(())
    }

    fn draw(&mut self, x: Vertex, to_v: ToV) -> Result<usize, ThreeTreeError> {
        let (f, o) = self.take(x)?;
        let shaped = place(&mut self.d, &o, x, to_v)?;
        self.settle(f, x, shaped)?;
        Ok(f)
    }

    /// The only child of `f` that receives a vertex.
    fn active_child(&self, f: usize) -> Result<usize, ThreeTreeError> {
        let cs = self.t.children[f].expect("stacked face has children");
        cs.into_iter()
            .find(|&c| self.has_vertex(c))
            .ok_or_else(|| ThreeTreeError::CaseNotMatched(format!("face {:?} has no active child", self.t.nodes[f])))
    }

    fn set_reserve(&mut self, f: [Vertex; 3], r: Credit) {
        if let Some(o) = self.active.get_mut(&self.node(f)) {
            o.reserve = r;
        }
    }

    /// Gives `amount` to a gd-0 vertex whose preferred ancestor is `x`.
    fn charge_preferred(&mut self, x: Vertex, amount: Credit) -> Result<Vertex, ThreeTreeError> {
        let half = credit(1, 2);
        let z = self
            .pref
            .iter()
            .filter(|&(_, &p)| p == x)
            .map(|(&z, _)| z)
            .find(|z| self.charges.by_preferred.get(z).copied().unwrap_or_default() + amount <= half)
            .ok_or_else(|| ThreeTreeError::CaseNotMatched(format!("no gd-0 vertex left to charge for {x}")))?;
        *self.charges.by_preferred.entry(z).or_default() += amount;
        self.charges.add(z, amount);
        Ok(z)
    }

    fn charge_parent(&mut self, y: Vertex, amount: Credit) -> Result<(), ThreeTreeError> {
        let used = self.charges.by_parent.entry(y).or_default();
        *used += amount;
        if *used > credit(1, 4) {
            return Err(ThreeTreeError::Invariant {
                rule: "parent right",
                vertex: y,
                detail: format!("parent charged {used}"),
            });
        }
        self.charges.add(y, amount);
        Ok(())
    }

    /// Places the vertex of the face `x` is stacked into, and possibly the
    /// vertex of its single active child. Returns the case and the vertices.
    fn step(&mut self, x: Vertex) -> Result<(&'static str, Vec<Vertex>, Credit), ThreeTreeError> {
        let f = self.t.face_of[x].expect("stacked vertex has a face");
        let o = *self
            .active
            .get(&f)
            .ok_or_else(|| ThreeTreeError::CaseNotMatched(format!("face {:?} of {x} is not active", self.t.nodes[f])))?;
        let (q, h, t) = (credit(1, 4), credit(1, 2), credit(3, 4));
        let before = self.charges.total();
        let (kind, verts) = match self.t.grand_degree[f] {
            0 => {
                self.draw(x, ToV::Mountain)?;
                ("gd0", vec![x])
            }
            2 | 3 => {
                self.draw(x, ToV::Biarc)?;
                self.charges.add(x, t);
                self.charge_preferred(x, q)?;
                ("gd2", vec![x])
            }
            _ => {
                let a = self.active_child(f)?;
                let y = self.t.face_vertex[a].expect("active child has a vertex");
                let set = self.t.nodes[a];
                let ga = self.t.grand_degree[a];
                if set == key([o.u, o.v, x]) {
                    self.draw(x, ToV::Mountain)?;
                    ("gd1-uvx", vec![x])
                } else if set == key([o.u, x, o.w]) {
                    match ga {
                        0 => {
                            self.draw(x, ToV::Mountain)?;
                            self.draw(y, ToV::Mountain)?;
                            ("gd1-uxw-0", vec![x, y])
                        }
                        1 => {
                            self.draw(x, ToV::Biarc)?;
                            let b = self.active_child(a)?;
                            let to_x = if self.t.nodes[b] == key([o.u, x, y]) { ToV::Mountain } else { ToV::Pocket };
                            self.draw(y, to_x)?;
                            self.charges.add(x, h);
                            self.charges.add(y, h);
                            ("gd1-uxw-1", vec![x, y])
                        }
                        _ => {
                            self.draw(x, ToV::Mountain)?;
                            self.draw(y, ToV::Biarc)?;
                            self.set_reserve([y, x, o.w], h);
                            self.charges.add(x, t);
                            self.charges.add(y, t);
                            ("gd1-uxw-2", vec![x, y])
                        }
                    }
                } else if set == key([x, o.v, o.w]) {
                    match ga {
                        0 => {
                            self.draw(x, ToV::Biarc)?;
                            self.draw(y, ToV::Mountain)?;
                            self.charges.add(x, t);
                            self.charge_parent(y, q)?;
                            ("gd1-xvw-0", vec![x, y])
                        }
                        1 => {
                            let b = self.t.nodes[self.active_child(a)?];
                            if b == key([y, o.v, o.w]) {
                                let (_, oo) = self.take(x)?;
                                let (_, shaped) = place_around_belly(&mut self.d, &oo, x, y)?;
                                self.placed.insert(x);
                                self.settle(a, y, shaped)?;
                                self.charges.add(x, t);
                                self.charges.add(y, t);
                                ("gd1-xvw-yvw", vec![x, y])
                            } else {
                                self.draw(x, ToV::Biarc)?;
                                self.draw(y, ToV::Mountain)?;
                                if b == key([x, y, o.w]) {
                                    self.set_reserve(b, h);
                                    self.charges.add(x, t);
                                    self.charges.add(y, t);
                                    ("gd1-xvw-xyw", vec![x, y])
                                } else {
                                    self.charges.add(x, h);
                                    self.charges.add(y, h);
                                    ("gd1-xvw-xvy", vec![x, y])
                                }
                            }
                        }
                        _ => {
                            self.draw(x, ToV::Biarc)?;
                            self.draw(y, ToV::Biarc)?;
                            self.charges.add(x, t);
                            self.charges.add(y, t);
                            self.charge_preferred(y, h)?;
                            ("gd1-xvw-2", vec![x, y])
                        }
                    }
                } else {
                    return Err(ThreeTreeError::CaseNotMatched(format!("active child {set:?} of {:?}", self.t.nodes[f])));
                }
            }
        };
        Ok((kind, verts, self.charges.total() - before))
    }

    fn reserves(&self) -> Credit {
        self.active.values().map(|o| o.reserve).sum()
    }

    /// Planarity, down-up biarcs and the four drawing invariants.
    fn check(&self, x: Vertex, touched: &BTreeSet<Vertex>) -> Result<(), ThreeTreeError> {
        let rep = validate(&self.d, &Context::structural());
        if !rep.pass() {
            return Err(ThreeTreeError::Invalid { vertex: Some(x), violations: rep.violations });
        }
        let arcs = gap_arcs(&self.d);
        let bad = |rule, detail| ThreeTreeError::Invariant { rule, vertex: x, detail };
        for o in self.active.values() {
            if !is_ottifant(&self.d, &arcs, o) {
                return Err(bad("O1", format!("face {o:?} is not ottifant-shaped")));
            }
            if mountain_belly(&self.d, o) && (touched.contains(&o.v) || touched.contains(&o.w)) {
                let ok = belly_cost(&self.d, o).is_some_and(|c| Credit::from_integer(c as i64) - o.reserve <= credit(3, 2));
                if !ok {
                    return Err(bad("O2", format!("belly of {o:?} is not transformable")));
                }
            }
        }
        let need = Credit::from_integer(self.d.biarc_count() as i64) + self.reserves();
        if self.charges.total() < need {
            return Err(bad("O3", format!("charges {} below biarcs plus reserves {need}", self.charges.total())));
        }
        if let Some((v, c)) = self.charges.ch.iter().find(|(_, &c)| c > credit(3, 4)) {
            return Err(bad("O4", format!("ch({v}) = {c}")));
        }
        Ok(())
    }
}

/// Draws a planar 3-tree with at most `floor(3(n-3)/4)` biarcs, all down-up.
/// Without a gd-3 face the proper drawing of [`draw_3tree_gd2`] is returned
/// (no charges, one ledger step); otherwise [`draw_3tree_ottifant`] runs.
pub fn draw_3tree(seq: &ConstructionSequence) -> Result<ThreeTreeDrawing, ThreeTreeError> {
    let t = build_face_tree(seq)?;
    if t.count_gd(3) > 0 {
        return draw_3tree_ottifant(seq);
    }
    let d = draw_3tree_gd2(seq)?;
    let mut ledger = CreditLedger::new(Credit::default(), Credit::default());
    let _ = ledger.record("proper", seq.steps.iter().map(|s| s.0).collect(), Credit::default(), Credit::default());
    let cases = BTreeMap::from([("proper", 1)]);
    Ok(ThreeTreeDrawing { diagram: d, tree: t, preferred: BTreeMap::new(), charges: BTreeMap::new(), ledger, cases })
}

/// The charging construction: active faces are kept ottifant-shaped and
/// every biarc is paid by charges of at most 3/4 per vertex. O1 to O4 are
/// checked after every step. Works for every 3-tree, including those
/// without gd-3 faces, where it may still draw biarcs.
pub fn draw_3tree_ottifant(seq: &ConstructionSequence) -> Result<ThreeTreeDrawing, ThreeTreeError> {
    let t = build_face_tree(seq)?;
    let pref = preferred_ancestor_map(&t)?;
    let d = initial_triangle(seq.base, [Shape::Pocket, Shape::Pocket, Shape::Mountain])?;
    let [a, b, c] = seq.base;
    let mut run = Run {
        t: &t,
        pref: &pref,
        d,
        active: BTreeMap::new(),
        placed: seq.base.into_iter().collect(),
        charges: Charges::default(),
        ledger: CreditLedger::new(Credit::default(), Credit::default()),
        cases: BTreeMap::new(),
    };
    if t.face_vertex[0].is_some() {
        run.active.insert(0, Ottifant { u: a, v: b, w: c, turned: false, reserve: Credit::default() });
    }
    for &(x, _) in &seq.steps {
        if run.placed.contains(&x) {
            continue;
        }
        let edges_before: BTreeMap<Edge, Shape> = run.d.edges().collect();
        let (kind, verts, assigned) = run.step(x)?;
        *run.cases.entry(kind).or_default() += 1;
        let mut touched: BTreeSet<Vertex> = BTreeSet::new();
        for (e, s) in run.d.edges() {
            if edges_before.get(&e) != Some(&s) {
                touched.extend([e.0, e.1]);
            }
        }
        run.check(x, &touched)?;
        let balance = Credit::from_integer(run.d.biarc_count() as i64) + run.reserves();
        if let Err(rec) = run.ledger.record(kind, verts, balance, assigned) {
            return Err(ThreeTreeError::Invariant {
                rule: "O3",
                vertex: x,
                detail: format!("step {} spent {} with {} assigned", rec.kind, rec.spend, rec.allowance),
            });
        }
    }
    check_final(seq, &run.d)?;
    let n = seq.n();
    if run.d.biarc_count() > three_tree_bound(n) {
        return Err(ThreeTreeError::Bound(format!("{} biarcs > floor(3(n-3)/4) = {}", run.d.biarc_count(), three_tree_bound(n))));
    }
    if run.d.edges().any(|(_, s)| s == Shape::BiarcUpDown) {
        return Err(ThreeTreeError::Bound(String::from("an up-down biarc was drawn")));
    }
    let Run { d, charges, ledger, cases, .. } = run;
    Ok(ThreeTreeDrawing { diagram: d, tree: t.clone(), preferred: pref.clone(), charges: charges.ch, ledger, cases })
}
