//! Arc diagrams: a spine of vertices and crossing points, and edges drawn as
//! mountains, pockets or down-up biarcs.
//!
//! Spine positions are implicit (the order of [`Item`]s). A biarc owns exactly
//! one [`Item::Crossing`] on the spine; its lower half runs from the left
//! endpoint to the crossing and its upper half from the crossing to the right
//! endpoint.

mod envelope;
mod geometry;
mod ledger;
mod primitives;
mod validate;

pub use envelope::{envelope, upper_envelope_path, EnvElem, Side};
pub use geometry::semicircle_conflict;
pub use ledger::{CreditLedger, StepRecord};
pub use primitives::{
    insert_vertex_in_pocket, insert_vertex_over_pushed_mountain, plug_subdiagram, push_down, Orientation,
    PlugSpec,
};
pub use validate::{faces_missing_spine, gap_arcs, gap_in_face, validate, Context, Rule, ValidityReport, Violation};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use crate::graph::Vertex;

/// Exact credit amounts.
pub type Credit = Ratio<i64>;

pub fn credit(n: i64, d: i64) -> Credit {
    Ratio::new(n, d)
}

/// Undirected edge stored with the smaller id first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Edge {
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn other(self, x: Vertex) -> Vertex {
        if self.0 == x {
            self.1
        } else {
            self.0
        }
    }

    pub fn has(self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Item {
    Vertex(Vertex),
    Crossing(Edge),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Shape {
    Mountain,
    Pocket,
    /// Lower half-arc from the left endpoint to the crossing, upper half-arc
    /// from the crossing to the right endpoint.
    Biarc,
    /// Upper half first. Representable so that parsed files can be rejected;
    /// no construction produces it.
    BiarcUpDown,
}

impl Shape {
    pub fn is_proper(self) -> bool {
        matches!(self, Shape::Mountain | Shape::Pocket)
    }

    pub fn is_biarc(self) -> bool {
        matches!(self, Shape::Biarc | Shape::BiarcUpDown)
    }

    pub fn flipped(self) -> Shape {
        match self {
            Shape::Mountain => Shape::Pocket,
            Shape::Pocket => Shape::Mountain,
            s => s,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Page {
    Upper,
    Lower,
}

/// One half-circle on a page between two spine indices `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HalfArc {
    pub page: Page,
    pub a: usize,
    pub b: usize,
    pub edge: Edge,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("edge {0} is not a mountain")]
    NotAMountain(Edge),
    #[error("edge {0} is not a pocket")]
    NotAPocket(Edge),
    #[error("edge {0} is unknown")]
    UnknownEdge(Edge),
    #[error("edge {0} already drawn")]
    DuplicateEdge(Edge),
    #[error("vertex {0} is not on the spine")]
    UnknownVertex(Vertex),
    #[error("vertex {0} is already on the spine")]
    DuplicateVertex(Vertex),
    #[error("edges {0} and {1} would cross")]
    WouldCross(Edge, Edge),
    #[error("diagram is not planar: {0} and {1} interleave")]
    NotPlanar(Edge, Edge),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(&'static str),
    #[error("malformed biarc {0}")]
    MalformedBiarc(Edge),
}

/// A monotone arc diagram with per-edge credit balances.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ArcDiagram {
    spine: Vec<Item>,
    pos: BTreeMap<Item, usize>,
    shapes: BTreeMap<Edge, Shape>,
    credits: BTreeMap<Edge, Credit>,
}

impl fmt::Debug for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "spine:")?;
        for it in &self.spine {
            match it {
                Item::Vertex(v) => write!(f, " v{v}")?,
                Item::Crossing(e) => write!(f, " x{e}")?,
            }
        }
        writeln!(f)?;
        for (e, s) in &self.shapes {
            let c = self.credits.get(e).copied().unwrap_or_default();
            writeln!(f, "  {e} {s:?} {c}")?;
        }
        Ok(())
    }
}

impl ArcDiagram {
    pub fn new() -> ArcDiagram {
        ArcDiagram::default()
    }

    /// Builds a diagram from a spine and edge shapes; crossings must already be
    /// on the spine for every biarc.
    pub fn from_parts(spine: Vec<Item>, shapes: BTreeMap<Edge, Shape>, credits: BTreeMap<Edge, Credit>) -> Result<ArcDiagram, DiagramError> {
        let mut d = ArcDiagram { spine, pos: BTreeMap::new(), shapes, credits };
        d.reindex();
        if d.pos.len() != d.spine.len() {
            return Err(DiagramError::BoundaryMismatch("duplicate spine item"));
        }
        for (&e, &s) in &d.shapes {
            for x in [e.0, e.1] {
                if !d.pos.contains_key(&Item::Vertex(x)) {
                    return Err(DiagramError::UnknownVertex(x));
                }
            }
            let has_x = d.pos.contains_key(&Item::Crossing(e));
            if s.is_biarc() != has_x {
                return Err(DiagramError::MalformedBiarc(e));
            }
            if has_x {
                let (l, r) = d.ends(e);
                let x = d.pos[&Item::Crossing(e)];
                if !(d.vpos(l) < x && x < d.vpos(r)) {
                    return Err(DiagramError::MalformedBiarc(e));
                }
            }
        }
        for it in &d.spine {
            if let Item::Crossing(e) = it {
                if !d.shapes.get(e).is_some_and(|s| s.is_biarc()) {
                    return Err(DiagramError::MalformedBiarc(*e));
                }
            }
        }
        Ok(d)
    }

    fn reindex(&mut self) {
        self.pos.clear();
        for (i, &it) in self.spine.iter().enumerate() {
            self.pos.insert(it, i);
        }
    }

    pub fn spine(&self) -> &[Item] {
        &self.spine
    }

    pub fn len(&self) -> usize {
        self.spine.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spine.is_empty()
    }

    pub fn pos(&self, it: Item) -> Option<usize> {
        self.pos.get(&it).copied()
    }

    /// Spine index of vertex `v`; panics if absent.
    pub fn vpos(&self, v: Vertex) -> usize {
        match self.pos.get(&Item::Vertex(v)) {
            Some(&p) => p,
            None => panic!("vertex {v} not on spine"),
        }
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.pos.contains_key(&Item::Vertex(v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.spine.iter().filter_map(|it| match it {
            Item::Vertex(v) => Some(*v),
            _ => None,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().count()
    }

    pub fn shape(&self, e: Edge) -> Option<Shape> {
        self.shapes.get(&e).copied()
    }

    pub fn shape_of(&self, u: Vertex, v: Vertex) -> Option<Shape> {
        self.shape(Edge::new(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, Shape)> + '_ {
        self.shapes.iter().map(|(&e, &s)| (e, s))
    }

    pub fn edge_count(&self) -> usize {
        self.shapes.len()
    }

    /// `(left, right)` endpoints of `e` by spine position.
    pub fn ends(&self, e: Edge) -> (Vertex, Vertex) {
        if self.vpos(e.0) < self.vpos(e.1) {
            (e.0, e.1)
        } else {
            (e.1, e.0)
        }
    }

    pub fn left_end(&self, e: Edge) -> Vertex {
        self.ends(e).0
    }

    pub fn credit(&self, e: Edge) -> Credit {
        self.credits.get(&e).copied().unwrap_or_default()
    }

    pub fn set_credit(&mut self, e: Edge, c: Credit) {
        if c == Credit::default() {
            self.credits.remove(&e);
        } else {
            self.credits.insert(e, c);
        }
    }

    pub fn credits(&self) -> &BTreeMap<Edge, Credit> {
        &self.credits
    }

    /// Sum of all credits on edges.
    pub fn cost(&self) -> Credit {
        self.credits.values().copied().sum()
    }

    /// Whether the drawn edges are exactly `edges` (in any orientation).
    pub fn has_exactly_edges(&self, edges: &[(Vertex, Vertex)]) -> bool {
        edges.len() == self.shapes.len() && edges.iter().all(|&(a, b)| self.shapes.contains_key(&Edge::new(a, b)))
    }

    pub fn biarc_count(&self) -> usize {
        self.shapes.values().filter(|s| s.is_biarc()).count()
    }

    pub fn crossing_count(&self) -> usize {
        self.spine.iter().filter(|it| matches!(it, Item::Crossing(_))).count()
    }

    /// Inserts an item at spine index `i`, shifting later items right.
    pub fn insert_item(&mut self, i: usize, it: Item) {
        debug_assert!(!self.pos.contains_key(&it));
        self.spine.insert(i, it);
        for (k, x) in self.spine.iter().enumerate().skip(i) {
            self.pos.insert(*x, k);
        }
    }

    fn remove_item(&mut self, it: Item) {
        let i = self.pos.remove(&it).expect("item present");
        self.spine.remove(i);
        for (k, x) in self.spine.iter().enumerate().skip(i) {
            self.pos.insert(*x, k);
        }
    }

    pub fn insert_vertex_at(&mut self, i: usize, v: Vertex) -> Result<(), DiagramError> {
        if self.has_vertex(v) {
            return Err(DiagramError::DuplicateVertex(v));
        }
        self.insert_item(i, Item::Vertex(v));
        Ok(())
    }

    /// Adds a proper arc.
    pub fn add_proper(&mut self, u: Vertex, v: Vertex, shape: Shape) -> Result<Edge, DiagramError> {
        debug_assert!(shape.is_proper());
        let e = Edge::new(u, v);
        if self.shapes.contains_key(&e) {
            return Err(DiagramError::DuplicateEdge(e));
        }
        for x in [u, v] {
            if !self.has_vertex(x) {
                return Err(DiagramError::UnknownVertex(x));
            }
        }
        self.shapes.insert(e, shape);
        Ok(e)
    }

    pub fn mountain(&mut self, u: Vertex, v: Vertex) -> Result<Edge, DiagramError> {
        self.add_proper(u, v, Shape::Mountain)
    }

    pub fn pocket(&mut self, u: Vertex, v: Vertex) -> Result<Edge, DiagramError> {
        self.add_proper(u, v, Shape::Pocket)
    }

    /// Adds a down-up biarc whose crossing is inserted at spine index `i`,
    /// which must lie strictly between the endpoints after insertion.
    pub fn add_biarc(&mut self, u: Vertex, v: Vertex, i: usize) -> Result<Edge, DiagramError> {
        let e = Edge::new(u, v);
        if self.shapes.contains_key(&e) {
            return Err(DiagramError::DuplicateEdge(e));
        }
        let (pu, pv) = (self.vpos(u), self.vpos(v));
        let (lo, hi) = if pu < pv { (pu, pv) } else { (pv, pu) };
        if !(lo < i && i <= hi) {
            return Err(DiagramError::MalformedBiarc(e));
        }
        self.insert_item(i, Item::Crossing(e));
        self.shapes.insert(e, Shape::Biarc);
        Ok(e)
    }

    /// Redraws an existing edge as a down-up biarc crossing at index `i`.
    pub fn to_biarc(&mut self, e: Edge, i: usize) -> Result<(), DiagramError> {
        let s = self.shape(e).ok_or(DiagramError::UnknownEdge(e))?;
        if s.is_biarc() {
            return Err(DiagramError::MalformedBiarc(e));
        }
        self.shapes.remove(&e);
        match self.add_biarc(e.0, e.1, i) {
            Ok(_) => Ok(()),
            Err(err) => {
                self.shapes.insert(e, s);
                Err(err)
            }
        }
    }

    /// Redraws an existing edge as a proper arc, dropping its crossing if any.
    pub fn to_proper(&mut self, e: Edge, shape: Shape) -> Result<(), DiagramError> {
        let s = self.shape(e).ok_or(DiagramError::UnknownEdge(e))?;
        if s.is_biarc() {
            self.remove_item(Item::Crossing(e));
        }
        self.shapes.insert(e, shape);
        Ok(())
    }

    pub fn remove_edge(&mut self, e: Edge) -> Result<(), DiagramError> {
        let s = self.shapes.remove(&e).ok_or(DiagramError::UnknownEdge(e))?;
        if s.is_biarc() {
            self.remove_item(Item::Crossing(e));
        }
        self.credits.remove(&e);
        Ok(())
    }

    /// Mountains whose left endpoint is `u`, longest first.
    pub fn mountains_from(&self, u: Vertex) -> Vec<Edge> {
        let pu = self.vpos(u);
        let mut out: Vec<(usize, Edge)> = self
            .shapes
            .iter()
            .filter(|(e, s)| **s == Shape::Mountain && e.has(u))
            .map(|(e, _)| (self.vpos(e.other(u)), *e))
            .filter(|(p, _)| *p > pu)
            .collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out.into_iter().map(|(_, e)| e).collect()
    }

    /// Turns every mountain with left endpoint `u` into a down-up biarc. The
    /// crossings go immediately right of `u`, the longest arc's crossing
    /// closest to `u`, so that the upper halves nest. Returns the new biarcs.
    pub fn push_down_at(&mut self, u: Vertex) -> Vec<Edge> {
        let ms = self.mountains_from(u);
        for (k, &e) in ms.iter().enumerate() {
            let i = self.vpos(u) + 1 + k;
            self.shapes.remove(&e);
            self.insert_item(i, Item::Crossing(e));
            self.shapes.insert(e, Shape::Biarc);
        }
        ms
    }

    /// All half-arcs with their spine index spans.
    pub fn half_arcs(&self) -> Vec<HalfArc> {
        let mut out = Vec::with_capacity(self.shapes.len() + 8);
        for (&e, &s) in &self.shapes {
            let (pa, pb) = (self.vpos(e.0), self.vpos(e.1));
            let (a, b) = if pa < pb { (pa, pb) } else { (pb, pa) };
            match s {
                Shape::Mountain => out.push(HalfArc { page: Page::Upper, a, b, edge: e }),
                Shape::Pocket => out.push(HalfArc { page: Page::Lower, a, b, edge: e }),
                Shape::Biarc | Shape::BiarcUpDown => {
                    let x = self.pos[&Item::Crossing(e)];
                    let (first, second) =
                        if s == Shape::Biarc { (Page::Lower, Page::Upper) } else { (Page::Upper, Page::Lower) };
                    out.push(HalfArc { page: first, a, b: x, edge: e });
                    out.push(HalfArc { page: second, a: x, b, edge: e });
                }
            }
        }
        out
    }

    /// Stack-based interleaving check per page.
    pub fn check_planar(&self) -> Result<(), DiagramError> {
        let arcs = self.half_arcs();
        for page in [Page::Upper, Page::Lower] {
            let mut list: Vec<&HalfArc> = arcs.iter().filter(|h| h.page == page).collect();
            list.sort_by(|x, y| x.a.cmp(&y.a).then(y.b.cmp(&x.b)));
            let mut stack: Vec<&HalfArc> = Vec::new();
            for h in list {
                while stack.last().is_some_and(|t| t.b <= h.a) {
                    stack.pop();
                }
                if let Some(t) = stack.last() {
                    if t.b < h.b {
                        return Err(DiagramError::NotPlanar(t.edge, h.edge));
                    }
                }
                stack.push(h);
            }
        }
        Ok(())
    }

    pub fn is_planar(&self) -> bool {
        self.check_planar().is_ok()
    }

    /// The diagram turned by 180 degrees: spine reversed, pages swapped.
    /// Down-up biarcs stay down-up.
    pub fn rotated_pi(&self) -> ArcDiagram {
        let mut d = self.clone();
        d.spine.reverse();
        d.reindex();
        for s in d.shapes.values_mut() {
            *s = s.flipped();
        }
        d
    }

    /// Renames vertices through `f`.
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> ArcDiagram {
        let map_e = |e: Edge| Edge::new(f(e.0), f(e.1));
        let spine = self
            .spine
            .iter()
            .map(|it| match *it {
                Item::Vertex(v) => Item::Vertex(f(v)),
                Item::Crossing(e) => Item::Crossing(map_e(e)),
            })
            .collect();
        let shapes = self.shapes.iter().map(|(e, s)| (map_e(*e), *s)).collect();
        let credits = self.credits.iter().map(|(e, c)| (map_e(*e), *c)).collect();
        let mut d = ArcDiagram { spine, pos: BTreeMap::new(), shapes, credits };
        d.reindex();
        d
    }

    /// Inserts a run of items at index `i` and merges edge shapes.
    pub fn splice(&mut self, i: usize, items: &[Item], shapes: &BTreeMap<Edge, Shape>) -> Result<(), DiagramError> {
        for it in items {
            if self.pos.contains_key(it) {
                return Err(DiagramError::BoundaryMismatch("spliced item already present"));
            }
        }
        let tail = self.spine.split_off(i);
        self.spine.extend_from_slice(items);
        self.spine.extend(tail);
        self.reindex();
        for (&e, &s) in shapes {
            if self.shapes.insert(e, s).is_some() {
                return Err(DiagramError::DuplicateEdge(e));
            }
        }
        Ok(())
    }

    pub(crate) fn shapes_mut(&mut self) -> &mut BTreeMap<Edge, Shape> {
        &mut self.shapes
    }
}
