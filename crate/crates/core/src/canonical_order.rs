//! Incremental canonical orderings: the outer path, covers, eligibility,
//! profiles and pivots, and the regions spanned by a not-yet-eligible vertex.
//!
//! The outer path `P` runs from `v1` to `v2` with the unplaced part of the
//! graph on its left, so the vertex covering the path edge `a -> b` is
//! `left_apex(a, b)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{ArcDiagram, Edge, Shape};
use crate::graph::{PlaneTriangulation, Vertex};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("vertex {0} is not eligible")]
    NotEligible(Vertex),
    #[error("vertex {0} has no neighbour on the outer path")]
    NotOnFrontier(Vertex),
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("path edge {0} is not a proper arc")]
    BiarcOnPath(Edge),
    #[error("region {0} of vertex {1} has an unexpected structure")]
    UnexpectedRegion(usize, Vertex),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemType {
    /// Degree 2 over one mountain.
    T2M,
    /// Degree 3 over two mountains.
    T3MM,
    /// Degree 4 over three mountains.
    T4MMM,
    /// Degree 3 over a mountain followed by a pocket.
    T3MP,
    NotProblematic,
}

impl ProblemType {
    /// Classifies a profile given as the shapes of the covered path edges.
    pub fn classify(profile: &[Shape]) -> ProblemType {
        use Shape::{Mountain as M, Pocket as P};
        match profile {
            [M] => ProblemType::T2M,
            [M, M] => ProblemType::T3MM,
            [M, M, M] => ProblemType::T4MMM,
            [M, P] => ProblemType::T3MP,
            _ => ProblemType::NotProblematic,
        }
    }

    pub fn is_problematic(self) -> bool {
        self != ProblemType::NotProblematic
    }

    pub fn pivot_side(self) -> Option<PivotSide> {
        match self {
            ProblemType::NotProblematic => None,
            ProblemType::T3MP => Some(PivotSide::Right),
            _ => Some(PivotSide::Left),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PivotSide {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub v: Vertex,
    /// Neighbours on the outer path, left to right; `ell` first, `r` last.
    pub neighbors: Vec<Vertex>,
    /// Index of `ell` on the outer path.
    pub start: usize,
    pub shapes: Vec<Shape>,
    pub kind: ProblemType,
    /// `p(v)`: `r` for right pivot type, `ell` for left pivot type.
    pub pivot: Option<Vertex>,
    /// `pc(v)`: the vertex covering the pivot edge `v p(v)` once `v` is placed.
    pub pivot_cover: Option<Vertex>,
}

impl Profile {
    pub fn ell(&self) -> Vertex {
        self.neighbors[0]
    }

    pub fn r(&self) -> Vertex {
        *self.neighbors.last().unwrap()
    }

    pub fn degree(&self) -> usize {
        self.neighbors.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionClass {
    EmptyPocket,
    EmptyMountain,
    LeftPivot,
    RightPivot,
    BothPivot,
}

/// Region `X_j` between the edges `u w_j` and `u w_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub j: usize,
    pub w_left: Vertex,
    pub w_right: Vertex,
    /// Path indices of `w_j` and `w_{j+1}`.
    pub span: (usize, usize),
    /// Unplaced vertices inside the region.
    pub vertices: Vec<Vertex>,
    /// Eligible vertices inside, left to right by the path edges they cover.
    pub eligible: Vec<Vertex>,
    pub class: RegionClass,
}

/// A prefix `v1 .. vi` of a canonical ordering together with its outer path.
#[derive(Clone, Debug)]
pub struct OrderingState<'g> {
    g: &'g PlaneTriangulation,
    placed: Vec<Vertex>,
    is_placed: Vec<bool>,
    path: Vec<Vertex>,
    path_pos: Vec<usize>,
}

impl PartialEq for OrderingState<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.g, other.g) && self.placed == other.placed
    }
}

impl<'g> OrderingState<'g> {
    /// The state after `v1, v2, v3`, where `v3` closes the inner face on `v1 v2`.
    pub fn new(g: &'g PlaneTriangulation) -> OrderingState<'g> {
        let [v1, v2, _] = g.outer_face();
        let v3 = g.left_apex(v1, v2);
        let mut s = OrderingState {
            g,
            placed: vec![v1, v2, v3],
            is_placed: vec![false; g.n()],
            path: vec![v1, v3, v2],
            path_pos: vec![NONE; g.n()],
        };
        for v in [v1, v2, v3] {
            s.is_placed[v] = true;
        }
        s.reindex();
        s
    }

    /// Replays `order[3..]` on top of the base state.
    pub fn from_order(g: &'g PlaneTriangulation, order: &[Vertex]) -> Result<OrderingState<'g>, OrderError> {
        let mut s = OrderingState::new(g);
        if order.len() < 3 || order[..3] != s.placed[..] {
            return Err(OrderError::PreconditionViolated("order must start with v1 v2 v3"));
        }
        for &v in &order[3..] {
            s.advance_mut(v)?;
        }
        Ok(s)
    }

    fn reindex(&mut self) {
        for p in self.path_pos.iter_mut() {
            *p = NONE;
        }
        for (i, &v) in self.path.iter().enumerate() {
            self.path_pos[v] = i;
        }
    }

    pub fn graph(&self) -> &'g PlaneTriangulation {
        self.g
    }

    pub fn placed(&self) -> &[Vertex] {
        &self.placed
    }

    /// Number of placed vertices, `i`.
    pub fn i(&self) -> usize {
        self.placed.len()
    }

    pub fn is_complete(&self) -> bool {
        self.placed.len() == self.g.n()
    }

    pub fn is_placed(&self, v: Vertex) -> bool {
        self.is_placed[v]
    }

    pub fn path(&self) -> &[Vertex] {
        &self.path
    }

    /// Index of `v` on the outer path.
    pub fn path_pos(&self, v: Vertex) -> Option<usize> {
        let p = self.path_pos[v];
        (p != NONE).then_some(p)
    }

    /// Vertex covering the path edge `path[t] -> path[t + 1]`.
    pub fn cover(&self, t: usize) -> Vertex {
        self.g.left_apex(self.path[t], self.path[t + 1])
    }

    pub fn unplaced(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.g.n()).filter(|&v| !self.is_placed[v])
    }

    /// Placed neighbours of an unplaced `v`, in path order.
    pub fn path_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut nb: Vec<(usize, Vertex)> = self
            .g
            .rotation(v)
            .iter()
            .filter(|&&w| self.is_placed[w])
            .map(|&w| (self.path_pos[w], w))
            .collect();
        nb.sort_unstable();
        debug_assert!(nb.iter().all(|(p, _)| *p != NONE), "unplaced vertex sees an inner vertex");
        nb.into_iter().map(|(_, w)| w).collect()
    }

    /// `d_i(v)`.
    pub fn degree_in(&self, v: Vertex) -> usize {
        self.g.rotation(v).iter().filter(|&&w| self.is_placed[w]).count()
    }

    /// Eligibility by covers: `v` has two or more placed neighbours and covers
    /// every path edge between its first and last one. Equivalent to the
    /// region `R_i(v)` being empty, see [`Self::region_vertices`].
    pub fn is_eligible(&self, v: Vertex) -> bool {
        if self.is_placed[v] {
            return false;
        }
        let nb = self.path_neighbors(v);
        if nb.len() < 2 {
            return false;
        }
        let (a, b) = (self.path_pos[nb[0]], self.path_pos[*nb.last().unwrap()]);
        b - a + 1 == nb.len() && (a..b).all(|t| self.cover(t) == v)
    }

    /// Unplaced vertices strictly inside `R_i(v)`, computed from the region
    /// boundary. For `d_i(v) <= 1` this is every other unplaced vertex.
    pub fn region_vertices(&self, v: Vertex) -> Vec<Vertex> {
        let nb = self.path_neighbors(v);
        if nb.len() <= 1 {
            return self.unplaced().filter(|&x| x != v).collect();
        }
        let (a, b) = (self.path_pos[nb[0]], self.path_pos[*nb.last().unwrap()]);
        let mut cycle: Vec<Vertex> = self.path[a..=b].to_vec();
        cycle.push(v);
        self.g.interior_of_cycle(&cycle)
    }

    /// Eligible vertices, ordered by the start of the path interval they cover.
    pub fn eligible_set(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = Vec::new();
        for t in 0..self.path.len() - 1 {
            let c = self.cover(t);
            if out.last() != Some(&c) && !out.contains(&c) && self.is_eligible(c) {
                out.push(c);
            }
        }
        out
    }

    /// Places `v`, replacing the covered part of the path by `ell v r`.
    pub fn advance_mut(&mut self, v: Vertex) -> Result<(), OrderError> {
        if !self.is_eligible(v) {
            return Err(OrderError::NotEligible(v));
        }
        let nb = self.path_neighbors(v);
        let (a, b) = (self.path_pos[nb[0]], self.path_pos[*nb.last().unwrap()]);
        self.path.splice(a + 1..b, [v]);
        self.placed.push(v);
        self.is_placed[v] = true;
        self.reindex();
        Ok(())
    }

    pub fn advance(&self, v: Vertex) -> Result<OrderingState<'g>, OrderError> {
        let mut s = self.clone();
        s.advance_mut(v)?;
        Ok(s)
    }

    /// Every unplaced vertex lies outside `G_i` (no unplaced vertex is
    /// enclosed by the outer cycle).
    pub fn is_extensible(&self) -> bool {
        let mut cycle = self.path.clone();
        cycle.reverse();
        self.g.interior_of_cycle(&cycle).iter().all(|&x| self.is_placed[x])
    }

    /// Profile of an eligible `v` with respect to the edge shapes of `d`.
    pub fn profile(&self, d: &ArcDiagram, v: Vertex) -> Result<Profile, OrderError> {
        if !self.is_eligible(v) {
            return Err(OrderError::NotEligible(v));
        }
        let neighbors = self.path_neighbors(v);
        let start = self.path_pos[neighbors[0]];
        let mut shapes = Vec::with_capacity(neighbors.len() - 1);
        for w in neighbors.windows(2) {
            let e = Edge::new(w[0], w[1]);
            match d.shape(e) {
                Some(s @ (Shape::Mountain | Shape::Pocket)) => shapes.push(s),
                _ => return Err(OrderError::BiarcOnPath(e)),
            }
        }
        let kind = ProblemType::classify(&shapes);
        let (ell, r) = (neighbors[0], *neighbors.last().unwrap());
        let last = self.placed.len() + 1 == self.g.n();
        let (pivot, pivot_cover) = match kind.pivot_side() {
            Some(_) if last => (None, None),
            Some(PivotSide::Left) => (Some(ell), Some(self.g.left_apex(ell, v))),
            Some(PivotSide::Right) => (Some(r), Some(self.g.left_apex(v, r))),
            None => (None, None),
        };
        Ok(Profile { v, neighbors, start, shapes, kind, pivot, pivot_cover })
    }

    /// Splits `R_i(u)` along the edges `u w_j` into the regions `X_1 .. X_{k-1}`.
    pub fn decompose_regions(&self, d: &ArcDiagram, u: Vertex) -> Result<Vec<Region>, OrderError> {
        let ws = self.path_neighbors(u);
        if ws.is_empty() || self.is_placed[u] {
            return Err(OrderError::NotOnFrontier(u));
        }
        let mut out = Vec::with_capacity(ws.len().saturating_sub(1));
        for (j, w) in ws.windows(2).enumerate() {
            let (a, b) = (self.path_pos[w[0]], self.path_pos[w[1]]);
            let mut cycle: Vec<Vertex> = self.path[a..=b].to_vec();
            cycle.push(u);
            let vertices = self.g.interior_of_cycle(&cycle);
            let mut eligible: Vec<Vertex> = Vec::new();
            for t in a..b {
                let c = self.cover(t);
                if c != u && !eligible.contains(&c) {
                    eligible.push(c);
                }
            }
            let class = if vertices.is_empty() {
                match d.shape(Edge::new(w[0], w[1])) {
                    Some(Shape::Pocket) => RegionClass::EmptyPocket,
                    Some(Shape::Mountain) => RegionClass::EmptyMountain,
                    _ => return Err(OrderError::BiarcOnPath(Edge::new(w[0], w[1]))),
                }
            } else {
                let mut left = 0;
                let mut right = 0;
                for &c in &eligible {
                    match self.profile(d, c).map_err(|_| OrderError::UnexpectedRegion(j + 1, u))?.kind.pivot_side() {
                        Some(PivotSide::Left) => left += 1,
                        Some(PivotSide::Right) => right += 1,
                        None => return Err(OrderError::UnexpectedRegion(j + 1, u)),
                    }
                }
                match (left, right) {
                    (l, 0) if l > 0 => RegionClass::LeftPivot,
                    (0, 1) => RegionClass::RightPivot,
                    (l, 1) if l > 0 => RegionClass::BothPivot,
                    _ => return Err(OrderError::UnexpectedRegion(j + 1, u)),
                }
            };
            out.push(Region { j: j + 1, w_left: w[0], w_right: w[1], span: (a, b), vertices, eligible, class });
        }
        Ok(out)
    }

    /// A minimal element of `{pc(v) : v eligible} \ eligible` under region
    /// containment. Among minimal candidates the one whose first path
    /// neighbour is leftmost wins.
    pub fn select_u(&self, d: &ArcDiagram) -> Result<Vertex, OrderError> {
        let el = self.eligible_set();
        let mut cands: Vec<Vertex> = Vec::new();
        for &v in &el {
            let p = self.profile(d, v)?;
            if !p.kind.is_problematic() {
                return Err(OrderError::PreconditionViolated("a non-problematic eligible vertex exists"));
            }
            if let Some(c) = p.pivot_cover {
                if !el.contains(&c) && !cands.contains(&c) {
                    cands.push(c);
                }
            }
        }
        // a candidate inside another's region has a strictly smaller region
        let mut best: Option<(usize, usize, Vertex)> = None;
        for &c in &cands {
            let size = self.region_vertices(c).len();
            let start = self.path_neighbors(c).first().map_or(NONE, |&w| self.path_pos[w]);
            if best.map_or(true, |b| (size, start) < (b.0, b.1)) {
                best = Some((size, start, c));
            }
        }
        best.map(|b| b.2).ok_or(OrderError::PreconditionViolated("no candidate for u"))
    }
}
