//! Validity checks: planarity, down-up biarcs and the invariants I1 to I6.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{upper_envelope_path, ArcDiagram, Credit, Edge, Item, Shape};
use crate::graph::Vertex;

/// What to check a diagram against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    /// Outer path `v1 .. v2` of the drawn graph; `None` for structural checks.
    pub path: Option<Vec<Vertex>>,
    pub chi: Credit,
    pub check_i4: bool,
    pub check_i5: bool,
    /// Edge `u w_{j+1}` whose reserve is checked while a region is processed.
    pub reserve: Option<Edge>,
}

impl Context {
    /// Planarity, biarc shapes and monotonicity only.
    pub fn structural() -> Context {
        Context { path: None, chi: Credit::default(), check_i4: false, check_i5: false, reserve: None }
    }

    /// I1 to I5 for a partial drawing with outer path `path`.
    pub fn extensible(path: &[Vertex], chi: Credit) -> Context {
        Context { path: Some(path.to_vec()), chi, check_i4: true, check_i5: true, reserve: None }
    }

    /// I1 to I4.
    pub fn valid(path: &[Vertex], chi: Credit) -> Context {
        Context { path: Some(path.to_vec()), chi, check_i4: true, check_i5: false, reserve: None }
    }

    /// I1 to I5 for the complete graph with outer face `v1 v2 vn`.
    pub fn final_(v1: Vertex, v2: Vertex, vn: Vertex, chi: Credit) -> Context {
        Context::extensible(&[v1, vn, v2], chi)
    }

    pub fn without_i4(mut self) -> Context {
        self.check_i4 = false;
        self
    }

    pub fn with_reserve(mut self, e: Edge) -> Context {
        self.reserve = Some(e);
        self
    }

    fn path_sets(&self) -> (BTreeSet<Vertex>, BTreeSet<Edge>) {
        let mut on_c = BTreeSet::new();
        let mut p_edges = BTreeSet::new();
        if let Some(p) = &self.path {
            on_c.extend(p[..p.len().saturating_sub(1)].iter().copied());
            for w in p.windows(2) {
                p_edges.insert(Edge::new(w[0], w[1]));
            }
        }
        (on_c, p_edges)
    }

    /// Credits an edge must carry under I2 to I4 (and I6 for the reserve edge).
    pub fn required(&self, d: &ArcDiagram, e: Edge) -> Credit {
        let (on_c, p_edges) = self.path_sets();
        self.required_with(d, e, &on_c, &p_edges)
    }

    fn required_with(&self, d: &ArcDiagram, e: Edge, on_c: &BTreeSet<Vertex>, p_edges: &BTreeSet<Edge>) -> Credit {
        let one = Credit::from_integer(1);
        let s = match d.shape(e) {
            Some(s) => s,
            None => return Credit::default(),
        };
        let mut need = match s {
            Shape::Biarc | Shape::BiarcUpDown => one,
            Shape::Mountain if on_c.contains(&d.left_end(e)) => one,
            Shape::Pocket if self.check_i4 && p_edges.contains(&e) => self.chi,
            _ => Credit::default(),
        };
        if self.reserve == Some(e) {
            let r = match s {
                Shape::Mountain => one - self.chi,
                Shape::Pocket => self.chi * 2,
                _ => Credit::default(),
            };
            if r > need {
                need = r;
            }
        }
        need
    }

    /// Sets every edge's credit to exactly its requirement.
    pub fn normalize(&self, d: &mut ArcDiagram) {
        let (on_c, p_edges) = self.path_sets();
        let edges: Vec<Edge> = d.edges().map(|(e, _)| e).collect();
        for e in edges {
            let c = self.required_with(d, e, &on_c, &p_edges);
            d.set_credit(e, c);
        }
    }

    /// `cost(D)` after normalization, without modifying `d`.
    pub fn required_cost(&self, d: &ArcDiagram) -> Credit {
        let (on_c, p_edges) = self.path_sets();
        d.edges().map(|(e, _)| self.required_with(d, e, &on_c, &p_edges)).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    /// Biarc crossing missing, misplaced or dangling.
    Structure,
    Planarity,
    DownUp,
    /// Shape rule or a biarc on the upper envelope.
    I1,
    I2,
    I3,
    I4,
    I5,
    I6,
    NegativeCredit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub edge: Option<Edge>,
    pub rule: Rule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub planar: bool,
    pub down_up: bool,
    pub i1: bool,
    pub i2: bool,
    pub i3: bool,
    pub i4: bool,
    pub i5: bool,
    /// `None` when no reserve edge was supplied.
    pub i6: Option<bool>,
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

pub fn validate(d: &ArcDiagram, ctx: &Context) -> ValidityReport {
    let mut vs: Vec<Violation> = Vec::new();
    let mut push = |edge: Option<Edge>, rule: Rule| vs.push(Violation { edge, rule });

    let mut structure_ok = true;
    for (e, s) in d.edges() {
        if !d.has_vertex(e.0) || !d.has_vertex(e.1) {
            push(Some(e), Rule::Structure);
            structure_ok = false;
            continue;
        }
        match d.pos(Item::Crossing(e)) {
            Some(x) if s.is_biarc() => {
                let (l, r) = d.ends(e);
                if !(d.vpos(l) < x && x < d.vpos(r)) {
                    push(Some(e), Rule::Structure);
                    structure_ok = false;
                }
            }
            None if !s.is_biarc() => {}
            _ => {
                push(Some(e), Rule::Structure);
                structure_ok = false;
            }
        }
        if s == Shape::BiarcUpDown {
            push(Some(e), Rule::DownUp);
            push(Some(e), Rule::I1);
        }
    }
    for it in d.spine() {
        if let Item::Crossing(e) = it {
            if !d.shape(*e).is_some_and(Shape::is_biarc) {
                push(Some(*e), Rule::Structure);
                structure_ok = false;
            }
        }
    }
    for (&e, &c) in d.credits() {
        if c < Credit::default() {
            push(Some(e), Rule::NegativeCredit);
        }
    }
    if !structure_ok {
        return finish(vs, ctx);
    }
    if let Err(super::DiagramError::NotPlanar(a, b)) = d.check_planar() {
        push(Some(a), Rule::Planarity);
        push(Some(b), Rule::Planarity);
        return finish(vs, ctx);
    }

    if let Some(path) = &ctx.path {
        let (on_c, p_edges) = ctx.path_sets();
        let base = Context { reserve: None, ..ctx.clone() };
        for (e, s) in d.edges() {
            let have = d.credit(e);
            let need = base.required_with(d, e, &on_c, &p_edges);
            if have < need {
                let rule = match s {
                    Shape::Mountain => Rule::I2,
                    Shape::Pocket => Rule::I4,
                    _ => Rule::I3,
                };
                push(Some(e), rule);
            }
        }
        if let Some(r) = ctx.reserve {
            if d.credit(r) < ctx.required_with(d, r, &on_c, &p_edges) {
                push(Some(r), Rule::I6);
            }
        }
        // I1: proper arcs on the upper envelope
        let env = upper_envelope_path(d);
        if let Err(Some(e)) = env {
            push(Some(e), Rule::I1);
        }
        if ctx.check_i5 {
            let (v1, v2) = (path[0], path[path.len() - 1]);
            let verts: Vec<Vertex> = d.vertices().collect();
            if verts.first() != Some(&v1) || verts.last() != Some(&v2) {
                push(None, Rule::I5);
            }
            if d.shape(Edge::new(v1, v2)) != Some(Shape::Pocket) {
                push(Some(Edge::new(v1, v2)), Rule::I5);
            }
            match env {
                Ok(p) if p == *path => {}
                _ => push(None, Rule::I5),
            }
        }
    }
    finish(vs, ctx)
}

fn finish(mut vs: Vec<Violation>, ctx: &Context) -> ValidityReport {
    vs.sort_by_key(|v| (v.rule, v.edge));
    vs.dedup();
    let ok = |r: Rule| !vs.iter().any(|v| v.rule == r);
    let structural = ok(Rule::Structure) && ok(Rule::NegativeCredit);
    ValidityReport {
        planar: ok(Rule::Planarity) && structural,
        down_up: ok(Rule::DownUp),
        i1: ok(Rule::I1) && structural,
        i2: ok(Rule::I2),
        i3: ok(Rule::I3),
        i4: ok(Rule::I4),
        i5: ok(Rule::I5),
        i6: ctx.reserve.map(|_| ok(Rule::I6)),
        violations: vs,
    }
}

/// For every gap between consecutive spine items, the innermost arc above
/// it and the innermost arc below it (as edges), if both exist. The gap lies
/// in the face bounded by these two arcs.
pub fn gap_arcs(d: &ArcDiagram) -> Vec<Option<(Edge, Edge)>> {
    let n = d.len();
    let arcs = d.half_arcs();
    let mut inner = [vec![None; n], vec![None; n]];
    for (k, page) in [super::Page::Upper, super::Page::Lower].into_iter().enumerate() {
        let mut list: Vec<_> = arcs.iter().filter(|h| h.page == page).collect();
        list.sort_by(|x, y| x.a.cmp(&y.a).then(y.b.cmp(&x.b)));
        let mut stack: Vec<&super::HalfArc> = Vec::new();
        let mut i = 0;
        for g in 0..n.saturating_sub(1) {
            while i < list.len() && list[i].a <= g {
                stack.push(list[i]);
                i += 1;
            }
            while stack.last().is_some_and(|t| t.b <= g) {
                stack.pop();
            }
            inner[k][g] = stack.last().map(|t| t.edge);
        }
    }
    (0..n.saturating_sub(1)).map(|g| inner[0][g].zip(inner[1][g])).collect()
}

/// Whether the two arcs bounding a gap are both sides of triangle `f`.
pub fn gap_in_face(arcs: (Edge, Edge), f: [Vertex; 3]) -> bool {
    let [a, b, c] = f;
    let es = [Edge::new(a, b), Edge::new(b, c), Edge::new(c, a)];
    arcs.0 != arcs.1 && es.contains(&arcs.0) && es.contains(&arcs.1)
}

/// Faces `(a, b, c)` of which no elementary spine gap lies inside.
pub fn faces_missing_spine(d: &ArcDiagram, faces: &[[Vertex; 3]]) -> Vec<[Vertex; 3]> {
    let gaps: Vec<(Edge, Edge)> = gap_arcs(d).into_iter().flatten().collect();
    faces.iter().copied().filter(|&f| !gaps.iter().any(|&g| gap_in_face(g, f))).collect()
}
