//! Drawing a plane triangulation with few down-up biarcs by inserting the
//! vertices along a canonical ordering that is chosen on the fly.
//!
//! The driver keeps an extensible diagram together with the ordering state
//! and repeatedly applies the first applicable step: a default insertion, a
//! pivot shortcut, a stacked left-pivot step, or the processing of a vertex
//! `u` together with all the regions it spans. Credits are normalized after
//! each step so that the ledger records exactly what the invariants demand.

mod cases;
mod regions;
mod search;
mod steps;
mod sub;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::canonical_order::{OrderError, OrderingState};
use crate::diagram::{
    credit, validate, ArcDiagram, Context, Credit, CreditLedger, DiagramError, Edge, Shape, StepRecord, Violation,
};
use crate::graph::{PlaneTriangulation, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgoError {
    #[error("chi must lie in (0, 1/5], got {0}")]
    InvalidChi(Credit),
    #[error("step {} on {:?} spent {} but only {} is allowed", .0.kind, .0.vertices, .0.spend, .0.allowance)]
    OverBudget(StepRecord),
    #[error("diagram invalid after step {kind}: {violations:?}")]
    Invalid { kind: &'static str, violations: Vec<Violation> },
    #[error("no case matches: {0}")]
    CaseNotMatched(String),
    #[error("vertex {0} is not the last vertex")]
    NotLastVertex(Vertex),
    #[error("final diagram breaks the bound: {0}")]
    Bound(String),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// What the construction has to deliver once every vertex is placed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// An extensible diagram; the last vertex may cost up to `1 + chi`.
    Main,
    /// A valid diagram with `vn` rightmost, `v1 vn` a mountain forming the
    /// upper envelope and `v1 v2, v2 vn` the lower envelope, `v2 vn` not a
    /// pocket; every vertex costs at most `1 - chi`.
    Adapt,
    /// Like [`Target::Main`] but stops before a problematic last vertex.
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub chi: Credit,
    /// Run the full validator after every step instead of only at the end.
    pub check_each_step: bool,
}

impl Options {
    pub fn new(chi: Credit) -> Options {
        Options { chi, check_each_step: false }
    }

    pub fn checked(mut self) -> Options {
        self.check_each_step = true;
        self
    }
}

impl Default for Options {
    fn default() -> Options {
        Options::new(credit(1, 5))
    }
}

/// Result of a run: the diagram, the per-step ledger, the canonical ordering
/// that was used, and how often each step kind fired (recursive runs
/// included).
#[derive(Clone, Debug)]
pub struct Drawing {
    pub diagram: ArcDiagram,
    pub ledger: CreditLedger,
    pub order: Vec<Vertex>,
    pub stats: BTreeMap<&'static str, usize>,
    /// For [`Target::Strong`]: the problematic last vertex left out.
    pub pending: Option<Vertex>,
}

/// Draws `g` with at most `cost - 1` biarcs, where the cost is bounded by
/// `n(1 - chi) + 7 chi - 3`.
pub fn draw_triangulation(g: &PlaneTriangulation, chi: Credit) -> Result<Drawing, AlgoError> {
    draw_with(g, &Options::new(chi))
}

pub fn draw_with(g: &PlaneTriangulation, opts: &Options) -> Result<Drawing, AlgoError> {
    let zero = Credit::default();
    if opts.chi <= zero || opts.chi > credit(1, 5) {
        return Err(AlgoError::InvalidChi(opts.chi));
    }
    let out = run(g, opts, Target::Main, 0)?;
    let n = g.n() as i64;
    let chi = opts.chi;
    let limit = chi * 7 - Credit::from_integer(3) + (Credit::from_integer(1) - chi) * n;
    if n >= 4 && out.ledger.balance() > limit {
        return Err(AlgoError::Bound(format!("cost {} exceeds {}", out.ledger.balance(), limit)));
    }
    if n >= 4 {
        let [v1, v2, vn] = g.outer_face();
        let one = Credit::from_integer(1);
        let paid = [Edge::new(v1, vn), Edge::new(vn, v2)]
            .iter()
            .any(|&e| out.diagram.shape(e) == Some(Shape::Mountain) && out.diagram.credit(e) >= one);
        if !paid {
            return Err(AlgoError::Bound(String::from("no paid mountain at vn on the outer face")));
        }
        let biarcs = Credit::from_integer(out.diagram.biarc_count() as i64);
        if biarcs > out.ledger.balance() - one {
            return Err(AlgoError::Bound(format!("{} biarcs with cost {}", biarcs, out.ledger.balance())));
        }
    }
    Ok(out)
}

/// Guaranteed number of biarcs for `chi = 1/5`: `floor(4n/5) - 2`.
pub fn biarc_bound(n: usize) -> usize {
    (4 * n / 5).saturating_sub(2)
}

/// Runs the construction on `g` from its base triangle.
pub fn run(g: &PlaneTriangulation, opts: &Options, target: Target, depth: usize) -> Result<Drawing, AlgoError> {
    let mut r = Run::new(g, opts.clone(), target, depth);
    r.drive()?;
    Ok(r.finish())
}

pub(crate) struct Run<'g> {
    pub(crate) g: &'g PlaneTriangulation,
    pub(crate) st: OrderingState<'g>,
    pub(crate) d: ArcDiagram,
    pub(crate) ledger: CreditLedger,
    pub(crate) opts: Options,
    pub(crate) target: Target,
    pub(crate) depth: usize,
    pub(crate) stats: BTreeMap<&'static str, usize>,
    pub(crate) pending: Option<Vertex>,
}

impl<'g> Run<'g> {
    fn new(g: &'g PlaneTriangulation, opts: Options, target: Target, depth: usize) -> Run<'g> {
        let st = OrderingState::new(g);
        let [v1, v2, _] = g.outer_face();
        let v3 = st.path()[1];
        let mut d = ArcDiagram::new();
        for (k, v) in [v1, v3, v2].into_iter().enumerate() {
            d.insert_vertex_at(k, v).expect("fresh vertices");
        }
        for (a, b) in [(v1, v3), (v3, v2), (v1, v2)] {
            d.pocket(a, b).expect("fresh edges");
        }
        Context::extensible(st.path(), opts.chi).normalize(&mut d);
        let ledger = CreditLedger::new(opts.chi, d.cost());
        Run { g, st, d, ledger, opts, target, depth, stats: BTreeMap::new(), pending: None }
    }

    fn finish(self) -> Drawing {
        Drawing {
            diagram: self.d,
            ledger: self.ledger,
            order: self.st.placed().to_vec(),
            stats: self.stats,
            pending: self.pending,
        }
    }

    pub(crate) fn chi(&self) -> Credit {
        self.opts.chi
    }

    pub(crate) fn one_minus_chi(&self) -> Credit {
        Credit::from_integer(1) - self.opts.chi
    }

    fn drive(&mut self) -> Result<(), AlgoError> {
        if self.target == Target::Adapt && self.g.n() < 4 {
            return Err(AlgoError::CaseNotMatched(String::from("adapted drawing of a single triangle")));
        }
        while !self.st.is_complete() {
            if self.st.i() + 1 == self.g.n() {
                if !self.step_last()? {
                    break;
                }
                continue;
            }
            if self.step_default()? || self.step_pivot_shortcuts()? {
                continue;
            }
            self.step_regions()?;
        }
        if self.pending.is_none() {
            self.check_final()?;
        }
        Ok(())
    }

    /// Context for the current ordering state.
    pub(crate) fn context(&self) -> Context {
        self.context_for(&self.st)
    }

    pub(crate) fn context_for(&self, st: &OrderingState<'_>) -> Context {
        if st.is_complete() && self.target == Target::Adapt {
            Context::valid(st.path(), self.opts.chi)
        } else {
            Context::extensible(st.path(), self.opts.chi)
        }
    }

    /// Makes `d` the current diagram after `order` has been placed (each
    /// vertex eligible in turn), normalizes credits and books the spend.
    pub(crate) fn commit(
        &mut self,
        kind: &'static str,
        mut d: ArcDiagram,
        order: &[Vertex],
        allowance: Credit,
    ) -> Result<(), AlgoError> {
        for &v in order {
            self.st.advance_mut(v)?;
        }
        let ctx = self.context();
        ctx.normalize(&mut d);
        d.check_planar().map_err(|e| match e {
            DiagramError::NotPlanar(a, b) => AlgoError::Invalid {
                kind,
                violations: alloc::vec![
                    Violation { edge: Some(a), rule: crate::diagram::Rule::Planarity },
                    Violation { edge: Some(b), rule: crate::diagram::Rule::Planarity },
                ],
            },
            other => AlgoError::Diagram(other),
        })?;
        if self.opts.check_each_step {
            let rep = validate(&d, &ctx);
            if !rep.pass() {
                return Err(AlgoError::Invalid { kind, violations: rep.violations });
            }
        }
        let balance = d.cost();
        self.d = d;
        *self.stats.entry(kind).or_default() += 1;
        self.ledger.record(kind, order.to_vec(), balance, allowance).map_err(AlgoError::OverBudget)
    }

    /// Orders `set` so that each vertex is eligible when its turn comes.
    pub(crate) fn canonical_suborder(&self, set: &[Vertex]) -> Result<Vec<Vertex>, AlgoError> {
        let mut st = self.st.clone();
        let mut left: Vec<Vertex> = set.to_vec();
        let mut order = Vec::with_capacity(set.len());
        while !left.is_empty() {
            let k = left
                .iter()
                .position(|&v| st.is_eligible(v))
                .ok_or(AlgoError::CaseNotMatched(format!("vertices {left:?} cannot be ordered canonically")))?;
            let v = left.remove(k);
            st.advance_mut(v)?;
            order.push(v);
        }
        Ok(order)
    }

    pub(crate) fn bump(&mut self, kind: &'static str) {
        *self.stats.entry(kind).or_default() += 1;
    }

    pub(crate) fn merge_stats(&mut self, other: &BTreeMap<&'static str, usize>) {
        for (k, v) in other {
            *self.stats.entry(k).or_default() += v;
        }
    }

    fn check_final(&self) -> Result<(), AlgoError> {
        let ctx = self.context();
        let rep = validate(&self.d, &ctx);
        if !rep.pass() {
            return Err(AlgoError::Invalid { kind: "final", violations: rep.violations });
        }
        if self.target == Target::Adapt {
            let [v1, v2, vn] = self.g.outer_face();
            if let Some(why) = adapt_violation(&self.d, v1, v2, vn) {
                return Err(AlgoError::CaseNotMatched(format!("adapted drawing: {why}")));
            }
        }
        Ok(())
    }
}

/// Checks the shape required from an adapted drawing; returns what is wrong.
pub fn adapt_violation(d: &ArcDiagram, v1: Vertex, v2: Vertex, vn: Vertex) -> Option<&'static str> {
    let verts: Vec<Vertex> = d.vertices().collect();
    if verts.first() != Some(&v1) || verts.last() != Some(&vn) {
        return Some("v1 must be leftmost and vn rightmost");
    }
    if d.shape(Edge::new(v1, vn)) != Some(Shape::Mountain) {
        return Some("v1 vn must be a mountain");
    }
    if d.shape(Edge::new(v1, v2)) != Some(Shape::Pocket) {
        return Some("v1 v2 must be a pocket");
    }
    match d.shape(Edge::new(v2, vn)) {
        Some(Shape::Mountain | Shape::Biarc) => {}
        _ => return Some("v2 vn must be a mountain or a biarc"),
    }
    if crate::diagram::upper_envelope_path(d).ok() != Some(alloc::vec![v1, vn]) {
        return Some("v1 vn must form the upper envelope");
    }
    let low = crate::diagram::envelope(d, crate::diagram::Side::Lower).ok()?;
    let mut arcs: Vec<Edge> = Vec::new();
    for x in &low {
        match *x {
            crate::diagram::EnvElem::Arc(e) => {
                if arcs.last() != Some(&e) {
                    arcs.push(e);
                }
            }
            crate::diagram::EnvElem::Item(crate::diagram::Item::Vertex(v)) if v == v1 || v == v2 || v == vn => {}
            crate::diagram::EnvElem::Item(crate::diagram::Item::Crossing(e)) if e == Edge::new(v2, vn) => {}
            crate::diagram::EnvElem::Item(_) => return Some("only v1, v2 and vn may be visible from below"),
        }
    }
    if arcs != [Edge::new(v1, v2), Edge::new(v2, vn)] {
        return Some("v1 v2 and v2 vn must form the lower envelope");
    }
    None
}
