//! Fallback for region processing: a beam search over single-vertex
//! placements of `u` and its region vertices.

use alloc::vec::Vec;

use super::{AlgoError, Run, Target};
use crate::canonical_order::{OrderingState, Profile};
use crate::diagram::{ArcDiagram, Credit, Shape};
use crate::graph::Vertex;

struct Cand<'g> {
    d: ArcDiagram,
    st: OrderingState<'g>,
    cost: Credit,
}

impl<'g> Run<'g> {
    /// Complete drawings for `set` (which must be orderable canonically from
    /// the current state), cheapest first. Each vertex is placed on its own
    /// and the `beam` cheapest partial drawings are kept.
    pub(crate) fn search_plans(&self, set: &[Vertex], beam: usize) -> Vec<ArcDiagram> {
        let [_, _, vn] = self.g.outer_face();
        let mut cands: Vec<Cand<'g>> = alloc::vec![Cand { d: self.d.clone(), st: self.st.clone(), cost: self.d.cost() }];
        for _ in 0..set.len() {
            let mut next: Vec<Cand<'g>> = Vec::new();
            for c in &cands {
                for &v in set {
                    if !c.st.is_eligible(v) {
                        continue;
                    }
                    let Ok(p) = c.st.profile(&c.d, v) else { continue };
                    let Ok(st) = c.st.advance(v) else { continue };
                    for d in self.placements(&c.d, &c.st, &p, vn) {
                        let cost = self.context_for(&st).required_cost(&d);
                        next.push(Cand { d, st: st.clone(), cost });
                    }
                }
            }
            next.sort_by(|a, b| a.cost.cmp(&b.cost));
            let mut kept: Vec<Cand<'g>> = Vec::with_capacity(beam);
            for c in next {
                if kept.len() == beam {
                    break;
                }
                if !kept.iter().any(|k| k.d == c.d) {
                    kept.push(c);
                }
            }
            if kept.is_empty() {
                return Vec::new();
            }
            cands = kept;
        }
        cands.into_iter().map(|c| c.d).collect()
    }

    /// Candidate drawings after placing `p.v`: optionally push down the
    /// mountains of one neighbour, put `v` into any gap between the path
    /// vertices around its neighbours, and draw each new edge as a pocket if
    /// that stays planar, else as a mountain.
    fn placements(&self, d: &ArcDiagram, st: &OrderingState<'_>, p: &Profile, vn: Vertex) -> Vec<ArcDiagram> {
        let mut out: Vec<ArcDiagram> = Vec::new();
        if p.v == vn && self.target == Target::Adapt {
            let mut d = d.clone();
            if append_last(&mut d, p).is_ok() {
                out.push(d);
            }
            return out;
        }
        let path = st.path();
        let (a, b) = (p.start, p.start + p.degree() - 1);
        let lo_v = path[a.saturating_sub(1)];
        let hi_v = path[(b + 1).min(path.len() - 1)];
        let pre: Vec<Option<Vertex>> =
            core::iter::once(None).chain(p.neighbors[..p.degree() - 1].iter().map(|&m| Some(m))).collect();
        for m in pre {
            let mut base = d.clone();
            if let Some(m) = m {
                if base.push_down_at(m).is_empty() || !base.is_planar() {
                    continue;
                }
            }
            let (lo, hi) = (base.vpos(lo_v), base.vpos(hi_v));
            for gap in lo + 1..=hi {
                if let Some(x) = place_at(&base, p, gap) {
                    if !out.contains(&x) {
                        out.push(x);
                    }
                }
            }
        }
        out
    }
}

/// Puts `p.v` at spine index `gap` and draws its edges, pockets first.
pub(crate) fn place_at(d: &ArcDiagram, p: &Profile, gap: usize) -> Option<ArcDiagram> {
    let mut d = d.clone();
    d.insert_vertex_at(gap, p.v).ok()?;
    for &w in &p.neighbors {
        let e = d.pocket(w, p.v).ok()?;
        if !d.is_planar() {
            d.to_proper(e, Shape::Mountain).ok()?;
            if !d.is_planar() {
                return None;
            }
        }
    }
    Some(d)
}

/// Places `p.v` at the right end of the spine joined to all its neighbours by
/// mountains.
pub(crate) fn append_last(d: &mut ArcDiagram, p: &Profile) -> Result<(), AlgoError> {
    d.insert_vertex_at(d.len(), p.v)?;
    for &w in &p.neighbors {
        d.mountain(w, p.v)?;
    }
    Ok(())
}
