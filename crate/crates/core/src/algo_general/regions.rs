//! Inserting a vertex `u` that is not yet eligible together with every
//! vertex of the regions it spans with the outer path.

use alloc::format;
use alloc::vec::Vec;

use super::steps::{chain, How};
use super::sub::{plug, SubInstance};
use super::{adapt_violation, AlgoError, Run, Target};
use crate::canonical_order::{PivotSide, Region, RegionClass};
use crate::diagram::{validate, ArcDiagram, Credit};
use crate::graph::Vertex;

impl<'g> Run<'g> {
    pub(crate) fn step_regions(&mut self) -> Result<(), AlgoError> {
        let u = self.st.select_u(&self.d)?;
        let regions = self.st.decompose_regions(&self.d, u)?;
        if self.step_stacked(u, &regions)? {
            return Ok(());
        }
        self.process_u(u, &regions)
    }

    /// Left-pivot vertices of a region, left to right.
    fn left_pivots(&self, r: &Region) -> Result<Vec<Vertex>, AlgoError> {
        let mut out = Vec::new();
        for &c in &r.eligible {
            if self.st.profile(&self.d, c)?.kind.pivot_side() == Some(PivotSide::Left) {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// Two stacked left-pivot vertices `v' = pc(v)` whose joint
    /// cover `v''` is not `u`.
    fn step_stacked(&mut self, u: Vertex, regions: &[Region]) -> Result<bool, AlgoError> {
        for r in regions {
            if !matches!(r.class, RegionClass::LeftPivot | RegionClass::BothPivot) {
                continue;
            }
            let cs = self.left_pivots(r)?;
            for h in 1..cs.len() {
                let (v, v1) = (cs[h], cs[h - 1]);
                let cover = self.cover_after(v, v1)?;
                if cover == u {
                    continue;
                }
                let last = cs.len() - 1;
                let w = *self.st.profile(&self.d, cs[last])?.neighbors.last().unwrap();
                let (v, v1, v2) = if self.g.has_edge(cover, w) {
                    let (v, v1) = (cs[last], cs[last - 1]);
                    (v, v1, self.cover_after(v, v1)?)
                } else {
                    (v, v1, cover)
                };
                if v2 == u {
                    return Err(AlgoError::CaseNotMatched(format!(
                        "stacked left pivots {v1},{v}: the cover of the last pair is u={u}"
                    )));
                }
                let ell = self.st.profile(&self.d, v)?.ell();
                if self.g.has_edge(v2, w) {
                    let inside = self.g.interior_of_cycle(&[v2, v, w]);
                    if !inside.is_empty() {
                        return self.stacked_recursive(v, v1, v2, w, ell, &inside).map(|()| true);
                    }
                }
                let plan = [(v, How::PushAt(ell)), (v1, How::Default), (v2, How::Default)];
                let (d, _) = chain(&self.d, &self.st, &plan)?;
                let extra = if self.g.has_edge(v2, w) { self.chi() } else { self.chi() * 2 };
                self.commit("stacked", d, &[v, v1, v2], Credit::from_integer(2) + extra)?;
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Stacked left pivots `v, v'` whose cover `v''` sees `w'` across a
    /// nonempty triangle: the triangle is drawn as an adapted diagram from
    /// `v'' v` to `w'` and plugged in after `v` and `v'`.
    fn stacked_recursive(
        &mut self,
        v: Vertex,
        v1: Vertex,
        v2: Vertex,
        w: Vertex,
        ell: Vertex,
        inside: &[Vertex],
    ) -> Result<(), AlgoError> {
        let (d, _) = chain(&self.d, &self.st, &[(v, How::PushAt(ell)), (v1, How::Default)])?;
        let sub = SubInstance::triangle(self.g, [v2, v, w])?;
        let dr = self.draw_sub(&sub, Target::Adapt)?;
        let sd = sub.to_host(&dr.diagram);
        let mut set = alloc::vec![v, v1, v2];
        set.extend_from_slice(inside);
        let mut plans = Vec::new();
        for x in plug(&d, &sd, 64) {
            for mountains in [false, true] {
                if let Ok(y) = self.fill(&x, &[v2], mountains) {
                    if y.is_planar() && !plans.contains(&y) {
                        plans.push(y);
                    }
                }
            }
        }
        let allowance = self.one_minus_chi() * set.len() as i64;
        self.bump("stacked-recursive");
        match self.pick(&set, &plans, allowance)? {
            Some((d, order)) => self.commit("stacked", d, &order, allowance),
            None => Err(AlgoError::CaseNotMatched(format!(
                "stacked pivots v={v} v'={v1}: triangle {v2} {v} {w} does not plug in"
            ))),
        }
    }

    /// The vertex covering `v' v` once `v` and then `v'` are placed.
    fn cover_after(&self, v: Vertex, v1: Vertex) -> Result<Vertex, AlgoError> {
        let st = self.st.advance(v)?.advance(v1)?;
        let _ = st;
        Ok(self.g.left_apex(v1, v))
    }

    /// The cheapest of `plans` that draws all of `set` (placed after the
    /// current state) validly for at most `allowance`, with its order.
    fn pick(&self, set: &[Vertex], plans: &[ArcDiagram], allowance: Credit) -> Result<Option<(ArcDiagram, Vec<Vertex>)>, AlgoError> {
        let order = self.canonical_suborder(set)?;
        let mut st = self.st.clone();
        for &v in &order {
            st.advance_mut(v)?;
        }
        let ctx = self.context_for(&st);
        let [v1, v2, vn] = self.g.outer_face();
        let adapt = st.is_complete() && self.target == Target::Adapt;
        let before = self.d.cost();
        let mut best: Option<ArcDiagram> = None;
        for d in plans {
            if set.iter().any(|&v| self.g.rotation(v).iter().any(|&w| st.is_placed(w) && d.shape_of(v, w).is_none())) {
                continue;
            }
            let mut d = d.clone();
            ctx.normalize(&mut d);
            if d.cost() - before > allowance || !validate(&d, &ctx).pass() {
                continue;
            }
            if adapt && adapt_violation(&d, v1, v2, vn).is_some() {
                continue;
            }
            if best.as_ref().map_or(true, |b| d.cost() < b.cost()) {
                best = Some(d);
            }
        }
        Ok(best.map(|d| (d, order)))
    }

    /// Places `u` and every vertex of its regions in one step. The case
    /// constructions are tried first; if none fits the budget, a search over
    /// single placements takes over.
    fn process_u(&mut self, u: Vertex, regions: &[Region]) -> Result<(), AlgoError> {
        let mut set: Vec<Vertex> = regions.iter().flat_map(|r| r.vertices.iter().copied()).collect();
        set.push(u);
        let mut st = self.st.clone();
        for v in self.canonical_suborder(&set)? {
            st.advance_mut(v)?;
        }
        let ctx = self.context_for(&st);
        let [_, _, vn] = self.g.outer_face();
        let mut allowance = self.one_minus_chi() * set.len() as i64;
        if u == vn && self.target != Target::Adapt {
            allowance = allowance + self.chi() * 2;
        }
        let (plans, err) = match self.region_plans(u, regions, &ctx) {
            Ok(p) => (p, None),
            Err(e) => (Vec::new(), Some(e)),
        };
        if let Some((d, order)) = self.pick(&set, &plans, allowance)? {
            return self.commit("regions", d, &order, allowance);
        }
        for beam in [8, 64] {
            let plans = self.search_plans(&set, beam);
            if let Some((d, order)) = self.pick(&set, &plans, allowance)? {
                return self.commit("regions-search", d, &order, allowance);
            }
        }
        Err(err.unwrap_or_else(|| {
            AlgoError::CaseNotMatched(format!("no drawing of u={u} with its regions fits {allowance}"))
        }))
    }
}
